"""
Accessor for the SHADOWLAB settings dict.
"""
from django.conf import settings

DEFAULTS = {
    'STATE_BUDGET': 5_000_000,
    'TUPLE_BUDGET': 5_000_000,
    'RANDOM_POINTS_CAP': 10,
    'EPS_POLICY_CAP': 12,
    'COUNT_CAP': 4,
}


def shadowlab_setting(name):
    """Return a SHADOWLAB setting, falling back to the documented default."""
    configured = getattr(settings, 'SHADOWLAB', {}) or {}
    if name in configured:
        return configured[name]
    return DEFAULTS[name]
