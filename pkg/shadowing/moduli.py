"""
Shadowing moduli: the exact supremum of delta for a given epsilon.
"""
import logging
from dataclasses import dataclass

from lattice.lattice import edge_lattice, monotone_sweep
from systems.exceptions import ConsistencyError
from systems.rationals import ZERO

from .deciders import Decision, decide
from .graph import require_positive

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ModulusReport:
    kind: str
    epsilon: object
    modulus: object
    failure: Decision | None = None

    @property
    def witness(self):
        return self.failure.witness if self.failure else ()

    def to_dict(self, sys):
        labels = sys.labels
        payload = {
            'kind': str(self.kind),
            'epsilon': str(self.epsilon),
            'modulus': str(self.modulus),
            'witness': [labels[x] for x in self.witness],
        }
        if self.failure is not None:
            payload['failing_delta'] = str(self.failure.delta)
            if self.failure.lead_cycle:
                payload['lead_in'] = {
                    'cycle': [labels[x] for x in self.failure.lead_cycle],
                    'path': [labels[x] for x in self.failure.lead_path],
                }
        return payload


def modulus(sys, kind, epsilon, budget=None, exhaustive=False):
    """
    delta*(epsilon) = sup{delta : the property holds}, swept over the edge lattice.

    Unless the result is UNBOUNDED, the decision at the next lattice value
    up is attached as the failure witness.
    """
    require_positive('epsilon', epsilon)
    lattice = edge_lattice(sys)
    value = monotone_sweep(
        lattice,
        lambda delta: decide(sys, kind, epsilon, delta, budget).holds,
        exhaustive=exhaustive,
    )
    if value == ZERO:
        raise ConsistencyError(f'{kind} modulus at epsilon={epsilon} is zero; true orbits must shadow themselves')
    failure = None
    if not value.is_unbounded:
        failure = decide(sys, kind, epsilon, lattice.next_above(value), budget)
        if failure.holds:
            raise ConsistencyError(f'{kind} holds just above its modulus {value} at epsilon={epsilon}')
    logger.info('%s modulus at epsilon=%s is %s', kind, epsilon, value)
    return ModulusReport(kind=kind, epsilon=epsilon, modulus=value, failure=failure)
