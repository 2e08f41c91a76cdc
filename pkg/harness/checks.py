"""
Running a single check and turning its outcome into a CheckRecord.
"""
import logging
import time

from lattice.lattice import pair_lattice
from systems.conf import shadowlab_setting
from systems.exceptions import BudgetExceededError, ConsistencyError

from .reports import CheckRecord, Verdict

logger = logging.getLogger(__name__)


class CheckFailure(Exception):
    """Raised inside a check body; `evidence` must let the failure be replayed."""

    def __init__(self, reason, evidence=None):
        self.reason = reason
        self.evidence = evidence or {}
        super().__init__(reason)


class CheckSkipped(Exception):
    """The check has nothing to assert on this system."""

    def __init__(self, reason):
        self.reason = reason
        super().__init__(reason)


def run_check(check_id, params, body):
    """
    Run `body()` and record its verdict.

    body returns the evidence dict of a PASS, or raises CheckFailure /
    CheckSkipped. Budget overruns become SKIPPED, internal cross-check
    failures become FAIL.
    """
    started = time.perf_counter()
    reason = ''
    try:
        evidence = body() or {}
        verdict = Verdict.PASS
    except CheckFailure as exc:
        verdict, reason, evidence = Verdict.FAIL, exc.reason, exc.evidence
    except CheckSkipped as exc:
        verdict, reason, evidence = Verdict.SKIPPED, f'vacuous: {exc.reason}', {}
    except BudgetExceededError as exc:
        logger.warning('check %s %s skipped: %s', check_id, params, exc)
        verdict, reason = Verdict.SKIPPED, f'budget: {exc}'
        evidence = {'budget': exc.budget, 'explored': exc.explored}
    except ConsistencyError as exc:
        logger.error('check %s %s: cross-check failed: %s', check_id, params, exc)
        verdict, reason, evidence = Verdict.FAIL, f'consistency: {exc}', {'assertion': str(exc)}
    elapsed = time.perf_counter() - started

    if verdict == Verdict.FAIL:
        logger.warning('check %s %s failed: %s', check_id, params, reason)
    return CheckRecord(
        check_id=check_id, params=params, verdict=verdict, reason=reason,
        evidence=evidence, wall_time=elapsed,
    )


def default_eps_list(sys, cap=None):
    """
    Positive pair-lattice values, ascending.

    Longer lattices are thinned to `cap` evenly spaced values that always
    include the smallest and the largest one.
    """
    cap = cap or shadowlab_setting('EPS_POLICY_CAP')
    values = pair_lattice(sys).positive_values
    if len(values) <= cap:
        return list(values)
    if cap == 1:
        return [values[-1]]
    picked = sorted({round(i * (len(values) - 1) / (cap - 1)) for i in range(cap)})
    return [values[i] for i in picked]
