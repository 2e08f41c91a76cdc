"""
Verification suites.

Each suite turns one structural theorem about shadowing, expansivity or
shadower multiplicity into checks evaluated at lattice thresholds, where
verdicts are exhaustive rather than sampled. Expected failures (the
identity map pattern) are asserted as FAIL verdicts of the engines, so a
check passes when the engines fail exactly as predicted.
"""
import logging
from fractions import Fraction

import networkx as nx

from expansivity.characterizations import is_mixing, is_transitive, limit_shadowing_report
from expansivity.core import restrict_to_core, surjective_core
from expansivity.radii import is_positively_n_expansive_at
from generators.families import GeneratorSpec
from lattice.lattice import edge_lattice, pair_lattice
from multiplicity.counting import trivial_eta
from shadowing.deciders import Kind
from systems.domain import is_surjective
from systems.exceptions import BudgetExceededError, ConsistencyError, UnknownSuiteError
from systems.rationals import UNBOUNDED
from systems.serialization import fingerprint

from .checks import CheckFailure, CheckSkipped, default_eps_list, run_check
from .oracle import CachedOracle
from .replay import (
    replay_gamma_violation,
    replay_lasso,
    replay_shadowing_failure,
    replay_unique_h_failure,
)
from .reports import VerificationReport

logger = logging.getLogger(__name__)

HALF = Fraction(1, 2)
DEFAULT_N_LIST = (1, 2)
SUMMARY_KINDS = (Kind.FORWARD, Kind.TWO_SIDED, Kind.H, Kind.S_LIMIT)


def _deltas(sys):
    """Every delta at which a verdict can change: the positive edge values and UNBOUNDED."""
    return [*edge_lattice(sys).positive_values, UNBOUNDED]


def _delta_min(sys):
    return edge_lattice(sys).min_positive or UNBOUNDED


def _labels(sys, points):
    return [sys.labels[x] for x in points]


def _shadowing_evidence(sys, decision):
    evidence = {
        'kind': str(decision.kind),
        'delta': str(decision.delta),
        'witness': _labels(sys, decision.witness),
        'replayed': replay_shadowing_failure(sys, decision),
    }
    if decision.lead_cycle:
        evidence['lead_in'] = {
            'cycle': _labels(sys, decision.lead_cycle),
            'path': _labels(sys, decision.lead_path),
        }
    return evidence


def _lasso_evidence(sys, decision, distinct=False):
    return {
        'n': decision.n,
        'delta': str(decision.delta),
        'lasso': decision.lasso.to_dict(sys),
        'replayed': replay_lasso(sys, decision.epsilon, decision.delta, decision.lasso, distinct=distinct),
    }


# =============================================================================
# SHADOWING HIERARCHY
# =============================================================================

def _check_moduli_order(sys, oracle, epsilon):
    two_sided = oracle.modulus(Kind.TWO_SIDED, epsilon)
    forward = oracle.modulus(Kind.FORWARD, epsilon, exhaustive=True)
    half = oracle.modulus(Kind.FORWARD, epsilon.scaled(HALF))
    evidence = {
        'two_sided': str(two_sided.modulus),
        'forward': str(forward.modulus),
        'forward_half_epsilon': str(half.modulus),
    }
    if two_sided.modulus < forward.modulus:
        # forward shadowing holds where two-sided shadowing was shown to fail
        evidence['failure'] = _shadowing_evidence(sys, two_sided.failure)
        raise CheckFailure('two-sided modulus below the forward modulus', evidence)
    if forward.modulus < half.modulus:
        evidence['failure'] = _shadowing_evidence(sys, forward.failure)
        raise CheckFailure('forward modulus decreased as epsilon grew', evidence)
    return evidence


def _check_backward_two_sided(sys, oracle, epsilon):
    holding = []
    deltas = _deltas(sys)
    for delta in deltas:
        backward = oracle.decide(Kind.BACKWARD, epsilon, delta)
        two_sided = oracle.decide(Kind.TWO_SIDED, epsilon, delta)
        if backward.holds != two_sided.holds:
            failing = two_sided if backward.holds else backward
            raise CheckFailure(
                'backward and two-sided shadowing disagree',
                {'failure': _shadowing_evidence(sys, failing)},
            )
        if backward.holds:
            holding.append(str(delta))
    return {'deltas': len(deltas), 'holding': holding}


def _check_onto(sys, oracle, epsilon):
    if not is_surjective(sys):
        raise CheckSkipped('f is not onto')
    backward = oracle.modulus(Kind.BACKWARD, epsilon).modulus
    forward = oracle.modulus(Kind.FORWARD, epsilon).modulus
    evidence = {'backward': str(backward), 'forward': str(forward)}
    if backward.is_positive and not forward.is_positive:
        raise CheckFailure('onto map with backward but without forward shadowing', evidence)
    return evidence


def hierarchy_checks(sys, eps_list, oracle):
    """Shadowing implies two-sided implies backward shadowing, and back again for onto maps."""
    checks = []
    for epsilon in eps_list:
        params = {'epsilon': str(epsilon)}
        checks.append(run_check('hierarchy.moduli-order', params, lambda: _check_moduli_order(sys, oracle, epsilon)))
        checks.append(run_check(
            'hierarchy.backward-twosided', params, lambda: _check_backward_two_sided(sys, oracle, epsilon),
        ))
        checks.append(run_check('hierarchy.onto', params, lambda: _check_onto(sys, oracle, epsilon)))
    return checks


# =============================================================================
# N-SHADOWING
# =============================================================================

def _check_count_below_radius(sys, oracle, n, eps_list):
    radius = oracle.positive_radius(n)
    eligible = [epsilon for epsilon in eps_list if epsilon.scaled(2) < radius]
    if not eligible:
        raise CheckSkipped(f'no epsilon with 2*epsilon below the radius {radius}')
    for epsilon in eligible:
        delta = oracle.modulus(Kind.FORWARD, epsilon).modulus
        decision = oracle.count_at_most(n, epsilon, delta)
        if not decision.holds:
            evidence = _lasso_evidence(sys, decision)
            evidence.update(epsilon=str(epsilon), radius=str(radius))
            raise CheckFailure(f'more than {n} shadowers although 2*epsilon < r*', evidence)
    return {'radius': str(radius), 'epsilons': [str(epsilon) for epsilon in eligible]}


def _check_count_reaches_gamma(sys, oracle, epsilon):
    delta = _delta_min(sys)
    gamma = oracle.largest_gamma(epsilon)
    report = oracle.max_shadower_count(epsilon, delta, len(gamma))
    evidence = {
        'delta': str(delta),
        'gamma': gamma.to_dict(sys),
        'max_count': {'at_least': report.max_count} if report.at_least else report.max_count,
    }
    if report.max_count < len(gamma):
        # the true orbit of the center is shadowed by every member of its Gamma set
        evidence['replayed'] = replay_gamma_violation(sys, gamma.center, gamma.members, epsilon, report.max_count)
        raise CheckFailure('a true orbit has fewer shadowers than its Gamma set', evidence)
    return evidence


def n_shadowing_checks(sys, eps_list, oracle, n_list=DEFAULT_N_LIST):
    """n-shadowing is shadowing plus positive n-expansivity."""
    checks = []
    for n in n_list:
        checks.append(run_check(
            'nshadow.upper', {'n': n}, lambda: _check_count_below_radius(sys, oracle, n, eps_list),
        ))
    for epsilon in eps_list:
        checks.append(run_check(
            'nshadow.lower', {'epsilon': str(epsilon)}, lambda: _check_count_reaches_gamma(sys, oracle, epsilon),
        ))
    return checks


# =============================================================================
# TWO-SIDED N-SHADOWING
# =============================================================================

def _check_two_sided_n(sys, oracle, n, epsilon):
    premises = 0
    for delta in _deltas(sys):
        if not oracle.count_at_most(n, epsilon, delta).holds:
            continue
        if not oracle.decide(Kind.FORWARD, epsilon, delta).holds:
            continue
        premises += 1
        count = oracle.two_sided_count_at_most(n, epsilon, delta)
        if not count.holds:
            raise CheckFailure(
                'n-shadowing holds but two-sided n-shadowing fails',
                _lasso_evidence(sys, count, distinct=True),
            )
        two_sided = oracle.decide(Kind.TWO_SIDED, epsilon, delta)
        if not two_sided.holds:
            raise CheckFailure(
                'n-shadowing holds but two-sided shadowing fails',
                {'failure': _shadowing_evidence(sys, two_sided)},
            )
    return {'premises': premises}


def two_sided_n_checks(sys, eps_list, oracle, n_list=DEFAULT_N_LIST):
    checks = []
    for n in n_list:
        for epsilon in eps_list:
            checks.append(run_check(
                'twosided-n.implication', {'n': n, 'epsilon': str(epsilon)},
                lambda: _check_two_sided_n(sys, oracle, n, epsilon),
            ))
    return checks


# =============================================================================
# UNIQUENESS
# =============================================================================

def _check_unique_h(sys, oracle, epsilon):
    premises = 0
    for delta in _deltas(sys):
        if not oracle.count_at_most(1, epsilon, delta).holds:
            continue
        if not oracle.decide(Kind.H, epsilon, delta).holds:
            continue
        premises += 1
        decision = oracle.unique_h(epsilon, delta)
        if not decision.holds:
            raise CheckFailure('unique shadowing and h-shadowing without unique h-shadowing', {
                'delta': str(delta),
                'witness': _labels(sys, decision.witness),
                'origins': _labels(sys, decision.origins),
                'replayed': replay_unique_h_failure(sys, decision),
            })
    return {'premises': premises}


def _check_unique_s_limit(sys, oracle, eps_list):
    """
    Unique s-limit shadowing never outlasts unique shadowing, and below half
    the 1-expansivity radius the two moduli coincide.
    """
    if not eps_list:
        raise CheckSkipped('no epsilon to test')
    radius = oracle.positive_radius(1)
    lattice = edge_lattice(sys)
    rows = []
    for epsilon in eps_list:
        unique = oracle.n_shadow_modulus(1, epsilon)
        limit = oracle.unique_s_limit_modulus(epsilon)
        row = {'epsilon': str(epsilon), 'unique': str(unique), 'unique_s_limit': str(limit)}
        if unique < limit:
            raise CheckFailure('unique s-limit shadowing holds where unique shadowing fails', row)
        if limit < unique and epsilon.scaled(2) < radius:
            # unique shadowing still holds one lattice step up, so s-limit is what fails there
            failing = oracle.decide(Kind.S_LIMIT, epsilon, lattice.next_above(limit))
            row['failure'] = _shadowing_evidence(sys, failing)
            raise CheckFailure('unique shadowing without unique s-limit shadowing below the radius', row)
        rows.append(row)
    return {'radius': str(radius), 'rows': rows}


def _check_limit(sys):
    report = limit_shadowing_report(sys)
    evidence = report.to_dict()
    if report.unique_limit != (report.asymptotic_pair_count == 0):
        raise CheckFailure('unique limit shadowing disagrees with the asymptotic pairs', evidence)
    return evidence


def _is_identity(sys):
    return all(sys.f(x) == x for x in range(sys.size))


def _check_identity_pattern(sys, oracle, eps_list):
    """h-shadowing at every epsilon while uniqueness fails once epsilon exceeds a pairwise distance."""
    if not _is_identity(sys):
        raise CheckSkipped('f is not the identity')
    if not eps_list:
        raise CheckSkipped('no epsilon to test')
    delta = _delta_min(sys)
    closest = pair_lattice(sys).min_positive
    failures = []
    for epsilon in eps_list:
        h = oracle.decide(Kind.H, epsilon, delta)
        if not h.holds:
            raise CheckFailure('identity map without h-shadowing', {
                'epsilon': str(epsilon), 'failure': _shadowing_evidence(sys, h),
            })
        count = oracle.count_at_most(1, epsilon, delta)
        if closest is None or epsilon <= closest:
            if not count.holds:
                raise CheckFailure('two shadowers inside singleton balls', _lasso_evidence(sys, count))
            continue
        if count.holds:
            raise CheckFailure('identity map shadowed uniquely above a pairwise distance', {
                'epsilon': str(epsilon), 'delta': str(delta),
            })
        evidence = _lasso_evidence(sys, count)
        if not evidence['replayed']:
            raise CheckFailure('uniqueness witness does not replay', evidence)
        failures.append({'epsilon': str(epsilon), 'origins': evidence['lasso']['origins']})
    return {'delta': str(delta), 'non_unique': failures}


def uniqueness_checks(sys, eps_list, oracle):
    checks = []
    for epsilon in eps_list:
        checks.append(run_check(
            'uniqueness.unique-h', {'epsilon': str(epsilon)}, lambda: _check_unique_h(sys, oracle, epsilon),
        ))
    checks.append(run_check(
        'uniqueness.unique-s-limit', {}, lambda: _check_unique_s_limit(sys, oracle, eps_list),
    ))
    checks.append(run_check('uniqueness.limit', {}, lambda: _check_limit(sys)))
    checks.append(run_check('uniqueness.identity-pattern', {}, lambda: _check_identity_pattern(sys, oracle, eps_list)))
    return checks


# =============================================================================
# FIBERS
# =============================================================================

def _close_fiber_subsets(sys, fiber, r, size):
    """Maximal cliques of at least `size` points in the 'closer than r' graph on a fiber."""
    graph = nx.Graph()
    graph.add_nodes_from(fiber)
    graph.add_edges_from(
        (a, b) for a in fiber for b in fiber if a < b and r.admits(sys.sq[a][b])
    )
    return [sorted(clique) for clique in nx.find_cliques(graph) if len(clique) >= size]


def _check_fiber_bound(sys, n, r):
    subsets = []
    for fiber in sys.preimages:
        subsets.extend(_close_fiber_subsets(sys, sorted(fiber), r, n + 1))
    evidence = {'subsets': len(subsets)}
    if subsets and is_positively_n_expansive_at(sys, n, r):
        evidence['fiber'] = _labels(sys, subsets[0])
        raise CheckFailure(f'{n + 1} close points share an image yet Gamma sets stay within {n}', evidence)
    return evidence


def fiber_checks(sys, eps_list, oracle, n_list=DEFAULT_N_LIST):
    """
    A positively n-expansive map cannot glue n+1 close points.

    r runs over the epsilon list and UNBOUNDED, which catches fibers whose
    points are only close beyond the largest listed radius.
    """
    radii = [*eps_list, UNBOUNDED] if UNBOUNDED not in eps_list else list(eps_list)
    checks = []
    for n in n_list:
        for r in radii:
            checks.append(run_check(
                'fiber.bound', {'n': n, 'r': str(r)}, lambda: _check_fiber_bound(sys, n, r),
            ))
    return checks


# =============================================================================
# EQUIVALENCES FOR ONTO MAPS
# =============================================================================

def _check_surjective_moduli(sys, oracle, epsilon):
    """
    On an onto map every modulus is sharp, and the limit variants sit below
    their plain counterparts.
    """
    if not is_surjective(sys):
        raise CheckSkipped('f is not onto')
    reports = {
        kind: oracle.modulus(kind, epsilon)
        for kind in (Kind.FORWARD, Kind.TWO_SIDED, Kind.S_LIMIT, Kind.TWO_SIDED_S_LIMIT)
    }
    evidence = {str(kind): str(report.modulus) for kind, report in reports.items()}
    for kind, report in reports.items():
        if report.failure is not None and not replay_shadowing_failure(sys, report.failure):
            evidence['failure'] = _shadowing_evidence(sys, report.failure)
            raise CheckFailure(f'{kind} fails just above its modulus without a confirmed witness', evidence)
    for limit, plain in ((Kind.S_LIMIT, Kind.FORWARD), (Kind.TWO_SIDED_S_LIMIT, Kind.TWO_SIDED)):
        if reports[plain].modulus < reports[limit].modulus:
            evidence['failure'] = _shadowing_evidence(sys, reports[plain].failure)
            raise CheckFailure(f'{limit} holds where {plain} fails', evidence)
    return evidence


def _check_unique_shadowing(sys, oracle, eps_list):
    """
    Below half the 1-expansivity radius unique shadowing is plain shadowing,
    and h-shadowing holds at every delta where shadowing does.
    """
    radius = oracle.positive_radius(1)
    eligible = [epsilon for epsilon in eps_list if epsilon.scaled(2) < radius]
    if not eligible:
        raise CheckSkipped(f'no epsilon with 2*epsilon below the radius {radius}')
    rows = []
    for epsilon in eligible:
        unique = oracle.n_shadow_modulus(1, epsilon)
        forward = oracle.modulus(Kind.FORWARD, epsilon)
        h = oracle.modulus(Kind.H, epsilon)
        row = {
            'epsilon': str(epsilon),
            'unique': str(unique),
            'forward': str(forward.modulus),
            'h': str(h.modulus),
        }
        if unique != forward.modulus:
            raise CheckFailure('unique shadowing modulus differs from the shadowing modulus', row)
        if h.modulus != forward.modulus:
            # the shallower of the two fails where the other still holds
            failing = h if h.modulus < forward.modulus else forward
            row['failure'] = _shadowing_evidence(sys, failing.failure)
            raise CheckFailure('h-shadowing modulus differs from the shadowing modulus', row)
        rows.append(row)
    return {'radius': str(radius), 'rows': rows}


def _check_core(sys):
    report = surjective_core(sys)
    restricted = restrict_to_core(sys)
    evidence = report.to_dict(sys)
    if not is_surjective(restricted):
        raise CheckFailure('the map restricted to its core is not onto', evidence)
    if len(surjective_core(restricted).core) != restricted.size:
        raise CheckFailure('the core of the restricted system is smaller than the system', evidence)
    return evidence


def _check_transitivity(sys):
    return {'transitive': is_transitive(sys), 'mixing': is_mixing(sys)}


def equivalence_checks(sys, eps_list, oracle):
    checks = []
    for epsilon in eps_list:
        checks.append(run_check(
            'equivalence.onto-moduli', {'epsilon': str(epsilon)},
            lambda: _check_surjective_moduli(sys, oracle, epsilon),
        ))
    checks.append(run_check('equivalence.unique-shadowing', {}, lambda: _check_unique_shadowing(sys, oracle, eps_list)))
    checks.append(run_check('equivalence.core', {}, lambda: _check_core(sys)))
    checks.append(run_check('equivalence.transitivity', {}, lambda: _check_transitivity(sys)))
    return checks


SUITES = {
    'hierarchy': hierarchy_checks,
    'nshadow': n_shadowing_checks,
    'twosided-n': two_sided_n_checks,
    'uniqueness': uniqueness_checks,
    'fiber': fiber_checks,
    'equivalence': equivalence_checks,
}
SUITES_WITH_N = ('nshadow', 'twosided-n', 'fiber')
ALL = 'all'


def resolve_suites(names):
    """Expand 'all' and reject unknown names before any work is done."""
    if isinstance(names, str):
        names = [names]
    resolved = []
    for name in names:
        if name == ALL:
            resolved.extend(suite for suite in SUITES if suite not in resolved)
        elif name in SUITES:
            if name not in resolved:
                resolved.append(name)
        else:
            raise UnknownSuiteError(f'unknown suite {name!r}; choose from {", ".join([ALL, *SUITES])}')
    return resolved


def _summary_value(compute):
    try:
        return str(compute())
    except BudgetExceededError:
        return 'budget'
    except ConsistencyError:
        logger.exception('summary value failed its cross-check')
        return 'inconsistent'


def _summary(sys, eps_list, oracle, n_list):
    moduli = [
        {
            'epsilon': str(epsilon),
            'moduli': {
                str(kind): _summary_value(lambda: oracle.modulus(kind, epsilon).modulus)
                for kind in SUMMARY_KINDS
            },
        }
        for epsilon in eps_list
    ]
    core_size = len(surjective_core(sys).core)
    radii = [
        {
            'n': n,
            'positive': _summary_value(lambda: oracle.positive_radius(n)),
            'two_sided': _summary_value(lambda: oracle.two_sided_radius(n)),
            'vacuous': core_size <= n,
        }
        for n in n_list
    ]
    return {'moduli': moduli, 'radii': radii, 'eta': str(trivial_eta(sys))}


def run_suite(sys_or_spec, suites=ALL, eps_policy=None, budget=None, n_list=DEFAULT_N_LIST):
    """
    Run the requested suites on one system.

    `eps_policy` is an explicit list of epsilon thresholds, or None for the
    default sample of the pair lattice. Checks run one after another in
    suite order; the report is a deterministic function of the document,
    suites, policy and budget.
    """
    names = resolve_suites(suites)
    sys = sys_or_spec.build() if isinstance(sys_or_spec, GeneratorSpec) else sys_or_spec
    eps_list = sorted(eps_policy) if eps_policy is not None else default_eps_list(sys)
    oracle = CachedOracle(sys, budget)
    logger.info('running %s on %d points with %d epsilon values', ','.join(names), sys.size, len(eps_list))

    checks = []
    for name in names:
        suite = SUITES[name]
        if name in SUITES_WITH_N:
            checks.extend(suite(sys, eps_list, oracle, n_list=n_list))
        else:
            checks.extend(suite(sys, eps_list, oracle))
    report = VerificationReport(
        suite=','.join(names),
        fingerprint=fingerprint(sys),
        checks=checks,
        summary=_summary(sys, eps_list, oracle, n_list),
    )
    logger.info(
        '%s: %s (%d cached answers, %d cache hits)', report.suite, report.verdict, len(oracle), oracle.hits,
    )
    return report


def verify_shadowing_hierarchy(sys, eps_list=None, budget=None):
    return run_suite(sys, 'hierarchy', eps_list, budget)


def verify_n_shadowing_theorem(sys, n_list=DEFAULT_N_LIST, eps_list=None, budget=None):
    return run_suite(sys, 'nshadow', eps_list, budget, n_list=n_list)


def verify_two_sided_n(sys, n, eps_list=None, budget=None):
    return run_suite(sys, 'twosided-n', eps_list, budget, n_list=(n,))


def verify_uniqueness_suite(sys, eps_list=None, budget=None):
    return run_suite(sys, 'uniqueness', eps_list, budget)


def verify_fiber_bound(sys, n_list=DEFAULT_N_LIST, eps_list=None, budget=None):
    return run_suite(sys, 'fiber', eps_list, budget, n_list=n_list)


def verify_equivalence(sys, eps_list=None, budget=None):
    return run_suite(sys, 'equivalence', eps_list, budget)
