"""
Minimal witness replayer.

Confirms failure witnesses by simulating trackers point by point along the
reported pseudo-orbit. It uses nothing but the squared-distance table and
the map, so it is independent of the automata that produced the witnesses.
"""
from shadowing.deciders import Kind


def _close(sys, a, b, threshold):
    return threshold.admits(sys.sq[a][b])


def is_pseudo_orbit(sys, nodes, delta):
    return all(_close(sys, sys.f(a), b, delta) for a, b in zip(nodes, nodes[1:]))


def _track(sys, z, nodes, epsilon):
    """Positions of z along `nodes`, or None once it leaves the epsilon-ball."""
    positions = []
    for node in nodes:
        if not _close(sys, z, node, epsilon):
            return None
        positions.append(z)
        z = sys.f(z)
    return positions


def _survivors(sys, origins, nodes, epsilon):
    tracks = (_track(sys, z, nodes, epsilon) for z in origins)
    return [track for track in tracks if track is not None]


def _is_true_cycle(sys, cycle):
    return bool(cycle) and all(sys.f(a) == b for a, b in zip(cycle, (*cycle[1:], cycle[0])))


def _lead_in_is_valid(sys, decision):
    cycle, path = decision.lead_cycle, decision.lead_path
    if not cycle or not path or cycle[0] != path[0] or path[-1] != decision.witness[0]:
        return False
    return is_pseudo_orbit(sys, (*cycle, cycle[0]), decision.delta) and is_pseudo_orbit(sys, path, decision.delta)


def _converges(sys, z, x, epsilon):
    """Following true orbits from (z, x), they meet before ever drifting epsilon apart."""
    for _step in range(sys.size ** 2 + 1):
        if z == x:
            return True
        if not _close(sys, z, x, epsilon):
            return False
        z, x = sys.f(z), sys.f(x)
    return False


def replay_shadowing_failure(sys, decision):
    """True when the failing pseudo-orbit of a shadowing Decision is confirmed."""
    nodes = list(decision.witness)
    epsilon, kind = decision.epsilon, decision.kind
    if not nodes or not is_pseudo_orbit(sys, nodes, decision.delta):
        return False
    if kind in (Kind.BACKWARD, Kind.TWO_SIDED, Kind.TWO_SIDED_S_LIMIT) and not _lead_in_is_valid(sys, decision):
        return False

    origins = range(sys.size)
    if kind == Kind.TWO_SIDED_S_LIMIT:
        if not (_is_true_cycle(sys, decision.lead_cycle) and decision.lead_path == (nodes[0],)):
            return not _survivors(sys, origins, nodes, epsilon)
        # the past is a periodic true orbit, followed only by the point itself
        origins = [nodes[0]]
    survivors = _survivors(sys, origins, nodes, epsilon)

    if kind in (Kind.FORWARD, Kind.BACKWARD, Kind.TWO_SIDED):
        return not survivors
    if kind == Kind.H:
        return all(track[-1] != nodes[-1] for track in survivors)
    return not any(_converges(sys, track[-1], nodes[-1], epsilon) for track in survivors)


def replay_lasso(sys, epsilon, delta, lasso, distinct=False):
    """
    Every origin epsilon-tracks stem + cycle^infinity.

    The walk must be a delta-pseudo-orbit closing up on its cycle; tracking
    is simulated until the joint (cycle phase, positions) state repeats.
    """
    stem, cycle, origins = list(lasso.stem), list(lasso.cycle), list(lasso.origins)
    if not cycle or len(set(origins)) != len(origins):
        return False
    if not is_pseudo_orbit(sys, stem + cycle + [cycle[0]], delta):
        return False

    positions = list(origins)
    for node in stem:
        if not all(_close(sys, p, node, epsilon) for p in positions):
            return False
        positions = [sys.f(p) for p in positions]
    seen = set()
    phase = 0
    while (phase, tuple(positions)) not in seen:
        seen.add((phase, tuple(positions)))
        if not all(_close(sys, p, cycle[phase], epsilon) for p in positions):
            return False
        if distinct and len(set(positions)) != len(positions):
            return False
        positions = [sys.f(p) for p in positions]
        phase = (phase + 1) % len(cycle)
    return True


def replay_unique_h_failure(sys, decision):
    """Two distinct origins track the witness and both land on its last point, or h fails outright."""
    nodes = list(decision.witness)
    if not nodes or not is_pseudo_orbit(sys, nodes, decision.delta):
        return False
    survivors = _survivors(sys, range(sys.size), nodes, decision.epsilon)
    if not decision.h_holds:
        return all(track[-1] != nodes[-1] for track in survivors)
    p, q = decision.origins
    if p == q:
        return False
    landing = {track[0] for track in survivors if track[-1] == nodes[-1]}
    return {p, q} <= landing


def replay_gamma_violation(sys, center, members, r, n):
    """More than n points whose forward orbits stay within r of the orbit of `center`."""
    if len(set(members)) <= n:
        return False
    for y in members:
        a, b = center, y
        for _step in range(sys.size ** 2 + 1):
            if not _close(sys, a, b, r):
                return False
            a, b = sys.f(a), sys.f(b)
    return True
