"""Distance bounds for blown-up pairs, realized by explicit sequences.

For a pair blown up with parameter beta, write gamma for the number of
spine pairs and ac for the size of an acyclic subset of the conflict
graph.  The distance between the blown triangulations is at most

    beta * (2 * gamma - ac) + n * (2n - 5)

witnessed by construct_upper_sequence, and (with ac the exact maximum)
at least

    beta * (2 * gamma - ac) - 3 * n**2.

The constructed sequence transforms both endpoints toward a common
middle.  Pairs outside the chosen subset are "parked": their point fan
is re-fanned onto the left spine endpoint on both sides (beta flips per
side).  Pairs inside the subset are converted in source-first order: a
setup rearranges the chords outside the fans so that the two edges
flanking the target apex are present, then beta + 1 flips move the fan
and its triangle directly onto the target apex.  A final cleanup aligns
the leftover chords; every fan is common by then, so the cleanup never
touches a subdivision point.

analyze_sequence replays any valid sequence and classifies each pair as
direct or indirect from the definitions: gone(i) is the first index
whose triangulation contains no start-fan edge of pair i, and the pair
is direct when some target-fan edge appears at or before that index.
"""

import random
from dataclasses import dataclass

from . import triangulation as tri
from .acyclic import is_acyclic, max_acyclic_subset
from .blowup import blow_up, conflict_graph
from .distance import (
    _fan_cycle,
    _reverse_flips,
    exact_distance,
    two_approx_sequence,
    validate_sequence,
)
from .errors import (
    BudgetExceeded,
    IllegalStep,
    InvalidSequence,
    NotAcyclic,
    NotASubsetOfGamma,
    WrongTarget,
)
from .reduction import build_reduction
from .triangulation import Triangulation, complete_lex


def _check_formula_args(gamma_size, ac):
    if not 0 <= ac <= gamma_size:
        raise ValueError(f"need 0 <= ac <= gamma, got ac={ac}, gamma={gamma_size}")


def upper_bound_value(n, gamma_size, ac, beta):
    """beta * (2 gamma - ac) + n (2n - 5)."""
    _check_formula_args(gamma_size, ac)
    return beta * (2 * gamma_size - ac) + n * (2 * n - 5)


def lower_bound_value(n, gamma_size, ac, beta):
    """beta * (2 gamma - ac) - 3 n**2; may be negative, callers clamp."""
    _check_formula_args(gamma_size, ac)
    return beta * (2 * gamma_size - ac) - 3 * n * n


def theorem_beta(n):
    """The blow-up parameter 6 (n**2 + n) used by the decision reduction.

    It is large enough that the lower bound at ac and the upper bound at
    ac + 1 cannot overlap: beta - 3 n**2 > 2 n**2 - 5 n.
    """
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    beta = 6 * (n * n + n)
    assert beta - 3 * n * n > 2 * n * n - 5 * n
    return beta


@dataclass(frozen=True)
class BoundReport:
    n: int
    gamma_size: int
    ac: int
    beta: int
    upper_value: int
    lower_value: int


def bound_report(n, gamma_size, ac, beta):
    return BoundReport(
        n=n,
        gamma_size=gamma_size,
        ac=ac,
        beta=beta,
        upper_value=upper_bound_value(n, gamma_size, ac, beta),
        lower_value=lower_bound_value(n, gamma_size, ac, beta),
    )


def format_bound_report(report):
    return (
        f"bound upper {report.upper_value}\n"
        f"bound lower {report.lower_value}\n"
    )


# --- the constructive upper bound ---------------------------------------------


def _pair_geometry(inst, i):
    """Blown labels (v1, v3, points, apex_t, apex_tp) of pair i."""
    p = inst.pairs[i]
    vm = inst.vertex_map
    return (
        vm[p.spine[0]],
        vm[p.spine[1]],
        tuple(inst.points[i]),
        vm[p.apex_t],
        vm[p.apex_tp],
    )


def _apply(t, flips):
    for e in flips:
        t = tri.flip(t, e)
    return t


def _source_order(indices, edges):
    """Process order: repeatedly the smallest index with no incoming edge."""
    order = []
    rem = set(indices)
    while rem:
        sources = [i for i in rem if not any((j, i) in edges for j in rem if j != i)]
        src = min(sources)
        order.append(src)
        rem.remove(src)
    return order


def construct_upper_sequence(inst, s):
    """A flip sequence from inst.t1 to inst.t2 within the upper bound.

    s is an acyclic subset of the conflict graph (an AcyclicResult or an
    iterable of pair indices).  Raises NotASubsetOfGamma on out-of-range
    indices and NotAcyclic when the induced subgraph has a cycle.
    """
    members = getattr(s, "members", s)
    chosen = set(members)
    h = conflict_graph(inst)
    if not chosen <= set(range(len(h))):
        bad = sorted(chosen - set(range(len(h))))
        raise NotASubsetOfGamma(f"pair indices {bad} out of range")
    induced = {(a, b) for (a, b) in h.edges if a in chosen and b in chosen}
    if not is_acyclic(induced, chosen):
        raise NotAcyclic("chosen subset induces a cycle")

    beta = inst.beta
    n_base = inst.base_t1.n
    cur_t, cur_tp = inst.t1, inst.t2
    forward = []
    backward = []

    # pairs with points to move; identical apexes are already in place
    # (such pairs are isolated in the conflict graph) and beta = 0 pairs
    # carry no fan
    live = []
    apex_now = {}
    for i in range(len(inst.pairs)):
        v1, v3, pts, v2, v2p = _pair_geometry(inst, i)
        apex_now[i] = v2
        if pts and v2 != v2p:
            live.append(i)

    # parking: re-fan both sides of every unchosen pair onto v1
    for i in live:
        if i in chosen:
            continue
        v1, v3, pts, v2, v2p = _pair_geometry(inst, i)
        flips = _fan_cycle(cur_t, sorted((v1, v3, v2) + pts), v1)
        assert len(flips) == beta
        forward.extend(flips)
        cur_t = _apply(cur_t, flips)
        apex_now[i] = v1
        flips = _fan_cycle(cur_tp, sorted((v1, v3, v2p) + pts), v1)
        assert len(flips) == beta
        backward.extend(flips)
        cur_tp = _apply(cur_tp, flips)

    # conversion: move each chosen fan directly onto its target apex
    for i in _source_order([i for i in live if i in chosen], h.edges):
        v1, v3, pts, v2, v2p = _pair_geometry(inst, i)
        region = sorted((v1, v3, v2, v2p) + pts)
        k = len(region)
        pos = region.index(v2p)
        supports = [(region[pos - 1], v2p), (v2p, region[(pos + 1) % k])]

        # intermediate triangulation: every fan stays where it is
        # (including coinciding fans of pairs that need no processing),
        # the support edges appear, everything else is filled greedily
        wanted = list(supports)
        for j in range(len(inst.pairs)):
            jv1, jv3, jpts, _, _ = _pair_geometry(inst, j)
            if not jpts:
                continue
            a = apex_now[j]
            wanted.extend((p, a) for p in jpts)
            if a == jv1:
                wanted.append((jv1, jv3))
            else:
                wanted.extend(((jv1, a), (jv3, a)))
        chords = {
            tri.normalize(e) for e in wanted if not tri.is_boundary(cur_t.n, e)
        }
        t_mid = Triangulation(cur_t.n, complete_lex(cur_t.n, chords))
        assert len(cur_t.diagonals - t_mid.diagonals) <= n_base - 3
        setup = two_approx_sequence(cur_t, t_mid)
        forward.extend(setup)
        cur_t = t_mid

        flips = _fan_cycle(cur_t, region, v2p)
        assert len(flips) == beta + 1
        forward.extend(flips)
        cur_t = _apply(cur_t, flips)
        apex_now[i] = v2p

    # cleanup: all fans coincide now, align the remaining chords
    assert len(cur_t.diagonals - cur_tp.diagonals) <= n_base - 3
    bridge = two_approx_sequence(cur_t, cur_tp)

    seq = forward + bridge + _reverse_flips(inst.t2, backward)
    assert len(seq) <= upper_bound_value(n_base, len(inst.pairs), len(chosen), beta)
    validate_sequence(inst.t1, seq, target=inst.t2)
    return seq


# --- the direct/indirect analyzer ---------------------------------------------


@dataclass(frozen=True)
class SequenceAnalysis:
    gone: tuple  # per pair, first index whose triangulation lost the start fan
    direct: tuple  # per pair, True when a target-fan edge shows up by then
    direct_count: int
    indirect_count: int


def analyze_sequence(inst, flips, ac=None):
    """Classify every pair of a valid flip sequence as direct or indirect.

    A pair whose start and target fans coincide never loses its fan; its
    gone index is the sentinel one past the sequence end and it counts
    as direct.  When the exact maximum acyclic size is passed as ac the
    direct count is checked against it.
    """
    try:
        states = validate_sequence(inst.t1, flips, target=inst.t2)
    except (IllegalStep, WrongTarget) as exc:
        raise InvalidSequence(str(exc))
    diag = [st.diagonals for st in states]
    gone = []
    direct = []
    sentinel = []
    for i in range(len(inst.pairs)):
        lam = inst.fan_t1(i)
        lam_p = inst.fan_t2(i)
        sentinel.append(lam == lam_p)
        if lam == lam_p:
            gone.append(len(states))
            direct.append(True)
            continue
        g = next(a for a, d in enumerate(diag) if not (d & lam))
        gone.append(g)
        direct.append(any(diag[a] & lam_p for a in range(g + 1)))
    h = conflict_graph(inst)
    # the ordering argument needs genuine disjoint fans, which pairs
    # with coinciding (or empty, at beta = 0) fans do not have
    for (i, j) in sorted(h.edges):
        if direct[i] and direct[j] and not (sentinel[i] or sentinel[j]):
            assert gone[i] < gone[j], f"conflict edge {i}->{j} out of order"
    d_count = sum(direct)
    if ac is not None and inst.beta > 0:
        assert d_count <= ac, f"{d_count} direct pairs exceed ac = {ac}"
    return SequenceAnalysis(
        gone=tuple(gone),
        direct=tuple(direct),
        direct_count=d_count,
        indirect_count=len(inst.pairs) - d_count,
    )


def format_analysis(analysis):
    return f"analysis direct {analysis.direct_count} indirect {analysis.indirect_count}\n"


# --- end-to-end decision instances --------------------------------------------


def emit_theorem_instance(phi):
    """Blown-up pair and distance threshold deciding the 2SAT instance.

    The satisfiability target k' defaults to the clause count when the
    instance does not carry one.  The instance has a truth assignment
    satisfying at least k' clauses iff the flip distance of the emitted
    pair is at most the returned threshold.
    """
    red = build_reduction(phi)
    n = red.t1.n
    gamma = len(red.pairs)
    beta = theorem_beta(n)
    inst = blow_up(red.t1, red.t2, beta)
    k_prime = phi.k_prime if phi.k_prime is not None else phi.m
    threshold = upper_bound_value(
        n, gamma, phi.w * (phi.m + 1) + k_prime, beta
    )
    return inst.t1, inst.t2, threshold


# --- randomized end-to-end check ----------------------------------------------


@dataclass(frozen=True)
class SandwichTrial:
    t1: Triangulation
    t2: Triangulation
    gamma_size: int
    ac: int
    lower: int
    exact: int
    constructed: int
    upper: int


def sandwich_trials(n, beta, trials, seed=0, size_cap=13):
    """Random base pairs checked against both bounds.

    Draws pairs of triangulations of the n-gon until `trials` of them
    blow up to at most size_cap vertices, then verifies
    lower <= exact distance <= constructed length <= upper on each.
    """
    rng = random.Random(seed)
    ts = tri.enumerate_triangulations(n)
    out = []
    attempts = 0
    while len(out) < trials:
        attempts += 1
        if attempts > 1000 * trials:
            raise BudgetExceeded(
                f"could not draw {trials} instances under {size_cap} vertices"
            )
        t1 = rng.choice(ts)
        t2 = rng.choice(ts)
        inst = blow_up(t1, t2, beta)
        if inst.t1.n > size_cap:
            continue
        h = conflict_graph(inst)
        best = max_acyclic_subset(range(len(h)), h.edges)
        seq = construct_upper_sequence(inst, best)
        dist, _ = exact_distance(inst.t1, inst.t2)
        lower = lower_bound_value(n, len(h), best.size, beta)
        upper = upper_bound_value(n, len(h), best.size, beta)
        assert lower <= dist <= len(seq) <= upper
        out.append(
            SandwichTrial(
                t1=t1,
                t2=t2,
                gamma_size=len(h),
                ac=best.size,
                lower=lower,
                exact=dist,
                constructed=len(seq),
                upper=upper,
            )
        )
    return out
