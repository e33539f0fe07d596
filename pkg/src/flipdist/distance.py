"""Flip sequences and flip distance.

Distance between two triangulations of the same polygon is computed by
first splitting along common diagonals (flipping a diagonal shared by
start and target never helps, so the instance decomposes into
independent sub-polygons) and then running a bidirectional BFS over the
flip graph of each part.  Witnesses are deterministic: frontiers expand
in canonical-key order and ties pick the smallest key.
"""

from collections import deque

from .errors import (
    BudgetExceeded,
    FormatError,
    IllegalStep,
    NotADiagonal,
    NotASubpolygon,
    NotInterior,
    TooLarge,
    WrongTarget,
)
from . import triangulation as tri
from .triangulation import Triangulation

DIAMETER_CAP = 10
DEFAULT_BUDGET = 5_000_000


def validate_sequence(start, flips, target=None):
    """Replay flips from start; return every intermediate triangulation.

    Raises IllegalStep(i) when step i cannot be applied, WrongTarget when
    a target is given and the final triangulation differs.
    """
    states = [start]
    cur = start
    for i, e in enumerate(flips):
        try:
            cur = tri.flip(cur, e)
        except (NotADiagonal, NotInterior) as exc:
            raise IllegalStep(i, str(exc))
        states.append(cur)
    if target is not None and cur != target:
        raise WrongTarget(
            f"sequence ends at {sorted(cur.diagonals)}, "
            f"not {sorted(target.diagonals)}"
        )
    return states


def _induced(t, verts):
    """Relabeled sub-triangulation of t on a cyclic vertex subset."""
    index = {v: i for i, v in enumerate(verts)}
    vs = set(verts)
    diags = []
    for a, b in t.diagonals:
        if a in vs and b in vs:
            ia, ib = index[a], index[b]
            if not tri.is_boundary(len(verts), (ia, ib)):
                diags.append((ia, ib))
    return Triangulation(len(verts), diags)


def happy_split(t1, t2):
    """Split along common diagonals into independent sub-instances.

    Returns a list of (vertices, sub_t1, sub_t2) with vertices an
    ascending tuple of original labels and the sub-triangulations
    relabeled order-preservingly to 0..k-1.  Parts that are single
    triangles carry no diagonals and are omitted; the flip distance of
    (t1, t2) is the sum over the returned parts.
    """
    if t1.n != t2.n:
        raise WrongTarget("triangulations have different n")
    common = t1.diagonals & t2.diagonals
    parts = []

    def rec(verts):
        k = len(verts)
        if k < 4:
            return
        vs = set(verts)
        pos = {v: i for i, v in enumerate(verts)}
        for a, b in sorted(common):
            if a in vs and b in vs and (pos[b] - pos[a]) not in (1, k - 1):
                inside = tuple(v for v in verts if a <= v <= b)
                outside = tuple(v for v in verts if v <= a or v >= b)
                rec(inside)
                rec(outside)
                return
        parts.append((tuple(verts), _induced(t1, verts), _induced(t2, verts)))

    rec(tuple(range(t1.n)))
    return sorted(parts, key=lambda p: p[0])


def _bfs_between(s, t, budget):
    """Bidirectional BFS over the flip graph; returns (dist, flips).

    prev maps store (parent, removed_edge, added_edge): going forward
    from parent means flipping removed_edge, going back means flipping
    added_edge.
    """
    if s == t:
        return 0, []
    dist_a = {s: 0}
    dist_b = {t: 0}
    prev_a = {}
    prev_b = {}
    front_a = [s]
    front_b = [t]
    depth_a = depth_b = 0
    best = None
    meets = []
    visited = 2

    while front_a and front_b and (best is None or depth_a + depth_b + 1 < best):
        if len(front_a) <= len(front_b):
            front, dist, prev = front_a, dist_a, prev_a
            other = dist_b
            grow_a = True
        else:
            front, dist, prev = front_b, dist_b, prev_b
            other = dist_a
            grow_a = False
        new_front = []
        for u in sorted(front, key=tri.canonical_key):
            du = dist[u]
            for e in sorted(u.diagonals):
                v = tri.flip(u, e)
                if v not in dist:
                    dist[v] = du + 1
                    added = next(iter(v.diagonals - u.diagonals))
                    prev[v] = (u, e, added)
                    new_front.append(v)
                    visited += 1
                    if visited > budget:
                        raise BudgetExceeded(
                            f"flip distance search exceeded {budget} states"
                        )
                    if v in other:
                        total = dist[v] + other[v]
                        if best is None or total < best:
                            best = total
                            meets = [v]
                        elif total == best:
                            meets.append(v)
        if grow_a:
            front_a = new_front
            depth_a += 1
        else:
            front_b = new_front
            depth_b += 1

    if best is None:
        raise WrongTarget("flip graph is connected; unreachable target")
    meet = min(meets, key=tri.canonical_key)

    forward = []
    cur = meet
    while cur != s:
        p, removed, added = prev_a[cur]
        forward.append(removed)
        cur = p
    forward.reverse()
    cur = meet
    backward = []
    while cur != t:
        p, removed, added = prev_b[cur]
        backward.append(added)
        cur = p
    return best, forward + backward


def exact_distance(t1, t2, budget=None):
    """Exact flip distance with a witness sequence.

    Returns (distance, flips); replaying flips from t1 reaches t2.
    Raises BudgetExceeded when the search front grows past the budget
    (default 5,000,000 states; instances with up to 14 vertices are
    comfortably inside it).
    """
    if budget is None:
        budget = DEFAULT_BUDGET
    total = 0
    flips = []
    for verts, s1, s2 in happy_split(t1, t2):
        d, part = _bfs_between(s1, s2, budget)
        total += d
        flips.extend((verts[a], verts[b]) for a, b in part)
    return total, flips


def diameter(n):
    """Largest flip distance between any two triangulations of the n-gon."""
    if n > DIAMETER_CAP:
        raise TooLarge(f"diameter supports n <= {DIAMETER_CAP}, got {n}")
    ts = tri.enumerate_triangulations(n)
    index = {t.diagonals: i for i, t in enumerate(ts)}
    adj = [
        [index[u.diagonals] for u in tri.flip_neighbors(t)] for t in ts
    ]
    best = 0
    for src in range(len(ts)):
        dist = [-1] * len(ts)
        dist[src] = 0
        q = deque([src])
        far = 0
        while q:
            u = q.popleft()
            for v in adj[u]:
                if dist[v] < 0:
                    dist[v] = dist[u] + 1
                    far = max(far, dist[v])
                    q.append(v)
        best = max(best, far)
    return best


def _fan_cycle(t, verts, apex):
    """Flips fanning the sub-polygon on verts to apex, original labels.

    verts must be an ascending cyclic vertex subset whose consecutive
    pairs (and closing pair) are all edges of t; apex one of them.  Each
    flip produces a new apex-incident edge, so every interior diagonal
    not already at apex is flipped exactly once, outermost first.
    """
    verts = tuple(verts)
    k = len(verts)
    if apex not in verts:
        raise NotASubpolygon(f"apex {apex} outside region")
    for i in range(k):
        a, b = verts[i], verts[(i + 1) % k]
        if not t.has_edge((a, b)):
            raise NotASubpolygon(f"boundary pair ({a}, {b}) is not an edge")
    sub = _induced(t, verts)
    if len(sub.diagonals) != k - 3 and k >= 3:
        raise NotASubpolygon("region is not fully triangulated inside")
    rel_apex = verts.index(apex)
    flips = []
    cur = sub
    while True:
        candidates = []
        for e in sorted(cur.diagonals):
            if rel_apex in e:
                continue
            inner, outer = tri.triangle_on_edge(cur, e)
            if rel_apex in (inner, outer):
                candidates.append(e)
        if not candidates:
            break
        e = candidates[0]
        flips.append((verts[e[0]], verts[e[1]]))
        cur = tri.flip(cur, e)
    assert all(rel_apex in e for e in cur.diagonals)
    return flips


def fan_sequence(t, region, apex):
    """Flips that fan the sub-polygon on the vertex interval region to apex.

    region is (lo, hi); the chord (lo, hi) must be an edge of t.  The
    sequence length equals the number of diagonals strictly inside the
    region not already incident to apex.
    """
    lo, hi = region
    if not (0 <= lo < hi <= t.n - 1) or hi - lo < 2:
        raise NotASubpolygon(f"bad region ({lo}, {hi})")
    if not t.has_edge((lo, hi)):
        raise NotASubpolygon(f"({lo}, {hi}) is not an edge")
    if not (lo <= apex <= hi):
        raise NotASubpolygon(f"apex {apex} outside region ({lo}, {hi})")
    return _fan_cycle(t, tuple(range(lo, hi + 1)), apex)


def _reverse_flips(start, flips):
    """Flips that undo the given sequence (target back to start)."""
    states = validate_sequence(start, flips)
    rev = []
    for i in range(len(flips) - 1, -1, -1):
        added = next(iter(states[i + 1].diagonals - states[i].diagonals))
        rev.append(added)
    return rev


def two_approx_sequence(t1, t2):
    """A valid flip sequence from t1 to t2 of length <= 2 |t1 \\ t2|.

    Per happy-split component, fan both sides to the component's
    smallest vertex and splice the target side reversed.  Diagonals
    already incident to the common apex are never flipped, so each side
    uses at most the number of its own non-shared diagonals.
    """
    flips = []
    for verts, s1, s2 in happy_split(t1, t2):
        down = _fan_cycle(s1, range(len(verts)), 0)
        up = _fan_cycle(s2, range(len(verts)), 0)
        comp = down + _reverse_flips(s2, up)
        flips.extend((verts[a], verts[b]) for a, b in comp)
    return flips


# --- text format ------------------------------------------------------------
#
#   n 6
#   start
#   d 0 2
#   d 0 3
#   d 0 4
#   flip 0 2
#   flip 0 3
#
# The block after "start" is the start triangulation's diagonal list in
# .tri order; each "flip a b" names the diagonal removed at that step.


def format_seq(start, flips):
    lines = [f"n {start.n}", "start"]
    for a, b in sorted(start.diagonals):
        lines.append(f"d {a} {b}")
    for a, b in flips:
        lines.append(f"flip {a} {b}")
    return "\n".join(lines) + "\n"


def parse_seq(text):
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if len(lines) < 2 or not lines[0].startswith("n ") or lines[1] != "start":
        raise FormatError("sequence must begin with 'n <int>' and 'start'")
    try:
        n = int(lines[0].split()[1])
    except (IndexError, ValueError):
        raise FormatError("bad n line")
    diags = []
    flips = []
    in_flips = False
    for ln in lines[2:]:
        parts = ln.split()
        if parts[0] == "d" and not in_flips:
            if len(parts) != 3:
                raise FormatError(f"bad diagonal line: {ln!r}")
            diags.append((int(parts[1]), int(parts[2])))
        elif parts[0] == "flip":
            in_flips = True
            if len(parts) != 3:
                raise FormatError(f"bad flip line: {ln!r}")
            flips.append((int(parts[1]), int(parts[2])))
        else:
            raise FormatError(f"unexpected line: {ln!r}")
    start = Triangulation(n, diags)
    return start, flips
