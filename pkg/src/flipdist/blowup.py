"""Spine pairs, blow-ups, and conflict graphs.

A spine pair couples a spine edge (u, u+1) that is the unique spine edge
of its triangle in BOTH triangulations of a pair; the two apexes give
the pair its type.  Blowing up by beta subdivides each such edge with
beta fresh vertices and fans them from the apex on each side; the fans
of different pairs either cross completely or not at all, which turns
crossing into a directed graph on the pairs.

Type of a pair with spine edge (v1, v3), start apex v2, target apex v2':

    above      v2 < v2' < v1 < v3      both apexes left of the edge
    below      v1 < v3 < v2 < v2'      both right
    crossing   v2' < v1 < v3 < v2      target apex left, start apex right
    other      anything else (mirrored or coinciding apexes)
"""

from dataclasses import dataclass, field

from .errors import FormatError, NotAcyclic, WrongTarget
from . import triangulation as tri
from .triangulation import Triangulation

ABOVE = "above"
BELOW = "below"
CROSSING = "crossing"
OTHER = "other"

# directed categories allowed inside an acyclic witness: same type going
# left to right, plus the three downward jumps between types
ALLOWED_MIXED = {(ABOVE, CROSSING), (ABOVE, BELOW), (CROSSING, BELOW)}


@dataclass(frozen=True)
class SpinePair:
    index: int
    spine: tuple  # (u, u+1) in base labels
    apex_t: int
    apex_tp: int

    @property
    def type(self):
        return classify_pair(self)


def classify_pair(pair):
    v1, v3 = pair.spine
    v2, v2p = pair.apex_t, pair.apex_tp
    if v2 < v2p < v1:
        return ABOVE
    if v3 < v2 < v2p:
        return BELOW
    if v2p < v1 and v3 < v2:
        return CROSSING
    return OTHER


def _single_spine_apex(t, u):
    """Apex of the triangle on spine edge (u, u+1) if it is its only
    spine edge, else None."""
    inner, outer = tri.triangle_on_edge(t, (u, u + 1))
    apex = outer if inner is None else inner
    if apex is None:
        return None
    if apex == u - 1 or apex == u + 2:
        return None  # triangle carries a second spine edge
    return apex


def spine_pairs(t1, t2):
    """All spine pairs of (t1, t2), left to right, indexed from 0."""
    if t1.n != t2.n:
        raise WrongTarget("triangulations have different n")
    pairs = []
    for u in range(t1.n - 1):
        a1 = _single_spine_apex(t1, u)
        if a1 is None:
            continue
        a2 = _single_spine_apex(t2, u)
        if a2 is None:
            continue
        pairs.append(SpinePair(len(pairs), (u, u + 1), a1, a2))
    return pairs


@dataclass
class BlowupInstance:
    base_t1: Triangulation
    base_t2: Triangulation
    beta: int
    pairs: list  # SpinePair in base labels
    vertex_map: dict  # base vertex -> blown vertex
    t1: Triangulation  # blown
    t2: Triangulation  # blown
    points: list = field(default_factory=list)  # per pair, the new vertices

    def fan_t1(self, i):
        """Fan edges of pair i in the blown start triangulation."""
        a = self.vertex_map[self.pairs[i].apex_t]
        return frozenset(tri.normalize((a, p)) for p in self.points[i])

    def fan_t2(self, i):
        a = self.vertex_map[self.pairs[i].apex_tp]
        return frozenset(tri.normalize((a, p)) for p in self.points[i])


def blow_up(t1, t2, beta):
    """Subdivide every spine-pair edge with beta vertices and fan them.

    beta = 0 returns the instance unchanged (identity vertex map).
    Order between vertices is preserved; each pair's new vertices lie
    strictly between the images of its spine edge endpoints.
    """
    if beta < 0:
        raise WrongTarget(f"beta must be >= 0, got {beta}")
    pairs = spine_pairs(t1, t2)
    n = t1.n
    starts = {p.spine[0]: p.index for p in pairs}
    vertex_map = {}
    points = [[] for _ in pairs]
    nxt = 0
    for v in range(n):
        vertex_map[v] = nxt
        nxt += 1
        if v in starts and beta > 0:
            i = starts[v]
            points[i] = list(range(nxt, nxt + beta))
            nxt += beta

    def blown(t, apex_of):
        edges = [
            (vertex_map[a], vertex_map[b]) for a, b in t.diagonals
        ]
        for p in pairs:
            a = vertex_map[apex_of(p)]
            edges.extend(tri.normalize((a, q)) for q in points[p.index])
        return Triangulation(nxt, edges, check=False)

    b1 = blown(t1, lambda p: p.apex_t)
    b2 = blown(t2, lambda p: p.apex_tp)
    tri.validate(b1)
    tri.validate(b2)
    return BlowupInstance(
        base_t1=t1,
        base_t2=t2,
        beta=beta,
        pairs=pairs,
        vertex_map=vertex_map,
        t1=b1,
        t2=b2,
        points=points,
    )


def fan_crossing_counts(inst, i, j):
    """Number of crossing (start-fan-of-i, target-fan-of-j) edge pairs."""
    f1 = inst.fan_t1(i)
    f2 = inst.fan_t2(j)
    return sum(1 for e1 in f1 for e2 in f2 if tri.crosses(e1, e2))


class ConflictGraph:
    """Directed graph on pair indices: i -> j iff the start fan of i
    crosses the target fan of j.  No self loops (i != j only)."""

    def __init__(self, pairs, edges, types=None):
        self.pairs = list(pairs)
        self.edges = set(edges)
        self.types = types or [p.type for p in self.pairs]

    def __len__(self):
        return len(self.pairs)

    def successors(self, i):
        return sorted(j for (a, j) in self.edges if a == i)

    def doubles(self):
        return sorted(
            (i, j) for (i, j) in self.edges if i < j and (j, i) in self.edges
        )

    def directed_only(self):
        return sorted((i, j) for (i, j) in self.edges if (j, i) not in self.edges)


def conflict_graph(arg1, arg2=None):
    """Conflict graph of a triangulation pair (or a BlowupInstance).

    Always computed on a beta = 1 blow-up: crossing between two pairs'
    fans is all-or-nothing, so one representative edge per fan decides.
    """
    if isinstance(arg1, BlowupInstance):
        t1, t2 = arg1.base_t1, arg1.base_t2
    else:
        t1, t2 = arg1, arg2
    inst = blow_up(t1, t2, 1)
    m = len(inst.pairs)
    edges = set()
    for i in range(m):
        f1 = next(iter(inst.fan_t1(i)))
        for j in range(m):
            if i == j:
                continue
            f2 = next(iter(inst.fan_t2(j)))
            if tri.crosses(f1, f2):
                edges.add((i, j))
    return ConflictGraph(inst.pairs, edges)


def check_acyclic_premises(h, types, s):
    """Check the sufficient condition for s to induce an acyclic subset.

    Every member of s must have a named type (above/below/crossing) and
    every conflict edge inside s must be same-type or one of the allowed
    downward jumps.  Returns None when the premises hold (and asserts
    that s then really is acyclic); otherwise returns (edge, reason).
    """
    s = set(s)
    for i in s:
        if types[i] == OTHER:
            return ((i, i), f"pair {i} has no named type")
    for (i, j) in sorted(h.edges):
        if i in s and j in s:
            ti, tj = types[i], types[j]
            if ti == tj:
                continue
            if (ti, tj) in ALLOWED_MIXED:
                continue
            return ((i, j), f"edge {i}->{j} is {ti}->{tj}")
    from .acyclic import is_acyclic

    if not is_acyclic(_induced_edges(h, s), s):
        raise NotAcyclic("premises held but subset is cyclic")
    return None


def _induced_edges(h, s):
    return {(i, j) for (i, j) in h.edges if i in s and j in s}


# --- text format ------------------------------------------------------------
#
#   pairs 3
#   pair 0 2 3 0 1 above
#   pair 1 5 6 8 7 below
#   pair 2 9 10 12 8 other
#   conf 0 1
#   conf 1 0
#
# pair <index> <spineA> <spineB> <apexT> <apexTp> <type>; conf lines are
# directed edges, ascending.


def format_conflict_graph(h):
    lines = [f"pairs {len(h.pairs)}"]
    for p in h.pairs:
        lines.append(
            f"pair {p.index} {p.spine[0]} {p.spine[1]} "
            f"{p.apex_t} {p.apex_tp} {p.type}"
        )
    for i, j in sorted(h.edges):
        lines.append(f"conf {i} {j}")
    return "\n".join(lines) + "\n"


def parse_conflict_graph(text):
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("pairs "):
        raise FormatError("first line must be 'pairs <count>'")
    try:
        count = int(lines[0].split()[1])
    except (IndexError, ValueError):
        raise FormatError("first line must be 'pairs <count>'")
    pairs = []
    edges = set()
    for ln in lines[1:]:
        parts = ln.split()
        if parts[0] == "pair":
            if len(parts) != 7:
                raise FormatError(f"bad pair line: {ln!r}")
            idx, sa, sb, at, atp = map(int, parts[1:6])
            if idx != len(pairs):
                raise FormatError("pair indices must be consecutive from 0")
            p = SpinePair(idx, (sa, sb), at, atp)
            if p.type != parts[6]:
                raise FormatError(
                    f"pair {idx} type {parts[6]!r} does not match apexes"
                )
            pairs.append(p)
        elif parts[0] == "conf":
            if len(parts) != 3:
                raise FormatError(f"bad conf line: {ln!r}")
            i, j = int(parts[1]), int(parts[2])
            if i == j:
                raise FormatError("self loops are not allowed")
            edges.add((i, j))
        else:
            raise FormatError(f"unexpected line: {ln!r}")
    if len(pairs) != count:
        raise FormatError(f"expected {count} pairs, found {len(pairs)}")
    for i, j in edges:
        if not (0 <= i < count and 0 <= j < count):
            raise FormatError(f"conf ({i}, {j}) out of range")
    return ConflictGraph(pairs, edges)
