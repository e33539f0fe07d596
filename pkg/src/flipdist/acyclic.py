"""Maximum induced acyclic vertex subsets of directed graphs.

The exact solver is branch and bound over include/exclude decisions:
2-cycles force branching (at most one endpoint survives), longer cycles
branch over which member to drop, and vertices that cannot lie on any
remaining cycle are always taken.  A greedy disjoint-2-cycle packing
bounds how many exclusions are still unavoidable.  Vertex sets are
represented as bitmasks.

Witnesses are deterministic: among all maximum subsets the solver
returns the lexicographically smallest member list.
"""

from dataclasses import dataclass

from .errors import FormatError, TooLargeForExact

EXACT_CAP = 40


def is_acyclic(edges, vertices):
    """Kahn's algorithm on the subgraph induced by vertices."""
    vs = set(vertices)
    indeg = {v: 0 for v in vs}
    out = {v: [] for v in vs}
    for (a, b) in edges:
        if a in vs and b in vs:
            out[a].append(b)
            indeg[b] += 1
    queue = [v for v in vs if indeg[v] == 0]
    seen = 0
    while queue:
        v = queue.pop()
        seen += 1
        for w in out[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)
    return seen == len(vs)


@dataclass(frozen=True)
class AcyclicResult:
    size: int
    members: tuple
    exact: bool


class _Engine:
    def __init__(self, n, out, inn):
        self.n = n
        self.out = out
        self.inn = inn
        self.full = (1 << n) - 1
        self.two = [out[v] & inn[v] for v in range(n)]  # 2-cycle partners

    def acyclic_mask(self, mask):
        """Is the induced subgraph on mask acyclic (Kahn on bitmasks)?"""
        indeg = {}
        queue = []
        m = mask
        while m:
            v = (m & -m).bit_length() - 1
            m &= m - 1
            d = bin(self.inn[v] & mask).count("1")
            indeg[v] = d
            if d == 0:
                queue.append(v)
        seen = 0
        while queue:
            v = queue.pop()
            seen += 1
            ws = self.out[v] & mask
            while ws:
                w = (ws & -ws).bit_length() - 1
                ws &= ws - 1
                indeg[w] -= 1
                if indeg[w] == 0:
                    queue.append(w)
        return seen == len(indeg)

    def find_cycle(self, mask):
        """Some directed cycle within mask, as an ordered vertex list."""
        color = {}
        stack_path = []

        def dfs(v):
            color[v] = 1
            stack_path.append(v)
            ws = self.out[v] & mask
            while ws:
                w = (ws & -ws).bit_length() - 1
                ws &= ws - 1
                c = color.get(w, 0)
                if c == 1:
                    i = stack_path.index(w)
                    return stack_path[i:]
                if c == 0:
                    cyc = dfs(w)
                    if cyc is not None:
                        return cyc
            color[v] = 2
            stack_path.pop()
            return None

        m = mask
        while m:
            v = (m & -m).bit_length() - 1
            m &= m - 1
            if color.get(v, 0) == 0:
                cyc = dfs(v)
                if cyc is not None:
                    return cyc
        return None

    def packing_bound(self, mask):
        """Greedy vertex-disjoint 2-cycles in mask; each costs an exclusion."""
        count = 0
        used = 0
        m = mask
        while m:
            v = (m & -m).bit_length() - 1
            m &= m - 1
            if used >> v & 1:
                continue
            ps = self.two[v] & mask & ~used
            if ps:
                w = (ps & -ps).bit_length() - 1
                used |= (1 << v) | (1 << w)
                count += 1
        return count

    def reduce(self, inc, exc):
        """Fixpoint of forced include/exclude moves; returns (inc, exc)."""
        changed = True
        while changed:
            changed = False
            und = self.full & ~inc & ~exc
            alive = inc | und
            m = und
            while m:
                v = (m & -m).bit_length() - 1
                m &= m - 1
                if self.two[v] & inc:
                    exc |= 1 << v  # 2-cycle partner already committed
                    changed = True
                elif not (self.inn[v] & alive) or not (self.out[v] & alive):
                    inc |= 1 << v  # can never lie on a remaining cycle
                    changed = True
                if changed:
                    break
        return inc, exc

    def search(self, inc, exc, best, target=None):
        """Best completion size; with target set, early-exit decision mode.

        Returns the best size found (>= best), or target when a subset of
        that size exists in decision mode.
        """
        inc, exc = self.reduce(inc, exc)
        und = self.full & ~inc & ~exc
        alive = inc | und
        upper = bin(alive).count("1") - self.packing_bound(und)
        if target is not None:
            if upper < target:
                return best
        elif upper <= best:
            return best
        if self.acyclic_mask(alive):
            size = bin(alive).count("1")
            if target is not None and size >= target:
                return target
            return max(best, size)
        cycle = self.find_cycle(alive)
        cyc_und = [v for v in cycle if und >> v & 1]
        if not cyc_und:
            return best  # cycle fully inside committed vertices
        pre = 0
        for v in cyc_und:
            got = self.search(inc | pre, exc | (1 << v), best, target)
            if target is not None and got >= target:
                return got
            best = max(best, got)
            pre |= 1 << v
            if not self.acyclic_mask(inc | pre):
                break
        return best


def _build_engine(vertices, edges):
    verts = sorted(set(vertices))
    index = {v: i for i, v in enumerate(verts)}
    n = len(verts)
    out = [0] * n
    inn = [0] * n
    for (a, b) in edges:
        if a in index and b in index and a != b:
            out[index[a]] |= 1 << index[b]
            inn[index[b]] |= 1 << index[a]
    return verts, _Engine(n, out, inn)


def max_acyclic_subset(vertices, edges):
    """Exact maximum induced acyclic subset with deterministic witness.

    Raises TooLargeForExact beyond EXACT_CAP vertices.
    """
    verts, eng = _build_engine(vertices, edges)
    n = eng.n
    if n > EXACT_CAP:
        raise TooLargeForExact(f"exact solver supports <= {EXACT_CAP} vertices")
    if n == 0:
        return AcyclicResult(0, (), True)
    seed = heuristic_acyclic(vertices, edges)
    best = eng.search(0, 0, seed.size)

    # lexicographically smallest witness of the optimum size
    inc = 0
    exc = 0
    taken = []
    for i in range(n):
        trial = eng.search(inc | (1 << i), exc, best - 1, target=best)
        if trial >= best:
            inc |= 1 << i
            taken.append(verts[i])
        else:
            exc |= 1 << i
    assert len(taken) == best
    return AcyclicResult(best, tuple(taken), True)


def heuristic_acyclic(vertices, edges):
    """Peel sources and sinks, drop busiest vertices when stuck, then try
    to re-add dropped vertices in index order.  Never below the plain
    peeling baseline; exact flag false."""
    verts, eng = _build_engine(vertices, edges)
    n = eng.n
    active = eng.full
    kept = 0
    dropped = []
    while active:
        moved = False
        m = active
        while m:
            v = (m & -m).bit_length() - 1
            m &= m - 1
            if not (eng.inn[v] & active) or not (eng.out[v] & active):
                kept |= 1 << v
                active &= ~(1 << v)
                moved = True
        if moved:
            continue
        # stuck: every remaining vertex lies on a cycle; drop the busiest
        busiest = max(
            _bits(active),
            key=lambda v: (
                bin(eng.inn[v] & active).count("1")
                * bin(eng.out[v] & active).count("1"),
                -v,
            ),
        )
        dropped.append(busiest)
        active &= ~(1 << busiest)
    for v in sorted(dropped):
        if eng.acyclic_mask(kept | (1 << v)):
            kept |= 1 << v
    members = tuple(verts[v] for v in _bits(kept))
    return AcyclicResult(len(members), members, False)


def _bits(mask):
    out = []
    while mask:
        v = (mask & -mask).bit_length() - 1
        mask &= mask - 1
        out.append(v)
    return out


# --- text format ------------------------------------------------------------
#
#   ac 5 exact
#   in 0
#   in 2
#
# First line carries size and exact|heur; one "in" line per member.


def format_acyclic_result(res):
    lines = [f"ac {res.size} {'exact' if res.exact else 'heur'}"]
    for v in res.members:
        lines.append(f"in {v}")
    return "\n".join(lines) + "\n"


def parse_acyclic_result(text):
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("ac "):
        raise FormatError("first line must be 'ac <size> exact|heur'")
    parts = lines[0].split()
    if len(parts) != 3 or parts[2] not in ("exact", "heur"):
        raise FormatError("first line must be 'ac <size> exact|heur'")
    size = int(parts[1])
    members = []
    for ln in lines[1:]:
        p = ln.split()
        if len(p) != 2 or p[0] != "in":
            raise FormatError(f"bad member line: {ln!r}")
        members.append(int(p[1]))
    if len(members) != size:
        raise FormatError("member count does not match size")
    return AcyclicResult(size, tuple(members), parts[2] == "exact")
