"""Triangulations of a convex polygon, stored as their diagonal sets.

Vertices are 0..n-1 in convex position; drawing them on a line with the
closing edge (0, n-1) bent around gives the linear representation used
throughout: "spine" edges are the consecutive ones (i, i+1), and two
chords cross iff their endpoints strictly alternate along the line.

A triangulation is the polygon plus n-3 pairwise non-crossing diagonals.
Boundary edges (spine edges and the closing edge) are implicit and never
stored.
"""

from .errors import (
    CrossingPair,
    FormatError,
    NotADiagonal,
    NotInterior,
    TooLarge,
    WrongCount,
)

ENUMERATE_CAP = 14  # Catalan(12) = 208012 triangulations, still listable


def normalize(e):
    a, b = e
    return (a, b) if a <= b else (b, a)


def crosses(e1, e2):
    """True iff chords e1, e2 of a convex polygon properly cross.

    In the linear representation this is strict alternation of the four
    endpoints; chords sharing an endpoint never cross.
    """
    a1, b1 = normalize(e1)
    a2, b2 = normalize(e2)
    return (a1 < a2 < b1 < b2) or (a2 < a1 < b2 < b1)


def is_boundary(n, e):
    a, b = normalize(e)
    return b - a == 1 or (a == 0 and b == n - 1)


class Triangulation:
    """Immutable triangulation of the convex n-gon."""

    __slots__ = ("n", "diagonals")

    def __init__(self, n, diagonals, check=True):
        self.n = n
        self.diagonals = frozenset(normalize(e) for e in diagonals)
        if check:
            validate(self)

    def __eq__(self, other):
        return (
            isinstance(other, Triangulation)
            and self.n == other.n
            and self.diagonals == other.diagonals
        )

    def __hash__(self):
        return hash((self.n, self.diagonals))

    def __repr__(self):
        return f"Triangulation({self.n}, {sorted(self.diagonals)})"

    def has_edge(self, e):
        """Boundary or diagonal."""
        return is_boundary(self.n, e) or normalize(e) in self.diagonals


def validate(t):
    """Check diagonal count, ranges, interior-ness, and pairwise non-crossing.

    Non-crossing is checked with a single left-to-right sweep keeping a
    stack of open chords, so large instances stay cheap: a chord opened
    earlier must not need to close while a later-opened chord is still
    open above it.
    """
    n = t.n
    if n < 3:
        raise WrongCount(f"polygon needs at least 3 vertices, got {n}")
    if len(t.diagonals) != n - 3:
        raise WrongCount(f"expected {n - 3} diagonals, got {len(t.diagonals)}")
    for e in t.diagonals:
        a, b = e
        if not (0 <= a < b <= n - 1):
            raise NotADiagonal(e)
        if is_boundary(n, e):
            raise NotInterior(e)

    opens = {}  # a -> edges opening at a, innermost (largest b) pushed last
    closes = {}
    for e in t.diagonals:
        a, b = e
        opens.setdefault(a, []).append(e)
        closes.setdefault(b, []).append(e)
    stack = []
    for v in range(n):
        for e in sorted(closes.get(v, ()), key=lambda d: -d[0]):
            if not stack:
                raise CrossingPair(e, e)  # unreachable for well-formed input
            top = stack.pop()
            if top != e:
                # e is buried under top, so they alternate
                raise CrossingPair(e, top)
        for e in sorted(opens.get(v, ()), key=lambda d: -d[1]):
            stack.append(e)


def faces(t):
    """All n - 2 triangles, each a sorted vertex triple.

    Recursion on intervals: the triangle resting on edge (i, j) has apex
    k, the unique interior vertex joined to both ends.
    """
    n = t.n
    out = []

    def rec(i, j):
        if j - i < 2:
            return
        for k in range(i + 1, j):
            if t.has_edge((i, k)) and t.has_edge((k, j)):
                out.append((i, k, j))
                rec(i, k)
                rec(k, j)
                return
        raise CrossingPair((i, j), (i, j))  # unreachable on validated input

    rec(0, n - 1)
    return out


def triangle_on_edge(t, e, side=None):
    """Apex (or apexes) of the triangle(s) adjacent to edge e.

    Returns the pair (inner_apex, outer_apex) relative to the interval
    (a, b): inner lies strictly between a and b, outer does not.  A
    boundary edge has only one; the missing side is None.
    """
    a, b = normalize(e)
    n = t.n
    inner = None
    for k in range(a + 1, b):
        if t.has_edge((a, k)) and t.has_edge((k, b)):
            inner = k
            break
    outer = None
    for k in list(range(0, a)) + list(range(b + 1, n)):
        if t.has_edge((a, k)) and t.has_edge((k, b)):
            outer = k
            break
    return inner, outer


def flip(t, e):
    r"""Flip diagonal e, returning the new triangulation.

    The two triangles on e form a quadrilateral; e is replaced by the
    other diagonal of that quadrilateral:

            k                   k
           / \                 /|\
          /   \               / | \
         a-----b    ->       a  |  b
          \   /               \ | /
           \ /                 \|/
            u                   u

    (edge (a, b) becomes (k, u)).
    """
    e = normalize(e)
    if is_boundary(t.n, e):
        raise NotInterior(e)
    if e not in t.diagonals:
        raise NotADiagonal(e)
    inner, outer = triangle_on_edge(t, e)
    new_e = normalize((inner, outer))
    return Triangulation(
        t.n, (t.diagonals - {e}) | {new_e}, check=False
    )


def flipped_edge(t, e):
    """The diagonal that replaces e when e is flipped in t."""
    e = normalize(e)
    if is_boundary(t.n, e):
        raise NotInterior(e)
    if e not in t.diagonals:
        raise NotADiagonal(e)
    inner, outer = triangle_on_edge(t, e)
    return normalize((inner, outer))


def flip_neighbors(t):
    """All triangulations one flip away, sorted by the flipped diagonal."""
    return [flip(t, e) for e in sorted(t.diagonals)]


def enumerate_triangulations(n):
    """All triangulations of the convex n-gon, deterministic order.

    Recurrence on the apex of the triangle resting on the closing edge.
    Raises TooLarge above the documented cap.
    """
    if n > ENUMERATE_CAP:
        raise TooLarge(f"enumerate supports n <= {ENUMERATE_CAP}, got {n}")
    if n < 3:
        raise TooLarge(f"enumerate needs n >= 3, got {n}")

    def rec(i, j):
        # diagonal sets triangulating the polygon on vertices i..j
        if j - i < 2:
            return [frozenset()]
        out = []
        for k in range(i + 1, j):
            left = rec(i, k)
            right = rec(k, j)
            extra = []
            if k - i >= 2:
                extra.append((i, k))
            if j - k >= 2:
                extra.append((k, j))
            e = frozenset(extra)
            for ds1 in left:
                for ds2 in right:
                    out.append(ds1 | ds2 | e)
        return out

    return [Triangulation(n, ds, check=False) for ds in rec(0, n - 1)]


def fan(n, apex):
    """The triangulation whose every diagonal touches apex."""
    diags = [
        normalize((apex, v))
        for v in range(n)
        if v != apex and not is_boundary(n, (apex, v))
    ]
    return Triangulation(n, diags, check=False)


def complete_lex(n, chords):
    """Extend a non-crossing chord set to a full triangulation.

    Candidate chords are scanned in lexicographic order, which fans
    every remaining face from its leftmost vertex.  Returns the
    diagonal set; the input chords are all kept.
    """
    out = set(normalize(e) for e in chords)
    for a in range(n - 2):
        for b in range(a + 2, n):
            if (a, b) in out or is_boundary(n, (a, b)):
                continue
            if any(crosses((a, b), e) for e in out):
                continue
            out.add((a, b))
    return out


def canonical_key(t):
    """Stable bytes key: n and the sorted diagonal list."""
    parts = [str(t.n)] + [f"{a},{b}" for a, b in sorted(t.diagonals)]
    return ";".join(parts).encode("ascii")


# --- text format ------------------------------------------------------------
#
#   n 6
#   d 0 2
#   d 0 3
#   d 3 5
#
# One diagonal per line, a < b, lines in ascending lexicographic order.


def format_tri(t):
    lines = [f"n {t.n}"]
    for a, b in sorted(t.diagonals):
        lines.append(f"d {a} {b}")
    return "\n".join(lines) + "\n"


def parse_tri(text):
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("n "):
        raise FormatError("first line must be 'n <int>'")
    try:
        n = int(lines[0].split()[1])
    except (IndexError, ValueError):
        raise FormatError("first line must be 'n <int>'")
    diags = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 3 or parts[0] != "d":
            raise FormatError(f"bad diagonal line: {ln!r}")
        try:
            a, b = int(parts[1]), int(parts[2])
        except ValueError:
            raise FormatError(f"bad diagonal line: {ln!r}")
        if a >= b:
            raise FormatError(f"diagonal must satisfy a < b: {ln!r}")
        diags.append((a, b))
    if sorted(diags) != diags:
        raise FormatError("diagonal lines out of order")
    if len(set(diags)) != len(diags):
        raise FormatError("duplicate diagonal")
    t = Triangulation(n, diags, check=False)
    validate(t)
    return t
