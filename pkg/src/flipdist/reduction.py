r"""Monotone planar Max-2SAT encoded as a triangulation pair.

Instances have w variables and m clauses; every clause joins two
variables with the same polarity ("pos" uses both positive, "neg" both
negated) and same-polarity clause intervals must not interleave.  The
construction lays one region per variable along the spine:

      a2                mu   a2' b2        x_left psi        b2'
      |  neg   x̄ block  |     |   |          |  x block  pos  |
      |  slots ███████  | ooo | . | ooo      |  ███████ slots |
       \________________ middle apexes _________________/

Each region carries, left to right: one anchor slot per negative clause
touching the variable, the m+1 unit edges of the x̄ copies, a middle
strip of apex vertices (the short apexes of the clause anchors, the two
fan apexes a2' and b2, and a parity dummy when needed), the m+1 unit
edges of the x copies, and one anchor slot per positive clause.  The x
copies form above pairs fanned from (a2, a2'), the x̄ copies below
pairs fanned from (b2, b2').  A positive clause contributes a crossing
pair C1 at its left variable and an above pair C2 at its right
variable whose long triangles share the chord between the two slots; a
negative clause mirrors this below the spine with a below pair Cbar1
and a crossing pair Cbar2.  Ear triangles tile the middle strips so
that no stray spine pair survives, and every remaining face is fanned
from its leftmost vertex (realised by adding chords in lexicographic
order).
"""

from dataclasses import dataclass
from itertools import product

from .acyclic import max_acyclic_subset
from .blowup import ABOVE, BELOW, CROSSING, conflict_graph
from .errors import (
    BadClause,
    FormatError,
    NotLaminar,
    NotMonotone,
    TooLarge,
    UnexpectedDirectedConflict,
    UnexpectedDoubleConflict,
)
from .triangulation import (
    Triangulation,
    complete_lex,
    crosses,
    is_boundary,
    normalize,
)
from .blowup import spine_pairs

POSITIVE = "pos"
NEGATIVE = "neg"

BRUTEFORCE_CAP = 20


@dataclass(frozen=True)
class Max2SatInstance:
    w: int
    clauses: tuple  # of (side, i, j) with side in {"pos", "neg"}, i < j
    k_prime: int = None

    @property
    def m(self):
        return len(self.clauses)


def validate_instance(phi):
    if phi.w < 1:
        raise BadClause(f"need at least one variable, got w={phi.w}")
    for c, (side, i, j) in enumerate(phi.clauses):
        if side not in (POSITIVE, NEGATIVE):
            raise NotMonotone(f"clause {c} has mixed or unknown side {side!r}")
        if not (1 <= i < j <= phi.w):
            raise BadClause(f"clause {c} has bad variables ({i}, {j})")
    for c1, (s1, i1, j1) in enumerate(phi.clauses):
        for c2 in range(c1 + 1, len(phi.clauses)):
            s2, i2, j2 = phi.clauses[c2]
            if s1 != s2:
                continue
            if i1 < i2 < j1 < j2 or i2 < i1 < j2 < j1:
                raise NotLaminar(s1, c1, c2)
    if phi.k_prime is not None and not (0 <= phi.k_prime <= phi.m):
        raise BadClause(f"target k'={phi.k_prime} out of range")


@dataclass(frozen=True)
class Reduction:
    phi: Max2SatInstance
    t1: Triangulation
    t2: Triangulation
    pairs: tuple  # SpinePair, left to right
    labels: tuple  # role label per pair index
    role_to_index: dict

    def conflict_graph(self):
        return conflict_graph(self.t1, self.t2)


def _anchor_order(phi, k, side):
    """Anchor slots of variable k for one side, in slot order.

    Clauses ending at k come first (innermost, largest partner, first),
    then clauses starting at k (outermost, largest partner, first); ties
    between identical clauses nest by clause index.
    """
    events = []
    for c, (s, i, j) in enumerate(phi.clauses):
        if s != side:
            continue
        if j == k:
            events.append(((0, -i, -c), ("end", c)))
        elif i == k:
            events.append(((1, -j, c), ("start", c)))
    return [ev for _, ev in sorted(events)]


def build_reduction(phi):
    """Deterministic layout; asserts the spine pairs come out exactly
    as designed."""
    validate_instance(phi)
    m = phi.m
    copies = m + 1

    regions = {}
    cursor = 0
    for k in range(1, phi.w + 1):
        neg = _anchor_order(phi, k, NEGATIVE)
        pos = _anchor_order(phi, k, POSITIVE)
        q, r = len(pos), len(neg)
        s = cursor
        mu = s + r + copies
        a2p = mu + q + 1
        dummy = 1 if (q % 2 == 1 and r % 2 == 1) else 0
        b2 = a2p + dummy + 1
        x_left = b2 + r + 1
        psi = x_left + copies
        b2p = psi + q
        regions[k] = {
            "s": s, "mu": mu, "a2p": a2p, "b2": b2, "x_left": x_left,
            "psi": psi, "b2p": b2p, "q": q, "r": r, "dummy": dummy,
            "neg": neg, "pos": pos,
            # slot t (1-based) left endpoints and short apexes
            "neg_slot": {t: s + t - 1 for t in range(1, r + 1)},
            "neg_apex": {t: b2 + (r - t + 1) for t in range(1, r + 1)},
            "pos_slot": {t: psi + t - 1 for t in range(1, q + 1)},
            "pos_apex": {t: mu + (q - t + 1) for t in range(1, q + 1)},
        }
        cursor = b2p
    n = cursor + 1

    # second pass: where each clause anchor landed
    slot_of = {}  # ("c1"|"c2"|"cbar1"|"cbar2", clause) -> slot left endpoint
    apex_of = {}  # same keys -> short apex vertex
    for k, reg in regions.items():
        for t, (kind, c) in enumerate(reg["neg"], start=1):
            key = ("cbar1", c) if kind == "start" else ("cbar2", c)
            slot_of[key] = reg["neg_slot"][t]
            apex_of[key] = reg["neg_apex"][t]
        for t, (kind, c) in enumerate(reg["pos"], start=1):
            key = ("c1", c) if kind == "start" else ("c2", c)
            slot_of[key] = reg["pos_slot"][t]
            apex_of[key] = reg["pos_apex"][t]

    top = set()  # chords of t1
    bot = set()  # chords of t2

    def add(side, a, b):
        a, b = normalize((a, b))
        if b - a >= 2 and not is_boundary(n, (a, b)):
            side.add((a, b))

    for k, reg in regions.items():
        s, mu, b2, b2p = reg["s"], reg["mu"], reg["b2"], reg["b2p"]
        a2, a2p, x_left, psi = s, reg["a2p"], reg["x_left"], reg["psi"]
        for e in range(s + reg["r"], mu + 1):  # x̄ fans
            add(top, e, b2)
            add(bot, e, b2p)
        for e in range(x_left, psi + 1):  # x fans
            add(top, a2, e)
            add(bot, a2p, e)
        for i in range((b2 - mu) // 2):  # ears pair from the left
            add(top, mu + 2 * i, mu + 2 * i + 2)
        for i in range((x_left - a2p) // 2):  # ears pair from the right
            add(bot, x_left - 2 * i - 2, x_left - 2 * i)
        for t in range(1, reg["r"] + 1):  # short anchor triangles
            u, w = reg["neg_slot"][t], reg["neg_apex"][t]
            add(top, u, w)
            add(top, u + 1, w)
        for t in range(1, reg["q"] + 1):
            u, c = reg["pos_slot"][t], reg["pos_apex"][t]
            add(bot, u, c)
            add(bot, u + 1, c)

    for c, (side, i, j) in enumerate(phi.clauses):  # long anchor triangles
        if side == POSITIVE:
            ui, uj = slot_of[("c1", c)], slot_of[("c2", c)]
            add(top, ui, uj)
            add(top, ui + 1, uj)
            add(top, ui, uj + 1)
        else:
            ui, uj = slot_of[("cbar1", c)], slot_of[("cbar2", c)]
            add(bot, ui, uj + 1)
            add(bot, ui + 1, uj + 1)
            add(bot, ui + 1, uj)

    t1 = Triangulation(n, complete_lex(n, top))
    t2 = Triangulation(n, complete_lex(n, bot))

    designed = []  # (spine, apex_t, apex_tp, label)
    for k in range(1, phi.w + 1):
        reg = regions[k]
        for t in range(1, reg["r"] + 1):
            kind, c = reg["neg"][t - 1]
            u = reg["neg_slot"][t]
            if kind == "start":
                tp_apex = slot_of[("cbar2", c)] + 1
                label = f"cbar1:{c}"
            else:
                tp_apex = slot_of[("cbar1", c)] + 1
                label = f"cbar2:{c}"
            designed.append(((u, u + 1), reg["neg_apex"][t], tp_apex, label))
        for p in range(copies):
            e = reg["s"] + reg["r"] + p
            designed.append(((e, e + 1), reg["b2"], reg["b2p"], f"xbar:{k}:{p + 1}"))
        for p in range(copies):
            e = reg["x_left"] + p
            designed.append(((e, e + 1), reg["s"], reg["a2p"], f"x:{k}:{p + 1}"))
        for t in range(1, reg["q"] + 1):
            kind, c = reg["pos"][t - 1]
            u = reg["pos_slot"][t]
            if kind == "start":
                t_apex = slot_of[("c2", c)]
                label = f"c1:{c}"
            else:
                t_apex = slot_of[("c1", c)]
                label = f"c2:{c}"
            designed.append(((u, u + 1), t_apex, reg["pos_apex"][t], label))

    pairs = spine_pairs(t1, t2)
    got = [(p.spine, p.apex_t, p.apex_tp) for p in pairs]
    want = [(sp, at, atp) for (sp, at, atp, _) in designed]
    assert got == want, "constructed spine pairs deviate from the design"
    labels = tuple(label for (_, _, _, label) in designed)
    return Reduction(
        phi=phi,
        t1=t1,
        t2=t2,
        pairs=tuple(pairs),
        labels=labels,
        role_to_index={label: i for i, label in enumerate(labels)},
    )


# --- witnesses and verification ----------------------------------------------


def role_kind(label):
    """'x', 'xbar', 'c1', 'c2', 'cbar1' or 'cbar2'."""
    return label.split(":")[0]


def role_clause(label):
    kind, num = label.split(":")[0], label.split(":")[1]
    if kind in ("c1", "c2", "cbar1", "cbar2"):
        return int(num)
    return None


def role_side(label):
    """Clause sign of an anchor role, None for variable copies."""
    kind = role_kind(label)
    if kind in ("c1", "c2"):
        return POSITIVE
    if kind in ("cbar1", "cbar2"):
        return NEGATIVE
    return None


def role_variable(label, phi):
    """Variable the role belongs to (anchors belong to their zone)."""
    parts = label.split(":")
    if parts[0] in ("x", "xbar"):
        return int(parts[1])
    side, i, j = phi.clauses[int(parts[1])]
    return i if parts[0] in ("c1", "cbar1") else j


def clause_variables(phi, label):
    c = role_clause(label)
    if c is None:
        return None
    _, i, j = phi.clauses[c]
    return {i, j}


def witness_subset(red, assignment):
    """Pair indices chosen from a truth assignment (sequence of w bools).

    Variable k contributes its x copies when true, its x̄ copies when
    false.  A satisfied positive clause (i, j) contributes C2 when x_j
    is true, else C1; a satisfied negative clause contributes Cbar1
    when x_i is false, else Cbar2.
    """
    phi = red.phi
    if len(assignment) != phi.w:
        raise BadClause(f"assignment needs {phi.w} values")
    chosen = []
    for idx, label in enumerate(red.labels):
        parts = label.split(":")
        kind = parts[0]
        if kind == "x" and assignment[int(parts[1]) - 1]:
            chosen.append(idx)
        elif kind == "xbar" and not assignment[int(parts[1]) - 1]:
            chosen.append(idx)
        elif kind in ("c1", "c2", "cbar1", "cbar2"):
            side, i, j = phi.clauses[int(parts[1])]
            vi, vj = assignment[i - 1], assignment[j - 1]
            if side == POSITIVE:
                pick = "c2" if vj else ("c1" if vi else None)
            else:
                pick = "cbar1" if not vi else ("cbar2" if not vj else None)
            if pick == kind:
                chosen.append(idx)
    return sorted(chosen)


@dataclass(frozen=True)
class GadgetReport:
    pair_count: int
    mandatory_doubles: int
    optional_doubles: int
    same_type_directed: int
    downward_directed: int
    exception_directed: int


def _mandatory_doubles(red):
    phi = red.phi
    by_kind_var = {}
    for idx, label in enumerate(red.labels):
        parts = label.split(":")
        if parts[0] in ("x", "xbar"):
            by_kind_var.setdefault((parts[0], int(parts[1])), []).append(idx)
    want = set()
    for k in range(1, phi.w + 1):
        for a in by_kind_var.get(("x", k), []):
            for b in by_kind_var.get(("xbar", k), []):
                want.add(frozenset((a, b)))
    for c, (side, i, j) in enumerate(phi.clauses):
        if side == POSITIVE:
            first, second = red.role_to_index[f"c1:{c}"], red.role_to_index[f"c2:{c}"]
            mates_first = by_kind_var.get(("xbar", i), [])
            mates_second = by_kind_var.get(("xbar", j), [])
        else:
            first = red.role_to_index[f"cbar1:{c}"]
            second = red.role_to_index[f"cbar2:{c}"]
            mates_first = by_kind_var.get(("x", i), [])
            mates_second = by_kind_var.get(("x", j), [])
        want.add(frozenset((first, second)))
        for b in mates_first:
            want.add(frozenset((first, b)))
        for b in mates_second:
            want.add(frozenset((second, b)))
    return want


def verify_gadget_conflicts(red):
    """Classify every conflict edge of the reduction's conflict graph.

    Raises UnexpectedDoubleConflict or UnexpectedDirectedConflict when
    an edge falls outside the catalogue; returns a GadgetReport with
    category counts otherwise.
    """
    h = red.conflict_graph()
    labels = red.labels
    phi = red.phi
    want = _mandatory_doubles(red)
    seen_doubles = set()
    optional = 0
    for (i, j) in h.doubles():
        pair = frozenset((i, j))
        seen_doubles.add(pair)
        if pair in want:
            continue
        vi = clause_variables(phi, labels[i])
        vj = clause_variables(phi, labels[j])
        if vi is None or vj is None:
            raise UnexpectedDoubleConflict(
                i, j, f"{labels[i]} <-> {labels[j]} is not in the catalogue"
            )
        mixed = role_side(labels[i]) != role_side(labels[j]) and vi & vj
        # two clauses with identical literals interact like one clause,
        # so their first/second anchors may also pair up
        twins = (
            phi.clauses[role_clause(labels[i])] == phi.clauses[role_clause(labels[j])]
            and {role_kind(labels[i]), role_kind(labels[j])}
            in ({"c1", "c2"}, {"cbar1", "cbar2"})
        )
        if mixed or twins:
            optional += 1
            continue
        raise UnexpectedDoubleConflict(
            i, j, f"{labels[i]} <-> {labels[j]} is not in the catalogue"
        )
    missing = want - seen_doubles
    if missing:
        i, j = sorted(next(iter(missing)))
        raise UnexpectedDoubleConflict(
            i, j, f"mandatory double {labels[i]} <-> {labels[j]} is missing"
        )

    same_type = downward = exception = 0
    for (i, j) in h.directed_only():
        ti, tj = h.types[i], h.types[j]
        if ti == tj:
            if not (h.pairs[i].spine < h.pairs[j].spine):
                raise UnexpectedDirectedConflict(
                    i, j, f"same-type {ti} conflict goes right to left"
                )
            same_type += 1
            continue
        if (ti, tj) in ((ABOVE, CROSSING), (ABOVE, BELOW), (CROSSING, BELOW)):
            downward += 1
            continue
        vi = clause_variables(phi, labels[i])
        vj = clause_variables(phi, labels[j])
        if (
            (ti, tj) in ((CROSSING, ABOVE), (BELOW, CROSSING))
            and vi is not None
            and vj is not None
            and vi & vj
        ):
            exception += 1
            continue
        raise UnexpectedDirectedConflict(
            i, j, f"{labels[i]} ({ti}) -> {labels[j]} ({tj}) not allowed"
        )
    return GadgetReport(
        pair_count=len(h),
        mandatory_doubles=len(want),
        optional_doubles=optional,
        same_type_directed=same_type,
        downward_directed=downward,
        exception_directed=exception,
    )


def max2sat_bruteforce(phi):
    """Maximum satisfied clause count over all assignments (w <= 20)."""
    validate_instance(phi)
    if phi.w > BRUTEFORCE_CAP:
        raise TooLarge(f"brute force supports w <= {BRUTEFORCE_CAP}")
    best = 0
    for bits in product((False, True), repeat=phi.w):
        sat = 0
        for side, i, j in phi.clauses:
            if side == POSITIVE:
                sat += bits[i - 1] or bits[j - 1]
            else:
                sat += (not bits[i - 1]) or (not bits[j - 1])
        best = max(best, sat)
    return best


@dataclass(frozen=True)
class EquivalenceCheck:
    ok: bool
    ac_size: int
    expected: int
    witness: tuple


def reduction_equivalence_check(phi):
    """Does ac(conflict graph) equal w(m+1) + best satisfied count?"""
    red = build_reduction(phi)
    h = red.conflict_graph()
    res = max_acyclic_subset(range(len(h)), h.edges)
    expected = phi.w * (phi.m + 1) + max2sat_bruteforce(phi)
    return EquivalenceCheck(res.size == expected, res.size, expected, res.members)


# --- text formats -------------------------------------------------------------
#
# instance:    vars 3
#              clause pos 1 2
#              clause neg 2 3
#              k 2
#
# role map:    role 0 xbar:1:1
#              role 1 x:1:1


def format_2sat(phi):
    lines = [f"vars {phi.w}"]
    for side, i, j in phi.clauses:
        lines.append(f"clause {side} {i} {j}")
    if phi.k_prime is not None:
        lines.append(f"k {phi.k_prime}")
    return "\n".join(lines) + "\n"


def parse_2sat(text):
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("vars "):
        raise FormatError("first line must be 'vars <w>'")
    try:
        w = int(lines[0].split()[1])
    except (IndexError, ValueError):
        raise FormatError("first line must be 'vars <w>'")
    clauses = []
    k_prime = None
    for ln in lines[1:]:
        parts = ln.split()
        if parts[0] == "clause":
            if len(parts) != 4:
                raise FormatError(f"bad clause line: {ln!r}")
            if parts[1] not in (POSITIVE, NEGATIVE):
                raise NotMonotone(f"unknown clause side {parts[1]!r}")
            clauses.append((parts[1], int(parts[2]), int(parts[3])))
        elif parts[0] == "k":
            if len(parts) != 2 or k_prime is not None:
                raise FormatError(f"bad target line: {ln!r}")
            k_prime = int(parts[1])
        else:
            raise FormatError(f"unexpected line: {ln!r}")
    phi = Max2SatInstance(w, tuple(clauses), k_prime)
    validate_instance(phi)
    return phi


def format_role_map(red):
    lines = [f"role {i} {label}" for i, label in enumerate(red.labels)]
    return "\n".join(lines) + "\n"


def parse_role_map(text):
    labels = {}
    for ln in text.splitlines():
        ln = ln.strip()
        if not ln:
            continue
        parts = ln.split()
        if len(parts) != 3 or parts[0] != "role":
            raise FormatError(f"bad role line: {ln!r}")
        idx = int(parts[1])
        if idx in labels:
            raise FormatError(f"duplicate role index {idx}")
        labels[idx] = parts[2]
    if set(labels) != set(range(len(labels))):
        raise FormatError("role indices must cover 0..count-1")
    return tuple(labels[i] for i in range(len(labels)))


def all_small_instances(max_w=3, max_m=3):
    """Every valid clause multiset with w <= max_w and m <= max_m."""
    from itertools import combinations_with_replacement

    out = []
    for w in range(1, max_w + 1):
        universe = [
            (side, i, j)
            for side in (POSITIVE, NEGATIVE)
            for i in range(1, w + 1)
            for j in range(i + 1, w + 1)
        ]
        for m in range(max_m + 1):
            for combo in combinations_with_replacement(universe, m):
                phi = Max2SatInstance(w, tuple(combo))
                try:
                    validate_instance(phi)
                except Exception:
                    continue
                out.append(phi)
    return out
