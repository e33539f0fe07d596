"""Command line front end.

Every subcommand prints machine-parseable records, one per line, and
returns a conventional exit code:

    0   success
    1   validation error (malformed input, failed check)
    2   budget error (instance too large for the requested computation)
    64  usage error (unknown flags, missing arguments); prints a synopsis

The default output format is plain text.  ``--format json-lines`` prints
the same records as JSON objects, one per line, each carrying a ``kind``
field plus the fields of the corresponding text line under the same
names.  Files are always written in the plain-text formats of the
library modules regardless of ``--format``, so anything a subcommand
writes can be fed back into another subcommand.

Randomness appears only behind an explicit ``--seed`` flag (``sandwich``
is the one subcommand that has it); the default seed is 0, so repeated
invocations with the same arguments produce byte-identical output.
"""

import argparse
import json
import os
import sys

from .acyclic import (
    format_acyclic_result,
    heuristic_acyclic,
    max_acyclic_subset,
)
from .blowup import blow_up, conflict_graph, format_conflict_graph, parse_conflict_graph
from .bounds import (
    analyze_sequence,
    bound_report,
    construct_upper_sequence,
    emit_theorem_instance,
    sandwich_trials,
)
from .distance import diameter, exact_distance, format_seq, parse_seq
from .errors import BudgetError, InvalidSequence, ValidationError
from .reduction import (
    build_reduction,
    format_role_map,
    parse_2sat,
    verify_gadget_conflicts,
)
from .trees import format_tree, rotation_distance, tree_from_triangulation
from .triangulation import enumerate_triangulations, format_tri, parse_tri


class _Parser(argparse.ArgumentParser):
    """Parser whose usage errors exit 64 instead of argparse's 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(64)


class _Out:
    """Record emitter shared by all subcommands."""

    def __init__(self, stream, fmt):
        self.stream = stream
        self.json = fmt == "json-lines"

    def line(self, kind, text, **fields):
        if self.json:
            rec = {"kind": kind, **fields}
            text = json.dumps(rec, sort_keys=True, separators=(",", ":"))
        self.stream.write(text + "\n")

    def block(self, text, records):
        """A multi-line text format and its per-line record mirror."""
        if self.json:
            for kind, fields in records:
                self.line(kind, "", **fields)
        else:
            self.stream.write(text)

    def wrote(self, path):
        self.line("wrote", f"wrote {path}", path=str(path))


def _read(path):
    with open(path) as f:
        return f.read()


def _write(path, text):
    with open(path, "w") as f:
        f.write(text)


def _seq_records(start, flips):
    recs = [
        (
            "start",
            {
                "n": start.n,
                "diagonals": [list(e) for e in sorted(start.diagonals)],
            },
        )
    ]
    recs.extend(("flip", {"a": a, "b": b}) for a, b in flips)
    return recs


def _emit_seq(out, start, flips):
    out.block(format_seq(start, flips), _seq_records(start, flips))


def _conflict_records(h):
    recs = [("pairs", {"count": len(h.pairs)})]
    for p in h.pairs:
        recs.append(
            (
                "pair",
                {
                    "index": p.index,
                    "spine": list(p.spine),
                    "apex_t": p.apex_t,
                    "apex_tp": p.apex_tp,
                    "type": p.type,
                },
            )
        )
    recs.extend(
        ("conf", {"source": i, "target": j}) for i, j in sorted(h.edges)
    )
    return recs


def _acyclic_records(res):
    recs = [("ac", {"size": res.size, "exact": res.exact})]
    recs.extend(("in", {"index": v}) for v in res.members)
    return recs


def _best_subset(h, heuristic):
    verts = range(len(h.pairs))
    if heuristic:
        return heuristic_acyclic(verts, h.edges)
    return max_acyclic_subset(verts, h.edges)


def _emit_bound_head(out, n, h, res):
    out.line("n", f"n {n}", value=n)
    out.line("gamma", f"gamma {len(h.pairs)}", value=len(h.pairs))
    word = "exact" if res.exact else "heur"
    out.line("ac", f"ac {res.size} {word}", size=res.size, exact=res.exact)


# --- subcommands --------------------------------------------------------------


def _cmd_enumerate(args, out):
    ts = enumerate_triangulations(args.n)
    out.line("count", f"count {len(ts)}", value=len(ts))
    for t in ts:
        diags = sorted(t.diagonals)
        text = " ".join(["t"] + [f"{a},{b}" for a, b in diags])
        out.line(
            "triangulation",
            text,
            n=t.n,
            diagonals=[list(e) for e in diags],
        )


def _cmd_distance(args, out):
    t1 = parse_tri(_read(args.a))
    t2 = parse_tri(_read(args.b))
    dist, flips = exact_distance(t1, t2, budget=args.budget)
    out.line("distance", f"distance {dist}", value=dist)
    if args.out:
        _write(args.out, format_seq(t1, flips))
        out.wrote(args.out)
    else:
        _emit_seq(out, t1, flips)


def _cmd_diameter(args, out):
    d = diameter(args.n)
    out.line("diameter", f"diameter {d}", value=d)


def _cmd_tree(args, out):
    trees = [tree_from_triangulation(parse_tri(_read(args.a)))]
    if args.b:
        trees.append(tree_from_triangulation(parse_tri(_read(args.b))))
    for t in trees:
        enc = format_tree(t).strip()
        out.line("tree", f"tree {enc}", encoding=enc)
    if args.b:
        d = rotation_distance(trees[0], trees[1], budget=args.budget)
        out.line("rotations", f"rotations {d}", value=d)


def _cmd_blowup(args, out):
    t1 = parse_tri(_read(args.a))
    t2 = parse_tri(_read(args.b))
    inst = blow_up(t1, t2, args.beta)
    out.line("n", f"n {inst.t1.n}", value=inst.t1.n)
    out.line("pairs", f"pairs {len(inst.pairs)}", count=len(inst.pairs))
    for p in inst.pairs:
        out.line(
            "pair",
            f"pair {p.index} {p.spine[0]} {p.spine[1]} "
            f"{p.apex_t} {p.apex_tp} {p.type}",
            index=p.index,
            spine=list(p.spine),
            apex_t=p.apex_t,
            apex_tp=p.apex_tp,
            type=p.type,
        )
    if args.out_a:
        _write(args.out_a, format_tri(inst.t1))
        out.wrote(args.out_a)
    if args.out_b:
        _write(args.out_b, format_tri(inst.t2))
        out.wrote(args.out_b)


def _cmd_conflict(args, out):
    t1 = parse_tri(_read(args.a))
    t2 = parse_tri(_read(args.b))
    h = conflict_graph(t1, t2)
    if args.out:
        _write(args.out, format_conflict_graph(h))
        out.line("pairs", f"pairs {len(h.pairs)}", count=len(h.pairs))
        out.wrote(args.out)
    else:
        out.block(format_conflict_graph(h), _conflict_records(h))


def _cmd_acyclic(args, out):
    h = parse_conflict_graph(_read(args.graph))
    res = _best_subset(h, args.heuristic)
    out.block(format_acyclic_result(res), _acyclic_records(res))


def _cmd_reduce(args, out):
    phi = parse_2sat(_read(args.sat))
    red = build_reduction(phi)
    os.makedirs(args.out_dir, exist_ok=True)
    out.line("n", f"n {red.t1.n}", value=red.t1.n)
    out.line("pairs", f"pairs {len(red.pairs)}", count=len(red.pairs))
    artifacts = (
        ("t1.tri", format_tri(red.t1), parse_tri),
        ("t2.tri", format_tri(red.t2), parse_tri),
        ("role.map", format_role_map(red), None),
    )
    for name, text, reparse in artifacts:
        path = os.path.join(args.out_dir, name)
        _write(path, text)
        if reparse is not None and format_tri(reparse(_read(path))) != text:
            raise InvalidSequence(f"re-reading {path} does not round-trip")
        out.wrote(path)


def _cmd_verify_gadgets(args, out):
    phi = parse_2sat(_read(args.sat))
    rep = verify_gadget_conflicts(build_reduction(phi))
    out.line("pairs", f"pairs {rep.pair_count}", count=rep.pair_count)
    for which, count in (
        ("mandatory", rep.mandatory_doubles),
        ("optional", rep.optional_doubles),
    ):
        out.line(
            "doubles", f"doubles {which} {count}", which=which, count=count
        )
    for which, count in (
        ("same-type", rep.same_type_directed),
        ("downward", rep.downward_directed),
        ("exception", rep.exception_directed),
    ):
        out.line(
            "directed", f"directed {which} {count}", which=which, count=count
        )
    out.line("ok", "ok")


def _cmd_bound_upper(args, out):
    t1 = parse_tri(_read(args.a))
    t2 = parse_tri(_read(args.b))
    inst = blow_up(t1, t2, args.beta)
    h = conflict_graph(inst)
    res = _best_subset(h, args.heuristic)
    seq = construct_upper_sequence(inst, res)
    rep = bound_report(t1.n, len(h.pairs), res.size, args.beta)
    _emit_bound_head(out, t1.n, h, res)
    out.line(
        "bound",
        f"bound upper {rep.upper_value}",
        which="upper",
        value=rep.upper_value,
    )
    out.line("length", f"length {len(seq)}", value=len(seq))
    if args.out:
        _write(args.out, format_seq(inst.t1, seq))
        out.wrote(args.out)
    else:
        _emit_seq(out, inst.t1, seq)


def _cmd_bound_lower(args, out):
    t1 = parse_tri(_read(args.a))
    t2 = parse_tri(_read(args.b))
    inst = blow_up(t1, t2, args.beta)
    h = conflict_graph(inst)
    res = _best_subset(h, heuristic=False)
    rep = bound_report(t1.n, len(h.pairs), res.size, args.beta)
    _emit_bound_head(out, t1.n, h, res)
    out.line(
        "bound",
        f"bound lower {rep.lower_value}",
        which="lower",
        value=rep.lower_value,
    )


def _cmd_analyze(args, out):
    t1 = parse_tri(_read(args.a))
    t2 = parse_tri(_read(args.b))
    inst = blow_up(t1, t2, args.beta)
    start, flips = parse_seq(_read(args.seq))
    if start.n != inst.t1.n or start.diagonals != inst.t1.diagonals:
        raise InvalidSequence(
            "sequence start does not match the blown-up start triangulation"
        )
    ana = analyze_sequence(inst, flips)
    out.line(
        "analysis",
        f"analysis direct {ana.direct_count} indirect {ana.indirect_count}",
        direct=ana.direct_count,
        indirect=ana.indirect_count,
    )
    for i, (g, d) in enumerate(zip(ana.gone, ana.direct)):
        word = "direct" if d else "indirect"
        out.line(
            "gone", f"gone {i} {g} {word}", index=i, step=g, direct=bool(d)
        )


def _cmd_emit_theorem(args, out):
    phi = parse_2sat(_read(args.sat))
    bt1, bt2, threshold = emit_theorem_instance(phi)
    os.makedirs(args.out_dir, exist_ok=True)
    out.line("n", f"n {bt1.n}", value=bt1.n)
    out.line("threshold", f"threshold {threshold}", value=threshold)
    for name, t in (("t1.tri", bt1), ("t2.tri", bt2)):
        path = os.path.join(args.out_dir, name)
        _write(path, format_tri(t))
        out.wrote(path)


def _cmd_sandwich(args, out):
    recs = sandwich_trials(
        args.n, args.beta, args.trials, seed=args.seed, size_cap=args.size_cap
    )
    for i, r in enumerate(recs):
        out.line(
            "trial",
            f"trial {i} lower {r.lower} exact {r.exact} "
            f"constructed {r.constructed} upper {r.upper}",
            index=i,
            lower=r.lower,
            exact=r.exact,
            constructed=r.constructed,
            upper=r.upper,
        )


def _render_svg(t):
    """Static linear drawing of a triangulation.

    Vertices sit on a baseline, diagonals are semicircular arcs above
    it, and the closing boundary edge (0, n-1) is a shallow dashed arc
    below it:

            ___________
           /    ___    \\
          /    /   \\    \\
         0----1-----2----3
          \\_____________/
    """
    step, margin = 40, 24
    n = t.n
    xs = [margin + i * step for i in range(n)]
    y0 = margin + (n - 1) * step // 2
    width = 2 * margin + (n - 1) * step
    height = y0 + 44
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">',
        f'  <line x1="{xs[0]}" y1="{y0}" x2="{xs[-1]}" y2="{y0}" '
        'stroke="black"/>',
        f'  <path d="M {xs[0]} {y0} A {(xs[-1] - xs[0]) // 2} 18 0 0 0 '
        f'{xs[-1]} {y0}" fill="none" stroke="gray" stroke-dasharray="4 3"/>',
    ]
    for a, b in sorted(t.diagonals):
        r = (xs[b] - xs[a]) // 2
        parts.append(
            f'  <path d="M {xs[a]} {y0} A {r} {r} 0 0 1 {xs[b]} {y0}" '
            'fill="none" stroke="#1f77b4"/>'
        )
    for i, x in enumerate(xs):
        parts.append(f'  <circle cx="{x}" cy="{y0}" r="3"/>')
        parts.append(
            f'  <text x="{x}" y="{y0 + 32}" text-anchor="middle" '
            f'font-family="monospace" font-size="11">{i}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _cmd_render_svg(args, out):
    t = parse_tri(_read(args.tri))
    _write(args.out, _render_svg(t))
    out.wrote(args.out)


# --- parser -------------------------------------------------------------------


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument(
        "--format",
        choices=("text", "json-lines"),
        default="text",
        help="output format (default: text)",
    )
    p = _Parser(
        prog="flipdist",
        description="Flip distance machinery for convex polygon "
        "triangulations.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def cmd(name, func, help_text):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        sp.set_defaults(func=func)
        return sp

    sp = cmd("enumerate", _cmd_enumerate, "list all triangulations of an n-gon")
    sp.add_argument("--n", type=int, required=True, help="polygon size")

    sp = cmd("distance", _cmd_distance, "exact flip distance with a witness")
    sp.add_argument("--a", required=True, help="start .tri file")
    sp.add_argument("--b", required=True, help="target .tri file")
    sp.add_argument("--budget", type=int, default=None, help="BFS state cap")
    sp.add_argument("--out", default=None, help="write the witness .seq here")

    sp = cmd("diameter", _cmd_diameter, "flip graph diameter of the n-gon")
    sp.add_argument("--n", type=int, required=True, help="polygon size")

    sp = cmd(
        "tree",
        _cmd_tree,
        "dual binary trees of .tri files, and their rotation distance",
    )
    sp.add_argument("--a", required=True, help="first .tri file")
    sp.add_argument("--b", default=None, help="second .tri file (optional)")
    sp.add_argument("--budget", type=int, default=None, help="BFS state cap")

    sp = cmd("blowup", _cmd_blowup, "subdivide and fan every spine-pair edge")
    sp.add_argument("--a", required=True, help="start .tri file")
    sp.add_argument("--b", required=True, help="target .tri file")
    sp.add_argument("--beta", type=int, required=True, help="points per edge")
    sp.add_argument("--out-a", default=None, help="write blown start here")
    sp.add_argument("--out-b", default=None, help="write blown target here")

    sp = cmd("conflict", _cmd_conflict, "conflict graph of the spine pairs")
    sp.add_argument("--a", required=True, help="start .tri file")
    sp.add_argument("--b", required=True, help="target .tri file")
    sp.add_argument("--out", default=None, help="write the graph here")

    sp = cmd("acyclic", _cmd_acyclic, "largest acyclic subset of a conflict graph")
    sp.add_argument("--graph", required=True, help="conflict graph file")
    sp.add_argument(
        "--heuristic",
        action="store_true",
        help="peel greedily instead of solving exactly",
    )

    sp = cmd("reduce", _cmd_reduce, "build the hardness gadget for a 2SAT file")
    sp.add_argument("--sat", required=True, help="monotone 2SAT instance file")
    sp.add_argument("--out-dir", required=True, help="directory for artifacts")

    sp = cmd(
        "verify-gadgets",
        _cmd_verify_gadgets,
        "check every gadget conflict against the catalogue",
    )
    sp.add_argument("--sat", required=True, help="monotone 2SAT instance file")

    sp = cmd(
        "bound-upper",
        _cmd_bound_upper,
        "constructive upper bound and its flip sequence",
    )
    sp.add_argument("--a", required=True, help="base start .tri file")
    sp.add_argument("--b", required=True, help="base target .tri file")
    sp.add_argument("--beta", type=int, required=True, help="points per edge")
    sp.add_argument(
        "--heuristic",
        action="store_true",
        help="use the greedy acyclic subset (bound stays valid, just looser)",
    )
    sp.add_argument("--out", default=None, help="write the sequence here")

    sp = cmd("bound-lower", _cmd_bound_lower, "lower bound from the exact ac value")
    sp.add_argument("--a", required=True, help="base start .tri file")
    sp.add_argument("--b", required=True, help="base target .tri file")
    sp.add_argument("--beta", type=int, required=True, help="points per edge")

    sp = cmd(
        "analyze",
        _cmd_analyze,
        "classify pairs of a blown-up instance along a flip sequence",
    )
    sp.add_argument("--a", required=True, help="base start .tri file")
    sp.add_argument("--b", required=True, help="base target .tri file")
    sp.add_argument("--beta", type=int, required=True, help="points per edge")
    sp.add_argument("--seq", required=True, help="flip sequence file")

    sp = cmd(
        "emit-theorem",
        _cmd_emit_theorem,
        "decision instance: blown-up pair plus distance threshold",
    )
    sp.add_argument("--sat", required=True, help="monotone 2SAT instance file")
    sp.add_argument("--out-dir", required=True, help="directory for .tri files")

    sp = cmd(
        "sandwich",
        _cmd_sandwich,
        "random trials checking lower <= exact <= constructed <= upper",
    )
    sp.add_argument("--n", type=int, required=True, help="base polygon size")
    sp.add_argument("--beta", type=int, required=True, help="points per edge")
    sp.add_argument("--trials", type=int, required=True, help="trial count")
    sp.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    sp.add_argument(
        "--size-cap",
        type=int,
        default=13,
        help="skip draws whose blow-up exceeds this many vertices",
    )

    sp = cmd("render-svg", _cmd_render_svg, "draw a triangulation as a static SVG")
    sp.add_argument("--tri", required=True, help=".tri file to draw")
    sp.add_argument("--out", required=True, help="SVG output path")

    return p


def run(argv=None, stdout=None, stderr=None):
    """Parse argv, execute one subcommand, return the exit code."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 64
    out = _Out(stdout, args.format)
    try:
        args.func(args, out)
        return 0
    except ValidationError as exc:
        print(f"error: {exc}", file=stderr)
        return 1
    except BudgetError as exc:
        print(f"budget: {exc}", file=stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=stderr)
        return 1


def main():
    raise SystemExit(run())
