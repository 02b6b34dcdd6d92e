"""Command-line front end.

Exit codes: 0 success, 1 user or data error, 2 internal invariant violation.
With --json every report (including errors) is a single JSON document."""

from __future__ import annotations

import argparse
import json
import sys

from . import corpus
from .diffpoly import NEG_INF, POS_INF, elimination, orderly, render
from .engine import (
    DegenerateSituation,
    linear_reduce,
    parse_script,
    scripted_divide,
)
from .pencil import build_pencil, fiber_at
from .reduction import InconsistentSystem, autoreduce_loop, dimensions, ritt_divide
from .textio import ParseError, parse_system
from .tropical import (
    HypothesisFailure,
    InternalInvariantViolation,
    detect_first_form,
    detect_second_form,
    detect_third_form,
    order_matrix,
    render_grid,
    tdet,
    to_first_form,
    to_second_form,
)


class UserError(Exception):
    pass


def _jval(v):
    return "-inf" if v == NEG_INF else ("inf" if v == POS_INF else v)


def _load(args):
    try:
        with open(args.file) as fh:
            text = fh.read()
    except OSError as e:
        raise UserError(str(e))
    names = [s.strip() for s in args.vars.split(",")] if args.vars else None
    ring, polys = parse_system(text, names)
    if not polys:
        raise UserError("empty system: %s" % args.file)
    return ring, polys


def _ranking(args, ring):
    spec = getattr(args, "ranking", "orderly") or "orderly"
    if spec == "orderly":
        return orderly()
    if spec.startswith("elim:"):
        blocks = []
        for blk in spec[5:].split(";"):
            names = [s.strip() for s in blk.split(",") if s.strip()]
            try:
                blocks.append([ring.index[nm] for nm in names])
            except KeyError as e:
                raise UserError("unknown variable in ranking: %s" % e)
        covered = {v for b in blocks for v in b}
        if covered != set(range(ring.nvars)):
            raise UserError("ranking blocks must cover all variables")
        return elimination(blocks)
    raise UserError("bad --ranking %r (want orderly or elim:b1;b2)" % spec)


def _emit(args, data, text):
    if args.json:
        print(json.dumps(data, indent=2))
    else:
        print(text)


def cmd_jacobi(args):
    ring, polys = _load(args)
    out = {}
    lines = []
    for conv in ("weak", "strong"):
        m = order_matrix(polys, None, conv)
        value, wits = tdet(m.entries, witnesses=True)
        out["J_%s" % conv] = _jval(value)
        out["witnesses_%s" % conv] = [list(w) for w in wits]
    _emit(args, out, "J(weak)=%s J(strong)=%s" % (out["J_weak"], out["J_strong"]))


def cmd_matrix(args):
    ring, polys = _load(args)
    m = order_matrix(polys, None, args.convention)
    _emit(args, m.to_json(), render_grid(m.entries))


def cmd_divide(args):
    ring, polys = _load(args)
    if not (0 <= args.dividend < len(polys) and 0 <= args.divisor < len(polys)):
        raise UserError("equation index out of range")
    if args.var not in ring.index:
        raise UserError("unknown variable %r" % args.var)
    cert = ritt_divide(polys[args.dividend], [polys[args.divisor]], args.mode, var=args.var)
    text = "s = %s\nremainder = %s" % (render(cert.s), render(cert.remainder))
    _emit(args, cert.to_json(), text)


def cmd_autoreduce(args):
    ring, polys = _load(args)
    rk = _ranking(args, ring)
    try:
        res = autoreduce_loop(polys, rk)
    except InconsistentSystem as e:
        _emit(args, {"inconsistent": True, "constant": render(e.constant)}, "inconsistent system (%s)" % e)
        return
    data = {
        "charset": [render(p) for p in res.charset.elements],
        "converged": res.converged,
        "rounds": res.rounds,
        "multipliers": [render(m) for m in res.multipliers],
    }
    text = "\n".join(render(p) for p in res.charset.elements)
    if not res.converged:
        text += "\n(not converged after %d rounds)" % res.rounds
    _emit(args, data, text)


def cmd_dims(args):
    ring, polys = _load(args)
    rk = _ranking(args, ring)
    try:
        res = autoreduce_loop(polys, rk)
    except InconsistentSystem as e:
        _emit(args, {"inconsistent": True, "constant": render(e.constant)}, "inconsistent system (%s)" % e)
        return
    dd, bound = dimensions(res.charset, ring.nvars)
    data = {"diff_dim": dd, "abs_dim_bound": _jval(bound), "converged": res.converged}
    _emit(args, data, "diffDim=%d absDimBound=%s" % (dd, _jval(bound)))


def cmd_forms(args):
    ring, polys = _load(args)
    m = order_matrix(polys, None, args.convention)
    if args.to is None:
        data = {
            "first": detect_first_form(m.entries),
            "second": detect_second_form(m.entries),
            "third": detect_third_form(m.entries),
        }
        _emit(args, data, " ".join("%s=%s" % kv for kv in sorted(data.items())))
        return
    cert = to_first_form(m.entries) if args.to == "first" else to_second_form(m.entries)
    out = cert.apply(m.entries)
    data = dict(cert.to_json(), matrix=[["-inf" if e == NEG_INF else e for e in row] for row in out])
    _emit(args, data, "rows=%s cols=%s\n%s" % (cert.row_perm, cert.col_perm, render_grid(out)))


def cmd_reduce_linear(args):
    ring, polys = _load(args)
    res = linear_reduce(polys)
    data = {
        "trace": res.trace.to_json(),
        "charset": [render(p) for p in res.charset.elements] if res.charset else None,
        "diff_dim": res.diff_dim,
        "abs_dim_bound": _jval(res.abs_dim_bound),
        "J_initial": _jval(res.j_initial),
        "degenerate": res.degenerate,
    }
    text = "J-sequence: %s\ndiffDim=%d absDimBound=%s" % (
        ",".join(str(_jval(v)) for v in res.trace.j_sequence_strong),
        res.diff_dim,
        _jval(res.abs_dim_bound),
    )
    if res.charset:
        text += "\ncharset:\n" + "\n".join("  " + render(p) for p in res.charset.elements)
    _emit(args, data, text)


def cmd_trace(args):
    ring, polys = _load(args)
    script = parse_script(args.script)
    for di, gi, var in script:
        if var not in ring.index:
            raise UserError("unknown variable %r in script" % var)
    final, trace = scripted_divide(polys, script)
    data = trace.to_json()
    data["final_system"] = [render(p) for p in final]
    text = "J-sequence: %s" % ",".join(str(_jval(v)) for v in trace.j_sequence)
    _emit(args, data, text)


def cmd_pencil(args):
    ring, polys = _load(args)
    if not 0 <= args.pivot < len(polys):
        raise UserError("pivot index out of range")
    if args.var not in ring.index:
        raise UserError("unknown variable %r" % args.var)
    pen = build_pencil(polys, args.pivot, args.var, args.fresh)
    data = pen.to_json()
    if args.fibers:
        data["fibers"] = {}
        for mu in args.fibers.split(","):
            fib = fiber_at(pen, mu.strip())
            data["fibers"][mu.strip()] = [render(p) for p in fib]
    text = "generator: %s" % render(pen.generator)
    _emit(args, data, text)


def cmd_examples(args):
    rows = []
    ok = True
    for label, expected, actual in corpus.run_golden_checks():
        good = expected == actual
        ok = ok and good
        rows.append({"check": label, "pass": good, "expected": str(expected), "actual": str(actual)})
    if args.json:
        print(json.dumps({"checks": rows, "pass": ok}, indent=2))
    else:
        for r in rows:
            print("%s %s" % ("PASS" if r["pass"] else "FAIL", r["check"]))
    return 0 if ok else 1


def build_parser():
    ap = argparse.ArgumentParser(prog="diffalg", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, needs_file=True):
        if needs_file:
            p.add_argument("file", help="system file")
        p.add_argument("--json", action="store_true")
        p.add_argument("--vars", help="comma-separated variable/column order")
        p.add_argument("--convention", choices=["weak", "strong"], default="strong")
        p.add_argument("--ranking", default="orderly", help="orderly or elim:b1;b2 (lowest block first)")

    p = sub.add_parser("jacobi", help="Jacobi number and witnesses, both conventions")
    common(p)
    p.set_defaults(func=cmd_jacobi)
    p = sub.add_parser("matrix", help="order matrix")
    common(p)
    p.set_defaults(func=cmd_matrix)
    p = sub.add_parser("divide", help="one division with certificate")
    common(p)
    p.add_argument("--dividend", type=int, required=True)
    p.add_argument("--divisor", type=int, required=True)
    p.add_argument("--var", required=True)
    p.add_argument("--mode", choices=["partial", "full"], default="partial")
    p.set_defaults(func=cmd_divide)
    p = sub.add_parser("autoreduce", help="characteristic set iteration")
    common(p)
    p.set_defaults(func=cmd_autoreduce)
    p = sub.add_parser("dims", help="differential dimension and order bound")
    common(p)
    p.set_defaults(func=cmd_dims)
    p = sub.add_parser("forms", help="detect or normalize Ritt forms")
    common(p)
    p.add_argument("--to", choices=["first", "second"])
    p.set_defaults(func=cmd_forms)
    p = sub.add_parser("reduce-linear", help="linear elimination with full trace")
    common(p)
    p.set_defaults(func=cmd_reduce_linear)
    p = sub.add_parser("trace", help="scripted divisions, J-sequence")
    common(p)
    p.add_argument("--script", required=True, help='e.g. "0/2@x;1/2@x"')
    p.set_defaults(func=cmd_trace)
    p = sub.add_parser("pencil", help="build the pencil at a pivot")
    common(p)
    p.add_argument("--pivot", type=int, required=True)
    p.add_argument("--var", required=True)
    p.add_argument("--fresh", default="w")
    p.add_argument("--fibers", help="comma-separated rational values of the parameter")
    p.set_defaults(func=cmd_pencil)
    p = sub.add_parser("examples", help="run the embedded corpus against golden values")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_examples)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        rc = args.func(args)
        return 0 if rc is None else rc
    except (UserError, ParseError, ValueError, OSError, InconsistentSystem,
            HypothesisFailure, DegenerateSituation) as e:
        msg = {"error": str(e), "kind": type(e).__name__}
        print(json.dumps(msg) if args.json else "error: %s" % e, file=sys.stderr)
        return 1
    except (InternalInvariantViolation, AssertionError) as e:
        msg = {"error": str(e), "kind": "internal-invariant-violation"}
        print(json.dumps(msg) if args.json else "internal invariant violation: %s" % e, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
