"""Reduction engine: form-preserving division steps, scripted division
traces, and the linear elimination loop.

Form steps (first form: divide equation 2 by equation 1; second form: divide
equation n by equation 1; both in the first variable) use full-mode division
so that a step always makes progress, and assert the two facts the theory
guarantees: the entrywise division bound
    b_{d,j} <= max(a_{d,j}, a_{g,j} + a_{d,1} - a_{g,1})
and non-increase of the strong Jacobi number, plus strict decrease of the
matrix in Ritt's ordering whenever the matrix changed.  Scripted steps use
partial (∂-)division and make no monotonicity claims; they exist to watch J
move."""

from __future__ import annotations

from dataclasses import dataclass, field

from .diffpoly import NEG_INF, POS_INF, DiffPoly, elimination, orderly, render, separant
from .reduction import (
    AutoreducedSet,
    DivisionCertificate,
    InconsistentSystem,
    autoreduce_loop,
    dimensions,
    membership,
    ritt_divide,
)
from .tropical import (
    HypothesisFailure,
    InternalInvariantViolation,
    LESS,
    OrderMatrix,
    detect_first_form,
    detect_second_form,
    order_matrix,
    ritt_compare,
    tdet,
    to_first_form,
    to_second_form,
)


class DegenerateSituation(Exception):
    """The pivot separant vanishes on the component: a pencil is called for."""

    def __init__(self, system, pivot_index, var):
        self.system = tuple(system)
        self.pivot_index = pivot_index
        self.var = var
        super().__init__("degenerate pivot %d in variable %r" % (pivot_index, var))


@dataclass(frozen=True)
class ReductionStep:
    kind: str  # "first-form" | "second-form" | "scripted" | "peel"
    dividend: int
    divisor: int
    var: str
    j_before: object  # weak convention
    j_after: object
    j_before_strong: object
    j_after_strong: object
    certificate: DivisionCertificate = None
    matrix_after: OrderMatrix = None  # weak
    matrix_after_strong: OrderMatrix = None

    def to_json(self):
        fix = lambda v: "-inf" if v == NEG_INF else v
        out = {
            "kind": self.kind,
            "dividend": self.dividend,
            "divisor": self.divisor,
            "var": self.var,
            "J_before": fix(self.j_before),
            "J_after": fix(self.j_after),
            "J_before_strong": fix(self.j_before_strong),
            "J_after_strong": fix(self.j_after_strong),
        }
        if self.matrix_after is not None:
            out["matrix_after"] = self.matrix_after.to_json()
        if self.matrix_after_strong is not None:
            out["matrix_after_strong"] = self.matrix_after_strong.to_json()
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_json()
        return out


@dataclass(frozen=True)
class Trace:
    steps: tuple
    j_sequence: tuple  # weak convention, starting with the initial J
    j_sequence_strong: tuple

    def to_json(self):
        fix = lambda v: "-inf" if v == NEG_INF else v
        return {
            "steps": [s.to_json() for s in self.steps],
            "J_sequence": [fix(v) for v in self.j_sequence],
            "J_sequence_strong": [fix(v) for v in self.j_sequence_strong],
        }


def _both_matrices(system, var_order):
    return (
        order_matrix(system, var_order, "weak"),
        order_matrix(system, var_order, "strong"),
    )


def _assert_division_bound(before, after, drow, grow, vcol):
    a, b = before.entries, after.entries
    shift = a[drow][vcol] - a[grow][vcol]
    for j in range(len(a[0])):
        bound = max(a[drow][j], a[grow][j] + shift)
        if b[drow][j] > bound:
            raise InternalInvariantViolation(
                "division bound violated at column %d: %s > %s" % (j, b[drow][j], bound)
            )


def _check_pivot_separant(system, pivot_index, var, charset):
    s = separant(system[pivot_index], var)
    if s.is_constant():
        return
    if charset is not None and not membership(s, charset):
        return
    raise DegenerateSituation(system, pivot_index, var)


def _form_step(system, var_order, kind, charset):
    system = list(system)
    ring = system[0].ring
    if var_order is None:
        var_order = list(range(ring.nvars))
    var_order = [ring.index[v] if isinstance(v, str) else v for v in var_order]
    weak_b, strong_b = _both_matrices(system, var_order)
    detect = detect_first_form if kind == "first-form" else detect_second_form
    if not detect(strong_b.entries):
        raise ValueError("system is not in %s" % kind.replace("-", " "))
    pivot_var = var_order[0]
    dividend = 1 if kind == "first-form" else len(system) - 1
    _check_pivot_separant(system, 0, pivot_var, charset)
    cert = ritt_divide(system[dividend], [system[0]], "full", var=pivot_var)
    out = list(system)
    out[dividend] = cert.remainder
    weak_a, strong_a = _both_matrices(out, var_order)
    _assert_division_bound(strong_b, strong_a, dividend, 0, 0)
    jb, ja = tdet(strong_b.entries), tdet(strong_a.entries)
    if ja > jb:
        raise InternalInvariantViolation("J increased: %s -> %s" % (jb, ja))
    if strong_a.entries != strong_b.entries and ritt_compare(strong_a, strong_b) != LESS:
        raise InternalInvariantViolation("matrix did not drop in Ritt's ordering")
    step = ReductionStep(
        kind=kind,
        dividend=dividend,
        divisor=0,
        var=ring.names[pivot_var],
        j_before=tdet(weak_b.entries),
        j_after=tdet(weak_a.entries),
        j_before_strong=jb,
        j_after_strong=ja,
        certificate=cert,
        matrix_after=weak_a,
        matrix_after_strong=strong_a,
    )
    return out, step


def step_first_form(system, var_order=None, charset=None):
    """Divide equation 2 by equation 1 in the first variable."""
    return _form_step(system, var_order, "first-form", charset)


def step_second_form(system, var_order=None, charset=None):
    """Divide the last equation by equation 1 in the first variable."""
    return _form_step(system, var_order, "second-form", charset)


def scripted_divide(system, script, var_order=None):
    """Run a list of (dividend, divisor, var) partial divisions, recording
    the order matrices and Jacobi numbers after each; no monotonicity is
    claimed, only the division bound and the certificate identity."""
    system = list(system)
    ring = system[0].ring
    if var_order is None:
        var_order = list(range(ring.nvars))
    var_order = [ring.index[v] if isinstance(v, str) else v for v in var_order]
    weak, strong = _both_matrices(system, var_order)
    steps = []
    jw = [tdet(weak.entries)]
    js = [tdet(strong.entries)]
    for pos, (di, gi, var) in enumerate(script):
        v = ring.index[var] if isinstance(var, str) else var
        if not (0 <= di < len(system) and 0 <= gi < len(system)) or di == gi:
            raise ValueError("script entry %d: bad equation indices" % pos)
        g = system[gi]
        if g.order_in(v, "strong") == NEG_INF:
            raise ValueError("script entry %d: divisor does not involve %s" % (pos, ring.names[v]))
        if system[di].order_in(v, "strong") < g.order_in(v, "strong"):
            raise ValueError("script entry %d: dividend has lower order in %s" % (pos, ring.names[v]))
        cert = ritt_divide(system[di], [g], "partial", var=v)
        system[di] = cert.remainder
        weak_a, strong_a = _both_matrices(system, var_order)
        vcol = var_order.index(v)
        _assert_division_bound(strong, strong_a, di, gi, vcol)
        steps.append(
            ReductionStep(
                kind="scripted",
                dividend=di,
                divisor=gi,
                var=ring.names[v],
                j_before=jw[-1],
                j_after=tdet(weak_a.entries),
                j_before_strong=js[-1],
                j_after_strong=tdet(strong_a.entries),
                certificate=cert,
                matrix_after=weak_a,
                matrix_after_strong=strong_a,
            )
        )
        jw.append(steps[-1].j_after)
        js.append(steps[-1].j_after_strong)
        weak, strong = weak_a, strong_a
    return system, Trace(tuple(steps), tuple(jw), tuple(js))


def parse_script(text):
    """'0/2@x;1/2@x' -> [(0, 2, 'x'), (1, 2, 'x')]."""
    out = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        try:
            pair, var = chunk.split("@")
            di, gi = pair.split("/")
            out.append((int(di), int(gi), var.strip()))
        except ValueError:
            raise ValueError("bad script entry %r (want d/g@var)" % chunk)
    return out


def _is_linear(p: DiffPoly) -> bool:
    return all(sum(e for _, e in m) <= 1 for m in p.terms)


@dataclass
class LinearReduceResult:
    trace: Trace
    charset: AutoreducedSet  # None when nothing remains
    diff_dim: int
    abs_dim_bound: object  # int or +inf
    j_initial: object  # strong convention
    degenerate: bool
    peel_orders: tuple


def linear_reduce(system, budget_factor=10) -> LinearReduceResult:
    """Eliminate a square linear system by form-preserving steps.

    Loop: peel variables that occur in a single equation; otherwise move a
    shared column to the front, normalize to first (preferably) or second
    form, and perform one division step.  Each step strictly lowers the
    active matrix in Ritt's ordering, so the run ends within the step budget
    10 * n * (1 + max initial order).  The peeled equations back-substitute
    into an autoreduced set whose leaders are the peeled derivatives; the
    absolute dimension bound is the sum of the peeled orders and never
    exceeds the initial strong Jacobi number.  Rank-deficient or
    underdetermined situations fall back to the general autoreduction loop
    and report an infinite bound."""
    system = list(system)
    if not system:
        raise ValueError("empty system")
    ring = system[0].ring
    n = ring.nvars
    if len(system) != n:
        raise ValueError("need a square system (%d equations, %d variables)" % (len(system), n))
    for i, p in enumerate(system):
        if not _is_linear(p):
            raise ValueError("equation %d is not linear" % i)

    orders = [p.order_in(v, "strong") for p in system for v in range(n)]
    max_ord = max([int(o) for o in orders if o != NEG_INF], default=0)
    budget = budget_factor * n * (1 + max_ord)

    j_init = tdet(order_matrix(system, None, "strong").entries)
    jw0 = tdet(order_matrix(system, None, "weak").entries)
    eqs = list(system)
    vars_ = list(range(n))
    solved = []  # (equation, var, order) in peel order
    steps = []
    # reported J: sum of peeled orders plus J of the active submatrix
    jw_seq, js_seq = [jw0], [j_init]
    degenerate = False
    used = 0

    def report():
        off = sum(o for _, _, o in solved)
        if eqs:
            sw = tdet(order_matrix(eqs, vars_, "strong").entries)
            ww = tdet(order_matrix(eqs, vars_, "weak").entries)
        else:
            sw = ww = 0
        js_seq.append(off + sw)
        jw_seq.append(off + ww)

    while True:
        live = [p for p in eqs if p]
        for p in live:
            if p.is_constant():
                raise InconsistentSystem(p)
        if len(live) < len(eqs):
            degenerate = True
            eqs = live
        if not eqs or not vars_:
            degenerate = degenerate or bool(vars_)
            break
        if len(eqs) < len(vars_):
            degenerate = True
            break
        a = order_matrix(eqs, vars_, "strong")
        if tdet(a.entries) == NEG_INF:
            degenerate = True
            break
        singleton = None
        for c in range(len(vars_)):
            rows = [i for i in range(len(eqs)) if a.entries[i][c] != NEG_INF]
            if len(rows) == 1:
                singleton = (rows[0], c)
                break
        if singleton is not None:
            r, c = singleton
            o = int(a.entries[r][c])
            solved.append((eqs[r], vars_[c], o))
            steps.append(
                ReductionStep(
                    kind="peel",
                    dividend=r,
                    divisor=-1,
                    var=ring.names[vars_[c]],
                    j_before=jw_seq[-1],
                    j_after=jw_seq[-1],
                    j_before_strong=js_seq[-1],
                    j_after_strong=js_seq[-1],
                )
            )
            del eqs[r]
            del vars_[c]
            report()
            continue
        # every live column is shared: put the first one in front and
        # normalize; first form when its hypothesis holds, else second
        vars_ = [vars_[0]] + vars_[1:]
        a = order_matrix(eqs, vars_, "strong")
        try:
            fc = to_first_form(a.entries)
            stepper = step_first_form
        except HypothesisFailure:
            fc = to_second_form(a.entries)
            stepper = step_second_form
        eqs = [eqs[fc.row_perm[i]] for i in range(len(eqs))]
        vars_ = [vars_[fc.col_perm[j]] for j in range(len(vars_))]
        eqs, step = stepper(eqs, vars_)
        steps.append(step)
        report()
        used += 1
        if used > budget:
            raise RuntimeError("linear reduction exceeded its step budget (%d)" % budget)

    if degenerate:
        gens = [p for p, _, _ in solved] + [p for p in eqs if p]
        if gens:
            charset = autoreduce_loop(gens, orderly()).charset
            diff_dim, bound = dimensions(charset, n)
        else:
            charset, diff_dim, bound = None, n, POS_INF
    else:
        blocks = [[var] for _, var, _ in reversed(solved)]
        rk = elimination(blocks)
        els = []
        for p, var, o in reversed(solved):
            if els:
                p = ritt_divide(p, els, "full", rk).remainder
            assert p and not p.is_constant()
            els.append(p)
        charset = AutoreducedSet(tuple(els), rk)
        diff_dim, bound = dimensions(charset, n)
        assert diff_dim == 0
        assert bound == sum(o for _, _, o in solved)
        if j_init != NEG_INF:
            assert bound <= j_init, "dimension bound %s exceeds initial J %s" % (bound, j_init)

    trace = Trace(tuple(steps), tuple(jw_seq), tuple(js_seq))
    return LinearReduceResult(trace, charset, diff_dim, bound, j_init, degenerate, tuple(o for _, _, o in solved))
