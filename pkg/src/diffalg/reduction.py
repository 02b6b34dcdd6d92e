"""Ritt division with exact certificates, autoreduced sets, characteristic
set iteration, and the dimension bookkeeping on top of them.

Two division modes:
  partial: reduce until ord(r, v) <= ord(g, v); only separants are inverted.
  full:    reduce until ord(r, v) < ord(g, v), or equal order with strictly
           smaller leader degree; separants and initials are inverted.
Every division returns a certificate for the identity s*f = sum Q_i(g_i) + r
which can be re-verified by exact polynomial arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .diffpoly import (
    NEG_INF,
    POS_INF,
    Derivative,
    DiffPoly,
    LinOp,
    Ranking,
    orderly,
    render,
)


class InconsistentSystem(Exception):
    """A nonzero constant turned up as a remainder: the system has no zeros."""

    def __init__(self, constant):
        self.constant = constant
        super().__init__("nonzero constant remainder %s" % render(constant))


@dataclass(frozen=True)
class DivisionCertificate:
    s: DiffPoly
    quotients: tuple  # one LinOp per divisor
    remainder: DiffPoly
    mode: str
    multipliers: tuple = ()  # the individual step multipliers, in step order

    def verify(self, f: DiffPoly, divisors) -> bool:
        lhs = self.s * f
        rhs = self.remainder
        for q, g in zip(self.quotients, divisors):
            rhs = rhs + q.apply(g)
        return lhs == rhs

    def to_json(self):
        return {
            "s": render(self.s),
            "quotients": [
                sorted(((k, render(c)) for k, c in q.coeffs.items()), reverse=True)
                for q in self.quotients
            ],
            "remainder": render(self.remainder),
            "mode": self.mode,
        }


def _division_var(g: DiffPoly, ranking: Ranking):
    ld = ranking.leader(g)
    return ld.var


def _violates(r, v, vg, dg, mode):
    rv = r.order_in(v, "strong")
    if rv == NEG_INF or rv < vg:
        return None
    if rv > vg:
        return int(rv)
    if mode == "partial":
        return None
    if r.deg_in(Derivative(v, vg)) >= dg:
        return vg
    return None


def ritt_divide(f: DiffPoly, divisors, mode="full", ranking: Ranking = None, var=None):
    """Divide f by one or several differential polynomials.

    With `var` given there must be exactly one divisor and reduction happens
    in that variable.  Otherwise each divisor reduces in the variable of its
    ranking leader; leading variables must be pairwise distinct.  Always the
    highest unreduced occurrence is eliminated next; the (occurrence, degree)
    measure must strictly drop at each step and this is asserted.
    """
    if mode not in ("partial", "full"):
        raise ValueError("unknown mode %r" % mode)
    divisors = list(divisors)
    if not divisors:
        raise ValueError("no divisors")
    for g in divisors:
        if not g or g.is_constant():
            raise ValueError("divisor must be non-constant")
    ring = f.ring
    if var is not None:
        if len(divisors) != 1:
            raise ValueError("explicit variable needs exactly one divisor")
        if isinstance(var, str):
            var = ring.index[var]
        dvars = [var]
        if divisors[0].order_in(var, "strong") == NEG_INF:
            raise ValueError("divisor does not involve the division variable")
    else:
        if ranking is None:
            ranking = orderly()
        dvars = [_division_var(g, ranking) for g in divisors]
        if len(set(dvars)) != len(dvars):
            raise ValueError("divisors must have distinct leading variables")

    info = []
    for g, v in zip(divisors, dvars):
        vg = int(g.order_in(v, "strong"))
        lg = Derivative(v, vg)
        info.append((g, v, vg, g.deg_in(lg)))

    s = ring.one()
    quots = [dict() for _ in divisors]
    mults = []
    r = f
    last_measure = None
    while True:
        best = None
        for i, (g, v, vg, dg) in enumerate(info):
            rv = _violates(r, v, vg, dg, mode)
            if rv is None:
                continue
            occ = Derivative(v, rv)
            key = ranking.key(occ) if ranking is not None else (rv,)
            if best is None or key > best[0]:
                best = (key, i, occ)
        if best is None:
            break
        key, i, occ = best
        g, v, vg, dg = info[i]
        e = r.deg_in(occ)
        measure = (key, e)
        assert last_measure is None or measure < last_measure, "division measure did not drop"
        last_measure = measure
        a = r.coeffs_in(occ)[e]
        if occ.order > vg:
            k = occ.order - vg
            mult = g.partial(Derivative(v, vg))  # separant of g in v
            co = a * ring.var(v, occ.order) ** (e - 1)
            r = mult * r - co * g.derive(k)
        else:
            k = 0
            cs = g.coeffs_in(occ)
            mult = cs[dg]  # initial of g in v
            co = a * ring.var(v, vg) ** (e - dg)
            r = mult * r - co * g
        s = mult * s
        mults.append(mult)
        for q in quots:
            for kk in q:
                q[kk] = mult * q[kk]
        quots[i][k] = quots[i].get(k, ring.zero()) + co

    cert = DivisionCertificate(
        s=s,
        quotients=tuple(LinOp(ring, q) for q in quots),
        remainder=r,
        mode=mode,
        multipliers=tuple(mults),
    )
    assert cert.verify(f, divisors), "division identity failed"
    return cert


def is_reduced_wrt(f: DiffPoly, g: DiffPoly, mode="full", ranking: Ranking = None) -> bool:
    """Whether f is already a valid remainder against g in g's leading variable."""
    if ranking is None:
        ranking = orderly()
    if not g or g.is_constant():
        raise ValueError("reference polynomial must be non-constant")
    ld = ranking.leader(g)
    v, vg = ld.var, ld.order
    return _violates(f, v, vg, g.deg_in(ld), mode) is None


@dataclass(frozen=True)
class AutoreducedSet:
    """Nonempty tuple of pairwise fully-reduced polynomials, strictly
    increasing in rank (leader key, leader degree) under the ranking."""

    elements: tuple
    ranking: Ranking

    def __post_init__(self):
        els = self.elements
        if not els:
            raise ValueError("autoreduced set must be nonempty")
        for p in els:
            if not p or p.is_constant():
                raise ValueError("autoreduced sets contain non-constants only")
        ranks = [self.ranking.rank(p) for p in els]
        for a, b in zip(ranks, ranks[1:]):
            if not a < b:
                raise ValueError("elements must strictly increase in rank")
        for i, p in enumerate(els):
            for j, q in enumerate(els):
                if i != j and not is_reduced_wrt(p, q, "full", self.ranking):
                    raise ValueError("element %d is not reduced w.r.t. element %d" % (i, j))
        lvars = [self.ranking.leader(p).var for p in els]
        assert len(set(lvars)) == len(lvars)

    def leaders(self):
        return tuple(self.ranking.leader(p) for p in self.elements)

    def rank_vector(self):
        return tuple(self.ranking.rank(p) for p in self.elements)


def compare_autoreduced(a: AutoreducedSet, b: AutoreducedSet) -> int:
    """-1, 0, or 1 in the induced ordering.

    Lower rank at the first differing slot wins; with one rank vector a
    proper prefix of the other, the longer set is the lower one.
    """
    ra, rb = a.rank_vector(), b.rank_vector()
    for x, y in zip(ra, rb):
        if x < y:
            return -1
        if x > y:
            return 1
    if len(ra) > len(rb):
        return -1
    if len(ra) < len(rb):
        return 1
    return 0


def _minimal_autoreduced(basis, ranking):
    ordered = sorted(basis, key=lambda p: (ranking.rank(p), render(p)))
    chosen = []
    for p in ordered:
        if all(
            is_reduced_wrt(p, q, "full", ranking) and is_reduced_wrt(q, p, "full", ranking)
            for q in chosen
        ):
            chosen.append(p)
    return chosen


@dataclass
class CharSetResult:
    charset: AutoreducedSet
    converged: bool
    rounds: int
    multipliers: tuple = ()


def autoreduce_loop(generators, ranking: Ranking = None, max_rounds=64) -> CharSetResult:
    """Ritt-Wu style characteristic set iteration without case splitting.

    Each round: take a minimal autoreduced subset of the basis, fully reduce
    the rest against it, adjoin nonzero remainders.  A nonzero constant
    remainder (or generator) raises InconsistentSystem.  The chosen
    autoreduced set must strictly decrease in the induced ordering whenever
    the basis changes; non-convergence within max_rounds raises RuntimeError.
    """
    if ranking is None:
        ranking = orderly()
    basis = [g for g in generators if g]
    if not basis:
        raise ValueError("no nonzero generators")
    for g in basis:
        if g.is_constant():
            raise InconsistentSystem(g)

    mults = []
    prev = None
    for rounds in range(1, max_rounds + 1):
        chosen = _minimal_autoreduced(basis, ranking)
        aset = AutoreducedSet(tuple(chosen), ranking)
        if prev is not None:
            assert compare_autoreduced(aset, prev) < 0, "induced ordering did not drop"
        rest = [p for p in basis if not any(p is q for q in chosen)]
        new = []
        for p in rest:
            cert = ritt_divide(p, chosen, "full", ranking)
            for m in cert.multipliers:
                if not m.is_constant() and m not in mults:
                    mults.append(m)
            r = cert.remainder
            if not r:
                continue
            if r.is_constant():
                raise InconsistentSystem(r)
            new.append(r)
        if not new:
            return CharSetResult(aset, True, rounds, tuple(mults))
        basis = chosen + new
        prev = aset
    return CharSetResult(aset, False, max_rounds, tuple(mults))


def membership(f: DiffPoly, charset: AutoreducedSet) -> bool:
    """Zero full remainder against the characteristic set."""
    if not f:
        return True
    return not ritt_divide(f, charset.elements, "full", charset.ranking).remainder


def dimensions(charset: AutoreducedSet, nvars=None):
    """(differential dimension, absolute dimension bound).

    diff dim = n - s for s elements over n variables; the order bound is the
    sum of the leader orders when s = n, and +inf otherwise.
    """
    n = charset.elements[0].ring.nvars if nvars is None else nvars
    s = len(charset.elements)
    if s > n:
        raise ValueError("more elements than variables")
    diff_dim = n - s
    if s == n:
        bound = sum(ld.order for ld in charset.leaders())
    else:
        bound = POS_INF
    return diff_dim, bound


def elimination_project(charset: AutoreducedSet, keep) -> AutoreducedSet:
    """Restrict to the polynomials supported entirely on the kept block.

    The ranking must be a block elimination ranking whose lowest block is
    exactly the kept variables; the kept polynomials must form a prefix.
    """
    ring = charset.elements[0].ring
    keep_idx = tuple(ring.index[v] if isinstance(v, str) else v for v in keep)
    rk = charset.ranking
    if rk.kind != "elim" or set(rk.blocks[0]) != set(keep_idx):
        raise ValueError("ranking's lowest block must equal the kept variables")
    inside = [all(v in keep_idx for v in p.variables()) for p in charset.elements]
    cut = sum(inside)
    if not all(inside[:cut]) or any(inside[cut:]):
        raise ValueError("kept polynomials do not form a prefix")
    if cut == 0:
        raise ValueError("no polynomial lies in the kept block")
    return AutoreducedSet(charset.elements[:cut], rk)
