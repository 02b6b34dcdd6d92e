"""Order matrices and their tropical determinant.

Entries live in Z>=0 together with -inf (float("-inf")); addition saturates
and max ignores -inf, so plain Python arithmetic does the right thing.  The
tropical determinant tdet(A) is the maximum transversal sum over all
permutations; it has a brute-force route (all n! transversals, with
witnesses) and an assignment route (scipy, big-M for forbidden cells).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .diffpoly import NEG_INF


class HypothesisFailure(Exception):
    """The matrix does not satisfy the hypotheses of the requested form."""


class InternalInvariantViolation(AssertionError):
    """A step the theory guarantees has failed; inputs and state are logged."""


# -- matrices ---------------------------------------------------------------


def _as_entries(rows):
    out = []
    width = None
    for row in rows:
        r = []
        for e in row:
            if e == NEG_INF or e is None or e == "-inf":
                r.append(NEG_INF)
            else:
                r.append(int(e))
        if width is None:
            width = len(r)
        elif len(r) != width:
            raise ValueError("ragged matrix")
        out.append(tuple(r))
    if not out or width == 0:
        raise ValueError("empty matrix")
    return tuple(out)


@dataclass(frozen=True)
class OrderMatrix:
    entries: tuple
    convention: str = "strong"
    col_names: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "entries", _as_entries(self.entries))
        if self.convention not in ("weak", "strong"):
            raise ValueError("unknown convention %r" % self.convention)
        if self.convention == "weak":
            for row in self.entries:
                if NEG_INF in row:
                    raise ValueError("weak matrices have no -inf entries")

    @property
    def n(self):
        return len(self.entries)

    @property
    def m(self):
        return len(self.entries[0])

    def to_json(self):
        return {
            "entries": [[("-inf" if e == NEG_INF else e) for e in row] for row in self.entries],
            "convention": self.convention,
            "cols": list(self.col_names),
        }


def order_matrix(polys, var_order=None, convention="strong") -> OrderMatrix:
    """Row per polynomial, column per variable, entry = order of the variable."""
    polys = list(polys)
    if not polys:
        raise ValueError("empty system")
    ring = polys[0].ring
    if var_order is None:
        var_order = list(range(ring.nvars))
    cols = [ring.index[v] if isinstance(v, str) else v for v in var_order]
    ents = tuple(tuple(p.order_in(j, convention) for j in cols) for p in polys)
    return OrderMatrix(ents, convention, tuple(ring.names[j] for j in cols))


def render_grid(entries) -> str:
    cells = [[("·" if e == NEG_INF else str(int(e))) for e in row] for row in entries]
    w = max(len(c) for row in cells for c in row)
    return "\n".join(" ".join(c.rjust(w) for c in row) for row in cells)


def minor(entries, drop_row, drop_col):
    return tuple(
        tuple(e for j, e in enumerate(row) if j != drop_col)
        for i, row in enumerate(entries)
        if i != drop_row
    )


# -- permutations (tuples p with p[i] = image of i; compose right-to-left) --


def identity_perm(n):
    return tuple(range(n))


def compose(p, q):
    """(p o q)(i) = p(q(i)): apply q first."""
    return tuple(p[q[i]] for i in range(len(p)))


def inverse(p):
    inv = [0] * len(p)
    for i, pi in enumerate(p):
        inv[pi] = i
    return tuple(inv)


def transposition(n, i, j):
    p = list(range(n))
    p[i], p[j] = p[j], p[i]
    return tuple(p)


def cycle_decompose(perm):
    """(cycles, fixed points); cycles in orbit order from their least element."""
    seen = set()
    cycles, fixed = [], []
    for start in range(len(perm)):
        if start in seen:
            continue
        orbit = [start]
        seen.add(start)
        nxt = perm[start]
        while nxt != start:
            orbit.append(nxt)
            seen.add(nxt)
            nxt = perm[nxt]
        if len(orbit) == 1:
            fixed.append(start)
        else:
            cycles.append(tuple(orbit))
    return cycles, fixed


# -- tropical determinant ---------------------------------------------------


def transversal_value(entries, rho):
    if sorted(rho) != list(range(len(entries))):
        raise ValueError("not a permutation: %r" % (rho,))
    return sum(entries[i][rho[i]] for i in range(len(entries)))


def cyclic_sum(entries, cycle):
    """a_{i1,i2} + a_{i2,i3} + ... + a_{is,i1} for a genuine cycle (length >= 2)."""
    n = len(entries)
    if len(cycle) < 2 or len(set(cycle)) != len(cycle):
        raise ValueError("not a cycle: %r" % (cycle,))
    if any(not 0 <= i < n for i in cycle):
        raise ValueError("cycle index out of range")
    return sum(entries[cycle[k]][cycle[(k + 1) % len(cycle)]] for k in range(len(cycle)))


def tdet_brute(entries):
    """(value, all maximizing permutations); factorial, for n <= 8."""
    n = len(entries)
    if len(entries[0]) != n:
        raise ValueError("tdet needs a square matrix")
    if n > 8:
        raise ValueError("brute force capped at n = 8")
    best, wits = NEG_INF, []
    for rho in itertools.permutations(range(n)):
        v = sum(entries[i][rho[i]] for i in range(n))
        if v > best:
            best, wits = v, [rho]
        elif v == best and v != NEG_INF:
            wits.append(rho)
    if best == NEG_INF:
        wits = []
    return best, tuple(wits)


def tdet_assignment(entries):
    """Value only, via linear sum assignment with exact big-M padding."""
    from scipy.optimize import linear_sum_assignment

    n = len(entries)
    if len(entries[0]) != n:
        raise ValueError("tdet needs a square matrix")
    finite = [e for row in entries for e in row if e != NEG_INF]
    if not finite:
        return NEG_INF
    lo, hi = min(finite), max(finite)
    # one forbidden cell pushes the total below any all-finite assignment
    bad = n * lo - (n - 1) * hi - 1
    cost = [[(bad if e == NEG_INF else int(e)) for e in row] for row in entries]
    rows, cols = linear_sum_assignment(cost, maximize=True)
    total = sum(cost[i][j] for i, j in zip(rows, cols))
    if any(entries[i][j] == NEG_INF for i, j in zip(rows, cols)):
        return NEG_INF
    return total


def tdet(entries, witnesses=False):
    """Tropical determinant; witnesses require the brute route (n <= 8)."""
    if isinstance(entries, OrderMatrix):
        entries = entries.entries
    n = len(entries)
    if witnesses or n <= 8:
        value, wits = tdet_brute(entries)
        return (value, wits) if witnesses else value
    return tdet_assignment(entries)


def permute(entries, sigma, tau):
    """b_{i,j} = a_{sigma(i), tau(j)}."""
    n = len(entries)
    if sorted(sigma) != list(range(n)) or sorted(tau) != list(range(len(entries[0]))):
        raise ValueError("bad permutation")
    return tuple(tuple(entries[sigma[i]][tau[j]] for j in range(len(entries[0]))) for i in range(n))


# -- Ritt's ordering on order matrices --------------------------------------

LESS, GREATER, EQUAL = "less", "greater", "equal"
# total for same-shape integer/-inf matrices; kept for API completeness
INCOMPARABLE_GUARDED = "incomparable-guarded"


def ritt_key(entries):
    """Per column the sorted entry vector; columns compared left to right."""
    n = len(entries)
    return tuple(tuple(sorted(entries[i][j] for i in range(n))) for j in range(len(entries[0])))


def ritt_compare(a, b) -> str:
    if isinstance(a, OrderMatrix):
        a = a.entries
    if isinstance(b, OrderMatrix):
        b = b.entries
    if len(a) != len(b) or len(a[0]) != len(b[0]):
        raise ValueError("shape mismatch")
    ka, kb = ritt_key(a), ritt_key(b)
    if ka < kb:
        return LESS
    if ka > kb:
        return GREATER
    return EQUAL


# -- Ritt's three forms ------------------------------------------------------


def detect_first_form(entries) -> bool:
    """Diagonal is a maximizing transversal, a21 >= a11 != -inf."""
    if isinstance(entries, OrderMatrix):
        entries = entries.entries
    n = len(entries)
    if n < 2 or len(entries[0]) != n:
        return False
    diag = sum(entries[i][i] for i in range(n))
    return tdet(entries) == diag and entries[0][0] != NEG_INF and entries[1][0] >= entries[0][0]


def detect_second_form(entries) -> bool:
    """Max transversal on the broken antidiagonal pattern, with the corner
    a_{n,1} a column maximum and the inner diagonal maximal in the minor."""
    if isinstance(entries, OrderMatrix):
        entries = entries.entries
    n = len(entries)
    if n < 2 or len(entries[0]) != n:
        return False
    pattern = entries[0][n - 1] + sum(entries[i][i] for i in range(1, n - 1)) + entries[n - 1][0]
    if tdet(entries) != pattern:
        return False
    inner = sum(entries[i][i] for i in range(n - 1))
    if inner == NEG_INF or tdet(minor(entries, n - 1, n - 1)) != inner:
        return False
    return entries[n - 1][0] == max(entries[i][0] for i in range(n))


def detect_third_form(entries) -> bool:
    """Column-cycled image of the second form."""
    if isinstance(entries, OrderMatrix):
        entries = entries.entries
    n = len(entries)
    if n < 2 or len(entries[0]) != n:
        return False
    pattern = entries[n - 1][0] + sum(entries[i][i + 1] for i in range(n - 1))
    if tdet(entries) != pattern:
        return False
    inner = entries[0][0] + sum(entries[i][i + 1] for i in range(1, n - 1))
    if inner == NEG_INF or tdet(minor(entries, n - 1, 1)) != inner:
        return False
    return entries[n - 1][0] == max(entries[i][0] for i in range(n))


def _cols_cycle(n):
    # second -> third: new col 1 is old col n-1, cols 2..n-1 shift right
    rho = [0] * n
    if n >= 2:
        rho[1] = n - 1
    for j in range(2, n):
        rho[j] = j - 1
    return tuple(rho)


def third_from_second(entries):
    if not detect_second_form(entries):
        raise ValueError("input is not in second form")
    out = permute(entries, identity_perm(len(entries)), _cols_cycle(len(entries)))
    assert detect_third_form(out)
    return out


def second_from_third(entries):
    if not detect_third_form(entries):
        raise ValueError("input is not in third form")
    out = permute(entries, identity_perm(len(entries)), inverse(_cols_cycle(len(entries))))
    assert detect_second_form(out)
    return out


@dataclass(frozen=True)
class FormCertificate:
    """Row/column permutations carrying a matrix into the named form."""

    row_perm: tuple
    col_perm: tuple
    form: str
    index: int = 0  # the search index i chosen by the second-form argument

    def apply(self, entries):
        if isinstance(entries, OrderMatrix):
            entries = entries.entries
        return permute(entries, self.row_perm, self.col_perm)

    def to_json(self):
        return {
            "rows": list(self.row_perm),
            "cols": list(self.col_perm),
            "form": self.form,
            "index": self.index,
        }


def _column_one_data(entries, wits):
    n = len(entries)
    col0 = [entries[i][0] for i in range(n)]
    finite = sum(1 for e in col0 if e != NEG_INF)
    colmax = max(col0)
    picks = [(rho, entries[inverse(rho)[0]][0]) for rho in wits]
    return col0, finite, colmax, picks


def to_first_form(entries) -> FormCertificate:
    """Hypothesis: some maximizing transversal meets column 1 strictly below
    its (finite) maximum.  Column 1 is never moved."""
    if isinstance(entries, OrderMatrix):
        entries = entries.entries
    n = len(entries)
    if n < 2 or len(entries[0]) != n:
        raise ValueError("need a square matrix, n >= 2")
    value, wits = tdet_brute(entries)
    if value == NEG_INF:
        raise HypothesisFailure("no finite transversal")
    _, finite, colmax, picks = _column_one_data(entries, wits)
    if finite < 2:
        raise HypothesisFailure("column 1 has fewer than two finite entries")
    good = [rho for rho, e in picks if e != NEG_INF and e < colmax]
    if not good:
        raise HypothesisFailure(
            "every maximizing transversal meets column 1 at its maximum"
        )
    rho = min(good)
    sigma = inverse(rho)  # diagonalize: b_{i,i} = a_{rho^{-1}(i), i} on the transversal
    b = permute(entries, sigma, identity_perm(n))
    if b[1][0] >= b[0][0]:
        i = 1
    else:
        i = max(range(1, n), key=lambda r: (b[r][0], -r))
    sw = transposition(n, 1, i)
    cert = FormCertificate(compose(sigma, sw), sw, "first")
    if not detect_first_form(cert.apply(entries)):
        raise InternalInvariantViolation("first-form construction failed: %r" % (entries,))
    return cert


def to_second_form(entries) -> FormCertificate:
    """Hypothesis: every maximizing transversal meets column 1 at its finite
    maximum and column 1 has another finite entry.  Column 1 is never moved."""
    if isinstance(entries, OrderMatrix):
        entries = entries.entries
    n = len(entries)
    if n < 2 or len(entries[0]) != n:
        raise ValueError("need a square matrix, n >= 2")
    value, wits = tdet_brute(entries)
    if value == NEG_INF:
        raise HypothesisFailure("no finite transversal")
    _, finite, colmax, picks = _column_one_data(entries, wits)
    if finite < 2:
        raise HypothesisFailure("column 1 has fewer than two finite entries")
    if any(e != colmax for _, e in picks):
        raise HypothesisFailure(
            "some maximizing transversal avoids the column-1 maximum"
        )
    rho = min(wits)
    r = inverse(rho)[0]
    remaining = [i for i in range(n) if i != r]
    sigma0 = tuple(remaining + [r])
    tau0 = tuple([0] + [rho[i] for i in remaining])
    a1 = permute(entries, sigma0, tau0)
    assert a1[n - 1][0] == colmax
    assert a1[n - 1][0] + sum(a1[i][i + 1] for i in range(n - 1)) == value
    inv_cycle = inverse(_cols_cycle(n))
    for idx in range(n - 1):
        sw_r = transposition(n, 0, idx)
        sw_c = transposition(n, 1, idx + 1)
        d = permute(a1, sw_r, sw_c)
        if not detect_third_form(d):
            continue
        cert = FormCertificate(
            compose(sigma0, sw_r), compose(compose(tau0, sw_c), inv_cycle), "second", idx + 1
        )
        out = cert.apply(entries)
        if detect_second_form(out):
            assert out == second_from_third(d)
            return cert
    raise InternalInvariantViolation(
        "second-form search exhausted without a valid index: %r" % (entries,)
    )
