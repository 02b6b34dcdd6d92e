"""Seeded random generators shared by the test modules."""

from fractions import Fraction

from diffalg import DiffRing, NEG_INF

NAMES = ("x", "y", "z", "t")


def ring_of(nvars):
    return DiffRing(NAMES[:nvars])


def rand_poly(rng, ring, max_monos=4, max_deg=3, max_order=4, nonzero=True):
    while True:
        p = ring.zero()
        for _ in range(rng.randint(1, max_monos)):
            term = ring.const(Fraction(rng.choice([-3, -2, -1, 1, 2, 3])))
            for _ in range(rng.randint(0, max_deg)):
                v = rng.randrange(ring.nvars)
                term = term * ring.var(v, rng.randint(0, max_order))
            p = p + term
        if p or not nonzero:
            return p


def rand_nonconstant(rng, ring, **kw):
    while True:
        p = rand_poly(rng, ring, **kw)
        if not p.is_constant():
            return p


def rand_linear_system(rng, ring, max_order=5, extra_terms=3):
    """Square linear system with a guaranteed diagonal entry per equation."""
    n = ring.nvars
    out = []
    for i in range(n):
        p = ring.var(i, rng.randint(0, max_order)) * rng.choice([-2, -1, 1, 2])
        for _ in range(rng.randint(0, extra_terms)):
            v = rng.randrange(n)
            p = p + ring.var(v, rng.randint(0, max_order)) * rng.choice([-2, -1, 1, 2])
        if rng.random() < 0.3:
            p = p + ring.const(rng.randint(-3, 3))
        out.append(p)
    return out


def rand_unit_separant_system(rng, n, max_order=4, boost_first=False):
    """Square system whose top derivative in every variable it contains has a
    constant coefficient, so all separants and initials are constants.  May
    carry a nonlinear tail strictly below every top order."""
    ring = ring_of(n)
    out = []
    for i in range(n):
        tops = {}
        for v in range(n):
            if v == i or rng.random() < 0.8:
                tops[v] = rng.randint(0, max_order)
        if boost_first and i == rng.randrange(n):
            tops[0] = rng.randint(max_order + 1, max_order + 3)
        p = ring.zero()
        for v, r in tops.items():
            p = p + ring.var(v, r) * rng.choice([-2, -1, 1, 2])
        if rng.random() < 0.4:
            lows = [(v, j) for v, r in tops.items() for j in range(r)]
            if lows:
                tail = ring.const(rng.choice([-1, 1]))
                for _ in range(rng.randint(1, 2)):
                    v, j = rng.choice(lows)
                    tail = tail * ring.var(v, j)
                p = p + tail
        if rng.random() < 0.3:
            p = p + ring.const(rng.randint(-2, 2))
        out.append(p)
    return ring, out


def rand_matrix(rng, n, lo=0, hi=9, p_inf=0.2, finite_col0=False):
    return tuple(
        tuple(
            (NEG_INF if (rng.random() < p_inf and not (finite_col0 and j == 0)) else rng.randint(lo, hi))
            for j in range(n)
        )
        for i in range(n)
    )


def all_cycles(n):
    """Every cyclic permutation pattern (as vertex tuples) on subsets of 0..n-1."""
    import itertools

    out = []
    for k in range(2, n + 1):
        for subset in itertools.combinations(range(n), k):
            first = subset[0]
            for rest in itertools.permutations(subset[1:]):
                out.append((first,) + rest)
    return out
