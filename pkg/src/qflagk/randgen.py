"""Seeded random generators for property suites.

Every generator takes an explicit ``random.Random`` so that trial t of a run
with seed s can be replayed in isolation: use ``trial_rng(seed, t)``.  Valid
GKM tuples are produced by construction (combinations of Schubert classes,
vertex classes supported at a single fixed point, polynomials in the
quotient-bundle classes), never by the membership checkers they are used to
test.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .gkm import (
    GKMTupleG,
    GKMTupleT,
    GKMTupleX,
    canonical_class,
    pullback_pi,
    schubert_table,
)
from .quatflag import QMatrix, Quaternion, _left_row_rank
from .ringcore import LaurentPoly, XPoly
from .weylc import all_perms, enumerate_weyl, max_length_rep

__all__ = [
    "trial_rng",
    "random_laurent",
    "random_xpoly",
    "random_quaternion",
    "random_invertible_matrix",
    "random_upper_triangular",
    "random_t_tuple",
    "random_maxrep_combination",
    "vertex_class_x",
    "random_x_tuple",
    "random_invariant_t_tuple",
    "random_g_tuple",
]


def trial_rng(seed: int, trial: int) -> random.Random:
    """Independent stream per (seed, trial); aggregation over trials is then
    insensitive to chunking across workers."""
    return random.Random(f"{seed}:{trial}")


def random_laurent(rng, n, terms=2, max_exp=2, max_coeff=3) -> LaurentPoly:
    out = {}
    for _ in range(terms):
        exps = tuple(rng.randint(-max_exp, max_exp) for _ in range(n))
        c = rng.choice([c for c in range(-max_coeff, max_coeff + 1) if c])
        out[exps] = out.get(exps, 0) + c
    return LaurentPoly(n, out)


def random_xpoly(rng, n, terms=2, max_deg=2, max_coeff=3) -> XPoly:
    out = {}
    for _ in range(terms):
        exps = tuple(rng.randint(0, max_deg) for _ in range(n))
        c = rng.choice([c for c in range(-max_coeff, max_coeff + 1) if c])
        out[exps] = out.get(exps, 0) + c
    return XPoly(n, out)


def random_quaternion(rng, bound=10) -> Quaternion:
    return Quaternion(*[
        Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        for _ in range(4)
    ])


def random_invertible_matrix(rng, n, bound=10) -> QMatrix:
    """Dense random matrix, resampled until invertible."""
    while True:
        m = QMatrix(tuple(
            tuple(random_quaternion(rng, bound) for _ in range(n))
            for _ in range(n)
        ))
        if _left_row_rank(m.entries) == n:
            return m


def random_upper_triangular(rng, n, bound=10) -> QMatrix:
    """Random invertible upper triangular matrix."""
    rows = []
    for i in range(n):
        row = [Quaternion.zero()] * i
        diag = random_quaternion(rng, bound)
        while diag.is_zero():
            diag = random_quaternion(rng, bound)
        row.append(diag)
        row.extend(random_quaternion(rng, bound) for _ in range(n - i - 1))
        rows.append(tuple(row))
    return QMatrix(tuple(rows))


def _combination(n, basis_elements, coeffs):
    table = schubert_table(n)
    values = {w: LaurentPoly.zero(n) for w in enumerate_weyl(n)}
    for b, a in zip(basis_elements, coeffs):
        cls = table.classes[b]
        for w in values:
            values[w] = values[w] + a * cls.values[w]
    return GKMTupleT(n, values)


def random_t_tuple(rng, n, support=3) -> GKMTupleT:
    """Random combination of Schubert classes with Laurent coefficients."""
    basis = rng.sample(list(enumerate_weyl(n)), k=min(support, 2**n))
    coeffs = [random_laurent(rng, n, terms=1, max_exp=1, max_coeff=2) for _ in basis]
    return _combination(n, basis, coeffs)


def random_maxrep_combination(rng, n, with_coeffs=False):
    """Random combination of the classes at maximal-length coset representatives."""
    basis = [max_length_rep(tau) for tau in all_perms(n)]
    coeffs = [random_laurent(rng, n, terms=1, max_exp=1, max_coeff=2) for _ in basis]
    combo = _combination(n, basis, coeffs)
    if with_coeffs:
        return combo, dict(zip(basis, coeffs))
    return combo


def vertex_class_x(n, tau) -> GKMTupleX:
    """Valid tuple supported at one fixed point.

    The value there is the product of every transposition-edge divisor, so
    each difference across an edge is a multiple of that edge's divisor.
    This is the pattern of the K-theoretic Euler class of the fixed point.
    """
    d = LaurentPoly.one(n)
    for mu in range(1, n + 1):
        for nu in range(mu + 1, n + 1):
            hi = [0] * n
            hi[mu - 1], hi[nu - 1] = 1, -1
            lo = [0] * n
            lo[mu - 1], lo[nu - 1] = 1, 1
            d = d * (LaurentPoly.monomial(n, tuple(hi)) - 1)
            d = d * (LaurentPoly.monomial(n, tuple(lo)) - 1)
    values = {t: LaurentPoly.zero(n) for t in all_perms(n)}
    values[tuple(tau)] = d
    return GKMTupleX(n, values)


def random_x_tuple(rng, n, support=2) -> GKMTupleX:
    """Random valid tuple: a constant plus combinations of vertex classes."""
    perms = all_perms(n)
    values = {t: random_laurent(rng, n, terms=1, max_exp=1, max_coeff=2) for t in perms}
    const = values[perms[0]]
    values = {t: const for t in perms}
    for tau in rng.sample(list(perms), k=min(support, len(perms))):
        a = random_laurent(rng, n, terms=1, max_exp=1, max_coeff=2)
        vc = vertex_class_x(n, tau)
        values = {t: values[t] + a * vc.values[t] for t in perms}
    return GKMTupleX(n, values)


def random_invariant_t_tuple(rng, n) -> GKMTupleT:
    """Random valid T-tuple fixed by the index action of every sign change."""
    return pullback_pi(random_x_tuple(rng, n))


def random_g_tuple(rng, n, terms=2) -> GKMTupleG:
    """Random polynomial in the quotient-bundle classes with X coefficients."""
    perms = all_perms(n)
    values = {t: XPoly.zero(n) for t in perms}
    for _ in range(terms):
        coeff = random_xpoly(rng, n, terms=1, max_deg=1, max_coeff=2)
        factors = [rng.randint(1, n) for _ in range(rng.randint(0, 2))]
        for t in perms:
            term = coeff
            for nu in factors:
                term = term * canonical_class(nu, n).values[t]
            values[t] = values[t] + term
    return GKMTupleG(n, values)
