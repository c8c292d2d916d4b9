"""Fixed-point models of the equivariant K-theory rings and their maps.

Three models, all tuples of characters indexed by fixed points:

* T-model on the full flag variety of the symplectic group: one Laurent
  polynomial per signed permutation, with e^alpha - 1 dividing the difference
  across every reflection edge.
* X-model on the quaternionic flag space: one Laurent polynomial per plain
  permutation, with (x_mu x_nu^{-1} - 1)(x_mu x_nu - 1) dividing differences
  across transposition edges.
* G-model: one X-polynomial per plain permutation, with X_mu - X_nu dividing
  the differences.

Schubert classes are built by the Demazure recursion from the point class;
the two sign choices that recursion leaves open (the exponent sign in the
K-theoretic Euler product and in the Demazure denominator) are pinned by
requiring the rank-one recursion to reach the constant tuple 1, and the
chosen convention is recorded on the table.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache

from .ringcore import (
    BinomialDivisor,
    LaurentPoly,
    NotDivisible,
    NotInvariant,
    XPoly,
    divide_exact,
    sigma_k,
    sym_in_x,
    weyl_act_poly,
    x_expand,
    xpoly_divide_exact,
)
from .weylc import (
    SignedPerm,
    all_perms,
    bruhat_leq,
    coset_map,
    enumerate_sign_changes,
    enumerate_weyl,
    length,
    perm_compose,
    perm_embed,
    perm_transposition,
    positive_roots,
    reflection,
    simple_reflection,
    simple_root,
)

__all__ = [
    "GKMTupleT",
    "GKMTupleX",
    "GKMTupleG",
    "SchubertTable",
    "EdgeViolation",
    "InexactDivision",
    "NotInTupleSpan",
    "TupleNotInvariant",
    "CONVENTION",
    "gkm_check_t",
    "gkm_check_x",
    "gkm_check_g",
    "weyl_act_tuple",
    "coeff_act_tuple",
    "point_class",
    "demazure",
    "schubert_class",
    "schubert_class_from_word",
    "schubert_table",
    "descent_invariance_check",
    "pullback_pi",
    "descend_pi",
    "j_expand",
    "j_descend",
    "canonical_class",
    "presentation_check",
    "expand_in_schubert",
]

# Pinned sign convention for the Schubert recursion (see module docstring).
CONVENTION = {
    "euler_exponent_sign": 1,
    "demazure_denominator": "1 - e^(w(alpha_i))",
}


class InexactDivision(ArithmeticError):
    """A Demazure step failed to divide exactly.

    Signals a wrong sign convention or a corrupted input tuple; carries the
    fixed point, the simple index and the failing numerator.
    """

    def __init__(self, w, i, numerator):
        self.w = w
        self.i = i
        self.numerator = numerator
        super().__init__(f"inexact Demazure division at {w} for simple index {i}")


class NotInTupleSpan(ArithmeticError):
    """A tuple is not a combination of the requested Schubert classes."""

    def __init__(self, witness_index, residual):
        self.witness_index = witness_index
        self.residual = residual
        super().__init__(f"nonzero residual at {witness_index}")


class TupleNotInvariant(ValueError):
    """A tuple moved under a group element that was required to fix it."""

    def __init__(self, group_element, index):
        self.group_element = group_element
        self.index = index
        super().__init__(f"component at {index} moved under {group_element}")


@dataclass(frozen=True)
class EdgeViolation:
    """A failed divisibility condition along one edge of a GKM graph."""

    model: str
    index: object  # window tuple (T) or one-line tuple (X, G)
    partner: object
    edge: object  # the positive root (T) or the pair (mu, nu) (X, G)
    remainder: object

    def to_json(self):
        return {
            "model": self.model,
            "index": list(self.index),
            "partner": list(self.partner),
            "edge": list(self.edge),
            "remainder": self.remainder.to_json(),
        }


def _check_values(values, keys, rank, poly_cls, what):
    keys = set(keys)
    if set(values) != keys:
        missing = keys - set(values)
        extra = set(values) - keys
        raise ValueError(f"{what} must be total: missing {missing}, extra {extra}")
    for k, p in values.items():
        if not isinstance(p, poly_cls) or p.rank != rank:
            raise ValueError(f"component at {k} is not a rank-{rank} {poly_cls.__name__}")


@dataclass
class GKMTupleT:
    """One Laurent polynomial per signed permutation."""

    rank: int
    values: dict

    def __post_init__(self):
        _check_values(self.values, enumerate_weyl(self.rank), self.rank, LaurentPoly, "T-tuple")

    @classmethod
    def constant(cls, rank, poly):
        if isinstance(poly, int):
            poly = LaurentPoly.constant(rank, poly)
        return cls(rank, {w: poly for w in enumerate_weyl(rank)})

    def map_values(self, fn):
        return GKMTupleT(self.rank, {w: fn(p) for w, p in self.values.items()})

    def to_json(self):
        return {
            "model": "T",
            "rank": self.rank,
            "values": {w.window_str(): self.values[w].to_json() for w in enumerate_weyl(self.rank)},
        }

    @classmethod
    def from_json(cls, data):
        rank = int(data["rank"])
        values = {
            SignedPerm.from_window_str(key): LaurentPoly.from_json(rank, val)
            for key, val in data["values"].items()
        }
        return cls(rank, values)


def _perm_key(tau):
    return json.dumps(list(tau), separators=(",", ":"))


def _perm_from_key(key):
    return tuple(int(v) for v in json.loads(key))


@dataclass
class GKMTupleX:
    """One Laurent polynomial per plain permutation."""

    rank: int
    values: dict

    def __post_init__(self):
        _check_values(self.values, all_perms(self.rank), self.rank, LaurentPoly, "X-tuple")

    @classmethod
    def constant(cls, rank, poly):
        if isinstance(poly, int):
            poly = LaurentPoly.constant(rank, poly)
        return cls(rank, {t: poly for t in all_perms(rank)})

    def to_json(self):
        return {
            "model": "X",
            "rank": self.rank,
            "values": {_perm_key(t): self.values[t].to_json() for t in all_perms(self.rank)},
        }

    @classmethod
    def from_json(cls, data):
        rank = int(data["rank"])
        values = {
            _perm_from_key(key): LaurentPoly.from_json(rank, val)
            for key, val in data["values"].items()
        }
        return cls(rank, values)


@dataclass
class GKMTupleG:
    """One X-polynomial per plain permutation."""

    rank: int
    values: dict

    def __post_init__(self):
        _check_values(self.values, all_perms(self.rank), self.rank, XPoly, "G-tuple")

    @classmethod
    def constant(cls, rank, poly):
        if isinstance(poly, int):
            poly = XPoly.constant(rank, poly)
        return cls(rank, {t: poly for t in all_perms(rank)})

    def to_json(self):
        return {
            "model": "G",
            "rank": self.rank,
            "values": {_perm_key(t): self.values[t].to_json() for t in all_perms(self.rank)},
        }

    @classmethod
    def from_json(cls, data):
        rank = int(data["rank"])
        values = {
            _perm_from_key(key): XPoly.from_json(rank, val)
            for key, val in data["values"].items()
        }
        return cls(rank, values)


@dataclass
class SchubertTable:
    """All Schubert classes of one rank, plus the pinned sign convention."""

    rank: int
    classes: dict  # SignedPerm -> GKMTupleT
    convention: dict

    def to_json(self):
        return {
            "rank": self.rank,
            "convention": dict(self.convention),
            "classes": {
                w.window_str(): self.classes[w].to_json()
                for w in enumerate_weyl(self.rank)
            },
        }


# ---------------------------------------------------------------------------
# membership checkers
# ---------------------------------------------------------------------------

def gkm_check_t(f: GKMTupleT):
    """All edge conditions of the T-model; returns violations (empty = pass).

    Edges are the pairs {w, s_alpha * w} over positive roots alpha; each
    unordered pair is checked once, which is enough because negating the
    difference does not change divisibility by e^alpha - 1.
    """
    n = f.rank
    violations = []
    for alpha in positive_roots(n):
        s = reflection(alpha)
        divisor = BinomialDivisor([alpha])
        for w in enumerate_weyl(n):
            v = s * w
            if w.window() > v.window():
                continue
            diff = f.values[w] - f.values[v]
            if not diff:
                continue
            try:
                divide_exact(diff, divisor)
            except NotDivisible as exc:
                violations.append(
                    EdgeViolation("T", w.window(), v.window(), alpha, exc.remainder)
                )
    return violations


def _pair_divisor(n, mu, nu):
    hi = [0] * n
    hi[mu - 1] = 1
    hi[nu - 1] = -1
    lo = [0] * n
    lo[mu - 1] = 1
    lo[nu - 1] = 1
    return BinomialDivisor([tuple(hi), tuple(lo)])


def gkm_check_x(f: GKMTupleX):
    """Pair conditions of the X-model; divisor (x_mu x_nu^{-1}-1)(x_mu x_nu-1)."""
    n = f.rank
    violations = []
    for mu in range(1, n + 1):
        for nu in range(mu + 1, n + 1):
            divisor = _pair_divisor(n, mu, nu)
            swap = perm_transposition(n, mu, nu)
            for tau in all_perms(n):
                sigma = perm_compose(swap, tau)
                if tau > sigma:
                    continue
                diff = f.values[tau] - f.values[sigma]
                if not diff:
                    continue
                try:
                    divide_exact(diff, divisor)
                except NotDivisible as exc:
                    violations.append(
                        EdgeViolation("X", tau, sigma, (mu, nu), exc.remainder)
                    )
    return violations


def gkm_check_g(f: GKMTupleG):
    """Pair conditions of the G-model; divisor X_mu - X_nu."""
    n = f.rank
    violations = []
    for mu in range(1, n + 1):
        for nu in range(mu + 1, n + 1):
            swap = perm_transposition(n, mu, nu)
            for tau in all_perms(n):
                sigma = perm_compose(swap, tau)
                if tau > sigma:
                    continue
                diff = f.values[tau] - f.values[sigma]
                if not diff:
                    continue
                try:
                    xpoly_divide_exact(diff, mu, nu)
                except NotDivisible as exc:
                    violations.append(
                        EdgeViolation("G", tau, sigma, (mu, nu), exc.remainder)
                    )
    return violations


# ---------------------------------------------------------------------------
# Weyl actions on tuples
# ---------------------------------------------------------------------------

def weyl_act_tuple(v: SignedPerm, f: GKMTupleT) -> GKMTupleT:
    """Index reshuffle only: the new value at w is the old value at w * v^{-1}.

    Composing two of these reverses the order of the group elements (the
    action comes from a pullback), so acting by u then by v equals acting by
    v * u in one step.
    """
    vinv = v.inverse()
    return GKMTupleT(f.rank, {w: f.values[w * vinv] for w in f.values})


def coeff_act_tuple(v: SignedPerm, f: GKMTupleX) -> GKMTupleX:
    """Coefficient action of a sign change: acts on every component, fixes indices."""
    if not v.is_sign_change():
        raise ValueError(f"{v} is not a sign change")
    return GKMTupleX(f.rank, {t: weyl_act_poly(v, p) for t, p in f.values.items()})


# ---------------------------------------------------------------------------
# the Schubert basis
# ---------------------------------------------------------------------------

def point_class(n: int) -> GKMTupleT:
    """The class of the base point: the K-theoretic Euler product at the
    identity, zero elsewhere."""
    euler = LaurentPoly.one(n)
    for alpha in positive_roots(n):
        sign = CONVENTION["euler_exponent_sign"]
        mono = LaurentPoly.monomial(n, tuple(sign * a for a in alpha))
        euler = euler * (LaurentPoly.one(n) - mono)
    values = {w: LaurentPoly.zero(n) for w in enumerate_weyl(n)}
    values[SignedPerm.identity(n)] = euler
    return GKMTupleT(n, values)


def demazure(i: int, f: GKMTupleT) -> GKMTupleT:
    """Demazure operator: at w, (f_w - e^{w(alpha_i)} f_{w s_i}) / (1 - e^{w(alpha_i)}).

    Exact division is required at every fixed point and the operator is
    idempotent on valid tuples.
    """
    n = f.rank
    s = simple_reflection(i, n)
    alpha = simple_root(i, n)
    out = {}
    for w in enumerate_weyl(n):
        walpha = w.act(alpha)
        mono = LaurentPoly.monomial(n, walpha)
        numerator = f.values[w] - mono * f.values[w * s]
        if not numerator:
            out[w] = LaurentPoly.zero(n)
            continue
        try:
            q = divide_exact(numerator, BinomialDivisor([walpha]))
        except NotDivisible:
            raise InexactDivision(w, i, numerator) from None
        out[w] = -q  # numerator = q * (e^{w(alpha)} - 1) = -q * (1 - e^{w(alpha)})
    return GKMTupleT(n, out)


def schubert_class_from_word(n: int, word) -> GKMTupleT:
    """Fold the Demazure recursion along an explicit word from the point class."""
    cls = point_class(n)
    for i in word:
        cls = demazure(i, cls)
    return cls


@lru_cache(maxsize=None)
def _schubert_table(n: int) -> SchubertTable:
    table = {SignedPerm.identity(n): point_class(n)}
    for w in enumerate_weyl(n):  # sorted by length
        for i in range(1, n + 1):
            v = w * simple_reflection(i, n)
            if length(v) == length(w) + 1 and v not in table:
                table[v] = demazure(i, table[w])
    return SchubertTable(n, table, dict(CONVENTION))


def schubert_table(n: int) -> SchubertTable:
    """All classes, built along reduced words; the result is word-independent."""
    return _schubert_table(n)


def schubert_class(w: SignedPerm) -> GKMTupleT:
    return schubert_table(w.rank).classes[w]


def descent_invariance_check(table: SchubertTable):
    """Whenever right multiplication by s_i shortens w, the index action of
    s_i must fix the class of w.  Returns the offending (w, i) pairs."""
    n = table.rank
    bad = []
    for w in enumerate_weyl(n):
        cls = table.classes[w]
        for i in range(1, n + 1):
            s = simple_reflection(i, n)
            if bruhat_leq(w * s, w) and weyl_act_tuple(s, cls) != cls:
                bad.append((w, i))
    return bad


# ---------------------------------------------------------------------------
# maps between the models
# ---------------------------------------------------------------------------

def pullback_pi(f: GKMTupleX) -> GKMTupleT:
    """Pull back along the quotient of fixed-point sets: value at w is the
    value at the underlying permutation of w."""
    return GKMTupleT(
        f.rank, {w: f.values[coset_map(w)] for w in enumerate_weyl(f.rank)}
    )


def descend_pi(f: GKMTupleT) -> GKMTupleX:
    """Inverse of the pullback on sign-change-invariant tuples.

    Raises :class:`TupleNotInvariant` with a witnessing (group element, fixed
    point) pair when some sign change moves f.
    """
    n = f.rank
    for v in enumerate_sign_changes(n):
        vinv = v.inverse()
        for w in enumerate_weyl(n):
            if f.values[w * vinv] != f.values[w]:
                raise TupleNotInvariant(v, w.window())
    return GKMTupleX(
        n, {tau: f.values[perm_embed(tau)] for tau in all_perms(n)}
    )


def j_expand(f: GKMTupleG) -> GKMTupleX:
    """Componentwise X_v := x_v + x_v^{-1}."""
    return GKMTupleX(f.rank, {t: x_expand(p) for t, p in f.values.items()})


def j_descend(f: GKMTupleX) -> GKMTupleG:
    """Componentwise inverse of j_expand; every component must be
    sign-change invariant."""
    out = {}
    for tau, p in f.values.items():
        try:
            out[tau] = sym_in_x(p)
        except NotInvariant as exc:
            raise TupleNotInvariant(f"sign change at x_{exc.sign_index}", tau) from None
    return GKMTupleG(f.rank, out)


def canonical_class(nu: int, n: int) -> GKMTupleG:
    """The class of the rank-two quotient bundle at step nu: its restriction
    to the fixed flag of tau is X_{tau(nu)}."""
    if not 1 <= nu <= n:
        raise ValueError(f"bundle index {nu} out of range for rank {n}")
    return GKMTupleG(
        n, {tau: XPoly.X(n, tau[nu - 1]) for tau in all_perms(n)}
    )


def presentation_check(n: int):
    """Verify the defining relations of the presentation in both models.

    For each k, the componentwise elementary symmetric polynomial of the
    quotient-bundle classes must equal the constant tuple sigma_k(X_1..X_n);
    expanding through j gives the corresponding Laurent identity.  Returns a
    list of (model, k, tau) failures.
    """
    failures = []
    classes = [canonical_class(v, n) for v in range(1, n + 1)]
    gens_x = [XPoly.X(n, v) for v in range(1, n + 1)]
    expanded = [j_expand(c) for c in classes]
    gens_l = [x_expand(g) for g in gens_x]
    for k in range(1, n + 1):
        target_g = sigma_k(k, gens_x)
        target_t = sigma_k(k, gens_l)
        for tau in all_perms(n):
            got_g = sigma_k(k, [c.values[tau] for c in classes])
            if got_g != target_g:
                failures.append(("G", k, tau))
            got_t = sigma_k(k, [c.values[tau] for c in expanded])
            if got_t != target_t:
                failures.append(("X", k, tau))
    return failures


# ---------------------------------------------------------------------------
# expansion in the Schubert basis
# ---------------------------------------------------------------------------

def _diagonal_roots(w: SignedPerm):
    # positive roots alpha with w^{-1}(alpha) still positive: the diagonal
    # value of the class of w is a unit monomial times prod (1 - e^alpha)
    # over this set (the full set at the identity, empty at the long element)
    winv = w.inverse()
    from .weylc import is_positive_root

    return [a for a in positive_roots(w.rank) if is_positive_root(winv.act(a))]


def _unit_inverse(poly: LaurentPoly) -> LaurentPoly:
    ((exps, c),) = poly.terms.items()
    if c not in (1, -1):
        raise ValueError(f"{poly} is not a unit monomial")
    return LaurentPoly.monomial(poly.rank, tuple(-e for e in exps), c)


def expand_in_schubert(f: GKMTupleT, basis, table: SchubertTable | None = None):
    """Solve f = sum a_w * class_w over the given basis elements.

    The system is triangular in the Bruhat order: scanning the basis by
    decreasing length, the residual value at w must be a_w times the diagonal
    value of class_w, which is a unit monomial times a product of binomials
    (1 - e^alpha); the unit is stripped first and the binomial product is
    divided out exactly.  A division failure or a nonzero final residual
    raises :class:`NotInTupleSpan`.
    """
    n = f.rank
    if table is None:
        table = schubert_table(n)
    residual = dict(f.values)
    coeffs = {}
    for w in sorted(basis, key=lambda u: (-length(u), u.window())):
        rw = residual[w]
        cls = table.classes[w]
        if not rw:
            coeffs[w] = LaurentPoly.zero(n)
            continue
        roots = _diagonal_roots(w)
        divisor = BinomialDivisor(roots) if roots else None
        diag = cls.values[w]
        if divisor is None:
            unit = diag
        else:
            unit = divide_exact(diag, divisor)
        try:
            if divisor is None:
                a = rw * _unit_inverse(unit)
            else:
                a = divide_exact(rw, divisor) * _unit_inverse(unit)
        except NotDivisible as exc:
            raise NotInTupleSpan(w.window(), exc.remainder) from None
        coeffs[w] = a
        for v in enumerate_weyl(n):
            residual[v] = residual[v] - a * cls.values[v]
    for v in enumerate_weyl(n):
        if residual[v]:
            raise NotInTupleSpan(v.window(), residual[v])
    return coeffs
