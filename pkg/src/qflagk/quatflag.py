"""Exact quaternionic linear algebra and the Bruhat cells of the flag space.

Quaternions have four rational components; matrices act on row vectors of H^n
through g: h -> h * g^† (conjugate transpose), which makes the action linear
over left scalar multiplication.  The flag of an invertible matrix g is the
chain whose step v is spanned by the images of e_1,...,e_v, i.e. by the first
v rows of g^†.

Every invertible g factors uniquely as g = u * p_tau * b with b upper
triangular, u unit upper triangular supported on a constrained set of
positions, and p_tau the permutation matrix with entry (mu, nu) = 1 iff
mu = tau(nu).  The permutation tau is also computable directly from the
flag's intersection-dimension jumps, and the two routes must agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .weylc import Perm, bruhat_leq, perm_inverse, perm_inversions

__all__ = [
    "Quaternion",
    "QMatrix",
    "CellDescriptor",
    "SingularMatrix",
    "perm_matrix",
    "bruhat_decompose",
    "u_membership",
    "free_positions",
    "conjugate_by_diagonal",
    "cell_index",
    "closure_leq",
]


class SingularMatrix(ArithmeticError):
    """A matrix that should be invertible is not."""


def _frac(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot build an exact rational from {x!r}")


@dataclass(frozen=True)
class Quaternion:
    """a + b*i + c*j + d*k with exact rational components."""

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    def __post_init__(self):
        for name in ("a", "b", "c", "d"):
            object.__setattr__(self, name, _frac(getattr(self, name)))

    @classmethod
    def zero(cls):
        return cls(0, 0, 0, 0)

    @classmethod
    def one(cls):
        return cls(1, 0, 0, 0)

    @classmethod
    def i(cls):
        return cls(0, 1, 0, 0)

    @classmethod
    def j(cls):
        return cls(0, 0, 1, 0)

    @classmethod
    def k(cls):
        return cls(0, 0, 0, 1)

    def __add__(self, other):
        return Quaternion(self.a + other.a, self.b + other.b, self.c + other.c, self.d + other.d)

    def __sub__(self, other):
        return Quaternion(self.a - other.a, self.b - other.b, self.c - other.c, self.d - other.d)

    def __neg__(self):
        return Quaternion(-self.a, -self.b, -self.c, -self.d)

    def __mul__(self, other):
        a1, b1, c1, d1 = self.a, self.b, self.c, self.d
        a2, b2, c2, d2 = other.a, other.b, other.c, other.d
        return Quaternion(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )

    def conjugate(self):
        return Quaternion(self.a, -self.b, -self.c, -self.d)

    def norm2(self) -> Fraction:
        return self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d

    def is_zero(self):
        return not (self.a or self.b or self.c or self.d)

    def inverse(self):
        n2 = self.norm2()
        if not n2:
            raise ZeroDivisionError("zero quaternion has no inverse")
        q = self.conjugate()
        return Quaternion(q.a / n2, q.b / n2, q.c / n2, q.d / n2)

    def __repr__(self):
        return f"Quaternion({self.a}, {self.b}, {self.c}, {self.d})"

    def to_json(self):
        return [str(self.a), str(self.b), str(self.c), str(self.d)]

    @classmethod
    def from_json(cls, data):
        if len(data) != 4:
            raise ValueError(f"quaternion encoding needs 4 components: {data}")
        return cls(*[_frac(x) for x in data])


_Q0 = Quaternion.zero()
_Q1 = Quaternion.one()


@dataclass(frozen=True)
class QMatrix:
    """Square quaternionic matrix, rows-of-tuples; immutable and exact."""

    entries: tuple

    def __post_init__(self):
        n = len(self.entries)
        rows = tuple(tuple(row) for row in self.entries)
        if any(len(row) != n for row in rows):
            raise ValueError("matrix must be square")
        object.__setattr__(self, "entries", rows)

    @property
    def n(self):
        return len(self.entries)

    @classmethod
    def identity(cls, n):
        return cls(tuple(
            tuple(_Q1 if i == j else _Q0 for j in range(n)) for i in range(n)
        ))

    @classmethod
    def from_rows(cls, rows):
        return cls(tuple(
            tuple(e if isinstance(e, Quaternion) else Quaternion(e, 0, 0, 0) for e in row)
            for row in rows
        ))

    def __add__(self, other):
        if self.n != other.n:
            raise ValueError("size mismatch")
        return QMatrix(tuple(
            tuple(a + b for a, b in zip(ra, rb))
            for ra, rb in zip(self.entries, other.entries)
        ))

    def __mul__(self, other):
        if self.n != other.n:
            raise ValueError("size mismatch")
        n = self.n
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = _Q0
                for k in range(n):
                    acc = acc + self.entries[i][k] * other.entries[k][j]
                row.append(acc)
            out.append(tuple(row))
        return QMatrix(tuple(out))

    def conj_transpose(self):
        n = self.n
        return QMatrix(tuple(
            tuple(self.entries[j][i].conjugate() for j in range(n)) for i in range(n)
        ))

    def is_upper_triangular(self):
        return all(
            self.entries[i][j].is_zero()
            for i in range(self.n)
            for j in range(i)
        )

    def is_unit_upper_triangular(self):
        return self.is_upper_triangular() and all(
            self.entries[i][i] == _Q1 for i in range(self.n)
        )

    def inverse(self):
        """Gauss-Jordan with left row operations (left H-module convention)."""
        n = self.n
        m = [list(row) for row in self.entries]
        inv = [list(row) for row in QMatrix.identity(n).entries]
        for col in range(n):
            pivot_row = next(
                (r for r in range(col, n) if not m[r][col].is_zero()), None
            )
            if pivot_row is None:
                raise SingularMatrix("matrix is not invertible")
            m[col], m[pivot_row] = m[pivot_row], m[col]
            inv[col], inv[pivot_row] = inv[pivot_row], inv[col]
            p = m[col][col].inverse()
            m[col] = [p * e for e in m[col]]
            inv[col] = [p * e for e in inv[col]]
            for r in range(n):
                if r == col or m[r][col].is_zero():
                    continue
                lam = m[r][col]
                m[r] = [e - lam * f for e, f in zip(m[r], m[col])]
                inv[r] = [e - lam * f for e, f in zip(inv[r], inv[col])]
        return QMatrix(tuple(tuple(row) for row in inv))

    def __repr__(self):
        return f"QMatrix({self.n}x{self.n})"

    def to_json(self):
        return [[q.to_json() for q in row] for row in self.entries]

    @classmethod
    def from_json(cls, data):
        return cls(tuple(
            tuple(Quaternion.from_json(q) for q in row) for row in data
        ))


@dataclass(frozen=True)
class CellDescriptor:
    """A Bruhat cell: indexed by a permutation, of real dimension 4 * inversions."""

    tau: Perm
    dimension: int

    @classmethod
    def for_perm(cls, tau: Perm):
        return cls(tuple(tau), 4 * perm_inversions(tau))


def perm_matrix(tau: Perm) -> QMatrix:
    """0/1 matrix with entry (mu, nu) = 1 iff mu = tau(nu).

    Column nu carries the basis vector e_{tau(nu)}, so the map tau ->
    perm_matrix(tau) is a group homomorphism and the flag of perm_matrix(tau)
    is the coordinate flag spanned step by step by e_{tau(1)}, e_{tau(2)}, ...
    """
    n = len(tau)
    return QMatrix(tuple(
        tuple(_Q1 if mu + 1 == tau[nu] else _Q0 for nu in range(n))
        for mu in range(n)
    ))


def free_positions(tau: Perm):
    """Positions (mu, nu), 1-based, where the unipotent factor may be nonzero.

    These are the pairs mu < nu with tau^{-1}(mu) > tau^{-1}(nu); their count
    equals the inversion number of tau, matching the cell dimension.
    """
    n = len(tau)
    tinv = perm_inverse(tau)
    return [
        (mu, nu)
        for mu in range(1, n + 1)
        for nu in range(mu + 1, n + 1)
        if tinv[mu - 1] > tinv[nu - 1]
    ]


def u_membership(u: QMatrix, tau: Perm) -> bool:
    """Whether u lies in the constrained unipotent group of the cell of tau.

    True iff the diagonal is all ones and every off-diagonal entry vanishes
    outside ``free_positions(tau)``.
    """
    n = u.n
    if len(tau) != n:
        raise ValueError("size mismatch")
    free = set(free_positions(tau))
    for mu in range(n):
        for nu in range(n):
            e = u.entries[mu][nu]
            if mu == nu:
                if e != _Q1:
                    return False
            elif (mu + 1, nu + 1) not in free and not e.is_zero():
                return False
    return True


def bruhat_decompose(g: QMatrix):
    """Factor an invertible g as u * perm_matrix(tau) * b.

    Row reduction from the bottom up: each row is cleared against the leading
    entries already claimed by lower rows, using only additions of lower rows
    to upper rows.  That makes the accumulated u unit upper triangular and
    supported on ``free_positions(tau)``, and leaves a matrix whose rows have
    distinct leading columns; the permutation read off those columns is tau
    and the row-permuted matrix is the upper triangular b.

    Returns (u, tau, b) with g == u * perm_matrix(tau) * b exactly.
    """
    n = g.n
    rows = [list(r) for r in g.entries]
    u = [list(r) for r in QMatrix.identity(n).entries]
    claimed = {}  # leading column -> row index
    for mu in range(n - 1, -1, -1):
        while True:
            lead = next((c for c in range(n) if not rows[mu][c].is_zero()), None)
            if lead is None:
                raise SingularMatrix("matrix is not invertible")
            k = claimed.get(lead)
            if k is None:
                break
            lam = rows[mu][lead] * rows[k][lead].inverse()
            rows[mu] = [e - lam * f for e, f in zip(rows[mu], rows[k])]
            # g = u_new * M_new with u_new = u * (I + lam * E_{mu,k})
            for r in range(n):
                u[r][k] = u[r][k] + u[r][mu] * lam
        claimed[lead] = mu
    tau = tuple(claimed[c] + 1 for c in range(n))
    b = QMatrix(tuple(tuple(rows[tau[k] - 1]) for k in range(n)))
    return QMatrix(tuple(tuple(r) for r in u)), tau, b


def conjugate_by_diagonal(gamma, u: QMatrix) -> QMatrix:
    """Entrywise gamma_mu * u_{mu,nu} * gamma_nu^{-1} for invertible diagonal gamma."""
    n = u.n
    if len(gamma) != n:
        raise ValueError("size mismatch")
    inv = []
    for q in gamma:
        if q.is_zero():
            raise ZeroDivisionError("diagonal entries must be invertible")
        inv.append(q.inverse())
    return QMatrix(tuple(
        tuple(gamma[mu] * u.entries[mu][nu] * inv[nu] for nu in range(n))
        for mu in range(n)
    ))


def _left_row_rank(rows) -> int:
    """Rank of the left row span over the quaternions.

    Left row reduction with first-nonzero pivoting; exact arithmetic makes
    fancier pivot choices unnecessary.
    """
    work = [list(r) for r in rows]
    if not work:
        return 0
    ncols = len(work[0])
    rank = 0
    for col in range(ncols):
        pivot = next(
            (r for r in range(rank, len(work)) if not work[r][col].is_zero()), None
        )
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        p = work[rank][col].inverse()
        work[rank] = [p * e for e in work[rank]]
        for r in range(len(work)):
            if r == rank or work[r][col].is_zero():
                continue
            lam = work[r][col]
            work[r] = [e - lam * f for e, f in zip(work[r], work[rank])]
        rank += 1
        if rank == len(work):
            break
    return rank


def cell_index(g: QMatrix) -> Perm:
    """The permutation indexing the Bruhat cell containing the flag of g.

    Step v of the flag is spanned by the first v rows of g^†; its
    intersection with the coordinate subspace spanned by e_1,...,e_m has
    dimension v minus the rank of the trailing column block m+1..n of those
    rows.  The jump positions of these dimensions grow by one new index per
    step, and that new index is the image of v.
    """
    n = g.n
    a = g.conj_transpose().entries
    if _left_row_rank(a) != n:
        raise SingularMatrix("matrix is not invertible")
    tau = []
    prev = set()
    for v in range(1, n + 1):
        rows = a[:v]
        dims = [0] * (n + 1)
        for m in range(1, n + 1):
            trailing = [row[m:] for row in rows]
            dims[m] = v - _left_row_rank(trailing)
        jumps = {m for m in range(1, n + 1) if dims[m] > dims[m - 1]}
        new = jumps - prev
        if len(new) != 1:
            raise AssertionError(f"flag jump sets are not nested at step {v}")
        tau.append(new.pop())
        prev = jumps
    return tuple(tau)


def closure_leq(tau_small: Perm, tau_big: Perm) -> bool:
    """Closure order on cells: the Bruhat order of the symmetric group."""
    return bruhat_leq(tuple(tau_small), tuple(tau_big))
