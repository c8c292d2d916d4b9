#!/usr/bin/env python3
"""Exact arithmetic in the two character rings and the bridge between them.

The Laurent ring Z[x1^±1, x2^±1] carries the torus characters; the subring
of sign-change invariants is the polynomial ring on X_v = x_v + x_v^{-1}.
The key computational fact: X1 - X2 and the Laurent binomial product
(x1 x2^{-1} - 1)(x1 x2 - 1) divide exactly the same invariant elements.
"""

from qflagk.ringcore import (
    BinomialDivisor,
    LaurentPoly,
    NotDivisible,
    XPoly,
    basis_decompose,
    divide_exact,
    x_expand,
    xpoly_divide_exact,
)

n = 2
X1, X2 = XPoly.X(n, 1), XPoly.X(n, 2)

print("expanding X1*X2 into Laurent monomials:")
print("  ", x_expand(X1 * X2))
print()

pair = BinomialDivisor([(1, -1), (1, 1)])
lin = X1 - X2
print("the linear form X1 - X2 expands to:", x_expand(lin))
print("dividing that expansion by (x1*x2^-1 - 1)(x1*x2 - 1):")
print("  quotient =", divide_exact(x_expand(lin), pair), " (a unit monomial)")
print()

f = lin * (X1 * X1 + 3 * X2)
print("f =", f)
print("  quotient by X1 - X2 in Z[X]:     ", xpoly_divide_exact(f, 1, 2))
print("  quotient of the expansion by the", "binomial pair:", divide_exact(x_expand(f), pair))
print()

g = f + 1
try:
    xpoly_divide_exact(g, 1, 2)
except NotDivisible as exc:
    print("f + 1 is not divisible; remainder witness:", exc.remainder)
try:
    divide_exact(x_expand(g), pair)
except NotDivisible as exc:
    print("and the Laurent route rejects it too, remainder:", exc.remainder)
print()

h = LaurentPoly(2, {(2, 1): 1, (0, -1): -3})
print("free-basis decomposition of", h, "over Z[X1, X2]:")
for eps, coeff in sorted(basis_decompose(h).items()):
    if coeff:
        print(f"  x^{eps} * ({coeff})")
