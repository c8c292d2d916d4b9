#!/usr/bin/env python3
"""Tour of the signed-permutation Weyl group of type C.

Elements are written in window notation: entry v is the signed image of v,
so [-2, 1] sends 1 to -2 and 2 to +1.
"""

from qflagk.weylc import (
    SignedPerm,
    all_perms,
    coset_map,
    enumerate_sign_changes,
    enumerate_weyl,
    length,
    max_length_rep,
    positive_roots,
    reduced_word,
    reflection,
    simple_reflection,
)

n = 2
print(f"rank {n}: the group has {len(enumerate_weyl(n))} elements,")
print(f"the sign changes form a normal subgroup of {len(enumerate_sign_changes(n))}")
print()

print("simple reflections:")
for i in (1, 2):
    s = simple_reflection(i, n)
    print(f"  s{i} = {s.window()}  length {length(s)}")
print()

print("positive roots and their reflections:")
for alpha in positive_roots(n):
    r = reflection(alpha)
    print(f"  root {alpha}: reflection {r.window()}, sends the root to {r.act(alpha)}")
print()

print("every element, its length and a reduced word:")
for w in enumerate_weyl(n):
    print(f"  {str(w.window()):>10}  length {length(w)}  word {reduced_word(w)}")
print()

print("cosets modulo sign changes, and the longest member of each:")
for tau in all_perms(n):
    members = [w for w in enumerate_weyl(n) if coset_map(w) == tau]
    top = max_length_rep(tau)
    print(f"  coset of {tau}: {[m.window() for m in members]}")
    print(f"    longest: {top.window()} (length {length(top)})")
