#!/usr/bin/env python3
"""Character lattices, independence, and Goursat decompositions.

The structure theory behind the shadow group reduces to combinatorics:
independence of sqrt(-m) tuples is an F2 rank computation, minimality of
the norm-one torus product is a statement about sign-stable saturated
sublattices of Z^n, and the inductive step is Goursat's lemma for finite
abelian groups.
"""

from cmcurve import (
    FiniteAbelianGroup,
    SignModule,
    Sublattice,
    goursat,
    independent,
    minimal_subtorus_check,
    stable_saturation,
)

print("== independence of sqrt(-m) tuples ==")
for ms in ([1, 2, 3], [1, 2, 3, 6], [2, 5, 7], [5]):
    print(f"  {ms}: independent = {independent(ms)}")

print("\n== stable saturated sublattices under sign actions ==")
M = SignModule(2, ((-1, 1), (1, -1)))  # independent signs
diag = Sublattice.from_vectors([(1, 1)], 2)
print(f"  independent signs: saturation of the diagonal is {stable_saturation(diag, M).basis}")
M_dep = SignModule(2, ((-1, -1),))  # both coordinates flip together
print(f"  dependent signs: the diagonal stays {stable_saturation(diag, M_dep).basis}")
print(f"  minimality check, independent: {minimal_subtorus_check(M)}")
print(f"  minimality check, dependent:   {minimal_subtorus_check(M_dep)}")

print("\n== Goursat's lemma on a subdirect product ==")
A = B = FiniteAbelianGroup((4,))
data = goursat([((1,), (3,))], A, B)  # the graph of x -> 3x in Z/4 x Z/4
print(f"  kernels: K1 = {sorted(data.k1)}, K2 = {sorted(data.k2)}")
print("  graph of the induced isomorphism:")
for ka, kb in data.table:
    print(f"    {sorted(ka)} -> {sorted(kb)}")

A, B = FiniteAbelianGroup((2,)), FiniteAbelianGroup((3,))
data = goursat([((1,), (0,)), ((0,), (1,))], A, B)
print(f"  full product Z/2 x Z/3: K1 is all of B ({len(data.k1)} elements), table has {len(data.table)} row")
