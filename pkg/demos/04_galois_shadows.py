#!/usr/bin/env python3
"""Galois shadows: finite traces of the automorphism group of the CM locus.

A shadow is one normalizer-shape matrix mod N per supported orbit, all with
the same determinant and the same branch sign.  The determinant drives the
permutation of components, the branch realizes complex conjugation, and the
branch character sits in an exact sequence with the torus part as kernel.
"""

from cmcurve import (
    LevelPoint,
    branch_map,
    component,
    component_action,
    equalize_dets,
    shadow_act,
    shadow_eq,
    shadow_mul,
    surjective_common_det,
    torus_kernel_test,
)
from cmcurve.galois import identity_shadow, mirror_shadow
from cmcurve.matrices import ModMat, identity_mod

N, SUPPORT = 7, (1, 2)
print(f"== common-determinant surjectivity at level {N}, orbits {SUPPORT} ==")
shadows = surjective_common_det(SUPPORT, N)
for lam, sigma in sorted(shadows.items()):
    comps = [c.entries for c in sigma.components]
    print(f"  det {lam}: components {comps}")

print("\n== the action moves components by the determinant ==")
P = LevelPoint.base(2, N)
for lam in (2, 3):
    Q = shadow_act(shadows[lam], P)
    print(f"  det-{lam} shadow: component {component(P).mu} -> {component(Q).mu}")

print("\n== the branch character and its exact sequence ==")
e = identity_shadow(SUPPORT, N)
w = mirror_shadow(SUPPORT, N)
print(f"  branch(identity) = {branch_map(e)}, branch(mirror) = {branch_map(w)}")
print(f"  mirror^2 is the identity class: {shadow_eq(shadow_mul(w, w), e)}")
print(f"  kernel membership: identity {torus_kernel_test(e)}, mirror {torus_kernel_test(w)}")
print(f"  determinants multiply: {component_action(shadow_mul(shadows[2], shadows[3]))} == 6")

print("\n== determinant equalization with a certificate ==")
r1 = ModMat(1, 2, -2, 1, N)              # a torus matrix of exact determinant 5
r2 = identity_mod(N).scalar_mul(3)        # 3*I, exact determinant 9
sigma, cert = equalize_dets([(1, r1), (2, r2)], [5, 9])
print(f"  adjusted common determinant: {sigma.det}")
for m, g0, norm in cert.adjusters:
    entries = tuple(str(x) for x in g0.entries)
    print(f"  orbit sqrt(-{m}): adjuster {entries} with exact norm {norm}")
print(f"  certificate verifies: {cert.verify()}")
