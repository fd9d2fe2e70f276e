#!/usr/bin/env python3
"""The diagonal-unit quotient, the four-point relation, and lifting.

On the quotient by diagonal units, the orbit of a PAIR of CM classes under
the shadow group is cut out by a single four-point relation R: two pairs
are related exactly when one shadow moves the first pair to the second.
For points with rational coordinates the relation degenerates to "equal or
mirrored", and a consistent mapping table can be lifted back to the shadow
that induces it.
"""

from cmcurve import (
    ApproxPoint,
    AdelicMatrix,
    LevelPoint,
    QuadPoint,
    approx_eq,
    canonical_rep,
    lift_automorphism,
    relation_R,
    relation_witness,
)
from cmcurve.approx import shadow_act_approx, spanning_sample
from cmcurve.galois import mirror_shadow, shadow_eq, surjective_common_det
from cmcurve.matrices import diag_mod
from cmcurve.shimura import act_unit

N = 5


def ap(m, p):
    return ApproxPoint(LevelPoint(QuadPoint(m, p, 1), AdelicMatrix.identity(N), N))


print("== the quotient absorbs diagonal twists ==")
P = ap(1, 0)
twisted = ApproxPoint(act_unit(diag_mod(3, N), P.point))
print(f"  [i,1] vs its d_3 twist: point classes differ, approx classes agree: {approx_eq(P, twisted)}")
print(f"  canonical representative has unit determinant {canonical_rep(twisted).a.u.det_mod()}")

print("\n== the four-point relation on mirrored pairs ==")
s1, s2 = ap(1, 1), ap(2, 2)
t1, t2 = ap(1, -1), ap(2, -2)
w = relation_witness(s1, s2, t1, t2)
print(f"  (1+i, 2+sqrt(-2)) -> (-1+i, -2+sqrt(-2)): holds with branch {w.branch}, det {w.lam}")
print(f"  mixed pair (-only second mirrored) holds: {relation_R(s1, s2, s1, t2)}")

print("\n== lifting a mapping table back to a shadow ==")
sigma = surjective_common_det((1, 2), N)[3]
sample = spanning_sample((1, 2), N)
table = [(Q, shadow_act_approx(sigma, Q)) for Q in sample]
lifted = lift_automorphism(table)
print(f"  table of {len(table)} rows lifts to a shadow with det {lifted.det}, branch {lifted.branch}")
print(f"  lifted class equals the original: {shadow_eq(lifted, sigma)}")

print("\n== complex conjugation is visible ==")
from cmcurve.matrices import ModMat

mirror = mirror_shadow((1,), N)
base = ap(1, 0)
print(f"  the mirror fixes the base class [i, 1]: {approx_eq(shadow_act_approx(mirror, base), base)}")
sheared = ApproxPoint(act_unit(ModMat(1, 1, 0, 1, N), base.point))
moved = shadow_act_approx(mirror, sheared)
print(f"  but it moves the sheared class: {not approx_eq(moved, sheared)}")
