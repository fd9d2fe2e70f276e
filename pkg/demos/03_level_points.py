#!/usr/bin/env python3
"""Level points: exact equality, components, actions, and fixed points.

A point [tau, a] at level N couples a quadratic point with an exact adelic
coordinate (rational part times a congruence unit times an integral part).
Equality of points is decided exactly, and a positive answer comes with the
rational witness that moves one representative to the other.
"""

from cmcurve import (
    AdelicMatrix,
    LevelPoint,
    Mat2,
    ModMat,
    QuadPoint,
    act_rational,
    act_unit,
    component,
    is_fixed,
    orbit_rep,
    point_eq,
    point_eq_witness,
    project,
)
from cmcurve.matrices import diag_mod

N = 5
print(f"== points at level {N} ==")
P = LevelPoint.base(1, N)  # [i, identity]
Q = LevelPoint(QuadPoint(1, 1, 1), AdelicMatrix.from_rational(Mat2(1, 1, 0, 1), N), N)
w = point_eq_witness(P, Q)
print(f"  [i, 1] == [i+1, shear]: {w is not None}")
print(f"  rational witness q = {tuple(str(x) for x in w.q.entries)}")

R = act_unit(diag_mod(2, N), P)
print(f"  [i, 1] == [i, d_2-twist]: {point_eq(P, R)} (component moved to {component(R).mu})")

print("\n== orbit data ==")
tau = QuadPoint(5, 1, 2)
n, frame = orbit_rep(tau)
print(f"  tau = 1 + 2 sqrt(-5) lies over sqrt(-{n}) via frame {tuple(int(x) for x in frame.entries)}")

print("\n== renormalization vs twisting ==")
gamma = Mat2(0, -1, 1, 0)
print(f"  act_rational by S on [i, 1] is the same point: {point_eq(act_rational(gamma, P), P)}")

print("\n== fixed points ==")
rot = ModMat(0, -1, 1, 0, N)
shear = ModMat(1, 1, 0, 1, N)
print(f"  rotation fixes [i, 1]: {is_fixed(rot, P)}")
print(f"  shear fixes [i, 1]:    {is_fixed(shear, P)}")
twist = act_unit(shear, P)
conj = shear.inv() * rot * shear
print(f"  conjugated rotation fixes the sheared point: {is_fixed(conj, act_unit(shear.inv(), P))}")

print("\n== projection to a divisor level ==")
P15 = act_unit(ModMat(2, 3, 1, 2, 15), LevelPoint.base(2, 15))
P5 = project(P15, 5)
print(f"  level 15 point projects to level {P5.level}; components {component(P15).mu} -> {component(P5).mu}")
