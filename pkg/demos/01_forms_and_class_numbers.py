#!/usr/bin/env python3
"""Binary quadratic forms: reduction with exact transformation data.

A positive-definite form (A, B, C) pins down a quadratic point of the upper
half-plane (its root); reducing the form is the same thing as moving the
root into the fundamental domain.  Everything below is exact: the witness
matrix really conjugates one form into the other.
"""

from fractions import Fraction

from cmcurve import QuadForm, QuadPoint, automorphs, class_number, form_of, reduce_form
from cmcurve.qforms import reduced_forms

print("== from quadratic points to forms and back ==")
for tau in (QuadPoint(5, 0, 1), QuadPoint(7, Fraction(1, 2), Fraction(1, 2)), QuadPoint(1, Fraction(-2, 5), Fraction(1, 5))):
    f = form_of(tau)
    print(f"  tau = {tau.p} + {tau.q} sqrt(-{tau.m})   ->   form {f.coeffs()}, disc {f.disc}")
    assert f.root() == tau

print("\n== reduction with a transformation witness ==")
f = QuadForm(5, 4, 1)
g, gamma = reduce_form(f)
print(f"  {f.coeffs()} reduces to {g.coeffs()}")
print(f"  witness gamma = {tuple(int(x) for x in gamma.entries)}, det {gamma.det()}")
print(f"  exact identity f o gamma^-1 == g: {f.transform(gamma.inv()) == g}")

print("\n== automorphs: the exact stabilizer inside SL2(Z) ==")
for coeffs in ((1, 0, 1), (1, 1, 1), (1, 0, 5)):
    auts = automorphs(QuadForm(*coeffs))
    print(f"  form {coeffs}: {len(auts)} automorphs")

print("\n== class numbers by enumeration ==")
for disc in (-4, -20, -23, -47, -71):
    forms = reduced_forms(disc)
    print(f"  h({disc}) = {class_number(disc)}: {[f.coeffs() for f in forms]}")
