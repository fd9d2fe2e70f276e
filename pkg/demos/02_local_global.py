#!/usr/bin/env python3
"""Local-global machinery: Cornacchia, Hilbert symbols, and the certified
rational norm solver.

Solving s^2 + m t^2 = k over the rationals is a local problem: the solver
first checks the Hilbert symbol (-m, k) at every relevant place, and only
then searches for an exact solution.  A "no" always comes with the place
that obstructs it, and the certificate itself can be re-verified.
"""

from fractions import Fraction

from cmcurve import cornacchia, hilbert_symbol, solve_form_rational
from cmcurve.numth import hilbert_places
from cmcurve.qforms import norm_obstruction

print("== integral representations x^2 + m y^2 = k (Cornacchia) ==")
for m, k in ((1, 2), (5, 21), (2, 5), (6, 9991), (23, 9791)):
    sol = cornacchia(m, k)
    if sol:
        x, y = sol
        print(f"  {k} = {x}^2 + {m}*{y}^2")
    else:
        print(f"  {k} is not of the form x^2 + {m} y^2")

print("\n== Hilbert reciprocity: the product over all places is +1 ==")
a, b = Fraction(-6), Fraction(15, 7)
symbols = {str(p): hilbert_symbol(a, b, p) for p in hilbert_places(a, b)}
prod = 1
for s in symbols.values():
    prod *= s
print(f"  (a, b) = ({a}, {b}):  {symbols}   product = {prod}")

print("\n== rational norms with certificates ==")
for m, k in ((2, Fraction(1, 3)), (1, 5), (2, 5), (5, 3)):
    sol = solve_form_rational(m, k)
    if sol:
        s, t = sol
        print(f"  {k} = ({s})^2 + {m}*({t})^2   exactly: {s * s + m * t * t == k}")
    else:
        place = norm_obstruction(m, k)
        check = hilbert_symbol(-m, k, place)
        print(f"  {k} is not a norm from Q(sqrt(-{m})): obstruction at {place} (symbol {check})")
