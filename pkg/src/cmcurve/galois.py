"""Finite-level shadows of the Galois action on CM points.

A GaloisShadow is a finitely supported tuple of normalizer-shape matrices
mod N with a common determinant and a common branch sign.  It is the level-N
trace of a global automorphism of the CM locus: the branch realizes complex
conjugation, the determinant drives the permutation of components, and the
per-orbit matrices act on coordinates through the orbit base frame.

Shadow equality quotients by the level-N image of the rational stabilizer
with trivial determinant contribution; determinant and branch are genuine
invariants of the action (the component map separates determinants, and no
rational stabilizer element crosses branches), so they are preserved.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .adele import ShapeKind, shape_matrix_mod, shape_test, unit_leftmul
from .errors import (
    LevelObstruction,
    NormObstruction,
    PrecisionObstruction,
    UnsupportedOrbit,
)
from .matrices import Mat2, ModMat, identity_mod
from .numth import crt, factor, is_squarefree, sqrt_mod
from .qforms import norm_obstruction, solve_form_rational
from .shimura import LevelPoint, orbit_rep


@dataclass(frozen=True)
class GaloisShadow:
    support: tuple  # distinct square-free positive integers, ordered
    components: tuple  # one ModMat per supported orbit
    branch: int
    det: int
    level: int

    def __post_init__(self):
        n = self.level
        if self.branch not in (1, -1):
            raise ValueError("branch must be +-1")
        if len(self.support) != len(set(self.support)):
            raise ValueError("support must be distinct")
        if len(self.support) != len(self.components):
            raise ValueError("support/component length mismatch")
        object.__setattr__(self, "support", tuple(self.support))
        object.__setattr__(self, "components", tuple(self.components))
        object.__setattr__(self, "det", self.det % n if n > 1 else 0)
        for m, comp in zip(self.support, self.components):
            if not is_squarefree(m):
                raise ValueError("support entries must be square-free")
            if comp.n != n:
                raise ValueError("component level mismatch")
            ok, _ = shape_test(comp, ShapeKind(m, self.branch))
            if not ok:
                raise ValueError(f"component for m={m} fails the branch {self.branch} shape test")
            if n > 1 and comp.det() != self.det:
                raise ValueError("components must share the common determinant")

    def component_for(self, m: int) -> ModMat:
        try:
            return self.components[self.support.index(m)]
        except ValueError:
            raise UnsupportedOrbit(m) from None


def identity_shadow(support, level: int) -> GaloisShadow:
    return GaloisShadow(
        tuple(support),
        tuple(identity_mod(level) for _ in support),
        1,
        1 % level if level > 1 else 0,
        level,
    )


def mirror_shadow(support, level: int) -> GaloisShadow:
    """The all-coordinates diag(-1, 1) shadow: the complex-conjugation class."""
    return GaloisShadow(
        tuple(support),
        tuple(ModMat(-1, 0, 0, 1, level) for _ in support),
        -1,
        (-1) % level if level > 1 else 0,
        level,
    )


def shadow_mul(s1: GaloisShadow, s2: GaloisShadow) -> GaloisShadow:
    """Componentwise product; determinants multiply, branches multiply."""
    if s1.support != s2.support or s1.level != s2.level:
        raise ValueError("support/level mismatch")
    comps = tuple(a * b for a, b in zip(s1.components, s2.components))
    return GaloisShadow(
        s1.support,
        comps,
        s1.branch * s2.branch,
        s1.det * s2.det % s1.level if s1.level > 1 else 0,
        s1.level,
    )


def shadow_inv(s: GaloisShadow) -> GaloisShadow:
    comps = tuple(c.inv() for c in s.components)
    n = s.level
    return GaloisShadow(
        s.support, comps, s.branch, pow(s.det, -1, n) if n > 1 else 0, n
    )


def shadow_act(sigma: GaloisShadow, P: LevelPoint) -> LevelPoint:
    """[tau, a] -> [tau, r_m a]: the shadow acts through the orbit frame.

    The per-orbit matrix lives over the base point sqrt(-m); for tau = f(
    sqrt(-m)) the acting matrix is the f-conjugate, then commuted past the
    rational part of the coordinate as a unit-side move.
    """
    if sigma.level != P.level:
        raise ValueError("level mismatch")
    m = P.tau.m
    r = sigma.component_for(m)
    n = P.level
    if n == 1:
        return P
    if not P.frame_compatible():
        raise PrecisionObstruction(
            next(
                p
                for p in _frame_primes(P)
                if n % p == 0
            )
        )
    _, frame = orbit_rep(P.tau)
    fmod = frame.mod(n)
    acting = fmod * r * fmod.inv()
    a2 = unit_leftmul(P.a, acting)
    return LevelPoint(P.tau, a2, n)


def _frame_primes(P: LevelPoint):
    out = set()
    for x in (P.tau.p.denominator, P.tau.q.denominator, P.tau.q.numerator):
        out.update(factor(x).primes() if x != 1 else ())
    return sorted(out)


def shadow_eq(s1: GaloisShadow, s2: GaloisShadow) -> bool:
    """Equality of induced actions.

    Branch and determinant must agree (both are observable: the branch on
    mirrored pairs, the determinant on components); the per-orbit ratio must
    then be a branch +1 shape of determinant 1, the level-N image of the
    norm-one rational stabilizer absorbed by point equality.
    """
    if s1.support != s2.support or s1.level != s2.level:
        raise ValueError("support/level mismatch")
    if s1.branch != s2.branch:
        return False
    n = s1.level
    if n == 1:
        return True
    if s1.det != s2.det:
        return False
    for m, c1, c2 in zip(s1.support, s1.components, s2.components):
        ratio = c2 * c1.inv()
        ok, _ = shape_test(ratio, ShapeKind(m, 1))
        if not ok or ratio.det() != 1 % n:
            return False
    return True


# -- determinant equalization ---------------------------------------------------


@dataclass(frozen=True)
class NormalizationCertificate:
    """Per-orbit rational shape adjusters with their exact norms, certifying
    that the adjusted tuple has the stated common unit determinant."""

    adjusters: tuple  # of (m, Mat2, Fraction norm)
    target_det: int
    level: int

    def verify(self) -> bool:
        for m, g0, norm in self.adjusters:
            ok, wit = shape_test(g0, ShapeKind(m, 1))
            if not ok:
                return False
            x, y = wit
            if x * x + m * y * y != norm or g0.det() != norm:
                return False
        return True


def equalize_dets(entries, hints) -> tuple[GaloisShadow, NormalizationCertificate]:
    """Normalize a tuple of per-orbit normalizer matrices to a common unit
    determinant.

    entries: list of (m, ModMat) whose true determinants are hint_m * lambda
    for exact positive rationals hint_m and one common unit lambda; hints is
    the list of hint_m.  Each coordinate is multiplied by a rational shape
    matrix of norm 1/hint_m found by the local-global solver, so the adjusted
    determinants all become lambda exactly.  Raises NormObstruction with the
    failing place when some 1/hint_m is not a norm, PrecisionObstruction when
    an adjuster cannot be reduced at this level.
    """
    if len(entries) != len(hints):
        raise ValueError("entries/hints length mismatch")
    if not entries:
        raise ValueError("entries must be nonempty")
    n = entries[0][1].n
    branches = []
    lams = []
    for (m, mat), hint in zip(entries, hints):
        hint = Fraction(hint)
        if hint <= 0:
            raise ValueError("determinant hints must be positive rationals")
        branch = None
        for b in (1, -1):
            ok, _ = shape_test(mat, ShapeKind(m, b))
            if ok:
                branch = b
                break
        if branch is None:
            raise ValueError(f"matrix for m={m} is not a normalizer shape")
        branches.append(branch)
        if n > 1:
            if gcd(hint.numerator, n) != 1 or gcd(hint.denominator, n) != 1:
                raise PrecisionObstruction(
                    next(p for p in factor(hint.numerator * hint.denominator).primes() if n % p == 0)
                )
            lams.append(mat.det() * pow(hint.numerator, -1, n) * hint.denominator % n)
        else:
            lams.append(0)
    if len(set(branches)) != 1:
        raise ValueError("branch signs must be uniform for a common determinant")
    if len(set(lams)) != 1:
        raise ValueError("hints are inconsistent with a common unit determinant")
    lam = lams[0]
    adjusters = []
    comps = []
    for (m, mat), hint in zip(entries, hints):
        hint = Fraction(hint)
        sol = solve_form_rational(m, 1 / hint)
        if sol is None:
            raise NormObstruction(norm_obstruction(m, 1 / hint))
        s, t = sol
        g0 = Mat2(s, m * t, -t, s)
        adjusters.append((m, g0, 1 / hint))
        comps.append(mat * g0.mod(n) if n > 1 else mat)
    shadow = GaloisShadow(
        tuple(m for m, _ in entries), tuple(comps), branches[0], lam, n
    )
    return shadow, NormalizationCertificate(tuple(adjusters), lam, n)


# -- common-determinant surjectivity ---------------------------------------------


def is_good_level(level: int, support) -> bool:
    prod = 2
    for m in support:
        prod *= m
    return gcd(level, 2 * prod) == 1


def norm_residue_witness(m: int, lam: int, p: int, k: int) -> tuple[int, int]:
    """(x, y) with x^2 + m*y^2 = lam mod p^k, for odd p not dividing m*lam.

    A mod-p solution always exists (the conic has p - chi(-m) points); the
    coordinate with a unit value is lifted through powers of p.
    """
    pk = p**k
    for y0 in range(p):
        t = (lam - m * y0 * y0) % p
        r = sqrt_mod(t, p, 1)
        if r is None:
            continue
        x0 = r.value
        if t % p:  # x-side is a unit: lift x with y frozen
            xk = sqrt_mod((lam - m * y0 * y0) % pk, p, k)
            if xk is not None:
                return xk.value, y0
        if y0 and (lam - x0 * x0) % p:  # y-side unit: lift y with x frozen
            yk = sqrt_mod((lam - x0 * x0) * pow(m, -1, pk) % pk, p, k)
            if yk is not None:
                return x0, yk.value
    raise ArithmeticError(f"no norm residue for lam={lam} mod {p}^{k}")  # pragma: no cover


def surjective_common_det(support, level: int) -> dict:
    """For every unit lambda mod the level, a branch +1 shadow of common
    determinant lambda, built from per-prime-power norm residues and CRT.

    Requires the good-level condition gcd(level, 2 * prod(support)) = 1;
    otherwise LevelObstruction (unit values of the norm form are constrained
    at shared primes and a single matrix witness need not exist).
    """
    support = tuple(support)
    if not is_good_level(level, support):
        raise LevelObstruction(level, support)
    out = {}
    units = [x for x in range(1, level) if gcd(x, level) == 1] or [1]
    pairs = list(factor(level).factors) if level > 1 else []
    for lam in units:
        comps = []
        for m in support:
            residues_x = []
            residues_y = []
            for p, e in pairs:
                x, y = norm_residue_witness(m, lam % p**e, p, e)
                residues_x.append((x, p**e))
                residues_y.append((y, p**e))
            x = crt(residues_x)[0] if residues_x else 0
            y = crt(residues_y)[0] if residues_y else 0
            comps.append(shape_matrix_mod(x, y, m, 1, level))
        out[lam] = GaloisShadow(support, tuple(comps), 1, lam, level)
    return out


# -- structure maps ---------------------------------------------------------------


def branch_map(sigma: GaloisShadow) -> int:
    """The sign character onto the two-element quotient."""
    return sigma.branch


def torus_kernel_test(sigma: GaloisShadow) -> bool:
    """Membership in the kernel of the branch character."""
    return sigma.branch == 1


def component_action(sigma: GaloisShadow) -> int:
    """The unit by which the shadow multiplies every component index."""
    return sigma.det


def shadow_project(sigma: GaloisShadow, new_level: int, new_support=None) -> GaloisShadow:
    """Restriction to a divisor level and/or a sub-support."""
    if sigma.level % new_level:
        raise ValueError("new level must divide the old one")
    support = tuple(new_support) if new_support is not None else sigma.support
    comps = []
    for m in support:
        comps.append(sigma.component_for(m).reduce(new_level))
    return GaloisShadow(
        support,
        tuple(comps),
        sigma.branch,
        sigma.det % new_level if new_level > 1 else 0,
        new_level,
    )
