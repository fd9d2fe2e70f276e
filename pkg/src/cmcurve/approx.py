"""The quotient of the level-N model by the diagonal unit action.

An ApproxPoint is a LevelPoint taken up to right multiplication by the
diagonal units d_lambda; the quotient is the finite-level avatar of the
inverse limit of the classical curves.  Canonical representatives pin the
unit-part determinant to 1.  The four-point relation R on CM points encodes
exactly the graphs of the shadow group: two pairs are related iff a single
shadow moves one pair to the other, and lift_automorphism reconstructs the
shadow from a consistent mapping table.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from .adele import ShapeKind, conj_by_dlambda, shape_test, unit_rightmul
from .errors import RViolation
from .galois import GaloisShadow, identity_shadow, shadow_act, shadow_eq
from .matrices import ModMat, diag_mod
from .shimura import (
    ComponentIndex,
    LevelPoint,
    act_unit,
    point_eq,
    rigid_witnesses,
    to_base_frame,
)


@dataclass(frozen=True)
class ApproxPoint:
    """The class of a LevelPoint under the diagonal-unit equivalence."""

    point: LevelPoint

    @property
    def level(self) -> int:
        return self.point.level

    @property
    def orbit(self) -> int:
        return self.point.tau.m


def units_mod(n: int):
    if n == 1:
        return [0]
    return [x for x in range(1, n) if gcd(x, n) == 1]


def approx_eq(P1: ApproxPoint, P2: ApproxPoint) -> bool:
    """Equality in the quotient: some diagonal-unit twist matches the points.

    The integral witnesses do not depend on the twist, so one pass computes
    them and the diagonal search reduces to checking that u2^{-1} M u1 is a
    unit diagonal of the d_lambda form.
    """
    if P1.level != P2.level:
        raise ValueError("level mismatch")
    n = P1.level
    if n == 1:
        return point_eq(P1.point, P2.point)
    u1, u2 = P1.point.unit_matrix(), P2.point.unit_matrix()
    u2_inv = u2.inv()
    for M in rigid_witnesses(P1.point, P2.point):
        X = u2_inv * M.mod(n) * u1
        if X.b == 0 and X.c == 0 and X.d == 1 % n and gcd(X.a, n) == 1:
            return True
    return False


def canonical_rep(P: ApproxPoint) -> LevelPoint:
    """The representative with unit-part determinant 1 mod N: right-multiply
    by the inverse diagonal determinant.  Idempotent, and identical for every
    representative of the class."""
    pt = P.point
    n = pt.level
    if n == 1:
        return pt
    delta = pt.a.u.det_mod()
    if delta == 1:
        return pt
    a2 = unit_rightmul(pt.a, diag_mod(delta, n).inv())
    return LevelPoint(pt.tau, a2, n)


# -- curve components -----------------------------------------------------------


@dataclass(frozen=True)
class CurveComponentLabel:
    """One irreducible component of the correspondence induced by h: the
    graph of the transformation labelled by the component index mu."""

    h: ModMat
    mu: ComponentIndex

    def __post_init__(self):
        if not self.h.is_unit():
            raise ValueError("h must have unit determinant")
        if self.h.n != self.mu.level:
            raise ValueError("level mismatch")


def curve_component(h: ModMat, mu: ComponentIndex) -> CurveComponentLabel:
    return CurveComponentLabel(h, mu)


def eval_curve(label: CurveComponentLabel, P: ApproxPoint) -> ApproxPoint:
    """Apply the component-mu transformation of h: conjugate h by the
    diagonal unit mu and act on the canonical representative."""
    n = label.h.n
    if P.level != n:
        raise ValueError("level mismatch")
    base = canonical_rep(P)
    if n == 1:
        return ApproxPoint(base)
    acting = conj_by_dlambda(label.h, label.mu.mu)
    return ApproxPoint(act_unit(acting, base))


# -- the four-point relation ------------------------------------------------------


@dataclass(frozen=True)
class RelationWitness:
    lam: int
    branch: int
    r1: ModMat
    r2: ModMat


def _canonical_base(P: ApproxPoint) -> LevelPoint:
    return canonical_rep(ApproxPoint(to_base_frame(P.point)))


def pair_witnesses(s: ApproxPoint, t: ApproxPoint) -> dict:
    """All normalizer-shape matrices r with [sqrt(-m), r * a] ~ t, where
    [sqrt(-m), a] is the canonical base presentation of s.

    Keyed by (determinant, branch), values are frozensets.  The finitely many
    integral witnesses of the underlying point equality are composed with
    every diagonal twist, so the set is complete: every valid r arises from
    one such pair.
    """
    if s.level != t.level:
        raise ValueError("level mismatch")
    if s.orbit != t.orbit:
        return {}
    return dict(_pair_witnesses_cached(s, t))


@lru_cache(maxsize=1 << 14)
def _pair_witnesses_cached(s: ApproxPoint, t: ApproxPoint):
    n = s.level
    m = s.orbit
    A = _canonical_base(s)
    B = _canonical_base(t)
    out: dict = {}
    if n == 1:
        if point_eq(A, B):
            out[(0, 1)] = {identity_shadow((m,), 1).components[0]}
        return tuple((k, frozenset(v)) for k, v in out.items())
    ra = A.a.rational_mod(n)
    ra_inv = ra.inv()
    ua, ub = A.unit_matrix(), B.unit_matrix()
    ua_inv = ua.inv()
    for M in rigid_witnesses(A, B):
        m_inv_mod = M.inv().mod(n)
        left = ra * m_inv_mod * ub
        right = ua_inv * ra_inv
        for nu in units_mod(n):
            r = left * diag_mod(nu, n) * right
            for branch in (1, -1):
                ok, _ = shape_test(r, ShapeKind(m, branch))
                if ok:
                    out.setdefault((r.det(), branch), set()).add(r)
                    break
    return tuple((k, frozenset(v)) for k, v in out.items())


def relation_witness(s1, s2, t1, t2):
    """A RelationWitness if the four CM points satisfy the relation, else None.

    The relation holds iff one shadow moves (s1, s2) to (t1, t2): normalizer
    shapes r1, r2 of a common determinant and a common branch with t_i the
    twisted image of s_i; when s1 and s2 share an orbit the witness matrix
    must be common to both rows.
    """
    if s1.orbit != t1.orbit or s2.orbit != t2.orbit:
        return None
    w1 = pair_witnesses(s1, t1)
    w2 = pair_witnesses(s2, t2)
    same_orbit = s1.orbit == s2.orbit
    for key in sorted(set(w1) & set(w2), key=_witness_key):
        lam, branch = key
        if same_orbit:
            common = w1[key] & w2[key]
            if common:
                r = min(common, key=lambda g: g.entries)
                return RelationWitness(lam, branch, r, r)
        else:
            r1 = min(w1[key], key=lambda g: g.entries)
            r2 = min(w2[key], key=lambda g: g.entries)
            return RelationWitness(lam, branch, r1, r2)
    return None


def _witness_key(key):
    lam, branch = key
    return (lam, -branch)


def relation_R(s1, s2, t1, t2) -> bool:
    return relation_witness(s1, s2, t1, t2) is not None


# -- faithfulness and lifting ------------------------------------------------------


def spanning_sample(support, level: int) -> list:
    """CM points spanning each supported orbit with varied unit parts: enough
    to separate every nonidentity shadow class."""
    out = []
    shear = ModMat(1, 1, 0, 1, level)
    matrices = [ModMat(1, 0, 0, 1, level), shear]
    for lam in units_mod(level)[:3]:
        if level > 1 and lam != 1:
            matrices.append(diag_mod(lam, level))
            matrices.append(diag_mod(lam, level) * shear)
    for m in support:
        base = LevelPoint.base(m, level)
        for g in matrices:
            out.append(ApproxPoint(act_unit(g, base)))
    return out


def shadow_act_approx(sigma: GaloisShadow, P: ApproxPoint) -> ApproxPoint:
    return ApproxPoint(shadow_act(sigma, P.point))


def faithfulness_check(sigma: GaloisShadow, sample=None) -> bool:
    """True iff triviality of sigma on the sample implies sigma is the
    identity class.

    A shadow trivial on the sample must have diagonal-shape components (the
    dichotomy: identity or the mirror class), and the mirror class is
    separated by the sheared sample points, so nonidentity shadows never act
    trivially.
    """
    if sample is None:
        sample = spanning_sample(sigma.support, sigma.level)
    trivial = all(approx_eq(shadow_act_approx(sigma, P), P) for P in sample)
    if not trivial:
        return True
    return shadow_eq(sigma, identity_shadow(sigma.support, sigma.level))


def lift_automorphism(table) -> GaloisShadow:
    """Reconstruct a shadow from a mapping table of CM approx points.

    table: list of (s_i, t_i).  Requires the four-point relation against the
    first row (checked; RViolation(i) on failure, 1-based), then solves for
    a single (determinant, branch) and per-orbit witness matrices consistent
    with every row simultaneously.
    """
    if not table:
        raise ValueError("table must be nonempty")
    level = table[0][0].level
    rows = []
    for i, (s, t) in enumerate(table):
        if s.level != level or t.level != level:
            raise ValueError("table levels must agree")
        if s.orbit != t.orbit:
            raise RViolation(i + 1)
        rows.append((s, t))
    s1, t1 = rows[0]
    for i, (s, t) in enumerate(rows[1:], start=2):
        if relation_witness(s1, s, t1, t) is None:
            raise RViolation(i)
    # global solve: intersect witness sets per orbit over all rows
    per_row = [pair_witnesses(s, t) for s, t in rows]
    for idx, w in enumerate(per_row):
        if not w:
            raise RViolation(idx + 1)
    keys = set(per_row[0])
    for w in per_row[1:]:
        keys &= set(w)
    for key in sorted(keys, key=_witness_key):
        lam, branch = key
        orbit_sets: dict = {}
        ok = True
        for (s, _), w in zip(rows, per_row):
            m = s.orbit
            cur = orbit_sets.get(m)
            orbit_sets[m] = w[key] if cur is None else (cur & w[key])
            if not orbit_sets[m]:
                ok = False
                break
        if not ok:
            continue
        support = tuple(sorted(orbit_sets))
        comps = tuple(
            min(orbit_sets[m], key=lambda g: g.entries) for m in support
        )
        sigma = GaloisShadow(support, comps, branch, lam if level > 1 else 0, level)
        if all(
            approx_eq(shadow_act_approx(sigma, s), t) for s, t in rows
        ):
            return sigma
    # no single shadow is consistent with every row: locate a failing prefix
    for i in range(2, len(rows) + 1):
        keys = set(per_row[0])
        for w in per_row[1:i]:
            keys &= set(w)
        feasible = False
        for key in keys:
            orbit_sets = {}
            good = True
            for (s, _), w in zip(rows[:i], per_row[:i]):
                m = s.orbit
                cur = orbit_sets.get(m)
                orbit_sets[m] = w[key] if cur is None else (cur & w[key])
                if not orbit_sets[m]:
                    good = False
                    break
            if good:
                feasible = True
                break
        if not feasible:
            raise RViolation(i)
    raise RViolation(len(rows))  # pragma: no cover - defensive
