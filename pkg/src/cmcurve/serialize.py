"""JSON encodings with bit-exact round trips.

Formats:
  adelic matrix  {"r": [[num, den] x4], "delta": int, "s": [int x4], "level": int}
  level matrix   [int x4] together with a level from context
  point          {"tau": {"m": int, "p": [num, den], "q": [num, den]},
                  "a": <adelic matrix>, "level": int}
  shadow         {"support": [int...], "components": [[int x4]...],
                  "branch": +-1, "det": int, "level": int}

Decoder functions validate shapes and reconstruct exact values; canonical
outputs carry "canonical": true.
"""

from __future__ import annotations

from fractions import Fraction

from .adele import AdelicMatrix, UnitPart
from .galois import GaloisShadow
from .matrices import Mat2, ModMat
from .shimura import LevelPoint, QuadPoint


def frac_to_json(x) -> list:
    x = Fraction(x)
    return [x.numerator, x.denominator]


def frac_from_json(v) -> Fraction:
    num, den = v
    return Fraction(num, den)


def mat2_to_json(m: Mat2) -> list:
    return [frac_to_json(x) for x in m.entries]


def mat2_from_json(v) -> Mat2:
    return Mat2(*(frac_from_json(x) for x in v))


def intmat_to_json(m: Mat2) -> list:
    if not m.is_integral():
        raise ValueError("matrix is not integral")
    return [int(x) for x in m.entries]


def modmat_to_json(m: ModMat) -> list:
    return list(m.entries)


def modmat_from_json(v, level: int) -> ModMat:
    return ModMat(*v, level)


def adelic_to_json(g: AdelicMatrix) -> dict:
    return {
        "r": mat2_to_json(g.r),
        "delta": g.u.delta,
        "s": intmat_to_json(g.u.s),
        "level": g.level,
    }


def adelic_from_json(obj) -> AdelicMatrix:
    level = obj["level"]
    r = mat2_from_json(obj["r"])
    s = Mat2(*obj["s"])
    return AdelicMatrix(r, UnitPart(obj["delta"], s, level), level)


def point_to_json(P: LevelPoint, canonical: bool = False) -> dict:
    out = {
        "tau": {
            "m": P.tau.m,
            "p": frac_to_json(P.tau.p),
            "q": frac_to_json(P.tau.q),
        },
        "a": adelic_to_json(P.a),
        "level": P.level,
    }
    if canonical:
        out["canonical"] = True
    return out


def point_from_json(obj) -> LevelPoint:
    tau = QuadPoint(
        obj["tau"]["m"], frac_from_json(obj["tau"]["p"]), frac_from_json(obj["tau"]["q"])
    )
    return LevelPoint(tau, adelic_from_json(obj["a"]), obj["level"])


def shadow_to_json(s: GaloisShadow) -> dict:
    return {
        "support": list(s.support),
        "components": [modmat_to_json(c) for c in s.components],
        "branch": s.branch,
        "det": s.det,
        "level": s.level,
    }


def shadow_from_json(obj) -> GaloisShadow:
    level = obj["level"]
    comps = tuple(modmat_from_json(c, level) for c in obj["components"])
    return GaloisShadow(tuple(obj["support"]), comps, obj["branch"], obj["det"], level)
