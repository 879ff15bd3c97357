"""JSON-friendly encodings.  Every rational becomes a ``"p/q"`` string."""

from __future__ import annotations

import json
from fractions import Fraction

from .exactnum import PolyT, RationalFunctionT, as_fraction
from .polyhedra import PiecewisePolynomial, VPolyhedron, orthant_rays

SCHEMA_VERSION = 1


def q(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def unq(text: str) -> Fraction:
    return as_fraction(text)


def vec(v) -> list[str]:
    return [q(x) for x in v]


def poly_coeffs(p: PolyT) -> list[str]:
    return [q(c) for c in p.coeffs]


def rf_to_json(f: RationalFunctionT) -> dict:
    return {"num": poly_coeffs(f.num), "den": poly_coeffs(f.den)}


def rf_from_json(doc: dict) -> RationalFunctionT:
    return RationalFunctionT(PolyT(unq(c) for c in doc["num"]), PolyT(unq(c) for c in doc["den"]))


def polyhedron_to_json(p: VPolyhedron) -> dict:
    return {
        "ambient_dim": p.ambient_dim,
        "vertices": [vec(v) for v in p.vertices],
        "rays": [vec(r) for r in p.rays],
        "orthant_recession": set(p.rays) == set(orthant_rays(p.ambient_dim)),
    }


def polyhedron_from_json(doc: dict) -> VPolyhedron:
    return VPolyhedron(
        doc["ambient_dim"],
        tuple(tuple(unq(x) for x in v) for v in doc["vertices"]),
        tuple(tuple(unq(x) for x in r) for r in doc["rays"]),
    )


def piecewise_to_json(f: PiecewisePolynomial) -> dict:
    return {
        "breakpoints": vec(f.breakpoints),
        "pieces": [
            {"lo": q(lo), "hi": q(hi), "coefficients": poly_coeffs(p)}
            for lo, hi, p in f.intervals()[:-1]
        ],
        "tail": {"lo": q(f.breakpoints[-1]), "coefficients": poly_coeffs(f.tail)},
        "checks": [
            {"lo": q(c.lo), "hi": None if c.hi is None else q(c.hi),
             "verify_at": q(c.verify_at), "value": q(c.value), "passed": c.passed}
            for c in f.checks
        ],
    }


def piecewise_from_json(doc: dict) -> PiecewisePolynomial:
    pieces = tuple(PolyT(unq(c) for c in p["coefficients"]) for p in doc["pieces"])
    tail = PolyT(unq(c) for c in doc["tail"]["coefficients"])
    return PiecewisePolynomial(tuple(unq(b) for b in doc["breakpoints"]), pieces, tail)


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
