"""Numerical models of projective schemes.

A model carries a lattice rank, a dimension, a dimension-counting polynomial
on the lattice, and a polyhedral cone of strict inequalities whose interior
stands in for the ample classes.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import EmptyCone, ParseError
from .numeric_polynomials import MultiPoly

DEFAULT_CONE_SEARCH_RADIUS = 8


@dataclass(frozen=True)
class DivisorClass:
    """Integer lattice point representing a numerical divisor class."""

    coords: tuple[int, ...]

    def __post_init__(self):
        assert all(isinstance(c, int) for c in self.coords)

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __add__(self, other):
        return DivisorClass(tuple(a + b for a, b in zip(self.coords, tuple(other))))


def as_coords(vec) -> tuple[int, ...]:
    if isinstance(vec, DivisorClass):
        return vec.coords
    return tuple(int(v) for v in vec)


@dataclass(frozen=True)
class NumericalScheme:
    name: str
    dim: int
    rho: int
    euler: MultiPoly
    cone: tuple[tuple[int, ...], ...]
    interior_point: tuple[int, ...] = field(compare=False)
    note: str = ""

    @staticmethod
    def build(name, dim, rho, euler, cone, note="",
              search_radius=DEFAULT_CONE_SEARCH_RADIUS,
              interior_hint=None) -> "NumericalScheme":
        dim = int(dim)
        rho = int(rho)
        if dim < 0:
            raise ParseError(f"dim must be >= 0, got {dim}")
        if rho < 1:
            raise ParseError(f"rho must be >= 1, got {rho}")
        if euler.nvars != rho:
            raise ParseError(f"euler polynomial has {euler.nvars} variables, expected {rho}")
        if euler.total_degree() > dim:
            raise ParseError(
                f"euler polynomial degree {euler.total_degree()} exceeds dim {dim}")
        rows = tuple(tuple(int(e) for e in row) for row in cone)
        if not rows:
            raise ParseError("ample cone needs at least one functional")
        for row in rows:
            if len(row) != rho:
                raise ParseError(f"cone row {row} has length {len(row)}, expected {rho}")
        if interior_hint is not None and _strictly_positive(rows, tuple(interior_hint)):
            interior = tuple(interior_hint)
        else:
            interior = _find_interior_point(rows, rho, search_radius)
            if interior is None:
                raise EmptyCone(search_radius)
        return NumericalScheme(str(name), dim, rho, euler, rows, interior, str(note))

    def is_ample(self, c) -> bool:
        """Strict positivity of every cone functional at the class c."""
        v = as_coords(c)
        assert len(v) == self.rho
        return all(sum(r * x for r, x in zip(row, v)) > 0 for row in self.cone)

    def euler_at(self, c) -> int:
        return self.euler.evaluate(as_coords(c))

    def to_document(self) -> dict:
        mono = self.euler.to_monomials()
        doc = {
            "name": self.name,
            "dim": self.dim,
            "rho": self.rho,
            "euler": [{"coeff": str(mono[e]), "exponents": list(e)}
                      for e in sorted(mono, key=lambda e: (-sum(e), e))],
            "ample_cone": [list(row) for row in self.cone],
        }
        if self.note:
            doc["note"] = self.note
        return doc


def _strictly_positive(rows, point) -> bool:
    return all(sum(r * x for r, x in zip(row, point)) > 0 for row in rows)


def _find_interior_point(rows, rho, radius):
    for shell in range(1, radius + 1):
        for point in itertools.product(range(-shell, shell + 1), repeat=rho):
            if max(abs(x) for x in point) != shell:
                continue
            if _strictly_positive(rows, point):
                return point
    return None


def load_scheme(document, search_radius=DEFAULT_CONE_SEARCH_RADIUS) -> NumericalScheme:
    """Build a scheme model from a JSON document (dict or JSON text)."""
    doc = _as_dict(document)
    for key in ("name", "dim", "rho", "euler", "ample_cone"):
        if key not in doc:
            raise ParseError(f"missing required member {key!r}")
    try:
        rho = int(doc["rho"])
        monomials = {}
        for term in doc["euler"]:
            expts = tuple(int(e) for e in term["exponents"])
            if len(expts) != rho or any(e < 0 for e in expts):
                raise ParseError(f"bad euler exponents {list(expts)}")
            coeff = Fraction(str(term["coeff"]))
            monomials[expts] = monomials.get(expts, Fraction(0)) + coeff
    except ParseError:
        raise
    except (TypeError, ValueError, KeyError, ZeroDivisionError) as exc:
        raise ParseError(f"malformed scheme document: {exc}") from exc
    euler = MultiPoly.from_monomials(rho, monomials)
    return NumericalScheme.build(
        doc["name"], doc["dim"], rho, euler, doc["ample_cone"],
        note=doc.get("note", ""), search_radius=search_radius)


def _as_dict(document) -> dict:
    if isinstance(document, dict):
        return document
    if isinstance(document, (str, bytes)):
        try:
            doc = json.loads(document)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from exc
        if not isinstance(doc, dict):
            raise ParseError("top-level JSON value must be an object")
        return doc
    raise ParseError(f"cannot read a document from {type(document).__name__}")


def p1_power_scheme(d: int) -> NumericalScheme:
    """Product of d projective lines: dim d, rank d, counting product (n_i + 1)."""
    assert d >= 1
    monomials = {}
    for subset in itertools.product((0, 1), repeat=d):
        monomials[subset] = Fraction(1)
    euler = MultiPoly.from_monomials(d, monomials)
    cone = tuple(tuple(1 if j == i else 0 for j in range(d)) for i in range(d))
    name = {1: "P1", 2: "P1xP1"}.get(d, f"P1^{d}")
    return NumericalScheme.build(name, d, d, euler, cone, interior_hint=(1,) * d)


def _p2_scheme() -> NumericalScheme:
    euler = MultiPoly.from_monomials(
        1, {(2,): Fraction(1, 2), (1,): Fraction(3, 2), (0,): Fraction(1)})
    return NumericalScheme.build("P2", 2, 1, euler, ((1,),), interior_hint=(1,))

def _abelian_surface_scheme() -> NumericalScheme:
    # rank-2 hyperbolic model: counting polynomial a*b, trivial-class count 0
    euler = MultiPoly.from_monomials(2, {(1, 1): Fraction(1)})
    return NumericalScheme.build(
        "AbelianSurfaceHyperbolic", 2, 2, euler, ((1, 0), (0, 1)),
        interior_hint=(1, 1))


_BUILTIN_FACTORIES = {
    "P1": lambda: p1_power_scheme(1),
    "P1xP1": lambda: p1_power_scheme(2),
    "P2": _p2_scheme,
    "AbelianSurfaceHyperbolic": _abelian_surface_scheme,
}


def builtin_scheme(name: str) -> NumericalScheme:
    if name not in _BUILTIN_FACTORIES:
        known = ", ".join(sorted(_BUILTIN_FACTORIES))
        raise ParseError(f"unknown builtin scheme {name!r} (have: {known})")
    return _BUILTIN_FACTORIES[name]()


def builtin_names() -> tuple[str, ...]:
    return tuple(sorted(_BUILTIN_FACTORIES))
