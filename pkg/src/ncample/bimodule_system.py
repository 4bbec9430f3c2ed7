"""Commuting systems of twisted divisor classes and their constructors.

A bimodule pairs a divisor class with a unimodular lattice action (the
numerical pullback of the twisting automorphism's inverse).  A system is a
finite ordered family of such pairs over one scheme model, subject to
pairwise commutation of the actions and of the twisted classes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import (ArityError, ClassCommutationFail, MatrixCommutationFail,
                     NonInvertible, ParseError, UnipotentRequired)
from .lattice_algebra import Matrix, geometric_sum, nilpotency_degree
from .numeric_polynomials import MultiPoly
from .scheme_model import (DivisorClass, NumericalScheme, as_coords,
                           load_scheme)


@dataclass(frozen=True)
class Bimodule:
    divisor: DivisorClass
    action: Matrix
    star: bool = False


@dataclass(frozen=True)
class BimoduleSystem:
    scheme: NumericalScheme
    bimodules: tuple[Bimodule, ...]

    def __post_init__(self):
        rho = self.scheme.rho
        if not self.bimodules:
            raise ParseError("a system needs at least one bimodule")
        for i, bim in enumerate(self.bimodules):
            if len(bim.divisor) != rho or bim.action.rho != rho:
                raise ParseError(
                    f"bimodule {i} does not match lattice rank {rho}")
            d = bim.action.det()
            if d not in (1, -1):
                raise NonInvertible(index=i, det=d)
        for i in range(len(self.bimodules)):
            for j in range(i + 1, len(self.bimodules)):
                mi = self.bimodules[i].action
                mj = self.bimodules[j].action
                if mi * mj != mj * mi:
                    raise MatrixCommutationFail(i, j)
                di = self.bimodules[i].divisor.coords
                dj = self.bimodules[j].divisor.coords
                left = tuple(a + b for a, b in zip(di, mi.apply(dj)))
                right = tuple(a + b for a, b in zip(dj, mj.apply(di)))
                if left != right:
                    raise ClassCommutationFail(i, j)

    @property
    def s(self) -> int:
        return len(self.bimodules)

    def divisors(self):
        return [b.divisor for b in self.bimodules]

    def actions(self):
        return [b.action for b in self.bimodules]


def make_system(scheme, pairs, stars=None) -> BimoduleSystem:
    """Assemble a system from (divisor, action) pairs of plain sequences."""
    bims = []
    stars = stars or [False] * len(pairs)
    for (div, mat), star in zip(pairs, stars):
        action = mat if isinstance(mat, Matrix) else Matrix.from_rows(mat)
        bims.append(Bimodule(DivisorClass(as_coords(div)), action, bool(star)))
    return BimoduleSystem(scheme, tuple(bims))


def class_at(sys: BimoduleSystem, n) -> DivisorClass:
    """Divisor class of the n-fold twisted product, exactly.

    The a-th factor contributes the partial orbit sum of its divisor,
    transported by the accumulated actions of the earlier factors.
    """
    nv = tuple(int(x) for x in n)
    assert len(nv) == sys.s and all(x >= 0 for x in nv)
    rho = sys.scheme.rho
    total = (0,) * rho
    prefix = Matrix.identity(rho)
    for bim, n_a in zip(sys.bimodules, nv):
        part = geometric_sum(bim.action, n_a).apply(bim.divisor.coords)
        part = prefix.apply(part)
        total = tuple(t + p for t, p in zip(total, part))
        prefix = prefix * (bim.action ** n_a)
    return DivisorClass(total)


# ---------------------------------------------------------------------------
# symbolic evaluation: matrices over MultiPoly

def _polymat_from_matrix(m: Matrix, nvars: int):
    return [[MultiPoly.constant(nvars, e) for e in row] for row in m.entries]

def _polymat_mul(a, b):
    n = len(a)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = MultiPoly.zero(a[0][0].nvars)
            for k in range(n):
                acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(row)
    return out

def _polymat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]

def _polymat_scale_poly(a, p: MultiPoly):
    return [[x * p for x in row] for row in a]

def _polymat_apply(a, vec):
    polys = [v if isinstance(v, MultiPoly) else MultiPoly.constant(a[0][0].nvars, v)
             for v in vec]
    return [sum((x * p for x, p in zip(row, polys)),
                MultiPoly.zero(a[0][0].nvars)) for row in a]

def _const_apply(m: Matrix, polyvec):
    nvars = polyvec[0].nvars
    return [sum((p.scale(e) for e, p in zip(row, polyvec)),
                MultiPoly.zero(nvars)) for row in m.entries]


def _unipotent_power_poly(u: Matrix, var: int, nvars: int):
    """Entrywise polynomial form of u^q in variable q, for unipotent u."""
    n = u - Matrix.identity(u.rho)
    nu = nilpotency_degree(n) if not n.is_zero() else 0
    acc = _polymat_from_matrix(Matrix.identity(u.rho), nvars)
    npow = Matrix.identity(u.rho)
    for c in range(1, nu + 1):
        npow = npow * n
        if npow.is_zero():
            break
        term = _polymat_scale_poly(_polymat_from_matrix(npow, nvars),
                                   MultiPoly.binom_term(nvars, var, c))
        acc = _polymat_add(acc, term)
    return acc


def _unipotent_orbit_sum_poly(u: Matrix, var: int, nvars: int):
    """Entrywise polynomial form of I + u + ... + u^(q-1) for unipotent u."""
    n = u - Matrix.identity(u.rho)
    acc = _polymat_scale_poly(_polymat_from_matrix(Matrix.identity(u.rho), nvars),
                              MultiPoly.binom_term(nvars, var, 1))
    npow = Matrix.identity(u.rho)
    for d in range(1, u.rho + 1):
        npow = npow * n
        if npow.is_zero():
            break
        term = _polymat_scale_poly(_polymat_from_matrix(npow, nvars),
                                   MultiPoly.binom_term(nvars, var, d + 1))
        acc = _polymat_add(acc, term)
    return acc


def branch_class_polys(sys: BimoduleSystem, residue, periods) -> list[MultiPoly]:
    """Polynomials giving class_at(residue + periods*q) coordinatewise in q.

    Each action raised to its period must be unipotent.  Valid for all
    integer q >= 0; the identity splits every orbit sum at the residue and
    then strides by the period.
    """
    c = tuple(int(x) for x in residue)
    r = tuple(int(x) for x in periods)
    s = sys.s
    assert len(c) == len(r) == s and all(x >= 1 for x in r) and all(x >= 0 for x in c)
    rho = sys.scheme.rho
    result = [MultiPoly.zero(s) for _ in range(rho)]
    prefix_const = Matrix.identity(rho)
    prefix_poly = _polymat_from_matrix(Matrix.identity(rho), s)
    for a, bim in enumerate(sys.bimodules):
        m = bim.action
        u = m ** r[a]
        if not ((u - Matrix.identity(rho)) ** rho).is_zero():
            raise UnipotentRequired(a)
        base = geometric_sum(m, c[a]).apply(bim.divisor.coords)
        stride = geometric_sum(m, r[a]).apply(bim.divisor.coords)
        orbit = _polymat_apply(_unipotent_orbit_sum_poly(u, a, s), stride)
        inner = [MultiPoly.constant(s, b) + p
                 for b, p in zip(base, _const_apply(m ** c[a], orbit))]
        term = _const_apply(prefix_const, _polymat_apply(prefix_poly, inner))
        result = [x + y for x, y in zip(result, term)]
        prefix_const = prefix_const * (m ** c[a])
        prefix_poly = _polymat_mul(prefix_poly, _unipotent_power_poly(u, a, s))
    return result


def symbolic_class(sys: BimoduleSystem) -> list[MultiPoly]:
    """class_at as a vector of polynomials in the s exponents.

    Requires every action to be unipotent; raises UnipotentRequired with the
    first offending index.
    """
    rho = sys.scheme.rho
    for i, bim in enumerate(sys.bimodules):
        if not ((bim.action - Matrix.identity(rho)) ** rho).is_zero():
            raise UnipotentRequired(i)
    return branch_class_polys(sys, (0,) * sys.s, (1,) * sys.s)


# ---------------------------------------------------------------------------
# constructors

def dual(sys: BimoduleSystem) -> BimoduleSystem:
    """Side-swapped system: divisor and action transported through the inverse."""
    bims = []
    for bim in sys.bimodules:
        inv = bim.action.inverse_unimodular()
        bims.append(Bimodule(DivisorClass(inv.apply(bim.divisor.coords)), inv, bim.star))
    return BimoduleSystem(sys.scheme, tuple(bims))


def veronese(sys: BimoduleSystem, n) -> BimoduleSystem:
    """Stride each factor by n_a: orbit-summed divisor, action power."""
    nv = tuple(int(x) for x in n)
    if len(nv) != sys.s or any(x < 1 for x in nv):
        raise ParseError(f"strides must be {sys.s} positive integers, got {nv}")
    bims = []
    for bim, n_a in zip(sys.bimodules, nv):
        div = geometric_sum(bim.action, n_a).apply(bim.divisor.coords)
        bims.append(Bimodule(DivisorClass(div), bim.action ** n_a, bim.star))
    return BimoduleSystem(sys.scheme, tuple(bims))


def combined_single(sys: BimoduleSystem, n) -> BimoduleSystem:
    """Collapse the n-fold product to a single twisted divisor."""
    nv = tuple(int(x) for x in n)
    if len(nv) != sys.s or any(x < 0 for x in nv):
        raise ParseError(
            f"need {sys.s} nonnegative grade entries, got {nv}")
    div = class_at(sys, nv)
    action = Matrix.identity(sys.scheme.rho)
    for bim, n_a in zip(sys.bimodules, nv):
        action = action * (bim.action ** n_a)
    star = any(b.star for b in sys.bimodules)
    return BimoduleSystem(sys.scheme, (Bimodule(div, action, star),))


def rees(sys: BimoduleSystem) -> BimoduleSystem:
    """Duplicate the single bimodule, modeling the one-variable extension."""
    if sys.s != 1:
        raise ArityError(f"rees needs exactly one bimodule, got {sys.s}")
    bim = sys.bimodules[0]
    return BimoduleSystem(sys.scheme, (bim, bim))


def product(sys_x: BimoduleSystem, sys_y: BimoduleSystem) -> BimoduleSystem:
    """Block system on the product model over the direct-sum sublattice."""
    sx, sy = sys_x.scheme, sys_y.scheme
    rho = sx.rho + sy.rho
    euler_terms = {}
    for kx, cx in sx.euler.terms.items():
        for ky, cy in sy.euler.terms.items():
            euler_terms[kx + ky] = cx * cy
    euler = MultiPoly(rho, euler_terms)
    cone = tuple(tuple(row) + (0,) * sy.rho for row in sx.cone) + \
        tuple((0,) * sx.rho + tuple(row) for row in sy.cone)
    note = "lattice is the direct-sum sublattice of the product model"
    scheme = NumericalScheme.build(
        f"{sx.name} x {sy.name}", sx.dim + sy.dim, rho, euler, cone, note=note,
        interior_hint=sx.interior_point + sy.interior_point)
    bims = []
    for bim in sys_x.bimodules:
        div = bim.divisor.coords + (0,) * sy.rho
        action = _block_diag(bim.action, Matrix.identity(sy.rho))
        bims.append(Bimodule(DivisorClass(div), action, bim.star))
    for bim in sys_y.bimodules:
        div = (0,) * sx.rho + bim.divisor.coords
        action = _block_diag(Matrix.identity(sx.rho), bim.action)
        bims.append(Bimodule(DivisorClass(div), action, bim.star))
    return BimoduleSystem(scheme, tuple(bims))


def _block_diag(a: Matrix, b: Matrix) -> Matrix:
    na, nb = a.rho, b.rho
    rows = [tuple(row) + (0,) * nb for row in a.entries]
    rows += [(0,) * na + tuple(row) for row in b.entries]
    return Matrix.from_rows(rows)


# ---------------------------------------------------------------------------
# documents

def load_system(document) -> BimoduleSystem:
    """Read a scheme-plus-bimodules JSON document."""
    doc = _doc_dict(document)
    scheme = load_scheme(doc)
    if "bimodules" not in doc or not doc["bimodules"]:
        raise ParseError("document has no bimodules member")
    bims = []
    try:
        for entry in doc["bimodules"]:
            div = DivisorClass(tuple(int(x) for x in entry["divisor"]))
            action = Matrix.from_rows(entry["matrix"])
            bims.append(Bimodule(div, action, bool(entry.get("star", False))))
    except (TypeError, ValueError, KeyError, AssertionError) as exc:
        raise ParseError(f"malformed bimodule entry: {exc}") from exc
    return BimoduleSystem(scheme, tuple(bims))


def system_to_document(sys: BimoduleSystem) -> dict:
    doc = sys.scheme.to_document()
    doc["bimodules"] = []
    for bim in sys.bimodules:
        entry = {"divisor": list(bim.divisor.coords),
                 "matrix": [list(row) for row in bim.action.entries]}
        if bim.star:
            entry["star"] = True
        doc["bimodules"].append(entry)
    return doc


def _doc_dict(document) -> dict:
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
