"""Brute-force section rings on products of projective lines.

Everything here is computed from actual global sections: monomial bases,
pullbacks along factor-permuting Moebius automorphisms, and the twisted
multiplication.  The module exists to cross-validate the numerical layer,
so it shares no formulas with it beyond the lattice shadow it exports.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .bimodule_system import BimoduleSystem, make_system
from .errors import DegreeMismatch, ParseError
from .gk_dimension import hilbert_value
from .lattice_algebra import Matrix
from .scheme_model import p1_power_scheme

Mob = tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]


def _mob(rows) -> Mob:
    m = tuple(tuple(Fraction(str(x)) for x in row) for row in rows)
    assert len(m) == 2 and all(len(r) == 2 for r in m)
    return m


def _mob_mul(a: Mob, b: Mob) -> Mob:
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(2)) for j in range(2))
        for i in range(2))


def _mob_inv(a: Mob) -> Mob:
    det = a[0][0] * a[1][1] - a[0][1] * a[1][0]
    assert det != 0
    return ((a[1][1] / det, -a[0][1] / det), (-a[1][0] / det, a[0][0] / det))


_MOB_ID: Mob = ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)))


def _mob_projectively_equal(a: Mob, b: Mob) -> bool:
    flat_a = [x for row in a for x in row]
    flat_b = [x for row in b for x in row]
    for x, y in zip(flat_a, flat_b):
        if (x == 0) != (y == 0):
            return False
    for x, y in zip(flat_a, flat_b):
        if x != 0:
            ratio = y / x
            return all(p * ratio == q for p, q in zip(flat_a, flat_b))
    return True


@dataclass(frozen=True)
class FactorAutomorphism:
    """Permutation of the line factors followed by a Moebius map on each.

    perm is 0-based internally: factor k of the image point is mobius[k]
    applied to factor perm[k] of the source point.
    """

    perm: tuple[int, ...]
    mobius: tuple[Mob, ...]

    def __post_init__(self):
        d = len(self.perm)
        assert sorted(self.perm) == list(range(d)), "perm must be a permutation"
        assert len(self.mobius) == d
        for g in self.mobius:
            assert g[0][0] * g[1][1] - g[0][1] * g[1][0] != 0, "singular Moebius matrix"

    @property
    def d(self) -> int:
        return len(self.perm)

    @staticmethod
    def identity(d: int) -> "FactorAutomorphism":
        return FactorAutomorphism(tuple(range(d)), (_MOB_ID,) * d)

    @staticmethod
    def build(perm_1based, mobius_rows) -> "FactorAutomorphism":
        perm = tuple(int(p) - 1 for p in perm_1based)
        return FactorAutomorphism(perm, tuple(_mob(rows) for rows in mobius_rows))

    def compose(self, other: "FactorAutomorphism") -> "FactorAutomorphism":
        """self after other (self(other(p)))."""
        assert self.d == other.d
        perm = tuple(other.perm[self.perm[k]] for k in range(self.d))
        mob = tuple(_mob_mul(self.mobius[k], other.mobius[self.perm[k]])
                    for k in range(self.d))
        return FactorAutomorphism(perm, mob)

    def inverse(self) -> "FactorAutomorphism":
        inv_perm = [0] * self.d
        for k, p in enumerate(self.perm):
            inv_perm[p] = k
        mob = tuple(_mob_inv(self.mobius[inv_perm[j]]) for j in range(self.d))
        return FactorAutomorphism(tuple(inv_perm), mob)

    def power(self, n: int) -> "FactorAutomorphism":
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        result = FactorAutomorphism.identity(self.d)
        while n:
            if n & 1:
                result = result.compose(base)
            base = base.compose(base)
            n >>= 1
        return result

    def lattice_matrix(self) -> Matrix:
        """Induced permutation action on multidegrees."""
        rows = []
        for j in range(self.d):
            row = [0] * self.d
            row[self.perm.index(j)] = 1
            rows.append(tuple(row))
        return Matrix.from_rows(rows)

    def commutes_projectively(self, other: "FactorAutomorphism") -> bool:
        a = self.compose(other)
        b = other.compose(self)
        if a.perm != b.perm:
            return False
        return all(_mob_projectively_equal(x, y)
                   for x, y in zip(a.mobius, b.mobius))


def monomial_basis(multidegree) -> tuple[tuple[int, ...], ...]:
    """All exponent keys (e1, f1, ..., ed, fd) with e_k + f_k = a_k."""
    degs = tuple(int(a) for a in multidegree)
    if any(a < 0 for a in degs):
        return ()
    out = []
    for choice in itertools.product(*(range(a + 1) for a in degs)):
        key = []
        for e, a in zip(choice, degs):
            key.extend((e, a - e))
        out.append(tuple(key))
    return tuple(out)


def section_space_dim(multidegree) -> int:
    degs = tuple(int(a) for a in multidegree)
    if any(a < 0 for a in degs):
        return 0
    result = 1
    for a in degs:
        result *= a + 1
    return result


def higher_cohomology_vanishes(multidegree) -> bool:
    """On a product of lines, positive-degree cohomology vanishes exactly
    when every factor degree is at least -1."""
    return all(int(a) >= -1 for a in multidegree)


@dataclass(frozen=True)
class MultiSection:
    """Element of the section space of one multidegree, exact coefficients."""

    multidegree: tuple[int, ...]
    terms: dict[tuple[int, ...], Fraction]

    def __post_init__(self):
        d = len(self.multidegree)
        for key, c in self.terms.items():
            assert len(key) == 2 * d
            assert c != 0
            for k in range(d):
                assert key[2 * k] >= 0 and key[2 * k + 1] >= 0
                assert key[2 * k] + key[2 * k + 1] == self.multidegree[k]

    @staticmethod
    def zero(multidegree) -> "MultiSection":
        return MultiSection(tuple(int(a) for a in multidegree), {})

    @staticmethod
    def monomial(multidegree, key, coeff=1) -> "MultiSection":
        return MultiSection(tuple(int(a) for a in multidegree),
                            {tuple(key): Fraction(coeff)})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "MultiSection") -> "MultiSection":
        assert self.multidegree == other.multidegree
        out = dict(self.terms)
        for k, c in other.terms.items():
            c2 = out.get(k, Fraction(0)) + c
            if c2:
                out[k] = c2
            elif k in out:
                del out[k]
        return MultiSection(self.multidegree, out)

    def scale(self, c) -> "MultiSection":
        c = Fraction(c)
        if not c:
            return MultiSection.zero(self.multidegree)
        return MultiSection(self.multidegree, {k: c * v for k, v in self.terms.items()})

    def __mul__(self, other: "MultiSection") -> "MultiSection":
        deg = tuple(a + b for a, b in zip(self.multidegree, other.multidegree))
        out: dict[tuple[int, ...], Fraction] = {}
        for ka, ca in self.terms.items():
            for kb, cb in other.terms.items():
                key = tuple(x + y for x, y in zip(ka, kb))
                c = out.get(key, Fraction(0)) + ca * cb
                if c:
                    out[key] = c
                elif key in out:
                    del out[key]
        return MultiSection(deg, out)


def pullback(sigma: FactorAutomorphism, section: MultiSection) -> MultiSection:
    """Substitute: the factor-k variables become the chosen Moebius forms in
    the variables of factor perm[k]."""
    d = sigma.d
    assert len(section.multidegree) == d
    new_deg = [0] * d
    for k in range(d):
        new_deg[sigma.perm[k]] += section.multidegree[k]
    result = MultiSection.zero(tuple(new_deg))
    for key, coeff in section.terms.items():
        term = MultiSection(tuple(0 for _ in range(d)),
                            {tuple(0 for _ in range(2 * d)): coeff})
        for k in range(d):
            (alpha, beta), (gamma, delta) = sigma.mobius[k]
            j = sigma.perm[k]
            unit = [0] * d
            unit[j] = 1
            unit = tuple(unit)
            xk = [0] * (2 * d); xk[2 * j] = 1
            yk = [0] * (2 * d); yk[2 * j + 1] = 1
            x_img = MultiSection(unit, {})
            if alpha:
                x_img = x_img + MultiSection(unit, {tuple(xk): alpha})
            if beta:
                x_img = x_img + MultiSection(unit, {tuple(yk): beta})
            y_img = MultiSection(unit, {})
            if gamma:
                y_img = y_img + MultiSection(unit, {tuple(xk): gamma})
            if delta:
                y_img = y_img + MultiSection(unit, {tuple(yk): delta})
            for _ in range(key[2 * k]):
                term = term * x_img
            for _ in range(key[2 * k + 1]):
                term = term * y_img
        result = result + term
    return result


@dataclass(frozen=True)
class RingElement:
    grade: tuple[int, ...]
    section: MultiSection


@dataclass(frozen=True)
class GradedPiece:
    grade: tuple[int, ...]
    multidegree: tuple[int, ...]
    basis: tuple[tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.basis)


class OracleRing:
    """Twisted multi-homogeneous section ring of a product of lines."""

    def __init__(self, d: int, pairs):
        self.d = int(d)
        self.pairs = tuple((tuple(int(a) for a in deg), sigma)
                           for deg, sigma in pairs)
        assert self.pairs, "need at least one twisted bundle"
        for deg, sigma in self.pairs:
            if len(deg) != self.d or sigma.d != self.d:
                raise ParseError("bundle or automorphism does not match d")
        for i in range(len(self.pairs)):
            for j in range(i + 1, len(self.pairs)):
                if not self.pairs[i][1].commutes_projectively(self.pairs[j][1]):
                    raise ParseError(
                        f"automorphisms {i} and {j} do not commute projectively")
        self._shadow = make_system(
            p1_power_scheme(self.d),
            [(deg, sigma.lattice_matrix()) for deg, sigma in self.pairs])
        self._twist_cache: dict[tuple[int, ...], FactorAutomorphism] = {}
        self._validate_dimension_preservation()

    @property
    def s(self) -> int:
        return len(self.pairs)

    def numerical_shadow(self) -> BimoduleSystem:
        return self._shadow

    def _validate_dimension_preservation(self):
        # pullback must carry a basis of each generating degree to an
        # independent family of the permuted degree
        for deg, sigma in self.pairs:
            if any(a < 0 for a in deg):
                continue
            images = [pullback(sigma, MultiSection.monomial(deg, key))
                      for key in monomial_basis(deg)]
            want = sigma.lattice_matrix().apply(deg)
            for img in images:
                assert img.multidegree == tuple(want)
            span = _rank_of_sections(images)
            if span != len(images):
                raise ParseError("pullback is not injective on sections")

    def twist_power(self, n) -> FactorAutomorphism:
        """sigma_1^{n_1} after ... after sigma_s^{n_s}, composed in order."""
        key = tuple(int(x) for x in n)
        if key not in self._twist_cache:
            result = FactorAutomorphism.identity(self.d)
            for (_, sigma), n_a in zip(self.pairs, key):
                result = result.compose(sigma.power(n_a))
            self._twist_cache[key] = result
        return self._twist_cache[key]

    def graded_multidegree(self, n) -> tuple[int, ...]:
        """Multidegree of the expanded product bundle at grade n.

        Built by walking the product left to right: each factor contributes
        its orbit of pullbacks of its own bundle under its own automorphism,
        all twisted by everything to its left.
        """
        nv = tuple(int(x) for x in n)
        assert len(nv) == self.s and all(x >= 0 for x in nv)
        total = [0] * self.d
        prefix = FactorAutomorphism.identity(self.d)
        for (deg, sigma), n_a in zip(self.pairs, nv):
            inner = FactorAutomorphism.identity(self.d)
            for _ in range(n_a):
                step = prefix.compose(inner).lattice_matrix().apply(deg)
                total = [t + x for t, x in zip(total, step)]
                inner = inner.compose(sigma)
            prefix = prefix.compose(sigma.power(n_a))
        return tuple(total)

    def graded_piece(self, n) -> GradedPiece:
        nv = tuple(int(x) for x in n)
        deg = self.graded_multidegree(nv)
        return GradedPiece(nv, deg, monomial_basis(deg))

    def element(self, n, terms) -> RingElement:
        piece = self.graded_piece(n)
        section = MultiSection(piece.multidegree,
                               {tuple(k): Fraction(v) for k, v in terms.items() if v})
        return RingElement(piece.grade, section)

    def random_element(self, n, rng: random.Random) -> RingElement:
        piece = self.graded_piece(n)
        terms = {}
        for key in piece.basis:
            c = Fraction(rng.randint(-3, 3), rng.choice((1, 1, 1, 2)))
            if c:
                terms[key] = c
        return RingElement(piece.grade, MultiSection(piece.multidegree, terms))

    def multiply(self, a: RingElement, b: RingElement) -> RingElement:
        """a * (twist of b by the accumulated automorphism of a's grade)."""
        for x in (a, b):
            want = self.graded_multidegree(x.grade)
            if x.section.multidegree != want:
                raise DegreeMismatch(
                    f"element of grade {x.grade} has multidegree "
                    f"{x.section.multidegree}, expected {want}")
        twisted = pullback(self.twist_power(a.grade), b.section)
        section = a.section * twisted
        grade = tuple(x + y for x, y in zip(a.grade, b.grade))
        assert section.multidegree == self.graded_multidegree(grade), \
            "product left its graded piece"
        return RingElement(grade, section)

    def dual_ring(self) -> "OracleRing":
        """Same sheaves transported through the inverse automorphisms."""
        pairs = []
        for deg, sigma in self.pairs:
            inv = sigma.inverse()
            new_deg = inv.lattice_matrix().apply(deg)
            pairs.append((tuple(new_deg), inv))
        return OracleRing(self.d, pairs)


def _rank_of_sections(sections) -> int:
    keys = sorted({k for s in sections for k in s.terms})
    rows = [[s.terms.get(k, Fraction(0)) for k in keys] for s in sections]
    rank = 0
    for col in range(len(keys)):
        pivot = None
        for r in range(rank, len(rows)):
            if rows[r][col]:
                pivot = r
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        pv = rows[rank][col]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                f = rows[r][col] / pv
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def opposite_check(ring: OracleRing, max_grade_entry: int = 4,
                   samples: int = 200, seed: int = 0) -> bool:
    """Anti-homomorphism test between the inverse-data ring and the ring.

    For a of grade n in the inverse-data ring, tau(a) pulls a back along the
    grade-n power of the original automorphisms; the check is
    tau(a . b) = tau(b) * tau(a) on random homogeneous pairs, exactly.
    """
    dual = ring.dual_ring()
    rng = random.Random(seed)

    def tau(x: RingElement) -> RingElement:
        img = pullback(ring.twist_power(x.grade), x.section)
        want = ring.graded_multidegree(x.grade)
        assert img.multidegree == want, "tau left the target graded piece"
        return RingElement(x.grade, img)

    for _ in range(samples):
        n = tuple(rng.randint(0, max_grade_entry) for _ in range(ring.s))
        m = tuple(rng.randint(0, max_grade_entry) for _ in range(ring.s))
        a = dual.random_element(n, rng)
        b = dual.random_element(m, rng)
        left = tau(dual.multiply(a, b))
        right = ring.multiply(tau(b), tau(a))
        if left.grade != right.grade or left.section != right.section:
            return False
    return True


def _ordering_multidegree(ring: OracleRing, ordering) -> tuple[int, ...]:
    total = [0] * ring.d
    prefix = FactorAutomorphism.identity(ring.d)
    for idx in ordering:
        deg, sigma = ring.pairs[idx]
        step = prefix.lattice_matrix().apply(deg)
        total = [t + x for t, x in zip(total, step)]
        prefix = prefix.compose(sigma)
    return tuple(total)


def bergman_check(ring: OracleRing, triple) -> bool:
    """Coherence hexagon for the canonical reordering identifications.

    Each adjacent transposition is the canonical identification of the two
    expanded bundles; it exists only when their multidegrees agree and the
    accumulated twists match projectively.  Both composites are applied to
    the full monomial basis and compared exactly.
    """
    i, j, k = triple
    assert all(0 <= t < ring.s for t in (i, j, k)), "bundle index out of range"

    def edge(source_ord, target_ord, sections):
        sdeg = _ordering_multidegree(ring, source_ord)
        tdeg = _ordering_multidegree(ring, target_ord)
        if sdeg != tdeg:
            return None
        s_twist = FactorAutomorphism.identity(ring.d)
        for idx in source_ord:
            s_twist = s_twist.compose(ring.pairs[idx][1])
        t_twist = FactorAutomorphism.identity(ring.d)
        for idx in target_ord:
            t_twist = t_twist.compose(ring.pairs[idx][1])
        if s_twist.perm != t_twist.perm:
            return None
        if not all(_mob_projectively_equal(x, y)
                   for x, y in zip(s_twist.mobius, t_twist.mobius)):
            return None
        return sections  # canonical identification on the common degree

    left_path = [(k, j, i), (j, k, i), (j, i, k), (i, j, k)]
    right_path = [(k, j, i), (k, i, j), (i, k, j), (i, j, k)]
    start = _ordering_multidegree(ring, left_path[0])
    basis = [MultiSection.monomial(start, key) for key in monomial_basis(start)]
    lhs = list(basis)
    for a, b in zip(left_path, left_path[1:]):
        lhs = edge(a, b, lhs)
        if lhs is None:
            return False
    rhs = list(basis)
    for a, b in zip(right_path, right_path[1:]):
        rhs = edge(a, b, rhs)
        if rhs is None:
            return False
    return all(x.multidegree == y.multidegree and x.terms == y.terms
               for x, y in zip(lhs, rhs))


@dataclass(frozen=True)
class MatchReport:
    checked: int
    skipped: int
    mismatches: tuple

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def to_json(self) -> dict:
        return {"checked": self.checked, "skipped": self.skipped,
                "mismatches": [list(m) for m in self.mismatches], "ok": self.ok}


def hilbert_match(ring: OracleRing, sys: BimoduleSystem, upto: int) -> MatchReport:
    """Compare oracle graded dimensions with the numerical count on a box.

    Grades whose expanded multidegree has a negative entry are skipped: there
    the section count and the signed count may legitimately differ.
    """
    checked = 0
    skipped = 0
    mismatches = []
    for n in itertools.product(range(1, upto + 1), repeat=ring.s):
        piece = ring.graded_piece(n)
        if any(a < 0 for a in piece.multidegree):
            skipped += 1
            continue
        checked += 1
        expected = hilbert_value(sys, n)
        if piece.dim != expected:
            mismatches.append((n, piece.dim, expected))
    return MatchReport(checked, skipped, tuple(mismatches))


def load_oracle(document) -> OracleRing:
    """Build the ring from a document's oracle member, cross-checking the
    declared bimodule matrices against the induced permutation actions."""
    if not isinstance(document, dict):
        raise ParseError("oracle loader needs a parsed document")
    if "oracle" not in document:
        raise ParseError("document has no oracle member")
    member = document["oracle"]
    try:
        d = int(member["d"])
        autos = [FactorAutomorphism.build(e["perm"], e["mobius"])
                 for e in member["automorphisms"]]
        divisors = [tuple(int(x) for x in e["divisor"])
                    for e in document["bimodules"]]
        matrices = [Matrix.from_rows(e["matrix"]) for e in document["bimodules"]]
    except (KeyError, TypeError, ValueError, AssertionError) as exc:
        raise ParseError(f"malformed oracle member: {exc}") from exc
    if len(autos) != len(divisors):
        raise ParseError("oracle automorphisms and bimodules differ in count")
    for i, (auto, mat) in enumerate(zip(autos, matrices)):
        if auto.lattice_matrix() != mat:
            raise ParseError(
                f"bimodule {i} matrix is not the permutation action of its "
                f"automorphism")
    return OracleRing(d, list(zip(divisors, autos)))
