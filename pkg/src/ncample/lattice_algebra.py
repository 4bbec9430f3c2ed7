"""Exact integer matrices and the quasi-unipotence decision.

Matrices act on column vectors of lattice coordinates.  All arithmetic is
over the integers; nothing here ever rounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import lcm

from .errors import NonInvertible, NotNilpotent


@dataclass(frozen=True)
class Matrix:
    """Square integer matrix, row-major, acting on column vectors."""

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.entries)
        assert n >= 1, "empty matrix"
        for row in self.entries:
            assert len(row) == n, "matrix must be square"
            assert all(isinstance(e, int) for e in row), "entries must be int"

    @property
    def rho(self) -> int:
        return len(self.entries)

    @staticmethod
    def from_rows(rows) -> "Matrix":
        return Matrix(tuple(tuple(int(e) for e in row) for row in rows))

    @staticmethod
    def identity(rho: int) -> "Matrix":
        return Matrix(tuple(tuple(1 if i == j else 0 for j in range(rho)) for i in range(rho)))

    @staticmethod
    def zero(rho: int) -> "Matrix":
        return Matrix(tuple((0,) * rho for _ in range(rho)))

    def __add__(self, other: "Matrix") -> "Matrix":
        return Matrix(tuple(tuple(a + b for a, b in zip(r1, r2))
                            for r1, r2 in zip(self.entries, other.entries)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        return Matrix(tuple(tuple(a - b for a, b in zip(r1, r2))
                            for r1, r2 in zip(self.entries, other.entries)))

    def __mul__(self, other: "Matrix") -> "Matrix":
        n = self.rho
        cols = tuple(zip(*other.entries))
        return Matrix(tuple(
            tuple(sum(self.entries[i][k] * cols[j][k] for k in range(n)) for j in range(n))
            for i in range(n)))

    def scale(self, c: int) -> "Matrix":
        return Matrix(tuple(tuple(c * e for e in row) for row in self.entries))

    def __pow__(self, n: int) -> "Matrix":
        assert n >= 0, "negative powers go through inverse_unimodular"
        result = Matrix.identity(self.rho)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def apply(self, vec) -> tuple[int, ...]:
        """Multiply self by a column vector."""
        v = tuple(vec)
        assert len(v) == self.rho
        return tuple(sum(row[j] * v[j] for j in range(self.rho)) for row in self.entries)

    def trace(self) -> int:
        return sum(self.entries[i][i] for i in range(self.rho))

    def is_zero(self) -> bool:
        return all(e == 0 for row in self.entries for e in row)

    def det(self) -> int:
        """Fraction-free Bareiss elimination."""
        n = self.rho
        m = [list(row) for row in self.entries]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                for i in range(k + 1, n):
                    if m[i][k] != 0:
                        m[k], m[i] = m[i], m[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            prev = m[k][k]
        return sign * m[n - 1][n - 1]

    def inverse_unimodular(self) -> "Matrix":
        """Exact inverse; only defined when det is +1 or -1."""
        d = self.det()
        if d not in (1, -1):
            raise NonInvertible(det=d)
        n = self.rho
        if n == 1:
            return Matrix(((d,),))
        cof = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                minor = Matrix(tuple(
                    tuple(self.entries[r][c] for c in range(n) if c != j)
                    for r in range(n) if r != i))
                cof[i][j] = (-1) ** (i + j) * minor.det()
        # adjugate is the transposed cofactor matrix; dividing by det = +-1
        # is the same as multiplying by det
        return Matrix(tuple(tuple(d * cof[j][i] for j in range(n)) for i in range(n)))


@dataclass(frozen=True)
class UniPoly:
    """Univariate integer polynomial, coefficients lowest degree first."""

    coeffs: tuple[int, ...]

    @staticmethod
    def from_coeffs(coeffs) -> "UniPoly":
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        return UniPoly(tuple(cs))

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == (1,)

    def __mul__(self, other: "UniPoly") -> "UniPoly":
        if self.is_zero() or other.is_zero():
            return UniPoly(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly.from_coeffs(out)

    def evaluate(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def divide_exact(self, divisor: "UniPoly") -> "UniPoly | None":
        """Quotient by a monic divisor when the division is exact over Z."""
        assert divisor.coeffs and divisor.coeffs[-1] == 1, "divisor must be monic"
        if self.degree() < divisor.degree():
            return None
        rem = list(self.coeffs)
        dd = divisor.degree()
        quot = [0] * (len(rem) - dd)
        for i in range(len(quot) - 1, -1, -1):
            q = rem[i + dd]
            quot[i] = q
            if q:
                for j, b in enumerate(divisor.coeffs):
                    rem[i + j] -= q * b
        if any(rem[:dd]):
            return None
        return UniPoly.from_coeffs(quot)


def char_poly(m: Matrix) -> UniPoly:
    """Characteristic polynomial of m, monic, by the exact trace recursion."""
    n = m.rho
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    mk = Matrix.identity(n)
    for k in range(1, n + 1):
        am = m * mk
        t = am.trace()
        q, r = divmod(-t, k)
        assert r == 0, "trace recursion must divide exactly"
        coeffs[n - k] = q
        if k < n:
            mk = am + Matrix.identity(n).scale(q)
    return UniPoly(tuple(coeffs))


@lru_cache(maxsize=None)
def euler_phi(d: int) -> int:
    assert d >= 1
    result = d
    n = d
    p = 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            result -= result // p
        p += 1
    if n > 1:
        result -= result // n
    return result


@lru_cache(maxsize=None)
def cyclotomic(d: int) -> UniPoly:
    """d-th cyclotomic polynomial via exact division of x^d - 1."""
    poly = UniPoly.from_coeffs([-1] + [0] * (d - 1) + [1])
    for e in range(1, d):
        if d % e == 0:
            poly = poly.divide_exact(cyclotomic(e))
            assert poly is not None
    return poly


def quasi_unipotent_candidates(rho: int) -> tuple[int, ...]:
    """Orders d whose cyclotomic factor could divide a degree-rho polynomial."""
    # euler_phi(d) >= sqrt(d/2), so d <= 2*rho^2 bounds the search
    return tuple(d for d in range(1, 2 * rho * rho + 3) if euler_phi(d) <= rho)


def is_quasi_unipotent(m: Matrix) -> tuple[bool, int | None]:
    """Decide whether every eigenvalue of m is a root of unity.

    Returns (True, r) with r the least power making m unipotent, or
    (False, None).  Requires det(m) in {+1, -1}.
    """
    d = m.det()
    if d not in (1, -1):
        raise NonInvertible(det=d)
    remaining = char_poly(m)
    orders: list[int] = []
    for cand in quasi_unipotent_candidates(m.rho):
        phi = cyclotomic(cand)
        while remaining.degree() >= phi.degree():
            quotient = remaining.divide_exact(phi)
            if quotient is None:
                break
            remaining = quotient
            if cand not in orders:
                orders.append(cand)
        if remaining.degree() == 0:
            break
    if remaining.degree() != 0:
        return False, None
    assert remaining.is_one()
    r = lcm(*orders)
    n = (m ** r) - Matrix.identity(m.rho)
    assert (n ** m.rho).is_zero(), "unipotent part must be nilpotent"
    return True, r


def nilpotency_degree(n: Matrix) -> int:
    """Least k >= 1 with n^k = 0; raises NotNilpotent otherwise."""
    power = n
    for k in range(1, n.rho + 1):
        if power.is_zero():
            return k
        power = power * n
    raise NotNilpotent(f"matrix is not nilpotent within exponent {n.rho}")


def geometric_sum(m: Matrix, n: int) -> Matrix:
    """I + m + m^2 + ... + m^(n-1), by halving."""
    assert n >= 0
    if n == 0:
        return Matrix.zero(m.rho)
    if n == 1:
        return Matrix.identity(m.rho)
    half = n // 2
    s = geometric_sum(m, half)
    s = s + (m ** half) * s
    if n & 1:
        s = s + m ** (n - 1)
    return s
