import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ncample.errors import NonInvertible, NotNilpotent
from ncample.lattice_algebra import (
    Matrix,
    UniPoly,
    char_poly,
    cyclotomic,
    euler_phi,
    geometric_sum,
    is_quasi_unipotent,
    nilpotency_degree,
    quasi_unipotent_candidates,
)

SWAP = Matrix.from_rows([[0, 1], [1, 0]])
FIB = Matrix.from_rows([[2, 1], [1, 1]])
ROT4 = Matrix.from_rows([[0, -1], [1, 0]])
UPPER = Matrix.from_rows([[1, 1], [0, 1]])


def square_matrices(rho, lo=-5, hi=5):
    entry = st.integers(min_value=lo, max_value=hi)
    return st.lists(
        st.lists(entry, min_size=rho, max_size=rho),
        min_size=rho, max_size=rho).map(Matrix.from_rows)


class TestMatrix:
    def test_identity_and_power(self):
        assert SWAP ** 2 == Matrix.identity(2)
        assert SWAP ** 5 == SWAP
        assert FIB ** 0 == Matrix.identity(2)

    def test_apply_column_convention(self):
        # columns of the matrix are images of basis vectors
        m = Matrix.from_rows([[1, 2], [3, 4]])
        assert m.apply((1, 0)) == (1, 3)
        assert m.apply((0, 1)) == (2, 4)

    def test_det(self):
        assert SWAP.det() == -1
        assert FIB.det() == 1
        assert Matrix.from_rows([[2, 0], [0, 2]]).det() == 4
        assert Matrix.from_rows([[1, 2, 3], [4, 5, 6], [7, 8, 10]]).det() == -3

    def test_inverse_unimodular(self):
        for m in (SWAP, FIB, ROT4, UPPER):
            assert m * m.inverse_unimodular() == Matrix.identity(2)
            assert m.inverse_unimodular() * m == Matrix.identity(2)

    def test_inverse_rejects_non_unimodular(self):
        with pytest.raises(NonInvertible):
            Matrix.from_rows([[2, 0], [0, 1]]).inverse_unimodular()
        with pytest.raises(NonInvertible):
            Matrix.from_rows([[1, 0], [0, 0]]).inverse_unimodular()

    @given(square_matrices(2), square_matrices(2))
    def test_product_det_multiplicative(self, a, b):
        assert (a * b).det() == a.det() * b.det()


class TestCharPoly:
    def test_known_values(self):
        # x^2 - 3x + 1 for the hyperbolic matrix, lowest-degree first
        assert char_poly(FIB).coeffs == (1, -3, 1)
        assert char_poly(SWAP).coeffs == (-1, 0, 1)
        assert char_poly(Matrix.identity(2)).coeffs == (1, -2, 1)

    @settings(max_examples=40)
    @given(st.integers(min_value=1, max_value=5).flatmap(square_matrices))
    def test_cayley_hamilton(self, m):
        p = char_poly(m)
        acc = Matrix.zero(m.rho)
        power = Matrix.identity(m.rho)
        for c in p.coeffs:
            acc = acc + power.scale(c)
            power = power * m
        assert acc.is_zero()


class TestCyclotomic:
    def test_phi_table(self):
        assert [euler_phi(d) for d in range(1, 13)] == \
            [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]

    def test_candidate_sets_match_hand_table(self):
        assert quasi_unipotent_candidates(1) == (1, 2)
        assert quasi_unipotent_candidates(2) == (1, 2, 3, 4, 6)
        assert quasi_unipotent_candidates(3) == (1, 2, 3, 4, 6)
        assert quasi_unipotent_candidates(4) == (1, 2, 3, 4, 5, 6, 8, 10, 12)
        assert quasi_unipotent_candidates(5) == (1, 2, 3, 4, 5, 6, 8, 10, 12)
        assert quasi_unipotent_candidates(6) == \
            (1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 14, 18)

    def test_cyclotomic_degrees_and_products(self):
        for d in range(1, 20):
            assert cyclotomic(d).degree() == euler_phi(d)
        # product of Phi_d over divisors d of n is x^n - 1
        for n in (1, 2, 3, 4, 6, 12):
            prod = UniPoly.from_coeffs((1,))
            for d in range(1, n + 1):
                if n % d == 0:
                    prod = prod * cyclotomic(d)
            want = [0] * (n + 1)
            want[0], want[n] = -1, 1
            assert prod.coeffs == tuple(want)


class TestQuasiUnipotent:
    def test_golden_matrices(self):
        assert is_quasi_unipotent(SWAP) == (True, 2)
        assert is_quasi_unipotent(FIB) == (False, None)
        assert is_quasi_unipotent(Matrix.identity(2)) == (True, 1)
        assert is_quasi_unipotent(ROT4) == (True, 4)
        assert is_quasi_unipotent(UPPER) == (True, 1)
        assert is_quasi_unipotent(Matrix.from_rows([[-1]])) == (True, 2)

    def test_order_certificate_is_nilpotent(self):
        # returned order r makes (m^r - 1) nilpotent to the rank
        for m in (SWAP, ROT4, UPPER, Matrix.identity(3)):
            flag, r = is_quasi_unipotent(m)
            assert flag
            n = m ** r - Matrix.identity(m.rho)
            assert (n ** m.rho).is_zero()

    def test_three_cycle(self):
        cyc = Matrix.from_rows([[0, 0, 1], [1, 0, 0], [0, 1, 0]])
        assert is_quasi_unipotent(cyc) == (True, 3)


class TestNilpotency:
    def test_degrees(self):
        z = Matrix.zero(2)
        assert nilpotency_degree(z) == 1
        n = Matrix.from_rows([[0, 1], [0, 0]])
        assert nilpotency_degree(n) == 2
        big = Matrix.from_rows([[0, 1, 0], [0, 0, 1], [0, 0, 0]])
        assert nilpotency_degree(big) == 3

    def test_rejects_non_nilpotent(self):
        with pytest.raises(NotNilpotent):
            nilpotency_degree(SWAP)


class TestGeometricSum:
    def test_small_values(self):
        assert geometric_sum(SWAP, 0).is_zero()
        assert geometric_sum(SWAP, 1) == Matrix.identity(2)
        assert geometric_sum(SWAP, 2) == Matrix.identity(2) + SWAP
        assert geometric_sum(FIB, 3) == \
            Matrix.identity(2) + FIB + FIB * FIB

    @settings(max_examples=40)
    @given(square_matrices(2, -3, 3),
           st.integers(min_value=0, max_value=20),
           st.integers(min_value=0, max_value=20))
    def test_functional_equation(self, m, a, b):
        lhs = geometric_sum(m, a + b)
        rhs = geometric_sum(m, a) + (m ** a) * geometric_sum(m, b)
        assert lhs == rhs
