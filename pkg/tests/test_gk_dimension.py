import itertools
import warnings

import pytest

from corpus import (
    ample_corpus,
    golden_fibonacci,
    golden_line_and_inverse,
    golden_pair,
    golden_single_line,
    golden_swap,
)
from ncample.bimodule_system import product, rees, veronese
from ncample.errors import NotNCAmple
from ncample.gk_dimension import gk, gk_bounds, hilbert_value


def quiet_gk(sys, bound=8):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return gk(sys, search_bound=bound)


class TestGoldenValues:
    def test_single_line(self):
        cert = quiet_gk(golden_single_line())
        assert cert.gk == 2
        assert cert.bounds == (2, 2)

    def test_pair(self):
        cert = quiet_gk(golden_pair())
        assert cert.gk == 4
        assert cert.bounds == (3, 6)

    def test_swap(self):
        cert = quiet_gk(golden_swap())
        assert cert.gk == 3
        assert cert.veronese_used == (2,)
        assert cert.bounds == (3, 3)
        # lower bound dim + 1 attained
        assert cert.gk == golden_swap().scheme.dim + 1


class TestBoxPolynomial:
    def test_matches_literal_hilbert_sums(self):
        for sys in (golden_single_line(), golden_pair()):
            cert = quiet_gk(sys)
            for n in range(0, 9):
                literal = sum(
                    hilbert_value(sys, pt)
                    for pt in itertools.product(range(1, n + 1), repeat=sys.s))
                assert cert.box_poly.evaluate((n,)) == literal

    def test_swap_box_respects_veronese(self):
        # growth is read off the strided subring for non-trivial orders
        sys = golden_swap()
        cert = quiet_gk(sys)
        strided = veronese(sys, cert.veronese_used)
        for n in range(0, 9):
            literal = sum(hilbert_value(strided, (m,)) for m in range(1, n + 1))
            assert cert.box_poly.evaluate((n,)) == literal


class TestHilbertValue:
    def test_pair_values(self):
        sys = golden_pair()
        for n in itertools.product(range(1, 7), repeat=2):
            assert hilbert_value(sys, n) == (n[0] + 1) * (n[1] + 1)

    def test_swap_values(self):
        sys = golden_swap()
        for n in range(1, 9):
            want = (-(-n // 2) + 1) * (n // 2 + 1)
            assert hilbert_value(sys, (n,)) == want


class TestGrowthArithmetic:
    def test_rees_increment(self):
        for sys in (golden_single_line(), golden_swap()):
            assert quiet_gk(rees(sys)).gk == quiet_gk(sys).gk + 1

    def test_tensor_additivity(self):
        a, b = golden_single_line(), golden_swap()
        assert quiet_gk(product(a, b)).gk == quiet_gk(a).gk + quiet_gk(b).gk

    def test_veronese_invariance(self):
        for sys in (golden_pair(), golden_swap()):
            base = quiet_gk(sys).gk
            for n in itertools.product((1, 2), repeat=sys.s):
                assert quiet_gk(veronese(sys, n)).gk == base

    def test_bounds_hold_on_corpus(self):
        for sys in ample_corpus()[:12]:
            cert = quiet_gk(sys)
            lo, hi = gk_bounds(sys)
            assert lo <= cert.gk <= hi
            assert isinstance(cert.gk, int)


class TestRejection:
    def test_decisive_failures(self):
        with pytest.raises(NotNCAmple) as info:
            quiet_gk(golden_fibonacci())
        assert info.value.verdict_kind == "QuasiUnipotentFail"
        with pytest.raises(NotNCAmple) as info:
            quiet_gk(golden_line_and_inverse())
        assert info.value.verdict_kind == "EventualAmplenessFail"

    def test_certificate_json(self):
        doc = quiet_gk(golden_swap()).to_json()
        assert doc["gk"] == 3
        assert doc["veronese_used"] == [2]
        assert "box_poly" in doc and "hilbert" in doc
        assert "box_poly_monomials" in doc
