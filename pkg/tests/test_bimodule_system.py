import itertools
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import (
    IDENT,
    SWAP,
    duality_corpus,
    golden_pair,
    golden_swap,
    unipotent_corpus,
)
from ncample.bimodule_system import (
    branch_class_polys,
    class_at,
    combined_single,
    dual,
    load_system,
    make_system,
    product,
    rees,
    symbolic_class,
    system_to_document,
    veronese,
)
from ncample.errors import (
    ArityError,
    ClassCommutationFail,
    MatrixCommutationFail,
    NonInvertible,
    ParseError,
    UnipotentRequired,
)
from ncample.lattice_algebra import Matrix
from ncample.scheme_model import builtin_scheme


class TestValidation:
    def test_rank_mismatch(self):
        with pytest.raises(ParseError):
            make_system(builtin_scheme("P1xP1"), [((1,), IDENT[1])])

    def test_non_unimodular(self):
        with pytest.raises(NonInvertible):
            make_system(builtin_scheme("P1xP1"),
                        [((1, 0), Matrix.from_rows([[2, 0], [0, 1]]))])

    def test_matrix_commutation(self):
        rot = Matrix.from_rows([[0, -1], [1, 0]])
        upper = Matrix.from_rows([[1, 1], [0, 1]])
        with pytest.raises(MatrixCommutationFail):
            make_system(builtin_scheme("P1xP1"),
                        [((0, 0), rot), ((0, 0), upper)])

    def test_class_commutation(self):
        with pytest.raises(ClassCommutationFail):
            make_system(builtin_scheme("P1xP1"),
                        [((1, 0), SWAP), ((0, 1), SWAP)])

    def test_empty_system(self):
        with pytest.raises(ParseError):
            make_system(builtin_scheme("P1"), [])


class TestClassAt:
    def test_origin_is_zero(self):
        for sys in (golden_pair(), golden_swap()):
            assert class_at(sys, (0,) * sys.s).coords == (0,) * sys.scheme.rho

    def test_trivial_linearity(self):
        sys = make_system(builtin_scheme("P1"),
                          [((1,), IDENT[1]), ((1,), IDENT[1])])
        for i, j in itertools.product(range(5), repeat=2):
            assert class_at(sys, (i, j)).coords == (i + j,)

    def test_swap_steps(self):
        sys = golden_swap()
        assert class_at(sys, (1,)).coords == (1, 0)
        assert class_at(sys, (2,)).coords == (1, 1)
        assert class_at(sys, (3,)).coords == (2, 1)
        assert class_at(sys, (8,)).coords == (4, 4)

    def test_pair_bilinear(self):
        sys = golden_pair()
        for n in itertools.product(range(6), repeat=2):
            assert class_at(sys, n).coords == n

    def test_last_coordinate_increment_identity(self):
        for sys in duality_corpus()[:25]:
            s = sys.s
            prefix = Matrix.identity(sys.scheme.rho)
            for n in itertools.product(range(3), repeat=s):
                inc = tuple(list(n[:-1]) + [n[-1] + 1])
                delta = tuple(
                    a - b for a, b in zip(class_at(sys, inc).coords,
                                          class_at(sys, n).coords))
                prefix = Matrix.identity(sys.scheme.rho)
                for b in range(s - 1):
                    prefix = prefix * sys.bimodules[b].action ** n[b]
                step = prefix * (sys.bimodules[s - 1].action ** n[s - 1])
                assert delta == step.apply(sys.bimodules[s - 1].divisor.coords)


class TestSymbolicClass:
    def test_agrees_with_direct_on_unipotent_corpus(self):
        for sys in unipotent_corpus()[:10]:
            polys = symbolic_class(sys)
            for n in itertools.product(range(5), repeat=sys.s):
                want = class_at(sys, n).coords
                assert tuple(p.evaluate(n) for p in polys) == want

    def test_rejects_non_unipotent(self):
        with pytest.raises(UnipotentRequired):
            symbolic_class(golden_swap())

    def test_branch_polys_cover_residues(self):
        sys = golden_swap()
        residues = [(0,), (1,)]
        for c in residues:
            polys = branch_class_polys(sys, c, (2,))
            for q in range(4):
                n = (c[0] + 2 * q,)
                want = class_at(sys, n).coords
                assert tuple(p.evaluate((q,)) for p in polys) == want


class TestConstructors:
    def test_dual_involution(self):
        for sys in duality_corpus()[:30]:
            again = dual(dual(sys))
            assert system_to_document(again) == system_to_document(sys)

    def test_dual_of_swap(self):
        d = dual(golden_swap())
        assert d.bimodules[0].divisor.coords == (0, 1)
        assert d.bimodules[0].action == SWAP

    def test_veronese_identity(self):
        for sys in duality_corpus()[:20]:
            v = veronese(sys, (1,) * sys.s)
            assert system_to_document(v) == system_to_document(sys)

    def test_veronese_class_consistency(self):
        for sys in (golden_pair(), golden_swap()):
            strides = tuple(2 for _ in range(sys.s))
            v = veronese(sys, strides)
            for q in itertools.product(range(4), repeat=sys.s):
                scaled = tuple(a * b for a, b in zip(strides, q))
                assert class_at(v, q).coords == class_at(sys, scaled).coords

    def test_veronese_rejects_zero_stride(self):
        with pytest.raises(ParseError):
            veronese(golden_pair(), (0, 1))

    def test_combined_single(self):
        sys = golden_pair()
        for n in ((1, 1), (2, 3)):
            comb = combined_single(sys, n)
            assert comb.s == 1
            for m in range(7):
                scaled = tuple(m * x for x in n)
                assert class_at(comb, (m,)).coords == class_at(sys, scaled).coords

    def test_rees_duplicates(self):
        sys = golden_swap()
        r = rees(sys)
        assert r.s == 2
        assert r.bimodules[0] == r.bimodules[1]
        with pytest.raises(ArityError):
            rees(golden_pair())

    def test_product_euler_grid(self):
        a = golden_pair()
        b = golden_swap()
        prod = product(a, b)
        assert prod.scheme.rho == 4
        for ca in itertools.product(range(5), repeat=2):
            for cb in itertools.product(range(3), repeat=2):
                want = a.scheme.euler_at(ca) * b.scheme.euler_at(cb)
                assert prod.scheme.euler_at(ca + cb) == want

    def test_product_actions_block_diagonal(self):
        prod = product(golden_swap(), golden_swap())
        mats = [b.action for b in prod.bimodules]
        assert len(mats) == 2
        assert mats[0].entries == ((0, 1, 0, 0), (1, 0, 0, 0),
                                   (0, 0, 1, 0), (0, 0, 0, 1))
        assert mats[1].entries == ((1, 0, 0, 0), (0, 1, 0, 0),
                                   (0, 0, 0, 1), (0, 0, 1, 0))

    def test_product_notes_sublattice(self):
        prod = product(golden_pair(), golden_swap())
        assert "sublattice" in prod.scheme.note


class TestDocuments:
    def test_round_trip(self):
        for sys in duality_corpus()[:20]:
            doc = system_to_document(sys)
            again = load_system(json.dumps(doc))
            assert system_to_document(again) == doc

    def test_missing_bimodules(self):
        doc = builtin_scheme("P1").to_document()
        with pytest.raises(ParseError):
            load_system(doc)

    def test_star_flag_round_trip(self):
        sys = make_system(builtin_scheme("P1"), [((1,), IDENT[1])],
                          stars=(True,))
        doc = system_to_document(sys)
        assert doc["bimodules"][0]["star"] is True
        again = load_system(doc)
        assert again.bimodules[0].star is True

    @settings(max_examples=20)
    @given(st.integers(min_value=-3, max_value=3),
           st.integers(min_value=-3, max_value=3))
    def test_load_rejects_bad_matrix_shape(self, a, b):
        doc = builtin_scheme("P1xP1").to_document()
        doc["bimodules"] = [{"divisor": [a, b], "matrix": [[1, 0]]}]
        with pytest.raises(ParseError):
            load_system(doc)
