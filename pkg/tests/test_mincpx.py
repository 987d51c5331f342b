"""Tests for the exact homological oracle: linear algebra over the rationals,
quiver representations, formal complexes, and the sl2 block realization."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tiltc.errors import InternalInvariantError, ValidationError
from tiltc.mincpx import linalg
from tiltc.mincpx.block import (
    SUITE_NAMES,
    TiltingCategory,
    cmin_module,
    load_block,
    parse_block_text,
    tilting_coresolution,
    verify_block,
)
from tiltc.mincpx.complexes import (
    CategoryPresentation,
    FormalComplex,
    cone,
    minimize,
)
from tiltc.mincpx.quiver import (
    AlgebraPresentation,
    ModuleRep,
    cokernel_rep,
    ext_dims,
    hom_basis,
    kernel_rep,
    minimal_projective_resolution,
    projective_cover,
)

F = Fraction


# -- exact linear algebra -------------------------------------------------------------


def _mat(rows):
    return tuple(tuple(F(x) for x in row) for row in rows)


small_dims = st.integers(min_value=1, max_value=4)
small_entry = st.integers(min_value=-4, max_value=4)


@st.composite
def matrices(draw, rows=None, cols=None):
    m = draw(small_dims) if rows is None else rows
    n = draw(small_dims) if cols is None else cols
    return _mat(
        [[draw(small_entry) for _ in range(n)] for _ in range(m)]
    )


class TestLinalg:
    def test_rref_pivots_and_idempotence(self):
        a = _mat([[0, 2, 4], [1, 1, 1], [1, 3, 5]])
        r, piv = linalg.rref(a)
        assert piv == (0, 1)
        assert linalg.rref(r)[0] == r
        assert linalg.rank(a) == 2

    @settings(max_examples=60, deadline=None)
    @given(matrices())
    def test_rank_nullity(self, a):
        n = len(a[0])
        null = linalg.nullspace(a)
        assert linalg.rank(a) + len(null) == n
        for vec in null:
            assert all(x == 0 for x in linalg.apply(a, vec))

    @settings(max_examples=60, deadline=None)
    @given(st.data())
    def test_solve_consistent_systems(self, data):
        a = data.draw(matrices())
        n = len(a[0])
        x = tuple(F(data.draw(small_entry)) for _ in range(n))
        b = linalg.apply(a, x)
        sol = linalg.solve(a, b)
        assert sol is not None
        assert linalg.apply(a, sol) == tuple(b)

    def test_solve_inconsistent_returns_none(self):
        a = _mat([[1, 1], [1, 1]])
        assert linalg.solve(a, (F(0), F(1))) is None

    def test_inverse(self):
        a = _mat([[2, 1], [1, 1]])
        inv = linalg.inverse(a)
        assert linalg.mul(a, inv) == linalg.ident(2)
        assert linalg.mul(inv, a) == linalg.ident(2)
        assert linalg.inverse(_mat([[1, 2], [2, 4]])) is None

    def test_express_in_span(self):
        basis = [(F(1), F(0), F(1)), (F(0), F(1), F(1))]
        assert linalg.express_in_span(basis, (F(2), F(3), F(5))) == (F(2), F(3))
        assert linalg.express_in_span(basis, (F(0), F(0), F(1))) is None

    def test_mul_shaped_degenerate_shapes(self):
        # zero-row matrices forget their column count; the shaped product
        # restores it from the caller
        assert linalg.mul_shaped((), (), 0, 3) == ()
        assert linalg.mul_shaped(linalg.zeros(2, 0), (), 2, 3) == linalg.zeros(2, 3)
        a = _mat([[1, 2]])
        b = _mat([[3], [4]])
        assert linalg.mul_shaped(a, b, 1, 1) == _mat([[11]])


# -- quiver representations -----------------------------------------------------------


@pytest.fixture(scope="module")
def sl2_algebra():
    return AlgebraPresentation(
        ("e", "s"), [("alpha", "e", "s"), ("beta", "s", "e")], ("beta alpha",)
    )


@pytest.fixture(scope="module")
def sl2_modules(sl2_algebra):
    A = sl2_algebra
    one = _mat([[1]])
    return {
        "L_e": A.simple("e"),
        "L_s": A.simple("s"),
        "std_s": ModuleRep(A, {"e": 1, "s": 1}, {"beta": one}),
        "costd_s": ModuleRep(A, {"e": 1, "s": 1}, {"alpha": one}),
        "tilt_s": ModuleRep(
            A, {"e": 2, "s": 1}, {"alpha": _mat([[1, 0]]), "beta": _mat([[0], [1]])}
        ),
    }


class TestQuiver:
    def test_algebra_dimension(self, sl2_algebra):
        assert sl2_algebra.dimension == 5
        assert sl2_algebra.max_path_length == 2

    def test_projectives(self, sl2_algebra):
        P_e, basis_e = sl2_algebra.projective("e")
        assert P_e.dims == {"e": 2, "s": 1}
        assert [b[0] for b in basis_e] == ["e", "s", "e"]
        P_s, basis_s = sl2_algebra.projective("s")
        assert P_s.dims == {"e": 1, "s": 1}

    def test_infinite_dimensional_rejected(self):
        with pytest.raises(ValidationError, match="finite dimensional"):
            AlgebraPresentation(("a",), [("x", "a", "a")], ()).projective("a")

    def test_relation_violation_rejected(self, sl2_algebra):
        bad = ModuleRep(
            sl2_algebra,
            {"e": 1, "s": 1},
            {"alpha": _mat([[1]]), "beta": _mat([[1]])},
        )
        with pytest.raises(ValidationError):
            bad.validate()

    def test_hom_dimensions(self, sl2_modules):
        m = sl2_modules
        assert len(hom_basis(m["std_s"], m["tilt_s"])) == 1
        assert len(hom_basis(m["std_s"], m["L_e"])) == 0
        assert len(hom_basis(m["tilt_s"], m["tilt_s"])) == 2

    def test_minimal_resolutions(self, sl2_modules):
        terms, diffs, aug = minimal_projective_resolution(sl2_modules["L_e"])
        assert [labels for _, labels in terms] == [["e"], ["s"]]
        terms, _, _ = minimal_projective_resolution(sl2_modules["L_s"])
        assert [labels for _, labels in terms] == [["s"], ["e"], ["s"]]
        terms, _, _ = minimal_projective_resolution(sl2_modules["std_s"])
        assert [labels for _, labels in terms] == [["s"]]

    def test_ext_tables(self, sl2_modules):
        m = sl2_modules
        assert ext_dims(m["L_s"], m["L_e"], 3) == [0, 1, 0, 0]
        assert ext_dims(m["L_e"], m["L_s"], 3) == [0, 1, 0, 0]
        assert ext_dims(m["L_e"], m["std_s"], 3) == [1, 1, 0, 0]
        assert ext_dims(m["std_s"], m["costd_s"], 3) == [1, 0, 0, 0]
        assert ext_dims(m["std_s"], m["L_e"], 3) == [0, 0, 0, 0]
        assert ext_dims(m["L_e"], m["costd_s"], 3) == [0, 0, 0, 0]

    def test_projective_cover_of_tilting(self, sl2_modules):
        P, labels, cov = projective_cover(sl2_modules["tilt_s"])
        assert labels == ["e"]
        K, _ = kernel_rep(cov, P, sl2_modules["tilt_s"])
        assert K.is_zero()

    def test_cokernel(self, sl2_modules):
        m = sl2_modules
        f = hom_basis(m["std_s"], m["tilt_s"])[0]
        C, _ = cokernel_rep(f, m["std_s"], m["tilt_s"])
        assert C.dims == {"e": 1, "s": 0}

    def test_kernel_into_zero_module(self, sl2_modules):
        zero = ModuleRep(sl2_modules["L_e"].algebra, {})
        m = sl2_modules["std_s"]
        K, incl = kernel_rep({v: () for v in m.algebra.vertices}, m, zero)
        assert K.dims == m.dims


# -- formal complexes over a toy presented category -----------------------------------


@pytest.fixture(scope="module")
def toy_cat():
    # objects a, b with End(a) = Q, End(b) = Q[eps]/(eps^2),
    # Hom(a, b) = <f>, Hom(b, a) = <g>, g o f = 0, f o g = eps
    labels = ("a", "b")
    hom_dim = {("a", "a"): 1, ("b", "b"): 2, ("a", "b"): 1, ("b", "a"): 1}
    idc = {"a": (1,), "b": (1, 0)}
    compose = {
        ("a", "a", "a"): [[(1,)]],
        ("a", "a", "b"): [[(1,)]],
        ("a", "b", "a"): [[(0,)]],
        ("a", "b", "b"): [[(1,), (0,)]],
        ("b", "a", "a"): [[(1,)]],
        ("b", "a", "b"): [[(0, 1)]],
        ("b", "b", "a"): [[(1,)], [(0,)]],
        ("b", "b", "b"): [[(1, 0), (0, 1)], [(0, 1), (0, 0)]],
    }
    cat = CategoryPresentation(labels, hom_dim, compose, idc)
    cat.validate()
    return cat


class TestCategoryPresentation:
    def test_invertibility(self, toy_cat):
        assert toy_cat.invert("b", (1, 5)) is not None
        assert toy_cat.invert("b", (0, 1)) is None
        psi = toy_cat.invert("b", (2, 3))
        assert toy_cat.comp("b", "b", "b", psi, (2, 3)) == toy_cat.identity["b"]

    def test_rejects_cross_label_isomorphism(self):
        labels = ("a", "b")
        hom = {(x, y): 1 for x in labels for y in labels}
        comp = {
            (x, y, z): [[(1,)]] for x in labels for y in labels for z in labels
        }
        idc = {"a": (1,), "b": (1,)}
        with pytest.raises(ValidationError, match="isomorphism"):
            CategoryPresentation(labels, hom, comp, idc).validate()

    def test_rejects_nonlocal_endomorphisms(self):
        # End(a) = Q x Q (split idempotents) is not local
        hom = {("a", "a"): 2}
        comp = {("a", "a", "a"): [[(1, 0), (0, 0)], [(0, 0), (0, 1)]]}
        with pytest.raises(ValidationError, match="local"):
            CategoryPresentation(("a",), hom, comp, {"a": (1, 1)}).validate()


class TestFormalComplex:
    def test_validate_rejects_nonzero_square(self, toy_cat):
        bad = FormalComplex(
            toy_cat,
            {0: ("b",), 1: ("b",), 2: ("b",)},
            {0: [[(0, 1)]], 1: [[(1, 0)]]},
        )
        with pytest.raises(InternalInvariantError):
            bad.validate()

    def test_minimize_contractible_to_zero(self, toy_cat):
        Y = FormalComplex(toy_cat, {0: ("b",), 1: ("b",)}, {0: [[(1, 0)]]})
        m, _ = minimize(Y)
        assert m.terms == {}

    def test_minimize_keeps_radical_complex(self, toy_cat):
        Z = FormalComplex(
            toy_cat,
            {0: ("b",), 1: ("b",), 2: ("b",)},
            {0: [[(0, 1)]], 1: [[(0, 1)]]},
        )
        m, pi = minimize(Z)
        assert m.label_counts() == {0: {"b": 1}, 1: {"b": 1}, 2: {"b": 1}}
        # projection onto an untouched complex is the identity
        assert pi[0] == (((F(1), F(0)),),)

    def test_minimize_partial_elimination(self, toy_cat):
        W = FormalComplex(
            toy_cat, {0: ("a", "b"), 1: ("b",)}, {0: [[(1,), (1, 0)]]}
        )
        m, pi = minimize(W)
        assert m.label_counts() == {0: {"a": 1}}
        assert pi[0] == (((F(1),), (F(0),)),)
        assert 1 not in pi

    def test_cone_of_identity_is_contractible(self, toy_cat):
        X = FormalComplex(toy_cat, {0: ("a",), 1: ("b",)}, {0: [[(1,)]]})
        ident = {0: [[(1,)]], 1: [[(1, 0)]]}
        C = cone(ident, X, X)
        assert C.term(-1) == ("a",)
        assert C.term(0) == ("b", "a")
        m, _ = minimize(C)
        assert m.terms == {}

    def test_cone_rejects_non_chain_map(self, toy_cat):
        X = FormalComplex(toy_cat, {0: ("a",), 1: ("b",)}, {0: [[(1,)]]})
        broken = {0: [[(1,)]], 1: [[(0, 0)]]}
        with pytest.raises(InternalInvariantError, match="chain map"):
            cone(broken, X, X)

    def test_shift_sign_and_involution(self, toy_cat):
        X = FormalComplex(toy_cat, {0: ("a",), 1: ("b",)}, {0: [[(1,)]]})
        Xs = X.shift(1)
        assert Xs.term(-1) == ("a",)
        assert Xs.diff(-1)[0][0] == (F(-1),)
        Xs.validate()
        back = Xs.shift(-1)
        assert back.terms == X.terms and back.diffs == X.diffs

    def test_scan_orders_agree(self, toy_cat):
        W = FormalComplex(
            toy_cat,
            {0: ("b", "a"), 1: ("b", "b")},
            {0: [[(1, 0), (1,)], [(0, 1), (0,)]]},
        )
        mf, _ = minimize(W, scan="forward")
        mb, _ = minimize(W, scan="backward")
        assert mf.label_counts() == mb.label_counts()

    def test_unknown_scan_rejected(self, toy_cat):
        X = FormalComplex(toy_cat, {0: ("a",)})
        with pytest.raises(ValidationError):
            minimize(X, scan="sideways")


# -- block files and the tilting-complex oracle ---------------------------------------


@pytest.fixture(scope="module")
def sl2_block():
    return load_block("sl2")


@pytest.fixture(scope="module")
def sl2_tcat(sl2_block):
    return TiltingCategory(sl2_block)


class TestBlockParsing:
    def test_load_sl2(self, sl2_block):
        b = sl2_block
        assert b.labels == ("e", "s")
        assert b.system == "A1"
        assert b.words == {"e": "", "s": "1"}
        assert ("e", "s") in b.leq and ("s", "e") not in b.leq
        assert b.module("tilt", "s").dims == {"e": 2, "s": 1}

    def test_missing_block(self):
        with pytest.raises(ValidationError, match="no bundled block"):
            load_block("nope")

    def test_unknown_section(self):
        with pytest.raises(ValidationError, match="unknown section"):
            parse_block_text("[what]\n")

    def test_poset_cycle(self):
        text = (
            "[quiver]\nvertices = a b\n[poset]\na < b\nb < a\n[modules]\n"
        )
        with pytest.raises(ValidationError, match="cycle"):
            parse_block_text(text)

    def test_missing_role(self):
        text = "[quiver]\nvertices = a\n[modules]\nmodule simple_a\ndim a = 1\n"
        with pytest.raises(ValidationError, match="missing module"):
            parse_block_text(text)


class TestTiltingCategory:
    def test_hom_dimensions(self, sl2_tcat):
        hd = sl2_tcat.category.hom_dim
        assert hd[("e", "e")] == 1
        assert hd[("s", "s")] == 2
        assert hd[("e", "s")] == 1
        assert hd[("s", "e")] == 1
        sl2_tcat.category.validate()

    def test_coordinate_roundtrip(self, sl2_tcat):
        for a in ("e", "s"):
            for b in ("e", "s"):
                for k in range(sl2_tcat.category.hom_dim[(a, b)]):
                    coords = tuple(
                        F(1 if i == k else 0)
                        for i in range(sl2_tcat.category.hom_dim[(a, b)])
                    )
                    f = sl2_tcat.realize(a, b, coords)
                    assert sl2_tcat.coordinatize(a, b, f) == coords


class TestCoresolutions:
    def test_projective_e_is_tilting(self, sl2_block, sl2_tcat):
        R, aug = tilting_coresolution(sl2_tcat, sl2_block.module("proj", "e"))
        assert R.terms == {0: ("s",)}
        assert all(
            linalg.rank(aug[v]) == sl2_block.module("proj", "e").dims[v]
            for v in sl2_block.algebra.vertices
        )

    def test_projective_s_two_steps(self, sl2_block, sl2_tcat):
        R, _ = tilting_coresolution(sl2_tcat, sl2_block.module("proj", "s"))
        assert R.terms == {0: ("s",), 1: ("e",)}
        R.validate()


class TestMinimalTiltingComplexes:
    EXPECTED = {
        ("std", "e"): {0: {"e": 1}},
        ("std", "s"): {0: {"s": 1}, 1: {"e": 1}},
        ("simple", "e"): {0: {"e": 1}},
        ("simple", "s"): {-1: {"e": 1}, 0: {"s": 1}, 1: {"e": 1}},
    }

    @pytest.mark.parametrize("role,label", sorted(EXPECTED))
    def test_pinned_complexes(self, sl2_block, sl2_tcat, role, label):
        cpx, kappa = cmin_module(sl2_tcat, sl2_block.module(role, label))
        assert cpx.label_counts() == self.EXPECTED[(role, label)]
        assert cpx.is_minimal()
        assert 0 in kappa

    @pytest.mark.parametrize("role,label", sorted(EXPECTED))
    def test_backward_scan_same_counts(self, sl2_block, sl2_tcat, role, label):
        cpx, _ = cmin_module(
            sl2_tcat, sl2_block.module(role, label), scan="backward"
        )
        assert cpx.label_counts() == self.EXPECTED[(role, label)]

    def test_radical_of_standard(self, sl2_block, sl2_tcat):
        std = sl2_block.module("std", "s")
        simple = sl2_block.module("simple", "s")
        f = hom_basis(std, simple)[0]
        rad, _ = kernel_rep(f, std, simple)
        cpx, _ = cmin_module(sl2_tcat, rad)
        assert cpx.label_counts() == {0: {"e": 1}}

    def test_tilting_module_complex_is_itself(self, sl2_block, sl2_tcat):
        cpx, _ = cmin_module(sl2_tcat, sl2_block.module("tilt", "s"))
        assert cpx.label_counts() == {0: {"s": 1}}


class TestVerifyBlock:
    def test_all_nine_suites(self, sl2_block):
        results = verify_block(sl2_block)
        assert [name for name, _ in results] == list(SUITE_NAMES)
        assert len(results) == 9

    def test_formula_agreement_is_exact(self, sl2_block, sl2_tcat):
        # independent spot check of the suite-9 comparison for the simple
        # object indexed by the reflection
        from tiltc.coxeter import CoxeterSystem
        from tiltc.hecke import HeckeContext
        from tiltc.tilting import CategoryO

        setting = CategoryO(
            HeckeContext(CoxeterSystem.from_type("A1")), I=(), J=()
        )
        table = setting.simple_table((1,))
        cpx, _ = cmin_module(sl2_tcat, sl2_block.module("simple", "s"))
        counts = cpx.label_counts()
        assert table.entry(()).coeff(-1) == counts[-1]["e"]
        assert table.entry(()).coeff(1) == counts[1]["e"]
        assert table.entry((1,)).coeff(0) == counts[0]["s"]
