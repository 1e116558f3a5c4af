import random
from fractions import Fraction as F

import pytest

from conekit.cone import FutureCone, in_core, sample_future_causal
from conekit.errors import DependentBasis, NotFutureCausal, NotLorentzian
from conekit.hypnorm import PHyperbolic, norm_sq_eval
from conekit.lorentz import (
    CausalClass,
    FormKind,
    GramForm,
    LorentzFrame,
    causal_class,
    classify,
    decompose,
    frame_from_unit_vector,
    future_defect,
    future_defect_exact,
    gram_from_cone_basis,
    minkowski_form,
    minkowski_frame,
    wick_inner,
    wick_norm,
    wick_orthogonal_basis,
)
from conekit.numerics import SymMatrix, Vector, exact_det


def vec(*xs):
    return Vector([F(x) for x in xs])


FRAME2 = minkowski_frame(1)


class TestGramFromConeBasis:
    def test_r12_example(self):
        h = PHyperbolic(2, 2)
        basis = [vec(1, 0, 0), vec(1, 1, 0), vec(1, 0, 1)]
        g = gram_from_cone_basis(h, basis)
        rows = [list(r) for r in g.gram.rows]
        assert rows == [[1, 1, 1], [1, 0, 1], [1, 1, 0]]
        assert exact_det(rows) == 1

    def test_r11_example(self):
        g = gram_from_cone_basis(PHyperbolic(2, 1), [vec(1, 0), vec(1, 1)])
        assert [list(r) for r in g.gram.rows] == [[1, 1], [1, 0]]

    def test_one_dimensional(self):
        h = PHyperbolic(2, 0)
        g = gram_from_cone_basis(h, [vec(1)])
        assert [list(r) for r in g.gram.rows] == [[1]]

    def test_dependent_basis(self):
        with pytest.raises(DependentBasis):
            gram_from_cone_basis(PHyperbolic(2, 1), [vec(1, 0), vec(2, 0)])


class TestClassify:
    def test_minkowski(self):
        sig = classify(minkowski_form(2))
        assert sig.kind is FormKind.LORENTZIAN and sig.minus == 2

    def test_cone_basis_gram(self):
        m = SymMatrix([[F(1), F(1), F(1)], [F(1), F(0), F(1)], [F(1), F(1), F(0)]])
        sig = classify(m)
        assert sig.kind is FormKind.LORENTZIAN
        assert (sig.plus, sig.minus, sig.zero) == (1, 2, 0)

    def test_positive_definite(self):
        sig = classify(SymMatrix([[F(1), F(0)], [F(0), F(1)]]))
        assert sig.kind is FormKind.POSITIVE_DEFINITE

    def test_degenerate(self):
        sig = classify(SymMatrix([[F(1), F(0)], [F(0), F(0)]]))
        assert sig.kind is FormKind.DEGENERATE

    def test_zero_diagonal_pivot_rescue(self):
        sig = classify(SymMatrix([[F(0), F(1)], [F(1), F(0)]]))
        assert (sig.plus, sig.minus, sig.zero) == (1, 1, 0)

    def test_float_mode(self):
        sig = classify(SymMatrix([[1.0, 0.0], [0.0, -1.0]]))
        assert sig.kind is FormKind.LORENTZIAN


class TestFrame:
    def test_requires_lorentzian(self):
        with pytest.raises(NotLorentzian):
            LorentzFrame(
                GramForm([vec(1, 0), vec(0, 1)], SymMatrix([[F(1), F(0)], [F(0), F(1)]])),
                vec(1, 0),
            )

    def test_requires_unit_t(self):
        with pytest.raises(NotLorentzian):
            LorentzFrame(minkowski_form(1), vec(2, 0))

    def test_from_unit_vector_rescale(self):
        frame = frame_from_unit_vector(minkowski_form(1), vec(2, 0))
        assert frame.t == vec(1, 0)

    def test_from_unit_vector_nonsquare(self):
        with pytest.raises(NotLorentzian):
            frame_from_unit_vector(minkowski_form(1), vec(2, 1))  # <t,t> = 3


class TestDecompose:
    def test_basic(self):
        d = decompose(FRAME2, vec(3, 4))
        assert d.alpha == 3 and d.w == vec(0, 4)

    def test_t(self):
        d = decompose(FRAME2, vec(1, 0))
        assert d.alpha == 1 and d.w.is_zero()

    def test_orthogonality_and_reconstruction(self):
        v = vec(F(2, 3), F(-7, 5))
        d = decompose(FRAME2, v)
        assert FRAME2.inner(d.w, FRAME2.t) == 0
        assert FRAME2.t.scale(d.alpha) + d.w == v


class TestWick:
    def test_example(self):
        assert wick_inner(FRAME2, vec(3, 4), vec(3, 4)) == 25
        assert wick_norm(FRAME2, vec(3, 4)) == 5.0

    def test_t_unit(self):
        assert wick_inner(FRAME2, vec(1, 0), vec(1, 0)) == 1

    def test_orthogonal(self):
        assert wick_inner(FRAME2, vec(1, 0), vec(0, 1)) == 0

    def test_orthogonal_basis(self):
        frame = minkowski_frame(2)
        b = wick_orthogonal_basis(frame)
        assert len(b) == 2
        assert wick_inner(frame, b[0], b[1]) == 0


class TestCausalClass:
    def test_classes(self):
        assert causal_class(FRAME2, vec(2, 1)) is CausalClass.FUTURE_CAUSAL
        assert causal_class(FRAME2, vec(-2, 1)) is CausalClass.PAST_CAUSAL
        assert causal_class(FRAME2, vec(1, 2)) is CausalClass.SPACELIKE
        assert causal_class(FRAME2, vec(0, 0)) is CausalClass.ZERO


class TestFutureDefect:
    def test_values(self):
        assert future_defect(FRAME2, vec(2, 1)) == pytest.approx(1.0)
        assert future_defect(FRAME2, vec(1, 1)) == pytest.approx(0.0)
        assert future_defect_exact(FRAME2, vec(2, 1)) == 3

    def test_not_future(self):
        with pytest.raises(NotFutureCausal):
            future_defect(FRAME2, vec(1, 2))


class TestRecoveredMinkowski:
    def test_standard_coordinates(self):
        for n in range(1, 6):
            h = PHyperbolic(2, n)
            basis = [Vector.unit(n + 1, 0)]
            for i in range(1, n + 1):
                basis.append(Vector.unit(n + 1, 0) + Vector.unit(n + 1, i))
            g = gram_from_cone_basis(h, basis)
            std = g.in_standard_coordinates().rows
            for i in range(n + 1):
                for j in range(n + 1):
                    want = F(1) if i == j == 0 else (F(-1) if i == j else F(0))
                    assert std[i][j] == want


class TestCoreImpliesPositive:
    def test_sampled(self):
        rng = random.Random(9)
        frame = minkowski_frame(2)
        cone = FutureCone(frame.form, frame.t)
        h = PHyperbolic(2, 2)
        hits = 0
        for _ in range(200):
            v = sample_future_causal(frame, rng)
            if not v.is_zero() and in_core(cone, v):
                assert norm_sq_eval(h, v) > 0
                hits += 1
        assert hits > 0
