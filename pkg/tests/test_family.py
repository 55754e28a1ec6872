import random
from fractions import Fraction

import pytest

from complement_cert.family import (
    SYM,
    T_CONTEXT,
    TA_CONTEXT,
    FamilyParams,
    FiberClass,
    Unsupported,
    classify_fiber,
    classify_H,
    make_H,
    make_Phi,
    make_Pq,
    make_Psi,
    parse_alpha,
    quotient_witness,
    random_point,
    shift_power,
    spot_check,
    verify_complement_isomorphism,
)
from complement_cert.ratfunc import is_identity
from complement_cert.textio import parse

t = T_CONTEXT.var("t")


def ctx_of(m, symbolic=False):
    return make_H(FamilyParams(m, 0, SYM if symbolic else 1)).ctx


class TestConstruction:
    def test_P0(self):
        assert make_Pq(1, T_CONTEXT.zero()) == parse("x1^2*y + z^2", ctx_of(1))

    def test_P1(self):
        assert make_Pq(1, T_CONTEXT.one()) == parse("x1^2*y + z^2 + x1", ctx_of(1))

    def test_Pt(self):
        assert make_Pq(2, t) == parse("x1^2*x2^2*y + z^2 + x1*x2*z^2", ctx_of(2))

    @pytest.mark.parametrize(
        "m, alpha, k, text",
        [
            (1, 0, 1, "x1^2*y + z^2 + x1*z^2"),
            (1, 0, 0, "x1^2*y + z^2 + x1"),
            (2, 1, 1, "x1^2*x2^2*y + z^2 + x1*x2*(z^2-1) - 1"),
            (1, SYM, 2, "x1^2*y + z^2 + x1*(z^2-a)^2 - a"),
        ],
    )
    def test_make_H(self, m, alpha, k, text):
        F = make_H(FamilyParams(m, k, alpha))
        assert F == parse(text, F.ctx)

    def test_make_H_is_Pq_minus_alpha(self):
        for alpha in (0, 1, Fraction(-3, 2)):
            for k in range(4):
                F = make_H(FamilyParams(2, k, alpha))
                assert F == make_Pq(2, shift_power(alpha, k)) - alpha

    def test_quotient_witness(self):
        w1 = quotient_witness(FamilyParams(1, 1, SYM), "Q")
        assert w1 == parse("x1*y + 1", w1.ctx)
        w2 = quotient_witness(FamilyParams(2, 1, SYM), "Q")
        assert w2 == parse("x1*x2*y + 1", w2.ctx)

    def test_quotient_witness_bad_side(self):
        with pytest.raises(ValueError):
            quotient_witness(FamilyParams(1, 1, SYM), "R")

    def test_params_validation(self):
        with pytest.raises(ValueError):
            FamilyParams(0, 1, 1)
        with pytest.raises(ValueError):
            FamilyParams(1, -1, 1)

    def test_parse_alpha(self):
        assert parse_alpha("sym") == SYM
        assert parse_alpha("-3/2") == Fraction(-3, 2)
        assert parse_alpha(2) == 2

    def test_k0_maps_are_identity(self):
        for alpha in (SYM, 0, 1):
            p = FamilyParams(2, 0, alpha)
            assert is_identity(make_Phi(p)) and is_identity(make_Psi(p))


class TestComplementIsomorphism:
    def test_symbolic_k1(self):
        cert = verify_complement_isomorphism(1, SYM, 1, 0)
        assert cert.ok, cert.failed()
        names = [n for n, _ in cert.checks]
        for required in ("P∘Φ=Q", "Q∘Ψ=P", "Φ∘Ψ=id", "Ψ∘Φ=id"):
            assert required in names

    def test_m2_alpha1_k2_k1(self):
        cert = verify_complement_isomorphism(2, 1, 2, 1)
        assert cert.ok, cert.failed()
        # independent numeric spot check at 100 random rational points
        rng = random.Random(7)
        for k in (1, 2):
            assert all(s for _, s in spot_check(FamilyParams(2, k, 1), 100, rng))

    def test_trivial(self):
        cert = verify_complement_isomorphism(1, 0, 0, 0)
        assert cert.ok
        assert len(cert.checks) == 4

    def test_corrupted_phi_fails(self):
        params = FamilyParams(1, 2, SYM)
        bad = make_Phi(params, x1_power=1)
        cert = verify_complement_isomorphism(1, SYM, 2, 0, phi=bad)
        assert not cert.ok
        assert "P∘Φ=Q" in cert.failed()

    def test_random_point_avoids_poles(self):
        rng = random.Random(1)
        params = FamilyParams(2, 2, SYM)
        Q = make_H(params.with_k(0))
        for _ in range(50):
            pt = random_point(params, rng)
            assert pt["x1"] != 0 and pt["x2"] != 0
            assert Q.evaluate(pt) != 0
            assert all(abs(Fraction(v).numerator) <= 10 for v in pt.values())


class TestClassification:
    def test_fibers(self):
        assert classify_fiber(t - 1, 1) is FiberClass.V_P0_minus_1
        assert classify_fiber(T_CONTEXT.one(), 1) is FiberClass.V_P1_minus_1
        assert classify_fiber(T_CONTEXT.zero(), 0) is FiberClass.V_P0
        assert classify_fiber(T_CONTEXT.one(), 0) is FiberClass.V_P1

    def test_table(self):
        assert classify_H(FamilyParams(1, 1, 0)) is FiberClass.V_P0
        assert classify_H(FamilyParams(1, 0, 1)) is FiberClass.V_P1_minus_1
        assert classify_H(FamilyParams(1, 0, 0)) is FiberClass.V_P1
        assert classify_H(FamilyParams(1, 2, 1)) is FiberClass.V_P0_minus_1

    def test_symbolic_unsupported(self):
        with pytest.raises(Unsupported):
            classify_H(FamilyParams(1, 1, SYM))

    def test_non_univariate_rejected(self):
        ta = parse("t + a", TA_CONTEXT)
        with pytest.raises(Unsupported):
            classify_fiber(ta, 1)

    @pytest.mark.parametrize("m", [1, 2, 3])
    @pytest.mark.parametrize("alpha", [0, 1, Fraction(-3, 2), 2])
    @pytest.mark.parametrize("k", [0, 1, 2, 3])
    def test_classify_H_agrees_with_fiber(self, m, alpha, k):
        expected = classify_fiber((t - alpha) ** k, alpha)
        assert classify_H(FamilyParams(m, k, alpha)) is expected

    def test_str(self):
        assert str(FiberClass.V_P0_minus_1) == "V(P0-1)"
