import json
from fractions import Fraction

import pytest
from hypothesis import given

from complement_cert.family import SYM, FamilyParams, decide_equivalence, make_H, T_CONTEXT
from complement_cert.family import classify_fiber, verify_complement_isomorphism
from complement_cert.polyring import VarContext
from complement_cert.smoothness import family_singularity
from complement_cert.textio import (
    ParseError,
    UnknownVariable,
    context_from_text,
    emit_document,
    emit_report,
    parse,
    parse_ast,
    print_poly,
    print_rf,
)
from complement_cert.ratfunc import RationalFunction
from conftest import CTX, PROPS, polys

C3 = VarContext(("x1", "y", "z"))
C4 = VarContext(("x1", "x2", "y", "z"))


class TestParse:
    def test_S1(self):
        x1, y, z = C3.vars()
        assert parse("x1^2*y + z^2 + x1*z^2", C3) == x1**2 * y + z**2 + x1 * z**2

    def test_rational_constant(self):
        p = parse("3/2", C3)
        assert p.is_constant() and p.constant_value() == Fraction(3, 2)

    def test_H2_double_prime(self):
        F = make_H(FamilyParams(2, 2, 1))
        assert parse("x1^2*x2^2*y + z^2 + x1*x2*(z^2-1)^2 - 1", C4) == F

    def test_whitespace_insignificant(self):
        assert parse(" x1 *y-  2 ", C3) == parse("x1*y-2", C3)

    def test_unary_minus(self):
        x1 = C3.var("x1")
        assert parse("-x1^2", C3) == -(x1**2)
        assert parse("--x1", C3) == x1
        assert parse("2*-x1", C3) == -2 * x1

    @pytest.mark.parametrize(
        "text, pos",
        [
            ("x1 +", 4),
            ("x1 $ y", 3),
            ("2 x1", 2),
            ("(x1 + y", 7),
            ("x1^y", 3),
            ("1/0", 2),
            ("w + 1", 0),
            ("1.5", 1),
        ],
    )
    def test_errors_have_position(self, text, pos):
        with pytest.raises(ParseError) as err:
            parse(text, C3)
        assert err.value.pos == pos
        assert f"position {pos}" in str(err.value)

    def test_variable_not_in_context(self):
        with pytest.raises(UnknownVariable) as err:
            parse("x1 + t", C3)
        assert err.value.pos == 5

    def test_ast(self):
        tree = parse_ast("x1*y + 2")
        assert type(tree).__name__ == "Sum"

    def test_context_from_text(self):
        ctx = context_from_text("x2*y + a", "x1")
        assert ctx.names == ("x1", "x2", "y", "a")


class TestPrint:
    def test_zero(self):
        assert print_poly(C3.zero()) == "0"

    def test_format(self):
        x1, y, z = C3.vars()
        assert print_poly(x1**2 * y + z**2) == "x1^2*y + z^2"
        assert print_poly(-x1 + Fraction(3, 2)) == "-x1 + 3/2"
        assert print_poly(Fraction(-1, 2) * x1 * z) == "-1/2*x1*z"

    def test_print_rf(self):
        x1, y, z = C3.vars()
        assert print_rf(RationalFunction(x1, y + 1)) == "(x1) / (y + 1)"
        assert print_rf(RationalFunction.of(z)) == "z"

    def test_canonicalisation_idempotent(self):
        text = "(x1 + y)^2 - 2*x1*y"
        once = print_poly(parse(text, C3))
        assert once == "x1^2 + y^2"
        assert print_poly(parse(once, C3)) == once


@PROPS
@given(polys())
def test_print_parse_round_trip(p):
    text = print_poly(p)
    assert parse(text, CTX) == p
    assert print_poly(parse(text, CTX)) == text


class TestReports:
    def test_certificate(self):
        doc = json.loads(emit_report(verify_complement_isomorphism(1, SYM, 1, 0)))
        assert doc["claim"] == "lemma-complement"
        assert doc["params"] == {"m": 1, "alpha": SYM, "k": 1, "kprime": 0}
        assert doc["verdict"] == "pass"
        statuses = {c["name"]: c["status"] for c in doc["checks"]}
        for name in ("P∘Φ=Q", "Q∘Ψ=P", "Φ∘Ψ=id", "Ψ∘Φ=id"):
            assert statuses[name] is True

    def test_singular_report(self):
        doc = json.loads(emit_report(family_singularity(FamilyParams(1, 1, 0))))
        assert doc["verdict"] == "singular"
        assert doc["witness"] == [0, 0, 0]

    def test_smooth_report(self):
        doc = json.loads(emit_report(family_singularity(FamilyParams(1, 0, 0))))
        assert doc["verdict"] == "smooth"
        assert doc["certificate"]["target"] == "1"
        assert doc["certificate"]["multipliers"]["y"] == "4*y^2"

    def test_not_equivalent_report(self):
        t = T_CONTEXT.var("t")
        doc = json.loads(emit_report(decide_equivalence(t - 1, 1, (t - 1) ** 2, 1)))
        assert doc["verdict"] == "not-equivalent"
        assert isinstance(doc["reason"], str) and doc["reason"]

    def test_fiber_report(self):
        doc = json.loads(emit_report(classify_fiber(T_CONTEXT.var("t") - 1, 1)))
        assert doc["verdict"] == "V(P0-1)"

    def test_deterministic(self):
        cert = verify_complement_isomorphism(2, 1, 2, 1)
        assert emit_report(cert) == emit_report(cert)
        text = emit_report(cert)
        assert json.dumps(json.loads(text), sort_keys=True, indent=2, ensure_ascii=False) == text

    def test_document(self):
        reports = [
            json.loads(emit_report(family_singularity(FamilyParams(1, 1, 0)))),
            json.loads(emit_report(verify_complement_isomorphism(1, 0, 1, 0))),
        ]
        doc = json.loads(emit_document(reports))
        assert [c["claim"] for c in doc["claims"]] == ["lemma-complement", "singularity"]
        assert doc["verdict"] == "pass" and doc["failed"] == []

    def test_unknown_object(self):
        with pytest.raises(TypeError):
            emit_report(object())
