from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from complement_cert.polyring import Polynomial, VarContext

# seeded, deadline-free profile for the algebraic property suites
settings.register_profile(
    "props",
    max_examples=500,
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
PROPS = settings.get_profile("props")

CTX = VarContext(("x1", "x2", "y", "z"))
SMALL = VarContext(("x1", "y"))

rationals = st.builds(
    Fraction, st.integers(-9, 9), st.integers(1, 6)
)
nonzero_rationals = rationals.filter(bool)


def polys(ctx=CTX, max_terms=4, max_exp=3):
    monomial = st.tuples(*[st.integers(0, max_exp) for _ in ctx.names])
    return st.dictionaries(monomial, rationals, max_size=max_terms).map(
        lambda terms: Polynomial(ctx, terms)
    )


def nonzero_polys(ctx=CTX, max_terms=4, max_exp=3):
    return polys(ctx, max_terms, max_exp).filter(bool)


def points(ctx=CTX):
    return st.fixed_dictionaries({n: rationals for n in ctx.names})


@pytest.fixture
def ctx():
    return CTX


_ACCEPTANCE_LINES = []


def record_acceptance(line: str):
    _ACCEPTANCE_LINES.append(line)


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
