"""The hypersurfaces ``x1^2...xm^2*y + z^2 + x1...xm*(z^2-alpha)^k = alpha``.

Everything here is built over ``QQ[x1..xm, y, z]``, or over
``QQ[x1..xm, y, z, a]`` when alpha is kept as the indeterminate ``a``.  An
identity proved with ``a`` free specialises to every complex alpha.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Dict, List, Optional, Tuple, Union

from .polyring import (
    NotDivisible,
    Polynomial,
    Rational,
    VarContext,
    as_rational,
    exact_div,
)
from .ratfunc import (
    Leaf,
    Morphism,
    RationalFunction,
    Var,
    compose,
    is_identity,
    pullback,
    rf_eq,
)

SYM = "sym"
Alpha = Union[int, Fraction, str]

T_CONTEXT = VarContext(("t",))
TA_CONTEXT = VarContext(("t", "a"))


class Unsupported(ValueError):
    pass


def parse_alpha(value) -> Alpha:
    if isinstance(value, str) and value.strip() in (SYM, "a"):
        return SYM
    return as_rational(value)


def is_symbolic(alpha: Alpha) -> bool:
    return isinstance(alpha, str)


@dataclass(frozen=True)
class FamilyParams:
    m: int
    k: int
    alpha: Alpha = SYM

    def __post_init__(self):
        if not isinstance(self.m, int) or self.m < 1:
            raise ValueError(f"m must be an integer >= 1, got {self.m!r}")
        if not isinstance(self.k, int) or self.k < 0:
            raise ValueError(f"k must be an integer >= 0, got {self.k!r}")
        object.__setattr__(self, "alpha", parse_alpha(self.alpha))

    @property
    def symbolic(self) -> bool:
        return is_symbolic(self.alpha)

    def with_k(self, k: int) -> "FamilyParams":
        return FamilyParams(self.m, k, self.alpha)


@lru_cache(maxsize=None)
def family_context(m: int, symbolic: bool = False) -> VarContext:
    names = [f"x{i}" for i in range(1, m + 1)] + ["y", "z"]
    if symbolic:
        names.append("a")
    return VarContext(tuple(names))


def context_for(params: FamilyParams) -> VarContext:
    return family_context(params.m, params.symbolic)


def alpha_poly(ctx: VarContext, alpha: Alpha) -> Polynomial:
    return ctx.var("a") if is_symbolic(alpha) else ctx.const(alpha)


def x_product(ctx: VarContext) -> Polynomial:
    out = ctx.one()
    for n in ctx.names:
        if n.startswith("x"):
            out = out * ctx.var(n)
    return out


def make_Pq(m: int, q: Polynomial) -> Polynomial:
    """``x1^2...xm^2*y + z^2 + x1...xm*q(z^2)`` for a univariate ``q(t)``.

    ``q`` may also mention ``a``; the result then lives in the symbolic context.
    """
    if not isinstance(m, int) or m < 1:
        raise ValueError(f"m must be an integer >= 1, got {m!r}")
    extra = set(q.variables()) - {"t", "a"}
    if extra:
        raise ValueError(f"q must be a polynomial in t (and a), found {sorted(extra)}")
    ctx = family_context(m, "a" in q.ctx)
    z = ctx.var("z")
    images = {"t": z * z}
    if "a" in q.ctx:
        images["a"] = ctx.var("a")
    if q.variables():
        qz = q.substitute(images)
    else:
        qz = ctx.const(q.constant_value() if q else 0)
    u = x_product(ctx)
    return u * u * ctx.var("y") + z * z + u * qz


def shift_power(alpha: Alpha, k: int) -> Polynomial:
    """``(t - alpha)^k`` as a polynomial in ``t`` (and ``a`` when symbolic)."""
    if is_symbolic(alpha):
        t, a = TA_CONTEXT.vars()
        return (t - a) ** k
    t = T_CONTEXT.var("t")
    return (t - alpha) ** k


@lru_cache(maxsize=None)
def make_H(params: FamilyParams) -> Polynomial:
    """Defining polynomial ``P_{(t-alpha)^k} - alpha`` of ``H_{alpha,k}``."""
    p = make_Pq(params.m, shift_power(params.alpha, params.k))
    return p - alpha_poly(p.ctx, params.alpha)


def _shifted_square(params: FamilyParams) -> Polynomial:
    ctx = context_for(params)
    z = ctx.var("z")
    return z * z - alpha_poly(ctx, params.alpha)


@lru_cache(maxsize=None)
def quotient_witness(params: FamilyParams, side: str) -> Polynomial:
    """Exact quotient ``(F^k - (z^2-alpha)^k) / (x1...xm)``.

    ``side="Q"`` uses ``F = H_{alpha,0}``, ``side="P"`` uses ``F = H_{alpha,k}``.
    A :class:`NotDivisible` here would mean the maps are not regular.
    """
    if params.k < 1:
        raise ValueError("quotient witness requires k >= 1")
    if side == "Q":
        f = make_H(params.with_k(0))
    elif side == "P":
        f = make_H(params)
    else:
        raise ValueError(f"side must be 'P' or 'Q', got {side!r}")
    ctx = context_for(params)
    k = params.k
    return exact_div(f**k - _shifted_square(params) ** k, x_product(ctx))


def make_Phi(params: FamilyParams, x1_power: Optional[int] = None) -> Morphism:
    """Complement map ``C^{m+2} \\ H_{alpha,0} -> C^{m+2} \\ H_{alpha,k}``.

    ``(x1/Q^k, x2..xm, y*Q^2k + Q^k*(Q^k - (z^2-alpha)^k)/(x1...xm), z)``.
    ``x1_power`` overrides the exponent of ``Q`` in the first coordinate and
    exists only to build deliberately broken maps.
    """
    ctx = context_for(params)
    k = params.k
    if k == 0 and x1_power is None:
        return Morphism(ctx, ctx, tuple(Var(n) for n in ctx.names), "Φ0")
    Q = Leaf(make_H(params.with_k(0)))
    u = Leaf(x_product(ctx))
    s = Leaf(_shifted_square(params))
    # the quotient is asserted exact: it evaluates to quotient_witness(params, "Q")
    w = (Q**k - s**k).exact_over(u)
    exprs = []
    for n in ctx.names:
        if n == "x1":
            exprs.append(Var("x1") / Q ** (k if x1_power is None else x1_power))
        elif n == "y":
            exprs.append(Var("y") * Q ** (2 * k) + Q**k * w)
        else:
            exprs.append(Var(n))
    return Morphism(ctx, ctx, tuple(exprs), f"Φ{k}")


def make_Psi(params: FamilyParams) -> Morphism:
    """Inverse map ``(P^k*x1, x2..xm, (y - (P^k - (z^2-alpha)^k)/(x1...xm)) / P^2k, z)``."""
    ctx = context_for(params)
    k = params.k
    if k == 0:
        return Morphism(ctx, ctx, tuple(Var(n) for n in ctx.names), "Ψ0")
    P = Leaf(make_H(params))
    u = Leaf(x_product(ctx))
    s = Leaf(_shifted_square(params))
    w = (P**k - s**k).exact_over(u)
    exprs = []
    for n in ctx.names:
        if n == "x1":
            exprs.append(P**k * Var("x1"))
        elif n == "y":
            exprs.append((Var("y") - w) / P ** (2 * k))
        else:
            exprs.append(Var(n))
    return Morphism(ctx, ctx, tuple(exprs), f"Ψ{k}")


# -- complement certificate ----------------------------------------------


@dataclass
class ComplementCertificate:
    m: int
    alpha: Alpha
    k: int
    kprime: int
    checks: List[Tuple[str, bool]] = field(default_factory=list)
    claim: str = "lemma-complement"

    @property
    def ok(self) -> bool:
        return all(status for _, status in self.checks)

    def failed(self) -> List[str]:
        return [name for name, status in self.checks if not status]


def _divisibility_checks(params: FamilyParams, tag: str) -> List[Tuple[str, bool]]:
    out = []
    for side in ("Q", "P"):
        name = f"{side}{tag}^{params.k}-(z^2-α)^{params.k} divisible by x1⋯xm"
        try:
            quotient_witness(params, side)
            out.append((name, True))
        except NotDivisible:
            out.append((name, False))
    return out


def _lemma_checks(
    params: FamilyParams, phi: Morphism, psi: Morphism, tag: str = ""
) -> List[Tuple[str, bool]]:
    ctx = context_for(params)
    P = make_H(params)
    Q = make_H(params.with_k(0))
    P_, Q_ = RationalFunction.of(P), RationalFunction.of(Q)
    return [
        (f"P{tag}∘Φ{tag}=Q", rf_eq(pullback(P, phi), Q_)),
        (f"Q∘Ψ{tag}=P{tag}", rf_eq(pullback(Q, psi), P_)),
        (f"Φ{tag}∘Ψ{tag}=id", is_identity(compose(phi, psi))),
        (f"Ψ{tag}∘Φ{tag}=id", is_identity(compose(psi, phi))),
    ]


@lru_cache(maxsize=None)
def _cached_lemma_checks(params: FamilyParams, tag: str) -> Tuple[Tuple[str, bool], ...]:
    checks = _lemma_checks(params, make_Phi(params), make_Psi(params), tag)
    if params.k >= 1:
        checks += _divisibility_checks(params, tag)
    return tuple(checks)


def verify_complement_isomorphism(
    m: int, alpha: Alpha, k: int, kprime: int, phi: Optional[Morphism] = None
) -> ComplementCertificate:
    """Certify ``C^{m+2} \\ H_{alpha,k} ~ C^{m+2} \\ H_{alpha,k'}`` by exact identities.

    ``phi`` replaces ``Φ_k`` (negative controls); the cache is bypassed then.
    """
    params = FamilyParams(m, k, alpha)
    pprime = params.with_k(kprime)
    cert = ComplementCertificate(m, params.alpha, k, kprime)
    if phi is None:
        cert.checks.extend(_cached_lemma_checks(params, ""))
    else:
        cert.checks.extend(_lemma_checks(params, phi, make_Psi(params)))
        if k >= 1:
            cert.checks.extend(_divisibility_checks(params, ""))
    if kprime == k:
        return cert
    cert.checks.extend(_cached_lemma_checks(pprime, "'"))
    cert.checks.extend(_transfer_checks(params, pprime, phi))
    return cert


def _transfer_checks(params, pprime, phi=None) -> List[Tuple[str, bool]]:
    """Checks for ``Φ_k'∘Ψ_k`` and its inverse ``Φ_k∘Ψ_k'``."""
    phi_k = phi if phi is not None else make_Phi(params)
    forward = compose(make_Phi(pprime), make_Psi(params))
    backward = compose(phi_k, make_Psi(pprime))
    P = make_H(params)
    Pp = make_H(pprime)
    return [
        ("P'∘Φ'∘Ψ=P", rf_eq(pullback(Pp, forward), RationalFunction.of(P))),
        ("P∘Φ∘Ψ'=P'", rf_eq(pullback(P, backward), RationalFunction.of(Pp))),
        ("Φ∘Ψ'∘Φ'∘Ψ=id", is_identity(compose(backward, forward))),
    ]


# -- classification ----------------------------------------------------------


class FiberClass(enum.Enum):
    V_P0 = "V(P0)"
    V_P0_minus_1 = "V(P0-1)"
    V_P1 = "V(P1)"
    V_P1_minus_1 = "V(P1-1)"

    def __str__(self):
        return self.value


def _univariate_value(q: Polynomial, c: Rational) -> Rational:
    extra = set(q.variables()) - {"t"}
    if extra:
        raise Unsupported(f"q must be univariate in t, found {sorted(extra)}")
    if not q.variables():
        return q.constant_value() if q else 0
    return q.evaluate({"t": c})


def classify_fiber(q: Polynomial, c) -> FiberClass:
    """Isomorphism class of the fiber ``V(P_q - c)``; depends only on ``c`` and ``q(c)``."""
    c = as_rational(c)
    qc = _univariate_value(q, c)
    if qc == 0:
        return FiberClass.V_P0 if c == 0 else FiberClass.V_P0_minus_1
    return FiberClass.V_P1 if c == 0 else FiberClass.V_P1_minus_1


def classify_H(params: FamilyParams) -> FiberClass:
    if params.symbolic:
        raise Unsupported("classification needs a rational alpha")
    return classify_fiber(shift_power(params.alpha, params.k), params.alpha)


# -- equivalence ------------------------------------------------------------


@dataclass(frozen=True)
class MuSpec:
    """``mu`` is any complex ``degree``-th root of ``radicand``; ``degree == 1`` means explicit."""

    degree: int
    radicand: Rational

    @property
    def value(self) -> Optional[Rational]:
        return self.radicand if self.degree == 1 else None

    def __str__(self):
        if self.degree == 1:
            return str(self.radicand)
        return f"({self.radicand})^(1/{self.degree})"


@dataclass(frozen=True)
class LambdaSpec:
    """``lambda = coeff * mu**mu_power``."""

    coeff: Rational
    mu_power: int

    def value(self, mu: Rational) -> Rational:
        return as_rational(Fraction(self.coeff) * Fraction(mu) ** self.mu_power)

    def __str__(self):
        if self.mu_power == 0:
            return str(self.coeff)
        return f"{self.coeff}*mu^{self.mu_power}"


@dataclass(frozen=True)
class EquivalenceVerdict:
    equivalent: bool
    mu: Optional[MuSpec] = None
    lam: Optional[LambdaSpec] = None
    reason: str = ""

    @property
    def claim(self) -> str:
        return "equivalence"


def coefficients(q: Polynomial) -> Dict[int, Rational]:
    """Nonzero coefficients of a univariate polynomial in ``t``, keyed by degree."""
    extra = set(q.variables()) - {"t"}
    if extra:
        raise Unsupported(f"q must be univariate in t, found {sorted(extra)}")
    i = q.ctx.index("t") if "t" in q.ctx else None
    out = {}
    for exps, c in q.terms().items():
        out[exps[i] if i is not None else 0] = c
    return out


def iroot(n: int, g: int) -> Optional[int]:
    """Exact integer ``g``-th root of ``n >= 0`` or ``None``."""
    if n < 2:
        return n
    r = 1 << -(-n.bit_length() // g)
    while True:
        s = ((g - 1) * r + n // r ** (g - 1)) // g
        if s >= r:
            break
        r = s
    return r if r**g == n else None


def rational_root(s: Rational, g: int) -> Optional[Rational]:
    s = Fraction(s)
    if s < 0:
        if g % 2 == 0:
            return None
        r = rational_root(-s, g)
        return None if r is None else -r
    p, q = iroot(s.numerator, g), iroot(s.denominator, g)
    if p is None or q is None:
        return None
    return as_rational(Fraction(p, q))


def _bezout(ds: List[int]) -> Tuple[int, List[int]]:
    """gcd of ``ds`` and integer coefficients ``c`` with ``sum(c_i*d_i) == gcd``."""
    g, coeffs = ds[0], [1]
    for d in ds[1:]:
        # extended Euclid on (g, d)
        r0, r1, s0, s1, t0, t1 = g, d, 1, 0, 0, 1
        while r1:
            qt = r0 // r1
            r0, r1 = r1, r0 - qt * r1
            s0, s1 = s1, s0 - qt * s1
            t0, t1 = t1, t0 - qt * t1
        coeffs = [c * s0 for c in coeffs] + [t0]
        g = r0
    return g, coeffs


def _proportional(a: Dict[int, Rational], b: Dict[int, Rational], mu: Rational):
    """Rational ``lam`` with ``b_i = lam*a_i*mu^i`` for all ``i``, or ``None``."""
    if set(a) != set(b):
        return None
    i0 = min(a)
    lam = Fraction(b[i0]) / (Fraction(a[i0]) * Fraction(mu) ** i0)
    for i in a:
        if Fraction(b[i]) != lam * a[i] * Fraction(mu) ** i:
            return None
    return as_rational(lam)


def decide_equivalence(q1: Polynomial, c1, q2: Polynomial, c2) -> EquivalenceVerdict:
    """Decide whether some ``lam, mu != 0`` give ``c2 = c1/mu`` and ``q2(t) = lam*q1(mu*t)``.

    With rational data, nonzero constants force ``mu = c1/c2``.  When both
    constants vanish ``mu`` is free and the conditions ``mu^(i-i0) = r_i`` are
    solved over C via a Bezout combination of the exponent gaps.
    """
    c1, c2 = as_rational(c1), as_rational(c2)
    a, b = coefficients(q1), coefficients(q2)
    if (c1 == 0) != (c2 == 0):
        return EquivalenceVerdict(False, reason="exactly one of c1, c2 is zero")
    if not a or not b:
        if a or b:
            return EquivalenceVerdict(False, reason="exactly one of q1, q2 is zero")
        mu = as_rational(Fraction(c1) / c2) if c1 else 1
        return EquivalenceVerdict(True, MuSpec(1, mu), LambdaSpec(1, 0))
    if set(a) != set(b):
        return EquivalenceVerdict(
            False, reason=f"supports differ: {sorted(a)} vs {sorted(b)}"
        )
    if c1 != 0:
        mu = as_rational(Fraction(c1) / c2)
        lam = _proportional(a, b, mu)
        if lam is None:
            return EquivalenceVerdict(
                False, reason=f"mu is forced to {mu} and q2 is not lam*q1(mu*t)"
            )
        return EquivalenceVerdict(True, MuSpec(1, mu), LambdaSpec(lam, 0))

    support = sorted(a)
    i0 = support[0]
    base = Fraction(b[i0]) / a[i0]
    if len(support) == 1:
        return EquivalenceVerdict(True, MuSpec(1, 1), LambdaSpec(as_rational(base), 0))
    gaps = [i - i0 for i in support[1:]]
    ratios = [Fraction(b[i]) * a[i0] / (Fraction(a[i]) * b[i0]) for i in support[1:]]
    g, combo = _bezout(gaps)
    s = reduce(lambda acc, rc: acc * rc[0] ** rc[1], zip(ratios, combo), Fraction(1))
    for d, r in zip(gaps, ratios):
        if s ** (d // g) != r:
            return EquivalenceVerdict(
                False, reason=f"mu^{d} = {r} is inconsistent with mu^{g} = {s}"
            )
    root = rational_root(s, g)
    if root is not None:
        return EquivalenceVerdict(
            True, MuSpec(1, root), LambdaSpec(as_rational(base / Fraction(root) ** i0), 0)
        )
    return EquivalenceVerdict(True, MuSpec(g, as_rational(s)), LambdaSpec(as_rational(base), -i0))


def verify_equivalence_witness(
    q1: Polynomial, c1, q2: Polynomial, c2, verdict: EquivalenceVerdict
) -> bool:
    """Independently re-check an ``Equivalent`` verdict's witness."""
    if not verdict.equivalent or verdict.mu is None or verdict.lam is None:
        return False
    c1, c2 = as_rational(c1), as_rational(c2)
    mu = verdict.mu
    if mu.degree == 1:
        muv = mu.radicand
        if muv == 0 or Fraction(c2) * muv != c1:
            return False
        lam = verdict.lam.value(muv)
        if lam == 0:
            return False
        t = T_CONTEXT.var("t")
        q1t = _to_t(q1)
        image = q1t.substitute({"t": t * muv}) if q1t.variables() else q1t
        return image.scale(lam) == _to_t(q2)
    # radical witness: mu^g = s with s not a rational g-th power, so c1 = c2 = 0
    if c1 != 0 or c2 != 0 or mu.radicand == 0:
        return False
    a, b = coefficients(q1), coefficients(q2)
    if set(a) != set(b):
        return False
    for i in a:
        e = i + verdict.lam.mu_power
        if e < 0 or e % mu.degree:
            return False
        expected = Fraction(verdict.lam.coeff) * a[i] * Fraction(mu.radicand) ** (e // mu.degree)
        if expected != b[i]:
            return False
    return True


def _to_t(q: Polynomial) -> Polynomial:
    return T_CONTEXT.poly({(i,): c for i, c in coefficients(q).items()})


# -- numeric oracle ------------------------------------------------------


def random_rational(rng, bound: int = 10) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def random_point(params: FamilyParams, rng, bound: int = 10) -> Dict[str, Rational]:
    """Random rational point with every ``x_i != 0`` and ``Q != 0``; for symbolic
    alpha the value of ``a`` is drawn as well."""
    ctx = context_for(params)
    Q = make_H(params.with_k(0))
    while True:
        pt = {n: as_rational(random_rational(rng, bound)) for n in ctx.names}
        if any(pt[n] == 0 for n in ctx.names if n.startswith("x")):
            continue
        if Q.evaluate(pt) != 0:
            return pt


def spot_check(
    params: FamilyParams, points: int, rng, phi: Optional[Morphism] = None
) -> List[Tuple[str, bool]]:
    """Evaluate ``Φ`` and ``Ψ`` at random points and compare exactly:
    ``P(Φ(pt)) == Q(pt)`` and ``Ψ(Φ(pt)) == pt``."""
    phi, psi = phi or make_Phi(params), make_Psi(params)
    P, Q = make_H(params), make_H(params.with_k(0))
    forward = backward = True
    for _ in range(points):
        pt = random_point(params, rng)
        image = phi(pt)
        if P.evaluate(image) != Q.evaluate(pt):
            forward = False
        if psi(image) != pt:
            backward = False
    k = params.k
    return [
        (f"P(Φ{k}(pt))=Q(pt) at {points} random points", forward),
        (f"Ψ{k}(Φ{k}(pt))=pt at {points} random points", backward),
    ]
