"""Rational functions, coordinate expressions and morphisms between affine spaces.

A :class:`RationalFunction` is a plain ``num / den`` pair compared by
cross-multiplication.  No gcd normalisation is attempted; the only
simplification is opportunistic: whenever ``den`` divides ``num`` exactly the
pair collapses to ``quotient / 1``.

Morphism coordinates are kept as small expression trees (:class:`Expr`) rather
than as expanded fractions.  Composition substitutes trees into trees, and the
result is expanded bottom-up with the same opportunistic reduction at every
node.  Expanding first would be hopeless: the y-coordinate of the complement
isomorphism has y-degree ``2k+1`` and pulling it back through the inverse map
produces denominators of degree in the hundreds, while the tree form cancels
at each step.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Callable, Dict, Mapping, Optional, Sequence, Tuple

from .polyring import (
    ContextMismatch,
    NotDivisible,
    Polynomial,
    Rational,
    UnknownVariable,
    VarContext,
    as_rational,
    exact_div,
)


class NotInvertible(ZeroDivisionError):
    pass


class PoleError(ZeroDivisionError):
    """The evaluation point lies on the zero set of a denominator."""


def _make(num: Polynomial, den: Polynomial) -> "RationalFunction":
    if not num:
        return RationalFunction(num, num.ctx.one())
    if den.is_constant():
        c = den.constant_value()
        return RationalFunction(num if c == 1 else num.scale(Fraction(1) / c), den.ctx.one())
    if num == den:
        return RationalFunction(num.ctx.one(), num.ctx.one())
    try:
        return RationalFunction(exact_div(num, den), den.ctx.one())
    except NotDivisible:
        return RationalFunction(num, den)


def _cancel(n: Polynomial, d: Polynomial):
    """Divide ``n`` by ``d`` if that is exact; otherwise leave both alone."""
    if d.is_constant():
        return n, d
    if n == d:
        return n.ctx.one(), d.ctx.one()
    try:
        return exact_div(n, d), d.ctx.one()
    except NotDivisible:
        return n, d


@dataclass(frozen=True, eq=False)
class RationalFunction:
    num: Polynomial
    den: Polynomial

    def __post_init__(self):
        if self.num.ctx != self.den.ctx:
            raise ContextMismatch("numerator and denominator contexts differ")
        if not self.den:
            raise ZeroDivisionError("zero denominator")

    @classmethod
    def of(cls, p: Polynomial) -> "RationalFunction":
        return cls(p, p.ctx.one())

    @property
    def ctx(self) -> VarContext:
        return self.num.ctx

    def is_polynomial(self) -> bool:
        return self.den == 1

    def is_zero(self) -> bool:
        return not self.num

    def degree(self) -> int:
        """Largest total degree of numerator and denominator (0 for the zero function)."""
        return max(0, self.num.total_degree(), self.den.total_degree())

    def _lift(self, other) -> "RationalFunction":
        if isinstance(other, RationalFunction):
            if other.ctx != self.ctx:
                raise ContextMismatch(f"{self.ctx} vs {other.ctx}")
            return other
        if isinstance(other, Polynomial):
            return RationalFunction.of(other)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return RationalFunction.of(self.ctx.const(other))
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return _make(self.num + other.num, self.den)
        if not self.num:
            return other
        if not other.num:
            return self
        return _make(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        n1, d2 = _cancel(self.num, other.den)
        n2, d1 = _cancel(other.num, self.den)
        return _make(n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def inv(self) -> "RationalFunction":
        if not self.num:
            raise NotInvertible("the zero rational function has no inverse")
        return _make(self.den, self.num)

    def __truediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self * other.inv()

    def __rtruediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other * self.inv()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            raise TypeError("integer exponent required")
        if e < 0:
            return self.inv() ** (-e)
        return RationalFunction(self.num**e, self.den**e)

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return rf_eq(self, other)

    __hash__ = None

    def evaluate(self, point: Mapping[str, object]) -> Rational:
        d = self.den.evaluate(point)
        if d == 0:
            raise PoleError("denominator vanishes at the evaluation point")
        n = self.num.evaluate(point)
        return as_rational(Fraction(n) / d)

    def __str__(self):
        from .textio import print_rf

        return print_rf(self)

    __repr__ = __str__


def rf_add(a: RationalFunction, b: RationalFunction) -> RationalFunction:
    return a + b


def rf_mul(a: RationalFunction, b: RationalFunction) -> RationalFunction:
    return a * b


def rf_neg(a: RationalFunction) -> RationalFunction:
    return -a


def rf_inv(a: RationalFunction) -> RationalFunction:
    return a.inv()


def rf_eq(a: RationalFunction, b: RationalFunction) -> bool:
    if a.den == b.den:
        return a.num == b.num
    return a.num * b.den == b.num * a.den


def rf_evaluate(a: RationalFunction, point: Mapping[str, object]) -> Rational:
    return a.evaluate(point)


# -- coordinate expressions ------------------------------------------------


class Expr:
    """Node of a coordinate expression tree.  Build with the usual operators."""

    def _wrap(self, other) -> "Expr":
        if isinstance(other, Expr):
            return other
        if isinstance(other, Polynomial):
            return Leaf(other)
        raise TypeError(f"cannot combine Expr with {type(other).__name__}")

    def __add__(self, other):
        return Sum((self, self._wrap(other)))

    def __radd__(self, other):
        return Sum((self._wrap(other), self))

    def __sub__(self, other):
        return Sum((self, Neg(self._wrap(other))))

    def __rsub__(self, other):
        return Sum((self._wrap(other), Neg(self)))

    def __neg__(self):
        return Neg(self)

    def __mul__(self, other):
        return Prod((self, self._wrap(other)))

    def __rmul__(self, other):
        return Prod((self._wrap(other), self))

    def __truediv__(self, other):
        return Quotient(self, self._wrap(other))

    def __pow__(self, e: int):
        return Power(self, e)

    def exact_over(self, other) -> "Quotient":
        """Quotient that is asserted to be a polynomial in the identity chart."""
        return Quotient(self, self._wrap(other), exact=True)


@dataclass(frozen=True, eq=False)
class Var(Expr):
    name: str


@dataclass(frozen=True, eq=False)
class Leaf(Expr):
    """A polynomial, optionally pulled back along ``env``.

    ``env`` is ``None`` for a polynomial in the ambient coordinates; otherwise
    it holds one expression per variable of ``poly.ctx``.
    """

    poly: Polynomial
    env: Optional[Tuple[Expr, ...]] = None


@dataclass(frozen=True, eq=False)
class Sum(Expr):
    terms: Tuple[Expr, ...]


@dataclass(frozen=True, eq=False)
class Neg(Expr):
    arg: Expr


@dataclass(frozen=True, eq=False)
class Prod(Expr):
    factors: Tuple[Expr, ...]


@dataclass(frozen=True, eq=False)
class Power(Expr):
    base: Expr
    e: int


@dataclass(frozen=True, eq=False)
class Quotient(Expr):
    num: Expr
    den: Expr
    exact: bool = False


def substitute_expr(e: Expr, mapping: Mapping[str, Expr], memo: Optional[dict] = None) -> Expr:
    """Replace every free :class:`Var` by its image; shared subtrees stay shared."""
    if memo is None:
        memo = {}
    key = id(e)
    if key in memo:
        return memo[key]
    if isinstance(e, Var):
        try:
            out = mapping[e.name]
        except KeyError:
            raise UnknownVariable(e.name) from None
    elif isinstance(e, Leaf):
        if e.env is None:
            env = []
            for n in e.poly.ctx.names:
                env.append(mapping[n] if n in mapping else Var(n))
            out = Leaf(e.poly, tuple(env))
        else:
            out = Leaf(e.poly, tuple(substitute_expr(x, mapping, memo) for x in e.env))
    elif isinstance(e, Sum):
        out = Sum(tuple(substitute_expr(x, mapping, memo) for x in e.terms))
    elif isinstance(e, Neg):
        out = Neg(substitute_expr(e.arg, mapping, memo))
    elif isinstance(e, Prod):
        out = Prod(tuple(substitute_expr(x, mapping, memo) for x in e.factors))
    elif isinstance(e, Power):
        out = Power(substitute_expr(e.base, mapping, memo), e.e)
    elif isinstance(e, Quotient):
        # exactness is a property of the original chart only
        out = Quotient(substitute_expr(e.num, mapping, memo), substitute_expr(e.den, mapping, memo))
    else:
        raise TypeError(f"unknown expression node {e!r}")
    memo[key] = out
    return out


class _Evaluator:
    """Shared bottom-up evaluation; subclasses fix the value domain."""

    def __init__(self):
        self.memo: Dict[int, object] = {}

    def __call__(self, e: Expr):
        key = id(e)
        if key in self.memo:
            return self.memo[key]
        out = self.visit(e)
        self.memo[key] = out
        return out

    def visit(self, e: Expr):
        if isinstance(e, Var):
            return self.var(e.name)
        if isinstance(e, Leaf):
            if e.env is None:
                return self.leaf(e.poly, None)
            return self.leaf(e.poly, [self(x) for x in e.env])
        if isinstance(e, Sum):
            vals = [self(x) for x in e.terms]
            out = vals[0]
            for v in vals[1:]:
                out = out + v
            return out
        if isinstance(e, Neg):
            return -self(e.arg)
        if isinstance(e, Prod):
            vals = [self(x) for x in e.factors]
            out = vals[0]
            for v in vals[1:]:
                out = out * v
            return out
        if isinstance(e, Power):
            return self.power(self(e.base), e.e)
        if isinstance(e, Quotient):
            return self.quotient(self(e.num), self(e.den), e.exact)
        raise TypeError(f"unknown expression node {e!r}")

    def power(self, base, e):
        return base**e


class _RationalEvaluator(_Evaluator):
    def __init__(self, domain: VarContext, images: Optional[Mapping[str, RationalFunction]]):
        super().__init__()
        self.domain = domain
        self.images = images

    def var(self, name):
        if self.images is None:
            return RationalFunction.of(self.domain.var(name))
        try:
            return self.images[name]
        except KeyError:
            raise UnknownVariable(name) from None

    def leaf(self, poly, env):
        if env is not None:
            return pullback_images(poly, dict(zip(poly.ctx.names, env)), self.domain)
        if self.images is None:
            if poly.ctx != self.domain:
                raise ContextMismatch(f"{poly.ctx} vs {self.domain}")
            return RationalFunction.of(poly)
        return pullback_images(poly, self.images, self.domain)

    def quotient(self, num, den, exact):
        if exact and self.images is None:
            # raises NotDivisible if the expression is not actually polynomial
            return RationalFunction.of(exact_div(num.num, den.num))
        return num / den


class _NumericEvaluator(_Evaluator):
    def __init__(self, point: Mapping[str, object]):
        super().__init__()
        self.point = {k: as_rational(v) for k, v in point.items()}

    def var(self, name):
        try:
            return self.point[name]
        except KeyError:
            raise UnknownVariable(f"no value bound for {name!r}") from None

    def leaf(self, poly, env):
        if env is None:
            return poly.evaluate(self.point)
        return poly.evaluate(dict(zip(poly.ctx.names, env)))

    def power(self, base, e):
        return as_rational(Fraction(base) ** e)

    def quotient(self, num, den, exact):
        if den == 0:
            raise PoleError("denominator vanishes at the evaluation point")
        return as_rational(Fraction(num) / den)


def eval_expr(e: Expr, domain: VarContext, images=None) -> RationalFunction:
    return _RationalEvaluator(domain, images)(e)


def eval_expr_at(e: Expr, point: Mapping[str, object]) -> Rational:
    return _NumericEvaluator(point)(e)


# -- pullback --------------------------------------------------------------


def pullback_images(
    p: Polynomial, images: Mapping[str, RationalFunction], target: VarContext
) -> RationalFunction:
    """Substitute rational functions for the variables of ``p``.

    The result is put over the common denominator ``prod(d_v ** deg_v(p))``
    and then divided back by each ``d_v`` as far as that is exact.
    """
    used = p.variables()
    if not used:
        return RationalFunction.of(target.const(p.constant_value() if p else 0))
    for n in used:
        if n not in images:
            raise UnknownVariable(f"no image given for {n!r}")
        if images[n].ctx != target:
            raise ContextMismatch(f"image of {n!r} lives in {images[n].ctx}, expected {target}")
    nums = {n: [target.one(), images[n].num] for n in used}
    dens = {n: [target.one(), images[n].den] for n in used}
    top = {n: p.degree_in(n) for n in used}
    frac = [n for n in used if not images[n].is_polynomial()]

    def power(table, n, e):
        cache = table[n]
        while len(cache) <= e:
            cache.append(cache[-1] * cache[1])
        return cache[e]

    names = p.ctx.names
    num = target.zero()
    for exps, c in p._exponent_rows():
        term = Polynomial._raw(target, {0: c})
        for n, e in zip(names, exps):
            if e:
                term = term * power(nums, n, e)
        for n in frac:
            e = top[n] - exps[names.index(n)]
            if e:
                term = term * power(dens, n, e)
        num = num + term

    remaining = []
    for n in frac:
        d = images[n].den
        left = top[n]
        while left:
            try:
                num = exact_div(num, d)
            except NotDivisible:
                break
            left -= 1
        if left:
            remaining.append((d, left))
    den = target.one()
    for d, e in remaining:
        den = den * d**e
    return _make(num, den)


@dataclass(frozen=True, eq=False)
class Morphism:
    """A rational map ``domain -> codomain``; one expression per codomain coordinate."""

    domain: VarContext
    codomain: VarContext
    exprs: Tuple[Expr, ...]
    name: str = ""

    def __post_init__(self):
        if len(self.exprs) != self.codomain.arity:
            raise ValueError(
                f"{len(self.exprs)} coordinates given for codomain of arity {self.codomain.arity}"
            )
        object.__setattr__(self, "exprs", tuple(self.exprs))

    @classmethod
    def identity(cls, ctx: VarContext) -> "Morphism":
        return cls(ctx, ctx, tuple(Var(n) for n in ctx.names), "id")

    @classmethod
    def from_rational_functions(
        cls, codomain: VarContext, rfs: Sequence[RationalFunction], name: str = ""
    ) -> "Morphism":
        rfs = list(rfs)
        if not rfs:
            raise ValueError("empty coordinate list")
        domain = rfs[0].ctx
        exprs = []
        for r in rfs:
            if r.ctx != domain:
                raise ContextMismatch("all coordinates must live in one domain")
            exprs.append(Leaf(r.num) if r.is_polynomial() else Quotient(Leaf(r.num), Leaf(r.den)))
        return cls(domain, codomain, tuple(exprs), name)

    @cached_property
    def coordinates(self) -> Tuple[RationalFunction, ...]:
        ev = _RationalEvaluator(self.domain, None)
        return tuple(ev(e) for e in self.exprs)

    def images(self) -> Dict[str, RationalFunction]:
        return dict(zip(self.codomain.names, self.coordinates))

    def max_degree(self) -> int:
        return max(r.degree() for r in self.coordinates)

    def __call__(self, point: Mapping[str, object]) -> Dict[str, Rational]:
        """Evaluate at a rational point of the domain; raises :class:`PoleError`."""
        ev = _NumericEvaluator(point)
        return {n: ev(e) for n, e in zip(self.codomain.names, self.exprs)}

    def __matmul__(self, other: "Morphism") -> "Morphism":
        return compose(self, other)


def pullback(p: Polynomial, f: Morphism) -> RationalFunction:
    """``p o f`` as a rational function on the domain of ``f``."""
    if p.ctx != f.codomain:
        raise ContextMismatch(f"{p.ctx} is not the codomain {f.codomain}")
    return pullback_images(p, f.images(), f.domain)


def compose(f: Morphism, g: Morphism) -> Morphism:
    """``f o g``: apply ``g`` first."""
    if g.codomain != f.domain:
        raise ContextMismatch(f"cannot compose: {g.codomain} is not {f.domain}")
    mapping = dict(zip(f.domain.names, g.exprs))
    memo: dict = {}
    exprs = tuple(substitute_expr(e, mapping, memo) for e in f.exprs)
    name = f"{f.name}∘{g.name}" if f.name and g.name else ""
    return Morphism(g.domain, f.codomain, exprs, name)


def is_identity(f: Morphism) -> bool:
    if f.domain != f.codomain:
        return False
    return all(
        rf_eq(r, RationalFunction.of(f.domain.var(n)))
        for n, r in zip(f.codomain.names, f.coordinates)
    )


def corrupt(f: Morphism, index: int, transform: Callable[[Expr], Expr]) -> Morphism:
    """Copy of ``f`` with one coordinate expression rewritten; used for negative controls."""
    exprs = list(f.exprs)
    exprs[index] = transform(exprs[index])
    return Morphism(f.domain, f.codomain, tuple(exprs), f.name + "*")
