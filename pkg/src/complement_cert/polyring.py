"""Exact sparse multivariate polynomials over the rationals.

Monomials are stored packed into a single Python int: one 16-bit field per
variable, plus a leading field holding the total degree.  With that layout
monomial multiplication is integer addition and graded-lex comparison is
integer comparison.  The top bit of every field is a guard bit, which gives
a branch-free divisibility test (see ``_divides``).
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Iterator, Mapping, Tuple, Union

try:  # coefficient arithmetic is the hot loop; mpq is ~10x faster than Fraction
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover
    _Q = Fraction

Rational = Union[int, Fraction]
Monomial = Tuple[int, ...]

_WIDTH = 16
_FIELD = (1 << _WIDTH) - 1
_MAX_EXP = (1 << (_WIDTH - 1)) - 1

#: total degree of the zero polynomial
NEG_INFINITY = float("-inf")


class ContextMismatch(ValueError):
    pass


class UnknownVariable(KeyError):
    pass


class NotDivisible(ArithmeticError):
    """Raised by :func:`exact_div` when no polynomial quotient exists."""


class DivisionByZero(ZeroDivisionError):
    pass


def as_rational(value) -> Rational:
    """Coerce ints, Fractions and strings like ``"-3/2"`` to a reduced rational."""
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    if type(value) is _Q:
        return _public(_norm(value))
    if isinstance(value, str):
        return as_rational(Fraction(value.strip()))
    raise TypeError(f"not an exact rational: {value!r}")


def _coef(value):
    """Internal coefficient: int, or ``_Q`` when not integral."""
    c = as_rational(value)
    return c if type(c) is int else _Q(c.numerator, c.denominator)


def _public(c) -> Rational:
    if type(c) is int:
        return c
    return as_rational(Fraction(int(c.numerator), int(c.denominator)))


def _quo(a, b):
    if type(a) is int and type(b) is int and a % b == 0:
        return a // b
    return _norm(_Q(a) / b)


def _norm(c):
    if type(c) is _Q and c.denominator == 1:
        return int(c.numerator)
    return c


@dataclass(frozen=True)
class VarContext:
    """An ordered tuple of variable names shared by a family of polynomials."""

    names: Tuple[str, ...]

    def __post_init__(self):
        names = tuple(self.names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        object.__setattr__(self, "names", names)

    @property
    def arity(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownVariable(name) from None

    @property
    def _index(self) -> Dict[str, int]:
        cache = self.__dict__.get("_index_cache")
        if cache is None:
            cache = {n: i for i, n in enumerate(self.names)}
            object.__setattr__(self, "_index_cache", cache)
        return cache

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def shift(self, i: int) -> int:
        return _WIDTH * (self.arity - 1 - i)

    # packed-monomial helpers

    @property
    def _guard(self) -> int:
        g = self.__dict__.get("_guard_cache")
        if g is None:
            g = 0
            for i in range(self.arity + 1):
                g |= 1 << (_WIDTH * i + _WIDTH - 1)
            object.__setattr__(self, "_guard_cache", g)
        return g

    def pack(self, exps: Iterable[int]) -> int:
        exps = tuple(exps)
        if len(exps) != self.arity:
            raise ValueError(f"monomial {exps} has wrong length for {self.names}")
        key = 0
        for e in exps:
            if e < 0:
                raise ValueError(f"negative exponent in {exps}")
            key = (key << _WIDTH) | e
        deg = sum(exps)
        if deg > _MAX_EXP:
            raise OverflowError("total degree exceeds packed monomial capacity")
        return (deg << (_WIDTH * self.arity)) | key

    def unpack(self, key: int) -> Monomial:
        n = self.arity
        return tuple((key >> (_WIDTH * (n - 1 - i))) & _FIELD for i in range(n))

    def var(self, name: str) -> "Polynomial":
        i = self.index(name)
        exps = [0] * self.arity
        exps[i] = 1
        return Polynomial._raw(self, {self.pack(exps): 1})

    def vars(self) -> Tuple["Polynomial", ...]:
        return tuple(self.var(n) for n in self.names)

    def const(self, c) -> "Polynomial":
        c = _coef(c)
        return Polynomial._raw(self, {0: c} if c else {})

    def zero(self) -> "Polynomial":
        return Polynomial._raw(self, {})

    def one(self) -> "Polynomial":
        return Polynomial._raw(self, {0: 1})

    def poly(self, terms: Mapping[Monomial, object]) -> "Polynomial":
        return Polynomial(self, terms)

    def __repr__(self):
        return f"VarContext({', '.join(self.names)})"


def _deg(ctx: VarContext, key: int) -> int:
    return key >> (_WIDTH * ctx.arity)


def _divides(ctx: VarContext, small: int, big: int) -> bool:
    g = ctx._guard
    return ((big | g) - small) & g == g


class Polynomial:
    """Immutable sparse polynomial with reduced rational coefficients.

    Equality is structural: same context and identical term maps.  Ring
    operators accept plain ints and Fractions on either side.
    """

    __slots__ = ("ctx", "_t", "_hash", "_rows")

    def __init__(self, ctx: VarContext, terms: Mapping[Monomial, object] = ()):
        t: Dict[int, Rational] = {}
        for exps, c in dict(terms).items():
            c = _coef(c)
            if not c:
                continue
            key = ctx.pack(exps)
            s = t.get(key, 0) + c
            if s:
                t[key] = _norm(s)
            else:
                t.pop(key, None)
        self.ctx = ctx
        self._t = t
        self._hash = None
        self._rows = None

    @classmethod
    def _raw(cls, ctx: VarContext, t: Dict[int, Rational]) -> "Polynomial":
        p = object.__new__(cls)
        p.ctx = ctx
        p._t = t
        p._hash = None
        p._rows = None
        return p

    # -- inspection --------------------------------------------------------

    def terms(self) -> Dict[Monomial, Rational]:
        """Term map in graded-lex order, leading term first."""
        return {self.ctx.unpack(k): _public(self._t[k]) for k in sorted(self._t, reverse=True)}

    def iter_terms(self) -> Iterator[Tuple[Monomial, Rational]]:
        return iter(self.terms().items())

    def __len__(self) -> int:
        return len(self._t)

    def is_zero(self) -> bool:
        return not self._t

    def is_constant(self) -> bool:
        return not self._t or (len(self._t) == 1 and 0 in self._t)

    def constant_value(self) -> Rational:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return _public(self._t.get(0, 0))

    def total_degree(self):
        if not self._t:
            return NEG_INFINITY
        return _deg(self.ctx, max(self._t))

    def degree_in(self, name: str) -> int:
        i = self.ctx.index(name)
        sh = self.ctx.shift(i)
        if not self._t:
            return NEG_INFINITY
        return max((k >> sh) & _FIELD for k in self._t)

    def variables(self) -> Tuple[str, ...]:
        used = 0
        for k in self._t:
            used |= k
        return tuple(
            n for i, n in enumerate(self.ctx.names) if (used >> self.ctx.shift(i)) & _FIELD
        )

    def leading_term(self) -> Tuple[Monomial, Rational]:
        if not self._t:
            raise ValueError("zero polynomial has no leading term")
        k = max(self._t)
        return self.ctx.unpack(k), _public(self._t[k])

    # -- equality / hashing ------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ctx == other.ctx and self._t == other._t
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.is_constant() and self._t.get(0, 0) == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ctx, frozenset(self._t.items())))
        return self._hash

    def __bool__(self):
        return bool(self._t)

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ctx != self.ctx:
                raise ContextMismatch(f"{self.ctx} vs {other.ctx}")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.ctx.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(self._t) < len(other._t):
            a, b = other._t, self._t
        else:
            a, b = self._t, other._t
        t = dict(a)
        for k, c in b.items():
            s = t.get(k, 0) + c
            if s:
                t[k] = _norm(s)
            else:
                del t[k]
        return Polynomial._raw(self.ctx, t)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.ctx, {k: -c for k, c in self._t.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._t, other._t
        if not a or not b:
            return Polynomial._raw(self.ctx, {})
        if len(a) < len(b):
            a, b = b, a
        top = _deg(self.ctx, max(a)) + _deg(self.ctx, max(b))
        if top > _MAX_EXP:
            raise OverflowError("total degree exceeds packed monomial capacity")
        t: Dict[int, Rational] = {}
        get = t.get
        for kb, cb in b.items():
            for ka, ca in a.items():
                k = ka + kb
                t[k] = get(k, 0) + ca * cb
        return Polynomial._raw(self.ctx, {k: _norm(c) for k, c in t.items() if c})

    __rmul__ = __mul__

    def scale(self, c) -> "Polynomial":
        c = _coef(c)
        if not c:
            return self.ctx.zero()
        return Polynomial._raw(self.ctx, {k: _norm(v * c) for k, v in self._t.items()})

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a nonnegative integer")
        return _pow(self, e)

    # -- calculus / evaluation ---------------------------------------------

    def diff(self, name: str) -> "Polynomial":
        sh = self.ctx.shift(self.ctx.index(name))
        unit = (1 << sh) + (1 << (_WIDTH * self.ctx.arity))
        t = {}
        for k, c in self._t.items():
            e = (k >> sh) & _FIELD
            if e:
                t[k - unit] = _norm(c * e)
        return Polynomial._raw(self.ctx, t)

    def _exponent_rows(self):
        if self._rows is None:
            self._rows = [(self.ctx.unpack(k), c) for k, c in self._t.items()]
        return self._rows

    def evaluate(self, point: Mapping[str, object]) -> Rational:
        names = self.ctx.names
        values = []
        for n in names:
            if n in point:
                values.append(_coef(point[n]))
            else:
                values.append(None)
        used = self.variables()
        for n in used:
            if values[self.ctx.index(n)] is None:
                raise UnknownVariable(f"no value bound for {n!r}")
        total = 0
        for exps, c in self._exponent_rows():
            v = c
            for x, e in zip(values, exps):
                if e:
                    v *= x**e
            total += v
        return _public(_norm(total))

    def substitute(self, images: Mapping[str, "Polynomial"]) -> "Polynomial":
        """Simultaneous substitution of every variable occurring in ``self``."""
        used = self.variables()
        target = None
        for n in used:
            if n not in images:
                raise UnknownVariable(f"no image given for {n!r}")
            img = images[n]
            if target is None:
                target = img.ctx
            elif img.ctx != target:
                raise ContextMismatch("image polynomials must share one context")
        if target is None:
            target = next(iter(images.values())).ctx if images else self.ctx
            if not self._t:
                return target.zero()
            return target.const(_public(self._t.get(0, 0)))
        powers = {n: [target.one()] for n in used}
        result = target.zero()
        for exps, c in self._exponent_rows():
            term = target.const(_public(c))
            for n, e in zip(self.ctx.names, exps):
                if e:
                    cache = powers[n]
                    while len(cache) <= e:
                        cache.append(cache[-1] * images[n])
                    term = term * cache[e]
            result = result + term
        return result

    def __repr__(self):
        from .textio import print_poly

        return f"Polynomial({print_poly(self)!r})"

    def __str__(self):
        from .textio import print_poly

        return print_poly(self)


@lru_cache(maxsize=512)
def _pow(p: Polynomial, e: int) -> Polynomial:
    if e == 0:
        return p.ctx.one()
    if e == 1:
        return p
    if len(p._t) == 1:
        (k, c), = p._t.items()
        if _deg(p.ctx, k) * e > _MAX_EXP:
            raise OverflowError("total degree exceeds packed monomial capacity")
        return Polynomial._raw(p.ctx, {k * e: _norm(_Q(c) ** e)})
    return _pow(p, e - 1) * p


# -- functional surface ----------------------------------------------------


def add(a: Polynomial, b: Polynomial) -> Polynomial:
    return a + b


def sub(a: Polynomial, b: Polynomial) -> Polynomial:
    return a - b


def neg(a: Polynomial) -> Polynomial:
    return -a


def mul(a: Polynomial, b: Polynomial) -> Polynomial:
    return a * b


def pow(p: Polynomial, e: int) -> Polynomial:  # noqa: A001
    return p**e


def exact_div(a: Polynomial, b: Polynomial) -> Polynomial:
    """Return ``q`` with ``q * b == a`` or raise :class:`NotDivisible`.

    Leading-term cancellation under graded lex.  If ``b`` divides ``a`` then
    the leading monomial of ``b`` divides that of every intermediate
    remainder, so the first failure proves non-divisibility.
    """
    if a.ctx != b.ctx:
        raise ContextMismatch(f"{a.ctx} vs {b.ctx}")
    if not b._t:
        raise DivisionByZero("division by the zero polynomial")
    ctx = a.ctx
    if not a._t:
        return ctx.zero()
    lb = max(b._t)
    lc = b._t[lb]
    if len(b._t) == 1:
        q = {}
        for k, c in a._t.items():
            if not _divides(ctx, lb, k):
                raise NotDivisible("leading monomial not divisible")
            q[k - lb] = _quo(c, lc)
        return Polynomial._raw(ctx, q)
    if _deg(ctx, max(a._t)) < _deg(ctx, lb):
        raise NotDivisible("divisor has larger degree")
    rest = [(k - lb, c) for k, c in b._t.items() if k != lb]
    r = dict(a._t)
    heap = [-k for k in r]
    heapq.heapify(heap)
    q: Dict[int, Rational] = {}
    while r:
        k = -heapq.heappop(heap)
        c = r.get(k)
        if c is None:
            continue
        if not _divides(ctx, lb, k):
            raise NotDivisible("nonzero remainder")
        shift = k - lb
        f = _quo(c, lc)
        q[shift] = f
        del r[k]
        for kr, cr in rest:
            kk = kr + k
            s = r.get(kk, 0) - f * cr
            if s:
                if kk not in r:
                    heapq.heappush(heap, -kk)
                r[kk] = _norm(s)
            else:
                r.pop(kk, None)
    return Polynomial._raw(ctx, q)


def partial_derivative(p: Polynomial, v: str) -> Polynomial:
    return p.diff(v)


def evaluate(p: Polynomial, point: Mapping[str, object]) -> Rational:
    return p.evaluate(point)


def substitute(p: Polynomial, images: Mapping[str, Polynomial]) -> Polynomial:
    return p.substitute(images)


def univariate(ctx: VarContext, var: str, coeffs: Iterable[object]) -> Polynomial:
    """Build ``sum(c_i * var**i)`` from a low-to-high coefficient list."""
    i = ctx.index(var)
    terms = {}
    for e, c in enumerate(coeffs):
        exps = [0] * ctx.arity
        exps[i] = e
        terms[tuple(exps)] = c
    return Polynomial(ctx, terms)
