"""Polynomial text syntax and JSON reports.

Grammar (whitespace insignificant, explicit ``*`` required)::

    expr     := term (("+" | "-") term)*
    term     := factor ("*" factor)*
    factor   := base ("^" uint)?
    base     := var | rational | "(" expr ")" | "-" factor
    rational := int ("/" posint)?

Unary minus binds looser than ``^``, so ``-x1^2`` is ``-(x1^2)``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple, Union

from .polyring import Polynomial, Rational, VarContext, as_rational

VAR_RE = re.compile(r"x[1-9][0-9]?|y|z|t|a")
_TOKEN_RE = re.compile(r"(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.)")


class ParseError(ValueError):
    def __init__(self, message: str, pos: int, expected: str = ""):
        self.pos = pos
        self.expected = expected
        detail = f" (expected {expected})" if expected else ""
        super().__init__(f"{message} at position {pos}{detail}")


class UnknownVariable(ParseError):
    pass


# -- AST -------------------------------------------------------------------


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class RationalLit:
    value: Rational


@dataclass(frozen=True)
class Neg:
    arg: Any


@dataclass(frozen=True)
class Power:
    base: Any
    exponent: int


@dataclass(frozen=True)
class Product:
    factors: Tuple[Any, ...]


@dataclass(frozen=True)
class Sum:
    # (sign, node) pairs, sign is +1 or -1
    terms: Tuple[Tuple[int, Any], ...]


ExprAst = Union[Var, RationalLit, Neg, Power, Product, Sum]


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    tokens = []
    pos, n = 0, len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        m = _TOKEN_RE.match(text, pos)
        if m.group(1) is not None:
            tokens.append(("int", m.group(1), pos))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), pos))
        else:
            ch = m.group(3)
            if ch not in "+-*^/()":
                raise ParseError(f"unexpected character {ch!r}", pos)
            tokens.append((ch, ch, pos))
        pos = m.end()
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    @property
    def tok(self):
        return self.tokens[self.i]

    def take(self, kind: str, expected: str):
        if self.tok[0] != kind:
            raise ParseError(f"unexpected {self.tok[1] or 'end of input'!r}", self.tok[2], expected)
        t = self.tok
        self.i += 1
        return t

    def parse(self):
        node = self.expr()
        self.take("end", "operator or end of input")
        return node

    def expr(self):
        terms = [(1, self.term())]
        while self.tok[0] in ("+", "-"):
            sign = 1 if self.take(self.tok[0], "+ or -")[0] == "+" else -1
            terms.append((sign, self.term()))
        return terms[0][1] if len(terms) == 1 else Sum(tuple(terms))

    def term(self):
        factors = [self.factor()]
        while self.tok[0] == "*":
            self.i += 1
            factors.append(self.factor())
        return factors[0] if len(factors) == 1 else Product(tuple(factors))

    def factor(self):
        base = self.base()
        if self.tok[0] == "^":
            self.i += 1
            exp = self.take("int", "nonnegative integer exponent")
            return Power(base, int(exp[1]))
        return base

    def base(self):
        kind, text, pos = self.tok
        if kind == "int":
            self.i += 1
            if self.tok[0] == "/":
                self.i += 1
                den = self.take("int", "positive integer denominator")
                if int(den[1]) == 0:
                    raise ParseError("zero denominator", den[2], "positive integer")
                return RationalLit(as_rational(Fraction(int(text), int(den[1]))))
            return RationalLit(int(text))
        if kind == "name":
            if not VAR_RE.fullmatch(text):
                raise ParseError(f"unknown identifier {text!r}", pos, "x1..x99, y, z, t or a")
            self.i += 1
            return Var(text)
        if kind == "(":
            self.i += 1
            node = self.expr()
            self.take(")", "')'")
            return node
        if kind == "-":
            self.i += 1
            return Neg(self.factor())
        raise ParseError(
            f"unexpected {text or 'end of input'!r}", pos, "variable, number, '(' or '-'"
        )


def parse_ast(text: str) -> ExprAst:
    return _Parser(text).parse()


def ast_to_poly(node: ExprAst, ctx: VarContext) -> Polynomial:
    if isinstance(node, Var):
        if node.name not in ctx:
            raise UnknownVariable(f"variable {node.name!r} not in {ctx.names}", 0)
        return ctx.var(node.name)
    if isinstance(node, RationalLit):
        return ctx.const(node.value)
    if isinstance(node, Neg):
        return -ast_to_poly(node.arg, ctx)
    if isinstance(node, Power):
        return ast_to_poly(node.base, ctx) ** node.exponent
    if isinstance(node, Product):
        out = ctx.one()
        for f in node.factors:
            out = out * ast_to_poly(f, ctx)
        return out
    if isinstance(node, Sum):
        out = ctx.zero()
        for sign, t in node.terms:
            p = ast_to_poly(t, ctx)
            out = out + p if sign > 0 else out - p
        return out
    raise TypeError(f"not an AST node: {node!r}")


def parse(text: str, ctx: VarContext) -> Polynomial:
    """Parse ``text`` into a canonical polynomial over ``ctx``."""
    tree = parse_ast(text)
    for name, pos in _names_with_positions(text):
        if name not in ctx:
            raise UnknownVariable(f"variable {name!r} not in {ctx.names}", pos)
    return ast_to_poly(tree, ctx)


def _names_with_positions(text: str):
    return [(t[1], t[2]) for t in _tokenize(text) if t[0] == "name"]


def context_from_text(*texts: str, base=()) -> VarContext:
    """Smallest context (in canonical order) covering ``base`` and every name used."""
    names = set(base)
    for text in texts:
        for name, pos in _names_with_positions(text):
            if not VAR_RE.fullmatch(name):
                raise ParseError(f"unknown identifier {name!r}", pos, "x1..x99, y, z, t or a")
            names.add(name)
    xs = sorted((n for n in names if n.startswith("x")), key=lambda n: int(n[1:]))
    rest = [n for n in ("y", "z", "t", "a") if n in names]
    return VarContext(tuple(xs + rest))


# -- printing --------------------------------------------------------------


def format_rational(c: Rational) -> str:
    c = as_rational(c)
    return str(c)


def _monomial(names, exps) -> str:
    parts = []
    for n, e in zip(names, exps):
        if e == 1:
            parts.append(n)
        elif e:
            parts.append(f"{n}^{e}")
    return "*".join(parts)


def print_poly(p: Polynomial) -> str:
    """Deterministic graded-lex rendering that :func:`parse` reads back exactly."""
    if not p:
        return "0"
    out = []
    for i, (exps, c) in enumerate(p.terms().items()):
        mono = _monomial(p.ctx.names, exps)
        mag = abs(c)
        if not mono:
            body = format_rational(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{format_rational(mag)}*{mono}"
        if i == 0:
            out.append(f"-{body}" if c < 0 else body)
        else:
            out.append(f" - {body}" if c < 0 else f" + {body}")
    return "".join(out)


def print_rf(rf) -> str:
    if rf.is_polynomial():
        return print_poly(rf.num)
    return f"({print_poly(rf.num)}) / ({print_poly(rf.den)})"


# -- reports ---------------------------------------------------------------


def _json_number(v):
    v = as_rational(v)
    return v if isinstance(v, int) else str(v)


def _alpha(alpha):
    return alpha if isinstance(alpha, str) else format_rational(alpha)


def report_dict(obj, **extra) -> Dict[str, Any]:
    """JSON-ready dict for a certificate, singularity report, verdict or fiber class.

    ``extra`` entries override or add top-level fields (``claim``, ``params``...).
    """
    from .family import ComplementCertificate, EquivalenceVerdict, FiberClass
    from .smoothness import SINGULAR, SingularityReport

    if isinstance(obj, ComplementCertificate):
        d = {
            "claim": obj.claim,
            "params": {"m": obj.m, "alpha": _alpha(obj.alpha), "k": obj.k, "kprime": obj.kprime},
            "checks": [{"name": n, "status": bool(s)} for n, s in obj.checks],
            "verdict": "pass" if obj.ok else "fail",
        }
    elif isinstance(obj, SingularityReport):
        p = obj.params
        F_names = [n for n in _coordinate_names(p.m)]
        d = {
            "claim": obj.claim,
            "params": {"m": p.m, "alpha": _alpha(p.alpha), "k": p.k},
            "checks": [
                {
                    "name": "witness is a singular point" if obj.verdict == SINGULAR
                    else "certificate identity",
                    "status": obj.verify(),
                }
            ],
            "verdict": obj.verdict,
        }
        if obj.verdict == SINGULAR:
            d["witness"] = [_json_number(obj.witness[n]) for n in F_names]
        else:
            d["certificate"] = {
                "multipliers": {n: print_poly(g) for n, g in obj.multipliers.items()},
                "target": print_poly(obj.tau),
            }
        if obj.caveat:
            d["caveat"] = obj.caveat
    elif isinstance(obj, EquivalenceVerdict):
        d = {"claim": obj.claim, "verdict": "equivalent" if obj.equivalent else "not-equivalent"}
        if obj.equivalent:
            d["witness"] = {
                "mu": {"degree": obj.mu.degree, "radicand": format_rational(obj.mu.radicand)},
                "lambda": {
                    "coeff": format_rational(obj.lam.coeff),
                    "mu_power": obj.lam.mu_power,
                },
            }
        else:
            d["reason"] = obj.reason
    elif isinstance(obj, FiberClass):
        d = {"claim": "classification", "verdict": obj.value}
    else:
        raise TypeError(f"no report format for {type(obj).__name__}")
    d.update(extra)
    return d


def _coordinate_names(m: int) -> List[str]:
    return [f"x{i}" for i in range(1, m + 1)] + ["y", "z"]


def dumps(doc: Dict[str, Any]) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False)


def emit_report(obj, **extra) -> str:
    return dumps(report_dict(obj, **extra))


def _sort_key(report: Dict[str, Any]):
    return report.get("claim", "")


def emit_document(reports: List[Dict[str, Any]]) -> str:
    """One document for many claims, sorted by claim id (stable within a claim)."""
    ordered = sorted(reports, key=_sort_key)
    failed = sorted({r["claim"] for r in ordered if not report_passed(r)})
    return dumps({"claims": ordered, "failed": failed, "verdict": "fail" if failed else "pass"})


def report_passed(report: Dict[str, Any]) -> bool:
    checks = report.get("checks")
    if checks is None:
        return True
    return all(c["status"] for c in checks)
