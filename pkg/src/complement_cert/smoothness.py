"""Jacobian-criterion singularity analysis for ``H_{alpha,k}``.

A singular hypersurface is witnessed by a point where ``F`` and all partials
vanish (always the origin here).  A smooth one is witnessed by multipliers
``g_F, g_v`` with ``g_F*F + sum(g_v * dF/dv) = tau`` for a nonzero constant
``tau``: the ideal ``(F, dF/dx1, ..., dF/dz)`` is then the unit ideal, so the
equations have no common zero over C.

With ``u = k * x1...xm * (z^2 - alpha)^(k-1)`` one has

* ``z^2 - alpha = F - x1*F_x1 + y*F_y``
* ``z*F_z / 2 = z^2 * (1 + u)``
* ``u^2 = k^2 * (z^2 - alpha)^(2k-2) * F_y``

so ``alpha = (1 - u)*(z*F_z/2 - (1 + u)*(z^2 - alpha)) + alpha*k^2*(z^2-alpha)^(2k-2)*F_y``.
For ``k = 0`` the same formula holds with ``u = 0``.  The one smooth case with
``alpha = 0`` (``m = 1, k = 0``) uses ``1 = F_x1*(1 - 2*x1*y) + 4*y^2*F_y``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Mapping, Optional

from .family import (
    FamilyParams,
    alpha_poly,
    context_for,
    make_H,
    x_product,
)
from .polyring import Polynomial, Rational, UnknownVariable

SINGULAR = "singular"
SMOOTH = "smooth"


def jacobian(F: Polynomial) -> Dict[str, Polynomial]:
    """Partial derivatives of ``F`` in the coordinate variables (``a`` excluded)."""
    return {n: F.diff(n) for n in F.ctx.names if n != "a"}


def is_singular_point(F: Polynomial, point: Mapping[str, object]) -> bool:
    for n in F.variables():
        if n not in point:
            raise UnknownVariable(f"no value bound for {n!r}")
    if F.evaluate(point) != 0:
        return False
    return all(d.evaluate(point) == 0 for d in jacobian(F).values())


@dataclass
class SingularityReport:
    params: FamilyParams
    verdict: str
    witness: Optional[Dict[str, Rational]] = None
    multipliers: Dict[str, Polynomial] = field(default_factory=dict)
    tau: Optional[Polynomial] = None
    caveat: str = ""
    claim: str = "singularity"

    @property
    def smooth(self) -> bool:
        return self.verdict == SMOOTH

    def verify(self) -> bool:
        F = make_H(self.params)
        if self.verdict == SINGULAR:
            return self.witness is not None and is_singular_point(F, self.witness)
        return verify_certificate(F, self.multipliers, self.tau)


def certificate_combination(F: Polynomial, multipliers: Mapping[str, Polynomial]) -> Polynomial:
    """``g_F*F + sum(g_v * dF/dv)``; the key ``"F"`` multiplies ``F`` itself."""
    grads = jacobian(F)
    total = F.ctx.zero()
    for name, g in multipliers.items():
        total = total + g * (F if name == "F" else grads[name])
    return total


def verify_certificate(
    F: Polynomial, multipliers: Mapping[str, Polynomial], tau: Optional[Polynomial]
) -> bool:
    """Exact check that the combination equals ``tau`` and ``tau`` is a unit
    (a nonzero constant, or the indeterminate ``a`` for symbolic alpha)."""
    if tau is None or not tau:
        return False
    if not (tau.is_constant() or ("a" in tau.ctx and tau == tau.ctx.var("a"))):
        return False
    return certificate_combination(F, multipliers) == tau


def smoothness_certificate(params: FamilyParams):
    """Multipliers and target for ``H_{alpha,k}`` when ``alpha != 0`` (or symbolic)."""
    ctx = context_for(params)
    k = params.k
    x1, y, z = ctx.var("x1"), ctx.var("y"), ctx.var("z")
    al = alpha_poly(ctx, params.alpha)
    s = z * z - al
    u = x_product(ctx) * s ** (k - 1) * k if k >= 1 else ctx.zero()
    one = ctx.one()
    w = one - u * u
    mult = {n: ctx.zero() for n in jacobian(make_H(params))}
    mult["F"] = -w
    mult["x1"] = w * x1
    mult["y"] = -w * y + (al * s ** (2 * k - 2) * (k * k) if k >= 1 else ctx.zero())
    mult["z"] = (one - u) * z * Fraction(1, 2)
    return mult, al


def exceptional_certificate(params: FamilyParams):
    """``m = 1, k = 0, alpha = 0``: ``1 = F_x1*(1 - 2*x1*y) + 4*y^2*F_y``."""
    ctx = context_for(params)
    x1, y = ctx.var("x1"), ctx.var("y")
    mult = {n: ctx.zero() for n in jacobian(make_H(params))}
    mult["x1"] = 1 - 2 * x1 * y
    mult["y"] = 4 * y * y
    return mult, ctx.one()


def family_singularity(params: FamilyParams) -> SingularityReport:
    """Singular (origin witness) iff ``alpha = 0`` and ``(k >= 1 or m >= 2)``; otherwise
    smooth with an explicit certificate.  Every returned report has been verified."""
    F = make_H(params)
    if params.symbolic:
        mult, tau = smoothness_certificate(params)
        report = SingularityReport(
            params,
            SMOOTH,
            multipliers=mult,
            tau=tau,
            caveat="certificate target is a: proves smoothness for every alpha != 0 only",
        )
    elif params.alpha == 0:
        if params.k >= 1 or params.m >= 2:
            origin = {n: 0 for n in F.ctx.names}
            report = SingularityReport(params, SINGULAR, witness=origin)
        else:
            mult, tau = exceptional_certificate(params)
            report = SingularityReport(params, SMOOTH, multipliers=mult, tau=tau)
    else:
        mult, tau = smoothness_certificate(params)
        report = SingularityReport(params, SMOOTH, multipliers=mult, tau=tau)
    if not report.verify():
        raise AssertionError(f"singularity evidence failed to verify for {params}")
    return report


def points_on_hypersurface(params: FamilyParams, count: int, rng) -> list:
    """Random rational points of ``H_{alpha,k}`` with all ``x_i != 0``.

    ``F`` is linear in ``y`` with coefficient ``(x1...xm)^2``, so choosing the
    other coordinates determines a point on the hypersurface.
    """
    if params.symbolic:
        raise ValueError("sampling needs a rational alpha")
    F = make_H(params)
    ctx = F.ctx
    lead = F.diff("y")
    rest = F - lead * ctx.var("y")
    points = []
    while len(points) < count:
        pt = {}
        for n in ctx.names:
            if n == "y":
                continue
            v = Fraction(rng.randint(-10, 10), rng.randint(1, 10))
            if n.startswith("x") and v == 0:
                v = Fraction(1)
            pt[n] = v
        pt["y"] = Fraction(-rest.evaluate(pt)) / lead.evaluate(pt)
        points.append(pt)
    return points
