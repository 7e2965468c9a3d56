"""Answer verification, independent of how the answer was produced.

The primary check is exact: apply the operator to the candidate and compare
with the right-hand side in canonical form, where equality is structural.
A numeric spot check runs beside it as a defense against a systematically
wrong canonical form, evaluating the two sides through different code paths
(complex exponentials via cmath against real trig terms via math).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .expressions import RealExpr
from .operators import OperatorPoly
from .render import render_text
from .solve import KernelBasis

STANDARD_POINTS = (0.0, 0.5, -0.5, 1.0, -1.0, 1.3, -1.3, 2.7)


@dataclass(frozen=True)
class Verdict:
    status: str  # "exact" or "residual"
    residual: Optional[RealExpr] = None
    detail: str = ""

    @property
    def is_exact(self) -> bool:
        return self.status == "exact"

    def to_json(self) -> dict:
        if self.is_exact:
            return {"status": "exact"}
        out: dict = {"status": "residual"}
        if self.residual is not None:
            out["residual"] = render_text(self.residual)
        if self.detail:
            out["detail"] = self.detail
        return out


EXACT = Verdict("exact")


def check_particular(P: OperatorPoly, g: RealExpr, Y: RealExpr) -> Verdict:
    """Exact symbolic residual P(D)Y - g; empty means Y solves the equation."""
    residual = (P.apply(Y.to_complex()) - g.to_complex()).to_real()
    if residual.is_zero():
        return EXACT
    return Verdict("residual", residual)


def check_kernel(P: OperatorPoly, basis: KernelBasis) -> Verdict:
    """Exact iff the basis has degree(P) elements and P kills each one."""
    if len(basis) != P.degree:
        return Verdict(
            "residual",
            None,
            f"basis has {len(basis)} elements but the operator has degree {P.degree}",
        )
    for label, element in zip(basis.labels, basis.elements):
        image = P.apply(element.to_complex()).to_real()
        if not image.is_zero():
            return Verdict("residual", image, f"{label} is not annihilated")
    return EXACT


def numeric_spot_check(
    P: OperatorPoly, g: RealExpr, Y: RealExpr, points=STANDARD_POINTS
) -> float:
    """Max relative deviation |P(D)Y - g| / (1 + |g|) over the points.

    P(D)Y is applied exactly but evaluated through the complex path, while
    g is evaluated through the real path, so the comparison crosses both
    representations.
    """
    applied = P.apply(Y.to_complex())
    worst = 0.0
    for x in points:
        gx = g.evaluate(x)
        px = applied.evaluate(x)
        worst = max(worst, abs(px - gx) / (1.0 + abs(gx)))
    return worst
