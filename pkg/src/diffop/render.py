"""Presentation layer: plain text, LaTeX, and JSON for every value type.

The canonical expression form is flat; display groups terms by frequency
(alpha, beta), pulls the common rational factor of a transcendental group,
and factors the lowest power of x out of each cos/sin/exp part, so answers
read the way they are written by hand: `3/677*(26*cos(2*x) - sin(2*x))`,
`-1/9*x^2*(2*x + 1)*exp(2*x)`.  Pure polynomial groups print plainly.
Text output always reparses to the same expression; LaTeX mirrors the same
structure with amsmath-safe macros only.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .expressions import ComplexExpr, RealExpr
from .operators import FactoredOperator, OperatorPoly
from .rationals import GaussianRational, rat_to_json, scalar_to_json
from .solve import SolveTrace


def _frac_gcd(values) -> Fraction:
    nums = [abs(v.numerator) for v in values]
    dens = [v.denominator for v in values]
    return Fraction(math.gcd(*nums), math.lcm(*dens))


def _fmt_q(q: Fraction) -> str:
    return str(q)


def _fmt_q_latex(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    sign = "-" if q < 0 else ""
    return f"{sign}\\frac{{{abs(q.numerator)}}}{{{q.denominator}}}"


def _xpow(k: int) -> str:
    if k == 0:
        return ""
    return "x" if k == 1 else f"x^{k}"


def _xpow_latex(k: int) -> str:
    if k == 0:
        return ""
    if k == 1:
        return "x"
    return f"x^{k}" if k < 10 else f"x^{{{k}}}"


# -- grouping ---------------------------------------------------------------


class _Group:
    """All terms sharing one (alpha, beta), split into trig parts."""

    def __init__(self, alpha: Fraction, beta: Fraction):
        self.alpha = alpha
        self.beta = beta
        self.parts: dict = {}

    def add(self, trig, k: int, coeff: Fraction):
        self.parts.setdefault(trig, {})[k] = coeff

    def part_order(self) -> list:
        return [t for t in (None, "cos", "sin") if t in self.parts]

    def all_coeffs(self) -> list:
        return [c for poly in self.parts.values() for c in poly.values()]

    def lead_sign(self) -> int:
        first = self.parts[self.part_order()[0]]
        return 1 if first[max(first)] > 0 else -1


def _groups(expr: RealExpr) -> list:
    out: dict = {}
    for t in expr.terms:
        key = (t.alpha, t.beta)
        if key not in out:
            out[key] = _Group(t.alpha, t.beta)
        out[key].add(t.trig, t.k, t.coeff)
    return [out[key] for key in sorted(out)]


def _poly_monomials(poly: dict) -> list:
    """Descending (sign, |coeff|, k) triples."""
    return [
        (1 if poly[k] > 0 else -1, abs(poly[k]), k)
        for k in sorted(poly, reverse=True)
    ]


def _join_signed(pieces: list) -> str:
    """pieces are (sign, text); renders the signed sum."""
    out = []
    for i, (sign, text) in enumerate(pieces):
        if i == 0:
            out.append(("-" if sign < 0 else "") + text)
        else:
            out.append((" - " if sign < 0 else " + ") + text)
    return "".join(out)


# -- plain text ---------------------------------------------------------------


def _monomial_text(c: Fraction, k: int) -> str:
    if k == 0:
        return _fmt_q(c)
    body = _xpow(k)
    return body if c == 1 else f"{_fmt_q(c)}*{body}"


def _poly_text(poly: dict) -> str:
    return _join_signed(
        [(s, _monomial_text(c, k)) for s, c, k in _poly_monomials(poly)]
    )


def _trig_text(trig: str, beta: Fraction) -> str:
    arg = "x" if beta == 1 else f"{_fmt_q(beta)}*x"
    return f"{trig}({arg})"


def _exp_text(alpha: Fraction) -> str:
    if alpha == 1:
        arg = "x"
    elif alpha == -1:
        arg = "-x"
    else:
        arg = f"{_fmt_q(alpha)}*x"
    return f"exp({arg})"


def _part_text(poly: dict, trig, beta: Fraction) -> tuple:
    """(sign, text) for one part, lowest x power factored out."""
    m = min(poly)
    shifted = {k - m: c for k, c in poly.items()}
    sign = 1 if shifted[max(shifted)] > 0 else -1
    if sign < 0:
        shifted = {k: -c for k, c in shifted.items()}
    pieces = []
    if len(shifted) == 1:
        (j, c), = shifted.items()
        mono = _monomial_text(c, j + m)
        if mono != "1":
            pieces.append(mono)
    else:
        if m:
            pieces.append(_xpow(m))
        pieces.append(f"({_poly_text(shifted)})")
    if trig is not None:
        pieces.append(_trig_text(trig, beta))
    if not pieces:
        pieces.append("1")
    return sign, "*".join(pieces)


def render_text(expr: RealExpr) -> str:
    if expr.is_zero():
        return "0"
    pieces = []
    for group in _groups(expr):
        if group.alpha == 0 and group.beta == 0:
            for s, c, k in _poly_monomials(group.parts[None]):
                pieces.append((s, _monomial_text(c, k)))
            continue
        g = _frac_gcd(group.all_coeffs()) * group.lead_sign()
        order = group.part_order()
        parts = [
            _part_text(
                {k: c / g for k, c in group.parts[t].items()}, t, group.beta
            )
            for t in order
        ]
        bits = []
        if abs(g) != 1:
            bits.append(_fmt_q(abs(g)))
        if len(parts) == 1:
            body = parts[0][1]
            # sign is +1 by the lead_sign choice
            if group.alpha != 0:
                body = f"{body}*{_exp_text(group.alpha)}" if body != "1" else _exp_text(group.alpha)
            bits.append(body)
        else:
            if group.alpha != 0:
                bits.append(_exp_text(group.alpha))
            bits.append(f"({_join_signed(parts)})")
        pieces.append((1 if g > 0 else -1, "*".join(bits)))
    return _join_signed(pieces)


# -- LaTeX --------------------------------------------------------------------


def _monomial_latex(c: Fraction, k: int) -> str:
    if k == 0:
        return _fmt_q_latex(c)
    body = _xpow_latex(k)
    return body if c == 1 else f"{_fmt_q_latex(c)}{body}"


def _poly_latex(poly: dict) -> str:
    out = []
    for i, (s, c, k) in enumerate(_poly_monomials(poly)):
        sign = ("-" if s < 0 else "") if i == 0 else ("-" if s < 0 else "+")
        out.append(sign + _monomial_latex(c, k))
    return "".join(out)


def _trig_latex(trig: str, beta: Fraction) -> str:
    if beta == 1:
        arg = "x"
    elif beta.denominator == 1:
        arg = f"{beta}x"
    else:
        arg = f"{_fmt_q_latex(beta)}x"
    return f"\\{trig} {arg}"


def _exp_latex(alpha: Fraction) -> str:
    if alpha == 1:
        body = "x"
    elif alpha == -1:
        body = "-x"
    elif alpha.denominator == 1:
        body = f"{alpha}x"
    else:
        body = f"{_fmt_q_latex(alpha)}x"
    return f"e^{{{body}}}"


def _part_latex(poly: dict, trig, beta: Fraction) -> tuple:
    m = min(poly)
    shifted = {k - m: c for k, c in poly.items()}
    sign = 1 if shifted[max(shifted)] > 0 else -1
    if sign < 0:
        shifted = {k: -c for k, c in shifted.items()}
    if len(shifted) == 1:
        (j, c), = shifted.items()
        body = _monomial_latex(c, j + m)
        body = "" if body == "1" else body
    else:
        body = (_xpow_latex(m) if m else "") + f"({_poly_latex(shifted)})"
    if trig is not None:
        body += _trig_latex(trig, beta)
    return sign, body or "1"


def render_latex(expr: RealExpr) -> str:
    if expr.is_zero():
        return "0"
    pieces = []
    for group in _groups(expr):
        if group.alpha == 0 and group.beta == 0:
            for s, c, k in _poly_monomials(group.parts[None]):
                pieces.append((s, _monomial_latex(c, k)))
            continue
        g = _frac_gcd(group.all_coeffs()) * group.lead_sign()
        order = group.part_order()
        parts = [
            _part_latex(
                {k: c / g for k, c in group.parts[t].items()}, t, group.beta
            )
            for t in order
        ]
        bits = []
        if abs(g) != 1:
            bits.append(_fmt_q_latex(abs(g)))
        if len(parts) == 1:
            body = parts[0][1]
            if group.alpha != 0:
                body = _exp_latex(group.alpha) if body == "1" else body + _exp_latex(group.alpha)
            bits.append(body)
        else:
            if group.alpha != 0:
                bits.append(_exp_latex(group.alpha))
            joined = "".join(
                (("-" if s < 0 else "") if i == 0 else ("-" if s < 0 else "+")) + b
                for i, (s, b) in enumerate(parts)
            )
            bits.append(f"\\left[{joined}\\right]")
        pieces.append((1 if g > 0 else -1, "".join(bits)))
    return _join_signed(pieces).replace(" - ", "-").replace(" + ", "+")


# -- JSON ---------------------------------------------------------------------


def expr_to_json(expr: RealExpr) -> list:
    return [
        {
            "coeff": rat_to_json(t.coeff),
            "k": t.k,
            "alpha": rat_to_json(t.alpha),
            "beta": rat_to_json(t.beta),
            "trig": t.trig,
        }
        for t in expr.terms
    ]


# -- operators ----------------------------------------------------------------


def _coeff_pieces(c: GaussianRational, j: int) -> tuple:
    dpow = "" if j == 0 else ("D" if j == 1 else f"D^{j}")
    if c.is_real():
        sign = 1 if c.re > 0 else -1
        mag = abs(c.re)
        if not dpow:
            return sign, _fmt_q(mag)
        if mag == 1:
            return sign, dpow
        return sign, f"{_fmt_q(mag)}*{dpow}"
    body = f"({c.pretty()})"
    return 1, f"{body}*{dpow}" if dpow else body


def render_operator(P: OperatorPoly) -> str:
    if P.is_zero():
        return "0"
    pieces = []
    for j in range(P.degree, -1, -1):
        c = P.coeff(j)
        if not c.is_zero():
            pieces.append(_coeff_pieces(c, j))
    return _join_signed(pieces)


def render_factored(F: FactoredOperator) -> str:
    bits = []
    if F.leading == -1:
        prefix = "-"
    elif F.leading != 1:
        prefix = ""
        bits.append(_fmt_q(F.leading))
    else:
        prefix = ""
    for f in F.factors:
        if f.beta == 0:
            if f.alpha == 0:
                base = "D"
            elif f.alpha > 0:
                base = f"(D-{_fmt_q(f.alpha)})"
            else:
                base = f"(D+{_fmt_q(-f.alpha)})"
        else:
            inner = "D^2" if f.alpha == 0 else (
                f"(D-{_fmt_q(f.alpha)})^2" if f.alpha > 0 else f"(D+{_fmt_q(-f.alpha)})^2"
            )
            base = f"({inner}+{_fmt_q(f.beta * f.beta)})"
        bits.append(base + (f"^{f.mult}" if f.mult > 1 else ""))
    if not bits:
        bits.append(_fmt_q(F.leading))
        prefix = ""
    return prefix + "*".join(bits)


# -- complex expressions and traces (explain output) --------------------------


def render_complex_text(expr: ComplexExpr) -> str:
    if expr.is_zero():
        return "0"
    bits = []
    for t in expr.terms:
        factors = [f"({t.coeff.pretty()})"]
        if t.k:
            factors.append(_xpow(t.k))
        if not t.lam.is_zero():
            factors.append(f"e^(({t.lam.pretty()})x)")
        bits.append("*".join(factors))
    return " + ".join(bits)


def trace_to_json(trace: SolveTrace) -> dict:
    steps = []
    for step in trace.steps:
        steps.append(
            {
                "frequency": step.lam.to_json(),
                "frequency_text": step.lam.pretty(),
                "rhs_polynomial": render_complex_text(step.rhs_poly),
                "shifted_operator": render_operator(step.shifted),
                "resonance_order": step.resonance,
                "series": [scalar_to_json(s) for s in step.series.coefficients],
                "series_text": [s.pretty() for s in step.series.coefficients],
                "after_series": render_complex_text(step.series_applied),
                "after_integration": render_complex_text(step.integrated),
                "contribution": render_complex_text(step.contribution),
            }
        )
    return {"operator": trace.operator.to_json(), "steps": steps}


def trace_to_text(trace: SolveTrace) -> str:
    lines = []
    for i, step in enumerate(trace.steps, start=1):
        lines.append(f"step {i}: frequency lambda = {step.lam.pretty()}")
        lines.append(f"  polynomial part: {render_complex_text(step.rhs_poly)}")
        lines.append(f"  shifted operator P(D+lambda): {render_operator(step.shifted)}")
        lines.append(f"  resonance order k: {step.resonance}")
        series = " + ".join(
            f"({s.pretty()})*D^{j}" if j else f"({s.pretty()})"
            for j, s in enumerate(step.series.coefficients)
        )
        lines.append(f"  truncated inverse series: {series}")
        lines.append(f"  series applied: {render_complex_text(step.series_applied)}")
        if step.resonance:
            lines.append(
                f"  after D^-{step.resonance} (constants zero): {render_complex_text(step.integrated)}"
            )
        lines.append(f"  contribution: {render_complex_text(step.contribution)}")
    return "\n".join(lines)
