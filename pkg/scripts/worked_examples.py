#!/usr/bin/env python3
"""Run the catalogue of worked examples end to end and certify each answer.

Every problem goes through the full text surface: parse the operator and
the right-hand side, solve, re-apply the operator to the answer, and print
the result.  Exits nonzero if any certificate is not exact.

Usage:
    python3 scripts/worked_examples.py
    python3 scripts/worked_examples.py --latex
    python3 scripts/worked_examples.py --explain resonant-exp
"""

import argparse
import sys
from dataclasses import dataclass

from diffop import (
    check_particular,
    numeric_spot_check,
    parse_operator,
    parse_rhs,
    render_latex,
    render_text,
    solve_particular,
    trace_to_text,
)


@dataclass(frozen=True)
class Problem:
    name: str
    op: str
    rhs: str


CATALOGUE = [
    Problem("plain-exp", "3*D^2-2*D+8", "5*exp(3*x)"),
    Problem("resonant-exp", "(D-1)*(D+5)*(D-2)^3", "3*exp(2*x)"),
    Problem("poly", "D^3-5*D^2+3*D+2", "2*x^3+4*x^2-6*x+5"),
    Problem("poly-through-D", "D^3-3*D^2+2*D", "x^3-2*x^2"),
    Problem("trig", "2*D^3+D^2-5*D+3", "3*sin(2*x)"),
    Problem("resonant-trig", "(D-1)^2*(D-2)*(D^2+4)^2", "4*sin(2*x)"),
    Problem("poly-exp", "(D-3)^2*(D^2-2*D+5)*(D+2)", "(x^2-3*x+1)*exp(2*x)"),
    Problem("poly-exp-2", "(D-3)*(D-2)^2*(D+1)", "(4*x-2)*exp(2*x)"),
    Problem("poly-trig", "D^2-4", "(x^2-3)*sin(2*x)"),
    Problem("resonant-poly-trig", "D^2+4", "4*x^2*cos(2*x)"),
    Problem("exp-trig", "D^2-2*D+2", "exp(2*x)*(2*cos(x) - 6*sin(x))"),
    Problem("resonant-exp-trig", "(D-1)*((D-3)^2+4)", "4*exp(3*x)*cos(2*x)"),
    Problem("mixed", "D^2+2*D+2", "exp(-x)*(3 + 2*sin(x) + 4*x^2*cos(x))"),
]


def run(cfg: argparse.Namespace) -> int:
    failures = 0
    for prob in CATALOGUE:
        if cfg.explain and prob.name != cfg.explain:
            continue
        P = parse_operator(prob.op).poly
        g = parse_rhs(prob.rhs)
        Y, trace = solve_particular(P, g)
        verdict = check_particular(P, g, Y)
        spot = numeric_spot_check(P, g, Y)
        status = "exact" if verdict.is_exact else "RESIDUAL"
        print(f"[{prob.name}]")
        print(f"  P(D) = {prob.op}")
        print(f"  g(x) = {prob.rhs}")
        print(f"  y_p  = {render_text(Y)}")
        if cfg.latex:
            print(f"  latex: {render_latex(Y)}")
        print(f"  certificate: {status}, max spot deviation {spot:.2e}")
        if cfg.explain:
            print()
            print(trace_to_text(trace))
        if not verdict.is_exact:
            failures += 1
    if failures:
        print(f"{failures} problem(s) failed certification", file=sys.stderr)
        return 1
    return 0


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--latex", action="store_true", help="also print LaTeX for each answer")
    ap.add_argument(
        "--explain",
        metavar="NAME",
        help="run only the named problem and print its full derivation trace",
    )
    cfg = ap.parse_args(argv)
    if cfg.explain and cfg.explain not in {p.name for p in CATALOGUE}:
        names = ", ".join(p.name for p in CATALOGUE)
        ap.error(f"unknown problem {cfg.explain!r}; choose from: {names}")
    return run(cfg)


if __name__ == "__main__":
    raise SystemExit(main())
