#!/usr/bin/env python3
"""Randomized stress run: plant roots, force resonance, solve, certify.

Generates operators with known root structure over Q(i), builds right-hand
sides whose frequencies optionally collide with a planted root (the
resonant case the series route has to detect), and certifies every answer
by symbolically re-applying the operator.  Reports solve-time statistics.

Usage:
    python3 scripts/stress_random.py
    python3 scripts/stress_random.py --cases 2000 --seed 7 --force-rate 0.6
"""

import argparse
import random
import sys
import time
from dataclasses import dataclass
from fractions import Fraction

from diffop import (
    IDENTITY_OP,
    D,
    RealExpr,
    RealTerm,
    check_particular,
    gauss,
    render_operator,
    render_text,
    solve_particular,
)


@dataclass(frozen=True)
class StressConfig:
    cases: int = 500
    seed: int = 20260819
    max_roots: int = 4
    max_mult: int = 3
    height: int = 5
    max_atoms: int = 3
    max_degree: int = 4
    force_rate: float = 0.45
    verbose: bool = False


def rand_fraction(rng: random.Random, height: int, nonzero: bool = False) -> Fraction:
    while True:
        f = Fraction(rng.randint(-height, height), rng.randint(1, height))
        if f or not nonzero:
            return f


def plant_operator(rng: random.Random, cfg: StressConfig):
    """A real operator with known roots: returns (P, [(root, mult), ...]).

    Each planted root is either a rational linear root or a conjugate pair
    alpha +- beta i realized as the real quadratic (D - alpha)^2 + beta^2.
    """
    P = IDENTITY_OP
    roots = []
    for _ in range(rng.randint(1, cfg.max_roots)):
        mult = rng.randint(1, cfg.max_mult)
        if rng.random() < 0.5:
            alpha = rand_fraction(rng, cfg.height)
            base = D - alpha
            root = gauss(alpha)
        else:
            alpha = rand_fraction(rng, cfg.height)
            beta = rand_fraction(rng, cfg.height, nonzero=True)
            base = (D - alpha) ** 2 + beta * beta
            root = gauss(alpha, abs(beta))
        P = P * base**mult
        roots.append((root, mult))
    return P, roots


def rand_rhs(rng: random.Random, cfg: StressConfig, forced=None) -> RealExpr:
    terms = []
    for i in range(rng.randint(1, cfg.max_atoms)):
        if i == 0 and forced is not None:
            alpha, beta = forced.re, forced.im
        else:
            alpha = rand_fraction(rng, 3)
            beta = abs(rand_fraction(rng, 3))
        trig = rng.choice(["cos", "sin"]) if beta else None
        coeff = rand_fraction(rng, 3, nonzero=True)
        terms.append(RealTerm(coeff, rng.randint(0, cfg.max_degree), alpha, beta, trig))
    expr = RealExpr(terms)
    return expr if expr.terms else RealExpr([RealTerm(1, 0, 0, 0, None)])


def run(cfg: StressConfig) -> int:
    rng = random.Random(cfg.seed)
    timings = []
    forced_count = 0
    for case in range(cfg.cases):
        P, roots = plant_operator(rng, cfg)
        forced = None
        if rng.random() < cfg.force_rate:
            forced = rng.choice(roots)[0]
            forced_count += 1
        g = rand_rhs(rng, cfg, forced)
        t0 = time.perf_counter()
        Y, _ = solve_particular(P, g)
        timings.append(time.perf_counter() - t0)
        verdict = check_particular(P, g, Y)
        if not verdict.is_exact:
            print(f"case {case}: CERTIFICATION FAILED", file=sys.stderr)
            print(f"  P(D) = {render_operator(P)}", file=sys.stderr)
            print(f"  g(x) = {render_text(g)}", file=sys.stderr)
            print(f"  y_p  = {render_text(Y)}", file=sys.stderr)
            return 1
        if cfg.verbose:
            print(f"case {case}: exact ({timings[-1] * 1000:.2f} ms)")
    timings.sort()
    total = sum(timings)
    pct = lambda p: timings[min(len(timings) - 1, int(p * len(timings)))] * 1000
    print(f"{cfg.cases} cases, all exact ({forced_count} with a forced resonant frequency)")
    print(
        f"solve time: total {total:.2f} s, mean {total / cfg.cases * 1000:.2f} ms, "
        f"p50 {pct(0.50):.2f} ms, p90 {pct(0.90):.2f} ms, max {timings[-1] * 1000:.2f} ms"
    )
    return 0


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    defaults = StressConfig()
    ap.add_argument("--cases", type=int, default=defaults.cases)
    ap.add_argument("--seed", type=int, default=defaults.seed)
    ap.add_argument("--max-roots", type=int, default=defaults.max_roots)
    ap.add_argument("--max-mult", type=int, default=defaults.max_mult)
    ap.add_argument("--height", type=int, default=defaults.height)
    ap.add_argument("--max-atoms", type=int, default=defaults.max_atoms)
    ap.add_argument("--max-degree", type=int, default=defaults.max_degree)
    ap.add_argument("--force-rate", type=float, default=defaults.force_rate)
    ap.add_argument("--verbose", action="store_true")
    ns = ap.parse_args(argv)
    cfg = StressConfig(
        cases=ns.cases,
        seed=ns.seed,
        max_roots=ns.max_roots,
        max_mult=ns.max_mult,
        height=ns.height,
        max_atoms=ns.max_atoms,
        max_degree=ns.max_degree,
        force_rate=ns.force_rate,
        verbose=ns.verbose,
    )
    return run(cfg)


if __name__ == "__main__":
    raise SystemExit(main())
