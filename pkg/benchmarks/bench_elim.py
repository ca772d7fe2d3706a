#!/usr/bin/env python3
"""Benchmark the compiled elimination kernel against the pure-Python engine.

Three views:

  1. kernel-only: raw integer Gauss-Jordan on the structured stacked systems
     the package actually generates (cocycle and centralizer matrices), where
     entries stay small and the compiled int64 path applies;
  2. end-to-end: whole operations (first cohomology, centralizer, inner
     reconstruction), where matrix assembly in Python shares the bill;
  3. the adversarial dense-random case, where exact elimination makes the
     intermediate entries outgrow int64 and the compiled engine falls back
     to the pure one (timings then agree by construction).

Usage: python benchmarks/bench_elim.py [--repeat N]
"""

from __future__ import annotations

import argparse
import random
import time
from fractions import Fraction

from wittkit import _elim_py, linalg
from wittkit.derivations import DerivationSpec, SubspaceSpec, centralizer, h1_dimension, solve_inner
from wittkit.fields import L_basis, TruncationWindow, sl_basis
from wittkit.linalg import RationalMatrix, _dedupe_nonzero, _int_rows
from wittkit.suites import random_field

try:
    from wittkit import _elim as _elim_c
except ImportError:
    _elim_c = None


def _time(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def _span(max_var, lo, hi):
    return SubspaceSpec.span_window(TruncationWindow(max_var, lo, hi, "strict"))


def _cocycle_int_rows(n: int, max_var: int, k: int) -> list[list[int]]:
    """Integer rows of the cocycle system for the degree-k module slice."""
    from wittkit.derivations import _action_matrix

    module = _span(max_var, k, k)
    gens = sl_basis(n)
    G, M = len(gens), module.dim
    acts = [_action_matrix(g, module) for g in gens]
    deg0 = _span(n, 0, 0)
    gen_matrix = RationalMatrix.from_rows(
        [[deg0.coords(g)[t] for g in gens] for t in range(deg0.dim)]
    )
    pairs = [(p, q) for p in range(G) for q in range(p + 1, G)]
    lams = linalg.solve_many(
        gen_matrix, [deg0.coords(gens[p].bracket(gens[q])) for p, q in pairs]
    )
    rows = []
    for (p, q), lam in zip(pairs, lams):
        block = [[Fraction(0)] * (G * M) for _ in range(M)]
        for j in range(G):
            if lam.particular[j]:
                for r in range(M):
                    block[r][j * M + r] += lam.particular[j]
        for r in range(M):
            for t in range(M):
                if acts[p].at(r, t):
                    block[r][q * M + t] -= acts[p].at(r, t)
                if acts[q].at(r, t):
                    block[r][p * M + t] += acts[q].at(r, t)
        rows.extend(block)
    return _dedupe_nonzero(_int_rows(rows))


def bench_kernel(repeat: int) -> None:
    print("kernel-only: integer Gauss-Jordan on structured systems")
    cases = [
        ("cocycle n=3, deg 0 in 4 vars", _cocycle_int_rows(3, 4, 0)),
        ("cocycle n=3, deg 1 in 4 vars", _cocycle_int_rows(3, 4, 1)),
        ("cocycle n=3, deg 1 in 5 vars", _cocycle_int_rows(3, 5, 1)),
    ]
    for name, int_rows in cases:
        ncols = len(int_rows[0])
        pure = _time(lambda: _elim_py.eliminate([list(r) for r in int_rows], ncols), repeat)
        line = f"  {name:32s} {len(int_rows):5d}x{ncols:<4d} pure {pure * 1e3:9.1f} ms"
        if _elim_c is not None:
            comp = _time(lambda: _elim_c.eliminate([list(r) for r in int_rows], ncols), repeat)
            line += f"   compiled {comp * 1e3:8.1f} ms   speedup {pure / comp:5.1f}x"
        print(line)
    print()


def bench_operations(repeat: int) -> None:
    print("end-to-end operations (assembly + elimination)")
    rng = random.Random(17)
    ws = [random_field(rng, max_var=3, max_deg=2, terms=4) for _ in range(20)]

    def op_h1():
        h1_dimension(3, _span(4, 1, 1))

    def op_centralizer():
        centralizer(sl_basis(3), _span(4, -1, 2))

    def op_solve():
        search = _span(3, -1, 2)
        gens = L_basis(3)
        for w in ws:
            solve_inner(DerivationSpec.from_ad(w, gens), search)

    cases = [
        ("first cohomology, deg-1 slice in 4 vars", op_h1),
        ("centralizer of sl_3, wide window", op_centralizer),
        ("20 inner-element round trips", op_solve),
    ]
    engines = ["pure"] + (["compiled"] if _elim_c is not None else [])
    for name, op in cases:
        timings = {}
        for engine in engines:
            linalg.set_engine(engine)
            timings[engine] = _time(op, repeat)
        linalg.set_engine("auto")
        line = f"  {name:42s} pure {timings['pure'] * 1e3:9.1f} ms"
        if "compiled" in timings:
            line += (f"   compiled {timings['compiled'] * 1e3:8.1f} ms"
                     f"   speedup {timings['pure'] / timings['compiled']:5.2f}x")
        print(line)
    print()


def bench_dense_fallback(repeat: int) -> None:
    print("adversarial dense-random matrices (entries outgrow int64; the")
    print("compiled engine detects overflow and reruns on the pure engine)")
    rng = random.Random(5)
    for size in (60, 100):
        m = RationalMatrix.from_rows(
            [[Fraction(rng.randint(-9, 9), rng.randint(1, 6)) for _ in range(size)] for _ in range(size)]
        )
        timings = {}
        for engine in (["pure"] + (["compiled"] if _elim_c is not None else [])):
            linalg.set_engine(engine)
            timings[engine] = _time(lambda: linalg.rref(m), repeat)
        linalg.set_engine("auto")
        line = f"  dense rref {size}x{size:<4d} pure {timings['pure'] * 1e3:9.1f} ms"
        if "compiled" in timings:
            line += f"   compiled-with-fallback {timings['compiled'] * 1e3:8.1f} ms"
        print(line)
    print()


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3, help="take the best of N runs")
    args = parser.parse_args()
    print(f"compiled kernel available: {_elim_c is not None}\n")
    bench_kernel(args.repeat)
    bench_operations(args.repeat)
    bench_dense_fallback(args.repeat)


if __name__ == "__main__":
    main()
