#!/usr/bin/env python3
"""Recompute the headline example tables from first principles.

Prints the abstract squaring table on the sign lattice, sample entries of
abstract multiplication on the constant-sign domain, and the invariant the
analyzer finds for the doubling loop.
"""
from __future__ import annotations

import argparse

from galkit import catalog
from galkit.analyzer import While, analyze, format_result, parse_program
from galkit.functions import ConcreteFn, bca_gc, bca_pcgc_entry

LOOP_PROGRAM = """\
x := 2;
y := 2;
while x < 9 do {
  x := x * y;
}
"""


def sq_table(bound: int) -> None:
    G = catalog.builtin("sign_pgi", bound)
    sq = ConcreteFn(
        1, {v: G.carrier.clamp(int(v) ** 2) for v in G.carrier.values}
    )
    table = bca_gc(G, sq)
    print("abstract squaring on the sign lattice:")
    for d in G.abstract_poset.elements:
        print(f"  sq#({d}) = {table(d)}")


def mul_samples(bound: int) -> None:
    C = catalog.builtin("signconst_pcgc", bound)
    carrier = C.carrier
    mul = ConcreteFn(
        2,
        {
            (a, b): carrier.clamp(int(a) * int(b))
            for a in carrier.values
            for b in carrier.values
        },
    )
    print("abstract multiplication on constant x sign (sample entries):")
    for b1, b2 in (("2", "<0"), ("-2", "≤0"), (">0", "≤0"), ("0", "Z")):
        print(f"  mul#({b1}, {b2}) = {bca_pcgc_entry(C, mul, b1, b2)}")


def loop_invariant(bound: int) -> None:
    C = catalog.builtin("signconst_pcgc", bound)
    program = parse_program(LOOP_PROGRAM)
    result = analyze(program, C)
    loop = next(st for st in program.body if isinstance(st, While))
    print("doubling loop analysis:")
    print("  " + format_result(result, program, C).replace("\n", "\n  "))
    print(f"  loop-head invariant: L{loop.label} -> {result.points[f'L{loop.label}']}")


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--bound", type=int, default=64)
    args = parser.parse_args()
    sq_table(args.bound)
    print()
    mul_samples(args.bound)
    print()
    loop_invariant(args.bound)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
