#!/usr/bin/env python3
"""Analyze every program in the test corpus and cross-check the abstract
states against the bounded concrete interpreter."""
from __future__ import annotations

import argparse
import os

from galkit import catalog
from galkit.analyzer import analyze, concrete_run, format_result, parse_program

DEFAULT_CORPUS = os.path.join(
    os.path.dirname(os.path.dirname(os.path.abspath(__file__))),
    "tests", "programs",
)


def check_program(path: str, domain) -> int:
    with open(path, encoding="utf-8") as fh:
        program = parse_program(fh.read())
    result = analyze(program, domain)
    print(f"== {os.path.basename(path)} ({result.iterations} loop iterations)")
    print(format_result(result, program, domain))
    violations = 0
    for label, envs in concrete_run(program, domain.carrier).items():
        for env in envs:
            for var, val in env.items():
                if str(val) not in domain.mu[result.points[label][var]]:
                    violations += 1
                    print(f"  VIOLATION at {label}: {var} = {val}")
    return violations


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--corpus", default=DEFAULT_CORPUS)
    parser.add_argument("--domain", default="signconst_pcgc")
    parser.add_argument("--bound", type=int, default=64)
    args = parser.parse_args()
    domain = catalog.builtin(args.domain, args.bound)
    total = 0
    for name in sorted(os.listdir(args.corpus)):
        if name.endswith(".while"):
            total += check_program(os.path.join(args.corpus, name), domain)
            print()
    print("no violations" if total == 0 else f"{total} violations")
    return 1 if total else 0


if __name__ == "__main__":
    raise SystemExit(main())
