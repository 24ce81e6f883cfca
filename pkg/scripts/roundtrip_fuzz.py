#!/usr/bin/env python3
"""Bulk round-trip and equivalence fuzzing over seeded instances.

For every seed it generates connections of each supported kind, converts
them through the matching transform pair, and checks the expected round-trip
relation; sound operation pairs are additionally lifted to lattice level and
re-checked there.
"""
from __future__ import annotations

import argparse
import time

from galkit import catalog
from galkit.functions import cgc_soundness, gc_pair_property, pair_to_pgc
from galkit.galois import check_cgp, check_pcgc, nonempty_iso, precision_cmp
from galkit.transforms import t_cgc_of_pgc, t_cgp, t_gc, t_pcgc, t_pgc, t_ppgc


def one_seed(seed: int) -> None:
    C = catalog.gen_cgc(seed)
    assert nonempty_iso(t_cgc_of_pgc(t_pgc(C)), C)

    G = catalog.gen_downsets_gc(seed, amax=6)
    D = t_cgp(G)
    assert check_cgp(D).ok
    assert precision_cmp(t_gc(D), G) == "isomorphic"

    P = catalog.gen_ppgc(seed)
    Q = t_pcgc(P)
    assert check_pcgc(Q).ok
    assert precision_cmp(t_ppgc(Q), P) == "isomorphic"

    conn, pair = catalog.gen_sound_pair(seed)
    assert cgc_soundness(conn, pair, "all").ok
    lifted = pair_to_pgc(pair)
    assert gc_pair_property(lifted.conn, lifted, "sound").ok


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seeds", type=int, default=100)
    parser.add_argument("--start", type=int, default=0)
    args = parser.parse_args()
    t0 = time.monotonic()
    failures = 0
    for seed in range(args.start, args.start + args.seeds):
        try:
            one_seed(seed)
        except AssertionError as exc:
            failures += 1
            print(f"seed {seed}: FAIL {exc}")
    elapsed = time.monotonic() - t0
    print(f"{args.seeds - failures}/{args.seeds} seeds passed in {elapsed:.1f}s")
    return 1 if failures else 0


if __name__ == "__main__":
    raise SystemExit(main())
