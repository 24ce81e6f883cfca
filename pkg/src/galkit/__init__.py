"""Finite-model toolkit for constructive and partitioning Galois connections.

Connection records and checkers live in :mod:`galkit.galois`, transforms in
:mod:`galkit.transforms`, operation pairs and best correct approximations in
:mod:`galkit.functions`, the example domains and generators in
:mod:`galkit.catalog`, and the while-language analyzer in
:mod:`galkit.analyzer`.
"""
from .errors import GalkitError
from .galois import (
    CarrierConn,
    ClosureOp,
    GaloisConn,
    check_cco,
    check_cgc,
    check_cgp,
    check_gc,
    check_pcgc,
    classify_partitioning,
    nonempty_iso,
    precision_cmp,
    prt,
)
from .catalog import builtin, gen
from .functions import (
    AbstractFn,
    ConcreteFn,
    FnPair,
    bca_gc,
    bca_pcgc,
    cgc_completeness,
    cgc_soundness,
    gc_pair_property,
    pcgc_pair_property,
    pcgc_sound,
)
from .analyzer import analyze, parse_program

__all__ = [
    "GalkitError",
    "CarrierConn",
    "ClosureOp",
    "GaloisConn",
    "check_cco",
    "check_cgc",
    "check_cgp",
    "check_gc",
    "check_pcgc",
    "classify_partitioning",
    "nonempty_iso",
    "precision_cmp",
    "prt",
    "builtin",
    "gen",
    "AbstractFn",
    "ConcreteFn",
    "FnPair",
    "bca_gc",
    "bca_pcgc",
    "cgc_completeness",
    "cgc_soundness",
    "gc_pair_property",
    "pcgc_pair_property",
    "pcgc_sound",
    "analyze",
    "parse_program",
]

__version__ = "0.1.0"
