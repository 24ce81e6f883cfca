"""Conversions between connection classes and disjunctive completions."""
from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from galkit import catalog
from galkit.errors import NotInClass
from galkit.galois import (
    check_cco,
    check_cgc,
    check_cgp,
    check_pcgc,
    classify_partitioning,
    nonempty_iso,
    precision_cmp,
)
from galkit.order import members_of, set_name
from galkit.transforms import (
    disjunctive_completion,
    least_disjunctive_basis,
    t_cco,
    t_cgc_of_cco,
    t_cgc_of_pgc,
    t_cgp,
    t_gc,
    t_pcgc,
    t_pgc,
    t_ppgc,
)


def test_t_pgc_builds_the_powerset_lifting():
    C = catalog.sign_cgc(8)
    G = t_pgc(C)
    assert classify_partitioning(G).category == "PGC"
    # the abstraction of a singleton is the singleton of its block name
    for a in C.carrier.values:
        assert G.alpha([a]) == set_name([C.eta[a]])
    # gamma of a set of blocks is the union of their concretizations
    for d in G.abstract_poset.elements:
        expected = set()
        for b in members_of(d):
            expected |= C.mu[b]
        assert G.gamma[d] == frozenset(expected)


def test_pgc_roundtrip_is_nonempty_isomorphic():
    C = catalog.sign_cgc(8)
    back = t_cgc_of_pgc(t_pgc(C))
    assert check_cgc(back).ok
    assert nonempty_iso(back, C)


def test_t_cgc_of_pgc_rejects_non_partitioning_inputs():
    with pytest.raises(NotInClass):
        t_cgc_of_pgc(catalog.builtin("interval_gi_d", 10))


def test_cco_roundtrip():
    C = catalog.sign_cgc(8)
    phi = t_cco(C)
    assert check_cco(phi).ok
    for a in C.carrier.values:
        assert phi.phi[a] == C.mu[C.eta[a]]
    back = t_cgc_of_cco(phi)
    assert check_cgc(back).ok
    assert nonempty_iso(back, C)


def test_gc_cgp_roundtrip_on_seeded_instances():
    for seed in range(25):
        G = catalog.gen_downsets_gc(seed, amax=5)
        C = t_cgp(G)
        assert check_cgp(C).ok
        G2 = t_gc(C)
        assert precision_cmp(G2, G) == "isomorphic"
        back = t_cgp(G2)
        assert back.eta == C.eta and back.mu == C.mu


def test_ppgc_pcgc_roundtrip_on_seeded_instances():
    for seed in range(25):
        G = catalog.gen_ppgc(seed)
        C = t_pcgc(G)
        assert check_pcgc(C).ok
        assert precision_cmp(t_ppgc(C), G) == "isomorphic"


def test_t_pcgc_abstraction_is_eta_on_singletons():
    G = catalog.builtin("sign_minus_ppgc", 8)
    C = t_pcgc(G)
    for a in C.carrier.values:
        assert set_name([a]) != ""  # carrier values are plain names
        assert C.eta[a] == G.alpha([a])


def test_disjunctive_completion_of_ppgc_is_pgc():
    G = catalog.builtin("sign_minus_ppgc", 8)
    assert classify_partitioning(G).category == "PPGC"
    D = disjunctive_completion(G)
    assert classify_partitioning(D).category == "PGC"
    # completion adds exactly the missing unions of blocks
    blocks = {G.gamma[G.alpha([a])] for a in G.carrier.values}
    closed = {frozenset()}
    for b in blocks:
        closed |= {c | b for c in closed}
    assert D.gamma_image() == frozenset(closed)


def test_disjunctive_completion_fixes_disjunctive_domains():
    G = catalog.builtin("sign_pgi", 8)
    D = disjunctive_completion(G)
    assert D.gamma_image() == G.gamma_image()


def test_least_disjunctive_basis_of_lifted_sign():
    G = t_pgc(catalog.sign_cgc(8))
    basis = least_disjunctive_basis(G)
    # singletons are the join-irreducibles; meet-closing adds the empty set
    # and the top of the block powerset
    expected = {set_name([b]) for b in ("-", "0", "+", "⊥")}
    expected |= {set_name([]), set_name(["-", "0", "+", "⊥"])}
    assert basis == frozenset(expected)


def test_least_disjunctive_basis_needs_a_powerset_domain():
    with pytest.raises(NotInClass):
        least_disjunctive_basis(catalog.builtin("sign_pgi", 8))


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=10_000))
def test_pgc_roundtrip_property(seed):
    C = catalog.gen_cgc(seed, amax=6, bmax=6)
    G = t_pgc(C)
    assert classify_partitioning(G).category == "PGC"
    assert nonempty_iso(t_cgc_of_pgc(G), C)


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=10_000))
def test_cco_roundtrip_property(seed):
    C = catalog.gen_cgc(seed, amax=6, bmax=6)
    back = t_cgc_of_cco(t_cco(C))
    assert nonempty_iso(back, C)
