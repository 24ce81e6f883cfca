"""Transforms between the connection classes, with fail-closed verification.

Every transform re-checks its input precondition and re-runs a checker on its
output instead of trusting kind tags.  Synthesized abstract elements get
deterministic names: powerset elements are canonical sorted member lists,
block representatives are named after their least carrier member.
"""
from __future__ import annotations

from .errors import NotInClass, ShapeMismatch, TooLarge
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
    prt,
)
from .order import (
    FinLattice,
    FinPoset,
    join_irreducibles,
    meet_closure,
    members_of,
    powerset_lattice,
    set_name,
    sort_key,
    sorted_elems,
)
from .setops import lift_diamond, lift_star

# exhaustive adjunction checks on transform outputs are skipped beyond this
# many concrete subsets; structural checks still run
VERIFY_GUARD = 2 ** 12


def _as_lattice(abstract) -> FinLattice:
    if isinstance(abstract, FinLattice):
        return abstract
    return FinLattice.from_poset(abstract)


def _maybe_check_gc(G: GaloisConn) -> None:
    poset = G.carrier_poset()
    if poset.is_discrete():
        feasible = 2 ** len(poset) <= VERIFY_GUARD
    else:
        feasible = len(poset) <= 12
    if feasible:
        report = check_gc(G, guard=VERIFY_GUARD)
        if not report.is_gc:
            raise NotInClass(f"transform output fails adjunction at {report.witness}")


def t_pgc(C: CarrierConn) -> GaloisConn:
    """Lift a constructive connection to the partitioning connection
    between the powersets of its carrier and abstract values."""
    if not check_cgc(C):
        raise NotInClass("input fails the constructive-connection law")
    lat = powerset_lattice(C.abstract_poset.elements)
    gamma = {name: lift_star(C.mu, members_of(name)) for name in lat.elements}
    alpha_fn = lambda X: set_name(lift_diamond(C.eta, X))
    G = GaloisConn(C.carrier, lat, gamma, alpha_fn=alpha_fn, kind="pgc")
    if classify_partitioning(G).category != "PGC":
        raise NotInClass("lifted connection is not partitioning")
    return G


def t_cgc_of_pgc(G: GaloisConn) -> CarrierConn:
    """Collapse a partitioning connection to the constructive connection on
    its block representatives."""
    if classify_partitioning(G).category != "PGC":
        raise NotInClass("input is not a partitioning connection")
    eta = {}
    reps = {}
    for a in sorted_elems(G.carrier.values):
        d = G.alpha([a])
        eta[a] = d
        reps.setdefault(d, d)
    elements = sorted_elems(reps)
    mu = {d: G.gamma[d] for d in elements}
    out = CarrierConn("cgc", G.carrier, FinPoset.discrete(elements), eta, mu)
    rep = check_cgc(out)
    if not rep:
        raise NotInClass(f"collapsed connection fails at {rep.witness}")
    return out


def t_cco(C: CarrierConn) -> ClosureOp:
    """The closure operator mu after eta of a constructive connection."""
    if not check_cgc(C):
        raise NotInClass("input fails the constructive-connection law")
    return ClosureOp(C.carrier, {a: C.mu[C.eta[a]] for a in C.carrier.values})


def t_cgc_of_cco(phi: ClosureOp) -> CarrierConn:
    """The constructive connection whose abstract values are the closure's
    images, concretized by themselves."""
    rep = check_cco(phi)
    if not rep:
        raise NotInClass(f"closure law fails at {rep.witness}")
    eta = {a: set_name(phi.phi[a]) for a in phi.carrier.values}
    mu = {set_name(s): s for s in phi.phi.values()}
    out = CarrierConn(
        "cgc", phi.carrier, FinPoset.discrete(sorted_elems(mu)), eta, mu,
    )
    rep = check_cgc(out)
    if not rep:
        raise NotInClass(f"induced connection fails at {rep.witness}")
    return out


def t_gc(C: CarrierConn) -> GaloisConn:
    """Turn an ordered constructive connection into the adjunction between
    the downsets of its carrier and its (complete-lattice) abstract side."""
    if not check_cgp(C):
        raise NotInClass("input fails the ordered-connection laws")
    lat = _as_lattice(C.abstract)
    alpha_fn = lambda X: lat.lub(C.eta[x] for x in X)
    G = GaloisConn(
        C.carrier, lat, dict(C.mu),
        carrier_order=C.carrier_poset(), alpha_fn=alpha_fn, kind="gc",
    )
    _maybe_check_gc(G)
    return G


def t_cgp(G: GaloisConn) -> CarrierConn:
    """Restrict an adjunction over downsets back to carrier level via
    principal downsets."""
    poset = G.carrier_poset()
    eta = {a: G.alpha(poset.down(a)) for a in G.carrier.values}
    out = CarrierConn(
        "cgp", G.carrier, G.abstract, eta, dict(G.gamma), carrier_order=poset,
    )
    rep = check_cgp(out)
    if not rep:
        raise NotInClass(f"restriction fails at {rep.witness}")
    return out


def t_ppgc(C: CarrierConn) -> GaloisConn:
    """Lift a purely constructive connection to the pre-partitioning
    adjunction over the powerset of its carrier."""
    if not check_pcgc(C).ok:
        raise NotInClass("input fails the purely-constructive conditions")
    lat = _as_lattice(C.abstract)
    alpha_fn = lambda X: lat.lub(C.eta[x] for x in X)
    G = GaloisConn(C.carrier, lat, dict(C.mu), alpha_fn=alpha_fn, kind="ppgc")
    if classify_partitioning(G).category not in ("PGC", "PPGC"):
        raise NotInClass("lifted connection is not pre-partitioning")
    _maybe_check_gc(G)
    return G


def t_pcgc(G: GaloisConn) -> CarrierConn:
    """Restrict a pre-partitioning adjunction to carrier level via
    singleton abstraction."""
    if classify_partitioning(G).category not in ("PGC", "PPGC"):
        raise NotInClass("input is not pre-partitioning")
    eta = {a: G.alpha([a]) for a in G.carrier.values}
    out = CarrierConn("pcgc", G.carrier, G.abstract, eta, dict(G.gamma))
    rep = check_pcgc(out)
    if not rep.ok:
        raise NotInClass(f"restriction fails at {rep.witness}")
    return out


def _powerset_atoms(lat: FinLattice) -> list[str]:
    """The base values of a powerset-shaped lattice; rejects other shapes."""
    try:
        atoms = sorted_elems(members_of(lat.top))
    except Exception as exc:
        raise NotInClass("abstract lattice is not a powerset") from exc
    if 2 ** len(atoms) != len(lat.base):
        raise NotInClass("abstract lattice is not a powerset")
    expected = {set_name(s) for s in _all_subsets(atoms)}
    if expected != set(lat.elements):
        raise NotInClass("abstract lattice is not a powerset")
    return atoms


def _all_subsets(values):
    from itertools import combinations

    for k in range(len(values) + 1):
        for c in combinations(values, k):
            yield frozenset(c)


def least_disjunctive_basis(G: GaloisConn) -> frozenset:
    """The smallest family whose disjunctive completion recovers the whole
    powerset abstract domain: the meet-closure of its join-irreducibles."""
    lat = G.abstract_lattice
    _powerset_atoms(lat)
    return meet_closure(lat, join_irreducibles(lat))


def disjunctive_completion(G: GaloisConn) -> GaloisConn:
    """Close the concretization images under unions, yielding a partitioning
    connection over all unions of blocks."""
    cls = classify_partitioning(G)
    if cls.category not in ("PGC", "PPGC"):
        raise NotInClass("input is not pre-partitioning")
    blocks = prt(G)
    if 2 ** len(blocks) > VERIFY_GUARD:
        raise TooLarge("too many blocks for disjunctive completion")
    family = {frozenset()}
    for b in blocks:
        family |= {c | b for c in family}
    for d in G.gamma.values():
        family.add(d)
    names = {s: set_name(s) for s in family}
    up = {
        names[s]: frozenset(names[t] for t in family if s <= t) for s in family
    }
    base = FinPoset(sorted_elems(names.values()), up)
    lat = FinLattice(
        base,
        names[max(family, key=len)],
        names[frozenset()],
        lambda a, b: set_name(members_of(a) | members_of(b)),
        lambda a, b: set_name(members_of(a) & members_of(b)),
    )
    out = GaloisConn(
        G.carrier, lat, {names[s]: s for s in family}, kind="pgc",
    )
    if classify_partitioning(out).category != "PGC":
        raise NotInClass("completion failed to produce a partitioning connection")
    return out
