"""Finite posets, complete lattices and downward-closed sets.

All elements are opaque strings; integer-valued elements render as decimal
strings so that one identifier space works across carriers, abstract domains
and powerset lattices.  Order relations are stored as full up-set / down-set
maps after reflexive-transitive closure: carriers are small by design, so
O(n^2) storage beats walking a Hasse diagram.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping

from .errors import (
    CycleDetected,
    DuplicateElement,
    NotCompleteLattice,
    TooLarge,
    UnknownElement,
)

DOWNSETS_GUARD = 2 ** 16


def sort_key(v: str):
    """Sort element names numerically when they parse as ints, else lexically."""
    try:
        return (0, int(v), "")
    except ValueError:
        return (1, 0, v)


def sorted_elems(xs: Iterable[str]) -> list[str]:
    return sorted(xs, key=sort_key)


def scan_key(v: str):
    """Order used when scanning carriers for counterexamples: small
    magnitudes first, nonnegative before negative, so witnesses match the
    values a reader would pick by hand."""
    try:
        n = int(v)
        return (0, abs(n), 0 if n >= 0 else 1, "")
    except ValueError:
        return (1, 0, 0, v)


def scan_order(xs: Iterable[str]) -> list[str]:
    return sorted(xs, key=scan_key)


def set_name(members: Iterable[str]) -> str:
    """Canonical name for a finite set of elements: "{a,b}" with sorted members."""
    return "{" + ",".join(sorted_elems(members)) + "}"


class FinPoset:
    """A finite poset with precomputed up-sets and down-sets."""

    __slots__ = ("elements", "_index", "_up", "_dn")

    def __init__(self, elements: Iterable[str], up: Mapping[str, frozenset]):
        self.elements = tuple(elements)
        self._index = {x: i for i, x in enumerate(self.elements)}
        self._up = dict(up)
        self._dn = {x: frozenset() for x in self.elements}
        dn: dict[str, set] = {x: set() for x in self.elements}
        for x, ups in self._up.items():
            for y in ups:
                dn[y].add(x)
        self._dn = {x: frozenset(s) for x, s in dn.items()}

    # -- basic queries -------------------------------------------------

    def __contains__(self, x: str) -> bool:
        return x in self._index

    def __len__(self) -> int:
        return len(self.elements)

    def require(self, x: str) -> None:
        if x not in self._index:
            raise UnknownElement(f"element {x!r} not in poset")

    def leq(self, x: str, y: str) -> bool:
        self.require(x)
        self.require(y)
        return y in self._up[x]

    def up(self, x: str) -> frozenset:
        self.require(x)
        return self._up[x]

    def down(self, x: str) -> frozenset:
        self.require(x)
        return self._dn[x]

    def is_discrete(self) -> bool:
        return all(len(self._up[x]) == 1 for x in self.elements)

    def is_down_closed(self, members: Iterable[str]) -> bool:
        ms = set(members)
        return all(self._dn[x] <= ms for x in ms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FinPoset):
            return NotImplemented
        return set(self.elements) == set(other.elements) and self._up == other._up

    def __repr__(self) -> str:
        return f"FinPoset({len(self.elements)} elements)"

    @staticmethod
    def discrete(elements: Iterable[str]) -> "FinPoset":
        elems = list(elements)
        return FinPoset(elems, {x: frozenset([x]) for x in elems})


def build_poset(elements: Iterable[str], pairs: Iterable[tuple[str, str]]) -> FinPoset:
    """Build a poset from the reflexive-transitive closure of ``pairs``.

    Rejects duplicate elements, pairs mentioning unknown elements, and
    closures that violate antisymmetry (i.e. cycles).
    """
    elems = list(elements)
    if len(set(elems)) != len(elems):
        seen: set[str] = set()
        for x in elems:
            if x in seen:
                raise DuplicateElement(f"duplicate element {x!r}")
            seen.add(x)
    known = set(elems)
    succ: dict[str, set[str]] = {x: {x} for x in elems}
    for lo, hi in pairs:
        if lo not in known:
            raise UnknownElement(f"unknown element {lo!r} in pair")
        if hi not in known:
            raise UnknownElement(f"unknown element {hi!r} in pair")
        succ[lo].add(hi)
    # transitive closure, then antisymmetry check
    changed = True
    while changed:
        changed = False
        for x in elems:
            extra = set()
            for y in succ[x]:
                extra |= succ[y]
            if not extra <= succ[x]:
                succ[x] |= extra
                changed = True
    for x in elems:
        for y in succ[x]:
            if y != x and x in succ[y]:
                raise CycleDetected(f"antisymmetry violated by {x!r} and {y!r}")
    return FinPoset(elems, {x: frozenset(s) for x, s in succ.items()})


class FinLattice:
    """A finite complete lattice: a poset plus pairwise join/meet functions."""

    __slots__ = ("base", "top", "bottom", "_join", "_meet")

    def __init__(self, base, top, bottom, join, meet):
        self.base = base
        self.top = top
        self.bottom = bottom
        self._join = join
        self._meet = meet

    @property
    def elements(self):
        return self.base.elements

    def leq(self, x, y):
        return self.base.leq(x, y)

    def join(self, x: str, y: str) -> str:
        return self._join(x, y)

    def meet(self, x: str, y: str) -> str:
        return self._meet(x, y)

    def lub(self, members: Iterable[str]) -> str:
        acc = self.bottom
        for x in members:
            self.base.require(x)
            acc = self._join(acc, x)
        return acc

    def glb(self, members: Iterable[str]) -> str:
        acc = self.top
        for x in members:
            self.base.require(x)
            acc = self._meet(acc, x)
        return acc

    def __eq__(self, other):
        if not isinstance(other, FinLattice):
            return NotImplemented
        return self.base == other.base

    def __repr__(self):
        return f"FinLattice({len(self.base)} elements)"

    @staticmethod
    def from_poset(poset: FinPoset) -> "FinLattice":
        """Verify completeness and cache the pairwise bound tables.

        For a finite poset, existence of all pairwise lubs/glbs plus a top and
        bottom implies a complete lattice.  Raises NotCompleteLattice with the
        offending pair otherwise.
        """
        elems = poset.elements
        if not elems:
            raise NotCompleteLattice((), "element")
        bottom = next((x for x in elems if all(poset.leq(x, y) for y in elems)), None)
        top = next((x for x in elems if all(poset.leq(y, x) for y in elems)), None)
        if bottom is None or top is None:
            raise NotCompleteLattice((), "top" if top is None else "bottom")
        lub2: dict[tuple[str, str], str] = {}
        glb2: dict[tuple[str, str], str] = {}
        for x in elems:
            lub2[(x, x)] = x
            glb2[(x, x)] = x
        for x, y in combinations(elems, 2):
            ub = poset.up(x) & poset.up(y)
            least = next((z for z in ub if poset.up(z) >= ub), None)
            if least is None:
                raise NotCompleteLattice((x, y), "lub")
            lb = poset.down(x) & poset.down(y)
            greatest = next((z for z in lb if poset.down(z) >= lb), None)
            if greatest is None:
                raise NotCompleteLattice((x, y), "glb")
            lub2[(x, y)] = lub2[(y, x)] = least
            glb2[(x, y)] = glb2[(y, x)] = greatest
        return FinLattice(
            poset, top, bottom,
            lambda a, b: lub2[(a, b)],
            lambda a, b: glb2[(a, b)],
        )


def lattice_bound(lat: FinLattice, members: Iterable[str], direction: str) -> str:
    """lub or glb of a subset; total because the lattice is complete."""
    if direction == "lub":
        return lat.lub(members)
    if direction == "glb":
        return lat.glb(members)
    raise ValueError(f"direction must be 'lub' or 'glb', got {direction!r}")


@dataclass(frozen=True, eq=False)
class DownSet:
    """A downward-closed subset of a poset."""

    poset: FinPoset
    members: frozenset

    def __post_init__(self):
        for x in self.members:
            self.poset.require(x)
        if not self.poset.is_down_closed(self.members):
            raise ValueError("members are not downward closed")

    def __eq__(self, other):
        if isinstance(other, DownSet):
            return self.members == other.members and self.poset == other.poset
        return NotImplemented

    def __contains__(self, x):
        return x in self.members


def down_closure(poset: FinPoset, members: Iterable[str]) -> DownSet:
    """Smallest downward-closed superset of ``members``."""
    out: set[str] = set()
    for x in members:
        out |= poset.down(x)
    return DownSet(poset, frozenset(out))


def iter_downsets(poset: FinPoset, guard: int = DOWNSETS_GUARD):
    """Yield every downward-closed subset of ``poset`` as a frozenset.

    Enumerates by extending with maximal remaining elements; raises TooLarge
    if more than ``guard`` downsets would be produced.
    """
    elems = sorted_elems(poset.elements)
    seen: set[frozenset] = set()
    frontier = [frozenset()]
    seen.add(frozenset())
    while frontier:
        nxt = []
        for ds in frontier:
            yield ds
            for x in elems:
                if x in ds:
                    continue
                grown = ds | poset.down(x)
                if grown not in seen:
                    seen.add(grown)
                    if len(seen) > guard:
                        raise TooLarge(
                            f"more than {guard} downward-closed subsets"
                        )
                    nxt.append(grown)
        frontier = nxt


def downsets_lattice(poset: FinPoset, guard: int = DOWNSETS_GUARD) -> FinLattice:
    """The complete lattice of all downward-closed subsets, ordered by inclusion.

    Returns a lattice whose elements are canonical set names; the decoded
    subsets are available through :func:`members_of`.
    """
    downsets = list(iter_downsets(poset, guard))
    sets_by_name = {set_name(ds): ds for ds in downsets}
    names = sorted_elems(sets_by_name)
    up = {
        n: frozenset(m for m in names if sets_by_name[n] <= sets_by_name[m])
        for n in names
    }
    base = FinPoset(names, up)
    # joins/meets computed on the decoded sets: union and intersection of
    # downsets are downsets, so the lattice is complete by construction
    join = lambda a, b: set_name(sets_by_name[a] | sets_by_name[b])
    meet = lambda a, b: set_name(sets_by_name[a] & sets_by_name[b])
    top = set_name(frozenset(poset.elements))
    bottom = set_name(frozenset())
    return FinLattice(base, top, bottom, join, meet)


def powerset_lattice(values: Iterable[str], guard: int = DOWNSETS_GUARD) -> FinLattice:
    """The powerset of ``values`` as a lattice, elements named canonically.

    Up-sets are enumerated as supersets directly (3^n work overall) instead
    of comparing all pairs of subsets.
    """
    vals = sorted_elems(values)
    if len(set(vals)) != len(vals):
        raise DuplicateElement("powerset over duplicated values")
    if 2 ** len(vals) > guard:
        raise TooLarge(f"powerset of {len(vals)} values exceeds the guard")
    subsets = [
        frozenset(c) for k in range(len(vals) + 1) for c in combinations(vals, k)
    ]
    names = {fs: set_name(fs) for fs in subsets}
    up = {}
    for fs in subsets:
        rest = [v for v in vals if v not in fs]
        ups = set()
        for k in range(len(rest) + 1):
            for c in combinations(rest, k):
                ups.add(names[fs | frozenset(c)])
        up[names[fs]] = frozenset(ups)
    base = FinPoset([names[fs] for fs in subsets], up)
    join = lambda a, b: set_name(members_of(a) | members_of(b))
    meet = lambda a, b: set_name(members_of(a) & members_of(b))
    return FinLattice(base, set_name(vals), set_name(()), join, meet)


def members_of(name: str) -> frozenset:
    """Decode a canonical set name back into its members."""
    if not (name.startswith("{") and name.endswith("}")):
        raise UnknownElement(f"{name!r} is not a canonical set name")
    inner = name[1:-1]
    if not inner:
        return frozenset()
    return frozenset(inner.split(","))


def join_irreducibles(lat: FinLattice) -> frozenset:
    """Elements that are not the lub of any subset excluding them.

    In a finite lattice this is exactly: x differs from the lub of the
    elements strictly below it (and the bottom is never join-irreducible).
    """
    out = set()
    for x in lat.elements:
        strictly_below = [y for y in lat.base.down(x) if y != x]
        if lat.lub(strictly_below) != x:
            out.add(x)
    return frozenset(out)


def meet_closure(lat: FinLattice, members: Iterable[str]) -> frozenset:
    """Smallest superset of ``members`` closed under glbs (glb of the empty
    family is the top, which is always included)."""
    closed = set(members)
    for x in closed:
        lat.base.require(x)
    closed.add(lat.top)
    changed = True
    while changed:
        changed = False
        for x, y in list(combinations(sorted_elems(closed), 2)):
            m = lat.glb([x, y])
            if m not in closed:
                closed.add(m)
                changed = True
    return frozenset(closed)
