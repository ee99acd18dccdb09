"""Finite local-global data of the base number field.

A field enters the engine through the places the user declares: real
places, a count of complex places, and the finite places that may carry
invariants.  Finite places are tagged with an isomorphism class of
completions (the "adelic class"); the field automorphisms that stabilize
the defining square class are supplied as permutations of the declared
places.  Orbits on coordinate vectors under those permutations, and under
arbitrary class-preserving permutations, are the two sides of every
uniformity condition downstream.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, Optional, Tuple

from ._util import natural_key
from .errors import ValidationError
from .invariants import LocalClass, PlaceKind

Coords = Tuple[Tuple["PlaceLabel", LocalClass], ...]


class HbarFiber(str, Enum):
    TRIVIAL = "trivial"
    NONTRIVIAL = "nontrivial"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class PlaceLabel:
    id: str
    kind: PlaceKind
    adelic_class: Optional[str] = None

    def class_key(self) -> str:
        # unlabelled places sit in their own singleton class
        return self.adelic_class if self.adelic_class is not None else f"#{self.id}"


@dataclass(frozen=True)
class FieldDescriptor:
    degree: int
    real_places: Tuple[PlaceLabel, ...] = ()
    complex_place_count: int = 0
    finite_places: Tuple[PlaceLabel, ...] = ()
    locally_determined: bool = True
    galois_over_q: bool = False
    hbar_fiber: HbarFiber = HbarFiber.UNKNOWN

    def __post_init__(self):
        # canonical place order throughout the engine
        object.__setattr__(
            self, "real_places",
            tuple(sorted(self.real_places, key=lambda p: natural_key(p.id))),
        )
        object.__setattr__(
            self, "finite_places",
            tuple(sorted(self.finite_places, key=lambda p: natural_key(p.id))),
        )

    def place(self, pid: str) -> PlaceLabel:
        for p in self.finite_places + self.real_places:
            if p.id == pid:
                return p
        raise KeyError(pid)

    def declared_ids(self) -> Tuple[str, ...]:
        return tuple(p.id for p in self.finite_places + self.real_places)


@dataclass(frozen=True)
class PlacePerm:
    """A permutation of place ids, stored by its moved points."""

    moved: Tuple[Tuple[str, str], ...] = ()

    def __post_init__(self):
        src = [a for a, _ in self.moved]
        dst = [b for _, b in self.moved]
        if len(set(src)) != len(src) or sorted(src) != sorted(dst):
            raise ValidationError([f"not a permutation: {self.moved}"])
        object.__setattr__(
            self, "moved", tuple(sorted((a, b) for a, b in self.moved if a != b))
        )

    @staticmethod
    def from_mapping(mapping: Dict[str, str]) -> "PlacePerm":
        return PlacePerm(tuple(mapping.items()))

    @staticmethod
    def from_cycles(cycles: Iterable[Tuple[str, ...]]) -> "PlacePerm":
        mapping: Dict[str, str] = {}
        for cyc in cycles:
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                if a in mapping:
                    raise ValidationError([f"place {a} occurs twice in cycle notation"])
                mapping[a] = b
        return PlacePerm.from_mapping(mapping)

    def apply(self, pid: str) -> str:
        for a, b in self.moved:
            if a == pid:
                return b
        return pid

    def compose(self, other: "PlacePerm") -> "PlacePerm":
        """self after other: (self * other)(x) = self(other(x))."""
        support = {a for a, _ in self.moved} | {a for a, _ in other.moved}
        return PlacePerm.from_mapping({x: self.apply(other.apply(x)) for x in support})

    def is_identity(self) -> bool:
        return not self.moved

    def cycles(self) -> Tuple[Tuple[str, ...], ...]:
        support = sorted({a for a, _ in self.moved}, key=natural_key)
        seen, out = set(), []
        for start in support:
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            nxt = self.apply(start)
            while nxt != start:
                cyc.append(nxt)
                seen.add(nxt)
                nxt = self.apply(nxt)
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return tuple(out)

    def __str__(self):
        if self.is_identity():
            return "()"
        return "".join("(" + " ".join(c) + ")" for c in self.cycles())


IDENTITY = PlacePerm()


@dataclass(frozen=True)
class PlaceSymmetry:
    """Generators of the square-class-stabilizing field automorphisms, as place permutations."""

    generators: Tuple[PlacePerm, ...] = ()

    def group(self, cap: int = 100000) -> Tuple[PlacePerm, ...]:
        elems = {IDENTITY}
        frontier = [IDENTITY]
        while frontier:
            nxt = []
            for e in frontier:
                for g in self.generators:
                    h = g.compose(e)
                    if h not in elems:
                        elems.add(h)
                        nxt.append(h)
                        if len(elems) > cap:
                            raise ValidationError([f"symmetry group exceeds cap {cap}"])
            frontier = nxt
        return tuple(sorted(elems, key=lambda p: p.moved))


TRIVIAL_SYMMETRY = PlaceSymmetry()


def validate(f: FieldDescriptor, s: PlaceSymmetry) -> None:
    """Check every field and symmetry invariant; raise ValidationError listing all failures."""
    issues = []
    if f.degree < 1:
        issues.append("degree must be positive")
    if f.complex_place_count < 0:
        issues.append("complex place count cannot be negative")
    ids = f.declared_ids()
    if len(set(ids)) != len(ids):
        issues.append("duplicate place ids")
    for p in f.finite_places:
        if not p.kind.is_finite:
            issues.append(f"place {p.id}: declared finite but kind is {p.kind.value}")
    for p in f.real_places:
        if not p.kind.is_real:
            issues.append(f"place {p.id}: declared real but kind is {p.kind.value}")
        if p.adelic_class is not None:
            issues.append(f"place {p.id}: real places carry no adelic class")
    by_class: Dict[str, PlaceKind] = {}
    for p in f.finite_places:
        k = by_class.setdefault(p.class_key(), p.kind)
        if k != p.kind:
            issues.append(
                f"place {p.id}: adelic class {p.class_key()} mixes split and non-split places"
            )
    if f.degree < len(f.real_places) + 2 * f.complex_place_count:
        issues.append("degree smaller than the declared infinite places allow")
    if f.galois_over_q:
        if f.hbar_fiber == HbarFiber.NONTRIVIAL:
            issues.append("a Galois base field always has trivial square-class fibers")
        if not f.locally_determined:
            issues.append("a Galois base field is locally determined")
        if f.real_places and len(f.real_places) != f.degree:
            issues.append("a Galois field is totally real or totally imaginary")
    if f.degree == 1:
        if len(f.real_places) != 1 or f.complex_place_count != 0:
            issues.append("a degree 1 field has exactly one real place and no complex ones")
        if not f.locally_determined:
            issues.append("a degree 1 field is locally determined")
        if any(g.moved for g in s.generators):
            issues.append("a degree 1 field has no nontrivial automorphisms")
        classes = [p.class_key() for p in f.finite_places]
        if len(set(classes)) != len(classes):
            issues.append("over the rationals all completions are pairwise non-isomorphic")
    declared = set(ids)
    label_of = {p.id: p for p in f.finite_places + f.real_places}
    for i, g in enumerate(s.generators, start=1):
        for a, b in g.moved:
            if a not in declared or b not in declared:
                issues.append(f"generator {i}: moves undeclared place {a if a not in declared else b}")
                continue
            pa, pb = label_of[a], label_of[b]
            if pa.kind != pb.kind:
                issues.append(f"generator {i}: maps {a} ({pa.kind.value}) to {b} ({pb.kind.value})")
            if pa.kind.is_finite and pa.class_key() != pb.class_key():
                issues.append(f"generator {i}: maps {a} outside its adelic class")
    if not issues:
        try:
            order = len(s.group(cap=max(2 * f.degree, 16)))
            if f.degree % order != 0:
                issues.append(f"symmetry group order {order} does not divide degree {f.degree}")
        except ValidationError:
            issues.append("symmetry group order exceeds the degree bound")
    if issues:
        raise ValidationError(issues)


# ---------------------------------------------------------------------------
# coordinate vectors and orbits

def sort_coords(pairs: Iterable[Tuple[PlaceLabel, LocalClass]]) -> Coords:
    return tuple(sorted(pairs, key=lambda e: natural_key(e[0].id)))


def coords_key(coords: Coords):
    return tuple(cls.sort_key() for _, cls in coords)


def apply_perm(coords: Coords, perm: PlacePerm) -> Coords:
    """Push a coordinate vector forward along a place permutation."""
    label_of = {lab.id: lab for lab, _ in coords}
    out = []
    for lab, cls in coords:
        target = perm.apply(lab.id)
        if target not in label_of:
            raise ValidationError([f"permutation moves {lab.id} outside the declared support"])
        out.append((label_of[target], cls))
    return sort_coords(out)


def _canonical(orbit) -> Tuple[Coords, ...]:
    return tuple(sorted(orbit, key=coords_key))


def global_orbit(coords: Coords, s: PlaceSymmetry) -> Tuple[Coords, ...]:
    """Orbit of a coordinate vector under the declared field automorphisms."""
    seen = {coords}
    frontier = [coords]
    while frontier:
        nxt = []
        for c in frontier:
            for g in s.generators:
                d = apply_perm(c, g)
                if d not in seen:
                    seen.add(d)
                    nxt.append(d)
        frontier = nxt
    return _canonical(seen)


def adelic_orbit(coords: Coords, f: Optional[FieldDescriptor] = None) -> Tuple[Coords, ...]:
    """All vectors obtained by permuting coordinates within each adelic class.

    The values themselves never move between classes: isomorphisms of
    completions act trivially on the local invariants, so only the
    placement within a class is free.  Output order is canonical and
    independent of how the places were declared.
    """
    finite = [(lab, cls) for lab, cls in coords if lab.kind.is_finite]
    rest = [(lab, cls) for lab, cls in coords if not lab.kind.is_finite]
    groups: Dict[str, list] = {}
    for lab, cls in finite:
        groups.setdefault(lab.class_key(), []).append((lab, cls))
    per_class = []
    for key in sorted(groups):
        labs = [lab for lab, _ in groups[key]]
        vals = [cls for _, cls in groups[key]]
        arrangements = {tuple(p) for p in itertools.permutations(vals)}
        per_class.append([list(zip(labs, arr)) for arr in sorted(arrangements, key=lambda a: [c.sort_key() for c in a])])
    orbit = set()
    for combo in itertools.product(*per_class) if per_class else [()]:
        pairs = list(rest)
        for part in combo:
            pairs.extend(part)
        orbit.add(sort_coords(pairs))
    return _canonical(orbit)


def stabilizer_subgroup(s: PlaceSymmetry, f: FieldDescriptor, fixed: str) -> PlaceSymmetry:
    """Subgroup of the generated group fixing one declared real place."""
    if fixed not in {p.id for p in f.real_places}:
        raise ValidationError([f"{fixed} is not a declared real place"])
    elems = [g for g in s.group() if g.apply(fixed) == fixed]
    return PlaceSymmetry(tuple(g for g in elems if not g.is_identity()))
