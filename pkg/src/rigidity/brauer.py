"""The local invariant vector of a group and its orbit combinatorics.

An inner twist is recorded by one local class per declared place.  The
vector must be coherent: the local contributions sum to zero in the
global dual target, which is exactly the condition for a family of local
classes to come from a global one.  On top of the plain vector this
module computes the twin places (where the local symmetry moves the
coordinate), the orbit of coherent symmetry flips, and the two-sided
uniformity comparison between globally realized and adelically possible
variations.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import FrozenSet, Iterable, Optional, Tuple

from ._util import natural_key, subset_cap
from .errors import CapacityError, ContractError
from .field_model import (
    Coords,
    FieldDescriptor,
    PlaceLabel,
    PlaceSymmetry,
    adelic_orbit,
    coords_key,
    global_orbit,
    sort_coords,
    stabilizer_subgroup,
)
from .invariants import (
    Family,
    GroupType,
    LocalClass,
    c_local,
    center_shape,
    h2_local,
    has_symmetry,
    sym_act,
    zero,
)


@dataclass(frozen=True)
class OmegaVector:
    """Local invariant classes at the declared finite and real places."""

    group_type: GroupType
    finite: Coords = ()
    real: Coords = ()

    def __post_init__(self):
        object.__setattr__(self, "finite", sort_coords(self.finite))
        object.__setattr__(self, "real", sort_coords(self.real))
        for lab, cls in self.finite:
            if not lab.kind.is_finite:
                raise ContractError(f"place {lab.id} is not finite")
            self._check_shape(lab, cls)
        for lab, cls in self.real:
            if not lab.kind.is_real:
                raise ContractError(f"place {lab.id} is not real")
            self._check_shape(lab, cls)

    def _check_shape(self, lab: PlaceLabel, cls: LocalClass):
        want = h2_local(self.group_type, lab.kind)
        if cls.shape != want:
            raise ContractError(
                f"place {lab.id}: class shape {cls.shape} but {self.group_type.symbol()} "
                f"carries {want} at a {lab.kind.value} place"
            )

    def finite_value(self, pid: str) -> LocalClass:
        for lab, cls in self.finite:
            if lab.id == pid:
                return cls
        raise KeyError(pid)

    def real_value(self, pid: str) -> LocalClass:
        for lab, cls in self.real:
            if lab.id == pid:
                return cls
        raise KeyError(pid)


def tate_sum(omega: OmegaVector) -> LocalClass:
    """Sum of all local contributions in the global dual target; zero means coherent."""
    t = omega.group_type
    total = zero(center_shape(t))
    for lab, cls in omega.finite + omega.real:
        total = total + c_local(t, lab.kind, cls)
    return total


def is_coherent(omega: OmegaVector) -> bool:
    return tate_sum(omega).is_zero


def sigma_flip(omega: OmegaVector) -> Coords:
    """The finite coordinates with the diagram symmetry applied everywhere."""
    t = omega.group_type
    return sort_coords((lab, sym_act(t, lab.kind, cls)) for lab, cls in omega.finite)


def inner_twin_places(omega: OmegaVector) -> Tuple[PlaceLabel, ...]:
    """Finite places where the local symmetry moves the coordinate.

    At such a place the group has a second, non-isomorphic-as-twist but
    locally isomorphic inner form; these are the only finite places where
    locally invisible variation can happen.
    """
    t = omega.group_type
    out = []
    for lab, cls in omega.finite:
        if sym_act(t, lab.kind, cls) != cls:
            out.append(lab)
    return tuple(sorted(out, key=lambda l: natural_key(l.id)))


def _admissible(t: GroupType, values, picked_sum: LocalClass, size: int) -> bool:
    if t.is_outer:
        return True
    f, r = t.family, t.rank
    if f == Family.D:
        return size % 2 == 0
    if f == Family.A and r % 2 == 1:
        half = (r + 1) // 2
        return picked_sum.value % half == 0
    return picked_sum.is_zero  # even A, E6


@dataclass(frozen=True)
class SOmegaOrbit:
    base: OmegaVector
    admissible_subsets: Tuple[FrozenSet[str], ...]
    elements: Tuple[Coords, ...]


def _flip_subset(omega: OmegaVector, ids: FrozenSet[str]) -> Coords:
    t = omega.group_type
    return sort_coords(
        (lab, sym_act(t, lab.kind, cls) if lab.id in ids else cls)
        for lab, cls in omega.finite
    )


def s_omega_orbit(omega: OmegaVector, cap: Optional[int] = None) -> SOmegaOrbit:
    """All coherent symmetry flips of the finite coordinates.

    Flipping the coordinates in a subset of the twin places keeps the
    vector globally realizable exactly when the flipped part's dual sum is
    fixed by the global symmetry; the subsets satisfying that condition
    parameterize the orbit.
    """
    if cap is None:
        cap = subset_cap()
    t = omega.group_type
    twins = inner_twin_places(omega)
    if len(twins) > cap:
        partial = _capacity_certificate(omega, twins)
        raise CapacityError(
            f"{len(twins)} twin places exceed the enumeration cap {cap}", partial
        )
    cvals = [c_local(t, lab.kind, omega.finite_value(lab.id)) for lab in twins]
    target_zero = zero(center_shape(t))
    subsets = []
    def walk(i: int, chosen, acc: LocalClass):
        if i == len(twins):
            if _admissible(t, cvals, acc, len(chosen)):
                subsets.append(frozenset(chosen))
            return
        walk(i + 1, chosen, acc)
        chosen.append(twins[i].id)
        walk(i + 1, chosen, acc + cvals[i])
        chosen.pop()
    walk(0, [], target_zero)
    elements = {_flip_subset(omega, ids) for ids in subsets}
    return SOmegaOrbit(
        base=omega,
        admissible_subsets=tuple(sorted(subsets, key=lambda s: (len(s), sorted(map(natural_key, s))))),
        elements=tuple(sorted(elements, key=coords_key)),
    )


def _capacity_certificate(omega: OmegaVector, twins) -> Tuple[Coords, ...]:
    """Try to exhibit three orbit elements cheaply before giving up."""
    t = omega.group_type
    found = {omega.finite}
    if t.is_outer:
        for lab in twins[:2]:
            found.add(_flip_subset(omega, frozenset([lab.id])))
        return tuple(sorted(found, key=coords_key))
    if t.family == Family.D:
        for i in range(min(len(twins) - 1, 3)):
            found.add(_flip_subset(omega, frozenset([twins[i].id, twins[i + 1].id])))
            if len(found) >= 3:
                break
        return tuple(sorted(found, key=coords_key))
    # cyclic targets: scan prefix sums for repeated residues
    if t.family == Family.A and t.rank % 2 == 1:
        m = (t.rank + 1) // 2
    else:
        m = center_shape(t).modulus
    seen = {0: 0}
    acc = 0
    for j, lab in enumerate(twins, start=1):
        acc = (acc + c_local(t, lab.kind, omega.finite_value(lab.id)).value) % m
        if acc in seen and len(found) < 3:
            ids = frozenset(l.id for l in twins[seen[acc]:j])
            found.add(_flip_subset(omega, ids))
        seen.setdefault(acc, j)
    return tuple(sorted(found, key=coords_key))


def pick_witness(candidates: Iterable[Coords], base: Coords) -> Coords:
    """Deterministic choice among orbit vectors: agree with the base at the
    earliest places for as long as possible, then smallest values."""
    def key(c: Coords):
        return tuple(
            ((0 if cls == bcls else 1), cls.sort_key())
            for (_, cls), (_, bcls) in zip(c, base)
        )
    return min(candidates, key=key)


@dataclass(frozen=True)
class WeakUniformityReport:
    holds: bool
    lhs: Tuple[Coords, ...]
    rhs: Tuple[Coords, ...]
    witness: Optional[Coords]


def weak_uniformity(
    omega: OmegaVector,
    f: FieldDescriptor,
    s: PlaceSymmetry,
    stabilize_real: Optional[str] = None,
    cap: Optional[int] = None,
) -> WeakUniformityReport:
    """Compare globally realized variations against adelically possible ones.

    Left side: the finite vector and its full symmetry flip, closed under
    the declared field automorphisms (restricted to the stabilizer of one
    real place when requested).  Right side: every coherent flip, closed
    under all class-preserving place permutations.  Holding means every
    locally invisible variation is globally accounted for.
    """
    sym = stabilizer_subgroup(s, f, stabilize_real) if stabilize_real else s
    fin = omega.finite
    lhs = set(global_orbit(fin, sym)) | set(global_orbit(sigma_flip(omega), sym))
    orbit = s_omega_orbit(omega, cap=cap)
    rhs = set()
    for e in orbit.elements:
        rhs.update(adelic_orbit(e, f))
    holds = lhs == rhs
    witness = None
    if not holds:
        extra = rhs - lhs
        witness = pick_witness(extra, fin) if extra else pick_witness(lhs - rhs, fin)
    return WeakUniformityReport(
        holds=holds,
        lhs=tuple(sorted(lhs, key=coords_key)),
        rhs=tuple(sorted(rhs, key=coords_key)),
        witness=witness,
    )


def plain_orbits(
    omega: OmegaVector, f: FieldDescriptor, s: PlaceSymmetry
) -> Tuple[Tuple[Coords, ...], Tuple[Coords, ...]]:
    """The one-sided orbit pair: field automorphisms only vs adelic permutations only."""
    return global_orbit(omega.finite, s), adelic_orbit(omega.finite, f)


def outer_fast_path(
    omega: OmegaVector, f: FieldDescriptor, s: PlaceSymmetry
) -> Optional[bool]:
    """Weak uniformity for outer types: at most one twin place and matching plain orbits."""
    if not omega.group_type.is_outer:
        return None
    if len(inner_twin_places(omega)) >= 2:
        return False
    glob, adel = plain_orbits(omega, f, s)
    return set(glob) == set(adel)


def inner_twin_bound(omega: OmegaVector, f: FieldDescriptor) -> bool:
    """Degree bound that forces non-rigidity once enough twin places pile up."""
    t = omega.group_type
    if t.is_outer or not has_symmetry(t):
        return False
    r = len(inner_twin_places(omega))
    if r == 0:
        return False
    if t.family == Family.A:
        m = t.rank + 1 if t.rank % 2 == 0 else (t.rank + 1) // 2
    elif t.family == Family.D:
        m = 2
    else:
        m = 3  # E6
    return f.degree < 2 ** ((r - 1) // m)
