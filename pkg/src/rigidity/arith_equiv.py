"""Finite permutation groups and almost conjugacy.

Two subgroups of a finite group are almost conjugate when they meet every
conjugacy class in the same number of elements; equivalently, the
characters induced from their trivial characters agree.  Both sides are
computed here independently (class intersection profiles vs fixed point
counts on coset spaces) and compared on every call.  The headline
criterion: almost conjugate subgroups sitting with index two in a common
normal subgroup are in fact conjugate, which is the group-theoretic engine
certifying that quadratic extensions of a Galois base field cannot be
locally-but-not-globally interchangeable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .errors import CapacityError, ContractError

Perm = Tuple[int, ...]

DEFAULT_GROUP_CAP = 10080


def perm_mul(a: Perm, b: Perm) -> Perm:
    """(a*b)(x) = a(b(x))."""
    return tuple(a[b[i]] for i in range(len(a)))


def perm_inv(a: Perm) -> Perm:
    out = [0] * len(a)
    for i, j in enumerate(a):
        out[j] = i
    return tuple(out)


def perm_from_cycles(degree: int, cycles: Sequence[Sequence[int]]) -> Perm:
    out = list(range(degree))
    for cyc in cycles:
        for a, b in zip(cyc, tuple(cyc[1:]) + (cyc[0],)):
            if not (0 <= a < degree):
                raise ContractError(f"point {a} outside degree {degree}")
            out[a] = b
    if sorted(out) != list(range(degree)):
        raise ContractError("cycles do not define a permutation")
    return tuple(out)


def perm_cycles(p: Perm) -> Tuple[Tuple[int, ...], ...]:
    seen, out = set(), []
    for start in range(len(p)):
        if start in seen or p[start] == start:
            continue
        cyc = [start]
        seen.add(start)
        nxt = p[start]
        while nxt != start:
            cyc.append(nxt)
            seen.add(nxt)
            nxt = p[nxt]
        out.append(tuple(cyc))
    return tuple(out)


class PermGroup:
    """A finite permutation group with cached element list and classes."""

    def __init__(self, degree: int, generators: Sequence[Perm], name: str = "",
                 cap: int = DEFAULT_GROUP_CAP):
        self.degree = degree
        self.name = name
        self.generators = [tuple(g) for g in generators]
        for g in self.generators:
            if len(g) != degree or sorted(g) != list(range(degree)):
                raise ContractError(f"not a permutation of degree {degree}: {g}")
        self.cap = cap
        self._elements: Optional[List[Perm]] = None
        self._index: Optional[Dict[Perm, int]] = None
        self._classes: Optional[List[Tuple[Perm, ...]]] = None
        self._subgroups: Optional[List[FrozenSet[Perm]]] = None

    @property
    def identity(self) -> Perm:
        return tuple(range(self.degree))

    def elements(self) -> List[Perm]:
        if self._elements is None:
            elems = {self.identity}
            frontier = [self.identity]
            while frontier:
                nxt = []
                for e in frontier:
                    for g in self.generators:
                        h = perm_mul(g, e)
                        if h not in elems:
                            elems.add(h)
                            nxt.append(h)
                            if len(elems) > self.cap:
                                raise CapacityError(
                                    f"group order exceeds the cap {self.cap}"
                                )
                frontier = nxt
            self._elements = sorted(elems)
            self._index = {e: i for i, e in enumerate(self._elements)}
        return self._elements

    def order(self) -> int:
        return len(self.elements())

    def __contains__(self, p: Perm) -> bool:
        self.elements()
        return p in self._index

    def conjugacy_classes(self) -> List[Tuple[Perm, ...]]:
        """Partition of the element list into conjugacy classes, canonically sorted."""
        if self._classes is None:
            elems = self.elements()
            unassigned = set(elems)
            classes = []
            while unassigned:
                rep = min(unassigned)
                orbit = {rep}
                frontier = [rep]
                while frontier:
                    nxt = []
                    for x in frontier:
                        for g in self.generators:
                            y = perm_mul(perm_mul(g, x), perm_inv(g))
                            if y not in orbit:
                                orbit.add(y)
                                nxt.append(y)
                    frontier = nxt
                unassigned -= orbit
                classes.append(tuple(sorted(orbit)))
            self._classes = sorted(classes, key=lambda c: (len(c), c[0]))
        return self._classes

    def subgroups(self) -> List[FrozenSet[Perm]]:
        """All subgroups, by closing known ones under one extra cyclic subgroup at a time."""
        if self._subgroups is not None:
            return self._subgroups
        elems = self.elements()
        cyclics: Dict[FrozenSet[Perm], Perm] = {}
        for x in elems:
            c = frozenset(_cyclic(x, self.identity))
            cyclics.setdefault(c, x)
        trivial = frozenset([self.identity])
        known = {trivial: ()}  # subgroup -> generating tuple
        frontier = [trivial]
        while frontier:
            nxt = []
            for sub in frontier:
                gens = known[sub]
                for cyc, x in cyclics.items():
                    if cyc <= sub:
                        continue
                    new_gens = gens + (x,)
                    closure = _mulclose(new_gens, self.identity)
                    key = frozenset(closure)
                    if key not in known:
                        known[key] = new_gens
                        nxt.append(key)
            frontier = nxt
        self._subgroups = sorted(known, key=lambda s: (len(s), sorted(s)))
        return self._subgroups

    def normal_subgroups(self) -> List[FrozenSet[Perm]]:
        out = []
        for sub in self.subgroups():
            if all(
                frozenset(perm_mul(perm_mul(g, x), perm_inv(g)) for x in sub) == sub
                for g in self.generators
            ):
                out.append(sub)
        return out


def _cyclic(x: Perm, e: Perm) -> List[Perm]:
    out = [e]
    y = x
    while y != e:
        out.append(y)
        y = perm_mul(y, x)
    return out


def _mulclose(gens: Sequence[Perm], e: Perm) -> List[Perm]:
    elems = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                h = perm_mul(g, a)
                if h not in elems:
                    elems.add(h)
                    nxt.append(h)
        frontier = nxt
    return sorted(elems)


@dataclass(frozen=True)
class Subgroup:
    """A subgroup given by its element set; closure is verified at construction."""

    group: PermGroup = field(compare=False)
    members: FrozenSet[Perm] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.group.identity not in self.members:
            raise ContractError("subgroup must contain the identity")
        mset = self.members
        for a in mset:
            if a not in self.group:
                raise ContractError("subgroup element outside the ambient group")
            for b in mset:
                if perm_mul(a, b) not in mset:
                    raise ContractError("subgroup not closed under composition")

    def order(self) -> int:
        return len(self.members)


def conjugacy_classes(G: PermGroup) -> List[Tuple[Perm, ...]]:
    return G.conjugacy_classes()


def _profile(G: PermGroup, U: Subgroup) -> Tuple[int, ...]:
    return tuple(len(U.members.intersection(c)) for c in G.conjugacy_classes())


def _induced_character(G: PermGroup, U: Subgroup) -> Tuple[int, ...]:
    """Value on each conjugacy class of the character induced from the trivial
    one on U, computed as fixed points on the coset space."""
    elems = G.elements()
    cosets = []
    assigned = set()
    for x in elems:
        if x in assigned:
            continue
        coset = frozenset(perm_mul(x, u) for u in U.members)
        assigned |= coset
        cosets.append(coset)
    values = []
    for cls in G.conjugacy_classes():
        g = cls[0]
        fixed = sum(
            1 for coset in cosets
            if perm_mul(g, next(iter(coset))) in coset
        )
        values.append(fixed)
    return tuple(values)


def almost_conjugate(G: PermGroup, U1: Subgroup, U2: Subgroup) -> bool:
    """Equal class intersection profiles, cross-checked against induced characters."""
    if U1.order() != U2.order():
        return False
    by_profile = _profile(G, U1) == _profile(G, U2)
    by_character = _induced_character(G, U1) == _induced_character(G, U2)
    if by_profile != by_character:
        raise ContractError(
            "class profiles and induced characters disagree; this cannot happen"
        )
    return by_profile


def are_conjugate(G: PermGroup, U1: Subgroup, U2: Subgroup) -> bool:
    if U1.order() != U2.order():
        return False
    target = U2.members
    for g in G.elements():
        gi = perm_inv(g)
        if frozenset(perm_mul(perm_mul(g, u), gi) for u in U1.members) == target:
            return True
    return False


def common_normal_index2(G: PermGroup, U1: Subgroup, U2: Subgroup) -> Optional[Subgroup]:
    """Some normal subgroup containing both inputs with index two, if one exists."""
    want = 2 * U1.order()
    if U2.order() != U1.order():
        return None
    for n in G.normal_subgroups():
        if len(n) == want and U1.members <= n and U2.members <= n:
            return Subgroup(G, n)
    return None


def verify_prop_almost_conjugate(G: PermGroup):
    """Scan every index-two pair inside every normal subgroup.

    Returns (True, None) when almost conjugate implies conjugate throughout,
    otherwise (False, counterexample pair).  No counterexample should ever
    exist; the scan is the verification.
    """
    subgroups = G.subgroups()
    for n in G.normal_subgroups():
        if len(n) % 2:
            continue
        half = len(n) // 2
        inside = [s for s in subgroups if len(s) == half and s <= n]
        for i, s1 in enumerate(inside):
            for s2 in inside[i + 1:]:
                u1, u2 = Subgroup(G, s1), Subgroup(G, s2)
                if almost_conjugate(G, u1, u2) and not are_conjugate(G, u1, u2):
                    return False, (u1, u2)
    return True, None


def hbar_certificate(G: PermGroup, N: Subgroup, pairs) -> bool:
    """Certify that every almost conjugate pair of index-two subgroups of a
    normal subgroup is conjugate in the ambient group."""
    if frozenset(
        perm_mul(perm_mul(g, x), perm_inv(g)) for g in G.generators for x in N.members
    ) != N.members:
        raise ContractError("N must be normal in G")
    for U1, U2 in pairs:
        for U in (U1, U2):
            if not U.members <= N.members or 2 * U.order() != N.order():
                raise ContractError("pair members must have index two in N")
        if almost_conjugate(G, U1, U2) and not are_conjugate(G, U1, U2):
            return False
    return True


def mackey_decomposition_holds(G: PermGroup, N: Subgroup, U: Subgroup) -> bool:
    """Check that inducing the trivial character of U to G and restricting to N
    equals [G:N] copies of the trivial character plus the order-two characters
    with kernels the G-conjugates of U, one per coset of N."""
    if not U.members <= N.members or 2 * U.order() != N.order():
        raise ContractError("U must have index two in N")
    elems = G.elements()
    # coset representatives of N\G
    reps, covered = [], set()
    for x in elems:
        if x not in covered:
            reps.append(x)
            covered |= {perm_mul(n, x) for n in N.members}
    index = len(reps)
    conjugates = []
    for g in reps:
        gi = perm_inv(g)
        conjugates.append(frozenset(perm_mul(perm_mul(g, u), gi) for u in U.members))
    cosets = []
    assigned = set()
    for x in elems:
        if x in assigned:
            continue
        coset = frozenset(perm_mul(x, u) for u in U.members)
        assigned |= coset
        cosets.append(coset)
    for n in N.members:
        induced = sum(1 for c in cosets if perm_mul(n, next(iter(c))) in c)
        rhs = index + sum(1 if n in k else -1 for k in conjugates)
        if induced != rhs:
            return False
    return True
