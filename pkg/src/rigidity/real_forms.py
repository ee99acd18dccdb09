"""Real forms and their Galois cohomology bookkeeping.

For each simply connected real form the tables here give the size of its
first cohomology set, the size of the first cohomology of its center,
the component count of its adjoint group, and the derived kernel order of
the map into adjoint cohomology.  The single bit the classifier consumes
is whether that map has trivial image: real places whose form fails this
gate always admit a locally invisible replacement.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

from .errors import ContractError, MissingRealClassError, OutOfScopeError
from .invariants import (
    Family,
    GroupType,
    LocalClass,
    PlaceKind,
    h2_local,
    zero,
)

NAMED = ("SL_R", "SL_H", "SU", "Spin", "SpinStar", "Sp_R", "Sp",
         "E7_split", "E7_quaternionic", "E7_hermitian", "E7_compact")
GENERIC = ("SplitForm", "CompactForm", "AnisotropicOther")


@dataclass(frozen=True)
class RealFormTag:
    """A simply connected real form, by name and parameters.

    Named tags carry their parameters; the generic tags (``SplitForm``,
    ``CompactForm``, ``AnisotropicOther``) carry the ambient family and
    rank instead and stand for forms the classifier never needs to tell
    apart further.  ``outer`` is only meaningful for ``AnisotropicOther``.
    """

    name: str
    params: Tuple[int, ...] = ()
    family: Optional[Family] = None
    rank: int = 0
    outer: bool = False

    def __post_init__(self):
        if self.name not in NAMED + GENERIC:
            raise ValueError(f"unknown real form tag {self.name!r}")
        n_params = {"SL_R": 1, "SL_H": 1, "SU": 2, "Spin": 2, "SpinStar": 1,
                    "Sp_R": 1, "Sp": 2}.get(self.name, 0)
        if len(self.params) != n_params:
            raise ValueError(f"{self.name} takes {n_params} parameter(s)")
        if self.name in ("SU", "Spin", "Sp") and self.params[0] < self.params[1]:
            object.__setattr__(self, "params", (self.params[1], self.params[0]))
        if self.name in ("Sp_R", "SpinStar") and self.params[0] % 2 != 0:
            raise ValueError(f"{self.name} takes an even parameter")
        if self.name in GENERIC and self.family is None:
            raise ValueError(f"{self.name} needs the ambient family and rank")

    def signature(self) -> Tuple[Family, int, bool]:
        """(family, rank, outer at the real place) of the form."""
        n = self.name
        p = self.params
        if n == "SL_R":
            return Family.A, p[0] - 1, False
        if n == "SL_H":
            return Family.A, 2 * p[0] - 1, False
        if n == "SU":
            return Family.A, p[0] + p[1] - 1, True
        if n == "Spin":
            total = p[0] + p[1]
            if total % 2 == 1:
                return Family.B, (total - 1) // 2, False
            m = total // 2
            return Family.D, m, p[0] % 2 != m % 2
        if n == "SpinStar":
            m = p[0] // 2
            return Family.D, m, m % 2 == 1
        if n == "Sp_R":
            return Family.C, p[0] // 2, False
        if n == "Sp":
            return Family.C, p[0] + p[1], False
        if n.startswith("E7"):
            return Family.E7, 7, False
        if n == "SplitForm":
            return self.family, self.rank, False
        if n == "CompactForm":
            outer = (
                (self.family == Family.A and self.rank >= 2)
                or (self.family == Family.D and self.rank % 2 == 1)
                or self.family == Family.E6
            )
            return self.family, self.rank, outer
        return self.family, self.rank, self.outer

    def __str__(self):
        if self.name == "SL_R":
            return f"SL({self.params[0]},R)"
        if self.name == "SL_H":
            return f"SL({self.params[0]},H)"
        if self.name == "SU":
            return f"SU({self.params[0]},{self.params[1]})"
        if self.name == "Spin":
            return f"Spin({self.params[0]},{self.params[1]})"
        if self.name == "SpinStar":
            return f"Spin*({self.params[0]})"
        if self.name == "Sp_R":
            return f"Sp({self.params[0]},R)"
        if self.name == "Sp":
            return f"Sp({self.params[0]},{self.params[1]})"
        if self.name.startswith("E7"):
            return f"E7 {self.name[3:]}"
        fam = f"{self.family.value}{'' if self.family.value[0] in 'EFG' else self.rank}"
        return f"{self.name}[{fam}]"


@dataclass(frozen=True)
class RealStats:
    h1_size: int
    z_h1_size: int
    pi0_size: int
    kernel_size: int

    def __post_init__(self):
        if self.z_h1_size % self.pi0_size != 0:
            raise ContractError("center cohomology size not divisible by component count")
        if self.kernel_size != self.z_h1_size // self.pi0_size:
            raise ContractError("kernel size inconsistent with the quotient formula")
        if self.kernel_size > self.h1_size:
            raise ContractError("kernel larger than the whole cohomology set")


DELTA_TABLE = (
    (3, 2, 2, 2),
    (2, 1, 1, 0),
    (2, 1, 0, 0),
    (2, 0, 0, 0),
)


def delta(r: int, s: int) -> int:
    if r < 0 or s < 0:
        raise ContractError("delta takes nonnegative arguments")
    return DELTA_TABLE[r % 4][s % 4]


def real_stats(tag: RealFormTag) -> RealStats:
    """Cohomology orders of a named real form; generic tags are not tabulated."""
    n, p = tag.name, tag.params

    def stats(h1, z, pi0):
        return RealStats(h1, z, pi0, z // pi0)

    if n == "SL_R":
        m = p[0]
        two = 2 if m % 2 == 0 else 1
        return stats(1, two, two)
    if n == "SL_H":
        return stats(2, 2, 1)
    if n == "SU":
        r, s = p
        z = 2 if (r + s) % 2 == 0 else 1
        pi0 = 2 if r == s else 1
        return stats(r // 2 + s // 2 + 1, z, pi0)
    if n == "Spin":
        r, s = p
        if (r + s) % 4 == 0:
            z = 4 if r % 2 == 0 else 1
        else:
            z = 2
        if r * s == 0 or (r % 2 == 1 and s % 2 == 1 and r != s):
            pi0 = 1
        elif r == s and r % 2 == 0:
            pi0 = 4
        else:
            pi0 = 2
        return stats((r + s) // 4 + delta(r, s), z, pi0)
    if n == "SpinStar":
        half = p[0] // 2
        if half % 2 == 0:
            return stats(2, 4, 2)
        return stats(2, 2, 1)
    if n == "Sp_R":
        return stats(1, 2, 2)
    if n == "Sp":
        r, s = p
        return stats(r + s + 1, 2, 2)
    if n == "E7_split":
        return stats(2, 2, 2)
    if n == "E7_quaternionic":
        return stats(4, 2, 1)
    if n == "E7_hermitian":
        return stats(2, 2, 2)
    if n == "E7_compact":
        return stats(4, 2, 1)
    raise ContractError(f"no tabulated cohomology data for {tag}")


def q_image_trivial(tag: RealFormTag) -> bool:
    """Whether the whole first cohomology of the form maps to the adjoint base point."""
    fam = tag.signature()[0]
    if fam in (Family.E6, Family.E8, Family.F4, Family.G2):
        return False  # adjoint cohomology equals the form's own and is never trivial
    if tag.name in GENERIC:
        return False  # generic tags stand for forms outside the gate by construction
    st = real_stats(tag)
    return st.kernel_size == st.h1_size


ACCIDENTAL_ISOMORPHISMS = (
    (RealFormTag("SU", (2, 0)), RealFormTag("SL_H", (1,))),
    (RealFormTag("SU", (1, 1)), RealFormTag("SL_R", (2,))),
    (RealFormTag("Spin", (3, 2)), RealFormTag("Sp_R", (4,))),
    (RealFormTag("Spin", (6, 2)), RealFormTag("SpinStar", (8,))),
)


def trivial_image_forms(t: GroupType, bound: int = 100) -> List[RealFormTag]:
    """All real forms of the given type passing the trivial-image gate.

    Enumerates the parameter space of the type (which is finite once the
    rank is fixed) and keeps the forms whose kernel exhausts their
    cohomology.  ``bound`` caps the parameter total as a safety net.
    """
    if t.family == Family.D and t.rank == 4:
        raise OutOfScopeError("triality type D4 is out of scope")
    f, r, outer = t.family, t.rank, t.is_outer
    candidates: List[RealFormTag] = []
    if f == Family.A:
        m = r + 1
        if m > bound:
            raise ContractError(f"parameter total {m} exceeds bound {bound}")
        if outer:
            candidates += [RealFormTag("SU", (m - s, s)) for s in range(m // 2 + 1)]
        else:
            candidates.append(RealFormTag("SL_R", (m,)))
            if m % 2 == 0:
                candidates.append(RealFormTag("SL_H", (m // 2,)))
    elif f == Family.B:
        total = 2 * r + 1
        if total > bound:
            raise ContractError(f"parameter total {total} exceeds bound {bound}")
        candidates += [RealFormTag("Spin", (total - s, s)) for s in range(total // 2 + 1)]
    elif f == Family.C:
        if r > bound:
            raise ContractError(f"parameter total {r} exceeds bound {bound}")
        candidates.append(RealFormTag("Sp_R", (2 * r,)))
        candidates += [RealFormTag("Sp", (r - s, s)) for s in range(r // 2 + 1)]
    elif f == Family.D:
        total = 2 * r
        if total > bound:
            raise ContractError(f"parameter total {total} exceeds bound {bound}")
        for s in range(total // 2 + 1):
            tag = RealFormTag("Spin", (total - s, s))
            if tag.signature()[2] == outer:
                candidates.append(tag)
        star = RealFormTag("SpinStar", (total,))
        if star.signature()[2] == outer:
            candidates.append(star)
    elif f == Family.E7:
        candidates += [RealFormTag(n) for n in
                       ("E7_split", "E7_quaternionic", "E7_hermitian", "E7_compact")]
    else:
        candidates += [
            RealFormTag("SplitForm", family=f, rank=r),
            RealFormTag("CompactForm", family=f, rank=r),
        ]
    return [tag for tag in candidates if q_image_trivial(tag)]


def real_class(
    tag: RealFormTag, ambient: GroupType, supplied: Optional[LocalClass] = None
) -> LocalClass:
    """The local invariant class a real form pins down, when it pins one down.

    Split and quasi-split forms sit at the base point; the quaternionic
    linear forms, the compact-type symplectic forms, the even-parameter
    unitary forms, and the even star forms have forced classes.  All other
    forms (general spin forms in particular) carry a caller-supplied class
    that is validated only through the coherence of the whole vector.
    """
    fam, rank, outer = tag.signature()
    kind = PlaceKind.REAL_OUTER if outer else PlaceKind.REAL_INNER
    shape = h2_local(ambient, kind)
    if shape.kind == "trivial":
        forced: Optional[LocalClass] = zero(shape)
    elif tag.name in ("SL_R", "Sp_R", "E7_split", "E7_hermitian", "SplitForm"):
        forced = zero(shape)
    elif tag.name == "SL_H":
        forced = LocalClass(shape, 1)
    elif tag.name == "Sp":
        forced = LocalClass(shape, 1)
    elif tag.name in ("E7_quaternionic", "E7_compact"):
        forced = LocalClass(shape, 1)
    elif tag.name == "SU":
        r, s = tag.params
        forced = LocalClass(shape, ((r - s) // 2) % 2) if (r + s) % 2 == 0 else zero(shape)
    elif tag.name == "SpinStar" and (tag.params[0] // 2) % 2 == 0:
        forced = LocalClass(shape, (1, 0))
    elif tag.name == "Spin" and abs(tag.params[0] - tag.params[1]) <= 2:
        # split and quasi-split spin forms sit at the base point
        forced = zero(shape)
    elif tag.name == "Spin" and tag.params in ((4, 1), (5, 0)):
        # accidental isomorphisms with compact-type symplectic forms
        forced = LocalClass(shape, 1)
    else:
        forced = None
    if forced is not None:
        if supplied is not None and supplied != forced:
            raise ContractError(
                f"{tag} pins its real class to {forced}, got {supplied}"
            )
        return forced
    if supplied is None:
        raise MissingRealClassError(
            f"{tag} does not determine its real class; supply one explicitly"
        )
    if supplied.shape != shape:
        raise ContractError(f"real class for {tag} must have shape {shape}")
    return supplied


def partner_form(
    tag: RealFormTag, ambient: GroupType, kind: PlaceKind, cls: LocalClass
) -> RealFormTag:
    """A different real form in the same local class fiber as ``tag``.

    Exists whenever the trivial-image gate fails at the place, which is
    the only situation the classifier asks for a partner in.
    """
    primary = form_for_class(ambient, kind, cls)
    if primary != tag and not q_image_trivial(primary):
        # forms passing the trivial-image gate have no extra twists in their
        # fiber, so they can never serve as the replacement form
        return primary
    fam, rank, outer = tag.signature()
    if fam == Family.A:
        r, s = tag.params  # only unitary forms land here
        if (r + s) % 2 == 0:
            return RealFormTag("SU", (r - 2, s + 2) if r - 2 >= s + 2 else (r + 2, s - 2))
        return RealFormTag("SU", ((r + s - 1, 1) if s == 0 else (r + s, 0)))
    if fam == Family.C:
        return RealFormTag("Sp", (rank - 1, 1))
    if fam == Family.E7:
        return RealFormTag("E7_hermitian") if cls.is_zero else RealFormTag("E7_compact")
    if fam in (Family.B, Family.D):
        aniso = RealFormTag("AnisotropicOther", family=fam, rank=rank, outer=outer)
        if tag != aniso:
            return aniso
        if fam == Family.B:
            return RealFormTag("Spin", (rank + 2, rank - 1))
        off = 4 if not outer else 3
        return RealFormTag("Spin", (rank + off, rank - off))
    if tag.name == "AnisotropicOther":
        if outer:
            return RealFormTag("CompactForm", family=fam, rank=rank)
        return RealFormTag("SplitForm", family=fam, rank=rank)
    return RealFormTag("AnisotropicOther", family=fam, rank=rank, outer=outer)


def form_for_class(
    ambient: GroupType, kind: PlaceKind, cls: LocalClass
) -> RealFormTag:
    """A canonical real form tag realizing a given real class.

    Used when a witness flips a real coordinate and needs a concrete form
    to go with the new class.
    """
    fam, rank = ambient.family, ambient.rank
    if fam == Family.A and kind == PlaceKind.REAL_INNER and rank % 2 == 1:
        return RealFormTag("SL_H", ((rank + 1) // 2,)) if cls.value == 1 else \
            RealFormTag("SL_R", (rank + 1,))
    if fam == Family.A and kind == PlaceKind.REAL_INNER:
        return RealFormTag("SL_R", (rank + 1,))
    if fam == Family.A and kind == PlaceKind.REAL_OUTER:
        m = rank + 1
        if cls.shape.kind == "trivial" or cls.value == 0:
            return RealFormTag("SU", ((m + 1) // 2, m // 2))
        return RealFormTag("SU", (m // 2 + 1, m // 2 - 1))
    if fam == Family.C:
        return RealFormTag("Sp_R", (2 * rank,)) if cls.value == 0 else \
            RealFormTag("Sp", (rank, 0))
    if fam == Family.E7:
        return RealFormTag("E7_split") if cls.value == 0 else RealFormTag("E7_quaternionic")
    if fam == Family.B:
        return RealFormTag("Spin", (rank + 1, rank)) if cls.is_zero else \
            RealFormTag("AnisotropicOther", family=fam, rank=rank)
    if fam == Family.D and kind == PlaceKind.REAL_INNER:
        if rank % 2 == 0:
            if cls.value == (1, 0):
                return RealFormTag("SpinStar", (2 * rank,))
            if cls.value == (0, 0):
                return RealFormTag("Spin", (rank, rank))
            return RealFormTag("AnisotropicOther", family=fam, rank=rank)
        return RealFormTag("Spin", (rank, rank)) if cls.is_zero else \
            RealFormTag("AnisotropicOther", family=fam, rank=rank)
    if fam == Family.D:
        if cls.is_zero:
            return RealFormTag("Spin", (rank + 1, rank - 1))
        if rank % 2 == 1:
            return RealFormTag("SpinStar", (2 * rank,))
        return RealFormTag("AnisotropicOther", family=fam, rank=rank, outer=True)
    outer = kind == PlaceKind.REAL_OUTER
    if cls.is_zero and not outer:
        return RealFormTag("SplitForm", family=fam, rank=rank)
    return RealFormTag("AnisotropicOther", family=fam, rank=rank, outer=outer)
