"""The rigidity verdict engine.

``classify`` routes a validated descriptor through the classification
branches by family, rank parity, inner/outer kind, and the real place
layout, and returns a verdict carrying a reason trace.  Negative verdicts
come with an explicit witness descriptor: a group with identical finite
adelic data that is not related to the input by any field automorphism.
Every emitted witness is machine checked before it leaves this module.

``specialize_q`` and ``specialize_quasisplit`` evaluate the two
special-case checklists (rational base field, quasi-split over a Galois
field) directly; they exist as independent cross-checks of ``classify``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

from ._util import natural_key, subset_cap
from .brauer import (
    OmegaVector,
    inner_twin_bound,
    inner_twin_places,
    pick_witness,
    plain_orbits,
    s_omega_orbit,
    sigma_flip,
    tate_sum,
    weak_uniformity,
)
from .errors import CapacityError, ContractError, ValidationError
from .field_model import (
    Coords,
    FieldDescriptor,
    HbarFiber,
    PlaceLabel,
    PlaceSymmetry,
    apply_perm,
    global_orbit,
    sort_coords,
    stabilizer_subgroup,
)
from .field_model import validate as validate_field
from .invariants import (
    Family,
    GroupType,
    LocalClass,
    PlaceKind,
    c_local,
    center_shape,
    h2_local,
    has_symmetry,
    sym_act,
    zero,
)
from .real_forms import (
    RealFormTag,
    form_for_class,
    partner_form,
    q_image_trivial,
    real_class,
)

# reason trace tags; the first five are the classification branches proper
TAG_NO_SYM = "no-symmetry-classification"
TAG_SYM_IMAG = "symmetric-imaginary-classification"
TAG_A = "type-A-classification"
TAG_D = "type-D-classification"
TAG_E6 = "type-E6-classification"
CLASSIFICATION_TAGS = (TAG_NO_SYM, TAG_SYM_IMAG, TAG_A, TAG_D, TAG_E6)

TAG_SCOPE = "scope"
TAG_LOCAL_DET = "locally-determined"
TAG_HBAR = "outer-square-class-fiber"
TAG_REAL_GATE = "real-form-gate"
TAG_OUTER_TWINS = "outer-two-twin-places"
TAG_TWIN_BOUND = "twin-count-bound"
TAG_MANY_REAL = "too-many-real-places"
TAG_WU = "weak-uniformity"
TAG_PLAIN = "orbit-match"
TAG_SUBSET = "half-sum-subset"
TAG_Q = "rational-base-checklist"
TAG_QS = "quasi-split-checklist"


class Outcome(str, Enum):
    RIGID = "Rigid"
    NOT_RIGID = "NotRigid"
    UNDETERMINED = "Undetermined"
    OUT_OF_SCOPE = "OutOfScope"


@dataclass(frozen=True)
class GroupDescriptor:
    group_type: GroupType
    field: FieldDescriptor
    symmetry: PlaceSymmetry
    omega: OmegaVector
    real_forms: Tuple[Tuple[str, RealFormTag], ...] = ()

    def __post_init__(self):
        object.__setattr__(
            self,
            "real_forms",
            tuple(sorted(self.real_forms, key=lambda e: natural_key(e[0]))),
        )

    def real_tag(self, pid: str) -> RealFormTag:
        for w, tag in self.real_forms:
            if w == pid:
                return tag
        raise KeyError(pid)


@dataclass
class Verdict:
    outcome: Outcome
    reasons: List[Tuple[str, str]]
    witness: Optional[GroupDescriptor] = None
    symbolic_witness: Optional[str] = None
    missing: Optional[str] = None


# ---------------------------------------------------------------------------
# validation and normalization

_ALLOWED_TAGS = {
    Family.A: {"SL_R", "SL_H", "SU"},
    Family.B: {"Spin", "SplitForm", "CompactForm", "AnisotropicOther"},
    Family.C: {"Sp_R", "Sp"},
    Family.D: {"Spin", "SpinStar", "AnisotropicOther"},
    Family.E6: {"SplitForm", "CompactForm", "AnisotropicOther"},
    Family.E7: {"E7_split", "E7_quaternionic", "E7_hermitian", "E7_compact"},
    Family.E8: {"SplitForm", "CompactForm", "AnisotropicOther"},
    Family.F4: {"SplitForm", "CompactForm", "AnisotropicOther"},
    Family.G2: {"SplitForm", "CompactForm", "AnisotropicOther"},
}


def validate_descriptor(g: GroupDescriptor) -> None:
    """Check all descriptor invariants; collects every failure before raising."""
    issues: List[str] = []
    try:
        validate_field(g.field, g.symmetry)
    except ValidationError as e:
        issues.extend(e.issues)
    t = g.group_type
    if not t.is_outer:
        for p in g.field.finite_places + g.field.real_places:
            if p.kind in (PlaceKind.FINITE_OUTER, PlaceKind.REAL_OUTER):
                issues.append(f"place {p.id}: inner form cannot have non-split places")
    declared_fin = {p.id for p in g.field.finite_places}
    declared_real = {p.id for p in g.field.real_places}
    if {lab.id for lab, _ in g.omega.finite} != declared_fin:
        issues.append("finite coordinates must cover exactly the declared finite places")
    if {lab.id for lab, _ in g.omega.real} != declared_real:
        issues.append("real coordinates must cover exactly the declared real places")
    if {w for w, _ in g.real_forms} != declared_real:
        issues.append("every declared real place needs exactly one real form")
    if g.omega.group_type != t:
        issues.append("coordinate vector built for a different group type")
    for w, tag in g.real_forms:
        if w not in declared_real:
            continue
        fam, rank, outer = tag.signature()
        if tag.name not in _ALLOWED_TAGS[t.family]:
            issues.append(f"real place {w}: {tag} is not a form of family {t.family.value}")
            continue
        if (fam, rank) != (t.family, t.rank):
            issues.append(f"real place {w}: {tag} has type {fam.value}{rank}, group is {t.symbol()}")
            continue
        place = g.field.place(w)
        if outer != (place.kind == PlaceKind.REAL_OUTER):
            issues.append(
                f"real place {w}: {tag} is {'outer' if outer else 'inner'} type over the reals "
                f"but the place is declared {place.kind.value}"
            )
            continue
        try:
            real_class(tag, t, supplied=g.omega.real_value(w))
        except (ContractError, KeyError) as e:
            issues.append(f"real place {w}: {e}")
    if not issues:
        total = tate_sum(g.omega)
        if not total.is_zero:
            issues.append(f"coordinates are incoherent: local contributions sum to {total}")
    if issues:
        raise ValidationError(issues)


_B2_TAG_MAP = {
    ("Spin", (3, 2)): RealFormTag("Sp_R", (4,)),
    ("Spin", (4, 1)): RealFormTag("Sp", (1, 1)),
    ("Spin", (5, 0)): RealFormTag("Sp", (2, 0)),
}


def normalize(g: GroupDescriptor) -> GroupDescriptor:
    """Fold rank 2 of the odd orthogonal family into the symplectic one."""
    t = g.group_type
    if t.family != Family.B or t.rank != 2:
        return g
    c2 = GroupType(Family.C, 2, t.form_kind)
    tags = []
    for w, tag in g.real_forms:
        new = _B2_TAG_MAP.get((tag.name, tag.params))
        if new is None:
            cls = g.omega.real_value(w)
            new = RealFormTag("Sp_R", (4,)) if cls.is_zero else RealFormTag("Sp", (2, 0))
        tags.append((w, new))
    omega = OmegaVector(c2, g.omega.finite, g.omega.real)
    return GroupDescriptor(c2, g.field, g.symmetry, omega, tuple(tags))


# ---------------------------------------------------------------------------
# witness construction

def _with_finite(g: GroupDescriptor, fin: Coords) -> GroupDescriptor:
    return replace(g, omega=OmegaVector(g.group_type, fin, g.omega.real))


def _flip_real(cls: LocalClass) -> LocalClass:
    if cls.shape.kind != "cyclic":
        raise ContractError("only order 2 real classes can be flipped")
    return LocalClass(cls.shape, cls.value + 1)


def _with_reals(g: GroupDescriptor, new_classes: Dict[str, LocalClass],
                new_tags: Dict[str, RealFormTag]) -> GroupDescriptor:
    real = sort_coords(
        (lab, new_classes.get(lab.id, cls)) for lab, cls in g.omega.real
    )
    tags = tuple(
        (w, new_tags.get(w, tag)) for w, tag in g.real_forms
    )
    return replace(
        g,
        omega=OmegaVector(g.group_type, g.omega.finite, real),
        real_forms=tags,
    )


def _witness_partner_swap(g: GroupDescriptor, w: str) -> GroupDescriptor:
    partner = partner_form(
        g.real_tag(w), g.group_type, g.field.place(w).kind, g.omega.real_value(w)
    )
    return _with_reals(g, {}, {w: partner})


def _witness_flip_reals(g: GroupDescriptor, places: Sequence[str]) -> GroupDescriptor:
    classes, tags = {}, {}
    for w in places:
        cls = _flip_real(g.omega.real_value(w))
        classes[w] = cls
        tags[w] = form_for_class(g.group_type, g.field.place(w).kind, cls)
    return _with_reals(g, classes, tags)


def _witness_swap_real_classes(g: GroupDescriptor, w1: str, w2: str) -> GroupDescriptor:
    c1, c2 = g.omega.real_value(w1), g.omega.real_value(w2)
    classes = {w1: c2, w2: c1}
    tags = {
        w1: form_for_class(g.group_type, g.field.place(w1).kind, c2),
        w2: form_for_class(g.group_type, g.field.place(w2).kind, c1),
    }
    return _with_reals(g, classes, tags)


def _witness_set_reals(g: GroupDescriptor, values: Dict[str, LocalClass]) -> GroupDescriptor:
    tags = {
        w: form_for_class(g.group_type, g.field.place(w).kind, cls)
        for w, cls in values.items()
    }
    return _with_reals(g, values, tags)


def _witness_flip_finite(g: GroupDescriptor, places: Sequence[str]) -> GroupDescriptor:
    t = g.group_type
    ids = set(places)
    fin = sort_coords(
        (lab, sym_act(t, lab.kind, cls) if lab.id in ids else cls)
        for lab, cls in g.omega.finite
    )
    return _with_finite(g, fin)


def _witness_subset_and_real_flip(g: GroupDescriptor, places: Sequence[str], w: str) -> GroupDescriptor:
    flipped = _witness_flip_finite(g, places)
    return _witness_flip_reals(flipped, [w])


def build_witness(g: GroupDescriptor, kind: str, **params) -> GroupDescriptor:
    """Build and machine-check a locally isomorphic twin from a failure certificate.

    Kinds: ``orbit`` (``finite=`` replacement coordinate vector),
    ``flip-reals`` (``places=`` real ids whose classes toggle),
    ``swap-real-classes`` (``w1=``, ``w2=``), ``subset-real-flip``
    (``places=`` finite ids to flip plus ``w=`` one real id), and
    ``partner-swap`` (``w=`` a real place keeping its class but trading
    its form).  The result is validated, coherent, locally isomorphic to
    the input, and outside its two-sided automorphism orbit.
    """
    builders = {
        "orbit": lambda: _with_finite(g, params["finite"]),
        "flip-reals": lambda: _witness_flip_reals(g, params["places"]),
        "swap-real-classes": lambda: _witness_swap_real_classes(g, params["w1"], params["w2"]),
        "subset-real-flip": lambda: _witness_subset_and_real_flip(g, params["places"], params["w"]),
        "partner-swap": lambda: _witness_partner_swap(g, params["w"]),
    }
    if kind not in builders:
        raise ContractError(f"unknown witness kind {kind!r}")
    witness = builders[kind]()
    check_witness(g, witness)
    return witness


def _canonical_orbit_value(t: GroupType, lab: PlaceLabel, cls: LocalClass):
    other = sym_act(t, lab.kind, cls)
    return min(cls.sort_key(), other.sort_key())


def check_witness(g: GroupDescriptor, w: GroupDescriptor) -> None:
    """Machine check of an emitted witness: valid, locally isomorphic, not globally so."""
    validate_descriptor(w)
    t = g.group_type
    mine: Dict[str, list] = {}
    theirs: Dict[str, list] = {}
    for store, desc in ((mine, g), (theirs, w)):
        for lab, cls in desc.omega.finite:
            store.setdefault(lab.class_key(), []).append(_canonical_orbit_value(t, lab, cls))
    if {k: sorted(v) for k, v in mine.items()} != {k: sorted(v) for k, v in theirs.items()}:
        raise ContractError("witness is not locally isomorphic to the input")
    target = _full_data(w)
    for e in _two_sided_orbit(g):
        if e == target:
            raise ContractError("witness lies in the global orbit of the input")


def _full_data(g: GroupDescriptor):
    return (g.omega.finite, g.omega.real, g.real_forms)


def _two_sided_orbit(g: GroupDescriptor):
    t = g.group_type
    variants = [(g.omega.finite, g.omega.real)]
    if has_symmetry(t):
        variants.append(
            (
                sigma_flip(g.omega),
                sort_coords((lab, sym_act(t, lab.kind, cls)) for lab, cls in g.omega.real),
            )
        )
    tag_of = dict(g.real_forms)
    for fin, real in variants:
        for phi in g.symmetry.group():
            pfin = apply_perm(fin, phi)
            preal = apply_perm(real, phi) if real else real
            ptags = tuple(
                sorted(((phi.apply(wid), tag) for wid, tag in tag_of.items()),
                       key=lambda e: natural_key(e[0]))
            )
            yield (pfin, preal, ptags)


# ---------------------------------------------------------------------------
# subset sums

def subset_sum_forbidden(
    values: Sequence[int], modulus: int, targets, cap: Optional[int] = None
) -> Optional[List[int]]:
    """Indices of a nonempty subset whose sum mod ``modulus`` lies in ``targets``.

    Meet-in-the-middle over the two halves of the value list; returns the
    canonically smallest hit (fewest indices, then lexicographic) or None.
    """
    if cap is None:
        cap = subset_cap()
    if len(values) > 2 * cap:
        raise CapacityError(f"{len(values)} values exceed the subset-sum cap {2 * cap}")
    targets = {x % modulus for x in targets}
    if not targets:
        return None
    mid = len(values) // 2
    left = list(enumerate(values[:mid]))
    right = [(i + mid, v) for i, v in enumerate(values[mid:])]

    def sums(items):
        table: Dict[int, Tuple[int, ...]] = {0: ()}
        for idx, v in items:
            for s, ids in sorted(table.items()):
                ns = (s + v) % modulus
                cand = ids + (idx,)
                if ns not in table or (len(cand), cand) < (len(table[ns]), table[ns]):
                    table[ns] = cand
        return table

    lsums, rsums = sums(left), sums(right)
    best: Optional[Tuple[int, ...]] = None
    for s_r, ids_r in rsums.items():
        for tgt in targets:
            need = (tgt - s_r) % modulus
            ids_l = lsums.get(need)
            if ids_l is None:
                continue
            cand = tuple(sorted(ids_l + ids_r))
            if not cand:
                continue
            if best is None or (len(cand), cand) < (len(best), best):
                best = cand
    return list(best) if best is not None else None


# ---------------------------------------------------------------------------
# shared branch helpers

def _real_places(g: GroupDescriptor) -> Tuple[PlaceLabel, ...]:
    return tuple(sorted(g.field.real_places, key=lambda p: natural_key(p.id)))


def _real_gate(g: GroupDescriptor):
    for w, tag in g.real_forms:
        if not q_image_trivial(tag):
            return w, tag
    return None


def _gate_verdict(g: GroupDescriptor, tag: str, detail: str) -> Verdict:
    w, form = _real_gate(g)
    witness = _witness_partner_swap(g, w)
    v = Verdict(
        Outcome.NOT_RIGID,
        [(tag, detail), (TAG_REAL_GATE, f"form {form} at {w} admits a locally invisible replacement")],
        witness=witness,
    )
    check_witness(g, v.witness)
    return v


def _lhs_set(g: GroupDescriptor, stabilize: Optional[str]):
    sym = stabilizer_subgroup(g.symmetry, g.field, stabilize) if stabilize else g.symmetry
    lhs = set(global_orbit(g.omega.finite, sym))
    lhs |= set(global_orbit(sigma_flip(g.omega), sym))
    return lhs


def _bound_witness(g: GroupDescriptor, stabilize: Optional[str], budget: int = 500000) -> Coords:
    """Find a coherent flip outside the global side; the twin-count bound guarantees one."""
    t = g.group_type
    twins = inner_twin_places(g.omega)
    cvals = {lab.id: c_local(t, lab.kind, g.omega.finite_value(lab.id)) for lab in twins}
    lhs = _lhs_set(g, stabilize)
    target_zero = zero(center_shape(t))

    def admissible(ids) -> bool:
        if t.is_outer:
            return True
        if t.family == Family.D:
            return len(ids) % 2 == 0
        acc = target_zero
        for i in ids:
            acc = acc + cvals[i]
        if t.family == Family.A and t.rank % 2 == 1:
            return acc.value % ((t.rank + 1) // 2) == 0
        return acc.is_zero

    seen = 0
    ids = [lab.id for lab in twins]
    for size in range(1, len(ids) + 1):
        for combo in itertools.combinations(ids, size):
            seen += 1
            if seen > budget:
                raise CapacityError("witness search budget exhausted")
            if not admissible(combo):
                continue
            cand = _witness_flip_finite(g, combo).omega.finite
            if cand not in lhs:
                return cand
    raise CapacityError("no flip witness found within the twin set")


def _uniformity_verdict(
    g: GroupDescriptor, tag: str, branch: str, stabilize: Optional[str] = None
) -> Verdict:
    t = g.group_type
    twins = inner_twin_places(g.omega)
    try:
        report = weak_uniformity(g.omega, g.field, g.symmetry, stabilize_real=stabilize)
    except CapacityError as blocked:
        return _capped_uniformity_verdict(g, tag, branch, stabilize, twins, blocked)
    cond = "stabilized uniformity" if stabilize else "weak uniformity"
    if report.holds:
        return Verdict(
            Outcome.RIGID,
            [(tag, branch), (TAG_WU, f"{cond} holds ({len(report.lhs)} realized variations)")],
        )
    reasons = [(tag, branch),
               (TAG_WU, f"{cond} fails: {len(report.lhs)} realized < {len(report.rhs)} possible")]
    if t.is_outer and len(twins) >= 2:
        reasons.append((TAG_OUTER_TWINS, f"twin places at {', '.join(l.id for l in twins)}"))
    elif not t.is_outer and inner_twin_bound(g.omega, g.field):
        reasons.append((TAG_TWIN_BOUND,
                        f"{len(twins)} twin places force non-rigidity at degree {g.field.degree}"))
    v = Verdict(Outcome.NOT_RIGID, reasons, witness=_with_finite(g, report.witness))
    check_witness(g, v.witness)
    return v


def _capped_uniformity_verdict(
    g: GroupDescriptor, tag: str, branch: str, stabilize: Optional[str],
    twins, blocked: CapacityError,
) -> Verdict:
    """Decide without the full flip enumeration when the twin set is too large."""
    t = g.group_type
    if t.is_outer and len(twins) >= 2:
        v = Verdict(
            Outcome.NOT_RIGID,
            [(tag, branch),
             (TAG_OUTER_TWINS, f"{len(twins)} twin places (enumeration skipped)")],
            witness=_witness_flip_finite(g, [twins[0].id]),
        )
        check_witness(g, v.witness)
        return v
    if not t.is_outer and inner_twin_bound(g.omega, g.field):
        fin = _bound_witness(g, stabilize)
        v = Verdict(
            Outcome.NOT_RIGID,
            [(tag, branch),
             (TAG_TWIN_BOUND,
              f"{len(twins)} twin places force non-rigidity at degree {g.field.degree}")],
            witness=_with_finite(g, fin),
        )
        check_witness(g, v.witness)
        return v
    # a partial certificate can still settle the comparison: more coherent
    # flips than the two-sided automorphism orbit can ever contain
    lhs_cap = 2 * len(g.symmetry.group())
    partial = [p for p in blocked.partial if p not in _lhs_set(g, stabilize)]
    if len(blocked.partial) > lhs_cap and partial:
        v = Verdict(
            Outcome.NOT_RIGID,
            [(tag, branch),
             (TAG_WU, f"{len(blocked.partial)} coherent flips exceed the "
                      f"{lhs_cap} realizable variations (enumeration capped)")],
            witness=_with_finite(g, pick_witness(partial, g.omega.finite)),
        )
        check_witness(g, v.witness)
        return v
    raise blocked


def _plain_verdict(g: GroupDescriptor, tag: str, branch: str) -> Verdict:
    glob, adel = plain_orbits(g.omega, g.field, g.symmetry)
    gset, aset = set(glob), set(adel)
    if gset == aset:
        return Verdict(
            Outcome.RIGID,
            [(tag, branch), (TAG_PLAIN, f"automorphism orbit matches the adelic orbit ({len(gset)})")],
        )
    fin = pick_witness(aset - gset, g.omega.finite)
    v = Verdict(
        Outcome.NOT_RIGID,
        [(tag, branch),
         (TAG_PLAIN, f"automorphism orbit has {len(gset)} vectors, adelic orbit {len(aset)}")],
        witness=_with_finite(g, fin),
    )
    check_witness(g, v.witness)
    return v


def _flip_two_same_class(g: GroupDescriptor, tag: str, detail: str) -> Verdict:
    reals = _real_places(g)
    by_class: Dict[tuple, list] = {}
    for p in reals:
        by_class.setdefault(g.omega.real_value(p.id).sort_key(), []).append(p.id)
    pair = next(ids[:2] for ids in by_class.values() if len(ids) >= 2)
    v = Verdict(
        Outcome.NOT_RIGID,
        [(tag, detail), (TAG_MANY_REAL, f"real classes repeat at {pair[0]} and {pair[1]}")],
        witness=_witness_flip_reals(g, pair),
    )
    check_witness(g, v.witness)
    return v


# ---------------------------------------------------------------------------
# the branches

def classify_no_symmetry(g: GroupDescriptor) -> Verdict:
    t = g.group_type
    reals = _real_places(g)
    fam = t.family
    if fam in (Family.B, Family.E7, Family.E8, Family.F4, Family.G2):
        if _real_gate(g):
            return _gate_verdict(g, TAG_NO_SYM, "(i) requires a totally imaginary base field")
        return _uniformity_verdict(g, TAG_NO_SYM, "(i) totally imaginary")
    if fam == Family.C:
        if _real_gate(g):
            return _gate_verdict(g, TAG_NO_SYM, "(ii) requires the split symplectic form at real places")
        if len(reals) >= 2:
            v = Verdict(
                Outcome.NOT_RIGID,
                [(TAG_NO_SYM, "(ii) allows at most one real place"),
                 (TAG_MANY_REAL, f"{len(reals)} real places")],
                witness=_witness_flip_reals(g, [reals[0].id, reals[1].id]),
            )
            check_witness(g, v.witness)
            return v
        return _uniformity_verdict(g, TAG_NO_SYM, "(ii) at most one real place")
    # type A rank 1
    if len(reals) >= 3:
        return _flip_two_same_class(g, TAG_NO_SYM, "(iii) allows at most two real places")
    if len(reals) == 2:
        w1, w2 = reals[0].id, reals[1].id
        c1, c2 = g.omega.real_value(w1), g.omega.real_value(w2)
        if c1 == c2:
            return _flip_two_same_class(g, TAG_NO_SYM, "(iii) needs the two real forms to differ")
        if not any(phi.apply(w1) == w2 for phi in g.symmetry.group()):
            v = Verdict(
                Outcome.NOT_RIGID,
                [(TAG_NO_SYM, "(iii) needs an automorphism exchanging the real places")],
                witness=_witness_swap_real_classes(g, w1, w2),
            )
            check_witness(g, v.witness)
            return v
        return _uniformity_verdict(g, TAG_NO_SYM, "(iii) two exchanged real places", stabilize=w1)
    return _uniformity_verdict(g, TAG_NO_SYM, "(ii) at most one real place")


def classify_symmetric_imaginary(g: GroupDescriptor) -> Verdict:
    return _uniformity_verdict(g, TAG_SYM_IMAG, "totally imaginary base field")


def classify_a(g: GroupDescriptor) -> Verdict:
    t = g.group_type
    rank = t.rank
    reals = _real_places(g)
    if _real_gate(g):
        detail = "(ii) outer even rank must split at real places" if t.is_outer and rank % 2 == 0 \
            else "real forms must pass the trivial-image gate"
        return _gate_verdict(g, TAG_A, detail)
    if rank % 2 == 0:
        branch = "(i) inner even rank" if not t.is_outer else "(ii) outer even rank, split at real places"
        return _uniformity_verdict(g, TAG_A, branch)
    # odd rank
    if len(reals) >= 3:
        return _flip_two_same_class(g, TAG_A, "odd rank allows at most two real places")
    stabilize: Optional[str] = None
    branch = "(iii) one real place" if not t.is_outer else "(v) one real place"
    if len(reals) == 2:
        w1, w2 = reals[0], reals[1]
        c1, c2 = g.omega.real_value(w1.id), g.omega.real_value(w2.id)
        if c1 == c2:
            return _flip_two_same_class(g, TAG_A, "two real places need opposite real classes")
        if w1.kind != w2.kind:
            v = Verdict(
                Outcome.NOT_RIGID,
                [(TAG_A, "two real places of different split kind can never be exchanged")],
                witness=_witness_swap_real_classes(g, w1.id, w2.id),
            )
            check_witness(g, v.witness)
            return v
        if not any(phi.apply(w1.id) == w2.id for phi in g.symmetry.group()):
            v = Verdict(
                Outcome.NOT_RIGID,
                [(TAG_A, "no automorphism exchanges the two real places")],
                witness=_witness_swap_real_classes(g, w1.id, w2.id),
            )
            check_witness(g, v.witness)
            return v
        stabilize = w1.id
        branch = "(iv) two exchanged real places" if not t.is_outer else "(vi) two exchanged real places"
    if not t.is_outer and (rank + 1) % 4 == 0:
        m = rank + 1
        half = m // 2
        values = [cls.value for _, cls in g.omega.finite if not cls.is_zero]
        hit = subset_sum_forbidden(values, m, {half // 2, m - half // 2})
        if hit is not None:
            nz = [lab for lab, cls in g.omega.finite if not cls.is_zero]
            ids = [nz[i].id for i in hit]
            v = Verdict(
                Outcome.NOT_RIGID,
                [(TAG_A, branch),
                 (TAG_SUBSET, f"coordinates at {', '.join(ids)} sum to half the real contribution")],
                witness=_witness_subset_and_real_flip(g, ids, reals[0].id),
            )
            check_witness(g, v.witness)
            return v
    return _uniformity_verdict(g, TAG_A, branch, stabilize=stabilize)


def classify_d(g: GroupDescriptor) -> Verdict:
    t = g.group_type
    rank = t.rank
    reals = _real_places(g)
    if _real_gate(g):
        return _gate_verdict(g, TAG_D, "the star form or Spin(7,3) is required at the real place")
    if len(reals) >= 2:
        if rank % 2 == 0:
            w1, w2 = reals[0].id, reals[1].id
            shape = h2_local(t, PlaceKind.REAL_INNER)
            v = Verdict(
                Outcome.NOT_RIGID,
                [(TAG_D, "even rank allows only one real place"),
                 (TAG_MANY_REAL, "two inner-type real places")],
                witness=_witness_set_reals(g, {w1: zero(shape), w2: zero(shape)}),
            )
            check_witness(g, v.witness)
            return v
        v = Verdict(
            Outcome.NOT_RIGID,
            [(TAG_D, "odd rank allows only one real place"),
             (TAG_MANY_REAL, f"{len(reals)} real places")],
            witness=_witness_flip_reals(g, [reals[0].id, reals[1].id]),
        )
        check_witness(g, v.witness)
        return v
    twins = inner_twin_places(g.omega)
    r = len(twins)
    if rank % 2 == 0 and not t.is_outer:
        if r != 1:
            by_val: Dict[tuple, list] = {}
            for lab in twins:
                by_val.setdefault(g.omega.finite_value(lab.id).sort_key(), []).append(lab.id)
            pair = next(ids[:2] for ids in by_val.values() if len(ids) >= 2)
            v = Verdict(
                Outcome.NOT_RIGID,
                [(TAG_D, "(i) needs a twin place at exactly one finite place"),
                 (TAG_TWIN_BOUND, f"{r} twin places")],
                witness=_witness_flip_finite(g, pair),
            )
            check_witness(g, v.witness)
            return v
        return _plain_verdict(g, TAG_D, "(i) star form, one twin place")
    if rank % 2 == 0:
        if r >= 1:
            v = Verdict(
                Outcome.NOT_RIGID,
                [(TAG_D, "(ii) forbids twin places at finite places"),
                 (TAG_OUTER_TWINS if r >= 2 else TAG_TWIN_BOUND,
                  f"twin place at {twins[0].id}")],
                witness=_witness_flip_finite(g, [twins[0].id]),
            )
            check_witness(g, v.witness)
            return v
        return _plain_verdict(g, TAG_D, "(ii) outer even rank, star form, no twins")
    if not t.is_outer:
        # rank 5 with Spin(7,3); larger odd inner ranks never pass the gate
        if r >= 1:
            v = Verdict(
                Outcome.NOT_RIGID,
                [(TAG_D, "(iii) forbids twin places at finite places"),
                 (TAG_SUBSET, f"twin place at {twins[0].id}")],
                witness=_witness_subset_and_real_flip(g, [twins[0].id], reals[0].id),
            )
            check_witness(g, v.witness)
            return v
        return _plain_verdict(g, TAG_D, "(iii) Spin(7,3), no twins")
    if r >= 2:
        v = Verdict(
            Outcome.NOT_RIGID,
            [(TAG_D, "(iv) allows at most one twin place"),
             (TAG_OUTER_TWINS, f"twin places at {', '.join(l.id for l in twins)}")],
            witness=_witness_flip_finite(g, [twins[0].id]),
        )
        check_witness(g, v.witness)
        return v
    return _plain_verdict(g, TAG_D, "(iv) outer odd rank, at most one twin")


def classify_e6(g: GroupDescriptor) -> Verdict:
    reals = _real_places(g)
    w = reals[0].id
    v = Verdict(
        Outcome.NOT_RIGID,
        [(TAG_E6, "never rigid with a real place"),
         (TAG_REAL_GATE, f"every real form of this type fails the gate, e.g. at {w}")],
        witness=_witness_partner_swap(g, w),
    )
    check_witness(g, v.witness)
    return v


# ---------------------------------------------------------------------------
# dispatcher

def _resolved_hbar(f: FieldDescriptor) -> HbarFiber:
    if f.degree == 1 or f.galois_over_q:
        return HbarFiber.TRIVIAL
    return f.hbar_fiber


def classify(g: GroupDescriptor) -> Verdict:
    t = g.group_type
    if t.family == Family.D and t.rank == 4:
        return Verdict(Outcome.OUT_OF_SCOPE, [(TAG_SCOPE, "triality type D4 is not handled")])
    g = normalize(g)
    t = g.group_type
    validate_descriptor(g)
    if not g.field.locally_determined:
        return Verdict(
            Outcome.UNDETERMINED,
            [(TAG_LOCAL_DET, "the engine assumes a locally determined base field")],
            missing="locally determined base field",
        )
    if t.is_outer:
        fiber = _resolved_hbar(g.field)
        if fiber == HbarFiber.NONTRIVIAL:
            return Verdict(
                Outcome.NOT_RIGID,
                [(TAG_HBAR, "the defining square class has a locally isomorphic sibling")],
                symbolic_witness=(
                    "the same local data over the sibling quadratic extension; "
                    "constructing that extension needs field arithmetic outside this engine"
                ),
            )
        if fiber == HbarFiber.UNKNOWN:
            return Verdict(
                Outcome.UNDETERMINED,
                [(TAG_HBAR, "square class fiber undetermined for this base field")],
                missing="square class fiber (trivial or not)",
            )
    if not has_symmetry(t):
        return classify_no_symmetry(g)
    if not g.field.real_places:
        return classify_symmetric_imaginary(g)
    if t.family == Family.A:
        return classify_a(g)
    if t.family == Family.D:
        return classify_d(g)
    return classify_e6(g)


# ---------------------------------------------------------------------------
# independent special-case checklists

def _nonzero_finite(g: GroupDescriptor) -> List[PlaceLabel]:
    return [lab for lab, cls in g.omega.finite if not cls.is_zero]


def _wu_over_q(g: GroupDescriptor) -> bool:
    # over the rationals both permutation actions are trivial, so weak
    # uniformity is just the flip orbit staying within the symmetry pair
    return len(s_omega_orbit(g.omega).elements) <= 2


def specialize_q(g: GroupDescriptor) -> Verdict:
    """The rational-base-field checklist, evaluated literally."""
    if g.group_type.family == Family.D and g.group_type.rank == 4:
        return Verdict(Outcome.OUT_OF_SCOPE, [(TAG_SCOPE, "triality type D4 is not handled")])
    g = normalize(g)
    validate_descriptor(g)
    if g.field.degree != 1:
        raise ContractError("this checklist only applies over the rationals")
    t = g.group_type
    fam, rank = t.family, t.rank
    w = _real_places(g)[0]
    tag = g.real_tag(w.id)
    twins = len(inner_twin_places(g.omega))

    def verdict(ok: bool, detail: str) -> Verdict:
        return Verdict(Outcome.RIGID if ok else Outcome.NOT_RIGID, [(TAG_Q, detail)])

    if fam == Family.A and rank == 1:
        return verdict(True, "(i) rank one unitary type is always rigid over the rationals")
    if fam == Family.A and not t.is_outer and rank % 2 == 0:
        return verdict(_wu_over_q(g), "(ii) even rank inner: weak uniformity")
    if fam == Family.A and not t.is_outer and rank % 4 == 1:
        return verdict(_wu_over_q(g), "(ii) rank 1 mod 4 inner: weak uniformity")
    if fam == Family.A and t.is_outer and rank % 2 == 0:
        bad = len(_nonzero_finite(g))
        return verdict(
            bad <= 1 and w.kind == PlaceKind.REAL_INNER,
            "(iii) outer even rank: quasi-split away from one finite place, split over the reals",
        )
    if fam == Family.A and not t.is_outer and rank % 4 == 3:
        m = rank + 1
        values = [cls.value for _, cls in g.omega.finite if not cls.is_zero]
        hit = subset_sum_forbidden(values, m, {m // 4, m - m // 4})
        return verdict(
            _wu_over_q(g) and hit is None,
            "(iv) rank 3 mod 4 inner: weak uniformity and no half-sum subset",
        )
    if fam == Family.A and t.is_outer:
        over_r_ok = w.kind == PlaceKind.REAL_INNER or (
            rank == 3 and tag == RealFormTag("SU", (3, 1))
        )
        return verdict(twins <= 1 and over_r_ok,
                       "(v) outer odd rank: at most one twin place, inner or SU(3,1) over the reals")
    if fam == Family.C:
        return verdict(tag == RealFormTag("Sp_R", (2 * rank,)),
                       "(vi) split symplectic form over the reals")
    if fam == Family.D and not t.is_outer and rank % 2 == 0:
        return verdict(twins == 1 and tag == RealFormTag("SpinStar", (2 * rank,)),
                       "(vii) inner even rank: one twin place and the star form")
    if fam == Family.D and t.is_outer and rank % 2 == 0:
        return verdict(twins == 0 and tag == RealFormTag("SpinStar", (2 * rank,)),
                       "(viii) outer even rank: no twin places and the star form")
    if fam == Family.D and not t.is_outer:
        return verdict(rank == 5 and twins == 0 and tag == RealFormTag("Spin", (7, 3)),
                       "(ix) inner rank five: no twin places and Spin(7,3)")
    if fam == Family.D:
        ok_tag = tag == RealFormTag("SpinStar", (2 * rank,)) or (
            rank == 5 and tag == RealFormTag("Spin", (7, 3))
        )
        return verdict(twins <= 1 and ok_tag,
                       "(x) outer odd rank: at most one twin place, star form or Spin(7,3)")
    return verdict(False, "no branch admits this type over the rationals")


def is_quasisplit(g: GroupDescriptor) -> bool:
    return all(cls.is_zero for _, cls in g.omega.finite) and all(
        cls.is_zero for _, cls in g.omega.real
    )


def specialize_quasisplit(g: GroupDescriptor) -> Verdict:
    """The quasi-split checklist for Galois base fields, evaluated literally."""
    if g.group_type.family == Family.D and g.group_type.rank == 4:
        return Verdict(Outcome.OUT_OF_SCOPE, [(TAG_SCOPE, "triality type D4 is not handled")])
    g = normalize(g)
    validate_descriptor(g)
    if not g.field.galois_over_q:
        raise ContractError("this checklist assumes a Galois base field")
    if not is_quasisplit(g):
        raise ContractError("this checklist assumes a quasi-split group")
    t = g.group_type
    fam, rank = t.family, t.rank
    reals = _real_places(g)

    def verdict(ok: bool, detail: str) -> Verdict:
        return Verdict(Outcome.RIGID if ok else Outcome.NOT_RIGID, [(TAG_QS, detail)])

    if fam == Family.A and rank % 2 == 0:
        return verdict(all(p.kind == PlaceKind.REAL_INNER for p in reals),
                       "(i) even rank: split at every infinite place")
    if fam == Family.A or fam == Family.C:
        ok = not reals or (
            g.field.degree == 1 and reals[0].kind == PlaceKind.REAL_INNER
        )
        return verdict(ok, "(ii) odd unitary or symplectic: rationals with a split real place, "
                           "or totally imaginary")
    return verdict(not reals, "(iii) remaining families need a totally imaginary field")
