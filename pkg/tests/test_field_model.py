import random

import pytest

from rigidity.errors import ValidationError
from rigidity.field_model import (
    FieldDescriptor,
    HbarFiber,
    PlaceLabel,
    PlacePerm,
    PlaceSymmetry,
    adelic_orbit,
    apply_perm,
    global_orbit,
    sort_coords,
    stabilizer_subgroup,
    validate,
)
from rigidity.invariants import LocalClass, PlaceKind, cyclic

FI = PlaceKind.FINITE_INNER
FO = PlaceKind.FINITE_OUTER
RI = PlaceKind.REAL_INNER

Z5 = cyclic(5)


def coords(*pairs):
    return sort_coords((lab, LocalClass(Z5, v)) for lab, v in pairs)


def gaussian_places():
    return (
        PlaceLabel("v3", FI, "c3"),
        PlaceLabel("v5a", FI, "c5"),
        PlaceLabel("v5b", FI, "c5"),
        PlaceLabel("v7", FI, "c7"),
    )


def gaussian_field():
    return FieldDescriptor(
        degree=2,
        complex_place_count=1,
        finite_places=gaussian_places(),
        galois_over_q=True,
        hbar_fiber=HbarFiber.TRIVIAL,
    )


def conj():
    return PlaceSymmetry((PlacePerm.from_cycles([("v5a", "v5b")]),))


class TestValidate:
    def test_rationals_ok(self):
        f = FieldDescriptor(degree=1, real_places=(PlaceLabel("w", RI),))
        validate(f, PlaceSymmetry())

    def test_generator_crossing_split_kinds_rejected(self):
        f = FieldDescriptor(
            degree=2,
            complex_place_count=1,
            finite_places=(PlaceLabel("a", FI, "c"), PlaceLabel("b", FO, "c2")),
        )
        s = PlaceSymmetry((PlacePerm.from_cycles([("a", "b")]),))
        with pytest.raises(ValidationError, match="maps a"):
            validate(f, s)

    def test_galois_forces_trivial_fiber(self):
        f = FieldDescriptor(
            degree=2, complex_place_count=1,
            galois_over_q=True, hbar_fiber=HbarFiber.NONTRIVIAL,
        )
        with pytest.raises(ValidationError, match="trivial"):
            validate(f, PlaceSymmetry())

    def test_class_mixing_kinds_rejected(self):
        f = FieldDescriptor(
            degree=2, complex_place_count=1,
            finite_places=(PlaceLabel("a", FI, "c"), PlaceLabel("b", FO, "c")),
        )
        with pytest.raises(ValidationError, match="mixes"):
            validate(f, PlaceSymmetry())

    def test_group_order_must_divide_degree(self):
        f = FieldDescriptor(
            degree=3,
            real_places=(PlaceLabel("w1", RI), PlaceLabel("w2", RI)),
            complex_place_count=0,
            locally_determined=True,
        )
        s = PlaceSymmetry((PlacePerm.from_cycles([("w1", "w2")]),))
        with pytest.raises(ValidationError, match="divide"):
            validate(f, s)

    def test_degree_one_constraints(self):
        f = FieldDescriptor(degree=1, real_places=(), complex_place_count=0)
        with pytest.raises(ValidationError, match="exactly one real"):
            validate(f, PlaceSymmetry())
        shared = FieldDescriptor(
            degree=1,
            real_places=(PlaceLabel("w", RI),),
            finite_places=(PlaceLabel("a", FI, "c"), PlaceLabel("b", FI, "c")),
        )
        with pytest.raises(ValidationError, match="pairwise"):
            validate(shared, PlaceSymmetry())


class TestGlobalOrbit:
    def test_trivial_group_fixes_everything(self):
        labs = gaussian_places()
        x = coords((labs[0], 1), (labs[1], 2), (labs[2], 3), (labs[3], 4))
        assert global_orbit(x, PlaceSymmetry()) == (x,)

    def test_gaussian_swap(self):
        labs = gaussian_places()
        x = coords((labs[0], 1), (labs[1], 2), (labs[2], 3), (labs[3], 4))
        orbit = global_orbit(x, conj())
        assert len(orbit) == 2
        swapped = coords((labs[0], 1), (labs[1], 3), (labs[2], 2), (labs[3], 4))
        assert set(orbit) == {x, swapped}

    def test_zero_vector_is_fixed(self):
        labs = gaussian_places()
        x = coords((labs[0], 0), (labs[1], 0), (labs[2], 0), (labs[3], 0))
        assert global_orbit(x, conj()) == (x,)

    def test_orbit_size_divides_group_order(self):
        labs = gaussian_places()
        rng = random.Random(5)
        group = conj().group()
        for _ in range(25):
            x = coords(*[(lab, rng.randrange(5)) for lab in labs])
            orbit = global_orbit(x, conj())
            assert len(group) % len(orbit) == 0


class TestAdelicOrbit:
    def test_three_places_one_class(self):
        z2 = cyclic(2)
        labs = [PlaceLabel(f"v31{c}", FI, "c31") for c in "abc"]
        x = sort_coords([
            (labs[0], LocalClass(z2, 1)),
            (labs[1], LocalClass(z2, 1)),
            (labs[2], LocalClass(z2, 0)),
        ])
        orbit = adelic_orbit(x)
        assert len(orbit) == 3

    def test_singleton_classes_fix_vector(self):
        labs = gaussian_places()
        x = coords((labs[0], 1), (labs[1], 2), (labs[2], 2), (labs[3], 4))
        singles = sort_coords(
            (PlaceLabel(lab.id, lab.kind, None), cls) for lab, cls in x
        )
        assert adelic_orbit(singles) == (singles,)

    def test_gaussian_class_pair(self):
        labs = gaussian_places()
        x = coords((labs[0], 1), (labs[1], 2), (labs[2], 3), (labs[3], 4))
        orbit = adelic_orbit(x)
        swapped = coords((labs[0], 1), (labs[1], 3), (labs[2], 2), (labs[3], 4))
        assert set(orbit) == {x, swapped}

    def test_declaration_order_irrelevant(self):
        labs = gaussian_places()
        x = coords((labs[0], 1), (labs[1], 2), (labs[2], 3), (labs[3], 4))
        y = sort_coords(reversed(list(x)))
        assert adelic_orbit(x) == adelic_orbit(y)

    def test_global_orbit_inside_adelic_orbit(self):
        labs = gaussian_places()
        rng = random.Random(9)
        for _ in range(30):
            x = coords(*[(lab, rng.randrange(5)) for lab in labs])
            assert set(global_orbit(x, conj())) <= set(adelic_orbit(x))


class TestStabilizer:
    def test_trivial_group(self):
        f = FieldDescriptor(degree=1, real_places=(PlaceLabel("w", RI),))
        sub = stabilizer_subgroup(PlaceSymmetry(), f, "w")
        assert sub.generators == ()

    def test_swap_has_trivial_stabilizer(self):
        f = FieldDescriptor(
            degree=2,
            real_places=(PlaceLabel("w1", RI), PlaceLabel("w2", RI)),
        )
        s = PlaceSymmetry((PlacePerm.from_cycles([("w1", "w2")]),))
        sub = stabilizer_subgroup(s, f, "w1")
        assert sub.generators == ()

    def test_group_fixing_reals_survives(self):
        f = FieldDescriptor(
            degree=4,
            real_places=(PlaceLabel("w1", RI), PlaceLabel("w2", RI)),
            complex_place_count=1,
            finite_places=(PlaceLabel("a", FI, "c"), PlaceLabel("b", FI, "c")),
        )
        s = PlaceSymmetry((PlacePerm.from_cycles([("a", "b")]),))
        sub = stabilizer_subgroup(s, f, "w1")
        assert len(sub.group()) == 2

    def test_undeclared_place_rejected(self):
        f = FieldDescriptor(degree=1, real_places=(PlaceLabel("w", RI),))
        with pytest.raises(ValidationError):
            stabilizer_subgroup(PlaceSymmetry(), f, "nope")


class TestPlacePerm:
    def test_compose_and_inverse_through_cycles(self):
        p = PlacePerm.from_cycles([("a", "b", "c")])
        q = p.compose(p).compose(p)
        assert q.is_identity()
        assert str(p) == "(a b c)"

    def test_apply_perm_moves_values(self):
        labs = gaussian_places()
        x = coords((labs[0], 1), (labs[1], 2), (labs[2], 3), (labs[3], 4))
        moved = apply_perm(x, PlacePerm.from_cycles([("v5a", "v5b")]))
        lookup = {lab.id: cls.value for lab, cls in moved}
        assert lookup["v5a"] == 3 and lookup["v5b"] == 2
