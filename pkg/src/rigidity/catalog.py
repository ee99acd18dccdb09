"""Bundled permutation groups for the arithmetic equivalence suite.

Small groups up to order 48 plus the simple group of order 168 acting on
the seven points of the Fano plane, where the point and line stabilizers
form the standard almost-conjugate-but-not-conjugate pair.
"""

from __future__ import annotations

from typing import List, Tuple

from .arith_equiv import PermGroup, Subgroup, perm_from_cycles


def cyclic_group(n: int) -> PermGroup:
    return PermGroup(n, [perm_from_cycles(n, [tuple(range(n))])], name=f"C{n}")


def klein_group() -> PermGroup:
    return PermGroup(4, [perm_from_cycles(4, [(0, 1)]), perm_from_cycles(4, [(2, 3)])], name="V4")


def elementary_abelian_8() -> PermGroup:
    gens = [perm_from_cycles(6, [(0, 1)]), perm_from_cycles(6, [(2, 3)]), perm_from_cycles(6, [(4, 5)])]
    return PermGroup(6, gens, name="C2^3")


def dihedral_group(n: int) -> PermGroup:
    rot = perm_from_cycles(n, [tuple(range(n))])
    refl = tuple((n - i) % n for i in range(n))
    return PermGroup(n, [rot, refl], name=f"D{2*n}")


def symmetric_group(n: int) -> PermGroup:
    gens = [perm_from_cycles(n, [(0, 1)]), perm_from_cycles(n, [tuple(range(n))])]
    return PermGroup(n, gens, name=f"S{n}")


def alternating_4() -> PermGroup:
    gens = [perm_from_cycles(4, [(0, 1), (2, 3)]), perm_from_cycles(4, [(0, 1, 2)])]
    return PermGroup(4, gens, name="A4")


def quaternion_group() -> PermGroup:
    # regular action of the eight units {1,-1,i,-i,j,-j,k,-k}
    i = perm_from_cycles(8, [(0, 2, 1, 3), (4, 7, 5, 6)])
    j = perm_from_cycles(8, [(0, 4, 1, 5), (2, 6, 3, 7)])
    return PermGroup(8, [i, j], name="Q8")


def wreath_c2_c3() -> PermGroup:
    """The transitive wreath model on six points: three sign flips cycled by a 3-cycle."""
    gens = [
        perm_from_cycles(6, [(0, 1)]),
        perm_from_cycles(6, [(2, 3)]),
        perm_from_cycles(6, [(4, 5)]),
        perm_from_cycles(6, [(0, 2, 4), (1, 3, 5)]),
    ]
    return PermGroup(6, gens, name="C2wrC3")


def wreath_pair() -> Tuple[PermGroup, Subgroup, Subgroup, Subgroup]:
    """The wreath model with U = first two sign flips and its two rank-one subgroups.

    ``V1`` and ``V2`` are conjugate in the big group but by no element
    normalizing ``U``: the prototype of globally isomorphic quadratic
    extensions with no isomorphism fixing the middle field.
    """
    G = wreath_c2_c3()
    e = G.identity
    a = perm_from_cycles(6, [(0, 1)])
    b = perm_from_cycles(6, [(2, 3)])
    ab = perm_from_cycles(6, [(0, 1), (2, 3)])
    U = Subgroup(G, frozenset([e, a, b, ab]))
    V1 = Subgroup(G, frozenset([e, a]))
    V2 = Subgroup(G, frozenset([e, b]))
    return G, U, V1, V2


def direct_product(G: PermGroup, H: PermGroup, name: str = "") -> PermGroup:
    dg, dh = G.degree, H.degree
    gens = [g + tuple(dg + i for i in range(dh)) for g in G.generators]
    gens += [tuple(range(dg)) + tuple(dg + x for x in h) for h in H.generators]
    return PermGroup(dg + dh, gens, name=name or f"{G.name}x{H.name}")


def sl_2_3() -> PermGroup:
    """2x2 determinant-one matrices over the field with three elements, on the
    eight nonzero vectors."""
    vectors = [(x, y) for x in range(3) for y in range(3) if (x, y) != (0, 0)]
    idx = {v: k for k, v in enumerate(vectors)}

    def action(m):
        return tuple(
            idx[((m[0] * x + m[1] * y) % 3, (m[2] * x + m[3] * y) % 3)]
            for x, y in vectors
        )

    return PermGroup(8, [action((1, 1, 0, 1)), action((0, 2, 1, 0))], name="SL(2,3)")


def fano_group() -> PermGroup:
    """The simple group of order 168 on the seven points of the Fano plane.

    Points are the nonzero vectors of a three dimensional binary space,
    encoded as the integers 1..7 minus one; generators are two invertible
    linear maps generating the full linear group.
    """
    def action(m):
        # m: 3x3 binary matrix, rows are images of basis vectors
        out = []
        for v in range(1, 8):
            bits = ((v >> 0) & 1, (v >> 1) & 1, (v >> 2) & 1)
            w = [0, 0, 0]
            for i in range(3):
                if bits[i]:
                    for j in range(3):
                        w[j] ^= m[i][j]
            out.append((w[0] | (w[1] << 1) | (w[2] << 2)) - 1)
        return tuple(out)

    shear = ((1, 1, 0), (0, 1, 0), (0, 0, 1))
    cycle = ((0, 1, 0), (0, 0, 1), (1, 0, 0))
    return PermGroup(7, [action(shear), action(cycle)], name="PSL(3,2)")


def fano_point_line_stabilizers() -> Tuple[PermGroup, Subgroup, Subgroup]:
    """Stabilizer of a point and of a line of the Fano plane: the standard
    almost conjugate, non-conjugate pair."""
    G = fano_group()
    elems = G.elements()
    point = frozenset(g for g in elems if g[0] == 0)
    line = frozenset(g for g in elems if {g[0], g[1], g[2]} == {0, 1, 2})
    return G, Subgroup(G, point), Subgroup(G, line)


def bundled_catalog() -> List[PermGroup]:
    """The groups the verification suite runs over: orders up to 48, plus the
    Fano plane group."""
    return [
        cyclic_group(2),
        cyclic_group(3),
        cyclic_group(4),
        cyclic_group(6),
        cyclic_group(8),
        cyclic_group(12),
        klein_group(),
        elementary_abelian_8(),
        symmetric_group(3),
        dihedral_group(4),
        quaternion_group(),
        alternating_4(),
        dihedral_group(6),
        wreath_c2_c3(),
        symmetric_group(4),
        sl_2_3(),
        direct_product(symmetric_group(3), symmetric_group(3), "S3xS3"),
        direct_product(symmetric_group(4), cyclic_group(2), "S4xC2"),
        fano_group(),
    ]
