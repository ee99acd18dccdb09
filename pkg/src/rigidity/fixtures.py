"""Bundled descriptor fixtures, mirrored on disk under fixtures/.

The degree 3 division algebra pair over the rationals, the rank four and
five instances over the Gaussian rationals, the quaternion algebra over
a real quadratic field ramified at both infinite places, the completely
split prime 31 in a cubic field, and a handful of single-branch probes.
"""

FIXTURES = {
    "table1_D1": """\
# degree 3 division algebra over Q with invariants 1/3, 2/3, 1/3, 2/3
[group]
type = 1A
rank = 2

[field]
degree = 1
complex_places = 0

[places]
v2 = omega=1/3
v3 = omega=2/3
v5 = omega=1/3
v7 = omega=2/3

[real]
w = form=SL_R(3)
""",
    "table1_D2": """\
# the locally isomorphic partner: invariants 1/3, 2/3, 2/3, 1/3
[group]
type = 1A
rank = 2

[field]
degree = 1
complex_places = 0

[places]
v2 = omega=1/3
v3 = omega=2/3
v5 = omega=2/3
v7 = omega=1/3

[real]
w = form=SL_R(3)
""",
    "table3_A4_Qi": """\
# rank 4 inner form over the Gaussian rationals; the split prime 5 carries (2,3)
[group]
type = 1A
rank = 4

[field]
degree = 2
complex_places = 1
galois = true

[aut]
conj = (v5a v5b)

[places]
v3 = class=c3 omega=1/5
v5a = class=c5 omega=2/5
v5b = class=c5 omega=3/5
v7 = class=c7 omega=4/5
""",
    "table4_A5_Qi": """\
# rank 5 inner form over the Gaussian rationals; two class-paired coordinate pairs
[group]
type = 1A
rank = 5

[field]
degree = 2
complex_places = 1
galois = true

[aut]
conj = (v5a v5b)(v11a v11b)

[places]
v3 = class=c3 omega=3/6
v5a = class=c5 omega=2/6
v5b = class=c5 omega=4/6
v11a = class=c11 omega=0/6
v11b = class=c11 omega=3/6
""",
    "quat_sqrt2": """\
# the quaternion algebra over a real quadratic field ramified exactly at
# the two real places
[group]
type = 1A
rank = 1

[field]
degree = 2
complex_places = 0
galois = true

[aut]
g = (w1 w2)

[real]
w1 = form=SL_H(1)
w2 = form=SL_H(1)
""",
    "cubic31": """\
# quaternion algebras over a cubic field with trivial automorphism group,
# ramified at two of the three places over the completely split prime 31
[group]
type = 1A
rank = 1

[field]
degree = 3
complex_places = 1

[places]
v31a = class=c31 omega=1/2
v31b = class=c31 omega=1/2
v31c = class=c31 omega=0/2

[real]
w = form=SL_R(2)
""",
    "komatsu_2A2": """\
# outer rank 2 form over a quartic field whose defining square class has a
# locally isomorphic sibling square class; only the fiber flag matters here
[group]
type = 2A
rank = 2

[field]
degree = 4
complex_places = 1
galois = false
hbar_fiber = nontrivial

[places]
v2 = kind=nonsplit omega=0

[real]
wplus = form=SL_R(3)
wminus = form=SU(2,1)
""",
    "lmfdb_sextic_2A2": """\
# outer rank 2 form over a sextic field inside a Galois closure whose
# group is the wreath model; the two quadratic extensions above it are
# exchanged by no automorphism of the sextic field
[group]
type = 2A
rank = 2

[field]
degree = 6
complex_places = 3
galois = false
hbar_fiber = nontrivial

[places]
v163 = kind=nonsplit omega=0
""",
    "split_C3_Q": """\
[group]
type = C
rank = 3

[field]
degree = 1
complex_places = 0

[real]
w = form=Sp_R(6)
""",
    "split_G2_Q": """\
[group]
type = G2

[field]
degree = 1
complex_places = 0

[real]
w = form=SplitForm
""",
    "b3_split_Q": """\
[group]
type = B
rank = 3

[field]
degree = 1
complex_places = 0

[real]
w = form=Spin(4,3) omega=0
""",
    "spinstar_D6_Q": """\
# inner rank 6 even orthogonal form over the rationals with the star form
# at infinity and a twin place at exactly one finite place
[group]
type = 1D
rank = 6

[field]
degree = 1
complex_places = 0

[places]
v2 = omega=(1,0)

[real]
w = form=SpinStar(12)
""",
    "spin73_D5_Q": """\
# inner rank 5 orthogonal form over the rationals, Spin(7,3) at infinity,
# no twin places
[group]
type = 1D
rank = 5

[field]
degree = 1
complex_places = 0

[places]
v2 = omega=2/4

[real]
w = form=Spin(7,3) omega=1
""",
    "su31_2A3_Q": """\
# outer rank 3 form over the rationals, SU(3,1) at infinity
[group]
type = 2A
rank = 3

[field]
degree = 1
complex_places = 0

[places]
v2 = kind=nonsplit omega=1/2

[real]
w = form=SU(3,1)
""",
}
