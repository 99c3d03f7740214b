import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from strategies import complexes
from zlkb.complex import ChainMap, ProjComplex, cone, entry_allowed
from zlkb.homotopy import hom, is_contractible, reduce
from zlkb.stability import stable_tau0

SETTINGS = settings(max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow])


def arrow_complex():
    """P1<1> -> P2 by the arrow, in degrees -1 and 0."""
    return ProjComplex(2, {-1: [(1, 1)], 0: [(2, 0)]}, {-1: {(0, 0): 1}})


def test_stables_are_complexes():
    for n in (2, 3, 4):
        for i in range(1, n + 1):
            for j in range(i + 1, n + 2):
                x = stable_tau0(n, i, j)
                assert x.check_d_squared() and x.degree_compatible()
                assert x.summand_count() == j - i


def test_long_stable_shape():
    x = stable_tau0(3, 1, 4)
    assert x.graded_summands() == [(-2, 1, 2), (-1, 2, 1), (0, 3, 0)]
    # consecutive arrows compose to zero, so d^2 = 0 needs no sign tricks
    assert x.check_d_squared()


def test_arrow_cone_is_the_two_term_stable():
    p1, p2 = ProjComplex.projective(2, 1, 0, 1), ProjComplex.projective(2, 2)
    f = hom(p1, p2).basis[0]
    assert reduce(cone(f).cone).graded_summands() == stable_tau0(2, 1, 3).graded_summands()
    assert arrow_complex().graded_summands() == stable_tau0(2, 1, 3).graded_summands()


def test_invalid_differentials_rejected():
    with pytest.raises(ValueError):
        ProjComplex(3, {0: [(1, 0)], 1: [(3, 0)]}, {0: {(0, 0): 1}})  # no path 1 -> 3
    with pytest.raises(ValueError):
        ProjComplex(2, {0: [(1, 0)], 1: [(2, 0)]}, {0: {(0, 0): 1}})  # wrong degree
    assert not entry_allowed(3, (1, 0), (3, -2))


def test_shift_sign_and_degrees():
    x = arrow_complex()
    y = x.shift(1, 2)
    assert y.graded_summands() == [(0, 1, 3), (1, 2, 2)]
    assert y.diff(0) == {(0, 0): -1}
    assert x.suspend().graded_summands() == x.shift(-1, 0).graded_summands()
    assert x.triangulated_shift(1) == x.shift(1, -1)


@SETTINGS
@given(complexes(), st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3))
def test_shifts_compose(x, a, b, c, d):
    assert x.shift(a, b).shift(c, d) == x.shift(a + c, b + d)
    assert x.shift(a, b).shift(-a, -b) == x


@SETTINGS
@given(complexes())
def test_json_round_trip(x):
    assert ProjComplex.from_json(x.to_json()) == x


@SETTINGS
@given(complexes())
def test_cone_of_identity_is_contractible(x):
    c = cone(ChainMap.identity(x)).cone
    assert c.check_d_squared()
    assert is_contractible(c)


@SETTINGS
@given(complexes(), complexes(), st.integers(-1, 1), st.integers(-2, 2), st.data())
def test_cones_of_chain_maps_are_complexes(x, y, k, l, data):
    hs = hom(x, y, k, l)
    if not hs.dimension:
        return
    f = hs.basis[data.draw(st.integers(0, hs.dimension - 1))]
    assert f.is_chain_map()
    tri = cone(f)
    assert tri.cone.check_d_squared()
    assert tri.incl.is_chain_map() and tri.proj.is_chain_map()
    assert f.then(tri.incl).is_chain_map()


def test_direct_sum_and_zero():
    x = arrow_complex()
    z = ProjComplex.zero(2)
    assert (x + z) == x
    assert (x + x).summand_count() == 4
    assert z.is_zero() and z.summand_count() == 0


def test_chain_map_composition():
    x = arrow_complex()
    idx = ChainMap.identity(x)
    assert idx.then(idx).comps == idx.comps
    assert idx.scale(2).then(idx.scale(3)).comps == idx.scale(6).comps
    assert ChainMap.zero(x, x).is_zero()
