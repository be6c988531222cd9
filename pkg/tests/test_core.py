from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from configspaces.core import (
    MissingSingleton,
    NonPositiveWeight,
    NotDownwardClosed,
    NotIndependent,
    SingletonNub,
    TooLarge,
    VertexOutOfRange,
    canonical_key,
    default_labels,
    enumerate_independence_sets,
    from_independence_list,
    from_nubs,
    is_independent,
    is_parallel,
    mask_from_indices,
    nubs_of,
    relative_configuration,
    valuation_of,
)
from configspaces.structure import random_configuration, star

from conftest import brute_independence_family

FIG1_LEFT_FAMILY = (
    [()]
    + [(i,) for i in range(5)]
    + [(0, 2), (0, 4), (1, 2), (1, 3), (1, 4), (2, 3), (3, 4)]
    + [(1, 2, 3)]
)


def test_from_nubs_single_triple():
    c = from_nubs(3, [{0, 1, 2}])
    assert c.nubs == (0b111,)
    assert c.is_independent(0b011)
    assert not c.is_independent(0b111)


def test_from_nubs_empty_dependence():
    c = from_nubs(2, [])
    assert c.nubs == ()
    assert sorted(enumerate_independence_sets(c)) == [0, 1, 2, 3]


def test_from_nubs_antichain_reduction():
    c = from_nubs(3, [{0, 1}, {0, 1, 2}])
    assert c.nubs == (0b011,)


def test_from_nubs_errors():
    with pytest.raises(SingletonNub):
        from_nubs(3, [{0}])
    with pytest.raises(VertexOutOfRange):
        from_nubs(2, [{0, 5}])


def test_from_independence_list_fig1_left():
    c = from_independence_list(5, FIG1_LEFT_FAMILY)
    assert c.nubs == tuple(
        sorted(
            [mask_from_indices(s) for s in [{0, 1}, {0, 3}, {2, 4}, {1, 3, 4}]],
            key=lambda m: (m.bit_count(), m),
        )
    )


def test_from_independence_list_full_powerset():
    c = from_independence_list(3, range(8))
    assert c.nubs == ()


def test_from_independence_list_path():
    family = (
        [()]
        + [(i,) for i in range(5)]
        + [(0, 2), (0, 3), (0, 4), (1, 3), (1, 4), (2, 4)]
        + [(0, 2, 4)]
    )
    c = from_independence_list(5, family)
    assert c.nubs == (0b00011, 0b00110, 0b01100, 0b11000)


def test_from_independence_list_errors():
    with pytest.raises(MissingSingleton):
        from_independence_list(2, [()])
    with pytest.raises(NotDownwardClosed):
        from_independence_list(2, [(0,), (1,), (0, 1)])  # empty set missing
    with pytest.raises(NotDownwardClosed):
        from_independence_list(3, [(), (0,), (1,), (2,), (0, 1, 2)])


def test_is_independent_examples():
    s32 = star(3, 2)
    assert is_independent(s32, 0b011)
    assert not is_independent(s32, 0b111)
    assert is_independent(s32, 0)


def test_enumerate_counts():
    assert len(list(enumerate_independence_sets(star(4, 3)))) == 15
    left = from_independence_list(5, FIG1_LEFT_FAMILY)
    assert len(list(enumerate_independence_sets(left))) == 14
    assert len(list(enumerate_independence_sets(from_nubs(3, [])))) == 8


def test_enumerate_cap():
    c = from_nubs(10, [])
    with pytest.raises(TooLarge):
        list(enumerate_independence_sets(c, max_vertices=8))


def test_nubs_roundtrip():
    c = from_nubs(5, [{0, 1}, {2, 3, 4}])
    rebuilt = from_independence_list(5, enumerate_independence_sets(c))
    assert nubs_of(rebuilt) == nubs_of(c)


def test_is_parallel():
    s43 = star(4, 3)
    assert is_parallel(s43, 0b0001, 0b0010)
    assert not is_parallel(s43, 0b0011, 0b1100)
    assert is_parallel(s43, 0, 0b0100)
    assert not is_parallel(s43, 0b0001, 0b0011)  # not disjoint
    with pytest.raises(NotIndependent):
        is_parallel(s43, 0b1111, 0)


def test_relative_configuration_star():
    s43 = star(4, 3)
    view = relative_configuration(s43, 0b1000)
    assert view.vertices == 0b0111
    assert view.relative_nubs == (0b0111,)
    assert view.standalone.n == 3
    assert view.standalone.nubs == (0b111,)
    # relative to the empty set is the configuration itself
    identity = relative_configuration(s43, 0)
    assert identity.standalone == s43
    # S(n,k) relative to a j-set looks like S(n-j, k-j)
    view2 = relative_configuration(star(6, 4), 0b000011)
    assert view2.standalone.nubs == star(4, 2).nubs
    with pytest.raises(NotIndependent):
        relative_configuration(s43, 0b1111)


def test_relative_keeps_original_indices():
    c = from_nubs(4, [{0, 1}, {1, 2, 3}])
    view = relative_configuration(c, 0b0010)  # anchor vertex 1
    assert view.vertices == 0b1100
    assert view.relative_nubs == (0b1100,)
    assert view.index_map == (2, 3)
    assert view.standalone.labels == ("c", "d")


def test_valuation():
    c = star(2, 1)
    uniform = valuation_of(c)
    assert uniform.of(0b11) == 1
    weighted = valuation_of(c, [Fraction(1, 2), Fraction(1, 3)])
    assert weighted.of(0b11) == Fraction(1, 6)
    assert weighted.of(0) == 1
    with pytest.raises(NonPositiveWeight):
        valuation_of(c, [Fraction(0), Fraction(1)])


def test_canonical_key():
    a = from_nubs(3, [{0, 1, 2}])
    b = star(3, 2)
    assert canonical_key(a) == canonical_key(b)
    path3 = from_nubs(3, [{0, 1}, {1, 2}])
    assert canonical_key(a) != canonical_key(path3)
    relabeled = from_nubs(3, [{0, 1, 2}], labels=("x", "y", "z"))
    assert canonical_key(relabeled) == canonical_key(a)


def test_default_labels():
    assert default_labels(3) == ("a", "b", "c")
    assert default_labels(30)[26] == "v26"


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=1, max_value=7), st.randoms(use_true_random=False))
def test_roundtrip_random(n, pyrandom):
    c = random_configuration(n, pyrandom)
    family = list(enumerate_independence_sets(c))
    rebuilt = from_independence_list(n, family)
    assert rebuilt.nubs == c.nubs


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=1, max_value=7), st.randoms(use_true_random=False))
def test_enumeration_matches_brute_force(n, pyrandom):
    c = random_configuration(n, pyrandom)
    assert set(enumerate_independence_sets(c)) == brute_independence_family(c)


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=1, max_value=7), st.randoms(use_true_random=False))
def test_downward_closure(n, pyrandom):
    c = random_configuration(n, pyrandom)
    for x in enumerate_independence_sets(c):
        for i in range(n):
            if (x >> i) & 1:
                assert c.is_independent(x ^ (1 << i))


def test_relative_composition(rng):
    for _ in range(60):
        n = rng.randint(2, 8)
        c = random_configuration(n, rng)
        members = list(enumerate_independence_sets(c))
        x = rng.choice(members)
        view_x = relative_configuration(c, x)
        inner = list(enumerate_independence_sets(view_x.standalone))
        z_local = rng.choice(inner)
        z = mask_from_indices(view_x.index_map[i] for i in range(view_x.standalone.n) if (z_local >> i) & 1)
        via_two_steps = relative_configuration(view_x.standalone, z_local).standalone
        direct = relative_configuration(c, x | z).standalone
        assert via_two_steps == direct


def test_parallel_order_link(rng):
    # x <= y among independence sets iff y = x + z for a unique z
    # independent in the view relative to x; that z is y minus x.
    for _ in range(40):
        n = rng.randint(2, 7)
        c = random_configuration(n, rng)
        members = list(enumerate_independence_sets(c))
        view_cache = {}
        for y in members:
            for x in members:
                if x & y == x:
                    view = view_cache.get(x)
                    if view is None:
                        view = view_cache[x] = relative_configuration(c, x)
                    z = y & ~x
                    assert z & view.vertices == z
                    local = mask_from_indices(
                        view.index_map.index(i)
                        for i in range(n)
                        if (z >> i) & 1
                    )
                    assert view.standalone.is_independent(local)
