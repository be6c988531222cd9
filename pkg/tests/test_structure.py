from fractions import Fraction
from itertools import combinations

import pytest

from configspaces.core import (
    enumerate_independence_sets,
    from_nubs,
    mask_from_indices,
    relative_configuration,
    valuation_of,
)
from configspaces.mobius import TYPE_I, TYPE_II, classify, mobius_polynomial
from configspaces.poly import Polynomial
from configspaces.structure import (
    BadParameters,
    NotRightAngled,
    SelfLoop,
    UnknownDataset,
    builtin,
    clique_transfer,
    components,
    disjoint_union,
    from_dependence_graph,
    is_irreducible,
    is_right_angled,
    random_configuration,
    right_angled_properties,
    star,
    symmetric_counts,
    trace_count_cf,
    trace_series,
)

P = Polynomial


def test_components_examples():
    path = builtin("fig1-right")
    assert len(components(path).components) == 1
    two_edges = from_nubs(4, [{0, 1}, {2, 3}])
    decomposition = components(two_edges)
    assert [c.vertices for c in decomposition.components] == [0b0011, 0b1100]
    free = from_nubs(3, [])
    assert [c.vertices for c in components(free).components] == [1, 2, 4]


def test_components_restrict_nubs():
    c = from_nubs(5, [{0, 1}, {1, 2}, {3, 4}])
    parts = components(c).components
    assert parts[0].config.nubs == (0b011, 0b110)
    assert parts[1].config.nubs == (0b11,)
    assert parts[0].index_map == (0, 1, 2)
    assert parts[1].index_map == (3, 4)


def test_is_irreducible():
    for n in range(2, 6):
        for k in range(1, n):
            assert is_irreducible(star(n, k))
    assert not is_irreducible(star(3, 3))
    assert is_irreducible(from_nubs(1, []))
    assert not is_irreducible(from_nubs(2, []))


def test_is_right_angled():
    assert is_right_angled(builtin("fig1-right"))
    assert not is_right_angled(star(4, 3))
    assert is_right_angled(from_nubs(3, []))
    assert is_right_angled(builtin("dodecahedron"))


def test_from_dependence_graph():
    path = from_dependence_graph(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
    assert path.nubs == builtin("fig1-right").nubs
    complete = from_dependence_graph(3, [(0, 1), (0, 2), (1, 2)])
    assert sorted(enumerate_independence_sets(complete)) == [0, 1, 2, 4]
    empty = from_dependence_graph(3, [])
    assert len(list(enumerate_independence_sets(empty))) == 8
    with pytest.raises(SelfLoop):
        from_dependence_graph(3, [(1, 1)])


def test_star_polynomials():
    assert mobius_polynomial(star(3, 2)) == P([1, -3, 3])
    assert mobius_polynomial(star(4, 3)) == P([1, -4, 6, -4])
    assert mobius_polynomial(star(4, 4)) == P([1, -4, 6, -4, 1])
    assert star(4, 4).nubs == ()
    assert star(0, 0).n == 0
    with pytest.raises(BadParameters):
        star(3, 0)
    with pytest.raises(BadParameters):
        star(3, 4)


def test_star_mu_is_truncated_binomial():
    for n in range(1, 7):
        binom = P([1])
        for _ in range(n):
            binom = binom * P([1, -1])
        for k in range(1, n + 1):
            truncated = P(binom.coefficients[: k + 1])
            assert mobius_polynomial(star(n, k)) == truncated


def test_clique_transfer_condition():
    k2 = from_dependence_graph(2, [(0, 1)])
    transfer = clique_transfer(k2)
    assert set(transfer.cliques) == {0b01, 0b10}
    assert all(all(row) for row in transfer.matrix)
    free2 = from_nubs(2, [])
    transfer = clique_transfer(free2)
    lookup = {c: i for i, c in enumerate(transfer.cliques)}
    # after {a}, the clique {b} is not reachable: b commutes with a
    assert transfer.matrix[lookup[0b01]][lookup[0b10]] == 0
    assert transfer.matrix[lookup[0b01]][lookup[0b01]] == 1
    assert transfer.matrix[lookup[0b11]][lookup[0b01]] == 1


def test_trace_series_examples():
    k2 = from_dependence_graph(2, [(0, 1)])
    assert trace_series(k2, order=5).coefficients == (1, 2, 4, 8, 16, 32)
    free2 = from_nubs(2, [])
    assert trace_series(free2, order=5).coefficients == (1, 2, 3, 4, 5, 6)
    with pytest.raises(NotRightAngled):
        trace_series(star(4, 3))


def test_trace_count_examples():
    k2 = from_dependence_graph(2, [(0, 1)])
    assert trace_count_cf(k2, 0) == 1
    assert [trace_count_cf(k2, L) for L in range(6)] == [1, 2, 4, 8, 16, 32]
    with pytest.raises(NotRightAngled):
        trace_count_cf(star(4, 3), 2)


def test_trace_two_algorithms_agree(rng):
    graphs = [
        builtin("fig1-right"),
        from_dependence_graph(2, [(0, 1)]),
        builtin("complete-3"),
        from_dependence_graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]),
    ]
    for _ in range(8):
        n = rng.randint(1, 7)
        edges = [e for e in combinations(range(n), 2) if rng.random() < 0.4]
        graphs.append(from_dependence_graph(n, edges))
    for graph in graphs:
        series = trace_series(graph, order=8)
        counts = [trace_count_cf(graph, L) for L in range(9)]
        assert list(series.coefficients) == counts


def test_trace_weighted_agreement(rng):
    k3 = builtin("complete-3")
    f = valuation_of(k3, [Fraction(1, 2), Fraction(2, 3), Fraction(3, 4)])
    series = trace_series(k3, f, order=6)
    counts = [trace_count_cf(k3, L, f) for L in range(7)]
    assert list(series.coefficients) == counts


def test_right_angled_properties_path():
    report = right_angled_properties(builtin("fig1-right"))
    assert report.type_one and report.irreducible
    assert report.simple_root and report.relative_positive and report.monotone


def test_right_angled_properties_k3():
    report = right_angled_properties(builtin("complete-3"))
    assert report.type_one
    assert report.critical_root.value == Fraction(1, 3)
    assert report.simple_root and report.relative_positive


def test_right_angled_properties_reducible():
    k2 = from_dependence_graph(2, [(0, 1)])
    pair = disjoint_union(k2, k2)
    report = right_angled_properties(pair)
    assert report.type_one and not report.irreducible
    assert report.simple_root is None and report.relative_positive is None
    assert report.monotone
    with pytest.raises(NotRightAngled):
        right_angled_properties(star(4, 3))


def test_symmetric_counts_powerset():
    for n in (1, 3, 5):
        report = symmetric_counts(from_nubs(n, []))
        binomials = [len(list(combinations(range(n), k))) for k in range(n + 1)]
        assert list(report.counts) == binomials
        assert list(report.eta) == [n - j for j in range(n + 1)]
        assert report.formula_ok


def test_symmetric_counts_dodecahedron():
    report = symmetric_counts(builtin("dodecahedron"))
    assert report.counts == (1, 20, 30)
    assert report.eta == (20, 3, 0)
    assert report.formula_ok and report.failed_level is None


def test_symmetric_counts_asymmetric():
    report = symmetric_counts(builtin("fig1-left"))
    assert not report.formula_ok
    assert report.failed_level == 1
    assert report.eta[0] == 5 and report.eta[1] is None


def test_symmetric_counts_stars():
    for n, k in [(4, 2), (5, 3), (6, 4)]:
        report = symmetric_counts(star(n, k))
        assert report.formula_ok
        assert report.eta[:k] == tuple(n - j for j in range(k))


def test_builtin_names():
    left = builtin("fig1-left")
    assert left.labels == ("1", "2", "3", "4", "5")
    assert [left.labels_of(nub) for nub in left.nubs] == [
        ["1", "2"],
        ["1", "4"],
        ["3", "5"],
        ["2", "4", "5"],
    ]
    assert builtin("star-4-3").nubs == star(4, 3).nubs
    assert builtin("path-4").nubs == from_dependence_graph(4, [(0, 1), (1, 2), (2, 3)]).nubs
    assert builtin("complete-4").nubs == tuple(
        sorted(mask_from_indices(e) for e in combinations(range(4), 2))
    )
    with pytest.raises(UnknownDataset):
        builtin("klein-bottle")
    with pytest.raises(UnknownDataset):
        builtin("star-3-9")


def test_dodecahedron_graph_sanity():
    config = builtin("dodecahedron")
    assert config.n == 20
    non_edges = set(config.nubs)
    assert len(non_edges) == 190 - 30
    edges = {
        mask_from_indices(e)
        for e in combinations(range(20), 2)
        if mask_from_indices(e) not in non_edges
    }
    assert len(edges) == 30
    degree = [0] * 20
    for e in edges:
        for i in range(20):
            if (e >> i) & 1:
                degree[i] += 1
    assert degree == [3] * 20
    # triangle-free: no three mutually adjacent vertices
    adjacency = [set() for _ in range(20)]
    for e in edges:
        a, b = [i for i in range(20) if (e >> i) & 1]
        adjacency[a].add(b)
        adjacency[b].add(a)
    for a in range(20):
        for b in adjacency[a]:
            assert not (adjacency[a] & adjacency[b])
    # connected
    seen = {0}
    frontier = [0]
    while frontier:
        v = frontier.pop()
        for w in adjacency[v]:
            if w not in seen:
                seen.add(w)
                frontier.append(w)
    assert len(seen) == 20


def test_pairwise_parallel_equivalence(rng):
    # all nubs of size two iff every set of pairwise parallel vertices
    # is independent (brute force over subsets)
    for _ in range(40):
        n = rng.randint(2, 6)
        c = random_configuration(n, rng, include_probability=0.35)
        condition = True
        for mask in range(1 << n):
            verts = [i for i in range(n) if (mask >> i) & 1]
            if all(
                c.is_independent((1 << a) | (1 << b))
                for a, b in combinations(verts, 2)
            ):
                if not c.is_independent(mask):
                    condition = False
                    break
        assert condition == is_right_angled(c)


def test_right_angled_heredity(rng):
    for _ in range(20):
        n = rng.randint(2, 7)
        edges = [e for e in combinations(range(n), 2) if rng.random() < 0.4]
        c = from_dependence_graph(n, edges)
        for x in enumerate_independence_sets(c):
            view = relative_configuration(c, x)
            assert is_right_angled(view.standalone)


def test_disjoint_union_structure():
    a = star(3, 2)
    b = from_dependence_graph(2, [(0, 1)])
    union = disjoint_union(a, b)
    assert union.n == 5
    assert mobius_polynomial(union) == mobius_polynomial(a) * mobius_polynomial(b)
    parts = components(union).components
    assert [p.vertices for p in parts] == [0b00111, 0b11000]


def test_star_diagonal_alternation():
    for n in range(2, 9):
        result = classify(star(n, n - 1))
        assert result.critical_root.value == Fraction(1, 2)
        expected = TYPE_I if n % 2 == 0 else TYPE_II
        assert result.config_type == expected
