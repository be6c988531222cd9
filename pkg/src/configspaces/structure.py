"""Structural analyses and datasets.

Covers decomposition into nub-connected components, right-angled
configurations (all nubs are pairs) with their trace-monoid series and
normal-form counting, star configurations, the symmetric counting
formula, and the named built-in datasets.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .core import (
    Configuration,
    DEFAULT_ENUMERATION_CAP,
    Valuation,
    default_labels,
    enumerate_independence_sets,
    from_nubs,
    indices_of,
    mask_from_indices,
)
from .mobius import MobiusFamily, TYPE_I
from .poly import (
    AlgebraicRoot,
    Series,
    poly_gcd,
    refine_root,
    series_inverse,
    sign_at_root,
)

__all__ = [
    "Component",
    "Decomposition",
    "CliqueTransfer",
    "RightAngledReport",
    "SymmetricCountReport",
    "NotRightAngled",
    "SelfLoop",
    "BadParameters",
    "UnknownDataset",
    "components",
    "is_irreducible",
    "is_right_angled",
    "from_dependence_graph",
    "star",
    "clique_transfer",
    "trace_series",
    "trace_count_cf",
    "right_angled_properties",
    "symmetric_counts",
    "builtin",
    "BUILTIN_NAMES",
    "disjoint_union",
    "random_configuration",
    "random_valuation",
]


class NotRightAngled(ValueError):
    """Operation requires every nub to be a pair."""


class SelfLoop(ValueError):
    """Dependence edges must join two distinct vertices."""


class BadParameters(ValueError):
    """Star parameters must satisfy 1 <= k <= n (or n = k = 0)."""


class UnknownDataset(ValueError):
    """No built-in configuration under that name."""


@dataclass(frozen=True)
class Component:
    vertices: int
    config: Configuration
    index_map: tuple[int, ...]


@dataclass(frozen=True)
class Decomposition:
    components: tuple[Component, ...]


def components(config: Configuration) -> Decomposition:
    """Connected components of the nub hypergraph.

    Vertices sharing a nub are connected; vertices in no nub form
    singleton components.  Independence in the whole configuration is
    equivalent to independence of the restriction to every part.
    """
    parent = list(range(config.n))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for nub in config.nubs:
        verts = indices_of(nub)
        for other in verts[1:]:
            parent[find(verts[0])] = find(other)
    groups: dict[int, list[int]] = {}
    for i in range(config.n):
        groups.setdefault(find(i), []).append(i)
    parts = []
    for verts in sorted(groups.values(), key=lambda g: g[0]):
        mask = mask_from_indices(verts)
        position = {orig: j for j, orig in enumerate(verts)}
        nubs = tuple(
            mask_from_indices(position[i] for i in indices_of(nub))
            for nub in config.nubs
            if nub & mask == nub
        )
        sub = Configuration(
            n=len(verts),
            labels=tuple(config.labels[i] for i in verts),
            nubs=tuple(sorted(nubs, key=lambda m: (m.bit_count(), m))),
        )
        parts.append(Component(vertices=mask, config=sub, index_map=tuple(verts)))
    return Decomposition(components=tuple(parts))


def is_irreducible(config: Configuration) -> bool:
    """True iff the nub hypergraph is connected."""
    return len(components(config).components) <= 1


def is_right_angled(config: Configuration) -> bool:
    """True iff every nub has exactly two vertices (vacuous if none)."""
    return all(nub.bit_count() == 2 for nub in config.nubs)


def from_dependence_graph(
    n: int,
    edges: Iterable[tuple[int, int]],
    labels: Sequence[str] | None = None,
) -> Configuration:
    """Right-angled configuration of a dependence graph.

    Nubs are the edges; the independence family is the set of cliques of
    the complementary relation.
    """
    masks = []
    for a, b in edges:
        if a == b:
            raise SelfLoop(f"edge ({a}, {b}) joins a vertex to itself")
        masks.append((1 << a) | (1 << b))
    return from_nubs(n, masks, labels)


def star(n: int, k: int) -> Configuration:
    """The star configuration: n vertices, independent = size at most k.

    Nubs are all (k+1)-subsets; empty for k = n.  The Mobius polynomial
    is (1-t)^n truncated to degree k.
    """
    if n == k == 0:
        return from_nubs(0, (), ())
    if not 1 <= k <= n:
        raise BadParameters(f"need 1 <= k <= n, got n={n}, k={k}")
    nubs = (mask_from_indices(c) for c in combinations(range(n), k + 1))
    return from_nubs(n, nubs)


@dataclass(frozen=True)
class CliqueTransfer:
    """Transfer structure for normal-form counting.

    ``cliques`` lists the nonempty independence sets (the commuting
    cliques); ``matrix[i][j]`` is 1 iff clique j may follow clique i,
    i.e. every vertex of j is dependent on (or equal to) some vertex
    of i.
    """

    cliques: tuple[int, ...]
    matrix: tuple[tuple[int, ...], ...]


def _dependence_closure_masks(config: Configuration) -> list[int]:
    """For each vertex, the vertex itself plus its nub partners."""
    closure = [1 << a for a in range(config.n)]
    for nub in config.nubs:
        verts = indices_of(nub)
        for a in verts:
            for b in verts:
                closure[a] |= 1 << b
    return closure


def clique_transfer(
    config: Configuration, max_vertices: int = DEFAULT_ENUMERATION_CAP
) -> CliqueTransfer:
    if not is_right_angled(config):
        raise NotRightAngled("transfer counting needs all nubs of size 2")
    cliques = tuple(
        x for x in enumerate_independence_sets(config, max_vertices) if x
    )
    closure = _dependence_closure_masks(config)
    successors = []
    for c in cliques:
        allowed = 0
        for a in indices_of(c):
            allowed |= closure[a]
        successors.append(allowed)
    matrix = tuple(
        tuple(1 if successor & ~allowed == 0 else 0 for successor in cliques)
        for allowed in successors
    )
    return CliqueTransfer(cliques=cliques, matrix=matrix)


def trace_series(
    config: Configuration,
    valuation: Valuation | None = None,
    order: int = 8,
    max_vertices: int = DEFAULT_ENUMERATION_CAP,
) -> Series:
    """Generating series of the trace monoid: the inverse of mu.

    Only defined for right-angled configurations; the coefficients count
    (weighted) monoid elements by length and are always nonnegative.
    """
    if not is_right_angled(config):
        raise NotRightAngled("the trace series needs all nubs of size 2")
    mu = MobiusFamily(config, valuation, max_vertices).mu()
    result = series_inverse(mu, order)
    assert all(c >= 0 for c in result.coefficients), (
        "inverse of a right-angled Mobius polynomial went negative"
    )
    return result


def trace_count_cf(
    config: Configuration,
    length: int,
    valuation: Valuation | None = None,
    max_vertices: int = DEFAULT_ENUMERATION_CAP,
) -> int | Fraction:
    """Count monoid elements of one length via the normal form.

    An element is a sequence of nonempty commuting cliques where every
    vertex of a clique is dependent on some vertex of the previous one;
    lengths add up.  Dynamic programming over the transfer structure;
    the weighted variant multiplies vertex weights along the element.
    """
    if not is_right_angled(config):
        raise NotRightAngled("normal-form counting needs all nubs of size 2")
    if length < 0:
        raise ValueError("length must be nonnegative")
    clique_set = set(enumerate_independence_sets(config, max_vertices))
    clique_set.discard(0)
    closure = _dependence_closure_masks(config)
    zero = 0 if valuation is None else Fraction(0)
    one = 1 if valuation is None else Fraction(1)
    weights = {c: one if valuation is None else valuation.of(c) for c in clique_set}
    allowed_after = {}
    for c in clique_set:
        mask = 0
        for a in indices_of(c):
            mask |= closure[a]
        allowed_after[c] = mask

    # tails[(allowed, remaining)] = weighted count of clique sequences of
    # total size `remaining` whose first clique fits inside `allowed`.
    tails: dict[tuple[int, int], int | Fraction] = {}

    def tail(allowed: int, remaining: int):
        if remaining == 0:
            return one
        key = (allowed, remaining)
        if key not in tails:
            total = zero
            sub = allowed
            while sub:
                if sub in clique_set and sub.bit_count() <= remaining:
                    total += weights[sub] * tail(allowed_after[sub], remaining - sub.bit_count())
                sub = (sub - 1) & allowed
            tails[key] = total
        return tails[key]

    return tail(config.vertex_mask, length)


@dataclass(frozen=True)
class RightAngledReport:
    type_one: bool
    irreducible: bool
    critical_root: AlgebraicRoot
    simple_root: bool | None
    relative_positive: bool | None
    monotone: bool


def right_angled_properties(
    config: Configuration,
    valuation: Valuation | None = None,
    max_vertices: int = DEFAULT_ENUMERATION_CAP,
) -> RightAngledReport:
    """Certified checks of the right-angled package of properties.

    (a) the classification is type I; (b) when irreducible, the critical
    root is a simple root of mu, certified through gcd(mu, mu');
    (c) when irreducible, every relative polynomial with nonempty anchor
    is strictly positive at the critical root, certified by interval
    evaluation; (d) relative polynomials are monotone under anchor
    inclusion at sampled rational points in (0, t0].
    """
    if not is_right_angled(config):
        raise NotRightAngled("property report needs all nubs of size 2")
    family = MobiusFamily(config, valuation, max_vertices)
    result = family.classify()
    root = result.critical_root
    irreducible = is_irreducible(config)

    simple: bool | None = None
    positive: bool | None = None
    if irreducible:
        mu = family.mu()
        g = poly_gcd(mu, mu.derivative())
        simple = g.degree < 1 or sign_at_root(g, root) != 0
        positive = all(
            sign_at_root(family.relative(x), root) > 0
            for x in family.members()
            if x != 0
        )

    # Monotonicity under anchor inclusion, sampled on covering pairs:
    # a smaller anchor has a smaller relative polynomial on (0, t0].
    if root.is_rational:
        top = root.value
    else:
        narrowed = root
        while narrowed.lo <= 0:
            narrowed = refine_root(narrowed)
        top = narrowed.lo
    samples = [top * Fraction(k, 4) for k in (1, 2, 3, 4)]
    monotone = True
    for x in family.members():
        if x == 0:
            continue
        for i in indices_of(x):
            y = x ^ (1 << i)
            px, py = family.relative(x), family.relative(y)
            if any(py(t) > px(t) for t in samples):
                monotone = False
    return RightAngledReport(
        type_one=result.config_type == TYPE_I,
        irreducible=irreducible,
        critical_root=root,
        simple_root=simple,
        relative_positive=positive,
        monotone=monotone,
    )


@dataclass(frozen=True)
class SymmetricCountReport:
    counts: tuple[int, ...]
    eta: tuple[int | None, ...]
    formula_ok: bool
    failed_level: int | None


def symmetric_counts(
    config: Configuration, max_vertices: int = DEFAULT_ENUMERATION_CAP
) -> SymmetricCountReport:
    """Level counts and the factorial counting formula.

    ``counts[j]`` is the number of independence sets of size j.  When
    the number of vertices parallel to x depends only on |x| (value
    eta_j), the counts satisfy k! * counts[k] = eta_0 * ... * eta_{k-1};
    the report records the eta values (None at the first non-constant
    level and beyond) and whether the formula holds at every level,
    including the coefficient form of the Mobius polynomial.
    """
    family = MobiusFamily(config, max_vertices=max_vertices)
    members = family.members()
    top = max(x.bit_count() for x in members)
    counts = [0] * (top + 1)
    parallel_sizes: list[set[int]] = [set() for _ in range(top + 1)]
    for x in members:
        size = x.bit_count()
        counts[size] += 1
        free = 0
        for a in range(config.n):
            bit = 1 << a
            if not x & bit and config.is_independent(x | bit):
                free += 1
        parallel_sizes[size].add(free)
    eta: list[int | None] = []
    failed_level: int | None = None
    for level, values in enumerate(parallel_sizes):
        if failed_level is None and len(values) == 1:
            eta.append(values.pop())
        else:
            if failed_level is None:
                failed_level = level
            eta.append(None)
    formula_ok = failed_level is None
    if formula_ok:
        factorial = 1
        product = 1
        for k in range(top + 1):
            if k:
                factorial *= k
                product *= eta[k - 1]
            if counts[k] * factorial != product:
                formula_ok = False
                break
        mu = family.mu()
        coeffs = mu.coefficients
        if len(coeffs) != top + 1:
            formula_ok = False
        else:
            factorial = 1
            product = 1
            for k in range(top + 1):
                if k:
                    factorial *= k
                    product *= eta[k - 1]
                expected = Fraction((-1) ** k * product, factorial)
                if coeffs[k] != expected:
                    formula_ok = False
                    break
    return SymmetricCountReport(
        counts=tuple(counts),
        eta=tuple(eta),
        formula_ok=formula_ok,
        failed_level=failed_level,
    )


# Dodecahedral graph in LCF notation: a 20-cycle plus chords.
_DODECAHEDRON_LCF = (10, 7, 4, -4, -7, 10, -4, 7, -7, 4)


def _dodecahedron_edges() -> set[frozenset[int]]:
    edges = {frozenset((i, (i + 1) % 20)) for i in range(20)}
    for i in range(20):
        jump = _DODECAHEDRON_LCF[i % 10]
        edges.add(frozenset((i, (i + jump) % 20)))
    return edges


def _dodecahedron() -> Configuration:
    """Vertices of the dodecahedron; independent = subsets of an edge.

    Encoded extensionally through its nubs, which are exactly the
    non-adjacent vertex pairs (the graph has no triangles, so no larger
    minimal dependent set hides behind the pairs).  Note that under the
    pairs-only criterion this encoding is itself right-angled.
    """
    edges = _dodecahedron_edges()
    nubs = [
        (1 << a) | (1 << b)
        for a, b in combinations(range(20), 2)
        if frozenset((a, b)) not in edges
    ]
    return from_nubs(20, nubs, tuple(str(i + 1) for i in range(20)))


BUILTIN_NAMES = (
    "fig1-left",
    "fig1-right",
    "dodecahedron",
    "star-N-K",
    "path-N",
    "complete-N",
)


def builtin(name: str) -> Configuration:
    """Named datasets; star-n-k, path-n, complete-n are parametric."""
    if name == "fig1-left":
        return from_nubs(
            5,
            [{0, 1}, {0, 3}, {2, 4}, {1, 3, 4}],
            tuple(str(i + 1) for i in range(5)),
        )
    if name == "fig1-right":
        return from_dependence_graph(
            5, [(0, 1), (1, 2), (2, 3), (3, 4)], tuple(str(i + 1) for i in range(5))
        )
    if name == "dodecahedron":
        return _dodecahedron()
    parts = name.split("-")
    try:
        if len(parts) == 3 and parts[0] == "star":
            return star(int(parts[1]), int(parts[2]))
        if len(parts) == 2 and parts[0] == "path":
            n = int(parts[1])
            return from_dependence_graph(
                n, [(i, i + 1) for i in range(n - 1)], tuple(str(i + 1) for i in range(n))
            )
        if len(parts) == 2 and parts[0] == "complete":
            n = int(parts[1])
            return from_dependence_graph(
                n,
                [(a, b) for a, b in combinations(range(n), 2)],
                tuple(str(i + 1) for i in range(n)),
            )
    except (ValueError, BadParameters) as exc:
        raise UnknownDataset(f"bad dataset parameters in {name!r}: {exc}") from exc
    raise UnknownDataset(f"no built-in configuration named {name!r}")


def disjoint_union(left: Configuration, right: Configuration) -> Configuration:
    """Place two configurations side by side (fresh default labels)."""
    n = left.n + right.n
    nubs = list(left.nubs) + [nub << left.n for nub in right.nubs]
    return from_nubs(n, nubs, default_labels(n))


def random_configuration(
    n: int,
    rng: random.Random,
    include_probability: float = 0.25,
    sizes: tuple[int, ...] = (2, 3, 4),
) -> Configuration:
    """Random nub family: each candidate subset of the given sizes is
    included independently, then reduced to an antichain."""
    nubs = []
    for size in sizes:
        if size > n:
            continue
        for combo in combinations(range(n), size):
            if rng.random() < include_probability:
                nubs.append(mask_from_indices(combo))
    return from_nubs(n, nubs)


def random_valuation(
    config: Configuration,
    rng: random.Random,
    max_numerator: int = 8,
    max_denominator: int = 8,
) -> Valuation:
    weights = tuple(
        Fraction(rng.randint(1, max_numerator), rng.randint(1, max_denominator))
        for _ in range(config.n)
    )
    return Valuation(weights)
