"""Canonical probability spaces realizing a configuration.

Given a rational event probability t in the feasible range, the
canonical space has one atom per independence set x with exact mass
m(x) = f(x) t^|x| mu^{|x}(t); the masses sum to one.  Sign-word atoms
(which vertices occur, which are negated) are derived on demand.

Feasibility is decided pointwise: t is admissible iff every relative
polynomial is nonnegative at t, which holds exactly on [0, t0] with t0
the critical root.  No root isolation is needed to build a space.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Union

from .core import Configuration, DEFAULT_ENUMERATION_CAP, Valuation
from .mobius import MobiusFamily, TrivialConfiguration
from .poly import AlgebraicRoot

__all__ = [
    "SignedWord",
    "ConfiguredSpace",
    "RealizationReport",
    "OutOfRange",
    "MissingEntry",
    "InfeasibleIntersections",
    "atoms_from_intersections",
    "event_probability",
    "canonical_space",
    "verify_realization",
    "probabilistic_range",
    "sample",
    "SplitMix64",
]


class OutOfRange(ValueError):
    """t lies outside the feasible range; carries a witness set."""

    def __init__(self, t: Fraction, witness: int, value: Fraction):
        super().__init__(
            f"t = {t} is outside the probabilistic range: the relative "
            f"polynomial of set mask {witness} evaluates to {value} < 0"
        )
        self.t = t
        self.witness = witness
        self.value = value


class MissingEntry(ValueError):
    """The prescribed intersection table is not defined on every subset."""


class InfeasibleIntersections(ValueError):
    """The prescribed intersections force a negative atom mass."""

    def __init__(self, negatives: list[tuple[int, Fraction]]):
        super().__init__(
            f"{len(negatives)} atom(s) would get negative mass; first: {negatives[0]}"
        )
        self.negatives = negatives


@dataclass(frozen=True)
class SignedWord:
    """A partial assignment: these vertices occur, those are negated."""

    positives: int
    negatives: int

    def __post_init__(self) -> None:
        if self.positives & self.negatives:
            raise ValueError("a vertex cannot be both positive and negative")

    def is_full(self, n: int) -> bool:
        return (self.positives | self.negatives) == (1 << n) - 1


@dataclass(frozen=True, eq=False)
class ConfiguredSpace:
    """Finite probability space with atoms indexed by independence sets."""

    config: Configuration
    valuation: Valuation
    t: Fraction
    atoms: dict[int, Fraction]
    _family: MobiusFamily = field(repr=False)

    def mass(self, x: int) -> Fraction:
        return self.atoms[x]

    def rest(self) -> Fraction:
        """Mass left uncovered by the vertex events; equals the atom at the empty set."""
        return self.atoms[0]

    def sorted_atoms(self) -> list[tuple[int, Fraction]]:
        return sorted(self.atoms.items(), key=lambda kv: (kv[0].bit_count(), kv[0]))


@dataclass
class RealizationReport:
    marginals_ok: bool
    independence_ok: bool
    exclusivity_ok: bool
    covering: bool
    rest: Fraction
    violations: list[str]

    @property
    def ok(self) -> bool:
        return self.marginals_ok and self.independence_ok and self.exclusivity_ok


def atoms_from_intersections(
    n: int, q: Mapping[int, Fraction]
) -> dict[SignedWord, Fraction]:
    """Atom masses forced by prescribed intersection probabilities.

    ``q[mask]`` prescribes the probability that all vertices in mask
    occur jointly; it must be defined for every subset with q[0] = 1.
    The mass of the full sign word with positive part y is the
    alternating sum of q over supersets of y.  Raises
    :class:`InfeasibleIntersections` when any mass comes out negative,
    listing the offending words.
    """
    size = 1 << n
    table = []
    for mask in range(size):
        if mask not in q:
            raise MissingEntry(f"no intersection probability for mask {mask}")
        table.append(Fraction(q[mask]))
    if table[0] != 1:
        raise ValueError("the empty intersection must have probability 1")
    # Superset Mobius transform, one bit at a time.
    for i in range(n):
        bit = 1 << i
        for mask in range(size):
            if not mask & bit:
                table[mask] -= table[mask | bit]
    negatives = [(mask, table[mask]) for mask in range(size) if table[mask] < 0]
    if negatives:
        raise InfeasibleIntersections(negatives)
    full = size - 1
    return {
        SignedWord(positives=mask, negatives=full ^ mask): table[mask]
        for mask in range(size)
    }


def event_probability(
    source: Union[ConfiguredSpace, Mapping[SignedWord, Fraction]],
    word: SignedWord,
) -> Fraction:
    """Probability of a sign word: total mass of full words extending it."""
    total = Fraction(0)
    if isinstance(source, ConfiguredSpace):
        for x, mass in source.atoms.items():
            if x & word.positives == word.positives and x & word.negatives == 0:
                total += mass
        return total
    for atom, mass in source.items():
        if (
            atom.positives & word.positives == word.positives
            and atom.positives & word.negatives == 0
        ):
            total += mass
    return total


def canonical_space(
    config: Configuration,
    valuation: Valuation | None = None,
    t: Fraction | int | str = Fraction(0),
    max_vertices: int = DEFAULT_ENUMERATION_CAP,
) -> ConfiguredSpace:
    """The canonical configured space at rational t.

    Raises :class:`OutOfRange` with a witness independence set whenever
    some relative polynomial is negative at t, which happens exactly for
    t above the critical root.
    """
    t = Fraction(t)
    if t < 0:
        raise OutOfRange(t, 0, t)
    family = MobiusFamily(config, valuation, max_vertices)
    atoms: dict[int, Fraction] = {}
    for x in family.members():
        relative_value = family.relative(x)(t)
        if relative_value < 0:
            raise OutOfRange(t, x, relative_value)
        atoms[x] = family.valuation.of(x) * t ** x.bit_count() * relative_value
    total = sum(atoms.values())
    if total != 1:
        raise AssertionError(f"atom masses sum to {total}, not 1")
    return ConfiguredSpace(
        config=config, valuation=family.valuation, t=t, atoms=atoms, _family=family
    )


def verify_realization(space: ConfiguredSpace) -> RealizationReport:
    """Exact check of the three realization conditions.

    Marginals: each vertex event has probability t f(a).  Independence:
    for every independence set the joint probability is the product of
    marginals (all sizes, not just pairs).  Exclusivity: every nub has
    joint probability zero; upward closure makes nub checking
    sufficient.  Violations are reported, never raised.
    """
    config, valuation, t = space.config, space.valuation, space.t
    violations: list[str] = []
    marginals_ok = True
    for a in range(config.n):
        got = event_probability(space, SignedWord(1 << a, 0))
        want = t * valuation.weights[a]
        if got != want:
            marginals_ok = False
            violations.append(
                f"marginal of {config.label_of(a)}: {got} != {want}"
            )
    independence_ok = True
    for x in space.atoms:
        got = event_probability(space, SignedWord(x, 0))
        want = valuation.of(x) * t ** x.bit_count()
        if got != want:
            independence_ok = False
            violations.append(
                f"joint probability of {config.word(x)}: {got} != {want}"
            )
    exclusivity_ok = True
    for nub in config.nubs:
        got = event_probability(space, SignedWord(nub, 0))
        if got != 0:
            exclusivity_ok = False
            violations.append(f"nub {config.word(nub)} has joint probability {got}")
    rest = space.rest()
    mu_at_t = space._family.mu()(t)
    if rest != mu_at_t:
        violations.append(f"rest {rest} disagrees with mu(t) = {mu_at_t}")
    return RealizationReport(
        marginals_ok=marginals_ok,
        independence_ok=independence_ok,
        exclusivity_ok=exclusivity_ok,
        covering=(rest == 0),
        rest=rest,
        violations=violations,
    )


def probabilistic_range(
    config: Configuration,
    valuation: Valuation | None = None,
    max_vertices: int = DEFAULT_ENUMERATION_CAP,
) -> AlgebraicRoot:
    """The critical root t0: the range of feasible t is exactly [0, t0]."""
    if config.n == 0:
        raise TrivialConfiguration("the empty configuration has no critical root")
    family = MobiusFamily(config, valuation, max_vertices)
    return family.critical_root()[0]


_MASK64 = (1 << 64) - 1


class SplitMix64:
    """Deterministic 64-bit generator (SplitMix mixing constants).

    state' = state + 0x9E3779B97F4A7C15; the output mixes the new state
    with xor-shifts and the multipliers 0xBF58476D1CE4E5B9 and
    0x94D049BB133111EB.  Identical seeds give identical streams on
    every platform.
    """

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_word(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)


def sample(space: ConfiguredSpace, count: int, seed: int) -> dict[int, int]:
    """Multinomial draw of atoms; identical seeds give identical tallies.

    Atom boundaries are the exact cumulative masses scaled to 2**64 and
    floored, so each atom's draw probability is within 2**-64 of its
    mass; draws are uniform 64-bit words binary-searched against the
    boundaries.
    """
    if count < 0:
        raise ValueError("count must be nonnegative")
    atoms = space.sorted_atoms()
    boundaries = []
    cumulative = Fraction(0)
    for _, mass in atoms:
        cumulative += mass
        boundaries.append((cumulative.numerator << 64) // cumulative.denominator)
    tallies = {mask: 0 for mask, _ in atoms}
    rng = SplitMix64(seed)
    for _ in range(count):
        word = rng.next_word()
        lo, hi = 0, len(boundaries) - 1
        while lo < hi:
            mid = (lo + hi) // 2
            if word < boundaries[mid]:
                hi = mid
            else:
                lo = mid + 1
        tallies[atoms[lo][0]] += 1
    return tallies
