"""Exact arithmetic for hypergraph configurations and their Mobius polynomials.

A configuration is a finite vertex set with a downward closed family of
independence sets containing every singleton, stored by its nubs (the
minimal dependent sets).  This package computes the family of relative
Mobius polynomials, isolates the critical root exactly, classifies
configurations as type I or II, and constructs and verifies the
canonical finite probability space attached to each configuration.
"""

from .core import (
    Configuration,
    Valuation,
    RelativeView,
    from_nubs,
    from_independence_list,
    is_independent,
    enumerate_independence_sets,
    nubs_of,
    is_parallel,
    relative_configuration,
    valuation_of,
    canonical_key,
)
from .mobius import (
    Classification,
    MobiusFamily,
    RestBound,
    TYPE_I,
    TYPE_II,
    classify,
    critical_root,
    derivative_identity_residual,
    inversion_check,
    mobius_polynomial,
    mobius_transform,
    relative_mobius,
    rest_polynomial,
)
from .poly import (
    AlgebraicRoot,
    Polynomial,
    Series,
    compare_roots,
    first_positive_root,
    series_inverse,
    sturm_count,
)
from .probspace import (
    ConfiguredSpace,
    RealizationReport,
    SignedWord,
    atoms_from_intersections,
    canonical_space,
    event_probability,
    probabilistic_range,
    sample,
    verify_realization,
)
from .structure import (
    CliqueTransfer,
    Decomposition,
    builtin,
    clique_transfer,
    components,
    disjoint_union,
    from_dependence_graph,
    is_irreducible,
    is_right_angled,
    right_angled_properties,
    star,
    symmetric_counts,
    trace_count_cf,
    trace_series,
)

__version__ = "0.1.0"
