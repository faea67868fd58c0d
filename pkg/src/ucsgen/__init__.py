"""Isomorph-free generation of union-closed set families on universes of
up to seven elements, with Moore-family and sparse-class tallies."""

from .canon import (
    EQUAL,
    LARGER,
    SMALLER,
    canonical_step,
    compare_image,
    family_string,
    is_canonical_naive,
    stabilizer_chain,
)
from .counts import (
    CountsReport,
    build_report,
    build_reports,
    complement_family,
    emit_report,
    moore_from_ucs,
    sparse_count,
)
from .family import (
    Family,
    SparsenessReport,
    base_family,
    brute_force_closed,
    can_extend,
    extend,
    minimal_members,
    serialize_family,
    sparseness,
)
from .generate import (
    SplitSpec,
    Survey,
    count_with_automorphisms,
    enumerate_families,
    enumerate_singleton_phase,
    survey,
)
from .subsets import (
    MAX_N,
    Permutation,
    UniverseContext,
    decode,
    encode,
    order_key,
    order_less,
    universe,
)

__version__ = "0.1.0"
