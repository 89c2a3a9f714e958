"""sumfree - exact computation with sum-free subsets of {1..N} and Z/pZ.

The library has four layers: bit-vector sets with additive statistics
(`sets`), Fourier analysis over a prime modulus (`spectral`), granular
decomposition along progression partitions (`granular`), and exact
counting / classification of sum-free subsets (`census`).  The `sumfree`
console script binds them into reproducible batch runs.
"""

from .census import (
    BudgetError,
    CensusRecord,
    CountResult,
    EnumerationBudgetError,
    census_classify,
    census_csv_lines,
    count_sum_free_bb,
    count_sum_free_naive,
    enumerate_sum_free,
    prop12_check,
    ratio_series,
    sum_free_total,
)
from .granular import (
    CoverResult,
    GoodLengthReport,
    GranParams,
    Granularization,
    ProgressionPartition,
    cover_in_family,
    good_length_check,
    good_length_search,
    granularization_report,
    granularize,
    partition_progressions,
    verify_prop3,
    verify_prop4,
)
from .rng import SplitMix64
from .sampling import random_residue_set, random_subset_of, random_sum_free
from .sets import (
    DiffPopularity,
    IntSet,
    SetFileFormatError,
    count_additive_triples,
    find_schur_triple,
    is_sum_free,
    popular_differences,
    project_mod_t,
    read_set_file,
    structure_stats,
    sumset,
    upper_third_start,
    write_set_file,
)
from .spectral import (
    LargeSpectrum,
    PrimeContext,
    Spectrum,
    choose_prime,
    convolve,
    dft,
    indicator_convolution,
    kernel_g,
    kernel_values,
    large_spectrum,
    smoothed_indicator,
    triple_count_spectral,
)

__version__ = "0.1.0"
