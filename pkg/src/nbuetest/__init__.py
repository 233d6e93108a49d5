"""Exponentiality tests against NBUE alternatives: statistic, exact and simulated null laws."""

from .errors import (
    AllZero,
    BadParameter,
    EmptyOrSingleton,
    MissingExternalTable,
    NbueError,
    NegativeValue,
    NonFiniteValue,
    NonpositiveUserConstant,
    PrecisionExhausted,
    SampleError,
    SampleParseError,
    TableFormatError,
    UnknownScale,
)
from .exact import CdfValue, ExactNullCdf, PrecisionPolicy, exact_cdf, exact_quantile, support
from .montecarlo import (
    EmpiricalSizeReport,
    SimConfig,
    empirical_size,
    read_external_table,
    sample_null_statistics,
    simulated_critical_values,
)
from .report import TestReport, run_test
from .samples import (
    OrderedSample,
    Sample,
    Spacings,
    make_sample,
    order_and_space,
    parse_sample_text,
    read_sample,
    ttt_statistic,
)
from .statistic import (
    HP1975,
    CoefficientSet,
    ScaledValue,
    Variant,
    coefficients,
    gamma_star,
    gamma_star_order_form,
    generalized,
    scale,
)
from .tables import CriticalValueTable, TablePolicy, build_size_table, build_table

__version__ = "0.1.0"
