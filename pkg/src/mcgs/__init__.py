"""Low-depth multi-controlled gate synthesis with one borrowed ancilla."""

from .circuit import (
    Circuit,
    Gate,
    abstract_depth,
    append,
    compose,
    gate_count,
    invert,
    support,
    to_qasm,
)
from .errors import DomainError, McgsError, ResourceError, UnsupportedGate, WidthMismatch
from .lowering import (
    LoweringRuleset,
    cx_count,
    lower,
    lower_open_controls,
    lowered_depth,
    lowered_metrics,
)
from .optimizer import cancel, commutes
from .analysis import (
    RecurrenceSpec,
    akra_bazzi_exponent,
    base_depth_table,
    find_crossover,
    predict_depth,
)
from .synthesis.mcx import (
    PartitionPlan,
    SynthesisConfig,
    mcx_auto,
    mcx_linear,
    mcx_recursive_optimized,
    mcx_recursive_original,
    partition,
    synthesize,
)
from .synthesis.ctrl_u import (
    AbcFactors,
    ApproxPlan,
    ZyzAngles,
    abc_factors,
    mcsu2,
    mcu2_approx,
    sqrt_unitary,
    zyz_decompose,
)
from .verify import (
    DEFAULT_SEED,
    EquivalenceReport,
    check_mcx,
    dense_unitary,
    permutation_table,
    simulate_reversible,
    spectral_distance,
)

__version__ = "0.1.0"

__all__ = [
    "Circuit",
    "Gate",
    "abstract_depth",
    "append",
    "compose",
    "gate_count",
    "invert",
    "support",
    "to_qasm",
    "DomainError",
    "McgsError",
    "ResourceError",
    "UnsupportedGate",
    "WidthMismatch",
    "LoweringRuleset",
    "cx_count",
    "lower",
    "lower_open_controls",
    "lowered_depth",
    "lowered_metrics",
    "cancel",
    "commutes",
    "RecurrenceSpec",
    "akra_bazzi_exponent",
    "base_depth_table",
    "find_crossover",
    "predict_depth",
    "PartitionPlan",
    "SynthesisConfig",
    "mcx_auto",
    "mcx_linear",
    "mcx_recursive_optimized",
    "mcx_recursive_original",
    "partition",
    "synthesize",
    "AbcFactors",
    "ApproxPlan",
    "ZyzAngles",
    "abc_factors",
    "mcsu2",
    "mcu2_approx",
    "sqrt_unitary",
    "zyz_decompose",
    "DEFAULT_SEED",
    "EquivalenceReport",
    "check_mcx",
    "dense_unitary",
    "permutation_table",
    "simulate_reversible",
    "spectral_distance",
]
