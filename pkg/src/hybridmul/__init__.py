"""Bit-accurate simulator and analysis toolkit for three multiplier
architectures: conventional shift-and-add, radix-4 Booth, and a sparse
hybrid encoding with spurious-switching suppression (SSST) freeze gating.
"""

__version__ = "0.1.0"

from .bitnum import SignMag, Word, to_sign_magnitude
from .encoding import (
    Architecture,
    BoothDigits,
    Category,
    CategoryKind,
    HybridPlan,
    MultiplyResult,
    OpCounts,
    PPMatrix,
    PPRow,
    booth_pp,
    booth_recode,
    classify,
    conventional_pp,
    execute_plan,
    hybrid_plan,
    hybrid_pp,
    multiply,
    split,
)
from .datapath import (
    ArrayGeometry,
    ArrayState,
    FACell,
    FreezeMask,
    ProductMismatchError,
    ToggleReport,
    detect_freeze,
    full_adder,
    simulate_stream,
)
from .metrics import (
    CostModel,
    delay_estimate,
    power_estimate,
    reduction_percent,
    table2_report,
)
from .harness import Campaign, gen_inputs, run_campaign, trace

__all__ = [
    "Architecture",
    "ArrayGeometry",
    "ArrayState",
    "BoothDigits",
    "Campaign",
    "Category",
    "CategoryKind",
    "CostModel",
    "FACell",
    "FreezeMask",
    "HybridPlan",
    "MultiplyResult",
    "OpCounts",
    "PPMatrix",
    "PPRow",
    "ProductMismatchError",
    "SignMag",
    "ToggleReport",
    "Word",
    "booth_pp",
    "booth_recode",
    "classify",
    "conventional_pp",
    "delay_estimate",
    "detect_freeze",
    "execute_plan",
    "full_adder",
    "gen_inputs",
    "hybrid_plan",
    "hybrid_pp",
    "multiply",
    "power_estimate",
    "reduction_percent",
    "run_campaign",
    "simulate_stream",
    "split",
    "table2_report",
    "to_sign_magnitude",
    "trace",
]
