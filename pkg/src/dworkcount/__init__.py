"""Counting F_p-points on Dwork hypersurfaces via p-adic hypergeometric functions.

The stack, bottom up: exact p-adic unit/valuation arithmetic and Teichmuller
lifts (padic), Morita's p-adic gamma (pgamma), Gauss sums in Gross-Koblitz
form (gauss), the mGm / mFm evaluators (hyperfun), the Dwork-hypersurface
combinatorics and count formulas (dwork), an exhaustive-enumeration oracle and
sweep harness (oracle), and a CLI (cli).
"""

from .dwork import (DworkInstance, InstanceError, canonical_classes, count_ff,
                    count_koblitz, count_main, count_relprime, derive_params,
                    enumerate_W, k_target, k_working)
from .hyperfun import FParams, GParams, eval_F, eval_G
from .oracle import CountReport, brute_count, brute_count_all, sweep_verify
from .padic import (PadicError, PadicUnit, PrecisionError, ValuedPadic,
                    char_value, reconstruct_integer, teichmuller)
from .pgamma import batch_pgamma, lift_frac, pgamma_frac, pgamma_int

__all__ = [
    "DworkInstance", "InstanceError", "canonical_classes", "count_ff",
    "count_koblitz", "count_main", "count_relprime", "derive_params",
    "enumerate_W", "k_target", "k_working",
    "FParams", "GParams", "eval_F", "eval_G",
    "CountReport", "brute_count", "brute_count_all", "sweep_verify",
    "PadicError", "PadicUnit", "PrecisionError", "ValuedPadic",
    "char_value", "reconstruct_integer", "teichmuller",
    "batch_pgamma", "lift_frac", "pgamma_frac", "pgamma_int",
]

__version__ = "0.1.0"
