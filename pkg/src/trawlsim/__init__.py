"""trawlsim: simulation and verification of integrated trawl process limits.

The toolkit simulates stationary trawl processes driven by symmetric Levy
bases and their normalised time integrals, computes the exact finite-horizon
characteristic exponents by quadrature, classifies which long-horizon stable
limit law applies, and verifies the limits empirically via characteristic-
function statistics.
"""

__version__ = "0.1.0"

from ._errors import (AccuracyError, FormatError, RegimeError, TrawlSimError,
                      UnsupportedSpecError, ValidationError, WindowError)
from .trawl import TimeCombo, TrawlSpec, interval_overlap
from .levy import (DensityBased, LevyBasisSpec, LevyExponent, Norming,
                   PoissonDifference, Regime, RegimeReport, SymmetricStable,
                   classify_regime, density_from_table, split_exponent,
                   stable_density_constant, verify_hypotheses)
from .exponents import (ExponentReport, LimitExponent, combo_kernel_moment,
                        convergence_diagnostic, integrated_exponent,
                        kernel_moment, limit_exponent)
from .pathsim import (EnsembleMeta, PathEnsemble, SeriesBudget,
                      TruncationInfo, sample_sas, series_scale,
                      simulate_finite_activity_yt,
                      simulate_infinite_activity_yt, simulate_limit_y,
                      simulate_stable_levy, simulate_stable_yt,
                      simulate_x_grid)
from .stats import (DependenceResult, EcfCurve, IndexFit, ecf,
                    ecf_distance_test, fit_index_from_curve,
                    increment_dependence, selfsim_index_fit,
                    stability_index_fit)

__all__ = [name for name in dir() if not name.startswith("_")]
