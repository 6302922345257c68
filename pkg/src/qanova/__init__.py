"""Global comparison of medians and other quantiles across independent groups.

The test stays valid when the data contain many tied values. It bootstraps
pairwise Harrell-Davis quantile differences and measures the projection
depth of the zero vector in that cloud.
"""

from .depth import DegenerateCloudError, DepthReport, depth_pvalue, marginal_medians, projection_distances
from .distributions import (
    BetaBinParams,
    DiscretePmf,
    GHParams,
    TailModParams,
    beta_binomial_pmf,
    discrete_quantile,
    gh_transform,
    sample_discrete,
    sample_gh,
    tail_modified_pmf,
)
from .methodq import DeltaCloud, QTestResult, bootstrap_deltas, qanova, qanova_multi
from .quantiles import HDWeights, hd_estimate, hd_weights, ideal_fourths, sample_median
from .simulation import SimConfig, SimResult, binomial_ci, bradley_check, estimate_type1, run_grid
from .special import ln_beta, ln_gamma, reg_inc_beta

__version__ = "0.1.0"
