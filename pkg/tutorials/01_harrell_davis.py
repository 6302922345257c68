"""Harrell-Davis quantile estimates versus the sample median.

With heavily tied data the sample median can only land on a handful of
values. The Harrell-Davis estimator averages every order statistic with
beta-cell weights, so it moves smoothly with the data.
"""
import numpy as np

from qanova import BetaBinParams, hd_estimate, hd_weights, sample_median

# The weights for n = 10 at the median are symmetric and sum to one.
w = hd_weights(10, 0.5)
print("beta parameters:", w.a, w.b)
print("weights:", np.round(w.w, 4))
print("sum:", w.w.sum())

# On 1..10 the estimate sits exactly at 5.5.
print("HD median of 1..10:", hd_estimate(np.arange(1, 11), 0.5))

# Draw repeated samples of tied integers and count distinct estimates.
src = BetaBinParams(30, 1, 3)
rng = np.random.default_rng(1)
medians, hds = set(), set()
for _ in range(500):
    x = src.draw(200, rng)
    medians.add(sample_median(x))
    hds.add(hd_estimate(x, 0.5))
print(f"distinct sample medians: {len(medians)}, distinct HD estimates: {len(hds)}")
