"""Beta-binomial sources and the tail-modified variants.

The tail modification keeps the body of a base pmf below a cut point and
either flattens or mirrors the upper tail, which changes the shape without
moving the median.
"""
import numpy as np

from qanova import BetaBinParams, TailModParams, beta_binomial_pmf, discrete_quantile, tail_modified_pmf

skewed = beta_binomial_pmf(BetaBinParams(30, 1, 3))
print("(30, 1, 3) first probabilities:", np.round(skewed.probs[:6], 4))
print("median:", discrete_quantile(skewed, 0.5))

base = BetaBinParams(20, 3, 3)
for variant in ("flattened", "reversed"):
    pmf = tail_modified_pmf(base, variant, 15)
    print(f"{variant:>9}: median {discrete_quantile(pmf, 0.5)}, upper tail {np.round(pmf.probs[15:], 4)}")

rng = np.random.default_rng(5)
x = TailModParams(base, "reversed", 15).draw(10, rng)
print("ten draws:", x)
