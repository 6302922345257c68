"""Comparing medians of four groups with many ties.

Bundled demo data: four groups of integer test scores on a 0..116 scale.
"""
from qanova import qanova, qanova_multi
from qanova.datasets import demo_dataset

groups = demo_dataset()
data = list(groups.values())
for name, x in groups.items():
    print(f"{name}: n={x.size}, distinct values={len(set(x))}")

res = qanova(data, q=0.5, B=600)
print("HD medians:", res.estimates.round(2))
for (j, k), d in zip(res.pairs, res.deltas):
    print(f"  {list(groups)[j]} - {list(groups)[k]}: {d:+.2f}")
print(f"p-value {res.p_value:.4f}")

# Quartiles too; each quantile gets its own bootstrap stream.
for r in qanova_multi(data, qs=(0.25, 0.5, 0.75), B=300):
    print(f"q={r.q}: p={r.p_value:.4f}")

# Shifting every observation by a constant leaves the p-value unchanged.
shifted = qanova([x + 100 for x in data], q=0.5, B=600)
print("same p-value after a shift:", shifted.p_value == res.p_value)
