"""Synthetic four-group data with heavy ties.

Scores are sums of 29 items rated 0-4 (range 0..116), one group per
education level, with group sizes 62, 81, 110 and 125. The groups are drawn
from beta-binomial distributions that differ mostly in their lower tails.
"""

import csv

from .distributions import BetaBinParams
from .streams import DATA, make_rng

__all__ = ["DEMO_GROUPS", "demo_dataset", "write_long_csv"]

DEMO_SEED = 2009

# label, size, beta-binomial (r, s) on 0..116
DEMO_GROUPS = (
    ("G1", 62, (3.0, 1.6)),
    ("G2", 81, (5.0, 2.2)),
    ("G3", 110, (5.5, 2.3)),
    ("G4", 125, (6.0, 2.4)),
)


def demo_dataset(seed=DEMO_SEED):
    """Return ``{label: values}`` for the synthetic demo groups."""
    out = {}
    for j, (label, n, (r, s)) in enumerate(DEMO_GROUPS):
        out[label] = BetaBinParams(m=116, r=r, s=s).draw(n, make_rng(seed, DATA, j))
    return out


def write_long_csv(groups, path):
    """Write ``{label: values}`` as a long-format CSV with header group,value."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["group", "value"])
        for label, values in groups.items():
            for v in values:
                w.writerow([label, repr(float(v))])
