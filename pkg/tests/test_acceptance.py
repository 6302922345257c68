"""Acceptance criteria, one test (or parametrized family) per criterion.

Run alone with ``pytest tests/test_acceptance.py``; a PASS/FAIL line per
criterion is printed in the terminal summary. The Monte Carlo criteria use
R = 1000 replications and B = 600 at the package default seed.
"""

import numpy as np
import pytest
from scipy.stats import kurtosis, skew

from qanova.depth import DegenerateCloudError, depth_pvalue, projection_distances
from qanova.distributions import (
    BetaBinParams,
    GHParams,
    TailModParams,
    beta_binomial_pmf,
    discrete_quantile,
    gh_transform,
    sample_discrete,
    sample_gh,
)
from qanova.methodq import DEFAULT_SEED, qanova
from qanova.quantiles import hd_estimate, hd_weights, sample_median
from qanova.simulation import SimConfig, estimate_type1
from qanova.streams import DATA, make_rng

from oracles import Degenerate, beta_cell_probs, brute_projection_distances, one_dim_distances, random_cloud

R = 1000
B = 600
TOL = 0.02


def crit(number, title):
    return pytest.mark.criterion(number, title)


# 1 ---------------------------------------------------------------------------

@crit(1, "Harrell-Davis weights: sum to 1 (1e-10) and match quadrature (1e-9)")
@pytest.mark.parametrize("n", [1, 5, 10, 20, 50, 100, 200])
def test_weight_correctness(n, record_property):
    worst_sum = worst_cell = 0.0
    for q in (0.1, 0.25, 0.5, 0.75, 0.9):
        w = hd_weights(n, q).w
        worst_sum = max(worst_sum, abs(w.sum() - 1.0))
        worst_cell = max(worst_cell, float(np.max(np.abs(w - beta_cell_probs(n, q)))))
    record_property("detail", f"n={n}: max|sum-1|={worst_sum:.1e}, max|w-quad|={worst_cell:.1e}")
    assert worst_sum <= 1e-10
    assert worst_cell <= 1e-9


# 2 ---------------------------------------------------------------------------

@crit(2, "projection distances match brute force and the 1-D closed form (1e-10)")
def test_depth_oracle_equivalence(record_property):
    rng = np.random.default_rng(DEFAULT_SEED)
    compared = one_d = degenerate = 0
    worst = 0.0
    with_center = with_dupes = 0
    for _ in range(200):
        Y = random_cloud(rng)
        try:
            ref = brute_projection_distances(Y)
        except Degenerate:
            with pytest.raises(DegenerateCloudError):
                projection_distances(Y)
            degenerate += 1
            continue
        rep = projection_distances(Y)
        err = np.abs(rep.distances - ref) / np.maximum(1.0, np.abs(ref))
        worst = max(worst, float(err.max()))
        compared += 1
        with_center += bool(np.any(np.all(Y == rep.center, axis=1)))
        with_dupes += np.unique(Y, axis=0).shape[0] < Y.shape[0]
        if Y.shape[1] == 1:
            closed = one_dim_distances(Y[:, 0])
            worst = max(worst, float(np.max(np.abs(rep.distances - closed) / np.maximum(1.0, closed))))
            one_d += 1
    record_property(
        "detail",
        f"{compared} clouds compared ({one_d} one-dimensional, {with_center} with a row at the center, "
        f"{with_dupes} with duplicate rows), {degenerate} degenerate, worst error {worst:.1e}",
    )
    assert worst <= 1e-10
    assert with_center > 0 and with_dupes > 0 and one_d > 0


# 3 ---------------------------------------------------------------------------

@crit(3, "depth p-value endpoints and count formula, exact")
def test_pvalue_cases():
    assert depth_pvalue([1.0, 2.0, 3.0], 3.5) == 0.0
    assert depth_pvalue([1.0, 2.0, 3.0], 0.5) == 1.0
    assert depth_pvalue([1.0, 2.0, 3.0, 4.0], 2.5) == 0.5


# 4, 5, 8 ----------------------------------------------------------------------

def _cell(sources, q, n=20):
    return SimConfig(sources=sources, sample_sizes=(n,) * len(sources), q=q, R=R, B=B, master_seed=DEFAULT_SEED)


TABLE2_CELLS = [
    ("q=.50 g=0 h=0 n=20", GHParams(0.0, 0.0), 0.5, 0.059),
    ("q=.50 g=.2 h=.2 n=20", GHParams(0.2, 0.2), 0.5, 0.054),
    ("q=.25 g=0 h=0 n=20", GHParams(0.0, 0.0), 0.25, 0.058),
]


@crit(4, "Table 2 cells at R=1000, B=600 within 0.02 of the published estimate")
@pytest.mark.parametrize("label, src, q, published", TABLE2_CELLS, ids=[c[0] for c in TABLE2_CELLS])
def test_table2_cells(label, src, q, published, record_property):
    res = estimate_type1(_cell((src,) * 4, q))
    record_property("detail", f"{label}: alpha_hat={res.alpha_hat:.3f} (reference {published})")
    assert abs(res.alpha_hat - published) <= TOL


@crit(5, "Table 3: (q=.5, r=s=3, n=m=20) within 0.02 of .070; (q=.25, r=1, s=9, n=20, m=10) <= .02")
def test_table3_symmetric_cell(record_property):
    res = estimate_type1(_cell((BetaBinParams(20, 3, 3),) * 4, 0.5))
    record_property("detail", f"r=s=3 m=20 q=.5: alpha_hat={res.alpha_hat:.3f} (reference 0.070)")
    assert abs(res.alpha_hat - 0.070) <= TOL


@crit(5, "Table 3: (q=.5, r=s=3, n=m=20) within 0.02 of .070; (q=.25, r=1, s=9, n=20, m=10) <= .02")
def test_table3_failure_cell(record_property):
    res = estimate_type1(_cell((BetaBinParams(10, 1, 9),) * 4, 0.25))
    record_property(
        "detail", f"r=1 s=9 m=10 q=.25: alpha_hat={res.alpha_hat:.3f} (reference 0.008), degenerate={res.degenerate}"
    )
    assert res.alpha_hat <= 0.02


# 6 ---------------------------------------------------------------------------

@crit(6, "beta-binomial facts: (30,1,3) decreasing with CDF(5) < .52 <= CDF(6); (20,3,3) .54 quantile = 11")
def test_skewed_betabinomial_facts(record_property):
    pmf = beta_binomial_pmf(BetaBinParams(30, 1, 3))
    cdf = pmf.cdf()
    record_property("detail", f"m=30: CDF(5)={cdf[5]:.4f}, CDF(6)={cdf[6]:.4f}")
    assert np.all(np.diff(pmf.probs) < 0)
    assert cdf[5] < 0.52 <= cdf[6]


@crit(6, "beta-binomial facts: (30,1,3) decreasing with CDF(5) < .52 <= CDF(6); (20,3,3) .54 quantile = 11")
def test_symmetric_betabinomial_quantile(record_property):
    pmf = beta_binomial_pmf(BetaBinParams(20, 3, 3))
    x = discrete_quantile(pmf, 0.54)
    record_property("detail", f"m=20 r=s=3: CDF(10)={pmf.cdf()[10]:.4f}, .54 quantile={x}")
    assert x == 11


# 7 ---------------------------------------------------------------------------

N_MOMENTS = 10**6


def _gh_draw(p, key):
    return sample_gh(N_MOMENTS, p, make_rng(DEFAULT_SEED, DATA, key))


@crit(7, "g-and-h moments: (.2,0) skew .61 +/- .05, kurtosis 3.68 +/- .25; symmetric |skew| <= .02; monotone; h=.2 kurtosis > 6")
def test_gh_moments(record_property):
    cells = {(0.0, 0.0): 0, (0.0, 0.2): 1, (0.2, 0.0): 2, (0.2, 0.2): 3}
    stats_ = {}
    for (g, h), key in cells.items():
        x = _gh_draw(GHParams(g, h), key)
        stats_[(g, h)] = (float(skew(x)), float(kurtosis(x, fisher=False)))
    record_property(
        "detail",
        ", ".join(f"(g={g},h={h}): skew={s:.3f} kurt={k:.2f}" for (g, h), (s, k) in stats_.items()),
    )
    s, k = stats_[(0.2, 0.0)]
    assert abs(s - 0.61) <= 0.05
    assert abs(k - 3.68) <= 0.25
    assert abs(stats_[(0.0, 0.0)][0]) <= 0.02
    assert abs(stats_[(0.0, 0.2)][0]) <= 0.02
    assert stats_[(0.0, 0.2)][1] > 6
    assert stats_[(0.2, 0.2)][1] > 6
    z = np.linspace(-10, 10, 200001)
    for p in map(lambda gh: GHParams(*gh), cells):
        assert np.all(np.diff(gh_transform(z, p)) > 0)


# 8 ---------------------------------------------------------------------------

TAIL_CELLS = [("flattened", 0.057), ("reversed", 0.048)]


@crit(8, "tail-modified null (3 modified + 1 base, n=20, q=.5) within 0.02 of .057 / .048")
@pytest.mark.parametrize("variant, published", TAIL_CELLS, ids=[c[0] for c in TAIL_CELLS])
def test_tail_modified_null(variant, published, record_property):
    base = BetaBinParams(20, 3, 3)
    mod = TailModParams(base, variant, 15)
    res = estimate_type1(_cell((mod, mod, mod, base), 0.5))
    record_property("detail", f"{variant}: alpha_hat={res.alpha_hat:.3f} (reference {published})")
    assert abs(res.alpha_hat - published) <= TOL


# 9 ---------------------------------------------------------------------------

@crit(9, "3000 medians at n=500 take <= 10 values; 3000 Harrell-Davis medians take > 2900")
def test_median_vs_hd_cardinality(record_property):
    pmf = beta_binomial_pmf(BetaBinParams(30, 1, 3))
    w = hd_weights(500, 0.5)
    medians, hds = [], []
    for i in range(3000):
        x = sample_discrete(pmf, 500, make_rng(DEFAULT_SEED, DATA, i))
        medians.append(sample_median(x))
        hds.append(hd_estimate(x, 0.5, weights=w))
    n_med, n_hd = len(set(medians)), len(set(hds))
    record_property("detail", f"{n_med} distinct sample medians, {n_hd} distinct Harrell-Davis estimates")
    assert n_med <= 10
    assert n_hd > 2900


# 10 --------------------------------------------------------------------------

@pytest.fixture(scope="module")
def invariance_data():
    rng = make_rng(DEFAULT_SEED, DATA, 99)
    cont = [rng.normal(size=n) for n in (20, 24, 30, 18)]
    tied = [BetaBinParams(20, 3, 3).draw(n, make_rng(DEFAULT_SEED, DATA, 100 + j)) for j, n in enumerate((20, 25, 30, 22))]
    return {"continuous": cont, "tied": tied}


@crit(10, "location/scale/thread-count/relabel invariance of p-values, exact at fixed seeds")
@pytest.mark.parametrize("kind", ["continuous", "tied"])
@pytest.mark.parametrize("q", [0.25, 0.5])
def test_invariance_suite(invariance_data, kind, q, record_property):
    data = invariance_data[kind]
    keys = [3, 1, 4, 2]
    base = qanova(data, q, B=B, seed=7, group_keys=keys)
    checks = {}
    for c in (5.0, -12.5, 1000.0):
        checks[f"shift {c:g}"] = qanova([g + c for g in data], q, B=B, seed=7, group_keys=keys).p_value
    for c in (2.0, 0.25, 3.0, 0.1):
        checks[f"scale {c:g}"] = qanova([c * g for g in data], q, B=B, seed=7, group_keys=keys).p_value
    for w in (2, 4):
        checks[f"threads {w}"] = qanova(data, q, B=B, seed=7, group_keys=keys, workers=w).p_value
    for perm in ([3, 2, 1, 0], [2, 0, 3, 1]):
        checks[f"relabel {perm}"] = qanova(
            [data[i] for i in perm], q, B=B, seed=7, group_keys=[keys[i] for i in perm]
        ).p_value
    bad = {k: v for k, v in checks.items() if v != base.p_value}
    record_property("detail", f"{kind} q={q}: p={base.p_value:.4f}, {len(checks) - len(bad)}/{len(checks)} exact")
    assert not bad, f"p-value changed: {bad} vs {base.p_value}"


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
