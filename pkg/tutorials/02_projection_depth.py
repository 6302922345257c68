"""Projection distance of points in a bootstrap-like cloud.

Every row is projected onto each direction through the marginal median.
The distance of a row is its largest standardized projection, with the
ideal-fourths interquartile range as the scale.
"""
import numpy as np

from qanova import depth_pvalue, projection_distances

rng = np.random.default_rng(3)
cloud = rng.normal(loc=[1.0, -0.5], scale=[1.0, 2.0], size=(300, 2))
null = np.zeros((1, 2))

report = projection_distances(np.vstack([cloud, null]))
d_cloud, d_null = report.distances[:-1], report.distances[-1]
print("center:", np.round(report.center, 3))
print("skipped directions:", report.skipped_directions)
print(f"distance of origin {d_null:.3f}; cloud median distance {np.median(d_cloud):.3f}")
print("p-value of the origin:", depth_pvalue(d_cloud, d_null))

# Shift the cloud onto the origin and the p-value rises.
report = projection_distances(np.vstack([cloud - [1.0, -0.5], null]))
print("after centering:", depth_pvalue(report.distances[:-1], report.distances[-1]))
