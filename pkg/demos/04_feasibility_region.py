"""Feasibility region of a random graph: boundary, witness cloud and convexity checks.

Run: python3 demos/04_feasibility_region.py
"""
import numpy as np

from graph_uncertainty import GraphBasis, random_connected_graph
from graph_uncertainty.feasibility import convexity_defects, feasibility_region, sufficiency_violation

rng = np.random.default_rng(7)
b = GraphBasis(random_connected_graph(10, rng))
print("lambda:", np.round(b.lambdas, 3))

r = feasibility_region(b, num_curve_points=32, num_samples=2000, seed=0)
print("boundary polygon vertices:", len(r.boundary))
print("witnesses outside hull (max signed distance):", r.hull_excess(r.witnesses).max())
print("min x + y over witnesses:", r.witnesses.sum(axis=1).min(), ">= bound", r.min_sum_bound)
print("smallest convexity defect of the lower curve:", convexity_defects(r.lower.xs, r.lower.ys).min())

# %% every minimal eigenvector of K(alpha) beats random feasible points at its level
for alpha in (-4.0, -1.0, 0.0, 1.0, 4.0):
    print(f"alpha={alpha:+.1f}: worst violation {sufficiency_violation(b, alpha, 2000, rng):.2e}")

# %% area of the region (shoelace on the boundary polygon)
x, y = r.boundary.T
print("area:", 0.5 * abs(np.dot(x, np.roll(y, 1)) - np.dot(y, np.roll(x, 1))))
