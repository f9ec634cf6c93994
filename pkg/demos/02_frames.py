"""Frame uncertainty: Parseval frames E (d x N) and their sharp bounds.

Run: python3 demos/02_frames.py
"""
import numpy as np

from graph_uncertainty import GraphBasis, cycle_graph
from graph_uncertainty.uncertainty import (extremal_frame, frame_bounds, frame_objective,
                                           frame_objective_trace, random_parseval_frame)

b = GraphBasis(cycle_graph(8))
rng = np.random.default_rng(1)

for d in (2, 4, 8):
    lo, hi = frame_bounds(b, d)
    samples = [frame_objective(b, random_parseval_frame(d, b.n, rng)) for _ in range(500)]
    print(f"d={d}: bounds [{lo:.4f}, {hi:.4f}]  random frames in [{min(samples):.4f}, {max(samples):.4f}]")

# %% extremal frames sit exactly on the bounds
e_min = extremal_frame(b, 3, "min")
e_max = extremal_frame(b, 3, "max")
print("d=3 extremes:", frame_objective(b, e_min), frame_objective(b, e_max), frame_bounds(b, 3))

# the objective only depends on the row space of E
q, _ = np.linalg.qr(rng.standard_normal((3, 3)))
print("rotated:", frame_objective(b, e_min.rotated(q)))
print("trace form:", frame_objective_trace(b, e_min))
