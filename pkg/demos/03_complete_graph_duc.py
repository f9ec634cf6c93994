"""Lower boundary of the feasibility region on K_8, traced numerically and in closed form.

Run: python3 demos/03_complete_graph_duc.py  (writes k8_duc.csv in the working directory)
"""
import numpy as np

from graph_uncertainty import GraphBasis, complete_graph
from graph_uncertainty.complete import kn_duc_point, kn_eigenstructure, kn_lambda_min, kn_omega
from graph_uncertainty.feasibility import duc_curve, k_matrix

n = 8
b = GraphBasis(complete_graph(n))

# %% eigenstructure of K(alpha) = L - alpha * Lambda
for alpha in (-1.0, 0.5, 2.0):
    es = kn_eigenstructure(n, alpha)
    print(f"alpha={alpha:+.1f}: middle {es.middle_eigenvalue:+.3f} x{es.middle_multiplicity}, "
          f"outliers {np.round(es.outliers, 4)}, min {kn_lambda_min(n, alpha):+.6f} "
          f"(numeric {np.linalg.eigvalsh(k_matrix(b, alpha))[0]:+.6f})")

# %% the tracer against the closed form
curve = duc_curve(b, 200)
err = max(abs(s.y - kn_omega(n, s.x)) for s in curve.samples)
print("max |traced - closed form| over 200 points:", err)
print("endpoints:", (curve.left_end.x, curve.left_end.y), (curve.alpha0.x, curve.alpha0.y))
print("closed form at alpha=-1e6:", kn_duc_point(n, -1e6))

rows = np.array([s.row() for s in curve.samples])
np.savetxt("k8_duc.csv", rows, delimiter=",", header="alpha,x,y,m,mult,h_minus,h_plus", comments="")
print("wrote k8_duc.csv")
