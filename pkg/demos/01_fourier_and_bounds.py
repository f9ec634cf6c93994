"""Graph Fourier transform and the additive uncertainty bound on a small weighted graph.

Run: python3 demos/01_fourier_and_bounds.py
"""
import numpy as np

from graph_uncertainty import GraphBasis, graph_from_edge_list
from graph_uncertainty.transforms import difference, gft, igft
from graph_uncertainty.uncertainty import additive_bounds, additive_functional, pulled_back_eigenvector

# a 5-vertex weighted graph: a square with one diagonal and a pendant vertex
g = graph_from_edge_list("""
0 1 1.0
1 2 2.0
2 3 1.0
0 3 0.5
0 2 1.5
3 4 1.0
""")
b = GraphBasis(g)
print("Laplacian eigenvalues:", np.round(b.lambdas, 4))

# %% transform of a delta signal
f = np.zeros(b.n)
f[4] = 1.0
fhat = gft(b, f)
print("fhat of e_4:", np.round(fhat, 4))
print("round trip error:", np.abs(igft(b, fhat) - f).max())

# %% the two halves of the uncertainty functional
print("||D f||^2 =", np.sum(difference(b, f) ** 2), " <f, L f> =", f @ b.laplacian @ f)
print("||D fhat||^2 =", np.sum(difference(b, fhat) ** 2))

# %% bounds are the extreme eigenvalues of L + diag(lambda)
res = additive_bounds(b)
print(f"bounds: [{res.lower:.6f}, {res.upper:.6f}]")

rng = np.random.default_rng(0)
vals = []
for _ in range(2000):
    h = rng.standard_normal(b.n)
    vals.append(additive_functional(b, h / np.linalg.norm(h)))
print(f"2000 random unit signals span [{min(vals):.6f}, {max(vals):.6f}]")

# extremal signals attain the bounds
lo = additive_functional(b, pulled_back_eigenvector(b, 0))
hi = additive_functional(b, pulled_back_eigenvector(b, b.n - 1))
print(f"attained: {lo:.12f}, {hi:.12f}")

# %% normalized version uses D_nr and the normalized Fourier basis
nres = additive_bounds(b, normalized=True)
print(f"normalized bounds: [{nres.lower:.6f}, {nres.upper:.6f}]")
