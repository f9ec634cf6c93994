"""Uncertainty principles for signals on weighted graphs.

Laplacian spectra and graph Fourier transforms, sharp additive and frame
bounds for difference operators, and the feasibility region of
``(<g, Lambda g>, <g, L g>)`` with its lower boundary curve.
"""

from .errors import (ConvergenceError, DisconnectedGraphError, DomainError,
                     EdgeListParseError, GraphError, GraphUncertaintyError)
from .graph import (Graph, adjacency, complete_graph, cycle_graph, degree_matrix,
                    graph_from_edge_list, incidence, is_connected, laplacian,
                    normalized_laplacian, path_graph, random_connected_graph,
                    weight_matrix)
from .spectral import Spectrum, eigenspace_basis, jacobi_eigh, rayleigh, sym_eig
from .transforms import (GraphBasis, difference, gft, igft, ingft, ngft,
                         normalized_difference, read_signal)
from .uncertainty import (AdditiveBounds, ParsevalFrame, additive_bounds,
                          additive_functional, extremal_frame, frame_bounds,
                          frame_objective, modified_laplacian, modified_spectrum,
                          random_parseval_frame, support_product)
from .feasibility import (DucSample, FeasibilityRegion, SolverConfig, UncertaintyCurve,
                          duc_curve, duc_point_for_x, feasibility_region, h_bounds,
                          k_matrix, min_eigpair, sufficiency_violation)
from .complete import (complete_graph_basis, kn_bounds, kn_duc_point, kn_eigenstructure,
                       kn_lambda_min, kn_omega, kn_x_of_alpha)

__version__ = "0.1.0"
