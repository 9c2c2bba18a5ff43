"""Central numerical tolerances used across the package and its tests."""

NORM_TOL = 1e-12
HERMITICITY_TOL = 1e-10
UNITARITY_TOL = 1e-10
EIG_RESIDUAL_TOL = 1e-9
ZERO_MODE_TOL = 1e-10
RECONSTRUCTION_TOL = 1e-9
