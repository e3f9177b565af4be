"""Central tolerance table.

Library code and the test/verification suites read every numerical threshold
from here so the two always agree.
"""

# Entrywise / scalar equality of quantities that are exact in real arithmetic.
EQUALITY_TOL = 1e-12

# Validation of inputs at API boundaries (hermiticity, ket normalization).
VALIDATION_TOL = 1e-9

# Most negative eigenvalue admitted for a positive-semidefinite operator.
EIGENVALUE_FLOOR = -1e-10

# Spectral decomposition: reconstruction and orthonormality checks.
RECONSTRUCTION_TOL = 1e-10

# Cyclic Jacobi eigensolver: stop once the off-diagonal Frobenius norm is
# below this, or after the sweep cap.
JACOBI_OFFDIAG_TOL = 1e-14
JACOBI_MAX_SWEEPS = 100

# Constraint residual bound for cloning parameters labeled feasible.
FEASIBILITY_TOL = 1e-9

# Feasibility projection: residual target and iteration cap.
PROJECTION_TOL = 1e-12
PROJECTION_MAX_ITERS = 200

# Optimizer defaults.
OPTIMIZER_STEP_INIT = 0.1
OPTIMIZER_GRAD_TOL = 1e-10
OPTIMIZER_MAX_ITERS = 5000
