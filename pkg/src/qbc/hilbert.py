"""Complex linear algebra for 2- and 4-dimensional Hilbert spaces.

Kets are complex128 vectors, operators complex128 matrices; both are
returned read-only so values can be shared freely across threads. Basis
convention: index 0 is the reference basis state |0>, index 1 its
orthogonal partner; a dim-4 index is 2*(system index) + (blank index).

The eigensolver is a cyclic Jacobi iteration (see qbc._kernels), chosen for
determinism at these dimensions; eigenvector phases are fixed so identical
inputs give identical outputs bit for bit.
"""

from dataclasses import dataclass

import numpy as np

from . import tolerances as tol
from ._kernels import jacobi_eigh

_DIMS = (2, 4)


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def ket(amplitudes) -> np.ndarray:
    """Build a ket from a sequence of amplitudes (dim 2 or 4)."""
    amp = np.asarray(amplitudes, dtype=np.complex128).reshape(-1).copy()
    if amp.shape[0] not in _DIMS:
        raise ValueError(f"ket dimension must be 2 or 4, got {amp.shape[0]}")
    if not np.all(np.isfinite(amp.view(np.float64))):
        raise ValueError("ket amplitudes must be finite")
    return _readonly(amp)


def basis(dim: int, index: int) -> np.ndarray:
    """Standard basis ket |index> in the given dimension."""
    if dim not in _DIMS:
        raise ValueError(f"dimension must be 2 or 4, got {dim}")
    if not 0 <= index < dim:
        raise ValueError(f"basis index {index} out of range for dim {dim}")
    amp = np.zeros(dim, dtype=np.complex128)
    amp[index] = 1.0
    return _readonly(amp)


def operator(entries) -> np.ndarray:
    """Build an operator matrix (dim 2 or 4) from nested entries."""
    m = np.asarray(entries, dtype=np.complex128).copy()
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] not in _DIMS:
        raise ValueError(f"operator must be square with dim 2 or 4, got {m.shape}")
    if not np.all(np.isfinite(m.view(np.float64))):
        raise ValueError("operator entries must be finite")
    return _readonly(m)


def eye(dim: int) -> np.ndarray:
    return _readonly(np.eye(dim, dtype=np.complex128))


def require_normalized(a: np.ndarray, tolerance: float = tol.EQUALITY_TOL) -> None:
    norm2 = float(np.vdot(a, a).real)
    if abs(norm2 - 1.0) > tolerance:
        raise ValueError(f"ket is not normalized: |norm^2 - 1| = {abs(norm2 - 1.0):.3e}")


def require_hermitian(m: np.ndarray, tolerance: float = tol.VALIDATION_TOL) -> None:
    dev = float(np.max(np.abs(m - m.conj().T)))
    if dev > tolerance:
        raise ValueError(f"operator is not Hermitian: max deviation {dev:.3e}")


def require_density_matrix(rho: np.ndarray) -> None:
    """Validate unit trace (1e-12) and eigenvalues above the PSD floor."""
    require_hermitian(rho)
    tr = complex(np.trace(rho))
    if abs(tr - 1.0) > tol.EQUALITY_TOL:
        raise ValueError(f"density matrix trace {tr} is not 1")
    evals = hermitian_eig(rho).eigenvalues
    if evals[0] < tol.EIGENVALUE_FLOOR:
        raise ValueError(f"density matrix has eigenvalue {evals[0]:.3e} below floor")


def inner_product(a: np.ndarray, b: np.ndarray) -> complex:
    """<a|b> with the conjugation on the first argument."""
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return complex(np.vdot(a, b))


def tensor(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Tensor product of two dim-2 kets; component 2j+k is a_j * b_k."""
    if a.shape != (2,) or b.shape != (2,):
        raise ValueError("tensor expects two dim-2 kets")
    return _readonly(np.kron(a, b))


def tensor_op(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Tensor product of two dim-2 operators."""
    if a.shape != (2, 2) or b.shape != (2, 2):
        raise ValueError("tensor_op expects two 2x2 operators")
    return _readonly(np.kron(a, b))


def outer(a: np.ndarray, b: np.ndarray | None = None) -> np.ndarray:
    """|a><b| (|a><a| when b is omitted)."""
    if b is None:
        b = a
    return _readonly(np.outer(a, b.conj()))


def partial_trace(state: np.ndarray, subsystem: str) -> np.ndarray:
    """Trace out one factor of a dim-4 ket or operator.

    subsystem is the factor being removed: "first" or "second". A ket is
    treated as its projector. The result is the 2x2 reduced matrix of the
    remaining factor.
    """
    if subsystem not in ("first", "second"):
        raise ValueError(f'subsystem must be "first" or "second", got {subsystem!r}')
    if state.shape == (4,):
        m = np.outer(state, state.conj())
    elif state.shape == (4, 4):
        m = state
    else:
        raise ValueError(f"partial_trace expects a dim-4 ket or 4x4 operator, got {state.shape}")
    t = m.reshape(2, 2, 2, 2)
    if subsystem == "first":
        out = np.einsum("kikj->ij", t)
    else:
        out = np.einsum("ikjk->ij", t)
    return _readonly(out)


@dataclass(frozen=True)
class EigDecomposition:
    """Eigenvalues in ascending order; eigenvector k is eigenvectors[:, k]."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def hermitian_eig(m: np.ndarray) -> EigDecomposition:
    """Spectral decomposition of a Hermitian operator (dim 2 or 4).

    The input may deviate from exact hermiticity by up to 1e-9; it is
    symmetrized before the Jacobi iteration. Output is deterministic.
    """
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] not in _DIMS:
        raise ValueError(f"hermitian_eig expects a square dim-2 or dim-4 matrix, got {m.shape}")
    require_hermitian(m)
    sym = np.ascontiguousarray((m + m.conj().T) / 2.0, dtype=np.complex128)
    evals, evecs = jacobi_eigh(sym)
    return EigDecomposition(_readonly(evals), _readonly(evecs))


def von_neumann_entropy(rho: np.ndarray) -> float:
    """Entropy -sum(lam * ln lam) in nats, with 0 ln 0 = 0."""
    evals = hermitian_eig(rho).eigenvalues
    if evals[0] < tol.EIGENVALUE_FLOOR:
        raise ValueError(f"eigenvalue {evals[0]:.3e} below the density-matrix floor")
    s = 0.0
    for lam in evals:
        if lam > 0.0:
            s -= lam * np.log(lam)
    # an eigenvalue of 1 + eps would otherwise give a -1e-16 entropy
    return max(0.0, float(s))
