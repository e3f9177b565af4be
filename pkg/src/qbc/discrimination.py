"""Minimum-error discrimination of two equiprobable quantum states.

The optimal two-outcome measurement splits the spectral projectors of
rho0 - rho1 by eigenvalue sign; its error is 1/2 (1 + sum of negative
eigenvalues). Zero eigenvalues are assigned to the first outcome, which
fixes a deterministic measurement without changing the error.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import hilbert
from . import tolerances as tol


@dataclass(frozen=True)
class BinaryPOVM:
    """Pair of positive operators summing to the identity."""

    pi0: np.ndarray
    pi1: np.ndarray

    def __post_init__(self):
        if self.pi0.shape != self.pi1.shape:
            raise ValueError("POVM elements must share a dimension")
        dim = self.pi0.shape[0]
        dev = float(np.max(np.abs(self.pi0 + self.pi1 - np.eye(dim))))
        if dev > tol.EQUALITY_TOL:
            raise ValueError(f"POVM elements do not sum to identity: deviation {dev:.3e}")
        for elem in (self.pi0, self.pi1):
            hilbert.require_hermitian(elem)
            evals = hilbert.hermitian_eig(elem).eigenvalues
            if evals[0] < tol.EIGENVALUE_FLOOR:
                raise ValueError(f"POVM element has eigenvalue {evals[0]:.3e} below floor")
        self.pi0.setflags(write=False)
        self.pi1.setflags(write=False)


@dataclass(frozen=True)
class DiscriminationResult:
    povm: BinaryPOVM
    error_prob: float


def error_of_povm(rho0: np.ndarray, rho1: np.ndarray, povm: BinaryPOVM) -> float:
    """Average error 1/2 (1 + tr((rho0 - rho1) Pi1)) for equal priors."""
    if rho0.shape != rho1.shape or rho0.shape != povm.pi1.shape:
        raise ValueError("dimension mismatch between states and POVM")
    val = np.trace((rho0 - rho1) @ povm.pi1)
    return 0.5 * (1.0 + float(val.real))


def helstrom(rho0: np.ndarray, rho1: np.ndarray) -> DiscriminationResult:
    """Optimal measurement and its error for two equiprobable states.

    The error is evaluated in a swap-symmetric form, so exchanging the two
    states returns the identical float.
    """
    if rho0.shape != rho1.shape:
        raise ValueError("dimension mismatch between states")
    diff = rho0 - rho1
    dec = hilbert.hermitian_eig(diff)
    dim = diff.shape[0]
    pi1 = np.zeros((dim, dim), dtype=np.complex128)
    for k in range(dim):
        if dec.eigenvalues[k] < 0.0:
            v = dec.eigenvectors[:, k]
            pi1 += np.outer(v, v.conj())
    pi0 = np.eye(dim, dtype=np.complex128) - pi1
    # sum each sign class in ascending-magnitude order: the two orderings
    # mirror exactly under a swap of the inputs
    neg = 0.0
    for k in range(dim - 1, -1, -1):
        if dec.eigenvalues[k] < 0.0:
            neg += dec.eigenvalues[k]
    pos = 0.0
    for k in range(dim):
        if dec.eigenvalues[k] > 0.0:
            pos += dec.eigenvalues[k]
    error = 0.5 - (pos - neg) / 4.0
    return DiscriminationResult(povm=BinaryPOVM(pi0=pi0, pi1=pi1), error_prob=error)


def pure_pair_kets(theta: float) -> tuple[np.ndarray, np.ndarray]:
    """The reference pure pair with overlap cos(theta)."""
    _check_theta(theta)
    k0 = hilbert.basis(2, 0)
    k1 = hilbert.ket([math.cos(theta), math.sin(theta)])
    return k0, k1


def pure_pair_error(theta: float) -> float:
    """Minimum error for two equiprobable pure states with overlap cos(theta)."""
    _check_theta(theta)
    return 0.5 * (1.0 - math.sin(theta))


def clone_povm_closed_form(phi: float) -> BinaryPOVM:
    """Optimal measurement for the clone marginals, in closed form.

    Rank-1 projectors onto (cos(phi/2), sin(phi/2)) and its orthogonal
    complement. Written with half angles, so the phi in {0, pi} limits
    (standard-basis projectors) need no special casing.
    """
    if not 0.0 <= phi < 2.0 * math.pi:
        raise ValueError(f"phi must lie in [0, 2*pi), got {phi}")
    c = math.cos(phi / 2.0)
    s = math.sin(phi / 2.0)
    plus = np.array([c, s], dtype=np.complex128)
    minus = np.array([-s, c], dtype=np.complex128)
    return BinaryPOVM(pi0=np.outer(plus, plus.conj()), pi1=np.outer(minus, minus.conj()))


def _check_theta(theta: float) -> None:
    if not 0.0 <= theta <= math.pi / 2.0:
        raise ValueError(f"theta must lie in [0, pi/2], got {theta}")
