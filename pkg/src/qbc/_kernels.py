"""Compiled numeric kernels.

Everything here operates on bare numpy arrays so it can run under numba.
The decorator comes from ``qbc._accel``: with ``QBC_DISABLE_NUMBA=1`` the
same functions run as plain Python. All loops are deterministic; no kernel
uses fastmath, so results are identical on both paths.

Conventions:
  * Hermitian matrices are complex128, dims 2..4.
  * An optimizer point is a float64 vector u of length 6: u[0:3] and u[3:6]
    are the two rows of the cloning map in sphere coordinates
    (x_i, y_i, sqrt(2)*b_i). The isometry constraints become
    |u0| = |u1| = 1 and dot(u0, u1) = cos(overlap angle).
"""

import numpy as np

from ._accel import njit
from .tolerances import JACOBI_MAX_SWEEPS, JACOBI_OFFDIAG_TOL


@njit(cache=True)
def jacobi_eigh(a):
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Returns (eigenvalues ascending, eigenvectors as columns). The phase of
    each eigenvector is fixed by making its largest-magnitude component
    real and positive, so identical input bits give identical output bits.
    """
    n = a.shape[0]
    d = a.copy()
    v = np.eye(n, dtype=np.complex128)
    for _sweep in range(JACOBI_MAX_SWEEPS):
        off2 = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                off2 += abs(d[p, q]) ** 2
        if np.sqrt(2.0 * off2) < JACOBI_OFFDIAG_TOL:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = d[p, q]
                r = abs(apq)
                if r == 0.0:
                    continue
                # componentwise: complex-by-real division compiles
                # differently from numpy's and would break bit parity
                # between the compiled and fallback paths
                w = complex(apq.real / r, apq.imag / r)
                tau = (d[q, q].real - d[p, p].real) / (2.0 * r)
                if tau >= 0.0:
                    t = 1.0 / (tau + np.sqrt(tau * tau + 1.0))
                else:
                    t = -1.0 / (-tau + np.sqrt(tau * tau + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                app = d[p, p].real
                aqq = d[q, q].real
                d[p, p] = app - t * r
                d[q, q] = aqq + t * r
                d[p, q] = 0.0
                d[q, p] = 0.0
                for i in range(n):
                    if i != p and i != q:
                        aip = d[i, p]
                        aiq = d[i, q]
                        d[i, p] = c * aip - s * np.conj(w) * aiq
                        d[i, q] = s * w * aip + c * aiq
                        d[p, i] = np.conj(d[i, p])
                        d[q, i] = np.conj(d[i, q])
                for i in range(n):
                    vip = v[i, p]
                    viq = v[i, q]
                    v[i, p] = c * vip - s * np.conj(w) * viq
                    v[i, q] = s * w * vip + c * viq

    evals = np.empty(n, dtype=np.float64)
    for i in range(n):
        evals[i] = d[i, i].real

    order = np.empty(n, dtype=np.int64)
    for i in range(n):
        order[i] = i
    # insertion sort: stable, deterministic for exact ties
    for i in range(1, n):
        key_val = evals[i]
        key_ord = order[i]
        j = i - 1
        while j >= 0 and evals[j] > key_val:
            evals[j + 1] = evals[j]
            order[j + 1] = order[j]
            j -= 1
        evals[j + 1] = key_val
        order[j + 1] = key_ord

    vecs = np.empty((n, n), dtype=np.complex128)
    for k in range(n):
        col = order[k]
        best = 0
        best_mag = -1.0
        for i in range(n):
            mag = abs(v[i, col])
            if mag > best_mag:
                best_mag = mag
                best = i
        lead = v[best, col]
        phase = complex(lead.real / best_mag, -lead.imag / best_mag)
        for i in range(n):
            vecs[i, k] = v[i, col] * phase
    return evals, vecs


@njit(cache=True)
def clone_lambda(u):
    """Distinguishability objective in sphere coordinates.

    Equals the squared smallest eigenvalue of the clone-marginal difference.
    """
    g1 = u[5] * u[3] - u[2] * u[0]
    q = ((u[3] + u[4]) ** 2 - (u[0] + u[1]) ** 2) / 2.0 + (u[5] ** 2 - u[2] ** 2) / 2.0
    return g1 * g1 + q * q


@njit(cache=True)
def clone_lambda_grad(u):
    """Analytic gradient of clone_lambda."""
    g1 = u[5] * u[3] - u[2] * u[0]
    q = ((u[3] + u[4]) ** 2 - (u[0] + u[1]) ** 2) / 2.0 + (u[5] ** 2 - u[2] ** 2) / 2.0
    grad = np.empty(6, dtype=np.float64)
    s0 = u[0] + u[1]
    s1 = u[3] + u[4]
    grad[0] = 2.0 * g1 * (-u[2]) + 2.0 * q * (-s0)
    grad[1] = 2.0 * q * (-s0)
    grad[2] = 2.0 * g1 * (-u[0]) + 2.0 * q * (-u[2])
    grad[3] = 2.0 * g1 * u[5] + 2.0 * q * s1
    grad[4] = 2.0 * q * s1
    grad[5] = 2.0 * g1 * u[3] + 2.0 * q * u[5]
    return grad


@njit(cache=True)
def project_pair(u, gamma, tol, max_iters):
    """Project a 6-vector onto {|u0| = |u1| = 1, dot(u0, u1) = gamma}.

    Alternates sphere rescaling with a symmetric mixing of the two halves
    that restores the coupling; the mixing parameter solves a quadratic
    whose small root is evaluated in cancellation-free form. Returns
    (point, converged).

    The coupling certificate degenerates quadratically at gamma = +-1, so
    the fully (anti)parallel target is handled exactly: both halves are set
    to the normalized (anti)symmetric average.
    """
    v = u.copy()
    if abs(gamma) >= 1.0 - 1e-15:
        sign = 1.0 if gamma > 0.0 else -1.0
        m = np.empty(3, dtype=np.float64)
        for i in range(3):
            m[i] = v[i] + sign * v[3 + i]
        nm = np.sqrt(m[0] * m[0] + m[1] * m[1] + m[2] * m[2])
        if nm == 0.0:
            return v, False
        for i in range(3):
            v[i] = m[i] / nm
            v[3 + i] = sign * v[i]
        return v, True
    for _ in range(max_iters):
        n0 = np.sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2])
        n1 = np.sqrt(v[3] * v[3] + v[4] * v[4] + v[5] * v[5])
        if n0 == 0.0 or n1 == 0.0:
            return v, False
        for i in range(3):
            v[i] = v[i] / n0
            v[3 + i] = v[3 + i] / n1
        g = v[0] * v[3] + v[1] * v[4] + v[2] * v[5]
        if abs(g - gamma) < tol:
            return v, True
        # mixing v_i' = v_i + s v_{1-i} restores the coupling when
        # (g - gamma) s^2 + 2 (1 - gamma g) s + (g - gamma) = 0; the two
        # roots multiply to 1, take the small one
        a = g - gamma
        b = 1.0 - gamma * g
        disc = b * b - a * a
        if disc < 0.0:
            disc = 0.0
        s = -a / (b + np.sqrt(disc))
        for i in range(3):
            p = v[i]
            q = v[3 + i]
            v[i] = p + s * q
            v[3 + i] = q + s * p
    return v, False


@njit(cache=True)
def tangent_projected_grad(u, grad, gamma):
    """Remove from grad the components normal to the constraint manifold.

    Normals are n1 = (u0, 0), n2 = (0, u1), n3 = (u1, u0); their Gram system
    is solved in closed form. When the coupling constraint is degenerate
    (gamma near +-1) n3 lies in span{n1, n2} and is dropped.
    """
    c1 = grad[0] * u[0] + grad[1] * u[1] + grad[2] * u[2]
    c2 = grad[3] * u[3] + grad[4] * u[4] + grad[5] * u[5]
    c3 = (
        grad[0] * u[3]
        + grad[1] * u[4]
        + grad[2] * u[5]
        + grad[3] * u[0]
        + grad[4] * u[1]
        + grad[5] * u[2]
    )
    det = 2.0 * (1.0 - gamma * gamma)
    out = np.empty(6, dtype=np.float64)
    if det > 1e-12:
        a3 = (c3 - gamma * (c1 + c2)) / det
        a1 = c1 - gamma * a3
        a2 = c2 - gamma * a3
    else:
        a3 = 0.0
        a1 = c1
        a2 = c2
    for i in range(3):
        out[i] = grad[i] - a1 * u[i] - a3 * u[3 + i]
        out[3 + i] = grad[3 + i] - a2 * u[3 + i] - a3 * u[i]
    return out


@njit(cache=True)
def _tangent_norm(u, gamma):
    gt = tangent_projected_grad(u, clone_lambda_grad(u), gamma)
    return np.sqrt(
        gt[0] ** 2 + gt[1] ** 2 + gt[2] ** 2 + gt[3] ** 2 + gt[4] ** 2 + gt[5] ** 2
    )


@njit(cache=True)
def ascend(
    u_init, gamma, step_init, grad_tol, max_iters, proj_tol, proj_max_iters
):
    """Projected gradient ascent from one start.

    Backtracking (halving) line search with an Armijo test; once the
    objective is flat at double resolution, steps that strictly shrink the
    tangent gradient norm are accepted instead, which polishes the iterate
    down to the grad_tol stationarity certificate.

    Returns (point, objective, tangent gradient norm, iterations, converged).
    Converged means the tangent gradient norm fell below grad_tol.
    """
    u, ok = project_pair(u_init, gamma, proj_tol, proj_max_iters)
    if not ok:
        return u, -1.0, np.inf, 0, False
    lam = clone_lambda(u)
    gnorm = np.inf
    # warm-started ladder: doubles after each acceptance so weakly curved
    # directions (small overlap angles) still contract fast
    step_try = step_init
    for it in range(max_iters):
        grad = clone_lambda_grad(u)
        gt = tangent_projected_grad(u, grad, gamma)
        gnorm = np.sqrt(
            gt[0] ** 2 + gt[1] ** 2 + gt[2] ** 2 + gt[3] ** 2 + gt[4] ** 2 + gt[5] ** 2
        )
        if gnorm < grad_tol:
            return u, lam, gnorm, it, True
        step = step_try
        improved = False
        while step > 1e-18:
            cand = np.empty(6, dtype=np.float64)
            for i in range(6):
                cand[i] = u[i] + step * gt[i]
            cand, okc = project_pair(cand, gamma, proj_tol, proj_max_iters)
            if okc:
                lam_c = clone_lambda(cand)
                if lam_c > lam + 1e-4 * step * gnorm * gnorm:
                    u = cand
                    lam = lam_c
                    improved = True
                    break
                flat = abs(lam_c - lam) <= 4e-16 * (1.0 + abs(lam))
                if flat and _tangent_norm(cand, gamma) < gnorm * (1.0 - 1e-6):
                    u = cand
                    lam = lam_c
                    improved = True
                    break
            step *= 0.5
        if not improved:
            # step collapsed: stationary to machine precision
            return u, lam, gnorm, it, gnorm < grad_tol
        step_try = min(step * 2.0, 1e6)
    return u, lam, gnorm, max_iters, gnorm < grad_tol


@njit(cache=True)
def run_starts(
    starts, gamma, step_init, grad_tol, max_iters, proj_tol, proj_max_iters
):
    """Ascend from every start row. Serial, order-independent per start."""
    n = starts.shape[0]
    points = np.empty((n, 6), dtype=np.float64)
    lams = np.empty(n, dtype=np.float64)
    gnorms = np.empty(n, dtype=np.float64)
    iters = np.empty(n, dtype=np.int64)
    conv = np.zeros(n, dtype=np.bool_)
    for k in range(n):
        u, lam, gn, it, ok = ascend(
            starts[k], gamma, step_init, grad_tol, max_iters, proj_tol, proj_max_iters
        )
        points[k] = u
        lams[k] = lam
        gnorms[k] = gn
        iters[k] = it
        conv[k] = ok
    return points, lams, gnorms, iters, conv
