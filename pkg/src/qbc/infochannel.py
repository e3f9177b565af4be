"""Classical layer: measurement-induced channels and broadcast rates.

A binary channel is stored as p[out][in] with columns summing to 1. The
broadcast construction is a cascade S -> X -> Y -> Z: a trade-off channel
with crossover epsilon, the measurement-induced channel, and an identity
post-processing, all over a uniform prior on S. Information quantities are
in nats; conventions 0 ln 0 = 0 and "conditioning on a null event
contributes nothing" make the epsilon endpoints exact.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import tolerances as tol
from .cloner import clone_state, marginal_closed_form, optimal_params
from .discrimination import BinaryPOVM
from .hilbert import tensor_op

LN2 = math.log(2.0)


@dataclass(frozen=True)
class BinaryChannel:
    """Conditional probabilities p[out][in] of a 2-in 2-out channel."""

    p: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.p, dtype=np.float64)
        if m.shape != (2, 2):
            raise ValueError(f"channel matrix must be 2x2, got {m.shape}")
        if np.any(m < 0.0) or np.any(m > 1.0):
            raise ValueError("channel entries must lie in [0, 1]")
        colsums = m.sum(axis=0)
        if np.max(np.abs(colsums - 1.0)) > tol.EQUALITY_TOL:
            raise ValueError(f"channel columns must sum to 1, got {colsums}")
        m.setflags(write=False)
        object.__setattr__(self, "p", m)


def bsc(crossover: float) -> BinaryChannel:
    """Binary symmetric channel."""
    if not 0.0 <= crossover <= 1.0:
        raise ValueError(f"crossover must lie in [0, 1], got {crossover}")
    return BinaryChannel(np.array([[1.0 - crossover, crossover], [crossover, 1.0 - crossover]]))


@dataclass(frozen=True)
class JointDistribution:
    """Probability table over named binary variables, axes in vars order."""

    vars: tuple[str, ...]
    table: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.table, dtype=np.float64)
        n = len(self.vars)
        if len(set(self.vars)) != n:
            raise ValueError("variable names must be distinct")
        if t.shape != (2,) * n:
            t = t.reshape((2,) * n)
        if np.any(t < 0.0):
            raise ValueError("probabilities must be nonnegative")
        if abs(t.sum() - 1.0) > tol.EQUALITY_TOL:
            raise ValueError(f"probabilities must sum to 1, got {t.sum()}")
        t.setflags(write=False)
        object.__setattr__(self, "table", t)

    def axis(self, name: str) -> int:
        try:
            return self.vars.index(name)
        except ValueError:
            raise ValueError(f"variable {name!r} not in {self.vars}") from None


class RatePoint(NamedTuple):
    r1: float
    r2: float


def binary_entropy(x: float) -> float:
    """Shannon entropy (nats) of a bit with probability x."""
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"argument must lie in [0, 1], got {x}")
    s = 0.0
    for p in (x, 1.0 - x):
        if p > 0.0:
            s -= p * math.log(p)
    return s


def induced_channel(theta: float, phi: float, povm: BinaryPOVM) -> BinaryChannel:
    """Channel p(y|x) = tr(rho_x Pi_y) seen by a user measuring a clone."""
    if povm.pi0.shape != (2, 2):
        raise ValueError("POVM must act on dimension 2")
    rhos = marginal_closed_form(theta, phi)
    p = np.empty((2, 2))
    for x, rho in enumerate(rhos):
        for y, pi in enumerate((povm.pi0, povm.pi1)):
            p[y, x] = max(0.0, float(np.trace(rho @ pi).real))
    return BinaryChannel(p)


def joint_clone_channel(theta: float, phi: float, povm: BinaryPOVM) -> np.ndarray:
    """Joint outcome law p[y, z, x] when both users measure their clone.

    The clones are correlated, so this is generally not the product of the
    two marginal channels; marginalizing either outcome recovers the
    induced channel exactly.
    """
    if povm.pi0.shape != (2, 2):
        raise ValueError("POVM must act on dimension 2")
    params = optimal_params(theta, phi)
    elems = (povm.pi0, povm.pi1)
    out = np.empty((2, 2, 2))
    for x in range(2):
        sigma = clone_state(params, x)
        for y in range(2):
            for z in range(2):
                val = np.vdot(sigma, tensor_op(elems[y], elems[z]) @ sigma)
                out[y, z, x] = max(0.0, float(val.real))
    out.setflags(write=False)
    return out


def check_degraded(p1: BinaryChannel, p2: BinaryChannel) -> float:
    """Residual of the best column-stochastic W with p2 = W p1.

    Solves the 2x2 linear system and clamps W into the stochastic box; with
    both channels column-stochastic the row residuals are complementary, so
    the reported number is the max entrywise residual. Zero (within 1e-12)
    certifies a degraded pair.
    """
    a, b = p1.p[0, 0], p1.p[0, 1]
    det = a - b  # distinct columns iff nonzero
    if abs(det) < tol.EQUALITY_TOL:
        # p1's output carries a single distribution; W can only shift it
        return abs(p2.p[0, 0] - p2.p[0, 1]) / 2.0
    w_raw = p2.p @ np.linalg.inv(p1.p)
    w0 = min(1.0, max(0.0, w_raw[1, 0]))
    w1 = min(1.0, max(0.0, w_raw[0, 1]))
    w = np.array([[1.0 - w0, w1], [w0, 1.0 - w1]])
    return float(np.max(np.abs(p2.p - w @ p1.p)))


def cascade_joint_channels(zero_channel: BinaryChannel, one_channel: BinaryChannel) -> JointDistribution:
    """Joint law of (S, X, Y, Z): uniform S, X = 0-channel(S), Y = 1-channel(X), Z = Y."""
    table = np.zeros((2, 2, 2, 2))
    for s in range(2):
        for x in range(2):
            for y in range(2):
                table[s, x, y, y] = 0.5 * zero_channel.p[x, s] * one_channel.p[y, x]
    return JointDistribution(vars=("S", "X", "Y", "Z"), table=table)


def cascade_joint(epsilon: float, pe: float) -> JointDistribution:
    """Degraded-broadcast cascade with symmetric crossovers epsilon and pe."""
    if not 0.0 <= epsilon <= 0.5:
        raise ValueError(f"epsilon must lie in [0, 0.5], got {epsilon}")
    if not 0.0 <= pe <= 0.5:
        raise ValueError(f"pe must lie in [0, 0.5], got {pe}")
    return cascade_joint_channels(bsc(epsilon), bsc(pe))


def marginal(joint: JointDistribution, keep: tuple[str, ...]) -> JointDistribution:
    """Marginal distribution over the named variables, in the given order."""
    axes = tuple(joint.axis(name) for name in keep)
    drop = tuple(i for i in range(len(joint.vars)) if i not in axes)
    summed = joint.table.sum(axis=drop) if drop else joint.table
    # summing keeps surviving axes in original order; permute to keep order
    ranks = np.argsort(np.argsort(axes))
    return JointDistribution(vars=keep, table=np.transpose(summed, ranks))


def mutual_information(joint: JointDistribution, var_a: str, var_b: str) -> float:
    """I(A:B) in nats by direct summation."""
    pab = marginal(joint, (var_a, var_b)).table
    pa = pab.sum(axis=1)
    pb = pab.sum(axis=0)
    info = 0.0
    for i in range(2):
        for j in range(2):
            p = pab[i, j]
            if p > 0.0:
                info += p * math.log(p / (pa[i] * pb[j]))
    return info


def conditional_mutual_information(
    joint: JointDistribution, var_a: str, var_b: str, var_cond: str
) -> float:
    """I(A:B|C) in nats; null conditioning events contribute zero."""
    pabc = marginal(joint, (var_a, var_b, var_cond)).table
    info = 0.0
    for c in range(2):
        pc = pabc[:, :, c].sum()
        if pc <= 0.0:
            continue
        pac = pabc[:, :, c].sum(axis=1)
        pbc = pabc[:, :, c].sum(axis=0)
        for i in range(2):
            for j in range(2):
                p = pabc[i, j, c]
                if p > 0.0:
                    info += p * math.log(p * pc / (pac[i] * pbc[j]))
    return info


def binary_convolution(a: float, b: float) -> float:
    """Crossover of two symmetric channels in cascade: (1-b) a + b (1-a)."""
    return (1.0 - b) * a + b * (1.0 - a)


def rate_region_closed_form(pe: float, epsilon: float) -> RatePoint:
    """Achievable-rate corner point of the degraded broadcast cascade.

    r1 bounds the fine branch I(X:Y|S), r2 the coarse branch I(S:Z); both
    depend on the quantum layer only through the decoding error pe.
    """
    if not 0.0 <= pe <= 0.5:
        raise ValueError(f"pe must lie in [0, 0.5], got {pe}")
    if not 0.0 <= epsilon <= 0.5:
        raise ValueError(f"epsilon must lie in [0, 0.5], got {epsilon}")
    conv = binary_convolution(epsilon, pe)
    return RatePoint(
        r1=binary_entropy(conv) - binary_entropy(pe),
        r2=LN2 - binary_entropy(conv),
    )


def rate_region_oracle(pe: float, epsilon: float) -> RatePoint:
    """Same rate pair evaluated from the explicit joint distribution."""
    joint = cascade_joint(epsilon, pe)
    return RatePoint(
        r1=conditional_mutual_information(joint, "X", "Y", "S"),
        r2=mutual_information(joint, "S", "Z"),
    )
