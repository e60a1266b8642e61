"""Endemic equilibria through a monotone scalar map.

Stationary infection profiles are exactly the fixed points of

    Phi(y) = Psi(M y),    Psi(u)_i = u_i / (1 + (1 + alpha_i) u_i),

taken componentwise. Phi is nondecreasing in y and M, nonincreasing in
alpha, and maps everything into the box 0 <= y_i < ybar_i. When the
reproduction number is at most one the origin is the only fixed point;
above one there is exactly one more, strictly positive, and iterating Phi
from the cap ybar walks down to it while iterating from a small positive
multiple of the Perron vector walks up. solve_endemic runs both sequences
and stops when the two-sided bracket closes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    EpsilonStarNotFoundError,
    NoConvergenceError,
    OutOfCapError,
)
from .model import ModelInstance
from .spectral import SpectralResult, reproduction_number

# models whose reproduction number sits within this band of 1 are treated
# as threshold cases and reported as having no endemic equilibrium
R0_TOL = 1e-9


@dataclass(frozen=True)
class PhiIterationLog:
    """Iterates of the fixed-point map, including the start."""

    iterates: list[np.ndarray]
    converged: bool
    final_gap: float


@dataclass(frozen=True)
class EndemicEquilibrium:
    """Strictly positive stationary profile with solver diagnostics.

    residual is ||y_star - Phi(y_star)||_inf and bracket_gap the final
    sup-norm distance between the upper and lower iterate sequences.
    """

    y_star: np.ndarray
    z_star: np.ndarray
    x_star: np.ndarray
    iterations: int
    residual: float
    bracket_gap: float


@dataclass(frozen=True)
class NoEndemic:
    """Returned when R0 <= 1 + R0_TOL; only the origin is stationary.

    near_threshold flags reproduction numbers within R0_TOL of one, where
    the fixed-point problem is too ill conditioned to resolve a positive
    equilibrium from the origin.
    """

    r0: float
    near_threshold: bool


def psi(y: np.ndarray, alpha: np.ndarray) -> np.ndarray:
    """Componentwise saturation y_i / (1 + (1 + alpha_i) y_i).

    Increasing in y_i, decreasing in alpha_i, with values in [0, ybar_i)
    for y_i >= 0.
    """
    y = np.asarray(y, dtype=float)
    alpha = np.asarray(alpha, dtype=float)
    return y / (1.0 + (1.0 + alpha) * y)


def phi(y: np.ndarray, M: np.ndarray, alpha: np.ndarray) -> np.ndarray:
    """The fixed-point map Psi(M y)."""
    return psi(np.asarray(M, dtype=float) @ np.asarray(y, dtype=float), alpha)


def iterate_phi(
    xi0: np.ndarray,
    M: np.ndarray,
    alpha: np.ndarray,
    tol: float = 1e-12,
    max_iter: int = 1_000_000,
) -> tuple[np.ndarray, PhiIterationLog]:
    """Iterate Phi from xi0 until the step size drops to tol.

    Returns the final iterate and the full iterate log. Raises
    NoConvergenceError when max_iter applications of the map still leave
    steps above tol.
    """
    xi = np.array(xi0, dtype=float)
    iterates = [xi.copy()]
    for _ in range(max_iter):
        nxt = phi(xi, M, alpha)
        gap = float(np.max(np.abs(nxt - xi)))
        iterates.append(nxt)
        xi = nxt
        if gap <= tol:
            return xi, PhiIterationLog(iterates=iterates, converged=True, final_gap=gap)
    raise NoConvergenceError(
        f"fixed-point iteration still moved more than {tol} after {max_iter} steps"
    )


def lower_bracket_start(model: ModelInstance, v_right: np.ndarray) -> np.ndarray:
    """A strictly positive start xi with Phi(xi) >= xi componentwise.

    Scales the positive eigenvector down from min(ybar) / (2 max v) by
    halving until the map expands it, which must happen for R0 > 1 because
    Phi(eps v) = eps R0 v + O(eps^2). Raises EpsilonStarNotFoundError if
    the scale underflows (the supercritical premise was violated).
    """
    v = np.asarray(v_right, dtype=float)
    eps = float(np.min(model.ybar) / (2.0 * np.max(v)))
    while eps >= 1e-300:
        xi = eps * v
        if np.all(phi(xi, model.M, model.alpha) >= xi):
            return xi
        eps *= 0.5
    raise EpsilonStarNotFoundError("no positive scale made Phi expand the start vector")


def solve_endemic(
    model: ModelInstance,
    tol: float = 1e-12,
    max_iter: int = 1_000_000,
    spectral: SpectralResult | None = None,
) -> EndemicEquilibrium | NoEndemic:
    """Locate the unique positive fixed point of Phi by two-sided bracketing.

    The upper sequence starts at the cap ybar and is componentwise
    nonincreasing; the lower starts at a small positive multiple of the
    Perron vector and is nondecreasing. Both converge to the same point,
    so iteration stops once their sup-norm gap closes to tol and the
    midpoint is reported. Recovered and susceptible fractions follow from
    stationarity: z = alpha * y, x = 1 - y - z.

    Returns NoEndemic when R0 <= 1 + R0_TOL. The eigensolve can be skipped
    by passing a precomputed SpectralResult for model.M.
    """
    if spectral is None:
        r0, spectral = reproduction_number(model)
    else:
        r0 = spectral.lam
    if r0 <= 1.0 + R0_TOL:
        return NoEndemic(r0=r0, near_threshold=abs(r0 - 1.0) <= R0_TOL)

    upper = model.ybar.copy()
    lower = lower_bracket_start(model, spectral.v_right)
    gap = float(np.max(np.abs(upper - lower)))
    iterations = 0
    while gap > tol:
        if iterations >= max_iter:
            raise NoConvergenceError(
                f"equilibrium bracket still {gap:.3e} wide after {max_iter} iterations"
            )
        upper = phi(upper, model.M, model.alpha)
        lower = phi(lower, model.M, model.alpha)
        gap = float(np.max(np.abs(upper - lower)))
        iterations += 1

    y_star = 0.5 * (upper + lower)
    x_star, z_star = reconstruct_full(y_star, model)
    residual = float(np.max(np.abs(y_star - phi(y_star, model.M, model.alpha))))
    return EndemicEquilibrium(
        y_star=y_star,
        z_star=z_star,
        x_star=x_star,
        iterations=iterations,
        residual=residual,
        bracket_gap=gap,
    )


def reconstruct_full(y_star: np.ndarray, model: ModelInstance) -> tuple[np.ndarray, np.ndarray]:
    """Stationary susceptible and recovered fractions for a given y_star.

    At a stationary point z = (gamma/delta) y and x = 1 - y - z. Requires
    y_star within the cap ybar (up to 1e-12 slack), which guarantees
    x >= 0; raises OutOfCapError otherwise.
    """
    y = np.asarray(y_star, dtype=float)
    if np.any(y < -1e-12) or np.any(y > model.ybar + 1e-12):
        raise OutOfCapError("y_star must satisfy 0 <= y_i <= 1/(1 + alpha_i)")
    z = model.alpha * y
    x = 1.0 - y - z
    return x, z


def out_regular_equilibrium(model: ModelInstance) -> np.ndarray | None:
    """Closed-form y_star for homogeneous rates and constant row sums.

    When every row of W sums to the same lam_W, gamma = gamma_bar * 1 and
    delta = delta_bar * 1, the all-ones direction is invariant and the
    positive equilibrium is the uniform vector

        y_star = (delta_bar / (gamma_bar + delta_bar)) (1 - gamma_bar / lam_W) 1.

    Returns None when the model is not of this form or not supercritical.
    """
    row_sums = model.W.sum(axis=1)
    if float(np.ptp(row_sums)) > 1e-12:
        return None
    if float(np.ptp(model.gamma)) > 1e-12 or float(np.ptp(model.delta)) > 1e-12:
        return None
    lam_w = float(row_sums[0])
    gamma_bar = float(model.gamma[0])
    delta_bar = float(model.delta[0])
    if lam_w / gamma_bar <= 1.0:
        return None
    level = (delta_bar / (gamma_bar + delta_bar)) * (1.0 - gamma_bar / lam_w)
    return np.full(model.n, level)
