"""Shared model builders for the test suite."""

from __future__ import annotations

import numpy as np

from netsirs import ModelInstance, validate_model

# Five-node reference network used throughout the suite ("ref5"): strongly
# connected with heterogeneous recovery and heavy asymmetry, unit curing
# rates, so the next-generation matrix coincides with W.
REF5_W = [
    [3.0, 6.0, 4.0, 1.0, 8.0],
    [0.1, 0.4, 1.0, 0.0, 0.5],
    [2.0, 1.4, 2.8, 2.0, 1.4],
    [0.6, 0.0, 0.0, 1.2, 0.4],
    [2.8571, 0.0, 0.0, 0.7143, 1.2857],
]
REF5_GAMMA = [1.0, 1.0, 1.0, 1.0, 1.0]
REF5_DELTA = [0.3, 0.4, 0.2, 0.1, 0.6]

REF5_R0 = 8.743346228  # locked by the characteristic-polynomial oracle


def ref5() -> ModelInstance:
    return validate_model(REF5_W, REF5_GAMMA, REF5_DELTA, name="ref5")


def out_regular(
    n: int = 3,
    row_sum: float = 2.0,
    gamma: float = 1.0,
    delta: float = 1.0,
) -> ModelInstance:
    """Complete graph with identical row sums and homogeneous rates.

    Every node sees the same pressure, so the endemic equilibrium is a
    multiple of the all-ones vector with the closed form
    y* = (delta / (gamma + delta)) (1 - gamma / row_sum).
    """
    W = np.full((n, n), row_sum / n)
    return validate_model(W, [gamma] * n, [delta] * n, name="out_regular")


def out_regular_y_star(
    row_sum: float = 2.0, gamma: float = 1.0, delta: float = 1.0
) -> float:
    return (delta / (gamma + delta)) * (1.0 - gamma / row_sum)


def random_supercritical(
    rng: np.random.Generator, n: int, r0_target: float
) -> ModelInstance:
    """Random strongly connected model rescaled to a prescribed R0.

    A directed cycle guarantees irreducibility; extra edges, curing and
    loss-of-immunity rates are drawn independently, then W is scaled so
    the spectral radius of [gamma]^-1 W hits r0_target.
    """
    W = np.zeros((n, n))
    for i in range(n):
        W[i, (i + 1) % n] = rng.uniform(0.5, 1.5)
    extra = rng.random((n, n)) < 0.5
    W[extra] += rng.uniform(0.2, 1.0, size=(n, n))[extra]
    gamma = rng.uniform(0.5, 2.0, size=n)
    delta = rng.uniform(0.2, 1.5, size=n)
    rho = np.abs(np.linalg.eigvals(W / gamma[:, None])).max()
    W *= r0_target / rho
    return validate_model(W, gamma, delta)


def rank_one_model(
    rng: np.random.Generator, n: int, r0_target: float
) -> tuple[ModelInstance, np.ndarray, np.ndarray, float]:
    """Positive rank-one contact matrix W = a b^T with homogeneous curing.

    Returns the model together with the factors a, b (already folded so
    that the spectral radius of W equals r0_target) and the curing rate.
    """
    a = rng.uniform(0.5, 1.5, size=n)
    b = rng.uniform(0.5, 1.5, size=n)
    scale = r0_target / float(a @ b)
    a = a * scale
    W = np.outer(a, b)
    gamma_bar = 1.0
    delta = rng.uniform(0.3, 0.9, size=n)
    model = validate_model(W, [gamma_bar] * n, delta)
    return model, a, b, gamma_bar
