"""Validated model data and state-space containers.

A model couples n populations through a nonnegative interaction matrix W,
where W[i, j] is the rate at which infected individuals of population j
expose susceptibles of population i. Population i recovers at rate
gamma[i] > 0 and loses immunity at rate delta[i] > 0. Infection must be
able to travel between any two populations, so the support digraph of W
(an edge i -> j wherever W[i, j] > 0) has to be strongly connected.

Each population splits into susceptible, infected and recovered fractions
(x_i, y_i, z_i) that sum to one, so the pair (y, z) determines the full
state. FullState and ReducedState are thin containers for the two views.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatchError,
    ModelInputError,
    NegativeEntryError,
    NonPositiveRateError,
    OutOfSimplexError,
    ReducibleError,
)

# absolute per-component slack accepted on simplex constraints for numeric states
SIMPLEX_TOL = 1e-9


@dataclass(frozen=True)
class ModelInstance:
    """A validated (W, gamma, delta) triple with derived quantities.

    Attributes
    ----------
    W : ndarray, shape (n, n)
        Nonnegative interaction matrix with strongly connected support.
    gamma : ndarray, shape (n,)
        Recovery rates, strictly positive.
    delta : ndarray, shape (n,)
        Immunity-loss rates, strictly positive.
    M : ndarray, shape (n, n)
        Rate-normalized interaction matrix, row i of W divided by gamma[i].
        Its spectral radius is the reproduction number.
    alpha : ndarray, shape (n,)
        gamma / delta, the ratio of recovery to immunity loss.
    ybar : ndarray, shape (n,)
        1 / (1 + alpha), the componentwise cap every endemic infection
        profile must respect.

    All arrays are read-only; instances are safe to share across threads.
    """

    W: np.ndarray
    gamma: np.ndarray
    delta: np.ndarray
    M: np.ndarray
    alpha: np.ndarray
    ybar: np.ndarray
    name: str | None = None

    @property
    def n(self) -> int:
        return self.W.shape[0]


@dataclass(frozen=True)
class ReducedState:
    """Infected and recovered fractions (y, z); susceptibles are implied."""

    y: np.ndarray
    z: np.ndarray


@dataclass(frozen=True)
class FullState:
    """Susceptible, infected and recovered fractions for every population."""

    x: np.ndarray
    y: np.ndarray
    z: np.ndarray


def strongly_connected_components(support: np.ndarray) -> list[list[int]]:
    """Decompose a boolean adjacency matrix into strongly connected components.

    Iterative Tarjan; support[i, j] truthy means there is an edge i -> j.
    Returns the components as lists of vertex indices.
    """
    support = np.asarray(support)
    n = support.shape[0]
    adj = [np.flatnonzero(support[i]).tolist() for i in range(n)]
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    components: list[list[int]] = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, start = work[-1]
            if start == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            descended = False
            for i in range(start, len(adj[v])):
                w = adj[v][i]
                if index[w] == -1:
                    work[-1] = (v, i + 1)
                    work.append((w, 0))
                    descended = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if descended:
                continue
            work.pop()
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                components.append(comp)
            if work:
                u, _ = work[-1]
                low[u] = min(low[u], low[v])
    return components


def check_irreducible(W: np.ndarray) -> bool:
    """True iff the support digraph of W is strongly connected.

    A 1x1 matrix is a single trivial component, so this returns True even
    for a zero entry. validate_model applies the stricter single-population
    rule that W[0, 0] > 0 is required, because a lone population with no
    self-exposure has no infection channel at all.
    """
    W = np.asarray(W, dtype=float)
    if W.ndim != 2 or W.shape[0] != W.shape[1]:
        raise DimensionMismatchError(f"expected a square matrix, got shape {W.shape}")
    if W.shape[0] == 1:
        return True
    return len(strongly_connected_components(W > 0.0)) == 1


def validate_model(
    W: np.ndarray,
    gamma: np.ndarray,
    delta: np.ndarray,
    name: str | None = None,
) -> ModelInstance:
    """Check (W, gamma, delta) and build an immutable ModelInstance.

    Raises
    ------
    DimensionMismatchError
        W is not square n x n or the rate vectors are not length n.
    NegativeEntryError
        W has a negative entry.
    NonPositiveRateError
        Some gamma[i] <= 0 or delta[i] <= 0.
    ReducibleError
        The support digraph is not strongly connected, or n == 1 with
        W[0, 0] == 0.
    """
    W = np.array(W, dtype=float)
    gamma = np.array(gamma, dtype=float)
    delta = np.array(delta, dtype=float)
    if W.ndim != 2 or W.shape[0] != W.shape[1]:
        raise DimensionMismatchError(f"W must be square, got shape {W.shape}")
    n = W.shape[0]
    if gamma.shape != (n,) or delta.shape != (n,):
        raise DimensionMismatchError(
            f"rate vectors must have shape ({n},), got {gamma.shape} and {delta.shape}"
        )
    if not (np.isfinite(W).all() and np.isfinite(gamma).all() and np.isfinite(delta).all()):
        raise ModelInputError("model data must be finite")
    if np.any(W < 0.0):
        i, j = np.argwhere(W < 0.0)[0]
        raise NegativeEntryError(f"W[{i}, {j}] = {W[i, j]} is negative")
    if np.any(gamma <= 0.0):
        raise NonPositiveRateError(f"gamma[{int(np.argmin(gamma))}] must be positive")
    if np.any(delta <= 0.0):
        raise NonPositiveRateError(f"delta[{int(np.argmin(delta))}] must be positive")
    if n == 1:
        # self-loops are the only channel a single population has
        if W[0, 0] <= 0.0:
            raise ReducibleError("a single population needs W[0, 0] > 0")
    elif not check_irreducible(W):
        raise ReducibleError("the support digraph of W is not strongly connected")

    M = W / gamma[:, None]
    alpha = gamma / delta
    ybar = 1.0 / (1.0 + alpha)
    for arr in (W, gamma, delta, M, alpha, ybar):
        arr.setflags(write=False)
    return ModelInstance(W=W, gamma=gamma, delta=delta, M=M, alpha=alpha, ybar=ybar, name=name)


def full_from_reduced(state: ReducedState, tol: float = SIMPLEX_TOL) -> FullState:
    """Recover the susceptible fractions as x = 1 - y - z.

    Raises OutOfSimplexError when some component of y or z is below -tol or
    some y_i + z_i exceeds 1 + tol.
    """
    y = np.asarray(state.y, dtype=float)
    z = np.asarray(state.z, dtype=float)
    if y.shape != z.shape:
        raise DimensionMismatchError(f"y and z must match, got {y.shape} and {z.shape}")
    if np.any(y < -tol) or np.any(z < -tol):
        raise OutOfSimplexError("negative infected or recovered fraction")
    if np.any(y + z > 1.0 + tol):
        raise OutOfSimplexError("y + z exceeds 1, no room for susceptibles")
    return FullState(x=1.0 - y - z, y=y, z=z)
