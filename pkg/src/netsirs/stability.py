"""Stability diagnostics: Jacobians, Lyapunov functions, disk certificates.

Two complementary routes certify local stability of the endemic
equilibrium. The direct route computes the spectral abscissa of the
reduced 2n x 2n Jacobian with a dense eigensolver. The structural route
eliminates the recovered block through the Schur complement S(lam) and
checks, sample by sample, that every Gershgorin disk of H(lam) =
S(lam) [y_star] stays strictly inside the open left half-plane for
Re(lam) > -eta, where eta = min_i min((W y_star)_i, delta_i). The two
routes fail independently, so agreement is strong evidence the profile
is a sink with decay rate at least eta.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dynamics import residual
from .errors import (
    EigenFailureError,
    InvalidAtBoundaryError,
    NonPositiveEquilibriumError,
    NotEquilibriumError,
    SingularShiftError,
)
from .model import FullState, ModelInstance
from .spectral import SpectralResult, dominant_eigen

STABLE = "Stable"
UNSTABLE = "Unstable"
INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class GershgorinSample:
    """Disk check for one shift lam.

    min_margin is the distance from the rightmost disk edge to the
    imaginary axis, min_k (-Re H_kk - R_k); all_disks_left means it is
    strictly positive.
    """

    lam: complex
    all_disks_left: bool
    min_margin: float


@dataclass(frozen=True)
class StabilityCertificate:
    """Joint verdict of the eigensolver and the disk certificate."""

    eta: float
    spectral_abscissa: float
    gershgorin_samples: list[GershgorinSample]
    verdict: str


@dataclass(frozen=True)
class LyapunovTrace:
    """Lyapunov value and analytic derivative at one state, with an
    optional numeric derivative for cross-checking."""

    value: float
    derivative: float
    finite_diff: float | None = None


def jacobian_dfe(model: ModelInstance) -> np.ndarray:
    """Reduced Jacobian at the infection-free state, blockwise
    [[W - [gamma], 0], [[gamma], -[delta]]]."""
    n = model.n
    J = np.zeros((2 * n, 2 * n))
    J[:n, :n] = model.W - np.diag(model.gamma)
    J[n:, :n] = np.diag(model.gamma)
    J[n:, n:] = -np.diag(model.delta)
    return J


def jacobian_endemic(
    model: ModelInstance,
    y_star: np.ndarray,
    z_star: np.ndarray,
    tol: float = 1e-12,
) -> np.ndarray:
    """Reduced Jacobian at a stationary point (y_star, z_star).

    Raises NotEquilibriumError when the stationarity residual exceeds
    100 * tol, with tol the tolerance the point was solved to.
    """
    y = np.asarray(y_star, dtype=float)
    z = np.asarray(z_star, dtype=float)
    defect = residual(model, y, z)
    if defect > 100.0 * tol:
        raise NotEquilibriumError(
            f"stationarity residual {defect:.3e} exceeds {100.0 * tol:.3e}"
        )
    n = model.n
    x = 1.0 - y - z
    wy = model.W @ y
    J = np.zeros((2 * n, 2 * n))
    J[:n, :n] = x[:, None] * model.W - np.diag(wy) - np.diag(model.gamma)
    J[:n, n:] = -np.diag(wy)
    J[n:, :n] = np.diag(model.gamma)
    J[n:, n:] = -np.diag(model.delta)
    return J


def eta_bound(model: ModelInstance, y_star: np.ndarray) -> float:
    """Decay-rate bound eta = min_i min((W y_star)_i, delta_i).

    Requires a strictly positive profile; irreducibility then makes every
    (W y_star)_i positive, so eta > 0.
    """
    y = np.asarray(y_star, dtype=float)
    if np.any(y <= 0.0):
        raise NonPositiveEquilibriumError("eta is defined for strictly positive profiles")
    wy = model.W @ y
    return float(min(wy.min(), model.delta.min()))


def schur_matrix(model: ModelInstance, y_star: np.ndarray, lam: complex) -> np.ndarray:
    """Schur complement of the recovered block in the shifted Jacobian,

        S(lam) = [x*] W - [W y*] - [gamma] - lam I
                 - [gamma] ([delta] + lam I)^-1 [W y*],

    whose zeros in det coincide with the Jacobian eigenvalues off the set
    {-delta_i}. Defined whenever no delta_i + lam vanishes; raises
    SingularShiftError at those poles.
    """
    y = np.asarray(y_star, dtype=float)
    lam = complex(lam)
    shifts = model.delta + lam
    if np.any(np.abs(shifts) < 1e-14):
        raise SingularShiftError("lam coincides with -delta_i")
    z = model.alpha * y
    x = 1.0 - y - z
    wy = model.W @ y
    S = (x[:, None] * model.W).astype(complex)
    diag = wy + model.gamma + lam + model.gamma * wy / shifts
    S[np.diag_indices_from(S)] -= diag
    return S


def default_lambda_samples(eta: float, seed: int = 0, random_count: int = 20) -> list[complex]:
    """Shift samples covering the half-plane Re(lam) > -eta.

    The fixed part probes the boundary (-eta + 1e-6), the origin, and
    magnitudes 0.01 through 100 along the real and imaginary axes; the
    random part draws uniformly from [-eta + 1e-6, 10] x [-10i, 10i].
    """
    samples: list[complex] = [complex(-eta + 1e-6), 0j]
    for k in range(-2, 3):
        mag = 10.0 ** k
        samples += [complex(0.0, mag), complex(0.0, -mag), complex(mag)]
    rng = np.random.default_rng(seed)
    re = rng.uniform(-eta + 1e-6, 10.0, random_count)
    im = rng.uniform(-10.0, 10.0, random_count)
    samples += [complex(a, b) for a, b in zip(re, im)]
    return samples


def gershgorin_certificate(
    model: ModelInstance,
    y_star: np.ndarray,
    lambda_samples: list[complex],
) -> list[GershgorinSample]:
    """Disk check of H(lam) = S(lam) [y_star] at each sample.

    Off-diagonal entries H_kj = x*_k W_kj y*_j are real and nonnegative,
    so the row radius is their plain sum R_k. The certificate at lam
    verifies Re(H_kk) < -R_k for every k, which keeps each disk, hence
    the spectrum of H(lam) and the zero set of det S(lam), strictly in
    the open left half-plane. Samples must satisfy Re(lam) > -eta.
    """
    y = np.asarray(y_star, dtype=float)
    eta = eta_bound(model, y)
    out = []
    for lam in lambda_samples:
        lam = complex(lam)
        if lam.real <= -eta:
            raise ValueError(f"sample {lam} lies outside the half-plane Re > {-eta:.6g}")
        H = schur_matrix(model, y, lam) * y[None, :]
        radii = np.abs(H).sum(axis=1) - np.abs(np.diagonal(H))
        margins = -(np.diagonal(H).real + radii)
        min_margin = float(margins.min())
        out.append(GershgorinSample(lam=lam, all_disks_left=min_margin > 0.0,
                                    min_margin=min_margin))
    return out


def spectral_abscissa(A: np.ndarray) -> float:
    """Largest real part over the spectrum, by dense eigensolve."""
    try:
        eigenvalues = np.linalg.eigvals(np.asarray(A))
    except np.linalg.LinAlgError as exc:
        raise EigenFailureError(f"eigensolver failed: {exc}") from exc
    return float(eigenvalues.real.max())


def endemic_certificate(
    model: ModelInstance,
    y_star: np.ndarray,
    z_star: np.ndarray,
    lambda_samples: list[complex] | None = None,
    seed: int = 0,
    tol: float = 1e-12,
) -> StabilityCertificate:
    """Assemble the two-route certificate at an endemic profile.

    Stable requires a negative abscissa and every disk sample passing;
    a positive abscissa alone is definitive for Unstable; anything else
    is Inconclusive.
    """
    y = np.asarray(y_star, dtype=float)
    eta = eta_bound(model, y)
    abscissa = spectral_abscissa(jacobian_endemic(model, y, z_star, tol=tol))
    if lambda_samples is None:
        lambda_samples = default_lambda_samples(eta, seed=seed)
    samples = gershgorin_certificate(model, y, lambda_samples)
    if abscissa < 0.0 and all(s.all_disks_left for s in samples):
        verdict = STABLE
    elif abscissa > 0.0:
        verdict = UNSTABLE
    else:
        verdict = INCONCLUSIVE
    return StabilityCertificate(eta=eta, spectral_abscissa=abscissa,
                                gershgorin_samples=samples, verdict=verdict)


def lyapunov_value(
    model: ModelInstance,
    y: np.ndarray,
    spectral: SpectralResult | None = None,
) -> float:
    """Threshold Lyapunov value V = v_left' [gamma]^-1 y.

    v_left is the positive left eigenvector of M at unit 1-norm; pass a
    precomputed SpectralResult to skip the eigensolve.
    """
    if spectral is None:
        spectral = dominant_eigen(model.M)
    return float((spectral.v_left / model.gamma) @ np.asarray(y, dtype=float))


def lyapunov_derivative(
    model: ModelInstance,
    y: np.ndarray,
    z: np.ndarray,
    spectral: SpectralResult | None = None,
) -> float:
    """Along-trajectory derivative of the threshold Lyapunov value,

        Vdot = (R0 - 1) v_left' y - v_left' [gamma]^-1 [y + z] W y,

    which is nonpositive whenever R0 <= 1.
    """
    if spectral is None:
        spectral = dominant_eigen(model.M)
    y = np.asarray(y, dtype=float)
    z = np.asarray(z, dtype=float)
    drive = (spectral.lam - 1.0) * float(spectral.v_left @ y)
    damping = float((spectral.v_left / model.gamma) @ ((y + z) * (model.W @ y)))
    return drive - damping


def lyapunov_point(
    model: ModelInstance,
    y: np.ndarray,
    z: np.ndarray,
    spectral: SpectralResult | None = None,
    finite_diff: float | None = None,
) -> LyapunovTrace:
    """Bundle value and derivative at one state."""
    if spectral is None:
        spectral = dominant_eigen(model.M)
    return LyapunovTrace(
        value=lyapunov_value(model, y, spectral=spectral),
        derivative=lyapunov_derivative(model, y, z, spectral=spectral),
        finite_diff=finite_diff,
    )


def rank_one_lyapunov(
    a: np.ndarray,
    b: np.ndarray,
    gamma_bar: float,
    delta: np.ndarray,
    state: FullState,
    equilibrium: FullState,
) -> float:
    """Global Lyapunov value for rank-one coupling W = a b' with uniform
    recovery rate gamma_bar.

    The three terms are quadratic wells in x and z plus a logarithmic
    well in the aggregate infection pressure h = b'y:

        V1 = 1/2 sum_i (b_i / x*_i) (x_i - x*_i)^2
        V2 = 1/2 sum_i (delta_i b_i / (gamma_bar x*_i)) (z_i - z*_i)^2
        V3 = h - h* + h* log(h*/h).

    V is zero exactly at the equilibrium and decreasing along
    supercritical trajectories. Raises InvalidAtBoundaryError when
    h <= 0, where the logarithmic term is undefined.
    """
    b = np.asarray(b, dtype=float)
    delta = np.asarray(delta, dtype=float)
    xs, zs = equilibrium.x, equilibrium.z
    h = float(b @ state.y)
    h_star = float(b @ equilibrium.y)
    if h <= 0.0:
        raise InvalidAtBoundaryError("aggregate infection pressure b'y must be positive")
    v1 = 0.5 * float((b / xs) @ (state.x - xs) ** 2)
    v2 = 0.5 * float(((delta * b) / (gamma_bar * xs)) @ (state.z - zs) ** 2)
    v3 = h - h_star + h_star * np.log(h_star / h)
    return v1 + v2 + v3
