"""Parameter sweeps over a uniform scaling of the interaction matrix."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .equilibrium import EndemicEquilibrium, solve_endemic
from .errors import NetsirsError
from .model import ModelInstance, validate_model
from .spectral import reproduction_number
from .stability import jacobian_dfe, jacobian_endemic, spectral_abscissa

THREADS_ENV = "NETSIRS_THREADS"


@dataclass(frozen=True)
class SweepRow:
    """One scale point. endemic_norm is ||y_star||_inf, or 0 when the
    scaled model has no endemic equilibrium; endemic_abscissa is NaN in
    that case. A row whose computation failed is all-NaN except scale."""

    scale: float
    r0: float
    endemic_norm: float
    dfe_abscissa: float
    endemic_abscissa: float


def _worker_count(steps: int) -> int:
    cap = os.environ.get(THREADS_ENV)
    workers = min(steps, os.cpu_count() or 1)
    if cap:
        workers = min(workers, max(1, int(cap)))
    return workers


def run_sweep(
    model: ModelInstance,
    scale_min: float,
    scale_max: float,
    steps: int,
    tol: float = 1e-12,
) -> tuple[list[SweepRow], int]:
    """Rescale W by each s on a uniform grid and re-solve from scratch.

    Returns the rows in grid order plus the number of rows that failed
    and were recorded as NaN. Rows are independent, so they run on a
    thread pool; NETSIRS_THREADS caps its size.
    """
    if steps < 1:
        raise ValueError("steps must be at least 1")
    grid = np.linspace(scale_min, scale_max, steps)

    def one(scale: float) -> SweepRow:
        scaled = validate_model(scale * model.W, model.gamma, model.delta)
        r0, spectral = reproduction_number(scaled)
        dfe = spectral_abscissa(jacobian_dfe(scaled))
        solved = solve_endemic(scaled, tol=tol, spectral=spectral)
        if isinstance(solved, EndemicEquilibrium):
            norm = float(np.max(np.abs(solved.y_star)))
            endemic = spectral_abscissa(
                jacobian_endemic(scaled, solved.y_star, solved.z_star, tol=tol)
            )
        else:
            norm = 0.0
            endemic = float("nan")
        return SweepRow(scale=float(scale), r0=r0, endemic_norm=norm,
                        dfe_abscissa=dfe, endemic_abscissa=endemic)

    def guarded(scale: float) -> tuple[SweepRow, bool]:
        try:
            return one(scale), False
        except NetsirsError:
            nan = float("nan")
            return SweepRow(scale=float(scale), r0=nan, endemic_norm=nan,
                            dfe_abscissa=nan, endemic_abscissa=nan), True

    workers = _worker_count(steps)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(guarded, grid))
    else:
        results = [guarded(s) for s in grid]
    rows = [row for row, _ in results]
    failures = sum(1 for _, failed in results if failed)
    return rows, failures
