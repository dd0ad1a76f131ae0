"""Pointwise resolvent analysis.

For a square complex matrix A and a point z in the resolvent set this
module computes the resolvent norm, the maximizing (norm-determining)
vector psi, the three directional growth quantities

    alpha = <R psi, R^2 psi>,  beta = ||R^2 psi||^2,  gamma = <R psi, R^3 psi>,

classifies the local growth behavior of ||R(.)|| at z, and picks the
steepest-growth direction angle when one exists.  Inner products are
conjugate-linear in the first slot (``np.vdot`` semantics).  Powers of
the resolvent are applied by repeated shifted solves; the inverse is
never formed.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_CONFIG, RunConfig
from .errors import NearSingularError  # noqa: F401  (re-exported convenience)
from .linalg import (
    ShiftedSolver,
    as_matrix,
    as_vector,
    canonical_phase,
    eigenvalues,
    spectral_distance,
)
from .serialize import complex_pair


class GrowthCase(enum.Enum):
    """Local growth class of the resolvent norm at a point.

    LINEAR: first-order growth in some direction (alpha != 0).
    QUADRATIC: flat to first order but second-order growth (gamma != 0).
    LOCAL_MIN: flat to second order; no growth direction is predicted.
    """

    LINEAR = "linear"
    QUADRATIC = "quadratic"
    LOCAL_MIN = "local_min"


@dataclass(frozen=True)
class ResolventPoint:
    """Full analysis of the resolvent at one point.

    ``theta0`` is the steepest-growth direction angle in (-pi, pi]
    (None for a local minimum): moving to z + t*exp(-1j*theta0) for
    small t > 0 increases the resolvent norm at the classified order.
    ``degenerate`` flags a (nearly) non-unique maximizing vector; the
    reported quantities are then one valid witness among many.
    """

    z: complex
    norm: float
    sigma_min: float
    psi: np.ndarray
    alpha: complex
    beta: float
    gamma: complex
    case: GrowthCase
    theta0: float | None
    spectral_distance: float
    degenerate: bool

    def to_dict(self) -> dict:
        return {
            "z": complex_pair(self.z),
            "norm": self.norm,
            "sigma_min": self.sigma_min,
            "psi": [complex_pair(c) for c in self.psi],
            "alpha": complex_pair(self.alpha),
            "beta": self.beta,
            "gamma": complex_pair(self.gamma),
            "case": self.case.value,
            "theta0": self.theta0,
            "spectral_distance": self.spectral_distance,
            "degenerate": self.degenerate,
        }


def resolvent_norm(a, z: complex, cfg: RunConfig = DEFAULT_CONFIG) -> float:
    """||(A - zI)^-1|| = 1 / sigma_min(A - zI).

    Raises NearSingularError when z is within tol_singular of the
    spectrum.
    """
    return ShiftedSolver(a, z, cfg).norm


def norm_determining_vector(a, z: complex, cfg: RunConfig = DEFAULT_CONFIG) -> np.ndarray:
    """Unit psi with ||R psi|| = ||R||, under the canonical phase convention.

    This is the left singular vector of A - zI for the smallest
    singular value: with M = U S V*, R*R = U S^-2 U*, so the smallest
    singular vector of M maximizes ||R . ||.
    """
    return ShiftedSolver(a, z, cfg).min_left_vector()


def _angle(x: complex) -> float:
    """Argument normalized to (-pi, pi] (np.angle can return -pi)."""
    t = float(np.angle(x))
    if t <= -np.pi:
        t += 2.0 * np.pi
    return t


def compute_quantities(
    a, z: complex, psi, cfg: RunConfig = DEFAULT_CONFIG
) -> tuple[complex, float, complex]:
    """(alpha, beta, gamma) at z for a given unit vector psi.

    Three successive shifted solves produce R psi, R^2 psi, R^3 psi
    from one factorization.
    """
    solver = ShiftedSolver(a, z, cfg)
    psi = as_vector(psi, solver.matrix.shape[0])
    w1 = solver.solve(psi)
    w2 = solver.solve(w1)
    w3 = solver.solve(w2)
    alpha = complex(np.vdot(w1, w2))
    beta = float(np.vdot(w2, w2).real)
    gamma = complex(np.vdot(w1, w3))
    return alpha, beta, gamma


def classify_and_direction(
    alpha: complex, gamma: complex, norm: float, cfg: RunConfig = DEFAULT_CONFIG
) -> tuple[GrowthCase, float | None]:
    """Three-way growth classification with the steepest direction angle.

    alpha and gamma are compared against tol_zero scaled by norm^3 and
    norm^4 respectively (their natural magnitude bounds).
    """
    if abs(alpha) > cfg.tol_zero * norm**3:
        return GrowthCase.LINEAR, _angle(alpha)
    if abs(gamma) > cfg.tol_zero * norm**4:
        return GrowthCase.QUADRATIC, 0.5 * _angle(gamma)
    return GrowthCase.LOCAL_MIN, None


def analyze_point(a, z: complex, cfg: RunConfig = DEFAULT_CONFIG) -> ResolventPoint:
    """Complete resolvent analysis at a point in the resolvent set."""
    a = as_matrix(a)
    solver = ShiftedSolver(a, z, cfg)
    psi = canonical_phase(solver.min_left_vector())
    w1 = solver.solve(psi)
    w2 = solver.solve(w1)
    w3 = solver.solve(w2)
    alpha = complex(np.vdot(w1, w2))
    beta = float(np.vdot(w2, w2).real)
    gamma = complex(np.vdot(w1, w3))
    norm = solver.norm
    case, theta0 = classify_and_direction(alpha, gamma, norm, cfg)
    dist = spectral_distance(eigenvalues(a, cfg), z)
    return ResolventPoint(
        z=complex(z),
        norm=norm,
        sigma_min=solver.sigma_min,
        psi=psi,
        alpha=alpha,
        beta=beta,
        gamma=gamma,
        case=case,
        theta0=theta0,
        spectral_distance=dist,
        degenerate=solver.degenerate(),
    )
