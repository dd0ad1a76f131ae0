"""Pseudospectrum grids, component labeling, and certified paths.

The epsilon-pseudospectrum is the sublevel set sigma_min(A - zI) <
epsilon.  This module evaluates sigma_min on rectangular grids, labels
connected components of the sublevel set, and constructs polygonal
paths from a query point inside the pseudospectrum to an eigenvalue
along which the resolvent norm never drops below a certified floor.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .analysis import GrowthCase, analyze_point
from .config import DEFAULT_CONFIG, RunConfig
from .errors import DomainError, SearchError
from .linalg import as_matrix, eigenvalues, sigma_min_batch, spectral_distance
from .serialize import complex_pair, csv_text

# fraction of the spectral distance used as the first line-search rung
_INITIAL_STEP_FRAC = 0.25

# directions probed when escaping a local minimum vertex
_ESCAPE_DIRECTIONS = 16

# relative progress a step must make over the current vertex norm
_PROGRESS_REL = 1e-9


def _norms_at(a, zs) -> np.ndarray:
    """Resolvent norms at a batch of points; exact hits give inf."""
    s = sigma_min_batch(a, zs)
    with np.errstate(divide="ignore"):
        return np.where(s > 0.0, 1.0 / s, np.inf)


@dataclass(frozen=True)
class PseudoGrid:
    """sigma_min(A - zI) sampled at the cell centers of a rectangle.

    values[i, j] belongs to re_i + 1j * im_j where re_i and im_j run
    over the nx respectively ny cell centers.  A zero value marks an
    exact spectrum hit and is legal data, not an error.
    """

    re_min: float
    re_max: float
    im_min: float
    im_max: float
    nx: int
    ny: int
    values: np.ndarray

    @property
    def centers_re(self) -> np.ndarray:
        return self.re_min + (np.arange(self.nx) + 0.5) * (self.re_max - self.re_min) / self.nx

    @property
    def centers_im(self) -> np.ndarray:
        return self.im_min + (np.arange(self.ny) + 0.5) * (self.im_max - self.im_min) / self.ny

    def to_csv(self) -> str:
        re = self.centers_re
        im = self.centers_im
        rows = (
            (re[i], im[j], self.values[i, j])
            for i in range(self.nx)
            for j in range(self.ny)
        )
        return csv_text(("re", "im", "sigma_min"), rows)


def grid_sigma_min(
    a,
    re_min: float,
    re_max: float,
    im_min: float,
    im_max: float,
    nx: int,
    ny: int,
    cfg: RunConfig = DEFAULT_CONFIG,
) -> PseudoGrid:
    """Evaluate sigma_min(A - zI) on an nx x ny cell-center grid."""
    a = as_matrix(a)
    if nx < 2 or ny < 2:
        raise ValueError(f"grid must be at least 2x2, got {nx}x{ny}")
    if not (re_min < re_max and im_min < im_max):
        raise ValueError("grid bounds must satisfy re_min < re_max and im_min < im_max")
    re = re_min + (np.arange(nx) + 0.5) * (re_max - re_min) / nx
    im = im_min + (np.arange(ny) + 0.5) * (im_max - im_min) / ny
    zs = (re[:, None] + 1j * im[None, :]).ravel()
    values = sigma_min_batch(a, zs).reshape(nx, ny)
    return PseudoGrid(
        re_min=float(re_min),
        re_max=float(re_max),
        im_min=float(im_min),
        im_max=float(im_max),
        nx=int(nx),
        ny=int(ny),
        values=values,
    )


@dataclass(frozen=True)
class ComponentLabeling:
    """Connected components of the sublevel set on a grid.

    labels[i, j] == 0 marks cells outside the set; inside cells carry
    labels 1..count assigned in scan order.
    """

    epsilon: float
    labels: np.ndarray
    count: int


def _flood_count(mask: np.ndarray, connect8: bool, labels: np.ndarray | None = None) -> int:
    """Label 4- or 8-connected components of a boolean grid via BFS."""
    nx, ny = mask.shape
    if labels is None:
        labels = np.zeros(mask.shape, dtype=np.int32)
    neighbors = [(1, 0), (-1, 0), (0, 1), (0, -1)]
    if connect8:
        neighbors += [(1, 1), (1, -1), (-1, 1), (-1, -1)]
    count = 0
    for i in range(nx):
        for j in range(ny):
            if mask[i, j] and labels[i, j] == 0:
                count += 1
                labels[i, j] = count
                queue = deque([(i, j)])
                while queue:
                    ci, cj = queue.popleft()
                    for di, dj in neighbors:
                        ni, nj = ci + di, cj + dj
                        if 0 <= ni < nx and 0 <= nj < ny and mask[ni, nj] and labels[ni, nj] == 0:
                            labels[ni, nj] = count
                            queue.append((ni, nj))
    return count


def components(grid: PseudoGrid, epsilon: float) -> ComponentLabeling:
    """4-connected components of the cells with sigma_min < epsilon."""
    if not epsilon > 0.0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    mask = grid.values < epsilon
    labels = np.zeros(mask.shape, dtype=np.int32)
    count = _flood_count(mask, connect8=False, labels=labels)
    return ComponentLabeling(epsilon=float(epsilon), labels=labels, count=count)


def connectivity_order(grid: PseudoGrid, epsilon: float) -> int:
    """Number of components of the complement within the grid box.

    This counts the connectivity order of the sublevel set: one
    unbounded outside region plus one per enclosed gap.  The complement
    is labeled with 8-connectivity, the standard dual of 4-connected
    foreground labeling; without the duality, hair-thin complement
    wedges at disk-intersection cusps pinch off into spurious
    single-cell components.
    """
    if not epsilon > 0.0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    return _flood_count(~(grid.values < epsilon), connect8=True)


def grid_metadata(grid: PseudoGrid, epsilon: float) -> dict:
    """Labeling summary for a grid: the JSON sidecar of the CSV export."""
    labeling = components(grid, epsilon)
    return {
        "bounds": [grid.re_min, grid.re_max, grid.im_min, grid.im_max],
        "nx": grid.nx,
        "ny": grid.ny,
        "epsilon": float(epsilon),
        "components": labeling.count,
        "complement_components": connectivity_order(grid, epsilon),
    }


@dataclass(frozen=True)
class PolyPath:
    """Polygonal path x_1, ..., x_m, lambda inside a pseudospectrum.

    The first vertex is the query point, the last an eigenvalue (also
    kept in ``eigenvalue``).  ``delta`` is the norm slack
    (f(x_1) - 1/epsilon)/2 fixed at construction.
    """

    vertices: tuple[complex, ...]
    eigenvalue: complex
    epsilon: float
    delta: float

    def to_dict(self, certificate: "PathCertificate | None" = None) -> dict:
        data = {
            "vertices": [complex_pair(v) for v in self.vertices],
            "eigenvalue": complex_pair(self.eigenvalue),
            "epsilon": self.epsilon,
            "delta": self.delta,
        }
        if certificate is not None:
            data["certificate"] = certificate.to_dict()
        return data


@dataclass(frozen=True)
class PathCertificate:
    """Dense re-sampling evidence that a path stays inside sigma_epsilon.

    Invalid certificates are data, not exceptions: ``failures`` lists
    which invariant broke.
    """

    samples_per_segment: int
    min_f_on_path: float
    vertex_norms: tuple[float, ...]
    endpoint_distance: float
    valid: bool
    failures: tuple[str, ...]

    def to_dict(self) -> dict:
        return {
            "samples_per_segment": self.samples_per_segment,
            "min_f_on_path": self.min_f_on_path,
            "vertex_norms": list(self.vertex_norms),
            "endpoint_distance": self.endpoint_distance,
            "valid": self.valid,
            "failures": list(self.failures),
        }


def certify_path(a, path: PolyPath, cfg: RunConfig = DEFAULT_CONFIG) -> PathCertificate:
    """Re-sample a path densely and validate its invariants.

    Checks, in order: the resolvent norm along every segment stays
    strictly above 1/epsilon with margin at least half of
    f(x_1) - delta - 1/epsilon; the vertex norms over x_1..x_m strictly
    increase; the final hop is shorter than epsilon/2; the last vertex
    is an eigenvalue under the residual test.
    """
    a = as_matrix(a)
    if not path.vertices:
        raise ValueError("path must have at least one vertex")
    verts = np.asarray(path.vertices, dtype=complex)
    lam = complex(verts[-1])
    xs = verts[:-1]
    inv_eps = 1.0 / path.epsilon

    if verts.shape[0] >= 2:
        ts = np.linspace(0.0, 1.0, cfg.s_cert)
        seg_points = verts[:-1, None] + ts[None, :] * (verts[1:, None] - verts[:-1, None])
        sampled = _norms_at(a, seg_points.ravel())
    else:
        sampled = _norms_at(a, verts)
    min_f = float(np.min(sampled))

    vertex_norms = tuple(float(v) for v in _norms_at(a, xs)) if xs.size else ()
    endpoint_distance = float(abs(xs[-1] - lam)) if xs.size else 0.0
    f_start = vertex_norms[0] if vertex_norms else min_f

    failures = []
    required_margin = 0.5 * (f_start - path.delta - inv_eps)
    if not (min_f > inv_eps and min_f - inv_eps >= required_margin):
        failures.append("min_f_margin")
    if any(b <= a_ for a_, b in zip(vertex_norms, vertex_norms[1:])):
        failures.append("vertex_norms_not_increasing")
    if not endpoint_distance < 0.5 * path.epsilon:
        failures.append("endpoint_too_far")
    eigs = eigenvalues(a, cfg)
    scale = max(1.0, float(np.linalg.norm(a, 2)))
    if spectral_distance(eigs, lam) > cfg.tol_eig * scale:
        failures.append("endpoint_not_eigenvalue")

    return PathCertificate(
        samples_per_segment=cfg.s_cert,
        min_f_on_path=min_f,
        vertex_norms=vertex_norms,
        endpoint_distance=endpoint_distance,
        valid=not failures,
        failures=tuple(failures),
    )


def _line_search(
    a,
    x: complex,
    direction: complex,
    fx: float,
    cap: float,
    floor: float,
    cfg: RunConfig,
) -> tuple[float, float] | None:
    """Largest admissible step along one direction, or None.

    A step t qualifies when the endpoint makes relative progress over
    fx and the norm stays at or above the global floor at s_seg
    equispaced samples of the segment.  Rungs grow geometrically from
    the initial fraction of the cap; when no rung qualifies the base
    rung is halved, up to cfg.max_halvings times.
    """
    eta = _PROGRESS_REL * fx
    ts = np.linspace(0.0, 1.0, cfg.s_seg)
    t0 = _INITIAL_STEP_FRAC * cap
    for _ in range(cfg.max_halvings + 1):
        ladder = []
        t = t0
        while t < cap:
            ladder.append(t)
            t *= 2.0
        ladder.append(cap)
        for t in reversed(ladder):
            endpoint = x + t * direction
            f_end = float(_norms_at(a, [endpoint])[0])
            if not f_end > fx + eta:
                continue
            seg = x + (ts * t) * direction
            if bool(np.all(_norms_at(a, seg) >= floor)):
                return t, f_end
        t0 *= 0.5
    return None


def find_path(
    a, epsilon: float, z: complex, cfg: RunConfig = DEFAULT_CONFIG
) -> tuple[PolyPath, PathCertificate]:
    """Ascend the resolvent norm from z to an eigenvalue.

    From each vertex the analyzed growth direction is followed with a
    geometric line search constrained to keep the norm above
    f(z) - delta; local-minimum vertices try a fan of escape
    directions, best first.  Once the spectrum is closer than
    epsilon/2 the nearest eigenvalue is appended and the finished path
    is certified.

    Raises:
        DomainError: f(z) <= 1/epsilon (query outside the set).
        SearchError: no admissible step exists (reason "step-failure")
            or cfg.max_steps vertices were placed (reason
            "iteration-limit"); the partial path rides along.
    """
    a = as_matrix(a)
    if not epsilon > 0.0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    eigs = eigenvalues(a, cfg)
    inv_eps = 1.0 / epsilon
    z = complex(z)
    fz = float(_norms_at(a, [z])[0])
    if not fz > inv_eps:
        raise DomainError(
            f"query z={z} lies outside the epsilon-pseudospectrum "
            f"(norm {fz:.6g} <= 1/epsilon {inv_eps:.6g})"
        )
    delta = 0.5 * (fz - inv_eps)
    floor = fz - delta

    vertices = [z]
    x = z
    fx = fz
    for _ in range(cfg.max_steps):
        dist = spectral_distance(eigs, x)
        if dist < 0.5 * epsilon:
            # nearest eigenvalue; ties resolve to the first in the
            # deterministic (re, im) eigenvalue order
            lam = complex(eigs[int(np.argmin(np.abs(eigs - x)))])
            vertices.append(lam)
            path = PolyPath(
                vertices=tuple(vertices),
                eigenvalue=lam,
                epsilon=float(epsilon),
                delta=delta,
            )
            return path, certify_path(a, path, cfg)

        point = analyze_point(a, x, cfg)
        if point.case is GrowthCase.LOCAL_MIN:
            angles = -np.pi + 2.0 * np.pi * (np.arange(_ESCAPE_DIRECTIONS) + 1) / _ESCAPE_DIRECTIONS
            candidates = np.exp(1j * angles)
            probe = _norms_at(a, x + (_INITIAL_STEP_FRAC * dist) * candidates)
            directions = [complex(candidates[k]) for k in np.argsort(-probe)]
        else:
            directions = [complex(np.exp(-1j * point.theta0))]

        chosen = None
        for direction in directions:
            found = _line_search(a, x, direction, fx, dist, floor, cfg)
            if found is not None:
                t, f_end = found
                chosen = (x + t * direction, f_end)
                break
        if chosen is None:
            raise SearchError(
                f"no admissible step from {x} after {cfg.max_halvings} halvings",
                tuple(vertices),
                reason="step-failure",
                suspected_local_min=point.case is GrowthCase.LOCAL_MIN,
            )
        x, fx = chosen
        vertices.append(x)

    raise SearchError(
        f"no eigenvalue reached within {cfg.max_steps} steps",
        tuple(vertices),
        reason="iteration-limit",
    )
