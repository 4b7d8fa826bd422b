"""Bounded test domains: volume, surface area, membership, distance queries.

Distance here always means distance to the complement, d(u) = inf{|x-u| :
x not in the domain}; it is 0 everywhere outside. Box, disk, ball and
half-space provide closed-form distances and gradients; polygons are used
by the finite-difference module only (membership + geometry).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ConfigError

# Points are numpy arrays of shape (d,) or batches of shape (n, d).


def _as_batch(u) -> tuple[np.ndarray, bool]:
    u = np.asarray(u, dtype=float)
    if u.ndim == 1:
        return u[None, :], True
    return u, False


@dataclass(frozen=True)
class Box:
    """Axis-aligned box (0, a_1) x ... x (0, a_d)."""

    sides: tuple[float, ...]

    def __post_init__(self):
        if len(self.sides) < 1 or any(a <= 0 for a in self.sides):
            raise ConfigError(f"box sides must be positive, got {self.sides}")
        object.__setattr__(self, "sides", tuple(float(a) for a in self.sides))

    @property
    def dim(self) -> int:
        return len(self.sides)

    @property
    def volume(self) -> float:
        return math.prod(self.sides)

    @property
    def surface(self) -> float:
        v = self.volume
        return 2.0 * sum(v / a for a in self.sides)

    def contains(self, u) -> np.ndarray:
        u, single = _as_batch(u)
        a = np.asarray(self.sides)
        inside = np.all((u > 0) & (u < a), axis=1)
        return inside[0] if single else inside

    def distance_to_complement(self, u) -> np.ndarray:
        u, single = _as_batch(u)
        a = np.asarray(self.sides)
        gaps = np.minimum(u, a - u)  # per-axis distance to the two faces
        dist = np.clip(gaps.min(axis=1), 0.0, None)
        return dist[0] if single else dist

    def distance_to_boundary(self, u) -> np.ndarray:
        u, single = _as_batch(u)
        a = np.asarray(self.sides)
        gaps = np.minimum(u, a - u)
        inside = gaps.min(axis=1)
        # outside: distance to the box
        out = np.maximum(np.maximum(-u, u - a), 0.0)
        outside = np.sqrt(np.sum(out * out, axis=1))
        dist = np.where(inside > 0, inside, outside)
        return dist[0] if single else dist

    def grad_distance(self, u) -> tuple[np.ndarray, np.ndarray]:
        """Gradient of d(u) where defined.

        Returns (grad, smooth) with smooth=False on the non-differentiable
        set (outside closure, face ties, points on the boundary).
        """
        u, single = _as_batch(u)
        a = np.asarray(self.sides)
        gaps = np.stack([u, a - u], axis=2)  # (n, d, 2)
        flat = gaps.reshape(len(u), -1)
        order = np.sort(flat, axis=1)
        tie = (order[:, 1] - order[:, 0]) <= 1e-12 * (1.0 + a.max())
        k = np.argmin(flat, axis=1)
        axis, side = k // 2, k % 2
        grad = np.zeros_like(u)
        rows = np.arange(len(u))
        grad[rows, axis] = np.where(side == 0, 1.0, -1.0)
        inside = np.all((u > 0) & (u < a), axis=1)
        grad[~inside] = 0.0
        smooth = inside & ~tie
        # outside the closure d == 0 identically, which is smooth
        strictly_out = np.any((u < -1e-12) | (u > a + 1e-12), axis=1)
        smooth |= strictly_out
        if single:
            return grad[0], bool(smooth[0])
        return grad, smooth


@dataclass(frozen=True)
class Disk:
    """Disk of radius R centered at the origin (d = 2)."""

    radius: float

    def __post_init__(self):
        if self.radius <= 0:
            raise ConfigError(f"disk radius must be positive, got {self.radius}")

    dim = 2

    @property
    def volume(self) -> float:
        return math.pi * self.radius**2

    @property
    def surface(self) -> float:
        return 2.0 * math.pi * self.radius

    def contains(self, u) -> np.ndarray:
        u, single = _as_batch(u)
        inside = np.sum(u * u, axis=1) < self.radius**2
        return inside[0] if single else inside

    def distance_to_complement(self, u) -> np.ndarray:
        u, single = _as_batch(u)
        r = np.sqrt(np.sum(u * u, axis=1))
        dist = np.clip(self.radius - r, 0.0, None)
        return dist[0] if single else dist

    def distance_to_boundary(self, u) -> np.ndarray:
        u, single = _as_batch(u)
        r = np.sqrt(np.sum(u * u, axis=1))
        dist = np.abs(self.radius - r)
        return dist[0] if single else dist

    def grad_distance(self, u) -> tuple[np.ndarray, np.ndarray]:
        u, single = _as_batch(u)
        r = np.sqrt(np.sum(u * u, axis=1))
        inside = r < self.radius
        safe = np.where(r > 0, r, 1.0)
        grad = np.where(inside[:, None], -u / safe[:, None], 0.0)
        smooth = (r > 1e-12) & (np.abs(r - self.radius) > 1e-12)
        if single:
            return grad[0], bool(smooth[0])
        return grad, smooth


@dataclass(frozen=True)
class Ball:
    """Ball of radius R centered at the origin (d = 3)."""

    radius: float

    def __post_init__(self):
        if self.radius <= 0:
            raise ConfigError(f"ball radius must be positive, got {self.radius}")

    dim = 3

    @property
    def volume(self) -> float:
        return 4.0 / 3.0 * math.pi * self.radius**3

    @property
    def surface(self) -> float:
        return 4.0 * math.pi * self.radius**2

    def contains(self, u) -> np.ndarray:
        u, single = _as_batch(u)
        inside = np.sum(u * u, axis=1) < self.radius**2
        return inside[0] if single else inside

    def distance_to_complement(self, u) -> np.ndarray:
        u, single = _as_batch(u)
        r = np.sqrt(np.sum(u * u, axis=1))
        dist = np.clip(self.radius - r, 0.0, None)
        return dist[0] if single else dist

    def distance_to_boundary(self, u) -> np.ndarray:
        u, single = _as_batch(u)
        r = np.sqrt(np.sum(u * u, axis=1))
        dist = np.abs(self.radius - r)
        return dist[0] if single else dist

    def grad_distance(self, u) -> tuple[np.ndarray, np.ndarray]:
        u, single = _as_batch(u)
        r = np.sqrt(np.sum(u * u, axis=1))
        inside = r < self.radius
        safe = np.where(r > 0, r, 1.0)
        grad = np.where(inside[:, None], -u / safe[:, None], 0.0)
        smooth = (r > 1e-12) & (np.abs(r - self.radius) > 1e-12)
        if single:
            return grad[0], bool(smooth[0])
        return grad, smooth


@dataclass(frozen=True)
class HalfSpace:
    """Half-space {x : x_d > 0}; unbounded, used by the localization tests.

    Volume and surface are undefined (inf); only membership and distance
    queries are meaningful.
    """

    dim: int = 2

    def __post_init__(self):
        if self.dim < 1:
            raise ConfigError("half-space dimension must be >= 1")

    volume = math.inf
    surface = math.inf

    def contains(self, u) -> np.ndarray:
        u, single = _as_batch(u)
        inside = u[:, -1] > 0
        return inside[0] if single else inside

    def distance_to_complement(self, u) -> np.ndarray:
        u, single = _as_batch(u)
        dist = np.clip(u[:, -1], 0.0, None)
        return dist[0] if single else dist

    def distance_to_boundary(self, u) -> np.ndarray:
        u, single = _as_batch(u)
        dist = np.abs(u[:, -1])
        return dist[0] if single else dist

    def grad_distance(self, u) -> tuple[np.ndarray, np.ndarray]:
        u, single = _as_batch(u)
        grad = np.zeros_like(u)
        grad[:, -1] = np.where(u[:, -1] > 0, 1.0, 0.0)
        smooth = np.abs(u[:, -1]) > 1e-12
        if single:
            return grad[0], bool(smooth[0])
        return grad, smooth


class Polygon:
    """Simple 2-D polygon given by its vertex list (no self-intersections)."""

    dim = 2

    def __init__(self, vertices):
        v = np.asarray(vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != 2 or len(v) < 3:
            raise ConfigError("polygon needs an (n, 2) vertex array with n >= 3")
        self.vertices = v
        x, y = v[:, 0], v[:, 1]
        xn, yn = np.roll(x, -1), np.roll(y, -1)
        self._area2 = float(np.sum(x * yn - xn * y))
        if abs(self._area2) < 1e-14:
            raise ConfigError("degenerate polygon (zero area)")

    @property
    def volume(self) -> float:
        return abs(self._area2) / 2.0

    @property
    def surface(self) -> float:
        d = np.roll(self.vertices, -1, axis=0) - self.vertices
        return float(np.sum(np.hypot(d[:, 0], d[:, 1])))

    def _on_edge(self, pts: np.ndarray, tol: float) -> np.ndarray:
        a = self.vertices
        b = np.roll(a, -1, axis=0)
        on = np.zeros(len(pts), dtype=bool)
        for p0, p1 in zip(a, b):
            e = p1 - p0
            L2 = e @ e
            w = pts - p0
            t = np.clip((w @ e) / L2, 0.0, 1.0)
            proj = p0 + t[:, None] * e
            on |= np.hypot(*(pts - proj).T) <= tol
        return on

    def contains(self, u, *, strict: bool = True) -> np.ndarray:
        """Even-odd membership test; points on an edge count as outside."""
        pts, single = _as_batch(u)
        scale = 1.0 + np.abs(self.vertices).max()
        on = self._on_edge(pts, 1e-12 * scale)
        x, y = pts[:, 0], pts[:, 1]
        inside = np.zeros(len(pts), dtype=bool)
        a = self.vertices
        b = np.roll(a, -1, axis=0)
        for (x0, y0), (x1, y1) in zip(a, b):
            crosses = (y0 > y) != (y1 > y)
            with np.errstate(divide="ignore", invalid="ignore"):
                xi = x0 + (y - y0) * (x1 - x0) / (y1 - y0)
            inside ^= crosses & (x < np.where(crosses, xi, np.inf))
        result = inside & ~on if strict else inside | on
        return result[0] if single else result

    def distance_to_boundary(self, u) -> np.ndarray:
        pts, single = _as_batch(u)
        a = self.vertices
        b = np.roll(a, -1, axis=0)
        best = np.full(len(pts), np.inf)
        for p0, p1 in zip(a, b):
            e = p1 - p0
            L2 = e @ e
            w = pts - p0
            t = np.clip((w @ e) / L2, 0.0, 1.0)
            proj = p0 + t[:, None] * e
            best = np.minimum(best, np.hypot(*(pts - proj).T))
        return best[0] if single else best

    def distance_to_complement(self, u) -> np.ndarray:
        pts, single = _as_batch(u)
        dist = np.where(self.contains(pts), self.distance_to_boundary(pts), 0.0)
        return dist[0] if single else dist


def load_polygon(path) -> Polygon:
    """Read a polygon from a JSON file {"vertices": [[x, y], ...]}."""
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read polygon file {path}: {exc}") from exc
    if not isinstance(data, dict) or "vertices" not in data:
        raise ConfigError(f'polygon file {path} must contain {{"vertices": [[x, y], ...]}}')
    return Polygon(data["vertices"])


def square(a: float = 1.0) -> Box:
    return Box((a, a))


def lshape_polygon(a: float = 1.0) -> Polygon:
    """Square of side a minus its upper-right quadrant."""
    h = a / 2.0
    return Polygon([(0, 0), (a, 0), (a, h), (h, h), (h, a), (0, a)])
