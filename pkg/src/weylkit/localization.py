"""Multiscale localization: distance-driven scales, partition functions,
and boundary straightening.

The scale function attached to a domain is

    l(u) = 1/2 (1 + (d(u)^2 + l0^2)^{-1/2})^{-1},   0 < l0 <= 1,

with d(u) the distance to the complement. It satisfies l0/4 <= l <= 1/2,
l(u) >= min(d(u), 1)/4, and l(u) <= l0/sqrt(3) whenever the closed ball
of radius l(u) around u touches the boundary.

Around every center u lives the localization function

    phi_u(x) = phi((x - u)/l(u)) sqrt(J(x, u)) l(u)^{d/2},

where phi is a fixed smooth bump supported in the unit ball with unit L2
norm and J(x, u) is the Jacobian of u -> (x - u)/l(u). By the rank-one
determinant identity J = l^{-d} |1 + (x - u) . grad l / l|, so phi_u
reduces to phi(z) sqrt(W) with W = 1 + (x - u) . grad l / l. The family
satisfies the normalization

    int phi_u(x)^2 l(u)^{-d} du = 1   for every x,

which `normalization_check` verifies by adaptive quadrature over u.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

import numpy as np
from scipy.integrate import quad

from .constants import unit_ball_volume
from .domains import Box, Disk, _as_batch
from .errors import ConfigError, DomainError, InvariantViolation, NumericsError

FD_STEP_FACTOR = 1e-6  # symmetric finite-difference step, as a multiple of l0


# ---------------------------------------------------------------------------
# scale function


@dataclass(frozen=True)
class ScaleFunction:
    """u -> l(u) for a fixed domain and regularization parameter l0."""

    domain: object
    l0: float

    def __post_init__(self):
        if not 0.0 < self.l0 <= 1.0:
            raise ConfigError(f"l0 must lie in (0, 1], got {self.l0}")

    def distance(self, u):
        return self.domain.distance_to_complement(u)

    def scale(self, u):
        dist = np.asarray(self.domain.distance_to_complement(u))
        s = np.hypot(dist, self.l0)
        return s / (2.0 * (s + 1.0))

    def grad_scale(self, u) -> tuple[np.ndarray, np.ndarray]:
        """(grad l, fallback flags); flagged points used finite differences.

        Analytic via the chain rule where the distance is differentiable;
        on its non-differentiability set (e.g. the ridge of a box) a
        symmetric finite difference of l with step FD_STEP_FACTOR * l0 is
        used and the point is flagged for diagnostics.
        """
        u, single = _as_batch(u)
        dist = np.asarray(self.domain.distance_to_complement(u))
        gd, smooth = self.domain.grad_distance(u)
        s = np.hypot(dist, self.l0)
        grad = (dist / (2.0 * s * (s + 1.0) ** 2))[:, None] * gd
        flagged = ~np.asarray(smooth)
        if flagged.any():
            step = FD_STEP_FACTOR * self.l0
            uf = u[flagged]
            fd = np.empty_like(uf)
            for axis in range(u.shape[1]):
                up = uf.copy()
                um = uf.copy()
                up[:, axis] += step
                um[:, axis] -= step
                fd[:, axis] = (self.scale(up) - self.scale(um)) / (2.0 * step)
            grad[flagged] = fd
        if single:
            return grad[0], bool(flagged[0])
        return grad, flagged


def distance_to_complement(domain, u):
    """d(u) = inf{|x - u| : x outside the domain}; 0 outside."""
    return domain.distance_to_complement(u)


def jacobian_factor(sf: ScaleFunction, x, u) -> float:
    """J(x, u) = l^{-d} |1 + (x - u) . grad l(u) / l(u)| on |x - u| < l(u)."""
    x = np.asarray(x, dtype=float)
    u = np.asarray(u, dtype=float)
    l = float(sf.scale(u))
    if np.linalg.norm(x - u) >= l:
        raise DomainError(f"point {x} outside the support ball of radius {l} at {u}")
    grad, _flag = sf.grad_scale(u)
    w = 1.0 + float((x - u) @ grad) / l
    d = len(x)
    return l**-d * abs(w)


# ---------------------------------------------------------------------------
# mother bump and partition functions


@lru_cache(maxsize=None)
def _bump_constant(d: int) -> float:
    # c with int (c exp(-1/(1-|z|^2)))^2 dz = 1 over the unit ball
    val, _ = quad(lambda r: math.exp(-2.0 / (1.0 - r * r)) * r ** (d - 1), 0.0, 1.0)
    return 1.0 / math.sqrt(d * unit_ball_volume(d) * val)


def mother_bump(d: int, z) -> np.ndarray:
    """Smooth bump with support {|z| < 1} and unit L2 norm."""
    z, single = _as_batch(z)
    r2 = np.sum(z * z, axis=1)
    out = np.zeros(len(z))
    inside = r2 < 1.0
    out[inside] = _bump_constant(d) * np.exp(-1.0 / (1.0 - r2[inside]))
    return out[0] if single else out


def _bump_sq(d: int, r2: np.ndarray) -> np.ndarray:
    out = np.zeros_like(r2)
    inside = r2 < 1.0
    out[inside] = _bump_constant(d) ** 2 * np.exp(-2.0 / (1.0 - r2[inside]))
    return out


@dataclass(frozen=True)
class PartitionFunction:
    """phi_u for a fixed center u over a scale function."""

    sf: ScaleFunction
    center: tuple

    @property
    def scale(self) -> float:
        return float(self.sf.scale(np.asarray(self.center, dtype=float)))


def partition_eval(pf: PartitionFunction, x) -> float | np.ndarray:
    """phi_u(x); exactly 0 outside the ball |x - u| < l(u)."""
    u = np.asarray(pf.center, dtype=float)
    d = len(u)
    x, single = _as_batch(x)
    l = pf.scale
    grad, _ = pf.sf.grad_scale(u)
    z = (x - u[None, :]) / l
    r2 = np.sum(z * z, axis=1)
    w = 1.0 + (x - u[None, :]) @ grad / l
    out = np.zeros(len(x))
    inside = r2 < 1.0
    out[inside] = (
        _bump_constant(d) * np.exp(-1.0 / (1.0 - r2[inside])) * np.sqrt(w[inside])
    )
    return float(out[0]) if single else out


def partition_grad(pf: PartitionFunction, x) -> np.ndarray:
    """Gradient of phi_u in x; |grad phi_u| * l(u) stays bounded in u."""
    u = np.asarray(pf.center, dtype=float)
    d = len(u)
    x, single = _as_batch(x)
    l = pf.scale
    grad_l, _ = pf.sf.grad_scale(u)
    z = (x - u[None, :]) / l
    r2 = np.sum(z * z, axis=1)
    w = 1.0 + (x - u[None, :]) @ grad_l / l
    out = np.zeros_like(x)
    inside = r2 < 1.0
    if inside.any():
        zi = z[inside]
        r2i = r2[inside]
        phi = _bump_constant(d) * np.exp(-1.0 / (1.0 - r2i))
        dphi = phi[:, None] * (-2.0 * zi / (1.0 - r2i[:, None]) ** 2)
        wi = w[inside]
        out[inside] = (
            np.sqrt(wi)[:, None] * dphi / l
            + (phi / (2.0 * np.sqrt(wi)))[:, None] * grad_l[None, :] / l
        )
    return out[0] if single else out


# ---------------------------------------------------------------------------
# normalization quadrature over centers


@lru_cache(maxsize=None)
def _tensor_rule(d: int, k: int) -> tuple[np.ndarray, np.ndarray]:
    nodes, weights = np.polynomial.legendre.leggauss(k)
    grids = np.meshgrid(*([nodes] * d), indexing="ij")
    pts = np.stack([g.ravel() for g in grids], axis=1)
    wgrids = np.meshgrid(*([weights] * d), indexing="ij")
    w = np.prod(np.stack([g.ravel() for g in wgrids], axis=1), axis=1)
    return pts, w


def _normalization_integrand(sf: ScaleFunction, x: np.ndarray):
    d = len(x)

    def integrand(u: np.ndarray) -> np.ndarray:
        dist = np.asarray(sf.domain.distance_to_complement(u))
        gd, smooth = sf.domain.grad_distance(u)
        s = np.hypot(dist, sf.l0)
        l = s / (2.0 * (s + 1.0))
        grad_l = (dist / (2.0 * s * (s + 1.0) ** 2))[:, None] * gd
        flagged = ~np.asarray(smooth)
        if flagged.any():
            step = FD_STEP_FACTOR * sf.l0
            uf = u[flagged]
            fd = np.empty_like(uf)
            for axis in range(d):
                up = uf.copy()
                um = uf.copy()
                up[:, axis] += step
                um[:, axis] -= step
                fd[:, axis] = (sf.scale(up) - sf.scale(um)) / (2.0 * step)
            grad_l[flagged] = fd
        diff = x[None, :] - u
        z2 = np.sum(diff * diff, axis=1) / (l * l)
        w = 1.0 + np.sum(diff * grad_l, axis=1) / l
        return _bump_sq(d, z2) * w * l**-d

    return integrand


def _eval_cells(integrand, centers, halfs, rule):
    pts, w = rule
    nodes = centers[:, None, :] + halfs[:, None, None] * pts[None, :, :]
    n, k, d = nodes.shape
    vals = integrand(nodes.reshape(n * k, d)).reshape(n, k)
    return vals @ w * halfs**d


def normalization_check(
    sf: ScaleFunction, x, tol: float = 1e-3, *, max_depth: int = 4
) -> float:
    """int phi_u(x)^2 l(u)^{-d} du, adaptively integrated; must be 1.

    The integrand is supported in {u : |x - u| < l(u)}, a subset of the
    ball of radius 1/2 around x since l <= 1/2. Seeded with a uniform
    cell grid of step l0/8 (the integrand varies on scale l(u) >= l0/4),
    cells are refined where a 3- vs 5-point Gauss comparison flags error.
    Raises NumericsError if the quadrature cannot reach `tol`, and
    InvariantViolation if the converged value is not within `tol` of 1.
    """
    if tol <= 0:
        raise ConfigError(f"tol must be positive, got {tol}")
    x = np.asarray(x, dtype=float)
    d = len(x)
    integrand = _normalization_integrand(sf, x)
    lo_rule = _tensor_rule(d, 3)
    hi_rule = _tensor_rule(d, 5)

    h0 = sf.l0 / 8.0
    n = int(math.ceil(0.5 / h0)) + 1
    offs = (np.arange(-n, n) + 0.5) * h0
    grids = np.meshgrid(*([offs] * d), indexing="ij")
    centers = np.stack([g.ravel() for g in grids], axis=1) + x[None, :]
    halfs = np.full(len(centers), h0 / 2.0)
    keep = np.linalg.norm(centers - x[None, :], axis=1) <= 0.5 + halfs * math.sqrt(d)
    centers, halfs = centers[keep], halfs[keep]

    total = 0.0
    err = 0.0
    budget = tol / 3.0
    for depth in range(max_depth + 1):
        i_hi = _eval_cells(integrand, centers, halfs, hi_rule)
        i_lo = _eval_cells(integrand, centers, halfs, lo_rule)
        diff = np.abs(i_hi - i_lo)
        if depth == max_depth:
            total += float(i_hi.sum())
            err += float(diff.sum())
            break
        thresh = budget / max(len(centers), 1)
        refine = diff > thresh
        total += float(i_hi[~refine].sum())
        err += float(diff[~refine].sum())
        if not refine.any():
            break
        # split flagged cells into 2^d children
        c = centers[refine]
        h = halfs[refine]
        shifts, _ = _tensor_rule(d, 2)  # corners of [-1, 1]^d scaled below
        sign = np.sign(shifts)
        centers = (c[:, None, :] + 0.5 * h[:, None, None] * sign[None, :, :]).reshape(
            -1, d
        )
        halfs = np.repeat(h / 2.0, 2**d)
    if err > tol:
        raise NumericsError(
            f"normalization quadrature error estimate {err:.3g} exceeds tol {tol:g}",
            achieved=err,
            estimate=total,
        )
    if abs(total - 1.0) >= tol:
        raise InvariantViolation(
            f"partition normalization at x={x.tolist()} is {total!r}, off 1 by "
            f"{abs(total - 1.0):.3g} >= tol {tol:g}"
        )
    return total


# ---------------------------------------------------------------------------
# collar integrals of powers of the scale


def scale_integrals(
    sf: ScaleFunction, a: float, *, step_factor: float = 1.0 / 32.0
) -> tuple[float, float]:
    """(int_{U1} l^{-2} du, int_{U2} l^a du) by midpoint quadrature.

    U1 holds the interior centers whose closed ball avoids the boundary,
    U2 the centers whose ball meets it (dist(u, boundary) <= l(u)). The
    first integral scales like 1/l0, the second like l0^{a+1}. Only box
    and disk domains are supported (closed-form boundary distances).
    """
    dom = sf.domain
    if not isinstance(dom, (Box, Disk)):
        raise ConfigError("scale_integrals needs a box or disk domain")
    d = dom.dim
    step = sf.l0 * step_factor
    margin = 2.0 * sf.l0
    if isinstance(dom, Box):
        lo = np.zeros(d) - margin
        hi = np.asarray(dom.sides) + margin
    else:
        lo = np.full(d, -dom.radius - margin)
        hi = np.full(d, dom.radius + margin)
    axes = [np.arange(lo[i] + step / 2.0, hi[i], step) for i in range(d)]
    grids = np.meshgrid(*axes, indexing="ij")
    u = np.stack([g.ravel() for g in grids], axis=1)
    l = np.asarray(sf.scale(u))
    bdist = np.asarray(dom.distance_to_boundary(u))
    in_u2 = bdist <= l
    in_u1 = np.asarray(dom.contains(u)) & ~in_u2
    cell = step**d
    i1 = float(np.sum(l[in_u1] ** -2.0) * cell)
    i2 = float(np.sum(l[in_u2] ** a) * cell)
    return i1, i2


def scale_integral_slopes(domain, a: float, l0_values) -> tuple[float, float]:
    """Log-log slopes of the two collar integrals against l0."""
    l0s = np.asarray(sorted(l0_values, reverse=True), dtype=float)
    i1 = []
    i2 = []
    for l0 in l0s:
        v1, v2 = scale_integrals(ScaleFunction(domain, float(l0)), a)
        i1.append(v1)
        i2.append(v2)
    s1 = float(np.polyfit(np.log(l0s), np.log(i1), 1)[0])
    s2 = float(np.polyfit(np.log(l0s), np.log(i2), 1)[0])
    return s1, s2


# ---------------------------------------------------------------------------
# boundary straightening


@dataclass(frozen=True)
class BoundaryChart:
    """Graph chart of a boundary patch: x_d = f(x') on |x'| <= radius.

    f(0) = 0 and grad f(0) = 0; grad f is Hoelder continuous with
    exponent alpha, so sup |grad f| = O(radius^alpha).
    """

    f: object
    grad_f: object
    radius: float
    alpha: float
    dim: int = 2

    def __post_init__(self):
        if self.radius <= 0 or not 0 < self.alpha <= 1:
            raise ConfigError("chart needs radius > 0 and alpha in (0, 1]")


def _check_chart_points(chart: BoundaryChart, xp: np.ndarray) -> None:
    r = np.linalg.norm(np.atleast_2d(xp), axis=1)
    if np.any(r > chart.radius * (1.0 + 1e-12)):
        raise DomainError(
            f"tangential coordinate outside the chart disk of radius {chart.radius}"
        )


def straighten(chart: BoundaryChart, x) -> np.ndarray:
    """Volume-preserving flattening (x', x_d) -> (x', x_d - f(x'))."""
    x, single = _as_batch(x)
    xp = x[:, :-1]
    _check_chart_points(chart, xp)
    y = x.copy()
    y[:, -1] = x[:, -1] - np.asarray(chart.f(xp))
    return y[0] if single else y


def unstraighten(chart: BoundaryChart, y) -> np.ndarray:
    y, single = _as_batch(y)
    yp = y[:, :-1]
    _check_chart_points(chart, yp)
    x = y.copy()
    x[:, -1] = y[:, -1] + np.asarray(chart.f(yp))
    return x[0] if single else x


def mapped_volume_mc(
    chart: BoundaryChart, lo, hi, n: int = 10**6, seed: int = 0
) -> tuple[float, float]:
    """Monte-Carlo volume of the image of the box [lo, hi], with stderr.

    Since the straightening has unit Jacobian the estimate must agree
    with the box volume within sampling error.
    """
    lo = np.asarray(lo, dtype=float)
    hi = np.asarray(hi, dtype=float)
    d = chart.dim
    rng = np.random.default_rng(seed)
    # bounding box of the image: tangential range unchanged, vertical
    # range shifted by the extremes of f over the tangential box
    probe = rng.uniform(lo[:-1], hi[:-1], size=(4096, d - 1))
    fvals = np.asarray(chart.f(probe))
    pad = 1e-9 + 0.1 * (fvals.max() - fvals.min())
    y_lo = np.concatenate([lo[:-1], [lo[-1] - fvals.max() - pad]])
    y_hi = np.concatenate([hi[:-1], [hi[-1] - fvals.min() + pad]])
    sample = rng.uniform(y_lo, y_hi, size=(n, d))
    back_vertical = sample[:, -1] + np.asarray(chart.f(sample[:, :-1]))
    inside = (back_vertical > lo[-1]) & (back_vertical < hi[-1])
    p = inside.mean()
    bbox = float(np.prod(y_hi - y_lo))
    return bbox * p, bbox * math.sqrt(p * (1.0 - p) / n)


def surface_defect(chart: BoundaryChart, phi2) -> float:
    """int phi2 (sqrt(1 + |grad f|^2) - 1) over the chart disk.

    This is the gap between the surface measure of the graph patch and
    the flat measure of its straightened image; it is nonnegative and
    scales like radius^{d - 1 + 2 alpha} for an alpha-Hoelder gradient.
    """
    r = chart.radius
    if chart.dim == 2:
        def integrand(s):
            g = np.asarray(chart.grad_f(np.array([[s]])))
            return float(phi2(np.array([[s]]))[0] * (math.hypot(1.0, float(g[0, 0])) - 1.0))

        val, _ = quad(integrand, -r, r, points=[0.0], limit=200)
        return float(val)
    pts, w = _tensor_rule(chart.dim - 1, 48)
    nodes = pts * r
    inside = np.linalg.norm(nodes, axis=1) < r
    g = np.zeros(len(nodes))
    vals = np.zeros(len(nodes))
    if inside.any():
        grads = np.asarray(chart.grad_f(nodes[inside]))
        g[inside] = np.sqrt(1.0 + np.sum(grads * grads, axis=1)) - 1.0
        vals[inside] = np.asarray(phi2(nodes[inside])) * g[inside]
    return float(np.sum(vals * w) * r ** (chart.dim - 1))


def holder_chart(c: float, alpha: float, radius: float, dim: int = 2) -> BoundaryChart:
    """Chart family f(x') = c |x'|^{1 + alpha}, exactly C^{1, alpha}."""

    def f(xp):
        xp = np.atleast_2d(xp)
        return c * np.linalg.norm(xp, axis=1) ** (1.0 + alpha)

    def grad_f(xp):
        xp = np.atleast_2d(xp)
        r = np.linalg.norm(xp, axis=1)
        safe = np.where(r > 0, r, 1.0)
        return c * (1.0 + alpha) * safe ** (alpha - 1.0) * np.where(r[:, None] > 0, xp, 0.0)

    return BoundaryChart(f=f, grad_f=grad_f, radius=radius, alpha=alpha, dim=dim)


def bump_weight(radius: float):
    """A fixed smooth profile rescaled to the chart disk, for defect tests."""

    def phi2(xp):
        xp = np.atleast_2d(xp)
        r2 = np.sum(xp * xp, axis=1) / radius**2
        out = np.zeros(len(xp))
        inside = r2 < 1.0
        out[inside] = np.exp(-2.0 / (1.0 - r2[inside]))
        return out

    return phi2


def surface_defect_slope(c: float, alpha: float, radii, dim: int = 2) -> float:
    """Log-log slope of the defect against the chart radius."""
    radii = np.asarray(sorted(radii, reverse=True), dtype=float)
    vals = [
        surface_defect(holder_chart(c, alpha, float(r), dim), bump_weight(float(r)))
        for r in radii
    ]
    return float(np.polyfit(np.log(radii), np.log(vals), 1)[0])


# ---------------------------------------------------------------------------
# diagnostics


def dump_diagnostics(sf: ScaleFunction, points, path) -> None:
    """CSV of (u, l(u), flag); flag=1 where grad l fell back to differences."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    l = np.asarray(sf.scale(pts))
    _, flags = sf.grad_scale(pts)
    path = Path(path)
    d = pts.shape[1]
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow([f"u{i + 1}" for i in range(d)] + ["l", "flag"])
        for row, li, fi in zip(pts, l, flags):
            w.writerow([repr(float(v)) for v in row] + [repr(float(li)), int(fi)])
