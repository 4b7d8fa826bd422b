"""Finite-difference Dirichlet spectra on 2-D polygons.

5-point Laplacian on the lattice step*Z^2, keeping only nodes strictly
inside the polygon (nodes on the boundary are Dirichlet-eliminated).
Eigenvalue counting below a threshold uses the inertia of A - sigma*I
from a banded symmetric-indefinite factorization (Sylvester's law);
eigenvalue extraction slices the interval with those counts and solves
each slice by shift-invert Lanczos.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy import sparse
from scipy.sparse.linalg import eigsh

from .domains import Polygon
from .errors import ConfigError, NumericsError, ResourceError
from .spectra import Spectrum

log = logging.getLogger(__name__)

PIVOT_TOL = 1e-12  # factorization breakdown when |pivot| < PIVOT_TOL * ||A||
SHIFT_STEP = 1e-10  # threshold perturbation, as a multiple of ||A||
MAX_SLICE = 64  # eigenvalues per spectrum slice
DEFAULT_EIG_BUDGET = 20000
_DENSE_CUTOVER = 220  # below this dimension just use a dense solver
# irrational-ish split ratio keeps slice boundaries off the exact
# arithmetic coincidences common in structured grid spectra
_SPLIT_RATIO = 0.5000018437180104


@dataclass(frozen=True)
class GridOperator:
    """Sparse 5-point operator for a polygon at a fixed grid step."""

    polygon: Polygon
    step: float
    nodes: np.ndarray  # (n, 2) lattice indices, lexicographic in (y, x)
    matrix: sparse.csr_matrix

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def norm_estimate(self) -> float:
        return 8.0 / self.step**2  # Gershgorin bound for the 5-point stencil


def assemble(polygon: Polygon, step: float) -> GridOperator:
    """Build the operator; deterministic node order, Dirichlet truncation."""
    if step <= 0:
        raise ConfigError(f"grid step must be positive, got {step}")
    v = polygon.vertices
    i_lo = int(math.floor(v[:, 0].min() / step)) - 1
    i_hi = int(math.ceil(v[:, 0].max() / step)) + 1
    j_lo = int(math.floor(v[:, 1].min() / step)) - 1
    j_hi = int(math.ceil(v[:, 1].max() / step)) + 1
    ii, jj = np.meshgrid(
        np.arange(i_lo, i_hi + 1), np.arange(j_lo, j_hi + 1), indexing="ij"
    )
    lattice = np.stack([ii.ravel(), jj.ravel()], axis=1)
    pts = lattice * step
    inside = polygon.contains(pts, strict=True)
    nodes = lattice[inside]
    if len(nodes) == 0:
        raise ConfigError(f"step {step} leaves no interior nodes in the polygon")
    order = np.lexsort((nodes[:, 0], nodes[:, 1]))  # by y, then x
    nodes = nodes[order]
    index = {(int(i), int(j)): k for k, (i, j) in enumerate(nodes)}
    inv = 1.0 / step**2
    rows = []
    cols = []
    vals = []
    for k, (i, j) in enumerate(nodes):
        rows.append(k)
        cols.append(k)
        vals.append(4.0 * inv)
        for di, dj in ((1, 0), (-1, 0), (0, 1), (0, -1)):
            q = index.get((int(i) + di, int(j) + dj))
            if q is not None:
                rows.append(k)
                cols.append(q)
                vals.append(-inv)
    mat = sparse.coo_matrix((vals, (rows, cols)), shape=(len(nodes), len(nodes))).tocsr()
    return GridOperator(polygon=polygon, step=float(step), nodes=nodes, matrix=mat)


def _to_band(matrix: sparse.csr_matrix) -> np.ndarray:
    """Lower band storage: band[k, j] = A[j + k, j]."""
    coo = matrix.tocoo()
    lower = coo.row >= coo.col
    r, c, v = coo.row[lower], coo.col[lower], coo.data[lower]
    bw = int((r - c).max()) if len(r) else 0
    band = np.zeros((bw + 1, matrix.shape[0]))
    band[r - c, c] = v
    return band


def _band_inertia(band: np.ndarray, shift: float, norm: float) -> int:
    """Negative-pivot count of the LDL^T factorization of A - shift*I.

    No pivoting; a breakdown (tiny pivot) raises NumericsError so the
    caller can retry with a perturbed shift.
    """
    band = band.copy()
    band[0] -= shift
    bw, n = band.shape[0] - 1, band.shape[1]
    tol = PIVOT_TOL * norm
    neg = 0
    for j in range(n):
        dj = band[0, j]
        if abs(dj) < tol:
            raise NumericsError(f"pivot {dj!r} below tolerance at column {j}")
        if dj < 0:
            neg += 1
        m = min(bw, n - 1 - j)
        if m == 0:
            continue
        w = band[1 : m + 1, j].copy()
        scaled = w / dj
        # trailing rank-one update written per band diagonal
        for k in range(m):
            band[k, j + 1 : j + 1 + m - k] -= w[k:m] * scaled[: m - k]
    return neg


def count_below(op: GridOperator, threshold: float) -> int:
    """Matrix eigenvalues strictly below `threshold` via inertia.

    If the factorization breaks down (threshold essentially equal to an
    eigenvalue) the threshold is nudged by SHIFT_STEP * ||A|| and the
    shift actually used is reported through the module logger.
    """
    band = _to_band(op.matrix)
    norm = op.norm_estimate
    shift = float(threshold)
    for attempt in range(60):
        try:
            return _band_inertia(band, shift, norm)
        except NumericsError:
            shift = threshold + (attempt + 1) * SHIFT_STEP * norm
            log.warning(
                "factorization breakdown at threshold %r; retrying with shift %r",
                threshold,
                shift,
            )
    raise NumericsError(
        f"factorization kept breaking down near threshold {threshold}"
    )


def eigenvalues_below(
    op: GridOperator, threshold: float, *, budget: int = DEFAULT_EIG_BUDGET
) -> np.ndarray:
    """All matrix eigenvalues below `threshold`, sorted, ~1e-10 relative.

    Spectrum slicing: bisection with inertia counts until every slice
    holds at most MAX_SLICE eigenvalues, then shift-invert Lanczos at the
    slice center with a spanning completeness certificate per slice. The
    total is checked against count_below.
    """
    n_total = count_below(op, threshold)
    if n_total > budget:
        raise ResourceError(
            f"{n_total} eigenvalues below {threshold}, over the budget {budget}"
        )
    if n_total == 0:
        return np.empty(0)
    n = op.dim
    if n <= _DENSE_CUTOVER:
        ev = np.linalg.eigvalsh(op.matrix.toarray())
        return ev[ev < threshold]

    out = []
    stack = [(0.0, float(threshold), 0, n_total)]
    while stack:
        lo, hi, c_lo, c_hi = stack.pop()
        k = c_hi - c_lo
        if k == 0:
            continue
        if k > MAX_SLICE:
            mid = lo + _SPLIT_RATIO * (hi - lo)
            c_mid = count_below(op, mid)
            stack.append((lo, mid, c_lo, c_mid))
            stack.append((mid, hi, c_mid, c_hi))
            continue
        out.append(_solve_slice(op, lo, hi, k))
    ev = np.sort(np.concatenate(out)) if out else np.empty(0)
    if len(ev) != n_total:
        raise NumericsError(
            f"slice extraction found {len(ev)} eigenvalues, inertia says {n_total}"
        )
    return ev


def _solve_slice(op: GridOperator, lo: float, hi: float, k: int) -> np.ndarray:
    """Eigenvalues in [lo, hi) by shift-invert Lanczos at the slice center.

    Completeness certificate: shift-invert returns the eigenvalues closest
    to the center, so once the returned set reaches beyond both slice ends
    every eigenvalue inside the slice is present. The vector count grows
    until that happens (the totals are still checked against the inertia
    count by the caller).
    """
    center = 0.5 * (lo + hi)
    ask = min(k + 8, op.dim - 2)
    # fixed start vector keeps reruns byte-identical (ARPACK default is random)
    v0 = np.random.default_rng(1234).standard_normal(op.dim)
    for _attempt in range(8):
        ev = eigsh(
            op.matrix,
            k=ask,
            sigma=center,
            which="LM",
            return_eigenvectors=False,
            tol=0,
            v0=v0,
        )
        spans_low = lo <= 0.0 or ev.min() < lo
        spans_high = ev.max() > hi
        if (spans_low and spans_high) or ask >= op.dim - 2:
            return np.sort(ev[(ev >= lo) & (ev < hi)])
        ask = min(ask + max(8, ask // 2), op.dim - 2)
    raise NumericsError(f"could not certify completeness of slice [{lo}, {hi})")


def fd_spectrum(
    op: GridOperator, threshold: float, *, budget: int = DEFAULT_EIG_BUDGET
) -> Spectrum:
    """Spectrum object with finite-difference provenance."""
    ev = eigenvalues_below(op, threshold, budget=budget)
    return Spectrum(ev, float(threshold), f"finite-difference({op.step!r})")
