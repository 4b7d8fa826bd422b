"""Provably complete Dirichlet spectra below a cutoff.

Boxes use separation of variables (bounded lattice enumeration of
pi^2 sum (m_i/a_i)^2), disks and balls use squares of Bessel zeros.
Eigenvalues are stored as a flat sorted float array with multiplicity.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .bessel import zeros_below
from .constants import constants
from .domains import Ball, Box, Disk
from .errors import ConfigError, ResourceError

DEFAULT_BUDGET = 10**8  # max stored eigenvalues


@dataclass(frozen=True)
class Spectrum:
    """Sorted Dirichlet eigenvalues (with multiplicity) below `cutoff`."""

    eigenvalues: np.ndarray
    cutoff: float
    provenance: str

    def __post_init__(self):
        ev = np.asarray(self.eigenvalues, dtype=float)
        object.__setattr__(self, "eigenvalues", ev)

    def __len__(self) -> int:
        return len(self.eigenvalues)

    def restricted(self, cutoff: float) -> "Spectrum":
        if cutoff > self.cutoff:
            raise ConfigError(
                f"cannot restrict to {cutoff}: spectrum only complete below {self.cutoff}"
            )
        return Spectrum(self.eigenvalues[self.eigenvalues < cutoff], cutoff, self.provenance)


def _check_budget(estimate: float, budget: int, what: str) -> None:
    if estimate > budget:
        raise ResourceError(
            f"{what} would need ~{estimate:.3g} eigenvalues, over the budget {budget:g}"
        )


def box_spectrum(sides, cutoff: float, *, budget: int = DEFAULT_BUDGET) -> Spectrum:
    """All eigenvalues pi^2 sum (m_i/a_i)^2 < cutoff, m_i >= 1.

    The lattice search is bounded (m_i <= a_i sqrt(cutoff)/pi), hence
    provably exhaustive.
    """
    box = Box(tuple(sides))
    if cutoff <= 0:
        raise ConfigError(f"cutoff must be positive, got {cutoff}")
    d = box.dim
    cons = constants(d)
    _check_budget(1.2 * cons.C_d * box.volume * cutoff ** (d / 2) + 100, budget, "box spectrum")
    q = cutoff / math.pi**2  # search sum (m_i/a_i)^2 < q
    partial = np.array([0.0])
    for a in box.sides[:-1]:
        m_max = int(math.floor(a * math.sqrt(q))) + 1
        m = np.arange(1, m_max + 1)
        cand = (partial[:, None] + (m[None, :] / a) ** 2).ravel()
        partial = cand[cand < q]
    a_last = box.sides[-1]
    out = []
    for s in partial:
        m_max = int(math.floor(a_last * math.sqrt(q - s)))
        if m_max >= 1:
            m = np.arange(1, m_max + 1)
            vals = s + (m / a_last) ** 2
            out.append(vals[vals < q])
    if out:
        ev = np.sort(np.concatenate(out)) * math.pi**2
        ev = ev[ev < cutoff]  # guard against roundoff at the edge
    else:
        ev = np.empty(0)
    if ev.size > budget:
        raise ResourceError(f"box spectrum has {ev.size} eigenvalues, over budget {budget}")
    return Spectrum(ev, float(cutoff), "exact-box")


def disk_spectrum(radius: float, cutoff: float, *, budget: int = DEFAULT_BUDGET) -> Spectrum:
    """Disk eigenvalues (j_{nu,k}/R)^2 < cutoff; multiplicity 2 for nu >= 1.

    The order scan stops at the first nu whose first zero exceeds
    R*sqrt(cutoff); since j_{nu,1} > nu and j_{nu,1} increases with nu, no
    order beyond that can contribute.
    """
    disk = Disk(radius)
    if cutoff <= 0:
        raise ConfigError(f"cutoff must be positive, got {cutoff}")
    cons = constants(2)
    _check_budget(1.2 * cons.C_d * disk.volume * cutoff + 100, budget, "disk spectrum")
    x_max = math.sqrt(cutoff) * radius
    chunks = []
    nu = 0
    while nu <= x_max:
        zs = zeros_below(nu, x_max)
        if zs.size == 0:
            break
        lam = (zs / radius) ** 2
        chunks.append(lam if nu == 0 else np.repeat(lam, 2))
        nu += 1
    ev = np.sort(np.concatenate(chunks)) if chunks else np.empty(0)
    ev = ev[ev < cutoff]
    if ev.size > budget:
        raise ResourceError(f"disk spectrum has {ev.size} eigenvalues, over budget {budget}")
    return Spectrum(ev, float(cutoff), "exact-bessel")


def ball_spectrum(radius: float, cutoff: float, *, budget: int = DEFAULT_BUDGET) -> Spectrum:
    """Ball eigenvalues (j_{l+1/2,k}/R)^2 < cutoff, multiplicity 2l+1."""
    ball = Ball(radius)
    if cutoff <= 0:
        raise ConfigError(f"cutoff must be positive, got {cutoff}")
    cons = constants(3)
    _check_budget(1.2 * cons.C_d * ball.volume * cutoff**1.5 + 100, budget, "ball spectrum")
    x_max = math.sqrt(cutoff) * radius
    chunks = []
    ell = 0
    while ell + 0.5 <= x_max:
        zs = zeros_below(ell + 0.5, x_max)
        if zs.size == 0:
            break
        lam = (zs / radius) ** 2
        chunks.append(np.repeat(lam, 2 * ell + 1))
        ell += 1
    ev = np.sort(np.concatenate(chunks)) if chunks else np.empty(0)
    ev = ev[ev < cutoff]
    if ev.size > budget:
        raise ResourceError(f"ball spectrum has {ev.size} eigenvalues, over budget {budget}")
    return Spectrum(ev, float(cutoff), "exact-bessel")


def spectrum_for(domain, cutoff: float, *, budget: int = DEFAULT_BUDGET) -> Spectrum:
    if isinstance(domain, Box):
        return box_spectrum(domain.sides, cutoff, budget=budget)
    if isinstance(domain, Disk):
        return disk_spectrum(domain.radius, cutoff, budget=budget)
    if isinstance(domain, Ball):
        return ball_spectrum(domain.radius, cutoff, budget=budget)
    raise ConfigError(f"no exact spectrum generator for {type(domain).__name__}")


def save_spectrum(spectrum: Spectrum, csv_path, sidecar_path=None) -> None:
    """One eigenvalue per row under header `lambda`; provenance and cutoff
    go to a JSON sidecar (default: same name with .json extension)."""
    csv_path = Path(csv_path)
    with csv_path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["lambda"])
        for lam in spectrum.eigenvalues:
            w.writerow([repr(float(lam))])
    sidecar = Path(sidecar_path) if sidecar_path else csv_path.with_suffix(".json")
    sidecar.write_text(
        json.dumps({"provenance": spectrum.provenance, "cutoff": spectrum.cutoff}, indent=2)
        + "\n"
    )


def load_spectrum(csv_path, sidecar_path=None) -> Spectrum:
    csv_path = Path(csv_path)
    with csv_path.open() as fh:
        rows = list(csv.reader(fh))
    if not rows or rows[0] != ["lambda"]:
        raise ConfigError(f"{csv_path} is not a spectrum CSV (expected header 'lambda')")
    ev = np.array([float(r[0]) for r in rows[1:]])
    sidecar = Path(sidecar_path) if sidecar_path else csv_path.with_suffix(".json")
    meta = json.loads(sidecar.read_text())
    return Spectrum(ev, float(meta["cutoff"]), str(meta["provenance"]))
