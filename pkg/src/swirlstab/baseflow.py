"""Columnar base flows: axial U(r) and tangential W(r) with radial derivatives.

Profiles are immutable value objects wrapping vectorized callables.  The
tangential velocity must vanish on the axis so that W/r stays bounded there;
every consumer of the swirl ratio goes through ``w_over_r`` which supplies the
correct axis limit.
"""

from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.interpolate import CubicSpline

from .errors import IngestionError


@dataclass(frozen=True)
class BaseFlowProfile:
    r_wall: float
    U: Callable
    W: Callable
    dU: Callable
    dW: Callable
    U_wall: float
    W_wall: float
    label: str = "profile"
    _w_over_r: Callable | None = field(default=None, repr=False)

    def w_over_r(self, r):
        """Swirl ratio W(r)/r, finite on the axis for a regular vortex."""
        if self._w_over_r is not None:
            return self._w_over_r(r)
        r = np.asarray(r, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(r > 0, self.W(np.where(r > 0, r, 1.0)) / np.where(r > 0, r, 1.0), 0.0)
        return np.where(r > 0, ratio, self.dW(0.0))


def batchelor(q: float, a: float, r_wall: float, label: str | None = None) -> BaseFlowProfile:
    """Trailing-vortex profile U = a + exp(-r^2), W = q (1 - exp(-r^2)) / r.

    The swirl ratio and dW are written with expm1 so the r -> 0 limits
    (W/r -> q, dW -> q) come out exact.
    """

    def U(r):
        r = np.asarray(r, dtype=float)
        return a + np.exp(-r * r)

    def dU(r):
        r = np.asarray(r, dtype=float)
        return -2.0 * r * np.exp(-r * r)

    def w_over_r(r):
        r = np.asarray(r, dtype=float)
        rr = r * r
        safe = np.where(rr > 0, rr, 1.0)
        return np.where(rr > 0, -q * np.expm1(-rr) / safe, q)

    def W(r):
        r = np.asarray(r, dtype=float)
        return r * w_over_r(r)

    def dW(r):
        r = np.asarray(r, dtype=float)
        rr = r * r
        safe = np.where(rr > 0, rr, 1.0)
        return np.where(rr > 0, q * (2.0 * np.exp(-rr) + np.expm1(-rr) / safe), q)

    return BaseFlowProfile(
        r_wall=float(r_wall),
        U=U,
        W=W,
        dU=dU,
        dW=dW,
        U_wall=float(U(r_wall)),
        W_wall=float(W(r_wall)),
        label=label or f"batchelor(q={q}, a={a})",
        _w_over_r=w_over_r,
    )


def solid_body(U0: float, Omega: float, r_wall: float, label: str | None = None) -> BaseFlowProfile:
    """Uniform axial flow with solid-body rotation W = Omega * r."""
    return BaseFlowProfile(
        r_wall=float(r_wall),
        U=lambda r: np.full_like(np.asarray(r, dtype=float), U0),
        W=lambda r: Omega * np.asarray(r, dtype=float),
        dU=lambda r: np.zeros_like(np.asarray(r, dtype=float)),
        dW=lambda r: np.full_like(np.asarray(r, dtype=float), Omega),
        U_wall=float(U0),
        W_wall=float(Omega * r_wall),
        label=label or f"solid_body(U0={U0}, Omega={Omega})",
        _w_over_r=lambda r: np.full_like(np.asarray(r, dtype=float), Omega),
    )


@dataclass(frozen=True)
class ProfileTable:
    """Sampled (r, U, W) triples with strictly increasing radii from 0 to the wall."""

    r: np.ndarray
    U: np.ndarray
    W: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "r", np.asarray(self.r, dtype=float))
        object.__setattr__(self, "U", np.asarray(self.U, dtype=float))
        object.__setattr__(self, "W", np.asarray(self.W, dtype=float))


def _validate_table(table: ProfileTable):
    problems = []
    n = table.r.size
    if n < 4:
        problems.append(f"need at least 4 samples, got {n}")
    if table.U.size != n or table.W.size != n:
        problems.append("r, U, W columns differ in length")
    if n and table.r[0] != 0.0:
        problems.append("row 1: first radius must be exactly 0")
    if n:
        bad = np.nonzero(np.diff(table.r) <= 0)[0]
        for i in bad:
            problems.append(f"row {i + 2}: radius {table.r[i + 1]} does not increase past {table.r[i]}")
    if n and abs(table.W[0]) > 0:
        problems.append(f"row 1: tangential velocity on the axis must be 0, got {table.W[0]}")
    if problems:
        raise IngestionError("; ".join(problems))


def from_table(table: ProfileTable) -> BaseFlowProfile:
    """Natural cubic-spline interpolant of a sampled profile."""
    _validate_table(table)
    r_wall = float(table.r[-1])
    u_spline = CubicSpline(table.r, table.U, bc_type="natural")
    w_spline = CubicSpline(table.r, table.W, bc_type="natural")
    du_spline = u_spline.derivative()
    dw_spline = w_spline.derivative()
    return BaseFlowProfile(
        r_wall=r_wall,
        U=lambda r: u_spline(r),
        W=lambda r: w_spline(r),
        dU=lambda r: du_spline(r),
        dW=lambda r: dw_spline(r),
        U_wall=float(u_spline(r_wall)),
        W_wall=float(w_spline(r_wall)),
        label="table",
    )


def load_profile_csv(path) -> ProfileTable:
    """Read a profile file: header 'r,U,W', one ascending-radius sample per line."""
    rows = []
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise IngestionError(f"{path}: empty profile file")
    header = [c.strip() for c in lines[0].split(",")]
    if header != ["r", "U", "W"]:
        raise IngestionError(f"{path}: expected header 'r,U,W', got {lines[0]!r}")
    for idx, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split(",")
        if len(parts) != 3:
            raise IngestionError(f"{path}: row {idx}: expected 3 comma-separated values")
        try:
            rows.append([float(p) for p in parts])
        except ValueError:
            raise IngestionError(f"{path}: row {idx}: non-numeric entry in {line!r}") from None
    data = np.asarray(rows, dtype=float)
    if data.size == 0:
        raise IngestionError(f"{path}: no data rows")
    return ProfileTable(r=data[:, 0], U=data[:, 1], W=data[:, 2])
