"""Perturbation operators for the inviscid bending-mode eigenproblem.

Unknowns are the radial amplitudes (F, G, H, P) of the axial velocity, radial
velocity, tangential velocity and pressure perturbations of a columnar swirl
U(r), W(r), carried as normal modes in exp(i(k z + m theta - omega t)) with
the radial component pre-multiplied by i so every coefficient below is real.
The system is affine in the axial wavenumber k and is kept in the pencil form

    k * Xi u = Psi u,      u = (F, G, H, P),

with Xi and Psi 4x4 tables of multiplication and d/dr entries.  Row 3 is the
tangential momentum equation scaled by r (regular on the axis), which leaves
the eigenpairs untouched.  The same operator is also exposed split as
k*B_k + omega*B_omega + B_0 for sweep bookkeeping.
"""

from dataclasses import dataclass, replace
from typing import Callable, NamedTuple

import numpy as np

from .basis import BasisContext, make_context
from .baseflow import BaseFlowProfile
from .errors import DomainError, ParameterError, UnsupportedModeError

METHODS = ("projection", "collocation")


@dataclass(frozen=True)
class StabilityProblem:
    """One eigenproblem instance: mode number, frequency, resolution, flow."""

    m: int
    omega: float
    N: int
    flow: BaseFlowProfile
    ctx: BasisContext
    method: str

    def __post_init__(self):
        if self.m not in (-1, 1):
            raise UnsupportedModeError(f"tangential wavenumber must be -1 or +1, got {self.m}")
        if self.method not in METHODS:
            raise ParameterError(f"method must be one of {METHODS}, got {self.method!r}")
        if self.ctx.N != self.N:
            raise ParameterError(f"context N = {self.ctx.N} does not match problem N = {self.N}")
        if self.ctx.r_wall != self.flow.r_wall:
            raise ParameterError(
                f"context r_wall = {self.ctx.r_wall} does not match flow r_wall = {self.flow.r_wall}"
            )

    def with_omega(self, omega: float) -> "StabilityProblem":
        return replace(self, omega=float(omega))


def make_problem(flow: BaseFlowProfile, m: int, omega: float, N: int, method: str,
                 quad_order: int | None = None) -> StabilityProblem:
    """Convenience constructor building the matching basis context."""
    ctx = make_context(N, flow.r_wall, quad_order)
    return StabilityProblem(m=m, omega=float(omega), N=N, flow=flow, ctx=ctx, method=method)


@dataclass(frozen=True)
class PerturbationField:
    """Spectral coefficient vectors of (F, G, H, P), each of length N."""

    f: np.ndarray
    g: np.ndarray
    h: np.ndarray
    p: np.ndarray

    @classmethod
    def from_stacked(cls, s: np.ndarray, N: int) -> "PerturbationField":
        s = np.asarray(s)
        if s.shape != (4 * N,):
            raise ParameterError(f"stacked coefficient vector must have length 4N = {4 * N}")
        return cls(f=s[:N], g=s[N:2 * N], h=s[2 * N:3 * N], p=s[3 * N:])

    def stacked(self) -> np.ndarray:
        return np.concatenate([self.f, self.g, self.h, self.p])


class _Entry(NamedTuple):
    val: Callable | None
    dr: Callable | None


def _e(val=None, dr=None) -> _Entry:
    return _Entry(val, dr)


def _const(c: float) -> Callable:
    return lambda r: np.full_like(np.asarray(r, dtype=float), c)


@dataclass(frozen=True)
class OperatorBlock:
    """4x4 table of (multiplication, d/dr) coefficient pairs over radius."""

    entries: tuple

    def apply(self, vals, ders, r) -> np.ndarray:
        """Apply the block to nodal values/derivatives of (F, G, H, P) at r."""
        r = np.asarray(r, dtype=float)
        out = np.zeros((4,) + r.shape, dtype=np.result_type(*[np.asarray(v).dtype for v in vals], float))
        for i in range(4):
            for c in range(4):
                ent = self.entries[i][c]
                if ent.val is not None:
                    out[i] += ent.val(r) * vals[c]
                if ent.dr is not None:
                    out[i] += ent.dr(r) * ders[c]
        return out

    def nonzero_entries(self):
        return [(i, j) for i in range(4) for j in range(4)
                if self.entries[i][j] != (None, None)]


class PencilBlocks(NamedTuple):
    k: OperatorBlock
    omega: OperatorBlock
    base: OperatorBlock


def _k_block(flow: BaseFlowProfile) -> OperatorBlock:
    z = _e()
    return OperatorBlock(entries=(
        (_e(lambda r: r), z, z, z),
        (z, _e(flow.U), z, z),
        (z, z, _e(lambda r: r * flow.U(r)), z),
        (_e(flow.U), z, z, _e(_const(1.0))),
    ))


def _omega_block() -> OperatorBlock:
    z = _e()
    return OperatorBlock(entries=(
        (z, z, z, z),
        (z, _e(_const(-1.0)), z, z),
        (z, z, _e(lambda r: -r), z),
        (_e(_const(-1.0)), z, z, z),
    ))


def _base_block(flow: BaseFlowProfile, m: int) -> OperatorBlock:
    z = _e()
    return OperatorBlock(entries=(
        (z, _e(_const(1.0), lambda r: r), _e(_const(float(m))), z),
        (z, _e(lambda r: m * flow.w_over_r(r)), _e(lambda r: 2.0 * flow.w_over_r(r)), _e(None, _const(-1.0))),
        (z, _e(lambda r: flow.W(r) + r * flow.dW(r)), _e(lambda r: m * flow.W(r)), _e(_const(float(m)))),
        (_e(lambda r: m * flow.w_over_r(r)), _e(flow.dU), z, z),
    ))


def pencil_blocks(problem: StabilityProblem) -> PencilBlocks:
    """The operator split k*B_k + omega*B_omega + B_0 applied to u equals zero.

    B_k coincides entrywise with Xi and -(omega*B_omega + B_0) with Psi.
    """
    return PencilBlocks(
        k=_k_block(problem.flow),
        omega=_omega_block(),
        base=_base_block(problem.flow, problem.m),
    )


def xi_psi_blocks(problem: StabilityProblem) -> tuple[OperatorBlock, OperatorBlock]:
    """Literal Xi and Psi tables; the single source of truth for assembly."""
    flow, m, omega = problem.flow, problem.m, problem.omega
    z = _e()
    xi = _k_block(flow)
    psi = OperatorBlock(entries=(
        (z, _e(_const(-1.0), lambda r: -r), _e(_const(-float(m))), z),
        (z, _e(lambda r: omega - m * flow.w_over_r(r)), _e(lambda r: -2.0 * flow.w_over_r(r)), _e(None, _const(1.0))),
        (z, _e(lambda r: -flow.W(r) - r * flow.dW(r)), _e(lambda r: r * omega - m * flow.W(r)), _e(_const(-float(m)))),
        (_e(lambda r: omega - m * flow.w_over_r(r)), _e(lambda r: -flow.dU(r)), z, z),
    ))
    return xi, psi


def operator_residual(vals, ders, k: complex, problem: StabilityProblem, r) -> np.ndarray:
    """Rows of k*Xi u - Psi u at radius r (row 3 carries the extra factor r)."""
    xi, psi = xi_psi_blocks(problem)
    return k * xi.apply(vals, ders, r) - psi.apply(vals, ders, r)


def lambda_residual(vals, ders, k: complex, problem: StabilityProblem, r: float):
    """Pointwise residuals of the four governing equations at interior radius r.

    vals and ders are the (F, G, H, P) values and radial derivatives at r.
    The third component is returned in its unscaled momentum form, i.e. the
    r-scaled operator row divided by r, which is why r = 0 is excluded.
    """
    if not 0.0 < r < problem.flow.r_wall:
        raise DomainError(f"pointwise residual needs 0 < r < r_wall, got r = {r}")
    rows = operator_residual(vals, ders, k, problem, np.asarray([r], dtype=float))
    lam = rows[:, 0]
    return lam[0], lam[1], lam[2] / r, lam[3]


def nodal_values(field: PerturbationField, ctx: BasisContext, rows: slice):
    """Synthesize (F, G, H, P) and derivatives on a slice of the grid."""
    eta = ctx.eta[rows]
    D = ctx.D[rows]
    coeffs = (field.f, field.g, field.h, field.p)
    vals = [eta @ c for c in coeffs]
    ders = [D @ c for c in coeffs]
    return vals, ders


def residual_at_interior(field: PerturbationField, k: complex, problem: StabilityProblem) -> np.ndarray:
    """Residual rows of the pencil operator at the N-2 interior grid nodes."""
    interior = slice(1, problem.N - 1)
    vals, ders = nodal_values(field, problem.ctx, interior)
    return operator_residual(vals, ders, k, problem, problem.ctx.nodes[interior])


def residual_norm(field: PerturbationField, k: complex, problem: StabilityProblem) -> float:
    """Scale-invariant l2 residual of the differential system at interior nodes.

    The raw root-sum-square of k*Xi u - Psi u over the interior grid is
    divided by the l2 norm of the stacked coefficient vector, so the spurious
    threshold keeps one meaning across resolutions and normalizations.
    """
    s = field.stacked()
    scale = float(np.linalg.norm(s))
    if scale == 0.0:
        return 0.0
    if not np.isfinite(k):
        return float("inf")
    res = residual_at_interior(field, k, problem)
    return float(np.linalg.norm(res.ravel()) / scale)
