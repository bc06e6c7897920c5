"""Collocation assembly of the 4N x 4N generalized eigenpencil.

The four governing equations are forced to vanish at the N-2 interior grid
nodes, working directly on spectral coefficients through the evaluation and
differentiation tables.  Seven boundary rows (three axis conditions, four
wall conditions) plus one closure row complete the square pencil

    k * M_k sbar = M sbar,   sbar = (fbar, gbar, hbar, pbar).

Sign convention: for interior and k-carrying rows, k*M_k - M applied to sbar
reproduces the operator residual; k-free boundary rows store their constraint
coefficients directly in M (with a zero M_k row), which only flips the sign
of the corresponding homogeneous equation.
"""

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .basis import deriv_expansion, eval_matrix, deriv_matrix
from .errors import ParameterError, UnsupportedModeError
from .operators import StabilityProblem

CLOSURES = ("radial-tau", "wall-continuity")


@dataclass(frozen=True)
class Pencil:
    """Dense complex pencil (M_k, M) with one provenance tag per row.

    Unknown ordering is blockwise: f_1..f_N, g_1..g_N, h_1..h_N, p_1..p_N.
    """

    M_k: np.ndarray
    M: np.ndarray
    row_tags: tuple

    @property
    def size(self) -> int:
        return self.M.shape[0]


class BoundaryRow(NamedTuple):
    tag: str
    mk: np.ndarray
    m: np.ndarray


def _blocks(N: int):
    return {name: slice(i * N, (i + 1) * N) for i, name in enumerate("fghp")}


def boundary_rows(problem: StabilityProblem) -> list[BoundaryRow]:
    """The seven coefficient-space boundary rows shared by both assemblies.

    Wall rows are the radial, tangential and axial momentum balances at
    r_wall with the no-penetration condition already inserted, plus G = 0
    itself; axis rows are the bending-mode regularity conditions
    G + sgn(m) H = 0 and F = P = 0, expressed through the endpoint values
    T*_j(r_wall) = 1 and T*_j(0) = (-1)^(j+1).
    """
    if problem.m not in (-1, 1):
        raise UnsupportedModeError(f"boundary rows are defined for m = -1, +1 only, got {problem.m}")
    N = problem.N
    ctx = problem.ctx
    flow = problem.flow
    omega = problem.omega
    sgn = float(problem.m)
    rw = flow.r_wall
    blocks = _blocks(N)
    ones = np.ones(N)
    alt = (-1.0) ** np.arange(N)  # T*_j at the axis
    # derivative values at the wall from the shared expansion routine
    dwall = np.array([deriv_expansion(j, rw).sum() for j in range(1, N + 1)])

    def row():
        return np.zeros(4 * N), np.zeros(4 * N)

    out = []

    mk, m_ = row()  # wall pressure balance: 2 W_wall H / r_wall - P' = 0
    m_[blocks["h"]] = 2.0 * flow.W_wall / rw * ones
    m_[blocks["p"]] = -dwall
    out.append(BoundaryRow("bc-wall-pressure", mk, m_))

    mk, m_ = row()  # wall tangential momentum with G = 0 inserted
    mk[blocks["h"]] = flow.U_wall * rw * ones
    m_[blocks["h"]] = -(sgn * flow.W_wall - omega * rw) * ones
    m_[blocks["p"]] = -sgn * ones
    out.append(BoundaryRow("bc-wall-tangential", mk, m_))

    mk, m_ = row()  # wall axial momentum with G = 0 inserted
    mk[blocks["f"]] = flow.U_wall * rw * ones
    mk[blocks["p"]] = rw * ones
    m_[blocks["f"]] = -(sgn * flow.W_wall - omega * rw) * ones
    out.append(BoundaryRow("bc-wall-axial", mk, m_))

    mk, m_ = row()  # axis bending regularity: G + sgn(m) H = 0
    m_[blocks["g"]] = alt
    m_[blocks["h"]] = sgn * alt
    out.append(BoundaryRow("bc-axis-bending", mk, m_))

    mk, m_ = row()  # wall no-penetration: G = 0
    m_[blocks["g"]] = ones
    out.append(BoundaryRow("bc-wall-radial", mk, m_))

    mk, m_ = row()  # axis: F = 0
    m_[blocks["f"]] = alt
    out.append(BoundaryRow("bc-axis-axial", mk, m_))

    mk, m_ = row()  # axis: P = 0
    m_[blocks["p"]] = alt
    out.append(BoundaryRow("bc-axis-pressure", mk, m_))

    assert len(out) == 7
    return out


def _radial_tau_closure(problem: StabilityProblem):
    """Projection of the radial momentum equation onto T*_{N-1}.

    A plain collocation count leaves the system one equation short of 4N;
    every other candidate (any momentum equation re-collocated at a boundary
    node) is a linear combination of rows already present, so this quadrature
    row is the closure for both discretizations.
    """
    N, ctx, flow = problem.N, problem.ctx, problem.flow
    blocks = _blocks(N)
    rq, wq = ctx.quad_r, ctx.quad_w
    T = eval_matrix(rq, N, ctx.r_wall)
    Td = deriv_matrix(rq, N, ctx.r_wall)
    test = wq * T[:, N - 2]  # T*_{N-1} samples times the quadrature weight
    wor = flow.w_over_r(rq)
    mk = np.zeros(4 * N)
    m_ = np.zeros(4 * N)
    mk[blocks["g"]] = (test * flow.U(rq)) @ T
    m_[blocks["g"]] = (test * (problem.omega - problem.m * wor)) @ T
    m_[blocks["h"]] = -(test * 2.0 * wor) @ T
    m_[blocks["p"]] = test @ Td
    return BoundaryRow("closure-radial-tau", mk, m_)


def _wall_continuity_closure(problem: StabilityProblem):
    """Continuity equation collocated at the wall node (alternative closure)."""
    N, ctx = problem.N, problem.ctx
    blocks = _blocks(N)
    rw = ctx.r_wall
    ones = np.ones(N)
    dwall = ctx.D[-1]
    mk = np.zeros(4 * N)
    m_ = np.zeros(4 * N)
    mk[blocks["f"]] = rw * ones
    m_[blocks["g"]] = -(ones + rw * dwall)
    m_[blocks["h"]] = -float(problem.m) * ones
    return BoundaryRow("closure-wall-continuity", mk, m_)


def closure_row(problem: StabilityProblem, closure: str = "radial-tau") -> BoundaryRow:
    if closure == "radial-tau":
        return _radial_tau_closure(problem)
    if closure == "wall-continuity":
        return _wall_continuity_closure(problem)
    raise ParameterError(f"closure must be one of {CLOSURES}, got {closure!r}")


def assemble_collocation(problem: StabilityProblem, closure: str = "radial-tau") -> Pencil:
    """Build the collocation pencil: 4(N-2) interior rows, 7 BC rows, 1 closure."""
    if problem.method != "collocation":
        raise ParameterError(f"problem.method must be 'collocation', got {problem.method!r}")
    N = problem.N
    if N < 5:
        raise ParameterError(f"collocation needs N >= 5 so interior rows remain, got N = {N}")
    ctx, flow, m, omega = problem.ctx, problem.flow, problem.m, problem.omega
    ri = ctx.nodes[1:-1]
    eta = ctx.eta[1:-1, :]
    D = ctx.D[1:-1, :]
    Ui = flow.U(ri)[:, None]
    Wi = flow.W(ri)[:, None]
    WoRi = flow.w_over_r(ri)[:, None]
    dUi = flow.dU(ri)[:, None]
    dWi = flow.dW(ri)[:, None]
    rc = ri[:, None]

    n_int = N - 2
    M_k = np.zeros((4 * N, 4 * N), dtype=complex)
    M = np.zeros((4 * N, 4 * N), dtype=complex)
    tags = []
    blocks = _blocks(N)

    def put(eq, name, mk_part, m_part):
        rows = slice(eq * n_int, (eq + 1) * n_int)
        if mk_part is not None:
            M_k[rows, blocks[name]] += mk_part
        if m_part is not None:
            M[rows, blocks[name]] += m_part

    # continuity: k r F + (G + r G') + m H = 0
    put(0, "f", rc * eta, None)
    put(0, "g", None, -(eta + rc * D))
    put(0, "h", None, -m * eta)
    # radial momentum: (k U - omega + m W/r) G + 2 (W/r) H - P' = 0
    put(1, "g", Ui * eta, (omega - m * WoRi) * eta)
    put(1, "h", None, -2.0 * WoRi * eta)
    put(1, "p", None, D)
    # tangential momentum, r-scaled: (W + r W') G + (k r U - omega r + m W) H + m P = 0
    put(2, "g", None, -(Wi + rc * dWi) * eta)
    put(2, "h", rc * Ui * eta, (omega * rc - m * Wi) * eta)
    put(2, "p", None, -m * eta)
    # axial momentum: (k U - omega + m W/r) F + U' G + k P = 0
    put(3, "f", Ui * eta, (omega - m * WoRi) * eta)
    put(3, "g", None, -dUi * eta)
    put(3, "p", eta, None)

    for eq, name in enumerate(("continuity", "radial", "tangential", "axial")):
        tags.extend(f"{name}@node{i}" for i in range(2, N))

    extra = boundary_rows(problem) + [closure_row(problem, closure)]
    for offset, browe in enumerate(extra):
        idx = 4 * n_int + offset
        M_k[idx] = browe.mk
        M[idx] = browe.m
        tags.append(browe.tag)

    return Pencil(M_k=M_k, M=M, row_tags=tuple(tags))
