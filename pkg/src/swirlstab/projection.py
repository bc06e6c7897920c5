"""Weighted-projection (tau) assembly of the 4N x 4N eigenpencil.

Each governing equation is projected onto the test functions T*_1..T*_{N-2}
through the weighted inner product, the seven boundary rows are appended as
side constraints, and the projection of the radial momentum equation onto
T*_{N-1} closes the square system.

The authoritative construction projects the operator numerically with
Gauss-Chebyshev quadrature (``assemble_projection``).  A second construction
(``assemble_projection_expanded``) builds the same rows from the orthogonality
relations, expanding every radial derivative of the basis into lower-index
polynomials with explicit odd/even index sums; it exists as a transcription
cross-check and the two must agree to quadrature accuracy.
"""

from dataclasses import dataclass

import numpy as np

from .basis import eval_matrix, deriv_matrix, quadrature_rule
from .collocation import BoundaryRow, Pencil, boundary_rows, _blocks
from .errors import ParameterError, SingularTensorError
from .operators import StabilityProblem

_MUL_KEYS = ("one", "r", "U", "rU", "dU", "W_over_r", "W", "r_dW", "dW")
# spec-style taxonomy (field, power of r, derivative order) -> table key
_TAXONOMY = {
    (None, 1, 0): "r",
    (None, 0, 0): "one",
    ("U", 0, 0): "U",
    ("U", 1, 0): "rU",
    ("U", 0, 1): "dU",
    ("W", -1, 0): "W_over_r",
    ("W", 0, 0): "W",
    ("W", 1, 1): "r_dW",
    ("W", 0, 1): "dW",
}


@dataclass(frozen=True)
class InnerProductTensors:
    """Weighted inner-product tables (coef * T*_j, T*_i)_w, full N x N.

    ``mul`` holds multiplication coefficients, ``dmul`` the same with the
    radial derivative applied to the trial function.  A is the analytic
    diagonal of basis norms: A_1 = r_wall pi/2, A_n = r_wall pi/4 otherwise.
    """

    N: int
    quad_order: int
    A: np.ndarray
    mul: dict
    dmul: dict

    def table(self, field, kappa: int, d: int) -> np.ndarray:
        try:
            return self.mul[_TAXONOMY[(field, kappa, d)]]
        except KeyError:
            raise ParameterError(f"no tensor table for (field={field}, kappa={kappa}, d={d})") from None


def norm_diagonal(N: int, r_wall: float) -> np.ndarray:
    A = np.full(N, r_wall * np.pi / 4.0)
    A[0] = r_wall * np.pi / 2.0
    return A


def build_tensors(problem: StabilityProblem) -> InnerProductTensors:
    """Quadrature tables for every coefficient appearing in the projected rows.

    Uses at least 2N + 8 quadrature points (margin for the 1/r-weighted swirl
    and profile curvature beyond the polynomial-exact minimum).
    """
    flow, N = problem.flow, problem.N
    if abs(float(np.asarray(flow.W(0.0)))) > 1e-12 * max(1.0, abs(flow.W_wall)):
        raise SingularTensorError(
            f"profile {flow.label!r} has W(0) = {float(np.asarray(flow.W(0.0)))}; "
            "the 1/r-weighted tables diverge unless the swirl vanishes on the axis"
        )
    Q = max(problem.ctx.quad_order, 2 * N + 8)
    rq, wq = quadrature_rule(Q, flow.r_wall)
    T = eval_matrix(rq, N, flow.r_wall)
    Td = deriv_matrix(rq, N, flow.r_wall)
    coefs = {
        "one": np.ones_like(rq),
        "r": rq,
        "U": flow.U(rq),
        "rU": rq * flow.U(rq),
        "dU": flow.dU(rq),
        "W_over_r": flow.w_over_r(rq),
        "W": flow.W(rq),
        "r_dW": rq * flow.dW(rq),
        "dW": flow.dW(rq),
    }
    mul = {k: np.einsum("q,qi,qj->ij", wq * c, T, T) for k, c in coefs.items()}
    dmul = {k: np.einsum("q,qi,qj->ij", wq * coefs[k], T, Td) for k in ("one", "r")}
    return InnerProductTensors(N=N, quad_order=Q, A=norm_diagonal(N, flow.r_wall), mul=mul, dmul=dmul)


def _projected_interior_and_closure(problem: StabilityProblem, t: InnerProductTensors):
    """Row blocks from direct numerical projection of the pencil operator."""
    N, m, omega = problem.N, problem.m, problem.omega
    sl = slice(0, N - 2)
    zero = np.zeros((N - 2, N))

    def eq_rows(test):
        one = t.mul["one"][test]
        r_ = t.mul["r"][test]
        U = t.mul["U"][test]
        rU = t.mul["rU"][test]
        dU = t.mul["dU"][test]
        wor = t.mul["W_over_r"][test]
        W = t.mul["W"][test]
        rdW = t.mul["r_dW"][test]
        d_one = t.dmul["one"][test]
        d_r = t.dmul["r"][test]
        rows = {}
        rows["continuity"] = (
            {"f": r_},
            {"g": -(one + d_r), "h": -m * one},
        )
        rows["radial"] = (
            {"g": U},
            {"g": omega * one - m * wor, "h": -2.0 * wor, "p": d_one},
        )
        rows["tangential"] = (
            {"h": rU},
            {"g": -(W + rdW), "h": omega * r_ - m * W, "p": -m * one},
        )
        rows["axial"] = (
            {"f": U, "p": one},
            {"f": omega * one - m * wor, "g": -dU},
        )
        return rows

    bulk = eq_rows(sl)
    closure = eq_rows(slice(N - 2, N - 1))["radial"]
    return bulk, closure


def _stack_pencil(problem: StabilityProblem, bulk, closure_parts, closure_tag: str) -> Pencil:
    N = problem.N
    n_int = N - 2
    blocks = _blocks(N)
    M_k = np.zeros((4 * N, 4 * N), dtype=complex)
    M = np.zeros((4 * N, 4 * N), dtype=complex)
    tags = []
    for eq, name in enumerate(("continuity", "radial", "tangential", "axial")):
        mk_parts, m_parts = bulk[name]
        rows = slice(eq * n_int, (eq + 1) * n_int)
        for blk, mat in mk_parts.items():
            M_k[rows, blocks[blk]] += mat
        for blk, mat in m_parts.items():
            M[rows, blocks[blk]] += mat
        tags.extend(f"{name}@test{i}" for i in range(1, N - 1))
    extras = boundary_rows(problem)
    mk_parts, m_parts = closure_parts
    c_mk = np.zeros(4 * N)
    c_m = np.zeros(4 * N)
    for blk, mat in mk_parts.items():
        c_mk[blocks[blk]] = np.asarray(mat).ravel()
    for blk, mat in m_parts.items():
        c_m[blocks[blk]] = np.asarray(mat).ravel()
    extras.append(BoundaryRow(closure_tag, c_mk, c_m))
    for offset, brow in enumerate(extras):
        idx = 4 * n_int + offset
        M_k[idx] = brow.mk
        M[idx] = brow.m
        tags.append(brow.tag)
    return Pencil(M_k=M_k, M=M, row_tags=tuple(tags))


def assemble_projection(problem: StabilityProblem,
                        tensors: InnerProductTensors | None = None) -> Pencil:
    """Build the projection pencil; pass precomputed tensors to reuse them.

    The tables do not depend on the frequency, so a sweep over omega can
    build them once per (flow, N, r_wall) and share them across assemblies.
    """
    if problem.method != "projection":
        raise ParameterError(f"problem.method must be 'projection', got {problem.method!r}")
    if problem.N < 5:
        raise ParameterError(f"projection needs N >= 5, got N = {problem.N}")
    t = tensors if tensors is not None else build_tensors(problem)
    if t.N != problem.N:
        raise ParameterError(f"tensor tables were built for N = {t.N}, problem has N = {problem.N}")
    bulk, closure = _projected_interior_and_closure(problem, t)
    return _stack_pencil(problem, bulk, closure, "closure-radial-tau")


def _deriv_projection_row(i: int, j: int, target, r_wall: float) -> float:
    """(coef * dT*_j/dr, T*_i)_w assembled from the explicit odd/even sums.

    ``target`` maps a basis index s to (coef * T*_s, T*_i)_w; the structure of
    the expansion is written out literally (single T*_1 term for j = 2, pairs
    of even indices for odd j, trailing unit T*_1 term for even j >= 4).
    """
    if j == 1:
        return 0.0
    pref = 2.0 * (j - 1) / r_wall
    if j == 2:
        return pref * target(1)
    if j % 2 == 1:
        return pref * sum(2.0 * target(s) for s in range(j - 1, 1, -2))
    return pref * (sum(2.0 * target(s) for s in range(j - 1, 2, -2)) + target(1))


def _expanded_rows(problem: StabilityProblem, t: InnerProductTensors):
    """Literal closed-form row construction used to cross-check the quadrature path."""
    N, m, omega = problem.N, problem.m, problem.omega
    rw = problem.flow.r_wall
    A = t.A
    I_r = t.mul["r"]
    I_U = t.mul["U"]
    I_rU = t.mul["rU"]
    I_dU = t.mul["dU"]
    I_wor = t.mul["W_over_r"]
    I_W = t.mul["W"]
    I_rdW = t.mul["r_dW"]

    def unit(i, j):
        return A[i] if i == j else 0.0

    def rows_for(i):
        out = {}
        # continuity: k r F + G + r G' + m H
        g_m = np.zeros(N)
        h_m = np.zeros(N)
        for j in range(1, N + 1):
            g_m[j - 1] = -(unit(i, j - 1)
                           + _deriv_projection_row(i, j, lambda s: I_r[i, s - 1], rw))
            h_m[j - 1] = -m * unit(i, j - 1)
        out["continuity"] = ({"f": I_r[i].copy()}, {"g": g_m, "h": h_m})
        # radial momentum: k U G - omega G + m (W/r) G + 2 (W/r) H - P'
        g_m = omega * np.array([unit(i, j) for j in range(N)]) - m * I_wor[i]
        p_m = np.zeros(N)
        for j in range(1, N + 1):
            p_m[j - 1] = _deriv_projection_row(i, j, lambda s: unit(i, s - 1), rw)
        out["radial"] = ({"g": I_U[i].copy()}, {"g": g_m, "h": -2.0 * I_wor[i], "p": p_m})
        # tangential momentum (r-scaled): (W + r W') G + (k r U - omega r + m W) H + m P
        h_m = omega * I_r[i] - m * I_W[i]
        p_m = -m * np.array([unit(i, j) for j in range(N)])
        out["tangential"] = ({"h": I_rU[i].copy()}, {"g": -(I_W[i] + I_rdW[i]), "h": h_m, "p": p_m})
        # axial momentum: k U F - omega F + m (W/r) F + U' G + k P
        f_m = omega * np.array([unit(i, j) for j in range(N)]) - m * I_wor[i]
        p_k = np.array([unit(i, j) for j in range(N)])
        out["axial"] = ({"f": I_U[i].copy(), "p": p_k}, {"f": f_m, "g": -I_dU[i]})
        return out

    bulk = {name: ({}, {}) for name in ("continuity", "radial", "tangential", "axial")}
    per_test = [rows_for(i) for i in range(N - 2)]
    for name in bulk:
        mk_blocks = {}
        m_blocks = {}
        for blk in "fghp":
            mk_stack = [pt[name][0].get(blk) for pt in per_test]
            m_stack = [pt[name][1].get(blk) for pt in per_test]
            if any(v is not None for v in mk_stack):
                mk_blocks[blk] = np.vstack([np.zeros(N) if v is None else v for v in mk_stack])
            if any(v is not None for v in m_stack):
                m_blocks[blk] = np.vstack([np.zeros(N) if v is None else v for v in m_stack])
        bulk[name] = (mk_blocks, m_blocks)
    closure = rows_for(N - 2)["radial"]
    return bulk, closure


def assemble_projection_expanded(problem: StabilityProblem,
                                 tensors: InnerProductTensors | None = None) -> Pencil:
    """Cross-check assembly from the expanded derivative sums; see module docstring."""
    if problem.method != "projection":
        raise ParameterError(f"problem.method must be 'projection', got {problem.method!r}")
    t = tensors if tensors is not None else build_tensors(problem)
    bulk, closure = _expanded_rows(problem, t)
    return _stack_pencil(problem, bulk, closure, "closure-radial-tau")
