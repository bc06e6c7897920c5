"""Generalized eigensolver and spurious-mode filter.

All eigenpairs of k * M_k sbar = M sbar are computed with the QZ-backed dense
solver; pairs whose homogeneous denominator is negligible are reported as
infinite and never classified.  Finite pairs are unit-normalized with the
first significant component rotated to the positive real axis, scored with
the differential residual of the underlying operator, and declared physical
when that residual stays below the tolerance.  Discrete-pencil eigenpairs can
satisfy the matrix problem while violating the differential system, which is
precisely what this filter removes.
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .collocation import Pencil
from .errors import NumericalError, ParameterError
from .operators import PerturbationField, StabilityProblem, residual_norm

DEFAULT_EPSILON = 1e-6
DEFAULT_BETA_MIN = 1e-10

PHYSICAL = "physical"
SPURIOUS = "spurious"
INFINITE = "infinite"


@dataclass(frozen=True)
class EigenMode:
    k: complex
    field: PerturbationField
    residual: float
    status: str


@dataclass(frozen=True)
class Spectrum:
    """Classified eigenmodes sorted by Im(k) ascending (ties by Re(k))."""

    modes: tuple
    problem: dict
    epsilon: float
    beta_min: float
    counts: dict

    def physical(self):
        return [mo for mo in self.modes if mo.status == PHYSICAL]


def _normalize(vec: np.ndarray) -> np.ndarray:
    v = vec / np.linalg.norm(vec)
    sig = np.nonzero(np.abs(v) > 1e-12 * np.abs(v).max())[0]
    lead = v[sig[0]] if sig.size else v[np.argmax(np.abs(v))]
    return v * (np.conj(lead) / abs(lead))


def _problem_echo(problem: StabilityProblem | None, epsilon, beta_min) -> dict:
    if problem is None:
        return {"epsilon": epsilon, "beta_min": beta_min}
    return {
        "m": problem.m,
        "omega": problem.omega,
        "N": problem.N,
        "method": problem.method,
        "profile": problem.flow.label,
        "r_wall": problem.flow.r_wall,
        "epsilon": epsilon,
        "beta_min": beta_min,
    }


def solve(pencil: Pencil, problem: StabilityProblem | None,
          epsilon: float = DEFAULT_EPSILON, beta_min: float = DEFAULT_BETA_MIN) -> Spectrum:
    """Solve the pencil and classify every eigenpair.

    With problem=None (detached pencils, mostly for testing) classification
    falls back to the algebraic pencil residual instead of the differential
    one.
    """
    if epsilon <= 0:
        raise ParameterError(f"epsilon must be positive, got {epsilon}")
    if beta_min <= 0:
        raise ParameterError(f"beta_min must be positive, got {beta_min}")
    M_k, M = pencil.M_k, pencil.M
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M_k.shape != M.shape:
        raise ParameterError(f"pencil matrices must be square and congruent, got {M_k.shape} vs {M.shape}")
    if problem is not None and M.shape[0] != 4 * problem.N:
        raise ParameterError(f"pencil size {M.shape[0]} does not match 4N = {4 * problem.N}")
    try:
        ab, vr = scipy.linalg.eig(M, M_k, homogeneous_eigvals=True, right=True)
    except (scipy.linalg.LinAlgError, ValueError) as exc:
        raise NumericalError(
            f"generalized eigensolver failed: {exc}; problem = {_problem_echo(problem, epsilon, beta_min)}"
        ) from exc
    alpha, beta = np.asarray(ab)
    beta_floor = beta_min * np.linalg.norm(M_k, ord="fro")

    finite, infinite = [], []
    N = problem.N if problem is not None else M.shape[0] // 4
    for idx in range(alpha.size):
        vec = _normalize(vr[:, idx])
        field = PerturbationField.from_stacked(vec, N)
        if abs(beta[idx]) < beta_floor:
            infinite.append(EigenMode(k=complex(np.inf, 0.0), field=field,
                                      residual=float("inf"), status=INFINITE))
            continue
        k = complex(alpha[idx] / beta[idx])
        if problem is not None:
            res = residual_norm(field, k, problem)
        else:
            res = float(np.linalg.norm(k * M_k @ vec - M @ vec)
                        / max(np.linalg.norm(M, ord="fro"), 1e-300))
        status = PHYSICAL if res <= epsilon else SPURIOUS
        finite.append(EigenMode(k=k, field=field, residual=res, status=status))

    finite.sort(key=lambda mo: (mo.k.imag, mo.k.real))
    modes = tuple(finite + infinite)
    counts = {
        PHYSICAL: sum(mo.status == PHYSICAL for mo in modes),
        SPURIOUS: sum(mo.status == SPURIOUS for mo in modes),
        INFINITE: len(infinite),
    }
    return Spectrum(modes=modes, problem=_problem_echo(problem, epsilon, beta_min),
                    epsilon=epsilon, beta_min=beta_min, counts=counts)


def leading_mode(spectrum: Spectrum) -> EigenMode | None:
    """The physical mode with the most negative Im(k); None when none exist."""
    phys = spectrum.physical()
    return phys[0] if phys else None
