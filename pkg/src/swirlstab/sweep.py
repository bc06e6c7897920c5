"""Frequency sweeps, growth rates and convergence-in-N diagnostics."""

from dataclasses import dataclass, replace

import numpy as np

from .basis import make_context
from .collocation import assemble_collocation
from .eigen import DEFAULT_BETA_MIN, DEFAULT_EPSILON, Spectrum, leading_mode, solve
from .errors import NumericalError, ParameterError, SwirlStabError
from .operators import StabilityProblem
from .projection import assemble_projection, build_tensors

DEFAULT_OMEGA_MIN = 0.0
DEFAULT_OMEGA_MAX = 0.4
DEFAULT_OMEGA_STEP = 0.05


class NoPhysicalModeError(NumericalError):
    """A spectrum retained no physical mode, so no growth rate exists."""


def growth_rate(spectrum: Spectrum) -> float:
    """min Im(k) over physical modes; negative values mean spatial growth."""
    phys = spectrum.physical()
    if not phys:
        raise NoPhysicalModeError(f"no physical modes retained; problem = {spectrum.problem}")
    return min(mo.k.imag for mo in phys)


def assemble(problem: StabilityProblem, tensors=None):
    if problem.method == "collocation":
        return assemble_collocation(problem)
    return assemble_projection(problem, tensors)


def solve_problem(problem: StabilityProblem, epsilon: float = DEFAULT_EPSILON,
                  beta_min: float = DEFAULT_BETA_MIN, tensors=None) -> Spectrum:
    return solve(assemble(problem, tensors), problem, epsilon, beta_min)


def omega_grid(omega_min: float, omega_max: float, omega_step: float) -> np.ndarray:
    if omega_step <= 0:
        raise ParameterError(f"omega_step must be positive, got {omega_step}")
    if omega_max < omega_min:
        raise ParameterError(f"omega_max = {omega_max} below omega_min = {omega_min}")
    span = (omega_max - omega_min) / omega_step
    count = int(round(span)) if abs(span - round(span)) < 1e-9 else int(np.floor(span))
    return omega_min + omega_step * np.arange(count + 1)


@dataclass(frozen=True)
class SweepResult:
    """chi(omega) curve with the maximizing pair and per-frequency leaders.

    chi entries are the negated growth rates, NaN where a frequency produced
    no physical mode; ``leaders`` holds the leading mode per grid point (None
    on gaps).
    """

    omega: np.ndarray
    chi: np.ndarray
    gr_max: float
    omega_cr: float
    leaders: tuple
    problem: dict

    def gaps(self):
        return [w for w, c in zip(self.omega, self.chi) if not np.isfinite(c)]


def frequency_sweep(problem: StabilityProblem,
                    omega_min: float = DEFAULT_OMEGA_MIN,
                    omega_max: float = DEFAULT_OMEGA_MAX,
                    omega_step: float = DEFAULT_OMEGA_STEP,
                    epsilon: float = DEFAULT_EPSILON,
                    beta_min: float = DEFAULT_BETA_MIN) -> SweepResult:
    """Solve one pencil per grid frequency and track the most unstable mode.

    The problem argument acts as a template; its own omega is ignored.
    Frequencies whose solve fails (or retains nothing physical) are recorded
    as gaps; the sweep aborts only if every grid point fails.
    """
    grid = omega_grid(omega_min, omega_max, omega_step)
    tensors = build_tensors(problem) if problem.method == "projection" else None
    chi = np.full(grid.size, np.nan)
    leaders = []
    failures = []
    for i, w in enumerate(grid):
        sub = problem.with_omega(w)
        try:
            spectrum = solve_problem(sub, epsilon, beta_min, tensors)
            chi[i] = -growth_rate(spectrum)
            leaders.append(leading_mode(spectrum))
        except SwirlStabError as exc:
            failures.append(f"omega = {w}: {exc}")
            leaders.append(None)
    if not np.any(np.isfinite(chi)):
        raise NumericalError("every sweep frequency failed: " + " | ".join(failures))
    best = int(np.nanargmax(chi))
    echo = {
        "m": problem.m, "N": problem.N, "method": problem.method,
        "profile": problem.flow.label, "r_wall": problem.flow.r_wall,
        "omega_min": omega_min, "omega_max": omega_max, "omega_step": omega_step,
        "epsilon": epsilon, "beta_min": beta_min,
    }
    return SweepResult(omega=grid, chi=chi, gr_max=float(chi[best]),
                       omega_cr=float(grid[best]), leaders=tuple(leaders), problem=echo)


@dataclass(frozen=True)
class ConvergenceReport:
    """omega_cr(N) table with the occurrence vote and residual-growth curve.

    The plateau [N_cr_min, N_cr_max] is the maximal suffix of the N list on
    which omega_cr stays equal to the modal (most frequent) value; residuals
    E_N are reported on that suffix only.
    """

    N_list: tuple
    omega_cr: tuple
    modal_omega: float
    N_cr_min: int | None
    N_cr_max: int | None
    E_N: tuple  # (N, value) pairs on the plateau
    problem: dict


def _vote(n_list, omegas) -> float:
    counts = {}
    for w in omegas:
        counts[w] = counts.get(w, 0) + 1
    best = max(counts.values())
    # ties resolve toward the value attained at the largest N
    for w in reversed(omegas):
        if counts[w] == best:
            return w
    raise AssertionError("unreachable")


def _residual_spread(problem: StabilityProblem, omega: float, epsilon, beta_min) -> float:
    """Largest retained-mode residual at the given frequency."""
    spectrum = solve_problem(problem.with_omega(omega), epsilon, beta_min)
    phys = spectrum.physical()
    if not phys:
        return float("nan")
    return max(mo.residual for mo in phys)


def convergence_study(problem: StabilityProblem, N_list,
                      omega_min: float = DEFAULT_OMEGA_MIN,
                      omega_max: float = DEFAULT_OMEGA_MAX,
                      omega_step: float = DEFAULT_OMEGA_STEP,
                      epsilon: float = DEFAULT_EPSILON,
                      beta_min: float = DEFAULT_BETA_MIN) -> ConvergenceReport:
    """Run the frequency sweep at each resolution and vote on omega_cr."""
    N_list = [int(n) for n in N_list]
    if any(b <= a for a, b in zip(N_list, N_list[1:])):
        raise ParameterError(f"N_list must be strictly ascending, got {N_list}")
    if any(n < 5 for n in N_list):
        raise ParameterError(f"every N must be >= 5, got {N_list}")
    omegas = []
    for n in N_list:
        sub = replace(problem, N=n, ctx=make_context(n, problem.flow.r_wall))
        omegas.append(frequency_sweep(sub, omega_min, omega_max, omega_step,
                                      epsilon, beta_min).omega_cr)
    modal = _vote(N_list, omegas)
    # maximal suffix on which omega_cr equals the modal value
    start = len(N_list)
    for i in range(len(N_list) - 1, -1, -1):
        if omegas[i] != modal:
            break
        start = i
    if start == len(N_list):
        n_min = n_max = None
        residuals = ()
    else:
        plateau = N_list[start:]
        n_min, n_max = plateau[0], plateau[-1]
        residuals = tuple(
            (n, _residual_spread(replace(problem, N=n, ctx=make_context(n, problem.flow.r_wall)),
                                 modal, epsilon, beta_min))
            for n in plateau
        )
    echo = {
        "m": problem.m, "method": problem.method, "profile": problem.flow.label,
        "r_wall": problem.flow.r_wall, "omega_min": omega_min, "omega_max": omega_max,
        "omega_step": omega_step, "epsilon": epsilon, "beta_min": beta_min,
    }
    return ConvergenceReport(N_list=tuple(N_list), omega_cr=tuple(omegas), modal_omega=modal,
                             N_cr_min=n_min, N_cr_max=n_max, E_N=residuals, problem=echo)
