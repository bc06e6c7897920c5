"""Shifted Chebyshev machinery on the physical radial interval [0, r_wall].

The working basis is T*_n, n = 1..N, where T*_n has polynomial degree n - 1
and equals the classical first-kind Chebyshev polynomial of degree n - 1
composed with the affine map x = 2 r / r_wall - 1.  Orthogonality holds in
L^2_w(0, r_wall) with

    w(r) = (1 - (2 r / r_wall - 1)^2)^(-1/2),

the unique weight for which (T*_1, T*_1)_w = r_wall pi/2 and
(T*_n, T*_n)_w = r_wall pi/4 for n >= 2.  Inner products are evaluated with
Gauss-Chebyshev quadrature at interior nodes only, so the integrable endpoint
singularity of w is never sampled.
"""

from dataclasses import dataclass

import numpy as np
from scipy.special import eval_legendre

from .errors import DomainError, ParameterError

_ENDPOINT_TOL = 1e-14


def _mapped(r, r_wall):
    """Affine image of r in [-1, 1], with a guard against tiny fp overshoot."""
    x = 2.0 * np.asarray(r, dtype=float) / r_wall - 1.0
    if np.any(np.abs(x) > 1.0 + 1e-12):
        bad = np.asarray(r)[np.abs(x) > 1.0 + 1e-12] if np.ndim(r) else r
        raise DomainError(f"radius {bad} outside [0, {r_wall}]")
    return np.clip(x, -1.0, 1.0)


def cheb_shifted_eval(n: int, r, r_wall: float):
    """Value of T*_n at radius r, via the stable cos((n-1) arccos x) form."""
    if n < 1:
        raise ParameterError(f"basis index n must be >= 1, got {n}")
    x = _mapped(r, r_wall)
    return np.cos((n - 1) * np.arccos(x))


def cheb_shifted_deriv(n: int, r, r_wall: float):
    """Radial derivative of T*_n at r.

    Uses d/dx T_m = m sin(m theta)/sin(theta) with the endpoint limits
    T_m'(+-1) = (+-1)^(m+1) m^2, scaled by the chain-rule factor 2/r_wall.
    """
    if n < 1:
        raise ParameterError(f"basis index n must be >= 1, got {n}")
    x = _mapped(r, r_wall)
    m = n - 1
    scalar = np.ndim(x) == 0
    x = np.atleast_1d(x)
    out = np.empty_like(x)
    interior = np.abs(x) < 1.0 - _ENDPOINT_TOL
    theta = np.arccos(x[interior])
    with np.errstate(invalid="ignore"):
        out[interior] = m * np.sin(m * theta) / np.sin(theta)
    at_right = ~interior & (x > 0)
    at_left = ~interior & (x <= 0)
    out[at_right] = m * m
    out[at_left] = (-1.0) ** (m + 1) * m * m
    out *= 2.0 / r_wall
    return out[0] if scalar else out


def deriv_expansion(n: int, r_wall: float) -> np.ndarray:
    """Coefficients c with dT*_n/dr = sum_j c[j-1] T*_j.

    The expansion runs over indices n-1, n-3, ... with coefficient
    2 * 2(n-1)/r_wall, ending in a single 2(n-1)/r_wall * T*_1 term when n is
    even.  This is the one implementation of the derivative sum shared by the
    wall pressure row and the projected-equation cross-checks.
    """
    if n < 1:
        raise ParameterError(f"basis index n must be >= 1, got {n}")
    c = np.zeros(n)
    pref = 2.0 * (n - 1) / r_wall
    for j in range(n - 1, 0, -2):
        c[j - 1] = pref * (1.0 if j == 1 else 2.0)
    return c


def eval_matrix(points, N: int, r_wall: float) -> np.ndarray:
    """Table T[q, j] = T*_{j+1}(points[q]) for j+1 = 1..N."""
    theta = np.arccos(_mapped(points, r_wall))
    return np.cos(np.outer(theta, np.arange(N)))


def deriv_matrix(points, N: int, r_wall: float) -> np.ndarray:
    """Table D[q, j] = dT*_{j+1}/dr(points[q])."""
    x = _mapped(points, r_wall)
    degrees = np.arange(N)
    out = np.empty((len(x), N))
    interior = np.abs(x) < 1.0 - _ENDPOINT_TOL
    theta = np.arccos(x[interior])
    out[interior, :] = (degrees * np.sin(np.outer(theta, degrees))
                        / np.sin(theta)[:, None])
    sq = degrees * degrees
    out[~interior & (x > 0), :] = sq
    out[~interior & (x <= 0), :] = sq * (-1.0) ** (degrees + 1)
    return out * (2.0 / r_wall)


def quadrature_rule(quad_order: int, r_wall: float):
    """Gauss-Chebyshev nodes on (0, r_wall) and the common weight factor.

    sum_q w * f(r_q) approximates the w-weighted integral of f; the rule is
    exact for polynomial f of degree <= 2*quad_order - 1.
    """
    q = np.arange(1, quad_order + 1)
    x = np.cos((2 * q - 1) * np.pi / (2 * quad_order))
    r = r_wall * (x + 1.0) / 2.0
    return r, r_wall * np.pi / (2 * quad_order)


@dataclass(frozen=True)
class BasisContext:
    """Immutable bundle of grid, tables and quadrature for one (N, r_wall).

    eta[i, j] holds T*_{j+1}(r_i) and D[i, j] its radial derivative, with the
    ascending node convention r_0 = 0, r_{N-1} = r_wall (indices here are
    zero-based; the basis itself is indexed from 1).
    """

    N: int
    r_wall: float
    quad_order: int
    nodes: np.ndarray
    eta: np.ndarray
    D: np.ndarray
    quad_r: np.ndarray
    quad_w: float


def make_context(N: int, r_wall: float, quad_order: int | None = None) -> BasisContext:
    """Build the ascending cosine-clustered grid and its evaluation tables."""
    if not isinstance(N, (int, np.integer)) or N < 2:
        raise ParameterError(f"N must be an integer >= 2, got {N}")
    if not r_wall > 0:
        raise ParameterError(f"r_wall must be positive, got {r_wall}")
    if quad_order is None:
        quad_order = max(2 * N, 64)
    if not isinstance(quad_order, (int, np.integer)) or quad_order < 2 * N:
        raise ParameterError(f"quad_order must be an integer >= 2N = {2 * N}, got {quad_order}")
    nodes = 0.5 * r_wall * (1.0 - np.cos(np.pi * np.arange(N) / (N - 1)))
    nodes[0] = 0.0
    nodes[-1] = r_wall
    quad_r, quad_w = quadrature_rule(quad_order, r_wall)
    return BasisContext(
        N=int(N),
        r_wall=float(r_wall),
        quad_order=int(quad_order),
        nodes=nodes,
        eta=eval_matrix(nodes, N, r_wall),
        D=deriv_matrix(nodes, N, r_wall),
        quad_r=quad_r,
        quad_w=quad_w,
    )


def inner_product(f, g, ctx: BasisContext) -> float:
    """Gauss-Chebyshev approximation of the w-weighted product integral."""
    fv = np.asarray(f(ctx.quad_r), dtype=float)
    gv = np.asarray(g(ctx.quad_r), dtype=float)
    return ctx.quad_w * float(np.sum(fv * gv))


def weight_function(r, r_wall: float):
    """The orthogonality weight w(r); diverges integrably at both endpoints."""
    x = _mapped(r, r_wall)
    return 1.0 / np.sqrt(1.0 - x * x)


def _cheb_classical(ell: int, x):
    return np.cos(ell * np.arccos(x))


def modal_basis_eval(kind: str, ell: int, x: float) -> float:
    """Evaluate one member of the diagnostic modal bases on [-1, 1].

    kind 'phi':   T_l - T_{l+2}
    kind 'psi':   T_l - 2 (l+2)/(l+3) T_{l+2} + (l+1)/(l+3) T_{l+4}
    kind 'theta': Legendre bubble combination (requires l >= 1)
    kind 'gamma': boundary-adapted Chebyshev family (vertex + bubble)
    """
    if ell < 0:
        raise ParameterError(f"modal index must be >= 0, got {ell}")
    if not -1.0 <= x <= 1.0:
        raise DomainError(f"modal bases are defined on [-1, 1], got x = {x}")
    if kind == "phi":
        return float(_cheb_classical(ell, x) - _cheb_classical(ell + 2, x))
    if kind == "psi":
        return float(
            _cheb_classical(ell, x)
            - 2.0 * (ell + 2) / (ell + 3) * _cheb_classical(ell + 2, x)
            + (ell + 1) / (ell + 3) * _cheb_classical(ell + 4, x)
        )
    if kind == "theta":
        if ell < 1:
            raise ParameterError("theta basis needs ell >= 1 (uses Legendre degree ell - 1)")
        scale = np.sqrt((2 * ell + 3) / 2.0)
        high = (eval_legendre(ell + 3, x) - eval_legendre(ell + 1, x)) / (
            (2 * ell + 3) * (2 * ell + 5)
        )
        low = (eval_legendre(ell + 1, x) - eval_legendre(ell - 1, x)) / (
            (2 * ell + 1) * (2 * ell - 1)
        )
        return float(scale * (high - low))
    if kind == "gamma":
        if ell == 0:
            return float((1.0 - x) / 2.0)
        if ell == 1:
            return float((1.0 + x) / 2.0)
        anchor = 0 if ell % 2 == 0 else 1
        return float(_cheb_classical(anchor, x) - _cheb_classical(ell, x))
    raise ParameterError(f"unknown modal basis kind {kind!r}")


def barycentric_eval(nodes, values, x: float) -> float:
    """Barycentric Lagrange interpolation through (nodes, values) at x."""
    nodes = np.asarray(nodes, dtype=float)
    values = np.asarray(values, dtype=float)
    if nodes.shape != values.shape:
        raise ParameterError("nodes and values must have equal length")
    if np.unique(nodes).size != nodes.size:
        raise ParameterError("interpolation nodes must be distinct")
    diff = x - nodes
    hit = np.nonzero(diff == 0.0)[0]
    if hit.size:
        return float(values[hit[0]])
    lam = np.empty_like(nodes)
    for j in range(nodes.size):
        lam[j] = 1.0 / np.prod(nodes[j] - np.delete(nodes, j))
    terms = lam / diff
    return float(np.sum(terms * values) / np.sum(terms))
