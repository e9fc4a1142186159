"""Zero-energy machinery: scattering lengths, moment coefficients,
bound-state counts, critical couplings, and the weak-coupling limits.

The zero-energy regular solution u0 solves the radial equation at
k = 0.  In 2D it can equivalently be written as the integral equation

    u0(r) = sqrt(r) + g int_0^r sqrt(r r') ln(r/r') V(r') u0(r') dr'

whose iteration converges whenever the log-weighted moment of |V| is
finite; in 3D the kernel is (r - r').  Both routes are implemented
(the differential one is the default, the iterated-quadrature one is
the dual used for validation) and must agree to 1e-8 in the weighted
sup norm with weight sqrt(r) (1 + ln+ r).

Large r behavior fixes the scattering length:

* 2D: u0/sqrt(r) -> (1 - g X2) + g X1 ln r  with
      X1 = int sqrt(r) V u0 dr,  X2 = int sqrt(r) ln r V u0 dr,
      and a = exp[(g X2 - 1)/(g X1)] marks the zero of the asymptote;
      a is a real exponential, hence never negative.  When g X1
      vanishes the asymptote is flat: a zero-energy bound state, and
      the scattering length degenerates to 0 or infinity on the two
      sides (reported as a flag, not a number).
* 3D: u0 -> C (r - a).

Power-law tails s r^-nu shift the asymptote by an analytically known
correction (first iterate of the reversed integral equation), which
the fits subtract; without it the extracted a carries an O(r^(2-nu))
bias that the low-energy residual analysis would see.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from scipy.integrate import cumulative_simpson, quad
from scipy.optimize import brentq

from .errors import DomainError, IntegrationError, TailTooLongError
from .potentials import Potential
from .radial_solver import (
    PhaseShiftResult,
    RadialSolution,
    matching_cot_delta,
    regular_solution,
)
from .specfun import EULER_GAMMA, _j0
from .variable_phase import phase_shift_variable_phase


class _ResonanceFlag:
    """Singleton flag returned when g X1 is numerically zero."""

    def __repr__(self):
        return "ZERO_ENERGY_RESONANCE"

    def __bool__(self):
        return True


ZERO_ENERGY_RESONANCE = _ResonanceFlag()

_RESONANCE_THRESHOLD = 1e-12


@dataclass(frozen=True)
class ZeroEnergyReport:
    """Everything the zero-energy analysis produces for one potential."""

    dimension: int
    u0: RadialSolution
    X1: Optional[float]              # 2D only
    X2: Optional[float]              # 2D only
    scattering_length: object        # float, or ZERO_ENERGY_RESONANCE
    B_coefficient: float             # coefficient of sqrt(r) ln r (2D) / slope (3D)
    bound_state_count: int
    iteration_diagnostics: dict


def _default_r_max(potential: Potential) -> float:
    struct = potential.structure_radius()
    tk = potential.tail_kind()
    if tk == "compact":
        return max(3.0 * struct + 5.0, 12.0)
    if tk == "exponential":
        return max(38.0 / potential.rate, 6.0 * struct, 12.0)
    if tk in ("power", "power_log"):
        return max(3e4, 50.0 * struct)
    return max(10.0 * struct, 40.0)


def zero_energy_solution(potential: Potential, dimension: int,
                         r_max: Optional[float] = None,
                         method: str = "ode") -> RadialSolution:
    """Regular zero-energy solution, normalized to sqrt(r) (2D) or r (3D)
    at the origin.

    ``method='ode'`` integrates the radial equation at k = 0;
    ``method='volterra'`` iterates the integral equation on a
    logarithmic grid (delta shells reduce to an exact forward
    substitution there).  The two agree to 1e-8 in the weighted sup
    norm; the test suite enforces that duality.
    """
    if method not in ("ode", "volterra"):
        raise DomainError(f"unknown method {method!r}")
    r_top = r_max if r_max is not None else _default_r_max(potential)
    if method == "ode":
        return regular_solution(potential, 0.0, dimension, r_top)
    grid, u, diagnostics = _volterra_arrays(potential, dimension, r_top)
    return _wrap_volterra(potential, dimension, grid, u, diagnostics)


def _volterra_arrays(potential: Potential, dimension: int, r_max: float,
                     n: int = 16385, max_iter: int = 80):
    """Iterated-quadrature solution on a logarithmic grid.

    The separable kernels (sqrt(r r') ln(r/r') = sqrt(r)[ln r - ln r']
    sqrt(r'), and (r - r')) reduce each iterate to two cumulative
    integrals, so an iteration costs O(n).
    """
    if dimension not in (2, 3):
        raise DomainError(f"dimension must be 2 or 3, got {dimension!r}")
    g = potential.coupling
    r_min = 1e-10 * min(potential.structure_radius(), 1.0)
    t = np.linspace(math.log(r_min), math.log(r_max), n)
    rr = np.exp(t)
    free = np.sqrt(rr) if dimension == 2 else rr

    if potential.is_distributional:
        u = free.copy()
        u_at = {}
        for lam, radius in potential.shell_list:
            if radius >= r_max:
                raise DomainError(f"shell at r = {radius} outside the grid")
            mask = rr > radius
            base = math.sqrt(radius) if dimension == 2 else radius
            # exact forward substitution: u(R_i) depends on earlier shells only
            u_r = base + sum(
                g * lam_j * u_at[rj] * (math.sqrt(radius * rj) * math.log(radius / rj)
                                        if dimension == 2 else (radius - rj))
                for lam_j, rj in potential.shell_list if rj < radius)
            u_at[radius] = u_r
            if dimension == 2:
                u[mask] += g * lam * u_r * np.sqrt(rr[mask] * radius) * np.log(rr[mask] / radius)
            else:
                u[mask] += g * lam * u_r * (rr[mask] - radius)
        return rr, u, {"iterations": 0, "converged": True, "residual": 0.0}

    vv = np.array([potential.bare(float(r)) for r in rr])
    weight = np.sqrt(rr) * (1.0 + np.log(np.maximum(rr, 1.0)))
    u = free.copy()
    diag = {"iterations": 0, "converged": False, "residual": math.inf}
    prev_res = math.inf
    for it in range(1, max_iter + 1):
        if dimension == 2:
            phi = np.sqrt(rr) * vv * u * rr          # extra rr: dr = r dt
            c1 = cumulative_simpson(phi, x=t, initial=0.0)
            c2 = cumulative_simpson(phi * np.log(rr), x=t, initial=0.0)
            new = free + g * np.sqrt(rr) * (np.log(rr) * c1 - c2)
        else:
            phi = vv * u * rr
            c1 = cumulative_simpson(phi, x=t, initial=0.0)
            c2 = cumulative_simpson(phi * rr, x=t, initial=0.0)
            new = free + g * (rr * c1 - c2)
        res = float(np.max(np.abs(new - u) / weight))
        scale = float(np.max(np.abs(new) / weight))
        u = new
        diag = {"iterations": it, "converged": res <= 1e-10 * max(scale, 1.0),
                "residual": res}
        if diag["converged"]:
            break
        if it > 6 and res > 4.0 * prev_res:
            raise IntegrationError(
                "zero-energy iteration diverges: the log-weighted moment "
                "integral of r (1 + |ln r|) |V| appears to be infinite")
        prev_res = res
    if not diag["converged"]:
        raise IntegrationError(
            f"zero-energy iteration did not reach 1e-10 in {max_iter} sweeps "
            f"(residual {diag['residual']:.3g}); check the moment conditions")
    return rr, u, diag


class _SplineDense:
    def __init__(self, t, w, wp):
        from scipy.interpolate import CubicSpline
        self._w = CubicSpline(t, w)
        self._wp = CubicSpline(t, wp)

    def __call__(self, r):
        tt = math.log(r)
        return np.array([float(self._w(tt)), float(self._wp(tt))])


class _AffineDense:
    """Exact zero-energy segment between shells: w = A + B ln r (2D) or
    u = A + B r (3D)."""

    def __init__(self, a, b, logarithmic):
        self._a = a
        self._b = b
        self._log = logarithmic

    def __call__(self, r):
        if self._log:
            return np.array([self._a + self._b * math.log(r), self._b / r])
        return np.array([self._a + self._b * r, self._b])


def _shell_segments(potential: Potential, dimension: int, r_min: float, r_max: float):
    """Exact piecewise segments of the zero-energy solution for delta shells."""
    g = potential.coupling
    logarithmic = dimension == 2
    a_c, b_c = (1.0, 0.0) if logarithmic else (0.0, 1.0)
    lo = r_min
    segments = []
    for lam, radius in potential.shell_list:
        if radius >= r_max:
            raise DomainError(f"shell at r = {radius} outside the grid")
        segments.append((lo, radius, _AffineDense(a_c, b_c, logarithmic),
                         "w2d" if logarithmic else "u"))
        if logarithmic:
            w_r = a_c + b_c * math.log(radius)
            b_c = b_c + g * lam * radius * w_r
            a_c = w_r - b_c * math.log(radius)
        else:
            u_r = a_c + b_c * radius
            b_c = b_c + g * lam * u_r
            a_c = u_r - b_c * radius
        lo = radius
    segments.append((lo, r_max, _AffineDense(a_c, b_c, logarithmic),
                     "w2d" if logarithmic else "u"))
    return tuple(segments)


def _wrap_volterra(potential, dimension, rr, u, diagnostics) -> RadialSolution:
    if potential.is_distributional:
        segments = _shell_segments(potential, dimension, rr[0], rr[-1])
        kind = None
    else:
        t = np.log(rr)
        if dimension == 2:
            w = u / np.sqrt(rr)
            wp = np.gradient(w, t) / rr
            dense = _SplineDense(t, w, wp)
            kind = "w2d"
        else:
            up = np.gradient(u, t) / rr
            dense = _SplineDense(t, u, up)
            kind = "u"
        segments = ((rr[0], rr[-1], dense, kind),)
    sol = RadialSolution(
        k=0.0, dimension=dimension, grid=rr,
        u=u, u_prime=np.empty_like(u), normalization="regular_origin",
        match_radius=rr[-1], _segments=segments)
    uu, uup = sol.evaluate(rr)
    sol.u_prime[:] = uup
    return sol


# ---------------------------------------------------------------------------
# asymptote extraction
# ---------------------------------------------------------------------------

def _tail_params(potential: Potential):
    if potential.tail_kind() != "power":
        return None
    return potential.coupling * potential.strength, potential.exponent


def asymptote_2d(potential: Potential, solution: RadialSolution,
                 n_fit: int = 48) -> tuple[float, float]:
    """(A, B) of u0/sqrt(r) -> A + B ln r, tail-corrected for power laws.

    For a tail s r^-nu the reversed integral equation adds
    g s r^(2-nu) [(A + B ln r)/(nu-2)^2 + 2B/(nu-2)^3] to the
    asymptote; the fit iterates that correction out.
    """
    r_hi = solution.grid[-1]
    r_lo = max(1.5 * potential.structure_radius(), 0.08 * r_hi)
    if r_lo >= 0.9 * r_hi:
        r_lo = 0.5 * r_hi
    rf = np.geomspace(r_lo, r_hi, n_fit)
    uu, _ = solution.evaluate(rf)
    wf = uu / np.sqrt(rf)
    design = np.vstack([np.ones_like(rf), np.log(rf)]).T
    tail = _tail_params(potential)
    a_c, b_c = np.linalg.lstsq(design, wf, rcond=None)[0]
    if tail is not None:
        gs, nu = tail
        for _ in range(6):
            corr = gs * rf ** (2.0 - nu) * ((a_c + b_c * np.log(rf)) / (nu - 2.0) ** 2
                                            + 2.0 * b_c / (nu - 2.0) ** 3)
            a_c, b_c = np.linalg.lstsq(design, wf - corr, rcond=None)[0]
    return float(a_c), float(b_c)


def _asymptote_3d_window(potential, solution, r_lo, r_hi, n_fit=48):
    rf = np.geomspace(r_lo, r_hi, n_fit)
    uu, _ = solution.evaluate(rf)
    design = np.vstack([np.ones_like(rf), rf]).T
    a_c, b_c = np.linalg.lstsq(design, uu, rcond=None)[0]
    tail = _tail_params(potential)
    if tail is not None:
        gs, nu = tail
        for _ in range(6):
            corr = gs * (a_c * rf ** (2.0 - nu) / ((nu - 1.0) * (nu - 2.0)))
            if nu > 3.0:
                corr = corr + gs * b_c * rf ** (3.0 - nu) / ((nu - 2.0) * (nu - 3.0))
            a_c, b_c = np.linalg.lstsq(design, uu - corr, rcond=None)[0]
    return float(a_c), float(b_c)


# ---------------------------------------------------------------------------
# moment coefficients and scattering lengths
# ---------------------------------------------------------------------------

def scattering_coefficients(potential: Potential,
                            u0: Optional[RadialSolution] = None
                            ) -> tuple[float, float]:
    """2D moment coefficients (X1, X2) of the bare shape against u0.

    X1 = int_0^inf sqrt(r) V(r) u0(r) dr,
    X2 = int_0^inf sqrt(r) ln(r) V(r) u0(r) dr.

    Quadrature is logarithmic near the origin; beyond the grid a
    power-law tail is completed analytically using the fitted
    asymptote, and exponential or compact tails are already below
    truncation there.
    """
    if u0 is None:
        u0 = zero_energy_solution(potential, 2)
    if potential.is_distributional:
        x1 = x2 = 0.0
        for lam, radius in potential.shell_list:
            uu, _ = u0.evaluate(radius * (1.0 - 1e-12))
            x1 += lam * math.sqrt(radius) * uu
            x2 += lam * math.sqrt(radius) * math.log(radius) * uu
        return x1, x2

    r_min, r_top = u0.grid[0], u0.grid[-1]

    def w_of(r: float) -> float:
        uu, _ = u0.evaluate(r)
        return uu / math.sqrt(r)

    # integrate in t = ln r: sqrt(r) V u0 dr = r^2 V w dt
    def integrand(t: float) -> float:
        r = math.exp(t)
        return r * r * potential.bare(r) * w_of(r)

    def integrand_log(t: float) -> float:
        return integrand(t) * t

    pieces = sorted({math.log(r_min * 1.0000001), math.log(potential.structure_radius()),
                     0.0, math.log(r_top * 0.9999999)})
    pieces = [p for p in pieces if math.log(r_min) <= p <= math.log(r_top)]
    x1 = x2 = 0.0
    for lo, hi in zip(pieces, pieces[1:]):
        v1, _ = quad(integrand, lo, hi, limit=400, epsabs=1e-13, epsrel=1e-11)
        v2, _ = quad(integrand_log, lo, hi, limit=400, epsabs=1e-13, epsrel=1e-11)
        x1 += v1
        x2 += v2

    tail = _tail_params(potential)
    if tail is not None:
        gs, nu = tail
        s = potential.strength
        a_c, b_c = asymptote_2d(potential, u0)
        rc, m = r_top, nu - 2.0
        i0 = rc ** -m / m
        i1 = rc ** -m * (math.log(rc) / m + 1.0 / m ** 2)
        i2 = rc ** -m * (math.log(rc) ** 2 / m + 2.0 * math.log(rc) / m ** 2 + 2.0 / m ** 3)
        x1 += s * (a_c * i0 + b_c * i1)
        x2 += s * (a_c * i1 + b_c * i2)
    return x1, x2


def scattering_length_2d(potential: Potential,
                         u0: Optional[RadialSolution] = None,
                         threshold: float = _RESONANCE_THRESHOLD):
    """2D scattering length a = exp[(g X2 - 1)/(g X1)].

    Always a positive length; when |g X1| falls below ``threshold``
    relative to |1 - g X2| the asymptote has no logarithmic growth (a
    zero-energy bound state) and :data:`ZERO_ENERGY_RESONANCE` is
    returned instead of a number.
    """
    if u0 is None:
        u0 = zero_energy_solution(potential, 2)
    x1, x2 = scattering_coefficients(potential, u0)
    g = potential.coupling
    if abs(g * x1) <= threshold * max(abs(1.0 - g * x2), 1e-300):
        return ZERO_ENERGY_RESONANCE
    return math.exp((g * x2 - 1.0) / (g * x1))


def scattering_length_2d_from_fit(potential: Potential,
                                  u0: Optional[RadialSolution] = None) -> float:
    """2D scattering length from the zero of the fitted asymptote
    A + B ln r (the dual of the integral-formula route)."""
    if u0 is None:
        u0 = zero_energy_solution(potential, 2)
    a_c, b_c = asymptote_2d(potential, u0)
    if b_c == 0.0:
        raise DomainError("flat asymptote: zero-energy resonance, no finite a")
    return math.exp(-a_c / b_c)


def scattering_length_3d(potential: Potential,
                         u0: Optional[RadialSolution] = None,
                         window_tol: float = 1e-6) -> float:
    """3D scattering length from the zero of the linear asymptote
    u0 -> C (r - a); two fit windows must agree to ``window_tol``
    relative (otherwise the tail was not cleared and the call fails
    with :class:`TailTooLongError`)."""
    if u0 is None:
        u0 = zero_energy_solution(potential, 3)
    r_hi = u0.grid[-1]
    r_mid = max(1.5 * potential.structure_radius(), 0.08 * r_hi)
    if r_mid >= 0.55 * r_hi:
        r_mid = 0.55 * r_hi
    results = []
    for lo, hi in ((r_mid, math.sqrt(r_mid * r_hi)), (math.sqrt(r_mid * r_hi), r_hi)):
        a_c, b_c = _asymptote_3d_window(potential, u0, lo, hi)
        if b_c == 0.0:
            raise DomainError("flat 3D asymptote: zero-energy resonance")
        results.append(-a_c / b_c)
    a1, a2 = results
    scale = max(abs(a1), abs(a2), 1e-12)
    if abs(a1 - a2) > window_tol * scale + 1e-12:
        raise TailTooLongError(
            f"3D asymptote fit windows disagree: a = {a1!r} vs {a2!r}; "
            "extend r_max or classify the tail")
    return a2


def slope_3d(potential: Potential, u0: Optional[RadialSolution] = None) -> float:
    """Slope C of the 3D asymptote u0 -> C (r - a)."""
    if u0 is None:
        u0 = zero_energy_solution(potential, 3)
    r_hi = u0.grid[-1]
    r_mid = min(max(1.5 * potential.structure_radius(), 0.08 * r_hi), 0.55 * r_hi)
    _, b_c = _asymptote_3d_window(potential, u0, r_mid, r_hi)
    return b_c


def bound_state_count(potential: Potential, dimension: int,
                      u0: Optional[RadialSolution] = None,
                      n_scan: int = 4000) -> int:
    """Number of interior nodes of the zero-energy solution.

    Counts strict sign changes on a fine scan grid; a node closer to
    the outer edge than ten scan steps means the grid ended too soon
    and the count would be unreliable (an error, not a guess).
    """
    if u0 is None:
        u0 = zero_energy_solution(potential, dimension)
    rr = np.geomspace(u0.grid[0] * 10.0, u0.grid[-1], n_scan)
    uu, _ = u0.evaluate(rr)
    signs = np.sign(uu)
    flips = np.nonzero(np.diff(signs) != 0)[0]
    if flips.size and flips[-1] >= n_scan - 10:
        raise TailTooLongError("node too close to the grid edge; extend r_max")
    return int(flips.size)


def critical_coupling(potential: Potential, bracket: tuple[float, float]) -> float:
    """Coupling g_c inside ``bracket`` where X1(g) vanishes (a
    zero-energy bound state appears).

    The endpoints must straddle a sign change of X1.  On either side
    of the root the scattering length collapses to 0 or blows up, in
    opposite directions.
    """
    g_lo, g_hi = bracket

    def x1_of(g: float) -> float:
        return scattering_coefficients(potential.with_coupling(g))[0]

    f_lo, f_hi = x1_of(g_lo), x1_of(g_hi)
    if not (f_lo * f_hi < 0):
        raise DomainError(
            f"X1 does not change sign over ({g_lo}, {g_hi}): "
            f"X1 = {f_lo:.3g} and {f_hi:.3g}")
    return brentq(x1_of, g_lo, g_hi, xtol=1e-13, rtol=1e-14)


# ---------------------------------------------------------------------------
# weak coupling and low-energy checks
# ---------------------------------------------------------------------------

def born_phase_shift(potential: Potential, k: float) -> PhaseShiftResult:
    """First-order 2D phase shift tan(delta) = -(pi/2) g int r J0(kr)^2 V dr.

    Valid when the coupling is weak; the quadratic correction is
    relative O(g)."""
    if k <= 0 or not math.isfinite(k):
        raise DomainError(f"born phase shift requires k > 0, got {k!r}")
    g = potential.coupling
    if potential.is_distributional:
        integral = sum(lam * r * _j0(k * r) ** 2 for lam, r in potential.shell_list)
    else:
        r_end = min(potential.tail_radius(1e-15), 1e5)

        def integrand(r):
            return r * _j0(k * r) ** 2 * potential.bare(r)

        pieces = sorted({1e-12, potential.structure_radius(), r_end})
        pieces = [p for p in pieces if p <= r_end]
        integral = 0.0
        for lo, hi in zip(pieces, pieces[1:]):
            chunk, _ = quad(integrand, lo, hi, limit=800, epsabs=1e-14, epsrel=1e-11)
            integral += chunk
    tan_delta = -(math.pi / 2.0) * g * integral
    return PhaseShiftResult(k=k, delta=math.atan(tan_delta), method="born",
                            err_estimate=abs(tan_delta) * abs(g) + 1e-12)


def weak_coupling_scattering_length(potential: Potential, g: float) -> float:
    """Explicit weak-coupling 2D scattering length.

    ln a = [-1/g + int r ln r V dr] / int r V dr
           + [int_0^inf r V(r) dr' int_0^r r' V(r') ln(r/r') dr'] / (int r V dr)^2

    up to O(g).  The shape V is taken bare; g enters only the -1/g
    term.  Degenerates when int r V dr vanishes.
    """
    if potential.is_distributional:
        i1 = sum(lam * r for lam, r in potential.shell_list)
        i2 = sum(lam * r * math.log(r) for lam, r in potential.shell_list)
        dbl = sum(lam * r * sum(lam2 * r2 * math.log(r / r2)
                                for lam2, r2 in potential.shell_list if r2 < r)
                  for lam, r in potential.shell_list)
    else:
        r_end = min(potential.tail_radius(1e-15), 1e5)
        i1, _ = quad(lambda r: r * potential.bare(r), 0, r_end, limit=400,
                     epsabs=1e-13, epsrel=1e-11)
        i2, _ = quad(lambda r: r * math.log(r) * potential.bare(r), 1e-14, r_end,
                     limit=400, epsabs=1e-13, epsrel=1e-11)

        def inner(r):
            val, _ = quad(lambda rp: rp * potential.bare(rp) * math.log(r / rp),
                          1e-14, r, limit=200, epsabs=1e-12, epsrel=1e-9)
            return val

        dbl, _ = quad(lambda r: r * potential.bare(r) * inner(r), 1e-14, r_end,
                      limit=200, epsabs=1e-11, epsrel=1e-8)
    if abs(i1) < 1e-14:
        raise DomainError("int r V dr vanishes: the weak-coupling formula degenerates")
    return math.exp((-1.0 / g + i2) / i1 + dbl / (i1 * i1))


def low_energy_residual(potential: Potential, k: float, a: float,
                        method: str = "auto") -> float:
    """cot(delta(k)) - (2/pi)[ln(k a / 2) + gamma], the quantity whose
    k -> 0 limit vanishes for admissible 2D potentials."""
    if method == "auto":
        method = "matching" if potential.tail_kind() in ("compact", "exponential") \
            else "variable_phase"
    if method == "matching":
        cot, _, _ = matching_cot_delta(potential, k, 2)
    else:
        delta = phase_shift_variable_phase(potential, k, 2).delta
        cot = math.cos(delta) / math.sin(delta)
    return cot - (2.0 / math.pi) * (math.log(0.5 * k * a) + EULER_GAMMA)


def low_energy_limit_check(potential: Potential, k_list: Sequence[float],
                           a: Optional[float] = None,
                           method: str = "auto") -> list[tuple[float, float]]:
    """Residual cot(delta) - (2/pi)[ln(ka/2) + gamma] per momentum.

    For admissible potentials the residuals shrink toward zero with k;
    long power tails follow their anomalous law instead.
    """
    if a is None:
        a_val = scattering_length_2d(potential)
        if a_val is ZERO_ENERGY_RESONANCE:
            raise DomainError("zero-energy resonance: the universal law degenerates")
        a = a_val
    return [(float(k), low_energy_residual(potential, float(k), a, method=method))
            for k in k_list]


def zero_energy_report(potential: Potential, dimension: int) -> ZeroEnergyReport:
    """One-stop zero-energy summary used by the command-line report."""
    u0 = zero_energy_solution(potential, dimension)
    n = bound_state_count(potential, dimension, u0)
    if dimension == 2:
        x1, x2 = scattering_coefficients(potential, u0)
        a = scattering_length_2d(potential, u0)
        b_coeff = potential.coupling * x1
        diag = {"a_from_fit": (scattering_length_2d_from_fit(potential, u0)
                               if a is not ZERO_ENERGY_RESONANCE else None)}
        return ZeroEnergyReport(dimension, u0, x1, x2, a, b_coeff, n, diag)
    a3 = scattering_length_3d(potential, u0)
    c = slope_3d(potential, u0)
    return ZeroEnergyReport(dimension, u0, None, None, a3, c, n, {})
