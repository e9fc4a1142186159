"""Direct integration of the reduced radial equation at fixed momentum.

2D (circular S wave): u'' + (1/(4 r^2) + k^2 - g V(r)) u = 0, regular
solution u ~ sqrt(r) at the origin.  The attractive 1/(4 r^2) term is
absorbed exactly by writing u = sqrt(r) w(r); w then satisfies

    w'' + w'/r + (k^2 - g V(r)) w = 0,  w(0) = 1,

which is perfectly smooth at the origin, so the integrator sees no
singularity.  The integration still starts at r_min = 1e-6 times the
first potential scale with the leading series correction
w = 1 + (gV(0) - k^2) r^2 / 4 applied there.

3D (spherical S wave): u'' + (k^2 - g V(r)) u = 0 with u ~ r.

Delta shells are event points: the integration stops at each shell
radius and restarts with u'(R+) = u'(R-) + g lambda u(R).

The phase shift follows from matching (u, u') at a radius where the
potential is negligible against k^2 onto the free solution pair,
sqrt(r) J0(kr) and sqrt(r) Y0(kr) in 2D (their Wronskian is the
constant 2/pi) or sin(kr) and cos(kr) in 3D.  Matching determines the
phase modulo pi; sweeps obtain the absolute branch from the
phase-function method, seeded by the weak-coupling value at large k
so that the phase vanishes at infinite momentum.

All functions are pure; concurrent calls over (V, k) jobs are safe.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.integrate import solve_ivp

from .errors import DomainError, IntegrationError, TailTooLongError
from .potentials import Potential, check_conditions
from .specfun import _j0, _j1, _y0, _y1

_MATCH_TOL = 1e-8        # |gV(r_m)| <= _MATCH_TOL * k^2 defines the match radius
_MATCH_CAP = 1e6


@dataclass(frozen=True)
class PhaseShiftResult:
    """Phase shift at one momentum.

    ``delta`` is in radians.  Matching alone determines it modulo pi
    (the principal value in (-pi/2, pi/2] is reported); the
    phase-function method and the aligned sweep values are absolute,
    with delta -> 0 as k -> infinity.
    """

    k: float
    delta: float
    method: str              # matching | variable_phase | born
    err_estimate: float

    @property
    def cot_delta(self) -> float:
        return math.cos(self.delta) / math.sin(self.delta)


@dataclass(frozen=True)
class RadialSolution:
    """Reduced radial wave function u(k, r) on a grid.

    ``normalization``:

    * ``regular_origin``: u/sqrt(r) -> 1 (2D) or u/r -> 1 (3D) at the
      inner end of the grid;
    * ``asymptotic_free``: rescaled so u approaches a designated free
      solution at large r.
    """

    k: float
    dimension: int
    grid: np.ndarray
    u: np.ndarray
    u_prime: np.ndarray
    normalization: str
    match_radius: float
    _segments: tuple = ()        # ((r_lo, r_hi, dense, kind), ...)

    def evaluate(self, r):
        """(u, u') at arbitrary radii inside the integration range."""
        r_arr = np.atleast_1d(np.asarray(r, dtype=float))
        u = np.empty_like(r_arr)
        up = np.empty_like(r_arr)
        for i, ri in enumerate(r_arr):
            u[i], up[i] = self._eval_one(float(ri))
        if np.isscalar(r) or np.asarray(r).ndim == 0:
            return float(u[0]), float(up[0])
        return u, up

    def _eval_one(self, r: float):
        seg = None
        for lo, hi, dense, kind in self._segments:
            if lo <= r <= hi:
                seg = (dense, kind)
                break
        if seg is None:
            raise DomainError(f"r = {r} outside the integrated range")
        dense, kind = seg
        y = dense(r)
        if kind == "w2d":
            s = math.sqrt(r)
            u = s * y[0]
            up = 0.5 * y[0] / s + s * y[1]
            return u, up
        return y[0], y[1]

    def rescaled(self, factor: float, normalization: str) -> "RadialSolution":
        scaled_segments = tuple(
            (lo, hi, _ScaledDense(dense, factor), kind)
            for lo, hi, dense, kind in self._segments)
        return RadialSolution(
            k=self.k, dimension=self.dimension, grid=self.grid,
            u=self.u * factor, u_prime=self.u_prime * factor,
            normalization=normalization, match_radius=self.match_radius,
            _segments=scaled_segments)


class _ScaledDense:
    def __init__(self, dense, factor):
        self._dense = dense
        self._factor = factor

    def __call__(self, r):
        return self._factor * self._dense(r)


def _rhs_2d(potential: Potential, k: float):
    g = potential.coupling
    k2 = k * k
    if potential.is_distributional:
        # between shells the potential vanishes; shells enter as jumps
        def rhs(r, y):
            return (y[1], -y[1] / r - k2 * y[0])
    else:
        def rhs(r, y):
            return (y[1], -y[1] / r - (k2 - g * potential.bare(r)) * y[0])

    return rhs


def _rhs_3d(potential: Potential, k: float):
    g = potential.coupling
    k2 = k * k
    if potential.is_distributional:
        def rhs(r, y):
            return (y[1], -k2 * y[0])
    else:
        def rhs(r, y):
            return (y[1], -(k2 - g * potential.bare(r)) * y[0])

    return rhs


def _initial_scale(potential: Potential) -> float:
    return min(potential.structure_radius(), 1.0)


def regular_solution(potential: Potential, k: float, dimension: int,
                     r_max: float, rtol: float = 1e-12, atol: float = 1e-14,
                     n_grid: int = 1200) -> RadialSolution:
    """Regular solution of the reduced radial equation up to r_max.

    Parameters
    ----------
    potential : Potential
        Central potential g V(r); delta shells enter as derivative
        jumps at their radii.
    k : float
        Momentum, >= 0 (k = 0 is the zero-energy solution).
    dimension : int
        2 or 3.
    r_max : float
        Outer radius; must lie beyond all potential structure, and
        k*r_max should reach the wave zone when k > 0.
    rtol, atol : float
        Local error control of the integrator (DOP853).
    n_grid : int
        Points of the geometric output grid.

    Returns
    -------
    RadialSolution
        With ``regular_origin`` normalization; ``evaluate`` gives
        dense (u, u') anywhere in [r_min, r_max].
    """
    if dimension not in (2, 3):
        raise DomainError(f"dimension must be 2 or 3, got {dimension!r}")
    if k < 0 or not math.isfinite(k):
        raise DomainError(f"momentum must be finite and >= 0, got {k!r}")
    if r_max <= potential.structure_radius():
        raise DomainError(f"r_max = {r_max} does not clear the potential structure "
                          f"(ends at {potential.structure_radius():g})")

    scale = _initial_scale(potential)
    r_min = 1e-6 * scale
    shells = list(potential.shell_list)

    if potential.is_distributional:
        v0 = 0.0
    else:
        v0 = potential.coupling * potential.bare(r_min)
    q0 = v0 - k * k

    if dimension == 2:
        rhs = _rhs_2d(potential, k)
        y = np.array([1.0 + 0.25 * q0 * r_min * r_min, 0.5 * q0 * r_min])
        kind = "w2d"
    else:
        rhs = _rhs_3d(potential, k)
        y = np.array([r_min + q0 * r_min ** 3 / 6.0, 1.0 + 0.5 * q0 * r_min * r_min])
        kind = "u"

    breaks = [r_min] + [r for _, r in shells] + [r_max]
    segments = []
    start = y
    for i in range(len(breaks) - 1):
        lo, hi = breaks[i], breaks[i + 1]
        sol = solve_ivp(rhs, (lo, hi), start, method="DOP853",
                        rtol=rtol, atol=atol, dense_output=True)
        if not sol.success:
            raise IntegrationError(
                f"radial integration failed near r = {sol.t[-1]:.6g}: {sol.message}")
        segments.append((lo, hi, sol.sol, kind))
        start = sol.y[:, -1].copy()
        if i < len(shells):
            lam, radius = shells[i]
            jump = potential.coupling * lam
            # in the 2D w-form the jump u' -> u' + g lambda u maps to
            # w' -> w' + g lambda w because u = sqrt(r) w
            start[1] += jump * start[0]

    out = RadialSolution(
        k=k, dimension=dimension,
        grid=np.geomspace(r_min, r_max, n_grid),
        u=np.empty(n_grid), u_prime=np.empty(n_grid),
        normalization="regular_origin", match_radius=r_max,
        _segments=tuple(segments))
    u, up = out.evaluate(out.grid)
    out.u[:] = u
    out.u_prime[:] = up
    if not (np.all(np.isfinite(out.u)) and np.all(np.isfinite(out.u_prime))):
        raise IntegrationError("non-finite radial solution (diverging iteration?)")
    return out


# ---------------------------------------------------------------------------
# matching
# ---------------------------------------------------------------------------

def _free_pair_2d(k: float, r: float):
    """(f, f', g, g') for f = sqrt(r) J0(kr), g = sqrt(r) Y0(kr)."""
    z = k * r
    s = math.sqrt(r)
    j0, j1 = _j0(z), _j1(z)
    y0, y1 = _y0(z), _y1(z)
    f = s * j0
    fp = 0.5 * j0 / s - s * k * j1
    g = s * y0
    gp = 0.5 * y0 / s - s * k * y1
    return f, fp, g, gp


def _phase_at_radius(u: float, up: float, k: float, r: float, dimension: int):
    """(A, B) with u = A f - B g (2D) or u = A sin(kr) + B cos(kr) (3D);
    tan(delta) = B/A."""
    if dimension == 2:
        f, fp, g, gp = _free_pair_2d(k, r)
        # Wronskian f g' - f' g = 2/pi exactly
        a = (math.pi / 2.0) * (u * gp - up * g)
        b = (math.pi / 2.0) * (u * fp - up * f)
        return a, b
    z = k * r
    a = u * math.sin(z) + (up / k) * math.cos(z)
    b = u * math.cos(z) - (up / k) * math.sin(z)
    return a, b


def _principal(delta: float) -> float:
    """Reduce modulo pi into (-pi/2, pi/2]."""
    d = delta - math.pi * math.floor(delta / math.pi + 0.5)
    if d <= -math.pi / 2:
        d += math.pi
    return d


def align_branch(delta_mod_pi: float, reference: float) -> float:
    """Shift a modulo-pi phase by a multiple of pi to sit nearest ``reference``."""
    return delta_mod_pi + math.pi * round((reference - delta_mod_pi) / math.pi)


def match_radius(potential: Potential, k: float, cap: float = _MATCH_CAP) -> float:
    """Smallest radius where |g V| <= 1e-8 k^2, beyond all structure."""
    threshold = _MATCH_TOL * k * k / max(abs(potential.coupling), 1e-300)
    r_m = potential.tail_radius(threshold, cap=cap)
    if r_m >= cap:
        raise TailTooLongError(
            f"no admissible match radius below r = {cap:g}: the tail decays too "
            "slowly for free-solution matching; use the phase-function method "
            "or raise the radius cap")
    return r_m


def matching_cot_delta(potential: Potential, k: float, dimension: int,
                       rtol: float = 1e-12, atol: float = 1e-14):
    """(cot delta, delta mod pi, err_estimate) by asymptotic matching.

    cot(delta) comes straight from the linear solve, with no branch
    ambiguity and no precision loss near delta = n pi, which is what
    the low-energy residual analysis needs.
    """
    if k <= 0 or not math.isfinite(k):
        raise DomainError(f"matching requires k > 0, got {k!r}")
    if dimension == 2 and potential.tail_kind() not in ("compact", "exponential"):
        report = check_conditions(potential, 2)
        if report.verdict("cond_2d_scattering_length") != "convergent":
            warnings.warn("2D scattering-length condition not convergent; "
                          "the matched phase may not have a meaningful low-k limit",
                          stacklevel=2)
    if potential.tail_kind() == "power":
        warnings.warn("power-law tail: free-solution matching converges slowly; "
                      "the phase-function method is more reliable here",
                      stacklevel=2)
    r_m = match_radius(potential, k)
    r_far = 2.0 * r_m
    solution = regular_solution(potential, k, dimension, r_far, rtol=rtol, atol=atol,
                                n_grid=64)
    deltas = []
    cots = []
    for r in (r_m, r_far):
        u, up = solution.evaluate(r)
        a, b = _phase_at_radius(u, up, k, r, dimension)
        deltas.append(_principal(math.atan2(b, a)))
        cots.append(a / b if b != 0 else math.inf)
    spread = abs(_principal(deltas[1] - deltas[0]))
    err = max(spread, 1e-11)
    return cots[1], deltas[1], err


def phase_shift_by_matching(potential: Potential, k: float, dimension: int,
                            rtol: float = 1e-12, atol: float = 1e-14) -> PhaseShiftResult:
    """Phase shift modulo pi by matching the regular solution onto the
    free pair at two radii past the potential.

    The two radii must agree within the returned error estimate (they
    are reported as ``err_estimate``).  Raises
    :class:`TailTooLongError` when no admissible match radius exists
    below the cap.
    """
    cot, delta, err = matching_cot_delta(potential, k, dimension, rtol=rtol, atol=atol)
    return PhaseShiftResult(k=k, delta=delta, method="matching", err_estimate=err)
