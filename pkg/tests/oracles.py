"""Hand-derived closed forms used as independent test oracles.

Everything here was worked out on paper and cross-checked with
30-digit arithmetic before the implementation existed; nothing
imports from the package under test.
"""

import math

from scipy.special import i0, i1

EULER_GAMMA = 0.5772156649015328606


def disc_scattering_length_2d(g: float, radius: float, strength: float = 1.0) -> float:
    """2D repulsive disc: interior sqrt(r) I0(kappa r) matched onto
    sqrt(r) ln(r/a) at the edge gives a = R exp(-I0/(kappa R I1))."""
    kappa = math.sqrt(g * strength)
    z = kappa * radius
    return radius * math.exp(-i0(z) / (z * i1(z)))


def square_well_scattering_length_3d(depth: float, radius: float) -> float:
    """3D attractive well below binding: a = R (1 - tan(KR)/(KR)), K = sqrt(depth)."""
    kap = math.sqrt(depth)
    return radius * (1.0 - math.tan(kap * radius) / (kap * radius))


def square_well_effective_range_3d(depth: float, radius: float) -> float:
    """r0 = 2 int (v0^2 - u0^2) with v0 = 1 - r/a and the interior
    normalized sine; all pieces integrate in closed form."""
    kap = math.sqrt(depth)
    a = square_well_scattering_length_3d(depth, radius)
    amp = (1.0 - radius / a) / math.sin(kap * radius)
    outer = (a / 3.0) * (1.0 - (1.0 - radius / a) ** 3)
    inner = 0.5 * radius - math.sin(2.0 * kap * radius) / (4.0 * kap)
    return 2.0 * (outer - amp * amp * inner)


def two_shell_chain(shell_radius: float, gap: float):
    """Strengths and radii of the two-delta-shell chain: an attractive
    shell of strength -2/R at R and a second at 3R + D."""
    lam2 = -3.0 * shell_radius / (gap * (shell_radius + gap))
    return [(-2.0 / shell_radius, shell_radius), (lam2, 3.0 * shell_radius + gap)]


def two_shell_u0_3d(r: float, shell_radius: float, gap: float) -> float:
    """Zero-energy solution: piecewise linear with slopes 1, -1, -1+3R/D."""
    big_r2 = 3.0 * shell_radius + gap
    if r <= shell_radius:
        return r
    if r <= big_r2:
        return 2.0 * shell_radius - r
    slope = -1.0 + 3.0 * shell_radius / gap
    return (2.0 * shell_radius - big_r2) + slope * (r - big_r2)


def two_shell_scattering_length_3d(shell_radius: float, gap: float) -> float:
    """Zero of the final linear segment's extension."""
    big_r2 = 3.0 * shell_radius + gap
    slope = -1.0 + 3.0 * shell_radius / gap
    return big_r2 - (2.0 * shell_radius - big_r2) / slope


def two_shell_effective_range_3d(shell_radius: float, gap: float) -> float:
    """r0 from the exact piecewise-polynomial integrals."""
    big_r = shell_radius
    big_r2 = 3.0 * big_r + gap
    a = two_shell_scattering_length_3d(big_r, gap)
    slope = -1.0 + 3.0 * big_r / gap
    norm = -1.0 / (slope * a)      # u_ren = norm * u matches 1 - r/a at infinity

    def v0_sq_int(lo, hi):
        # int (1 - r/a)^2 dr
        f = lambda r: -(a / 3.0) * (1.0 - r / a) ** 3
        return f(hi) - f(lo)

    def line_sq_int(c0, c1, lo, hi):
        # int (c0 + c1 r)^2 dr
        f = lambda r: c0 * c0 * r + c0 * c1 * r * r + c1 * c1 * r ** 3 / 3.0
        return f(hi) - f(lo)

    total = v0_sq_int(0.0, big_r) - line_sq_int(0.0, norm, 0.0, big_r)
    total += v0_sq_int(big_r, big_r2) - line_sq_int(2.0 * big_r * norm, -norm, big_r, big_r2)
    # beyond the second shell u_ren = v0 exactly
    return 2.0 * total


def weak_coupling_moments_exponential():
    """For V = exp(-r): int r V = 1, int r ln r V = 1 - gamma."""
    return 1.0, 1.0 - EULER_GAMMA
