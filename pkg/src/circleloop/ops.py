"""The loop itself: section evaluation, multiplication, divisions, and
the conjugate-transversal angle functions used to certify sharp transitivity.

The loop lives on coset angles in [0, 2*pi).  With sigma(s) the section
matrix at s, multiplication is

    s * t = angle_of( sigma(s) @ rot(t) ),

which has identity 0 and, for a valid spec, strictly increasing degree-1
left and right translations; divisions are solved by bisection on the
monotone lifts.

For each conjugation angle beta, eta_beta(t) is the coset angle of
rot(-beta) @ sigma(t) @ rot(beta): where the section's image meets the
cosets of the conjugated stabilizer.  The section defines a loop exactly
when every eta_beta is strictly increasing with winding one; the
transversal check samples that directly, and `transitivity_quadratic`
evaluates the equivalent quadratic-in-w positivity condition.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .builder import LoopSpec
from .errors import InvalidSpecError, RootNotBracketedError
from .fourier import TWO_PI
from .sl2 import kh_decompose

#: residual above which a division result is rejected as unbracketed
_DIV_RESIDUAL_LIMIT = 1e-6


def _bisect_steps(tol_root: float) -> int:
    """Iterations needed to shrink [0, 2*pi] below tol_root, plus guard bits."""
    return min(90, max(20, int(np.ceil(np.log2(TWO_PI / tol_root))) + 8))


@dataclass(frozen=True)
class SectionPoint:
    """Section value at one coset angle: the matrix rot(t) @ [[f, g], [0, 1/f]]."""

    t: float
    matrix: np.ndarray


def _require_valid(spec: LoopSpec) -> None:
    if not spec.report.verdict:
        names = ", ".join(f.condition for f in spec.report.failures) or "unknown"
        raise InvalidSpecError(f"spec failed validation ({names})")


def _section_entries(spec: LoopSpec, s):
    """Entries of sigma(s) for scalar or array s."""
    fh = spec.f_inv(s)
    f = 1.0 / fh
    g = spec.g(s)
    cs, ss = np.cos(s), np.sin(s)
    return cs * f, cs * g + ss * fh, -ss * f, -ss * g + cs * fh


def section(spec: LoopSpec, t: float) -> SectionPoint:
    """Section matrix at angle t; the identity matrix at t in 2*pi*Z."""
    _require_valid(spec)
    m11, m12, m21, m22 = _section_entries(spec, float(t))
    return SectionPoint(float(t), np.array([[m11, m12], [m21, m22]]))


def mul(spec: LoopSpec, s, t):
    """Loop product s * t as an angle in [0, 2*pi); vectorizes over arrays."""
    _require_valid(spec)
    return _mul_unchecked(spec, s, t)


def _mul_unchecked(spec: LoopSpec, s, t):
    s = np.asarray(s, dtype=float)
    t = np.asarray(t, dtype=float)
    m11, m12, m21, m22 = _section_entries(spec, s)
    ct, st = np.cos(t), np.sin(t)
    b11 = m11 * ct - m12 * st
    b21 = m21 * ct - m22 * st
    ang = np.arctan2(-b21, b11) % TWO_PI
    return ang if ang.shape else float(ang)


def _circular_distance(x, y):
    d = np.abs(np.asarray(x) - np.asarray(y)) % TWO_PI
    return np.minimum(d, TWO_PI - d)


def _bisect_translation(spec: LoopSpec, anchor, target, advance):
    """Solve advance(y) = target for the monotone lift of a translation.

    `advance(y)` must be the translation's increase over its value at 0,
    reduced to [0, 2*pi); strict monotonicity makes plain bisection on
    [0, 2*pi] unconditionally convergent.
    """
    target = np.asarray(target, dtype=float)
    lo = np.zeros(target.shape)
    hi = np.full(target.shape, TWO_PI)
    for _ in range(_bisect_steps(spec.report.tolerances.tol_root)):
        mid = 0.5 * (lo + hi)
        go_right = advance(mid) < target
        lo = np.where(go_right, mid, lo)
        hi = np.where(go_right, hi, mid)
    return (0.5 * (lo + hi)) % TWO_PI


def ldiv(spec: LoopSpec, a, b):
    """The unique y with a * y = b (left division a \\ b)."""
    _require_valid(spec)
    return _ldiv_unchecked(spec, a, b)


def _ldiv_unchecked(spec: LoopSpec, a, b):
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    target = (b - a) % TWO_PI
    y = _bisect_translation(
        spec, a, target, lambda m: (_mul_unchecked(spec, a, m) - a) % TWO_PI
    )
    residual = _circular_distance(_mul_unchecked(spec, a, y), b)
    if np.any(residual > _DIV_RESIDUAL_LIMIT):
        worst = float(np.max(residual))
        raise RootNotBracketedError(
            f"left division residual {worst:.3e}; the left translation is not "
            "a monotone circle map (inadmissible spec?)"
        )
    return y if y.shape else float(y)


def rdiv(spec: LoopSpec, b, a):
    """The unique x with x * a = b (right division b / a)."""
    _require_valid(spec)
    return _rdiv_unchecked(spec, b, a)


def _rdiv_unchecked(spec: LoopSpec, b, a):
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    target = (b - a) % TWO_PI
    x = _bisect_translation(
        spec, a, target, lambda m: (_mul_unchecked(spec, m, a) - a) % TWO_PI
    )
    residual = _circular_distance(_mul_unchecked(spec, x, a), b)
    if np.any(residual > _DIV_RESIDUAL_LIMIT):
        worst = float(np.max(residual))
        raise RootNotBracketedError(
            f"right division residual {worst:.3e}; the right translation is not "
            "a monotone circle map (inadmissible spec?)"
        )
    return x if x.shape else float(x)


def eta_lift_beta(spec: LoopSpec, beta: float, ts: np.ndarray) -> np.ndarray:
    """Continuous lift of eta_beta along the angles ts (ts[0] must be 0).

    eta_beta(t) is computed in matrix form as atan2 of the first column of
    rot(t - beta) @ F(t) @ rot(beta), which stays smooth where the
    tan-quotient formula has poles, then unwrapped along ts.
    """
    ts = np.asarray(ts, dtype=float)
    fh = spec.f_inv(ts)
    f = 1.0 / fh
    g = spec.g(ts)
    cb, sb = np.cos(beta), np.sin(beta)
    radial = f * cb - g * sb
    ctb, stb = np.cos(ts - beta), np.sin(ts - beta)
    s_comp = radial * stb + fh * sb * ctb
    c_comp = radial * ctb - fh * sb * stb
    return np.unwrap(np.arctan2(s_comp, c_comp))


def eta_lift(spec: LoopSpec, w: float, ts: np.ndarray) -> np.ndarray:
    """Continuous lift of eta_w along ts, with w = tan(beta)."""
    return eta_lift_beta(spec, float(np.arctan(w)), ts)


def eta(spec: LoopSpec, w: float, t: float, *, resolution: int = 2048) -> float:
    """Continuous lift of eta_w at a single angle, anchored at eta_w(0) = 0.

    eta_0(t) = t for every spec, and for the trivial spec eta_w(t) = t for
    all w.  Tracked from 0 to t along `resolution` intermediate angles.
    """
    _require_valid(spec)
    n = max(64, int(np.ceil(abs(t) / TWO_PI * resolution)))
    ts = np.linspace(0.0, float(t), n + 1)
    return float(eta_lift(spec, w, ts)[-1])


def transitivity_quadratic(spec: LoopSpec, w, t):
    """The quadratic-in-w expression whose positivity for all w and t is
    equivalent to sharp transitivity:

        w^2 (g'f + g f' + g^2 f^2 + 1) + w (-2 f f' - 2 g f^3) + f^4.
    """
    w = np.asarray(w, dtype=float)
    t = np.asarray(t, dtype=float)
    fh = spec.f_inv(t)
    f = 1.0 / fh
    fp = -spec.f_inv.derivative_at(t) / (fh * fh)
    g = spec.g(t)
    gp = spec.g.derivative_at(t)
    quad = (
        w * w * (gp * f + g * fp + g * g * f * f + 1.0)
        + w * (-2.0 * f * fp - 2.0 * g * f ** 3)
        + f ** 4
    )
    return quad if quad.shape else float(quad)


def eta_derivative_expr(spec: LoopSpec, w, t):
    """(w^2+1)/cos^2(t) times the transitivity quadratic.

    This equals d/dt tan(eta_w(t)) up to the square of the tan-quotient
    denominator, a strictly positive factor, so only its sign is
    meaningful: positive everywhere iff the spec is sharply transitive.
    Within 1e-8 of a pole of tan the unbounded 1/cos^2 factor (positive
    wherever defined) is dropped and (w^2+1) times the quadratic returned.
    """
    w = np.asarray(w, dtype=float)
    t = np.asarray(t, dtype=float)
    quad = transitivity_quadratic(spec, w, t)
    ct = np.cos(t)
    factor = np.where(np.abs(ct) < 1e-8, 1.0, ct * ct)
    out = (w * w + 1.0) / factor * quad
    return out if out.shape else float(out)


@dataclass(frozen=True)
class TransversalReport:
    """Monotonicity and winding of eta_beta over a grid of conjugation angles."""

    passed: bool
    beta_count: int
    t_count: int
    worst_margin: float        # smallest forward difference of any lift
    worst_beta: float
    worst_t: float
    worst_winding_error: float  # largest |lift(2pi) - lift(0) - 2pi|
    worst_winding_beta: float


def baer_transversal_check(
    spec: LoopSpec,
    beta_grid: int = 64,
    t_grid: int = 4096,
    *,
    winding_tol: float = 1e-6,
) -> TransversalReport:
    """Check every sampled conjugate transversal for strict monotonicity.

    For beta on a uniform grid over [0, pi) (conjugation by rot(beta) and
    rot(beta + pi) agree), the lift of eta_beta over [0, 2*pi] must be
    strictly increasing and gain exactly 2*pi.  Does not require a valid
    spec: this is the check that exposes a corrupted one.
    """
    ts = np.linspace(0.0, TWO_PI, t_grid + 1)
    betas = np.linspace(0.0, np.pi, beta_grid, endpoint=False)
    worst_margin = np.inf
    worst_beta = worst_t = 0.0
    worst_wind = 0.0
    worst_wind_beta = 0.0
    for beta in betas:
        lift = eta_lift_beta(spec, float(beta), ts)
        steps = np.diff(lift)
        i = int(steps.argmin())
        if steps[i] < worst_margin:
            worst_margin = float(steps[i])
            worst_beta, worst_t = float(beta), float(ts[i])
        wind_err = abs(float(lift[-1] - lift[0]) - TWO_PI)
        if wind_err > worst_wind:
            worst_wind = wind_err
            worst_wind_beta = float(beta)
    return TransversalReport(
        passed=worst_margin > 0.0 and worst_wind < winding_tol,
        beta_count=beta_grid,
        t_count=t_grid,
        worst_margin=float(worst_margin),
        worst_beta=worst_beta,
        worst_t=worst_t,
        worst_winding_error=worst_wind,
        worst_winding_beta=worst_wind_beta,
    )


def section_angle_roundtrip(spec: LoopSpec, t: float) -> float:
    """Coset angle recovered from the section matrix (should equal t mod 2*pi)."""
    return kh_decompose(section(spec, t).matrix)[0]
