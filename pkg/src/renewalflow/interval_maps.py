"""The intermittent interval map family, its branches, and the preimage ladder.

The map is f(x) = x(1 + 2^alpha x^alpha) on [0, 1/2) and 2x - 1 on [1/2, 1],
with an indifferent fixed point at 0.  Everything downstream (the induced
first-return structure on Y = [1/2, 1], cylinder geometry, roof functions) is
built from the left-branch preimage ladder computed here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "LsvMap",
    "RoofPreset",
    "ROOF_PRESETS",
    "get_roof",
    "lsv_apply",
    "lsv_derivative",
    "xi_sequence",
]

PHI_FLOOR = 2.5  # enforced lower bound for the induced roof on Y


@dataclass(frozen=True)
class LsvMap:
    """Interval map x(1+2^alpha x^alpha) / 2x-1 with parameter alpha > 0."""

    alpha: float
    beta: float = field(init=False)

    def __post_init__(self):
        if not self.alpha > 0:
            raise ValueError(f"alpha must be positive, got {self.alpha}")
        object.__setattr__(self, "beta", 1.0 / self.alpha)

    @property
    def two_alpha(self):
        return 2.0**self.alpha

    def left(self, x):
        """Left branch on [0, 1/2)."""
        return x * (1.0 + self.two_alpha * x**self.alpha)

    def left_derivative(self, x):
        return 1.0 + (self.alpha + 1.0) * self.two_alpha * x**self.alpha

    def left_inverse(self, t, lo=None, hi=None):
        """Solve left(x) = t for x in (0, 1/2), elementwise.

        Safeguarded Newton with a bisection fallback; the branch is smooth,
        increasing and convex, so Newton from the upper bracket end converges
        monotonically.  Accepts scalars or arrays, with optional brackets.
        """
        t = np.asarray(t, dtype=float)
        scalar = t.ndim == 0
        t = np.atleast_1d(t)
        if np.any((t < 0) | (t > 1)):
            raise ValueError("left-branch inverse target outside [0, 1]")
        lo = np.zeros_like(t) if lo is None else np.broadcast_to(np.asarray(lo, float), t.shape).copy()
        hi = np.full_like(t, 0.5) if hi is None else np.broadcast_to(np.asarray(hi, float), t.shape).copy()
        x = np.minimum(hi, np.maximum(t / 2.0, lo))  # t/2 <= root <= t
        for _ in range(100):
            fx = self.left(x) - t
            np.copyto(lo, x, where=fx < 0)
            np.copyto(hi, x, where=fx >= 0)
            step = fx / self.left_derivative(x)
            x_new = x - step
            bad = (x_new <= lo) | (x_new >= hi)
            x_new[bad] = 0.5 * (lo[bad] + hi[bad])
            done = np.abs(x_new - x) <= 1e-16 + 1e-15 * np.abs(x_new)
            x = x_new
            if done.all():
                break
        else:
            raise RuntimeError("left-branch inverse did not converge")
        return float(x[0]) if scalar else x


def lsv_apply(x, m: LsvMap):
    """Apply the map; x = 1/2 belongs to the right branch."""
    x = np.asarray(x, dtype=float)
    if np.any((x < 0) | (x > 1)):
        raise ValueError("point outside [0, 1]")
    out = np.where(x < 0.5, m.left(np.minimum(x, 0.5)), 2.0 * x - 1.0)
    return float(out) if out.ndim == 0 else out


def lsv_derivative(x, m: LsvMap):
    """|f'(x)|; equals 1 at the indifferent fixed point, 2 on the right branch."""
    x = np.asarray(x, dtype=float)
    if np.any((x < 0) | (x > 1)):
        raise ValueError("point outside [0, 1]")
    out = np.where(x < 0.5, m.left_derivative(np.minimum(x, 0.5)), 2.0)
    return float(out) if out.ndim == 0 else out


def xi_sequence(m: LsvMap, n_max: int):
    """Backward orbit xi_0 = 1, xi_1 = 1/2, f(xi_{n+1}) = xi_n along the left branch.

    Strictly decreasing to 0; xi_n ~ (alpha 2^alpha n)^{-beta}.  Each rung is a
    safeguarded-Newton root of the monotone left branch, so the ladder is
    accurate to ~1e-15 relative throughout.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    xi = np.empty(n_max + 1)
    xi[0] = 1.0
    xi[1] = 0.5
    for n in range(1, n_max):
        xi[n + 1] = m.left_inverse(xi[n], lo=0.0, hi=xi[n])
    return xi


def _roof_base(name):
    if name == "one_plus_x":
        return (lambda x: 1.0 + x), 1.75
    if name == "two_plus_cos":
        return (lambda x: 2.0 + np.cos(2.0 * np.pi * x)), 2.0
    if name == "const":
        return (lambda x: np.ones_like(np.asarray(x, dtype=float))), 1.0
    raise KeyError(f"unknown roof preset {name!r}")


@dataclass(frozen=True)
class RoofPreset:
    """Base roof phi_X on [0, 1]: Hoelder with known value at 0.

    `scale` multiplies the base function; the default per preset is chosen so
    that the induced roof on Y stays >= PHI_FLOOR (the binding cylinder is the
    first-return one, where phi equals phi_X itself).
    """

    name: str
    scale: float
    eta: float = 1.0

    def __call__(self, x):
        base, _ = _roof_base(self.name)
        return self.scale * base(x)

    @property
    def phi_x0(self) -> float:
        """Exact (scaled) value phi_X(0)."""
        base, _ = _roof_base(self.name)
        return self.scale * float(base(0.0))

    @property
    def phi_min(self) -> float:
        base, min_a1 = _roof_base(self.name)
        if self.name == "two_plus_cos":
            return self.scale * 1.0
        return self.scale * min(min_a1, float(base(0.0)))

    def rescaled(self, factor) -> "RoofPreset":
        return RoofPreset(self.name, self.scale * factor, self.eta)


def _make_preset(name) -> RoofPreset:
    _, min_a1 = _roof_base(name)
    return RoofPreset(name, scale=PHI_FLOOR / min_a1)


ROOF_PRESETS = {name: _make_preset(name) for name in ("one_plus_x", "two_plus_cos", "const")}


def get_roof(name: str) -> RoofPreset:
    try:
        return ROOF_PRESETS[name]
    except KeyError:
        raise KeyError(f"unknown roof preset {name!r}; choose from {sorted(ROOF_PRESETS)}") from None


def ladder_tail_exponent(xi, lo, hi):
    """Least-squares slope of log xi_n vs log n over n in [lo, hi]."""
    n = np.arange(lo, hi + 1)
    c = np.polyfit(np.log(n), np.log(xi[lo : hi + 1]), 1)
    return c[0]
