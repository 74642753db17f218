"""Collocation grids and discrete observables on Y and on the slab Y x [0,1].

Y = [1/2, 1] carries Chebyshev points of the second kind with barycentric
interpolation and Clenshaw-Curtis quadrature (branch inverses are analytic in
y, so spectral accuracy pays off).  The fiber coordinate u in [0,1] carries a
uniform grid with composite Simpson-type weights.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.integrate import quad

__all__ = [
    "GridY",
    "GridU",
    "GridFunction",
    "integrate_Y",
    "integrate_tilde",
    "fiber",
    "chi_bump",
    "chi_derivative",
    "ObservablePreset",
    "OBSERVABLE_PRESETS",
]


def _cc_weights(n_nodes):
    """Clenshaw-Curtis weights for n_nodes Chebyshev points of the 2nd kind on [-1, 1]."""
    n = n_nodes - 1
    if n == 0:
        return np.array([2.0])
    k = np.arange(n_nodes)
    w = np.ones(n_nodes)
    for j in range(1, n // 2 + 1):
        b = 1.0 if 2 * j == n else 2.0
        w -= b / (4.0 * j * j - 1.0) * np.cos(2.0 * j * k * np.pi / n)
    w *= 2.0 / n
    w[0] *= 0.5
    w[-1] *= 0.5
    return w


@dataclass(frozen=True)
class GridY:
    """Chebyshev (2nd kind) collocation grid on [1/2, 1], ascending, endpoints included."""

    nodes: np.ndarray
    bary_weights: np.ndarray
    quad_weights: np.ndarray

    @classmethod
    def build(cls, n_y: int, a: float = 0.5, b: float = 1.0) -> "GridY":
        if n_y < 4:
            raise ValueError("need at least 4 nodes")
        n = n_y - 1
        theta = np.arange(n_y) * np.pi / n
        nodes = a + (b - a) * 0.5 * (1.0 - np.cos(theta))
        lam = np.where(np.arange(n_y) % 2 == 0, 1.0, -1.0)
        lam[0] *= 0.5
        lam[-1] *= 0.5
        qw = _cc_weights(n_y) * (b - a) * 0.5
        nodes.setflags(write=False)
        lam.setflags(write=False)
        qw.setflags(write=False)
        return cls(nodes, lam, qw)

    @property
    def n(self):
        return len(self.nodes)

    def cardinal(self, x):
        """Matrix of barycentric cardinal functions, rows indexed by points of x.

        Row i holds L_j(x_i); interpolation of nodal data v is cardinal(x) @ v.
        Exact node hits return the corresponding unit row.
        """
        x = np.atleast_1d(np.asarray(x, dtype=float))
        diff = x[:, None] - self.nodes[None, :]
        hit_rows, hit_cols = np.nonzero(diff == 0.0)
        with np.errstate(divide="ignore", invalid="ignore"):
            terms = self.bary_weights[None, :] / diff
            out = terms / terms.sum(axis=1)[:, None]
        if hit_rows.size:
            out[hit_rows] = 0.0
            out[hit_rows, hit_cols] = 1.0
        return out

    def interpolate(self, values, x):
        values = np.asarray(values)
        res = self.cardinal(x) @ values
        return res[0] if np.isscalar(x) or np.asarray(x).ndim == 0 else res


def _composite_weights(n_nodes, h):
    """Composite Simpson weights; a 3/8 block absorbs a leftover odd interval."""
    n_int = n_nodes - 1
    w = np.zeros(n_nodes)
    if n_int % 2 == 0:
        m = n_int
    else:
        m = n_int - 3
        w[-4:] += 3.0 * h / 8.0 * np.array([1.0, 3.0, 3.0, 1.0])
    if m > 0:
        w[0] += h / 3.0
        w[m] += h / 3.0
        w[1:m:2] += 4.0 * h / 3.0
        w[2:m:2] += 2.0 * h / 3.0
    return w


@dataclass(frozen=True)
class GridU:
    """Uniform grid on [0, 1] including endpoints, with composite quadrature weights."""

    nodes: np.ndarray
    quad_weights: np.ndarray

    @classmethod
    def build(cls, n_u: int) -> "GridU":
        if n_u < 5:
            raise ValueError("need at least 5 nodes")
        nodes = np.linspace(0.0, 1.0, n_u)
        w = _composite_weights(n_u, 1.0 / (n_u - 1))
        nodes.setflags(write=False)
        w.setflags(write=False)
        return cls(nodes, w)

    @property
    def n(self):
        return len(self.nodes)

    @property
    def h(self):
        return self.nodes[1] - self.nodes[0]


@dataclass
class GridFunction:
    """Complex-valued samples on Y (shape (n_y,)) or on Y x [0,1] (shape (n_y, n_u))."""

    domain: str  # "Y" or "Yt"
    values: np.ndarray
    grid_y: GridY
    grid_u: GridU | None = None

    def __post_init__(self):
        self.values = np.asarray(self.values)
        if self.domain == "Y":
            if self.values.shape != (self.grid_y.n,):
                raise ValueError("value array does not match the Y grid")
        elif self.domain == "Yt":
            if self.grid_u is None or self.values.shape != (self.grid_y.n, self.grid_u.n):
                raise ValueError("value array does not match the Y x U grid")
        else:
            raise ValueError(f"unknown domain tag {self.domain!r}")

    def copy(self):
        return GridFunction(self.domain, self.values.copy(), self.grid_y, self.grid_u)


def integrate_Y(g: GridFunction, density=None):
    """Clenshaw-Curtis integral over Y, optionally against a density h (giving d-mu)."""
    if g.domain != "Y":
        raise ValueError("integrate_Y needs a function on Y")
    w = g.grid_y.quad_weights
    if density is None:
        return complex(np.dot(w, g.values))
    return complex(np.dot(w * np.asarray(density), g.values))


def integrate_tilde(g: GridFunction, density):
    """Tensor quadrature of g over Y x [0,1] against mu x Lebesgue."""
    if g.domain != "Yt":
        raise ValueError("integrate_tilde needs a function on Y x [0,1]")
    wy = g.grid_y.quad_weights * np.asarray(density)
    return complex(wy @ g.values @ g.grid_u.quad_weights)


def fiber(g: GridFunction, u_index: int) -> GridFunction:
    """The u-slice v(., u_k) as a function on Y (view, not a copy)."""
    if g.domain != "Yt":
        raise ValueError("fiber needs a function on Y x [0,1]")
    if not 0 <= u_index < g.grid_u.n:
        raise IndexError("fiber index out of range")
    return GridFunction("Y", g.values[:, u_index], g.grid_y)


# --- the smooth bump chi on (0,1) and its flow-direction derivatives ---

_EXP_GUARD = 1.0 / 700.0  # below this, exp(-1/(u(1-u))) underflows to 0 anyway


@lru_cache(maxsize=1)
def _chi_normalizer():
    val, _ = quad(lambda u: np.exp(-1.0 / (u * (1.0 - u))), 0.0, 1.0, epsabs=1e-14, epsrel=1e-13)
    return val


@lru_cache(maxsize=16)
def _chi_lambdified(order):
    import sympy as sp

    u = sp.Symbol("u")
    expr = sp.exp(-1 / (u * (1 - u)))
    for _ in range(order):
        expr = sp.diff(expr, u)
    return sp.lambdify(u, expr, modules="numpy")


def chi_derivative(order, u):
    """d^j/du^j of the normalized bump exp(-1/(u(1-u)))/Z, zero outside (0,1)."""
    u = np.asarray(u, dtype=float)
    out = np.zeros_like(u)
    mask = (u > 0.0) & (u < 1.0) & (u * (1.0 - u) > _EXP_GUARD)
    if mask.any():
        out[mask] = _chi_lambdified(order)(u[mask]) / _chi_normalizer()
    return out


def chi_bump(u):
    """The normalized bump itself (integral 1 over [0,1])."""
    return chi_derivative(0, u)


@dataclass(frozen=True)
class ObservablePreset:
    """Separable observable v(y,u) = (a + b*y) * chi(u); affine y-parts keep the
    Monte Carlo kernel closed over a two-parameter family."""

    name: str
    a: float
    b: float
    zero_mean: bool = False  # subtract the mu-mean of the y-part at build time

    def y_part(self, y, y_mean=0.0):
        shift = y_mean if self.zero_mean else 0.0
        return self.a + self.b * np.asarray(y, dtype=float) - shift

    def on_grid(self, grid_y: GridY, grid_u: GridU, y_mean=0.0, derivative=0) -> GridFunction:
        vals = np.outer(self.y_part(grid_y.nodes, y_mean), chi_derivative(derivative, grid_u.nodes))
        return GridFunction("Yt", vals.astype(complex), grid_y, grid_u)


OBSERVABLE_PRESETS = {
    "ones": ObservablePreset("ones", 1.0, 0.0),
    "linear": ObservablePreset("linear", 0.0, 1.0),
    "linear_zero_mean": ObservablePreset("linear_zero_mean", 0.0, 1.0, zero_mean=True),
}
