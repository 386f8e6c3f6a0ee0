"""Test functions flat at the barrier edges and the symbolic action of P, Q, H.

A generated test function is

    phi(x) = exp(S(x)),  S = i p0 x / hbar - (x - c)^2 / 2 w^2 - sigma^2/(x-a)^2 - sigma^2/(x-b)^2

whose derivatives of every order vanish at x = a and x = b.  Applying P, Q
or H produces finite sums

    sum over regions r, envelope index e, order n of  poly_{r,e,n}(x) * phi_e^{(n)}(x)

with the regions x < a, a <= x <= b, x > b carrying V = 0, V0, 0.  Every
operator word therefore stays exact: no finite differences are involved.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import reduce

import numpy as np
from numpy.polynomial import polynomial as npoly

from .core import PhysicalConfig, energy_point
from .eigenfunctions import Eigenfunction, EigenfunctionId, _rates, prefactor
from .quadrature import gauss_legendre

REGIONS = (0, 1, 2)
SUPPORT_WIDTHS = 10.0


@dataclass(frozen=True)
class Envelope:
    """Analytic descriptor of one flattened, modulated Gaussian."""

    center: float
    width: float
    momentum: float
    sigma: float
    a: float
    b: float
    hbar: float = 1.0

    def __post_init__(self):
        if self.width <= 0 or self.sigma <= 0:
            raise ValueError("width and sigma must be positive")

    @property
    def support(self) -> tuple[float, float]:
        return self.center - SUPPORT_WIDTHS * self.width, self.center + SUPPORT_WIDTHS * self.width

    def _s_derivs(self, x, order):
        """S^{(j)}(x) for j = 1..order."""
        out = []
        da, db = x - self.a, x - self.b
        s2 = self.sigma**2
        for j in range(1, order + 1):
            flat = -s2 * (-1) ** j * math.factorial(j + 1) * (da ** (-2.0 - j) + db ** (-2.0 - j))
            if j == 1:
                term = 1j * self.momentum / self.hbar - (x - self.center) / self.width**2 + flat
            elif j == 2:
                term = -1.0 / self.width**2 + flat + 0j
            else:
                term = flat + 0j
            out.append(term)
        return out

    def derivatives(self, x, order: int) -> np.ndarray:
        """Rows phi^{(0)} .. phi^{(order)} at x (zero wherever phi underflows or x is a or b)."""
        x = np.asarray(x, dtype=float)
        out = np.zeros((order + 1,) + x.shape, dtype=complex)
        live = (x != self.a) & (x != self.b)
        xs = np.where(live, x, 0.5 * (self.a + self.b) + 1.0 + abs(self.b - self.a))
        with np.errstate(divide="ignore", over="ignore", invalid="ignore", under="ignore"):
            s = (1j * self.momentum * xs / self.hbar - (xs - self.center) ** 2 / (2 * self.width**2)
                 - self.sigma**2 / (xs - self.a) ** 2 - self.sigma**2 / (xs - self.b) ** 2)
            f0 = np.exp(s)
            live &= f0 != 0
            out[0] = f0
            if order:
                ds = self._s_derivs(xs, order)
                for n in range(1, order + 1):
                    out[n] = sum(math.comb(n - 1, j) * ds[j] * out[n - 1 - j] for j in range(n))
        out[:, ~live] = 0.0
        return out


def _region_mask(cfg: PhysicalConfig, x, region: int):
    if region == 0:
        return x < cfg.a
    if region == 1:
        return (x >= cfg.a) & (x <= cfg.b)
    return x > cfg.b


def _trim(c):
    c = np.asarray(c, dtype=complex)
    nz = np.nonzero(c)[0]
    return c[: nz[-1] + 1] if len(nz) else np.zeros(1, dtype=complex)


@dataclass(frozen=True)
class TestFunction:
    """Element of the test space, kept as a symbolic sum over edge-flat envelopes.

    ``terms`` maps (envelope index, region, derivative order) to ascending
    complex polynomial coefficients.
    """

    __test__ = False  # not a pytest class

    cfg: PhysicalConfig
    envelopes: tuple
    terms: dict = field(hash=False, compare=False)

    # ---- construction helpers -------------------------------------------------
    @classmethod
    def zero(cls, cfg: PhysicalConfig, envelopes=()) -> "TestFunction":
        return cls(cfg, tuple(envelopes), {})

    @property
    def support(self) -> tuple[float, float]:
        if not self.envelopes:
            return self.cfg.a, self.cfg.b
        lo = min(e.support[0] for e in self.envelopes)
        hi = max(e.support[1] for e in self.envelopes)
        return lo, hi

    @property
    def max_order(self) -> int:
        return max((n for (_, _, n) in self.terms), default=0)

    def _map(self, fn) -> "TestFunction":
        new = {}
        for key, c in self.terms.items():
            for nkey, nc in fn(key, c):
                new[nkey] = npoly.polyadd(new.get(nkey, np.zeros(1, dtype=complex)), nc)
        return TestFunction(self.cfg, self.envelopes, {k: _trim(v) for k, v in new.items() if np.any(v)})

    # ---- algebra --------------------------------------------------------------
    def __add__(self, other: "TestFunction") -> "TestFunction":
        if not isinstance(other, TestFunction):
            return NotImplemented
        envs = list(self.envelopes)
        index = {}
        for i, env in enumerate(other.envelopes):
            if env in envs:
                index[i] = envs.index(env)
            else:
                envs.append(env)
                index[i] = len(envs) - 1
        new = dict(self.terms)
        for (e, r, n), c in other.terms.items():
            key = (index[e], r, n)
            new[key] = _trim(npoly.polyadd(new.get(key, np.zeros(1, dtype=complex)), c))
        return TestFunction(self.cfg, tuple(envs), new)

    def __mul__(self, scalar) -> "TestFunction":
        return TestFunction(self.cfg, self.envelopes, {k: _trim(c * complex(scalar)) for k, c in self.terms.items()})

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-other)

    def times_x(self) -> "TestFunction":
        return self._map(lambda key, c: [(key, npoly.polymulx(c))])

    def d(self) -> "TestFunction":
        """Exact x-derivative of every term."""
        def rule(key, c):
            e, r, n = key
            return [((e, r, n), npoly.polyder(c)), ((e, r, n + 1), c)]
        return self._map(rule)

    def times_potential(self) -> "TestFunction":
        return self._map(lambda key, c: [(key, c * (self.cfg.v0 if key[1] == 1 else 0.0))])

    # ---- evaluation -----------------------------------------------------------
    def region_value(self, x, region: int):
        """Value of the region-``region`` expression at x, ignoring the region mask."""
        x = np.asarray(x, dtype=float)
        out = np.zeros(x.shape, dtype=complex)
        for ei, env in enumerate(self.envelopes):
            keys = [k for k in self.terms if k[0] == ei and k[1] == region]
            if not keys:
                continue
            ders = env.derivatives(x, max(k[2] for k in keys))
            for k in keys:
                out += npoly.polyval(x, self.terms[k]) * ders[k[2]]
        return out

    def __call__(self, x):
        scalar = np.ndim(x) == 0
        x = np.atleast_1d(np.asarray(x, dtype=float))
        out = np.zeros(x.shape, dtype=complex)
        for r in REGIONS:
            mask = _region_mask(self.cfg, x, r)
            if np.any(mask):
                out[mask] = self.region_value(x[mask], r)
        return complex(out[0]) if scalar else out

    def derivative(self, x):
        return self.d()(x)


def make_test_function(cfg: PhysicalConfig, center: float = -3.0, width: float = 1.0, momentum: float = 0.0,
                       sigma: float | None = None, amplitude: complex = 1.0) -> TestFunction:
    """Flattened, modulated Gaussian; ``sigma`` defaults to 0.1 (b - a)."""
    if sigma is None:
        sigma = 0.1 * cfg.width
    env = Envelope(center, width, momentum, sigma, cfg.a, cfg.b, cfg.hbar)
    one = np.array([complex(amplitude)])
    return TestFunction(cfg, (env,), {(0, r, 0): one.copy() for r in REGIONS})


def apply_operator(cfg: PhysicalConfig, phi: TestFunction, which: str) -> TestFunction:
    """Q phi = x phi, P phi = -i hbar phi', H phi = -(hbar^2/2m) phi'' + V phi."""
    if which == "Q":
        return phi.times_x()
    if which == "P":
        return phi.d() * (-1j * cfg.hbar)
    if which == "H":
        return phi.d().d() * (-(cfg.hbar**2) / (2 * cfg.m)) + phi.times_potential()
    raise ValueError(f"unknown operator {which!r}; expected P, Q or H")


def apply_word(cfg: PhysicalConfig, phi: TestFunction, word: str) -> TestFunction:
    """Operator product, e.g. "PQH" is P(Q(H phi))."""
    return reduce(lambda f, op: apply_operator(cfg, f, op), reversed(word), phi)


def x_rule(cfg: PhysicalConfig, window: tuple[float, float], k_max: float | None = None, order: int = 20,
           edge_panel: float = 0.05):
    """Composite Gauss-Legendre nodes/weights on ``window``.

    Panels are refined to ``edge_panel`` within one unit of a and b, where
    the flattening factors vary fastest, and resolve e^{i k_max x} elsewhere.
    """
    panel = 0.5 if k_max is None else min(0.5, 1.5 * 2 * np.pi / k_max)
    lo, hi = window
    cuts = sorted({lo, hi, *[p for p in (cfg.a - 1, cfg.a, cfg.a + 1, cfg.b - 1, cfg.b, cfg.b + 1) if lo < p < hi]})
    nodes, weights = [], []
    for left, right in zip(cuts[:-1], cuts[1:]):
        near = min(abs(left - cfg.a), abs(left - cfg.b), abs(right - cfg.a), abs(right - cfg.b),
                   abs(0.5 * (left + right) - cfg.a), abs(0.5 * (left + right) - cfg.b)) < 1.0
        xs, ws = gauss_legendre(left, right, panel=min(panel, edge_panel) if near else panel, order=order)
        nodes.append(xs)
        weights.append(ws)
    return np.concatenate(nodes), np.concatenate(weights)


def padded_window(window, pad: float = 0.25):
    lo, hi = window
    extra = pad * (hi - lo)
    return lo - extra, hi + extra


@dataclass(frozen=True)
class NormIndex:
    n: int = 0
    m: int = 0
    l: int = 0

    def __post_init__(self):
        for name in ("n", "m", "l"):
            v = getattr(self, name)
            if not 0 <= v <= 2:
                raise ValueError(f"norm index {name}={v} outside 0..2")


def l2_norm(cfg: PhysicalConfig, phi: TestFunction, window=None) -> float:
    xs, ws = x_rule(cfg, window or phi.support)
    return math.sqrt(float(np.sum(ws * np.abs(phi(xs)) ** 2)))


def norm_nml(cfg: PhysicalConfig, phi: TestFunction, idx: NormIndex) -> float:
    """|| P^n Q^m H^l phi || in L^2."""
    return l2_norm(cfg, apply_word(cfg, phi, "P" * idx.n + "Q" * idx.m + "H" * idx.l), phi.support)


COMMUTATORS = ("QP", "HQ", "HP", "HnQ", "QnP", "HnP")


def commutator_check(cfg: PhysicalConfig, phi: TestFunction, pair: str, n: int = 1, grid=None) -> float:
    """Max-norm residual of a canonical commutation relation applied to phi.

    ``pair`` is one of QP, HQ, HP, HnQ, QnP, HnP; the last three use power ``n``.
    """
    if pair not in COMMUTATORS:
        raise ValueError(f"pair must be one of {COMMUTATORS}")
    if not 1 <= n <= 2:
        raise ValueError("powers are limited to n in {1, 2}")
    ih = 1j * cfg.hbar
    word = {"QP": ("Q", "P"), "HQ": ("H", "Q"), "HP": ("H", "P"),
            "HnQ": ("H" * n, "Q"), "QnP": ("Q" * n, "P"), "HnP": ("H" * n, "P")}[pair]
    comm = apply_word(cfg, phi, word[0] + word[1]) - apply_word(cfg, phi, word[1] + word[0])
    if pair == "QP":
        expected = phi * ih
    elif pair in ("HQ", "HnQ"):
        k = 1 if pair == "HQ" else n
        expected = apply_word(cfg, phi, "P" + "H" * (k - 1)) * (-k * ih / cfg.m)
    elif pair == "QnP":
        expected = apply_word(cfg, phi, "Q" * (n - 1)) * (n * ih)
    else:
        expected = phi * 0.0
    if grid is None:
        lo, hi = phi.support
        grid = np.linspace(lo, hi, 4001)
    return float(np.max(np.abs(comm(grid) - expected(grid))))


def edge_values(cfg: PhysicalConfig, phi: TestFunction, orders=(0, 1, 2), offset: float = 0.0) -> np.ndarray:
    """One-sided values of phi^{(j)} at a and b from each adjacent region's expression.

    Rows follow ``orders``; columns are (a-, a+, b-, b+).  ``offset`` moves the
    evaluation points off the edges, e.g. to probe approach to the limit.
    """
    out = np.zeros((len(orders), 4), dtype=complex)
    f = phi
    for row in range(max(orders) + 1):
        if row in orders:
            i = list(orders).index(row)
            out[i] = [f.region_value(np.array([cfg.a - offset]), 0)[0], f.region_value(np.array([cfg.a + offset]), 1)[0],
                      f.region_value(np.array([cfg.b - offset]), 1)[0], f.region_value(np.array([cfg.b + offset]), 2)[0]]
        f = f.d()
    return out


@dataclass(frozen=True)
class FunctionalBound:
    lhs: float
    rhs: float
    sup_chi: float

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs


def _sup_chi_bound(cfg: PhysicalConfig, family: str, side: str, e: float) -> float:
    """Upper bound on sup_x |chi(x; E)| for real E > 0 from the piecewise amplitudes."""
    f = Eigenfunction(cfg, EigenfunctionId(family, side, energy_point(cfg, e)))
    cs = f.coefficients
    _, w = _rates(family, cs)
    grow = max(abs(np.exp(w * cfg.a)), abs(np.exp(w * cfg.b)))
    shrink = max(abs(np.exp(-w * cfg.a)), abs(np.exp(-w * cfg.b)))
    if side == "left":
        outer = max(1 + abs(cs.r_l), abs(cs.t))
        mid = abs(cs.a_l) * grow + abs(cs.b_l) * shrink
    else:
        outer = max(1 + abs(cs.r_r), abs(cs.t))
        mid = abs(cs.a_r) * grow + abs(cs.b_r) * shrink
    return float(abs(prefactor(cfg, cs.k)) * max(outer, mid))


def functional_bound_check(cfg: PhysicalConfig, phi: TestFunction, e: float, family: str = "plus",
                           side: str = "left") -> FunctionalBound:
    """|<phi|chi>| against sup|chi| sqrt(pi/2) (||phi|| + ||Q^2 phi||).

    The right side follows from |phi| = (1 + x^2)^{-1} (1 + x^2) |phi| and
    Cauchy-Schwarz, with ||(1 + x^2)^{-1}|| = sqrt(pi/2).
    """
    if family not in ("plus", "minus") or not e > 0:
        raise ValueError("the bound is stated for plus/minus eigenfunctions at real E > 0")
    sup = _sup_chi_bound(cfg, family, side, e)
    if not phi.terms:
        return FunctionalBound(0.0, 0.0, sup)
    chi_f = Eigenfunction(cfg, EigenfunctionId(family, side, energy_point(cfg, e)))
    k = abs(energy_point(cfg, e).k)
    xs, ws = x_rule(cfg, phi.support, k_max=max(k, abs(phi.envelopes[0].momentum) / cfg.hbar, 1.0))
    lhs = abs(np.sum(ws * phi(xs) * np.conj(chi_f(xs))))
    rhs = sup * math.sqrt(math.pi / 2) * (l2_norm(cfg, phi) + norm_nml(cfg, phi, NormIndex(0, 2, 0)))
    return FunctionalBound(float(lhs), float(rhs), sup)
