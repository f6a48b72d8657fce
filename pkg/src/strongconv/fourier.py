"""Fourier-series side: partial sums on a grid, C and L^p metrics, the
S(Lambda^r) functionals and norms, and the grouped-pair machinery behind the
Denjoy-Luzin type statements.

A series is always handled through its coefficients.  With a zero tail the
function is the trig polynomial ``f = s_D(f)``; with a ``DecayBound`` tail the
unknown coefficients past ``D`` satisfy ``|a_k| + |b_k| <= c / k**q`` and the
functions in :func:`tail_error_bound` give rigorous error bars.

L^p norms are unnormalised (``int_0^{2 pi}``, no ``1/(2 pi)``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Union

import numpy as np

from ._supremum import LaggedPrefix, check_finite
from .errors import GridMismatch, InvalidC, RejectedSpec, ScheduleTooShort
from .results import REL_TOL, Estimate, InequalityCheck
from .sequences import _check_n, _check_r, _lag, _residue_indices
from .weights import LambdaWeights

TWO_PI = 2.0 * math.pi
MIN_GRID = 512
GOLDEN_C = (math.sqrt(5.0) - 1.0) / 2.0


# -- series ----------------------------------------------------------------------

@dataclass(frozen=True)
class ZeroTail:
    pass


@dataclass(frozen=True)
class DecayBound:
    """Envelope ``|a_k| + |b_k| <= c / k**q`` for the coefficients past the list."""

    c: float
    q: float

    def __post_init__(self):
        if not self.q > 1:
            raise RejectedSpec(f"decay bound needs q > 1 for a summable tail, got {self.q!r}")
        if not self.c >= 0:
            raise RejectedSpec(f"decay bound needs c >= 0, got {self.c!r}")

    def tail_sum(self, N: int) -> float:
        """Upper bound for ``sum_{k>N} c / k**q``."""
        if N >= 1:
            return self.c * N ** (1.0 - self.q) / (self.q - 1.0)
        return self.c * self.q / (self.q - 1.0)

    def envelope(self, k):
        return self.c / np.power(np.asarray(k, dtype=np.float64), self.q)


def _coeff_tuple(v):
    arr = np.atleast_1d(np.asarray(v))
    if arr.size and np.iscomplexobj(arr) and not np.any(arr.imag):
        arr = arr.real
    return tuple(arr.tolist())


@dataclass(frozen=True)
class TrigSeries:
    """``a0/2 + sum_{k=1}^{D} (a_k cos kt + b_k sin kt)`` plus a tail rule."""

    a0: complex = 0.0
    a: tuple = ()
    b: tuple = ()
    tail: Union[ZeroTail, DecayBound] = field(default_factory=ZeroTail)

    def __post_init__(self):
        a, b = _coeff_tuple(self.a), _coeff_tuple(self.b)
        D = max(len(a), len(b))
        a = a + (0.0,) * (D - len(a))
        b = b + (0.0,) * (D - len(b))
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        a0 = complex(self.a0)
        object.__setattr__(self, "a0", a0.real if a0.imag == 0 else a0)

    @property
    def degree(self) -> int:
        return len(self.a)

    @property
    def exact(self) -> bool:
        return isinstance(self.tail, ZeroTail)

    @property
    def tau(self) -> float:
        """Bound for ``sum_{k>D} (|a_k| + |b_k|)``; zero for a trig polynomial."""
        return 0.0 if self.exact else self.tail.tail_sum(self.degree)

    @property
    def is_cosine(self) -> bool:
        return not any(self.b)

    @property
    def is_sine(self) -> bool:
        return not any(self.a) and self.a0 == 0

    def single_coefficients(self) -> np.ndarray:
        """The coefficient list of a one-sided series: cosine unless it is pure sine."""
        if self.is_sine and any(self.b):
            return np.asarray(self.b)
        return np.asarray(self.a)

    def scaled(self, alpha) -> "TrigSeries":
        return TrigSeries(alpha * self.a0, tuple(alpha * np.asarray(self.a)),
                          tuple(alpha * np.asarray(self.b)), self.tail)

    def __add__(self, other: "TrigSeries") -> "TrigSeries":
        D = max(self.degree, other.degree)

        def pad(v):
            return np.concatenate([np.asarray(v), np.zeros(D - len(v))])

        if not (self.exact and other.exact):
            raise RejectedSpec("only zero-tail series can be added exactly")
        return TrigSeries(self.a0 + other.a0, tuple(pad(self.a) + pad(other.a)),
                          tuple(pad(self.b) + pad(other.b)))


def partial_sums(F: TrigSeries, n_max: int, t) -> np.ndarray:
    """Rows ``s_0(f, t) .. s_{n_max}(f, t)``; rows past the degree repeat ``s_D``."""
    t = np.atleast_1d(np.asarray(t, dtype=np.float64))
    n_max = _check_n(n_max)
    D = min(F.degree, n_max)
    terms = np.empty((D + 1, t.size), dtype=np.result_type(F.a0, *F.a[:D], *F.b[:D], 1.0))
    terms[0] = F.a0 / 2.0
    if D:
        k = np.arange(1, D + 1)[:, None]
        kt = k * t[None, :]
        a = np.asarray(F.a[:D])[:, None]
        b = np.asarray(F.b[:D])[:, None]
        terms[1:] = a * np.cos(kt) + b * np.sin(kt)
    S = np.cumsum(terms, axis=0)
    if n_max > D:
        S = np.concatenate([S, np.repeat(S[-1:], n_max - D, axis=0)])
    return S


def partial_sum(F: TrigSeries, n: int, t):
    """``s_n(f, t) = a0/2 + sum_{k<=min(n, D)} (a_k cos kt + b_k sin kt)``."""
    scalar = np.ndim(t) == 0
    out = partial_sums(F, n, t)[-1]
    return out[0] if scalar else out


# -- metrics ---------------------------------------------------------------------

@dataclass(frozen=True)
class CMetric:
    """Maximum over the uniform grid ``t_j = 2 pi j / grid_points``.

    A lower bound of the true sup norm, tight for trig polynomials once the
    grid has at least 16 points per unit of degree.
    """

    grid_points: int = MIN_GRID

    @property
    def factor(self) -> float:
        return 1.0

    def grid(self) -> np.ndarray:
        return TWO_PI * np.arange(self.grid_points) / self.grid_points

    def reduce_rows(self, x) -> np.ndarray:
        return np.max(np.abs(x), axis=-1)

    def spec_string(self) -> str:
        return f"C:grid={self.grid_points}"


@dataclass(frozen=True)
class LpMetric:
    """Periodic rectangle rule ``(2 pi / G * sum_j |g(t_j)|**p) ** (1/p)``."""

    p: float = 2.0
    grid_points: int = MIN_GRID

    def __post_init__(self):
        if not self.p >= 1:
            raise RejectedSpec(f"L^p metric needs p >= 1, got {self.p!r}")

    @property
    def factor(self) -> float:
        """``(2 pi) ** (1/p)``: the L^p norm of the constant 1."""
        return TWO_PI ** (1.0 / self.p)

    def grid(self) -> np.ndarray:
        return TWO_PI * np.arange(self.grid_points) / self.grid_points

    def reduce_rows(self, x) -> np.ndarray:
        x = np.abs(x)
        scale = np.max(x, axis=-1, keepdims=True)
        safe = np.where(scale > 0, scale, 1.0)
        m = np.mean((x / safe) ** self.p, axis=-1)
        return scale[..., 0] * (TWO_PI * m) ** (1.0 / self.p)

    def spec_string(self) -> str:
        return f"Lp:p={self.p!r},grid={self.grid_points}"


MetricSpec = Union[CMetric, LpMetric]


def metric_norm(g, m: MetricSpec) -> float:
    """Metric norm of grid samples ``g(t_j)``."""
    g = np.asarray(g)
    if g.shape != (m.grid_points,):
        raise GridMismatch(f"expected {m.grid_points} samples, got shape {g.shape}")
    return float(m.reduce_rows(g[None])[0])


def _check_grid(F: TrigSeries, m: MetricSpec):
    need = max(MIN_GRID, 16 * F.degree)
    if m.grid_points < need:
        raise RejectedSpec(f"grid of {m.grid_points} points is too coarse for degree "
                           f"{F.degree}; need at least {need}")


# -- membership functionals ---------------------------------------------------------

def _lam(w, n):
    lam = w.values(n)
    check_finite(lam, "weight")
    return lam


def _col(v):
    return np.asarray(v)[:, None]


def s_lambda_r_functional(F: TrigSeries, w: LambdaWeights, r: int, n: int, m: MetricSpec) -> float:
    """``|| (1/lambda_n) sum_{k<=n} |lambda_k (s_k - f) - lambda_{k-r} (s_{k-r} - f)| ||``.

    Terms vanish for ``k >= D + r``, so only those below are summed.
    """
    r, n = _check_r(r), _check_n(n)
    _check_grid(F, m)
    t = m.grid()
    top = min(n, F.degree + r - 1)
    S = partial_sums(F, max(top, F.degree), t)
    f = S[F.degree]
    lam = _lam(w, n)
    x = _col(lam[: top + 1]) * (S[: top + 1] - f)
    terms = np.abs(x - _lag(x, r))
    total = np.sum(terms.astype(np.longdouble), axis=0)
    return metric_norm((total / lam[n]).astype(np.float64), m)


def _norm_prefix(F, w, r, m, seq_rows):
    """LaggedPrefix for a partial-sum-like row sequence constant from row D on."""
    D = F.degree
    H = D + r
    rows = seq_rows(H - 1)
    lam = _lam(w, H - 1)
    x = _col(lam) * rows
    head = np.abs(x - _lag(x, r))
    q = np.repeat(np.abs(rows[D])[None], r, axis=0)
    return LaggedPrefix(head, w, r, tail=q, reduce=m.reduce_rows)


def s_lambda_r_norm(F: TrigSeries, w: LambdaWeights, r: int, m: MetricSpec,
                    n_max: Optional[int] = None) -> Estimate:
    """``sup_n || (1/lambda_n) sum_{k<=n} |lambda_k s_k - lambda_{k-r} s_{k-r}| ||``.

    For a trig polynomial the partial sums are constant from ``D`` on, which
    gives a certified supremum.  ``DecayBound`` series are scanned up to
    ``n_max`` on the truncation and carry an error bar.
    """
    r = _check_r(r)
    _check_grid(F, m)
    t = m.grid()
    lp = _norm_prefix(F, w, r, m, lambda top: partial_sums(F, top, t))
    if F.exact:
        return lp.sup(cap=1 << 16, chunk=256)
    n_max = 4 * F.degree if n_max is None else int(n_max)
    est = lp.scheduled_sup(n_max)
    err = max(tail_error_bound(F, w, r, n, m, "norm") for n in range(n_max + 1))
    return Estimate(est.value, est.attained_at, exact=False, error_bound=err)


def condition_iv_functional(F: TrigSeries, w: LambdaWeights, r: int, n: int, m: MetricSpec) -> float:
    """``|| (1/lambda_n) sum_{k=r}^{n} lambda_{k-r} |s_k - s_{k-r}| ||``."""
    r, n = _check_r(r), _check_n(n)
    if n < r:
        raise ScheduleTooShort(f"condition (iv) needs n >= r, got n={n}, r={r}")
    _check_grid(F, m)
    top = min(n, F.degree + r - 1)
    S = partial_sums(F, max(top, F.degree), m.grid())[: top + 1]
    lam = _lam(w, n)
    terms = _col(_lag(lam[: top + 1], r)) * np.abs(S - _lag(S, r))
    total = np.sum(terms[r:].astype(np.longdouble), axis=0)
    return metric_norm((total / lam[n]).astype(np.float64), m)


def sigma_mean_function(F: TrigSeries, w: LambdaWeights, r: int, n: int, grid) -> np.ndarray:
    """``sigma_n(f, t) = (1/lambda_n) sum_{k = n mod r, k<=n} (lambda_k - lambda_{k-r}) s_k(f, t)``.

    ``grid`` is a metric (its grid is used) or an array of angles.
    """
    r, n = _check_r(r), _check_n(n)
    t = grid.grid() if hasattr(grid, "grid") else np.atleast_1d(np.asarray(grid, dtype=float))
    k = np.arange(n % r, n + 1, r)
    lam = w.take(k).astype(np.longdouble)
    check_finite(lam, "weight")
    c = lam - w.take(k - r).astype(np.longdouble)
    D = F.degree
    S = partial_sums(F, min(n, D), t)
    low = k <= D
    acc = np.sum(_col(c[low]) * S[k[low]].astype(np.clongdouble), axis=0)
    if np.any(~low):
        acc = acc + np.sum(c[~low]) * S[D].astype(np.clongdouble)
    out = acc / lam[-1]
    if not np.iscomplexobj(S):
        out = out.real
    return out.astype(np.complex128 if np.iscomplexobj(S) else np.float64)


def sigma_deviation(F: TrigSeries, w: LambdaWeights, r: int, n: int, m: MetricSpec) -> float:
    """``|| sigma_n(f) - f ||``."""
    _check_grid(F, m)
    f = partial_sums(F, F.degree, m.grid())[-1]
    return metric_norm(sigma_mean_function(F, w, r, n, m) - f, m)


def partial_sum_deviation(F: TrigSeries, n: int, m: MetricSpec) -> float:
    """``|| s_n(f) - f ||``."""
    _check_grid(F, m)
    S = partial_sums(F, max(F.degree, n), m.grid())
    return metric_norm(S[n] - S[F.degree], m)


def u_norm(F: TrigSeries, m: MetricSpec) -> Estimate:
    """``sup_k || s_k(f) ||`` (the U or U^p norm)."""
    _check_grid(F, m)
    vals = m.reduce_rows(partial_sums(F, F.degree, m.grid()))
    i = int(np.argmax(vals))
    return Estimate(float(vals[i]), i, exact=F.exact, error_bound=None if F.exact else F.tau * m.factor)


def a_norm(F: TrigSeries) -> float:
    """``|a0|/2 + sum_k (|a_k| + |b_k|)`` (plus the tail bound for DecayBound)."""
    return float(abs(F.a0) / 2 + np.sum(np.abs(F.a)) + np.sum(np.abs(F.b)) + F.tau)


@dataclass(frozen=True)
class FourierNormChain:
    u: Estimate
    s_r: Estimate
    s_1: Estimate
    a: float
    r: int
    links: tuple

    @property
    def passed(self) -> bool:
        return all(link.passed for link in self.links)


def fourier_norm_chain(F: TrigSeries, w: LambdaWeights, r: int, m: MetricSpec) -> FourierNormChain:
    """``||f||_U <= ||f||_{S(Lambda^r)} <= r ||f||_{S(Lambda)} <= 2r c_m ||f||_A``.

    ``c_m`` is the metric's measure factor (1 for C, ``(2 pi)^(1/p)`` for L^p).
    """
    if not F.exact:
        raise RejectedSpec("the norm chain needs a zero-tail series")
    u = u_norm(F, m)
    s_r = s_lambda_r_norm(F, w, r, m)
    s_1 = s_lambda_r_norm(F, w, 1, m)
    a = a_norm(F)
    links = (
        InequalityCheck.compare(u.value, s_r.value),
        InequalityCheck.compare(s_r.value, r * s_1.value),
        InequalityCheck.compare(r * s_1.value, 2 * r * m.factor * a),
    )
    return FourierNormChain(u, s_r, s_1, a, r, links)


@dataclass(frozen=True)
class C2Remainder:
    cut: int
    norm: Estimate
    bound: float
    passed: bool


def thm_c2_remainder(F: TrigSeries, w: LambdaWeights, r: int, m: MetricSpec, cut: int) -> C2Remainder:
    """``|| s_cut(f) - f ||_{S(Lambda^r)}`` and the bound

    ``r || sup_{j,k > cut-r} |s_j - s_k| || + sup_{n > cut} || (1/lambda_n) sum_{k=cut+1}^{n} lambda_{k-r} |s_k - s_{k-r}| ||``.

    The remainder's partial sums are ``0`` up to ``cut`` and ``s_k - s_cut`` after.
    In the C metric the first term equals ``r sup_{j,k} ||s_j - s_k||_C``.
    """
    r, cut = _check_r(r), _check_n(cut)
    if not F.exact:
        raise RejectedSpec("the remainder needs a zero-tail series")
    _check_grid(F, m)
    t = m.grid()
    D = F.degree
    top = max(D, cut) + r
    S = partial_sums(F, top, t)

    def rows(h):
        u = S[: h + 1] - S[cut]
        u[: cut + 1] = 0.0
        return u

    norm = _norm_prefix(F, w, r, m, rows).sup(cap=1 << 16, chunk=256)

    lo = min(max(cut - r + 1, 0), D)
    block = S[lo: D + 1]
    if cut - r + 1 < 0:
        block = np.concatenate([np.zeros((1, t.size), dtype=block.dtype), block])
    spread = np.zeros(t.size)
    for row in block:
        spread = np.maximum(spread, np.max(np.abs(block - row[None]), axis=0))
    first = r * metric_norm(spread, m)

    last = max(cut + 1, D + r - 1)
    S2 = partial_sums(F, last, t)
    lam = _lam(w, last)
    terms = _col(_lag(lam, r)) * np.abs(S2 - _lag(S2, r))
    terms[: cut + 1] = 0.0
    csum = np.cumsum(terms.astype(np.longdouble), axis=0)
    ratios = m.reduce_rows((csum / _col(lam).astype(np.longdouble)).astype(np.float64))
    second = float(np.max(ratios[cut + 1:]))

    bound = first + second
    ub = norm.value + (norm.error_bound or 0.0)
    return C2Remainder(cut, norm, bound, bool(ub <= bound * (1 + REL_TOL)))


# -- Denjoy-Luzin machinery -----------------------------------------------------------

class GroupedPair(NamedTuple):
    value: float
    rho: float
    phase: float
    degenerate: bool


DEGENERATE_RHO = 1e-14


def _pair(a_odd, a_even, k, t, kind):
    c, s = math.cos(t), math.sin(t)
    x = a_odd + a_even * c
    y = a_even * s
    rho = math.hypot(x, y)
    arg_odd, arg_even = (2 * k - 1) * t, 2 * k * t
    if kind == "cos":
        value = a_odd * math.cos(arg_odd) + a_even * math.cos(arg_even)
    else:
        value = a_odd * math.sin(arg_odd) + a_even * math.sin(arg_even)
    if rho < DEGENERATE_RHO:
        return GroupedPair(value, rho, 0.0, True)
    return GroupedPair(value, rho, math.atan2(y, x), False)


def _kind(F: TrigSeries, kind):
    if kind is not None:
        if kind not in ("cos", "sin"):
            raise RejectedSpec(f"kind must be 'cos' or 'sin', got {kind!r}")
        return kind
    if F.is_cosine:
        return "cos"
    if F.is_sine:
        return "sin"
    raise RejectedSpec("grouped pairs need a pure cosine or pure sine series")


def grouped_pair(F: TrigSeries, k: int, t: float, kind: Optional[str] = None) -> GroupedPair:
    """Pair ``a_{2k-1} cos((2k-1)t) + a_{2k} cos(2kt)`` (or the sine analogue).

    Returns the value, ``rho = sqrt(a_{2k-1}^2 + a_{2k}^2 + 2 a_{2k-1} a_{2k} cos t)``
    and the phase ``atan2(a_{2k} sin t, a_{2k-1} + a_{2k} cos t)``, so that the
    value equals ``rho cos((2k-1)t + phase)`` (``rho sin(...)`` for sines).
    With ``rho < 1e-14`` the phase is undefined: it is reported as 0 and
    ``degenerate`` is set.
    """
    kind = _kind(F, kind)
    coeffs = np.asarray(F.b if kind == "sin" else F.a)
    if np.iscomplexobj(coeffs):
        raise RejectedSpec("grouped pairs need real coefficients")
    if k < 1 or 2 * k > len(coeffs):
        raise RejectedSpec(f"pair index k={k} needs 2k <= degree {len(coeffs)}")
    return _pair(float(coeffs[2 * k - 2]), float(coeffs[2 * k - 1]), k, float(t), kind)


def pair_identity_residual(gp: GroupedPair, k: int, t: float, kind: str = "cos") -> float:
    """``|value - rho cos((2k-1)t + phase)|`` (or sine); ``|value|`` when degenerate."""
    if gp.degenerate:
        return abs(gp.value)
    trig = math.cos if kind == "cos" else math.sin
    return abs(gp.value - gp.rho * trig((2 * k - 1) * t + gp.phase))


def dl_functional(F: TrigSeries, w: LambdaWeights, n: int, variant: str = "single") -> float:
    """``(1/lambda_n) sum_{k=1}^{n} lambda_{k-1} (|a_k| + |b_k|)`` (``pair``) or
    ``(1/lambda_n) sum_{k=1}^{n} lambda_{k-1} |a_k|`` (``single``).

    Coefficients past the list count as zero; see :func:`dl_error_bound`.
    """
    n = _check_n(n)
    if n < 1:
        raise RejectedSpec("the Denjoy-Luzin functional needs n >= 1")
    if variant == "single":
        mag = np.abs(F.single_coefficients())
    elif variant == "pair":
        mag = np.abs(np.asarray(F.a)) + np.abs(np.asarray(F.b))
    else:
        raise RejectedSpec(f"variant must be 'single' or 'pair', got {variant!r}")
    top = min(n, len(mag))
    lam = _lam(w, n)
    total = np.sum((lam[:top] * mag[:top]).astype(np.longdouble))
    return float(total / lam[n])


def dl_error_bound(F: TrigSeries, w: LambdaWeights, n: int) -> float:
    """Bound on the contribution of unknown coefficients ``D < k <= n``."""
    if F.exact or n <= F.degree:
        return 0.0
    k = np.arange(F.degree + 1, n + 1)
    lam = _lam(w, n)
    return float(np.sum(lam[k - 1] * F.tail.envelope(k)) / lam[n])


def dlp2_sufficiency_check(F: TrigSeries, w: LambdaWeights, n: int, p: float,
                           grid_points: Optional[int] = None) -> InequalityCheck:
    """``|| (1/lambda_n) sum_{k=2}^{n} lambda_{k-2} |s_k - s_{k-2}| ||_p <= 2 (2 pi)^(1/p) DL_single(n)``.

    The ``(2 pi)^(1/p)`` factor turns the pointwise bound
    ``|s_k - s_{k-2}| <= |a_{k-1}| + |a_k|`` into the unnormalised L^p norm.
    """
    if not (F.is_cosine or F.is_sine):
        raise RejectedSpec("the sufficiency check needs a pure cosine or pure sine series")
    m = LpMetric(p, grid_points or max(MIN_GRID, 16 * F.degree))
    lhs = condition_iv_functional(F, w, 2, n, m)
    rhs = 2.0 * m.factor * dl_functional(F, w, n, "single")
    return InequalityCheck.compare(lhs, rhs, 1e-8)


@dataclass(frozen=True)
class DL2Sums:
    t: np.ndarray
    sums: np.ndarray
    lower_bound: Optional[InequalityCheck] = None
    admissible_points: int = 0


def dl2_group_sums(F: TrigSeries, grid, K: int, C: Optional[float] = None) -> DL2Sums:
    """``sum_{k<=K} (|cosine pair| + |sine pair|)`` at each grid angle.

    The coefficients of ``F`` (pure cosine or pure sine) are used for both the
    cosine series and its sine twin.  With ``C`` given, also checks
    ``rho_k(t) >= C (|a_{2k-1}| + |a_{2k}|)`` and the same for the pair sum
    wherever ``|cos t| <= 1 - C - C^2``; the check reports the smallest
    ``lhs - rhs`` margin as ``lhs`` against ``rhs = 0``.
    """
    coeffs = np.asarray(F.single_coefficients(), dtype=np.float64)
    if K < 1 or 2 * K > len(coeffs):
        raise RejectedSpec(f"K={K} needs 2K <= degree {len(coeffs)}")
    t = grid.grid() if hasattr(grid, "grid") else np.atleast_1d(np.asarray(grid, dtype=float))
    k = np.arange(1, K + 1)[:, None]
    a_odd = coeffs[0: 2 * K: 2][:, None]
    a_even = coeffs[1: 2 * K: 2][:, None]
    odd, even = (2 * k - 1) * t[None], 2 * k * t[None]
    cos_pair = a_odd * np.cos(odd) + a_even * np.cos(even)
    sin_pair = a_odd * np.sin(odd) + a_even * np.sin(even)
    alpha = np.abs(cos_pair) + np.abs(sin_pair)
    sums = alpha.sum(axis=0)
    if C is None:
        return DL2Sums(t, sums)
    if not 0 < C < GOLDEN_C:
        raise InvalidC(f"C must lie in (0, {GOLDEN_C:.6f}), got {C!r}")
    mask = np.abs(np.cos(t)) <= 1 - C - C * C
    if not np.any(mask):
        raise InvalidC(f"no grid angle satisfies |cos t| <= 1 - C - C^2 for C={C!r}")
    rho = np.hypot(a_odd + a_even * np.cos(t[None]), a_even * np.sin(t[None]))
    target = C * (np.abs(a_odd) + np.abs(a_even))
    margin = min(np.min((rho - target)[:, mask]), np.min((alpha - target)[:, mask]))
    scale = float(np.max(target)) if target.size else 0.0
    check = InequalityCheck(float(-margin), 0.0, bool(margin >= -1e-12 * max(scale, 1.0)))
    return DL2Sums(t, sums, check, int(mask.sum()))


# -- tail error bars -------------------------------------------------------------------

ERROR_KINDS = ("membership", "norm", "iv", "sigma", "partial")


def tail_error_bound(F: TrigSeries, w: LambdaWeights, r: int, n: int, m: MetricSpec, kind: str) -> float:
    """Rigorous bound on how far a grid functional of the truncation ``s_D(f)``
    can sit from the same functional of ``f`` (0 for a trig polynomial).

    ``s_k(f) - f`` and its truncated counterpart differ by the coefficients
    past ``max(k, D)``, which the envelope bounds by ``tau_k = tail_sum(max(k, D))``.
    """
    if kind not in ERROR_KINDS:
        raise RejectedSpec(f"unknown error kind {kind!r}")
    if F.tau == 0.0:
        return 0.0
    n = _check_n(n)
    k = np.arange(n + 1)
    tau = np.array([F.tail.tail_sum(max(int(j), F.degree)) for j in k])
    lam = _lam(w, n)
    lag = _lag(lam, r)
    if kind in ("membership", "norm"):
        bound = float(np.sum(lam * tau + lag * _lag(tau, r)) / lam[n])
    elif kind == "iv":
        # s_k - s_{k-r} loses at most the coefficients in (max(k-r, D), k]
        bound = float(np.sum((lag * _lag(tau, r))[r:]) / lam[n])
    elif kind == "sigma":
        # sigma_n - f is a convex combination of s_k - f over the residue class
        cls = _residue_indices(n, r)
        bound = float(np.sum((lam[cls] - lag[cls]) * tau[cls]) / lam[n])
    else:
        bound = float(tau[n])
    return bound * m.factor
