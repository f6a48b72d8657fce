"""Lambda^r-strong variation, the sequence norms and the comb-basis expansion.

A :class:`NumSequence` is a finite prefix plus a tail rule.  Zero, constant
and periodic tails whose period divides ``r`` are handled in exact mode:
every supremum over n is certified (see :mod:`strongconv._supremum`).  The
``InversePower`` generator tail is only ever evaluated along a finite
schedule and its suprema are flagged approximate.

Negative indices follow the zero convention ``s_{-1} = ... = s_{-r} = 0`` and
``lambda_{-1} = ... = lambda_{-r} = 0``; nothing negative is ever stored.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Union

import numpy as np

from ._supremum import LaggedPrefix, check_finite
from .errors import NonSummableTail, RejectedSpec, ScheduleTooShort
from .results import REL_TOL, Estimate, FunctionalTrace, InequalityCheck
from .weights import LambdaWeights

DEFAULT_N_MAX = 4096


# -- tails -------------------------------------------------------------------

@dataclass(frozen=True)
class ZeroTail:
    def take(self, k):
        return np.zeros(np.shape(k), dtype=np.complex128)


@dataclass(frozen=True)
class ConstantTail:
    c: complex

    def take(self, k):
        return np.full(np.shape(k), complex(self.c), dtype=np.complex128)


@dataclass(frozen=True)
class InversePower:
    """Generator tail ``s_k = c / (k + 1) ** q``."""

    c: complex
    q: float

    def take(self, k):
        k = np.asarray(k, dtype=np.float64)
        return complex(self.c) / np.power(k + 1.0, self.q)


@dataclass(frozen=True)
class PeriodicTail:
    """``s_k = pattern[k % len(pattern)]`` (absolute index, not offset)."""

    pattern: tuple

    def take(self, k):
        pat = np.asarray(self.pattern, dtype=np.complex128)
        return pat[np.asarray(k, dtype=np.int64) % len(pat)]


@dataclass(frozen=True)
class PeriodicOnes:
    """Tail of the comb ``F^(j)``: ones at ``j, j + r, j + 2r, ...``."""

    j: int
    r: int

    @property
    def pattern(self):
        return tuple(1.0 + 0j if b == self.j % self.r else 0j for b in range(self.r))

    def take(self, k):
        k = np.asarray(k, dtype=np.int64)
        return np.where((k >= self.j) & ((k - self.j) % self.r == 0), 1.0 + 0j, 0j)


Tail = Union[ZeroTail, ConstantTail, InversePower, PeriodicTail, PeriodicOnes]


@dataclass(frozen=True)
class NumSequence:
    """``s_0 .. s_{N-1}`` followed by ``tail``; ``declared_limit`` is optional."""

    prefix: tuple
    tail: Tail = field(default_factory=ZeroTail)
    declared_limit: Optional[complex] = None

    def __post_init__(self):
        pre = tuple(complex(v) for v in np.atleast_1d(np.asarray(self.prefix, dtype=np.complex128)))
        if len(pre) < 1:
            raise RejectedSpec("sequence prefix must hold at least one value")
        object.__setattr__(self, "prefix", pre)
        lim = self.declared_limit
        if lim is not None:
            lim = complex(lim)
            object.__setattr__(self, "declared_limit", lim)
            if isinstance(self.tail, ZeroTail) and lim != 0:
                raise RejectedSpec(f"zero tail forces limit 0, got {lim}")
            if isinstance(self.tail, ConstantTail) and lim != complex(self.tail.c):
                raise RejectedSpec(f"constant tail forces limit {self.tail.c}, got {lim}")
        if isinstance(self.tail, InversePower) and not self.tail.q > 0:
            raise RejectedSpec("inverse_power tail needs q > 0")
        if isinstance(self.tail, PeriodicTail) and not self.tail.pattern:
            raise RejectedSpec("periodic tail needs a non-empty pattern")

    @classmethod
    def constant(cls, c, length=1):
        return cls((c,) * length, ConstantTail(complex(c)), complex(c))

    @cached_property
    def _prefix_array(self):
        return np.asarray(self.prefix, dtype=np.complex128)

    def __len__(self):
        return len(self.prefix)

    def at(self, idx) -> np.ndarray:
        """Values at integer indices; negative indices give 0."""
        idx = np.asarray(idx, dtype=np.int64)
        out = np.zeros(idx.shape, dtype=np.complex128)
        pre = self._prefix_array
        N = len(pre)
        inside = (idx >= 0) & (idx < N)
        out[inside] = pre[idx[inside]]
        beyond = idx >= N
        if np.any(beyond):
            out[beyond] = self.tail.take(idx[beyond])
        return out

    def take(self, length: int) -> np.ndarray:
        """``s_0 .. s_{length-1}``."""
        return self.at(np.arange(length))

    @property
    def tail_period(self):
        """Period of the tail, or ``None`` for generator tails."""
        t = self.tail
        if isinstance(t, (ZeroTail, ConstantTail)):
            return 1
        if isinstance(t, (PeriodicTail, PeriodicOnes)):
            return len(t.pattern)
        return None

    @property
    def is_generator(self) -> bool:
        return isinstance(self.tail, InversePower)

    def periodic_pattern(self, r: int):
        """Tail values per residue ``k mod r`` when the tail period divides r."""
        t = self.tail
        if isinstance(t, ZeroTail):
            return np.zeros(r, dtype=np.complex128)
        if isinstance(t, ConstantTail):
            return np.full(r, complex(t.c), dtype=np.complex128)
        if isinstance(t, (PeriodicTail, PeriodicOnes)):
            pat = np.asarray(t.pattern, dtype=np.complex128)
            if r % len(pat) == 0:
                return pat[np.arange(r) % len(pat)]
        return None

    @property
    def support_end(self) -> int:
        """One past the last non-zero entry (zero tail only)."""
        if not isinstance(self.tail, ZeroTail):
            raise RejectedSpec("support end is defined for zero-tail sequences only")
        nz = np.flatnonzero(self._prefix_array)
        return int(nz[-1]) + 1 if nz.size else 0

    @property
    def limit(self):
        """Declared limit, else the limit implied by the tail, else ``None``."""
        if self.declared_limit is not None:
            return self.declared_limit
        t = self.tail
        if isinstance(t, ZeroTail) or isinstance(t, InversePower):
            return 0j
        if isinstance(t, ConstantTail):
            return complex(t.c)
        pat = self.periodic_pattern(self.tail_period)
        if np.all(pat == pat[0]):
            return complex(pat[0])
        return None


# -- helpers -----------------------------------------------------------------

def _check_r(r):
    if int(r) != r or r < 1:
        raise RejectedSpec(f"r must be a positive integer, got {r!r}")
    return int(r)


def _check_n(n):
    if int(n) != n or n < 0:
        raise RejectedSpec(f"n must be a non-negative integer, got {n!r}")
    return int(n)


def _lag(x, r):
    """``y_k = x_{k-r}`` with zeros for ``k < r``."""
    y = np.zeros_like(x)
    if r < len(x):
        y[r:] = x[:-r] if r else x
    return y


def _weighted(S, w, n):
    s = S.take(n + 1)
    lam = w.values(n)
    check_finite(lam, "weight")
    return s, lam


def _lagged_terms(S, w, r, n):
    """``lambda_k s_k - lambda_{k-r} s_{k-r}`` for ``k = 0..n``."""
    s, lam = _weighted(S, w, n)
    x = lam * s
    check_finite(x, "term")
    return x - _lag(x, r)


def _fsum_ld(v):
    return np.sum(np.asarray(v, dtype=np.longdouble))


# -- functionals ---------------------------------------------------------------

def strong_variation(S: NumSequence, s, w: LambdaWeights, r: int, n: int) -> float:
    """``V_n = (1/lambda_n) sum_{k<=n} |lambda_k (s_k - s) - lambda_{k-r} (s_{k-r} - s)|``.

    With ``r = 1`` this is the Lambda-strong variation.
    """
    r, n = _check_r(r), _check_n(n)
    seq, lam = _weighted(S, w, n)
    x = lam * (seq - complex(s))
    check_finite(x, "term")
    return float(_fsum_ld(np.abs(x - _lag(x, r))) / lam[n])


def lemma1_condition(S: NumSequence, w: LambdaWeights, r: int, n: int) -> float:
    """``T_n = (1/lambda_n) sum_{k=r}^{n} lambda_{k-r} |s_k - s_{k-r}|``."""
    r, n = _check_r(r), _check_n(n)
    if n < r:
        raise ScheduleTooShort(f"T_n needs n >= r, got n={n}, r={r}")
    seq, lam = _weighted(S, w, n)
    terms = _lag(lam, r) * np.abs(seq - _lag(seq, r))
    check_finite(terms, "term")
    return float(_fsum_ld(terms[r:]) / lam[n])


def lemma1_bridge_bound(S: NumSequence, s, w: LambdaWeights, r: int, n: int) -> float:
    """``(1/lambda_n) sum_{k<=n} (lambda_k - lambda_{k-r}) |s_k - s|``, which bounds ``|V_n - T_n|``."""
    r, n = _check_r(r), _check_n(n)
    seq, lam = _weighted(S, w, n)
    terms = (lam - _lag(lam, r)) * np.abs(seq - complex(s))
    check_finite(terms, "term")
    return float(_fsum_ld(terms) / lam[n])


def _residue_indices(n, r):
    return np.arange(n % r, n + 1, r)


def sigma_mean(S: NumSequence, w: LambdaWeights, r: int, n: int) -> complex:
    """``sigma_n = (1/lambda_n) sum_{k = n mod r, k<=n} (lambda_k - lambda_{k-r}) s_k``."""
    r, n = _check_r(r), _check_n(n)
    k = _residue_indices(n, r)
    lam = w.take(k).astype(np.longdouble)
    lam_prev = w.take(k - r).astype(np.longdouble)
    check_finite(lam, "weight")
    s = S.at(k).astype(np.clongdouble)
    return complex(np.sum((lam - lam_prev) * s) / lam[-1])


def telescoped_recover(S: NumSequence, w: LambdaWeights, r: int, n: int) -> complex:
    """``(1/lambda_n) sum_{k = n mod r, k<=n} (lambda_k s_k - lambda_{k-r} s_{k-r})``.

    The sum telescopes, so the result is ``s_n`` up to rounding.
    """
    r, n = _check_r(r), _check_n(n)
    k = _residue_indices(n, r)
    lam = w.take(k).astype(np.longdouble)
    lam_prev = w.take(k - r).astype(np.longdouble)
    check_finite(lam, "weight")
    s = S.at(k).astype(np.clongdouble)
    s_prev = S.at(k - r).astype(np.clongdouble)
    return complex(np.sum(lam * s - lam_prev * s_prev) / lam[-1])


# -- norms ---------------------------------------------------------------------

def _need_truncation(S, truncation):
    if truncation is None:
        raise RejectedSpec("generator tails need an explicit truncation index")
    if truncation < len(S):
        raise RejectedSpec("truncation must cover the whole prefix")
    return int(truncation)


def sup_norm(S: NumSequence, truncation: Optional[int] = None) -> Estimate:
    """``sup_k |s_k|``; generator tails give an under-approximation."""
    if S.is_generator:
        T = _need_truncation(S, truncation)
        v = np.abs(S.take(T + 1))
        i = int(np.argmax(v))
        return Estimate(float(v[i]), i, exact=False)
    pat = S.periodic_pattern(S.tail_period)
    N = len(S)
    period = len(pat)
    v = np.abs(S.take(N + period))
    i = int(np.argmax(v))
    return Estimate(float(v[i]), i)


def bv_norm(S: NumSequence, truncation: Optional[int] = None) -> Estimate:
    """``sum_k |s_k - s_{k-1}|`` including ``|s_0|``.

    Zero and constant tails are exact (the final jump into the tail is
    included).  A non-constant periodic tail has infinite variation.
    """
    if S.is_generator:
        T = _need_truncation(S, truncation)
        s = S.take(T + 1)
        return Estimate(float(_fsum_ld(np.abs(s - _lag(s, 1)))), exact=False)
    pat = S.periodic_pattern(S.tail_period)
    if not np.all(pat == pat[0]):
        raise NonSummableTail("a non-constant periodic tail has unbounded variation")
    s = S.take(len(S) + 1)
    return Estimate(float(_fsum_ld(np.abs(s - _lag(s, 1)))))


def cr_norm(S: NumSequence, w: LambdaWeights, r: int, n_max: Optional[int] = None) -> Estimate:
    """``sup_n (1/lambda_n) sum_{k<=n} |lambda_k s_k - lambda_{k-r} s_{k-r}|``.

    ``r = 1`` gives the c(Lambda) norm.  Exact for zero, constant and
    r-periodic tails; generator tails are scanned up to ``n_max`` and the
    result is flagged approximate.
    """
    r = _check_r(r)
    pat = S.periodic_pattern(r)
    if pat is None:
        n_max = DEFAULT_N_MAX if n_max is None else int(n_max)
        d = np.abs(_lagged_terms(S, w, r, n_max))
        return LaggedPrefix(d, w, r).scheduled_sup(n_max)
    K = len(S)
    if isinstance(S.tail, ZeroTail):
        K = max(S.support_end, 1)
    H = K + r
    d = np.abs(_lagged_terms(S, w, r, H - 1))
    return LaggedPrefix(d, w, r, tail=np.abs(pat)).sup()


def c_lambda_norm(S: NumSequence, w: LambdaWeights, n_max: Optional[int] = None) -> Estimate:
    """The r = 1 instance of :func:`cr_norm`."""
    return cr_norm(S, w, 1, n_max)


@dataclass(frozen=True)
class NormChain:
    sup: Estimate
    cr: Estimate
    c_lambda: Estimate
    bv: Estimate
    r: int
    links: tuple

    @property
    def passed(self) -> bool:
        return all(link.passed for link in self.links)

    @property
    def values(self):
        return (self.sup.value, self.cr.value, self.c_lambda.value, self.bv.value)


def norm_chain_check(S: NumSequence, w: LambdaWeights, r: int, rel_tol=REL_TOL) -> NormChain:
    """``||S||_inf <= ||S||_{c^r} <= r ||S||_{c} <= 2r ||S||_bv`` on an exact-mode sequence."""
    r = _check_r(r)
    if S.is_generator:
        raise RejectedSpec("the norm chain needs an exact-mode sequence")
    sup, bv = sup_norm(S), bv_norm(S)
    cr, c1 = cr_norm(S, w, r), cr_norm(S, w, 1)
    links = (
        InequalityCheck.compare(sup.value, cr.value, rel_tol),
        InequalityCheck.compare(cr.value, r * c1.value, rel_tol),
        InequalityCheck.compare(r * c1.value, 2 * r * bv.value, rel_tol),
    )
    return NormChain(sup, cr, c1, bv, r, links)


def r_factor_inequality_check(S: NumSequence, w: LambdaWeights, r: int, n: int) -> InequalityCheck:
    """Prefix sums ``sum |lambda_k s_k - lambda_{k-r} s_{k-r}|`` vs ``r sum |lag-1 terms|``."""
    r, n = _check_r(r), _check_n(n)
    lhs = _fsum_ld(np.abs(_lagged_terms(S, w, r, n)))
    rhs = r * _fsum_ld(np.abs(_lagged_terms(S, w, 1, n)))
    return InequalityCheck.compare(lhs, rhs)


# -- comb basis ------------------------------------------------------------------

def basis_vector(j: int, r: int, length: int) -> NumSequence:
    """The comb ``F^(j)`` with ones at ``j, j+r, j+2r, ...``; prefix of ``length``."""
    r = _check_r(r)
    if j < 0 or length <= j:
        raise RejectedSpec(f"need 0 <= j < length, got j={j}, length={length}")
    k = np.arange(length)
    vals = np.where((k >= j) & ((k - j) % r == 0), 1.0, 0.0)
    return NumSequence(tuple(vals), PeriodicOnes(j, r))


def schauder_coefficients(S: NumSequence, r: int, m: int) -> np.ndarray:
    """``s_j - s_{j-r}`` for ``j = 0..m``."""
    r, m = _check_r(r), _check_n(m)
    j = np.arange(m + 1)
    return S.at(j) - S.at(j - r)


def schauder_remainder(S: NumSequence, r: int, m: int) -> NumSequence:
    """``S - sum_{j<=m} (s_j - s_{j-r}) F^(j)``, built term by term from the combs."""
    r, m = _check_r(r), _check_n(m)
    if S.periodic_pattern(r) is None:
        raise RejectedSpec("the remainder is only built for exact-mode sequences")
    L = max(len(S), m + 1) + r
    coef = schauder_coefficients(S, r, m)
    expansion = np.zeros(L + r, dtype=np.complex128)
    for j, c in enumerate(coef):
        if c != 0:
            expansion += c * basis_vector(j, r, L + r).take(L + r)
    rem = S.take(L + r) - expansion
    pattern = [0j] * r
    for k in range(L, L + r):
        pattern[k % r] = complex(rem[k])
    return NumSequence(tuple(rem[:L]), PeriodicTail(tuple(pattern)))


@dataclass(frozen=True)
class SchauderRemainder:
    m: int
    norm: Estimate
    bound: float
    spread_term: float
    variation_term: float
    passed: bool


def schauder_remainder_norm(S: NumSequence, w: LambdaWeights, r: int, m: int) -> SchauderRemainder:
    """Norm of the m-th expansion remainder in c^r(Lambda) and the bound

    ``r sup_{j,k > m-r} |s_j - s_k| + sup_{n >= m+1} (1/lambda_n) sum_{k=m+1}^{n} lambda_{k-r} |s_k - s_{k-r}|``.
    """
    r, m = _check_r(r), _check_n(m)
    R = schauder_remainder(S, r, m)
    norm = cr_norm(R, w, r)

    K = len(S)
    lo = max(m - r + 1, -r)
    vals = S.at(np.arange(lo, max(K, lo) + r))
    spread = float(np.max(np.abs(vals[:, None] - vals[None, :])))

    # differences s_k - s_{k-r} vanish once k - r >= K, so the sum freezes
    top = max(m + 1, K + r - 1)
    s, lam = _weighted(S, w, top)
    terms = _lag(lam, r) * np.abs(s - _lag(s, r))
    terms[: m + 1] = 0.0
    csum = np.cumsum(terms.astype(np.longdouble))
    variation = float(np.max((csum / lam)[m + 1:]))

    bound = r * spread + variation
    ub = norm.value + (norm.error_bound or 0.0)
    # the remainder is assembled from rounded comb sums, so allow rounding-level slack
    slack = REL_TOL * float(np.max(np.abs(S.take(K))))
    return SchauderRemainder(m, norm, bound, r * spread, variation,
                             bool(ub <= bound * (1 + REL_TOL) + slack))


# -- traces ------------------------------------------------------------------------

FUNCTIONALS = ("V", "T", "sigma_dev")


def trace_functional(S: NumSequence, s, w: LambdaWeights, r: int, schedule, which: str) -> FunctionalTrace:
    """Evaluate ``V``, ``T`` or ``sigma_dev = |sigma_n - s|`` along ``schedule``."""
    r = _check_r(r)
    schedule = [_check_n(n) for n in schedule]
    if any(b <= a for a, b in zip(schedule, schedule[1:])):
        raise RejectedSpec("schedule must be strictly increasing")
    if which not in FUNCTIONALS:
        raise RejectedSpec(f"unknown functional {which!r}; expected one of {FUNCTIONALS}")
    values = []
    if which == "sigma_dev":
        values = [abs(sigma_mean(S, w, r, n) - complex(s)) for n in schedule]
    elif schedule:
        top = schedule[-1]
        seq, lam = _weighted(S, w, top)
        if which == "V":
            x = lam * (seq - complex(s))
            check_finite(x, "term")
            terms = np.abs(x - _lag(x, r))
        else:
            bad = [n for n in schedule if n < r]
            if bad:
                raise ScheduleTooShort(f"T_n needs n >= r; failing schedule index n={bad[0]}")
            terms = _lag(lam, r) * np.abs(seq - _lag(seq, r))
            terms[:r] = 0.0
        csum = np.cumsum(terms.astype(np.longdouble))
        check_finite(csum, "partial sum")
        values = [float(csum[n] / lam[n]) for n in schedule]
    return FunctionalTrace(which, tuple(schedule), tuple(values))
