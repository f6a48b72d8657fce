"""Supremum over n of ``reduce(P(n)) / lambda_n`` for lag-r prefix sums.

``P(n) = sum_{k<=n} d_k`` with non-negative terms ``d_k``.  The first ``H``
terms are given explicitly.  Past ``H`` the sequence behind the terms is
r-periodic, so ``d_k = (lambda_k - lambda_{k-r}) * q[k % r]`` and the prefix
sum has the closed form

    P(n) = B + sum_{i=n-r+1}^{n} q[i % r] * lambda_i,     n >= H - 1,

which makes every ``P(n)`` an O(r) evaluation.  The supremum is then found by
branch and bound over n: ``P`` is non-decreasing, so on ``[a, b]`` the ratio
is at most ``P(b) / lambda_a``; ``[N, inf)`` is bounded through a convexity
argument (see ``_tail_bound``).  Under regular growth the ratios converge
to ``reduce(q_sum)``, which is therefore a lower bound for the supremum.

When ``q`` vanishes the numerator freezes at ``H - 1`` and the search ends
there: the supremum is attained at some ``n <= H - 1``.
"""

from __future__ import annotations

import numpy as np

from .errors import NumericOverflow
from .results import Estimate

_SLACK = 4 * np.finfo(np.float64).eps


def _first_bad(arr) -> int:
    bad = ~np.isfinite(np.asarray(arr, dtype=np.float64))
    if bad.ndim > 1:
        bad = bad.reshape(bad.shape[0], -1).any(axis=1)
    return int(np.argmax(bad))


def check_finite(arr, what="value", offset=0):
    """Raise :class:`NumericOverflow` naming the first non-finite row."""
    a = np.asarray(arr)
    if not np.all(np.isfinite(a)):
        raise NumericOverflow(offset + _first_bad(a), what)


def _scalar_reduce(x):
    return np.asarray(x, dtype=np.float64)


class LaggedPrefix:
    """Prefix sums of lag-r terms with an optional r-periodic tail.

    Parameters
    ----------
    head : array, shape (H, *g)
        Non-negative terms ``d_0 .. d_{H-1}``.
    weights : LambdaWeights
    r : int
    tail : array, shape (r, *g), optional
        Per-residue magnitudes ``q``; ``None`` means all later terms vanish.
    reduce : callable
        Maps an array of shape ``(c, *g)`` to ``(c,)``; identity for scalars.
    """

    def __init__(self, head, weights, r, tail=None, reduce=None):
        head = np.asarray(head, dtype=np.float64)
        check_finite(head, "term")
        self.weights = weights
        self.r = int(r)
        self.reduce = reduce or _scalar_reduce
        self.H = head.shape[0]
        self.P = np.cumsum(head.astype(np.longdouble), axis=0)
        check_finite(self.P, "partial sum")
        self.lam_head = weights.values(self.H - 1)
        check_finite(self.lam_head, "weight")
        if tail is not None and not np.any(tail):
            tail = None
        self.q = None if tail is None else np.asarray(tail, dtype=np.float64)
        if self.q is not None:
            if self.H < self.r:
                raise ValueError("periodic tail needs at least r explicit terms")
            self.q_sum = self.q.sum(axis=0)
            idx = np.arange(self.H - self.r, self.H)
            lam = weights.take(idx)
            self.B = self.P[-1] - np.tensordot(lam, self.q[idx % self.r], axes=(0, 0))

    def _bcast(self, lam, ndim):
        return lam.reshape(lam.shape + (1,) * ndim)

    def prefix(self, ns) -> np.ndarray:
        """``P(n)`` for an integer array of indices (any n >= 0)."""
        ns = np.asarray(ns, dtype=np.int64)
        g = self.P.shape[1:]
        out = np.empty(ns.shape + g, dtype=np.longdouble)
        inside = ns < self.H
        out[inside] = self.P[ns[inside]]
        far = ns[~inside]
        if far.size:
            if self.q is None:
                out[~inside] = self.P[-1]
            else:
                idx = far[:, None] - np.arange(self.r)[None, :]
                lam = self.weights.take(idx)
                check_finite(lam, "weight", offset=int(far.min()))
                qq = self.q[idx % self.r]
                out[~inside] = self.B + np.sum(qq * self._bcast(lam, len(g)), axis=1)
        return out

    def ratios(self, ns) -> np.ndarray:
        """``reduce(P(n) / lambda_n)`` for each n."""
        ns = np.asarray(ns, dtype=np.int64)
        lam = self.weights.take(ns)
        check_finite(lam, "weight", offset=int(ns.min()) if ns.size else 0)
        P = self.prefix(ns)
        vals = (P / self._bcast(lam.astype(np.longdouble), P.ndim - 1)).astype(np.float64)
        return np.asarray(self.reduce(vals), dtype=np.float64)

    def scheduled_sup(self, n_max) -> Estimate:
        """Supremum over ``0 <= n <= n_max`` only, flagged as approximate."""
        ns = np.arange(n_max + 1)
        vals = self.ratios(ns)
        i = int(np.argmax(vals))
        return Estimate(float(vals[i]), i, exact=False)

    def _convex_at(self, N) -> bool:
        conv = self.weights.convex_from
        return conv is not None and N - self.r + 1 >= conv

    def _tail_bound(self, N, limit):
        """Upper bound for the ratios at every ``n >= N``.

        Write ``P(n)/lambda_n = q_sum + G(n)/lambda_n`` with
        ``G(n) = P(n) - q_sum lambda_n``.  On one residue class of n the map
        ``eps -> reduce(max(q_sum + G eps, 0))`` is convex, so over
        ``eps in [0, 1/lambda_N]`` it peaks at an end point.  With
        non-decreasing weight steps G only decreases along a class, so the
        ratios at ``N .. N+r-1`` and the limit bound everything after;
        otherwise G stays below B, so ``q_sum + max(B, 0) / lambda_N`` bounds
        every entry.
        """
        if self._convex_at(N):
            return max(limit, float(np.max(self.ratios(np.arange(N, N + self.r)))))
        lamN = self.weights.take(np.array([N]))[0]
        # G <= B always; entries with B < 0 may still rise towards q_sum
        top = self.q_sum + np.maximum(np.asarray(self.B, dtype=np.float64), 0.0) / lamN
        return max(limit, float(self.reduce(top[None])[0]))

    def sup(self, cap=1 << 22, chunk=4096) -> Estimate:
        """Exact supremum over all n >= 0 where it can be certified."""
        vals = self.ratios(np.arange(self.H))
        best_n = int(np.argmax(vals))
        best = float(vals[best_n])
        if self.q is None:
            return Estimate(best, best_n)

        w = self.weights
        if w.max_index is not None:
            # cannot look past the list: report what is reachable
            last = w.max_index
            if last >= self.H:
                more = self.ratios(np.arange(self.H, last + 1))
                j = int(np.argmax(more))
                if more[j] > best:
                    best, best_n = float(more[j]), self.H + j
            return Estimate(best, best_n, exact=False)

        limit = float(self.reduce(self.q_sum[None])[0])
        if limit > best:
            best, best_n = limit, None

        def consider(lo, hi):
            nonlocal best, best_n
            v = self.ratios(np.arange(lo, hi + 1))
            j = int(np.argmax(v))
            if v[j] > best or (v[j] == best and (best_n is None or lo + j < best_n)):
                best, best_n = float(v[j]), lo + j

        stack = []
        N = self.H
        while True:
            while stack:
                a, b = stack.pop()
                ub = float(self.ratios(np.array([b]))[0] * (w(b) / w(a)))
                if ub <= best * (1 + _SLACK):
                    continue
                if b - a + 1 <= chunk:
                    consider(a, b)
                    continue
                mid = (a + b) // 2
                stack.append((mid + 1, b))
                stack.append((a, mid))
            if self._convex_at(N):
                consider(N, N + self.r - 1)
            tb = self._tail_bound(N, limit)
            if tb <= best * (1 + _SLACK):
                return Estimate(best, best_n)
            if N > cap:
                return Estimate(best, best_n, exact=False, error_bound=tb - best)
            hi = max(2 * N, N + chunk) - 1
            stack.append((N, hi))
            N = hi + 1
