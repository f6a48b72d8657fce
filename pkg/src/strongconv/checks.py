"""Seeded randomized suites for the inequalities and identities of the library.

Every suite draws all of its randomness from one ``numpy`` generator seeded
by the caller, so a run is reproducible from ``(suite, trials, seed)``.
A failing trial records its complete inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import fourier as fr
from . import sequences as sq
from .specs import complex_to_json, parse_lambda, sequence_to_json, series_to_json

WEIGHT_SPECS = ("power:1.0", "power:0.5", "log")
S_NORM_WEIGHTS = ("power:1.0", "power:1.5", "power:2.0")
R_VALUES = (2, 3, 5)

_WEIGHTS = {}


def _weights(spec):
    if spec not in _WEIGHTS:
        _WEIGHTS[spec] = parse_lambda(spec)
    return _WEIGHTS[spec]


def random_complex(rng, size):
    """Normal complex draws, with some real-only and zero entries mixed in."""
    z = rng.normal(size=size) + 1j * rng.normal(size=size)
    if rng.random() < 0.25:
        z = z.real + 0j
    z[rng.random(size) < 0.15] = 0.0
    return z


def random_sequence(rng, max_len=32, min_len=1):
    n = int(rng.integers(min_len, max_len + 1))
    return sq.NumSequence(tuple(random_complex(rng, n)))


def random_setup(rng):
    return str(rng.choice(WEIGHT_SPECS)), int(rng.choice(R_VALUES))


def random_cosine_series(rng, max_degree=8, min_degree=1):
    D = int(rng.integers(min_degree, max_degree + 1))
    decay = rng.uniform(0.0, 2.0)
    a = rng.normal(size=D) / np.arange(1, D + 1) ** decay
    return fr.TrigSeries(float(rng.normal()), tuple(a))


def random_trig_series(rng, max_degree=6):
    D = int(rng.integers(1, max_degree + 1))
    a = random_complex(rng, D)
    b = random_complex(rng, D)
    return fr.TrigSeries(complex(random_complex(rng, 1)[0]), tuple(a), tuple(b))


# -- suites ------------------------------------------------------------------------
# each trial function returns None on success or a dict describing the failure


def _trial_prop1(rng, opts):
    S = random_sequence(rng)
    wspec, r = random_setup(rng)
    chain = sq.norm_chain_check(S, _weights(wspec), r)
    if chain.passed:
        return None
    return {"seq": sequence_to_json(S), "lambda": wspec, "r": r,
            "norms": list(chain.values), "links": [l.to_dict() for l in chain.links]}


def _trial_telescoping(rng, opts):
    S = random_sequence(rng)
    wspec, r = random_setup(rng)
    n = int(rng.integers(0, len(S) + r))
    got = sq.telescoped_recover(S, _weights(wspec), r, n)
    want = complex(S.at([n])[0])
    scale = float(np.max(np.abs(S.take(len(S)))))
    # relative to s_n; the absolute floor covers s_n = 0 past the support
    tol = 1e-12 * abs(want) + 1e-15 * scale
    if abs(got - want) <= tol:
        return None
    return {"seq": sequence_to_json(S), "lambda": wspec, "r": r, "n": n,
            "recovered": complex_to_json(got), "s_n": complex_to_json(want)}


def _trial_lemma1_bridge(rng, opts):
    S = random_sequence(rng)
    wspec, r = random_setup(rng)
    w = _weights(wspec)
    s = 0j if rng.random() < 0.5 else complex(random_complex(rng, 1)[0])
    n = int(rng.integers(r, len(S) + 2 * r + 1))
    V = sq.strong_variation(S, s, w, r, n)
    T = sq.lemma1_condition(S, w, r, n)
    bridge = sq.lemma1_bridge_bound(S, s, w, r, n)
    if abs(V - T) <= bridge + 1e-10:
        return None
    return {"seq": sequence_to_json(S), "s": complex_to_json(s), "lambda": wspec, "r": r,
            "n": n, "V": V, "T": T, "bridge": bridge}


def _trial_r_factor(rng, opts):
    S = random_sequence(rng)
    wspec, r = random_setup(rng)
    w = _weights(wspec)
    for n in range(len(S) + r):
        chk = sq.r_factor_inequality_check(S, w, r, n)
        if not chk.passed:
            return {"seq": sequence_to_json(S), "lambda": wspec, "r": r, "n": n,
                    "check": chk.to_dict()}
    return None


def _trial_schauder(rng, opts):
    S = random_sequence(rng, max_len=24)
    wspec, r = random_setup(rng)
    w = _weights(wspec)
    E = S.support_end
    for m in range(E + r + 1):
        rem = sq.schauder_remainder_norm(S, w, r, m)
        vanish = m >= E + r - 1
        if not rem.passed or (vanish and rem.norm.value > 1e-12):
            return {"seq": sequence_to_json(S), "lambda": wspec, "r": r, "m": m,
                    "support_end": E, "norm": rem.norm.value, "bound": rem.bound,
                    "should_vanish": vanish}
    return None


def _rel_close(x, y, tol):
    return abs(x - y) <= tol * max(abs(x), abs(y), 1e-300)


def _trial_norm_axioms(rng, opts):
    wspec, r = random_setup(rng)
    w = _weights(wspec)
    alpha = complex(random_complex(rng, 1)[0]) or 1.5 - 0.5j
    problems = []

    S = random_sequence(rng)
    T = random_sequence(rng)
    nS, nT = sq.cr_norm(S, w, r).value, sq.cr_norm(T, w, r).value
    nA = sq.cr_norm(sq.NumSequence(tuple(alpha * S.take(len(S)))), w, r).value
    L = max(len(S), len(T))
    nST = sq.cr_norm(sq.NumSequence(tuple(S.take(L) + T.take(L))), w, r).value
    if not _rel_close(nA, abs(alpha) * nS, 1e-12):
        problems.append(("cr homogeneity", nA, abs(alpha) * nS))
    if nST > nS + nT + 1e-10:
        problems.append(("cr triangle", nST, nS + nT))
    if nS < sq.sup_norm(S).value * (1 - 1e-12):
        problems.append(("cr definiteness", nS, sq.sup_norm(S).value))

    # convex weights let the grid suprema certify without a long search
    w = _weights(str(rng.choice(S_NORM_WEIGHTS)))
    m = fr.CMetric(512)
    F, G = random_trig_series(rng), random_trig_series(rng)
    eF, eG = fr.s_lambda_r_norm(F, w, r, m), fr.s_lambda_r_norm(G, w, r, m)
    fF, fG = eF.value, eG.value
    fA = fr.s_lambda_r_norm(F.scaled(alpha), w, r, m).value
    fFG = fr.s_lambda_r_norm(F + G, w, r, m).value
    if not _rel_close(fA, abs(alpha) * fF, 1e-12):
        problems.append(("S homogeneity", fA, abs(alpha) * fF))
    slack = (eF.error_bound or 0.0) + (eG.error_bound or 0.0)
    if fFG > fF + fG + slack + 1e-10:
        problems.append(("S triangle", fFG, fF + fG))
    if fF < fr.u_norm(F, m).value * (1 - 1e-12):
        problems.append(("S definiteness", fF, fr.u_norm(F, m).value))
    if not problems:
        return None
    return {"lambda": wspec, "series_lambda": w.description, "r": r, "alpha": complex_to_json(alpha),
            "seqs": [sequence_to_json(S), sequence_to_json(T)],
            "series": [series_to_json(F), series_to_json(G)],
            "problems": [list(p) for p in problems]}


def _trial_trig_identities(rng, opts):
    a_odd, a_even = rng.normal(size=2)
    if rng.random() < 0.05:
        a_even = -a_odd
    k = int(rng.integers(1, 51))
    t = float(rng.uniform(0.0, 2 * math.pi)) if rng.random() > 0.05 else 0.0
    kind = "cos" if rng.random() < 0.5 else "sin"
    coeffs = np.zeros(2 * k)
    coeffs[2 * k - 2], coeffs[2 * k - 1] = a_odd, a_even
    F = fr.TrigSeries(0.0, tuple(coeffs)) if kind == "cos" else fr.TrigSeries(0.0, (), tuple(coeffs))
    gp = fr.grouped_pair(F, k, t, kind)
    resid = fr.pair_identity_residual(gp, k, t, kind)
    pyth = abs(gp.rho ** 2 - (a_odd ** 2 + a_even ** 2 + 2 * a_odd * a_even * math.cos(t)))
    if resid <= 1e-10 and pyth <= 1e-10:
        return None
    return {"a_odd": float(a_odd), "a_even": float(a_even), "k": k, "t": t, "kind": kind,
            "residual": resid, "rho_residual": pyth}


def _trial_dlp2(rng, opts):
    F = random_cosine_series(rng, max_degree=64)
    wspec = str(rng.choice(WEIGHT_SPECS))
    p = float(rng.choice((1.0, 2.0, 4.0)))
    n = int(rng.integers(2, 65))
    chk = fr.dlp2_sufficiency_check(F, _weights(wspec), n, p)
    if chk.passed:
        return None
    return {"series": series_to_json(F), "lambda": wspec, "p": p, "n": n, "check": chk.to_dict()}


def _trial_dl2_bound(rng, opts):
    C = opts.get("C") or 0.2
    K = int(rng.integers(1, 17))
    a = rng.normal(size=2 * K)
    if rng.random() < 0.1:
        a[0] = 0.0
    F = fr.TrigSeries(0.0, tuple(a))
    res = fr.dl2_group_sums(F, fr.CMetric(512), K, C)
    if res.lower_bound.passed:
        return None
    return {"series": series_to_json(F), "K": K, "C": C, "check": res.lower_bound.to_dict()}


SUITES: dict = {
    "prop1": _trial_prop1,
    "telescoping": _trial_telescoping,
    "lemma1-bridge": _trial_lemma1_bridge,
    "r-factor": _trial_r_factor,
    "schauder": _trial_schauder,
    "norm-axioms": _trial_norm_axioms,
    "trig-identities": _trial_trig_identities,
    "dlp2": _trial_dlp2,
    "dl2-bound": _trial_dl2_bound,
}


@dataclass
class SuiteResult:
    suite: str
    trials: int
    seed: Optional[int]
    failures: list = field(default_factory=list)
    warnings: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {"suite": self.suite, "trials": self.trials, "seed": self.seed,
                "pass": self.passed, "failure_count": len(self.failures),
                "failures": self.failures, "warnings": self.warnings}


def run_suite(name: str, trials: int, seed: Optional[int] = None, C: Optional[float] = None,
              max_failures: int = 20) -> SuiteResult:
    """Run ``trials`` independent trials of suite ``name``.

    At most ``max_failures`` counterexamples are kept; the count is exact.
    """
    from .errors import InvalidC, RejectedSpec

    if name not in SUITES:
        raise RejectedSpec(f"unknown suite {name!r}; expected one of {sorted(SUITES)}")
    if trials < 0:
        raise RejectedSpec(f"trials must be non-negative, got {trials}")
    if C is not None and not 0 < C < fr.GOLDEN_C:
        raise InvalidC(f"C must lie in (0, {fr.GOLDEN_C:.6f}), got {C!r}")
    result = SuiteResult(name, trials, seed)
    if trials == 0:
        result.warnings.append("no trials were run; the pass is vacuous")
        return result
    rng = np.random.default_rng(seed)
    trial: Callable = SUITES[name]
    opts = {"C": C}
    for i in range(trials):
        failure = trial(rng, opts)
        if failure is not None:
            failure["trial"] = i
            if len(result.failures) < max_failures:
                result.failures.append(failure)
            else:
                result.failures.append({"trial": i})
    return result
