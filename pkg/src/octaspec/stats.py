"""Aggregation of Monte-Carlo cycle counts and Poisson fit diagnostics."""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from scipy import stats as sps

PMF_FLOOR = 1e-12
SE_WINDOW = 4.0
FINITE_N_SLACK = 10.0  # mean gate slack is FINITE_N_SLACK / n
TV_GATE = 0.05


def fmt(x: float) -> float:
    """Round to 12 significant digits for serialisation."""
    if x is None or not math.isfinite(x):
        return x
    return float(f"{x:.12g}")


@dataclass
class TrialBatch:
    n: int
    trials: int
    seed: int
    classes: list            # canonical word strings
    lambdas: list            # predicted intensity per class
    counts: np.ndarray       # (trials, len(classes)) int64
    conditioned: bool = True
    attempts: Optional[np.ndarray] = None       # sampling attempts per trial
    cycles_by_length: Optional[np.ndarray] = None  # (trials, max_len + 1)

    def __post_init__(self):
        self.counts = np.asarray(self.counts, dtype=np.int64).reshape(self.trials, len(self.classes))
        if (self.counts < 0).any():
            raise ValueError("counts must be nonnegative")

    def column(self, name: str) -> np.ndarray:
        return self.counts[:, self.classes.index(name)]

    def to_dict(self) -> dict:
        d = {
            "n": self.n, "trials": self.trials, "seed": self.seed,
            "conditioned": self.conditioned,
            "classes": list(self.classes),
            "lambdas": [fmt(x) for x in self.lambdas],
            "counts": self.counts.tolist(),
        }
        if self.attempts is not None:
            d["attempts"] = [int(a) for a in self.attempts]
        if self.cycles_by_length is not None:
            d["cycles_by_length"] = self.cycles_by_length.tolist()
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, d: dict) -> "TrialBatch":
        att = d.get("attempts")
        cbl = d.get("cycles_by_length")
        return cls(n=d["n"], trials=d["trials"], seed=d["seed"], classes=d["classes"],
                   lambdas=d["lambdas"], counts=np.array(d["counts"], dtype=np.int64).reshape(d["trials"], -1),
                   conditioned=d.get("conditioned", True),
                   attempts=None if att is None else np.array(att),
                   cycles_by_length=None if cbl is None else np.array(cbl))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["trial"] + list(self.classes))
        for i, row in enumerate(self.counts):
            w.writerow([i] + [int(x) for x in row])
        return buf.getvalue()


def _mean(x) -> float:
    x = np.asarray(x, dtype=np.float64)
    return math.fsum(x) / len(x)


def falling_factorial(x: np.ndarray, m: int) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    out = np.ones_like(x)
    for j in range(m):
        out *= x - j
    return out


def factorial_moments(counts: Sequence[int], orders: Sequence[int]) -> dict:
    """Sample means of X(X-1)...(X-m+1) for each order m."""
    x = np.asarray(counts)
    res = {}
    for m in orders:
        if m < 1:
            raise ValueError("orders must be >= 1")
        res[m] = _mean(falling_factorial(x, m))
    return res


def factorial_moment_se(counts: Sequence[int], m: int) -> float:
    ff = falling_factorial(np.asarray(counts), m)
    return math.sqrt(np.var(ff, ddof=1) / len(ff)) if len(ff) > 1 else 0.0


def poisson_tv(counts: Sequence[int], lam: float) -> float:
    """Total variation between the empirical law of ``counts`` and Poisson(lam)."""
    x = np.asarray(counts, dtype=np.int64)
    if lam == 0:
        return float(np.mean(x != 0))
    top = int(max(x.max(initial=0), sps.poisson.isf(PMF_FLOOR, lam) + 1))
    ks = np.arange(top + 1)
    pmf = sps.poisson.pmf(ks, lam)
    pmf[pmf < PMF_FLOOR] = 0.0
    emp = np.bincount(x, minlength=top + 1)[: top + 1] / len(x)
    tail = max(0.0, 1.0 - math.fsum(pmf))
    return 0.5 * (math.fsum(np.abs(emp - pmf)) + tail)


@dataclass
class ClassFit:
    name: str
    length: int
    lam: float
    mean: float
    var: float
    se: float
    z: float
    tv: float
    f2: float
    f2_se: float

    def gates(self, n: int) -> dict:
        mean_tol = SE_WINDOW * self.se + FINITE_N_SLACK / n
        return {
            "mean": abs(self.mean - self.lam) <= mean_tol,
            "f2": abs(self.f2 - self.lam ** 2) <= SE_WINDOW * self.f2_se,
            "tv": self.tv < TV_GATE,
        }


def poisson_fit(counts: Sequence[int], lam: float, name: str = "", length: int = 0) -> ClassFit:
    x = np.asarray(counts, dtype=np.int64)
    t = len(x)
    mean = _mean(x)
    var = float(np.var(x, ddof=1)) if t > 1 else 0.0
    se = math.sqrt(var / t)
    if se > 0:
        z = (mean - lam) / se
    else:
        z = 0.0 if mean == lam else math.copysign(math.inf, mean - lam)
    f2 = factorial_moments(x, [2])[2]
    return ClassFit(name=name, length=length, lam=lam, mean=mean, var=var, se=se, z=z,
                    tv=poisson_tv(x, lam), f2=f2, f2_se=factorial_moment_se(x, 2))


def cross_covariance(batch_or_counts) -> np.ndarray:
    """Sample covariance matrix of per-trial class counts."""
    counts = batch_or_counts.counts if isinstance(batch_or_counts, TrialBatch) else batch_or_counts
    counts = np.asarray(counts, dtype=np.float64)
    if counts.ndim != 2 or counts.shape[1] < 2:
        raise ValueError("need at least two classes")
    return np.cov(counts, rowvar=False, ddof=1)


def covariance_se(counts: np.ndarray) -> np.ndarray:
    """Standard error of each sample covariance entry."""
    c = np.asarray(counts, dtype=np.float64)
    t = c.shape[0]
    dev = c - c.mean(axis=0)
    prod = dev[:, :, None] * dev[:, None, :]
    return np.sqrt(prod.var(axis=0, ddof=1) / t)


@dataclass
class FitReport:
    n: int
    trials: int
    fits: list
    covariance: np.ndarray
    covariance_se: np.ndarray
    extra: dict = field(default_factory=dict)

    def gate_results(self) -> dict:
        res = {}
        for f in self.fits:
            for gate, ok in f.gates(self.n).items():
                res[f"{f.name}:{gate}"] = ok
        k = len(self.fits)
        for i in range(k):
            for j in range(i + 1, k):
                ok = abs(self.covariance[i, j]) <= SE_WINDOW * self.covariance_se[i, j]
                res[f"{self.fits[i].name}~{self.fits[j].name}:cov"] = bool(ok)
        return res

    @property
    def passed(self) -> bool:
        return all(self.gate_results().values())

    def to_dict(self) -> dict:
        return {
            "n": self.n, "trials": self.trials,
            "classes": [{
                "canonical": f.name, "length": f.length, "lambda": fmt(f.lam),
                "mean": fmt(f.mean), "var": fmt(f.var), "se": fmt(f.se), "z": fmt(f.z),
                "tv": fmt(f.tv), "f2": fmt(f.f2), "f2_se": fmt(f.f2_se),
            } for f in self.fits],
            "covariance": [[fmt(float(x)) for x in row] for row in self.covariance],
            "covariance_se": [[fmt(float(x)) for x in row] for row in self.covariance_se],
            "gates": self.gate_results(),
            "passed": self.passed,
            **self.extra,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["canonical", "length", "lambda", "mean", "var", "z", "tv"])
        for f in self.fits:
            w.writerow([f.name, f.length, repr(fmt(f.lam)), repr(fmt(f.mean)), repr(fmt(f.var)),
                        repr(fmt(f.z)), repr(fmt(f.tv))])
        return buf.getvalue()


def fit_batch(batch: TrialBatch, lengths: Optional[Sequence[int]] = None) -> FitReport:
    if lengths is None:
        from .exactalg import parse_word
        lengths = [len(parse_word(c)) for c in batch.classes]
    fits = [poisson_fit(batch.counts[:, i], lam, name, k)
            for i, (name, lam, k) in enumerate(zip(batch.classes, batch.lambdas, lengths))]
    if len(batch.classes) >= 2:
        cov = cross_covariance(batch)
        cse = covariance_se(batch.counts)
    else:
        v = np.var(batch.counts, axis=0, ddof=1).reshape(1, 1) if batch.trials > 1 else np.zeros((1, 1))
        cov, cse = v, np.zeros((1, 1))
    extra = {"conditioned": batch.conditioned, "seed": batch.seed}
    if batch.attempts is not None:
        extra["acceptance_rate"] = fmt(batch.trials / float(np.sum(batch.attempts)))
    return FitReport(n=batch.n, trials=batch.trials, fits=fits, covariance=cov,
                     covariance_se=cse, extra=extra)
