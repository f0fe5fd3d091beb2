"""Two-type Galton-Watson simulation of the implication-digraph exploration.

Generation sizes are the pair Z_t = (positive frontier, negative frontier).
Reproduction is Poisson with type-to-type means given by a 2x2 matrix M in
the row convention: a parent of type i begets Poisson(M[i, j]) children of
type j.  For the implication digraph M = alpha [[p1, 2 p0], [2 p2, p1]]:
a positive literal leads to alpha p1 positive and 2 alpha p0 negative
out-neighbours on average, a negative literal to 2 alpha p2 positive and
alpha p1 negative ones.  Since sums of independent Poissons are Poisson, a
whole generation advances at once via Z_(t+1) ~ Poisson(M^T Z_t)
componentwise, which is what both simulators draw.

Total progeny T counts every individual including the root.  Subcritical
runs (spectral radius rho < 1) die out; T is truncated at a configurable cap
so that a misconfigured supercritical matrix cannot hang the process, with
the truncation reported via the ``capped`` flag.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .analytics import SupercriticalError, tail_constants

START_TYPES = ("positive", "negative")


@dataclass(frozen=True)
class GwConfig:
    mean_matrix: np.ndarray
    start_type: str = "positive"
    runs: int = 1
    cap: int = 1_000_000
    seed: int = 0

    def __post_init__(self):
        m = np.asarray(self.mean_matrix, dtype=float)
        if m.shape != (2, 2) or (m < 0).any() or not np.isfinite(m).all():
            raise ValueError("mean matrix must be 2x2, finite and nonnegative")
        object.__setattr__(self, "mean_matrix", m)
        if self.start_type not in START_TYPES:
            raise ValueError(f"start_type must be one of {START_TYPES}")
        if self.cap < 1:
            raise ValueError("cap must be at least 1")
        if self.runs < 1:
            raise ValueError("runs must be at least 1")

    @property
    def start_index(self) -> int:
        return START_TYPES.index(self.start_type)


@dataclass(frozen=True)
class GwOutcome:
    total: int
    generations: int
    capped: bool


def spectral_radius(matrix: np.ndarray) -> float:
    return float(np.abs(np.linalg.eigvals(np.asarray(matrix, dtype=float))).max())


def symmetric_mean_matrix(rho: float) -> np.ndarray:
    """The matrix (rho/2) * ones(2, 2): spectral radius rho, equal Perron
    weights, so the explicit tail constants hold without slack factors."""
    if rho < 0:
        raise ValueError("rho must be nonnegative")
    return (rho / 2.0) * np.ones((2, 2))


def simulate_gw(cfg: GwConfig, rng: np.random.Generator) -> GwOutcome:
    """One run of the branching process described in the module docstring."""
    m = cfg.mean_matrix
    z = np.zeros(2)
    z[cfg.start_index] = 1.0
    total = 1
    generations = 0
    while True:
        z = rng.poisson(m.T @ z).astype(float)
        born = int(z.sum())
        if born == 0:
            return GwOutcome(total=total, generations=generations, capped=False)
        generations += 1
        total += born
        if total >= cfg.cap:
            return GwOutcome(total=cfg.cap, generations=generations, capped=True)


@dataclass(frozen=True)
class GwEnsemble:
    totals: np.ndarray
    generations: np.ndarray
    capped: np.ndarray

    def outcomes(self) -> Iterable[GwOutcome]:
        for t, g, c in zip(self.totals, self.generations, self.capped):
            yield GwOutcome(int(t), int(g), bool(c))


def run_ensemble(cfg: GwConfig) -> GwEnsemble:
    """All cfg.runs runs at once, advanced generation-synchronously."""
    rng = np.random.default_rng(np.random.SeedSequence(cfg.seed))
    m = cfg.mean_matrix
    z = np.zeros((cfg.runs, 2))
    z[:, cfg.start_index] = 1.0
    totals = np.ones(cfg.runs, dtype=np.int64)
    generations = np.zeros(cfg.runs, dtype=np.int64)
    capped = np.zeros(cfg.runs, dtype=bool)
    alive = np.ones(cfg.runs, dtype=bool)
    while alive.any():
        lam = z @ m
        z = rng.poisson(lam).astype(float)
        z[~alive] = 0.0
        born = z.sum(axis=1).astype(np.int64)
        grew = alive & (born > 0)
        totals[grew] += born[grew]
        generations[grew] += 1
        hit_cap = grew & (totals >= cfg.cap)
        totals[hit_cap] = cfg.cap
        capped[hit_cap] = True
        alive = grew & ~hit_cap
        z[~alive] = 0.0
    return GwEnsemble(totals=totals, generations=generations, capped=capped)


def expected_total_progeny(matrix: np.ndarray, start_type: str = "positive") -> float:
    """Mean total progeny from one root: the start entry of 1^T (I - M^T)^-1.

    Each type-i individual contributes itself plus M[i, j] expected children
    of type j, so the mean-progeny vector solves t = 1 + M t, i.e.
    t = (I - M)^-1 (1, 1)^T, equivalently the row vector 1^T (I - M^T)^-1.
    """
    m = np.asarray(matrix, dtype=float)
    if spectral_radius(m) >= 1.0:
        raise SupercriticalError("expected total progeny diverges for rho >= 1")
    t = np.linalg.solve(np.eye(2) - m, np.ones(2))
    return float(t[START_TYPES.index(start_type)])


@dataclass(frozen=True)
class TailPoint:
    length: int
    empirical_sf: float
    bound: float
    stderr: float


def tail_curve(cfg: GwConfig, l_max: int) -> list[TailPoint]:
    """Empirical P(T >= L) next to the certificate bound zeta exp(-delta L).

    delta and zeta are evaluated at the spectral radius of cfg.mean_matrix;
    a supercritical matrix is rejected.
    """
    rho = spectral_radius(cfg.mean_matrix)
    constants = tail_constants(rho)
    ensemble = run_ensemble(cfg)
    totals = ensemble.totals
    points = []
    for length in range(1, l_max + 1):
        sf = float((totals >= length).mean())
        bound = constants.zeta * np.exp(-constants.delta * length)
        stderr = float(np.sqrt(sf * (1.0 - sf) / cfg.runs))
        points.append(
            TailPoint(length=length, empirical_sf=sf, bound=float(bound), stderr=stderr)
        )
    return points
