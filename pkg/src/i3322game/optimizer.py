"""Derivative-free search for measurement angles maximizing I3322 (and so social welfare).

The search is a fixed, seed-determined stream of objective evaluations:
rounds of coarse lattice samples, each followed by Nelder-Mead refinement of
the best few. The budget only truncates that stream, so a larger budget with
the same seed always sees every evaluation a smaller one did; the best value
can therefore never drop as the budget grows.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable, Sequence

from .game import ProbabilityBox
from .inequality import i3322_local_form
from .quantum import MeasurementSetting, TwoQubitState, box_from_state

TWO_PI = 2.0 * math.pi
DEFAULT_BUDGET = 10_000
DEFAULT_GRID_POINTS = 12
DEFAULT_TOP_K = 8
DEFAULT_SAMPLES_PER_ROUND = 256
DIAMETER_TOL = 1e-7

# Nelder-Mead coefficients
REFLECT, EXPAND, CONTRACT, SHRINK = 1.0, 2.0, 0.5, 0.5


class Restriction(str, Enum):
    PLANE_PHI_ZERO = "plane_phi_zero"
    FULL_BLOCH = "full_bloch"

    @property
    def dimension(self) -> int:
        return 6 if self is Restriction.PLANE_PHI_ZERO else 12

    @classmethod
    def parse(cls, value) -> "Restriction":
        if isinstance(value, Restriction):
            return value
        aliases = {"plane": cls.PLANE_PHI_ZERO, "full": cls.FULL_BLOCH}
        return aliases.get(value) or cls(value)


def wrap_angle(x: float) -> float:
    return x % TWO_PI


@dataclass(frozen=True)
class AngleConfiguration:
    """Six measurement settings as a flat angle vector.

    ``plane_phi_zero``: (thA1, thA2, thA3, thB1, thB2, thB3).
    ``full_bloch``: (thA1, phA1, thA2, phA2, ..., thB3, phB3).
    """

    restriction: Restriction
    vector: tuple

    def __post_init__(self):
        object.__setattr__(self, "restriction", Restriction.parse(self.restriction))
        object.__setattr__(self, "vector", tuple(float(v) for v in self.vector))
        if len(self.vector) != self.restriction.dimension:
            raise ValueError(f"{self.restriction.value} needs {self.restriction.dimension} angles, "
                             f"got {len(self.vector)}")

    def settings(self) -> tuple[tuple, tuple]:
        v = [wrap_angle(x) for x in self.vector]
        if self.restriction is Restriction.PLANE_PHI_ZERO:
            ms = [MeasurementSetting(t, 0.0) for t in v]
        else:
            ms = [MeasurementSetting(v[2 * k], v[2 * k + 1]) for k in range(6)]
        return tuple(ms[:3]), tuple(ms[3:])

    def canonical_vector(self) -> tuple:
        return tuple(wrap_angle(x) for x in self.vector)

    @classmethod
    def from_settings(cls, alice: Sequence[MeasurementSetting], bob: Sequence[MeasurementSetting],
                      restriction=Restriction.PLANE_PHI_ZERO) -> "AngleConfiguration":
        restriction = Restriction.parse(restriction)
        ms = list(alice) + list(bob)
        if restriction is Restriction.PLANE_PHI_ZERO:
            if any(wrap_angle(m.phi) != 0.0 for m in ms):
                raise ValueError("plane_phi_zero configuration requires phi = 0 everywhere")
            return cls(restriction, tuple(m.theta for m in ms))
        return cls(restriction, tuple(x for m in ms for x in (m.theta, m.phi)))

    def to_json(self) -> dict:
        alice, bob = self.settings()
        return {"restriction": self.restriction.value, "vector": list(self.vector),
                "alice": [m.to_json() for m in alice], "bob": [m.to_json() for m in bob]}


def welfare_from_s(s: float) -> float:
    return (2.0 * s + 5.0) / 9.0


def config_box(state: TwoQubitState, c: AngleConfiguration) -> ProbabilityBox:
    alice, bob = c.settings()
    return box_from_state(state, alice, bob)


def evaluate_config(state: TwoQubitState, c: AngleConfiguration) -> float:
    """I3322 value of the Born-rule box produced by ``c`` on ``state``."""
    return float(i3322_local_form(config_box(state, c).local_params()).s)


@dataclass(frozen=True)
class OptimizationResult:
    best_config: AngleConfiguration
    best_s: float
    best_welfare: float
    evaluations: int
    converged: bool
    seed: int = 0
    budget: int = 0
    objective: str = "s"

    def to_json(self) -> dict:
        return {
            "best_config": self.best_config.to_json(),
            "best_s": self.best_s,
            "best_welfare": self.best_welfare,
            "evaluations": self.evaluations,
            "converged": self.converged,
            "seed": self.seed,
            "budget": self.budget,
            "objective": self.objective,
        }


class _BudgetExhausted(Exception):
    pass


@dataclass
class _Tracker:
    fn: Callable[[tuple], float]  # value to maximize, on wrapped vectors
    budget: int
    used: int = 0
    best_value: float = -math.inf
    best_vector: tuple | None = None
    best_converged: bool = False
    current_run: list = field(default_factory=list)  # points found by the active simplex run

    def __call__(self, x) -> float:
        if self.used >= self.budget:
            raise _BudgetExhausted
        self.used += 1
        v = tuple(wrap_angle(t) for t in x)
        val = self.fn(v)
        if val > self.best_value or (val == self.best_value and v < self.best_vector):
            self.best_value, self.best_vector = val, v
            self.best_converged = False
            self.current_run.append(v)
        return val


def _nelder_mead(f: Callable, x0: Sequence[float], f0: float, step: float, tol: float) -> bool:
    """Maximize ``f`` from ``x0``; True once the simplex diameter drops below ``tol``.

    Runs until convergence or until ``f`` raises on budget exhaustion.
    """
    n = len(x0)
    pts = [list(x0)]
    vals = [f0]
    for k in range(n):
        x = list(x0)
        x[k] += step
        pts.append(x)
        vals.append(f(x))

    while True:
        order = sorted(range(n + 1), key=lambda k: -vals[k])
        pts = [pts[k] for k in order]
        vals = [vals[k] for k in order]
        best = pts[0]
        diameter = max(math.dist(best, p) for p in pts[1:])
        if diameter < tol:
            return True

        centroid = [sum(p[d] for p in pts[:-1]) / n for d in range(n)]
        worst = pts[-1]
        xr = [c + REFLECT * (c - w) for c, w in zip(centroid, worst)]
        fr = f(xr)
        if fr > vals[0]:
            xe = [c + EXPAND * (r - c) for c, r in zip(centroid, xr)]
            fe = f(xe)
            if fe > fr:
                pts[-1], vals[-1] = xe, fe
            else:
                pts[-1], vals[-1] = xr, fr
            continue
        if fr > vals[-2]:
            pts[-1], vals[-1] = xr, fr
            continue
        if fr > vals[-1]:
            xc = [c + CONTRACT * (r - c) for c, r in zip(centroid, xr)]
            fc = f(xc)
            if fc >= fr:
                pts[-1], vals[-1] = xc, fc
                continue
        else:
            xc = [c + CONTRACT * (w - c) for c, w in zip(centroid, worst)]
            fc = f(xc)
            if fc > vals[-1]:
                pts[-1], vals[-1] = xc, fc
                continue
        for k in range(1, n + 1):
            pts[k] = [b + SHRINK * (p - b) for b, p in zip(best, pts[k])]
            vals[k] = f(pts[k])


def _search(value_fn: Callable[[tuple], float], dim: int, budget: int, seed: int,
            warm_starts: Sequence[Sequence[float]], grid_points: int, top_k: int,
            samples_per_round: int, tol: float) -> _Tracker:
    tracker = _Tracker(value_fn, budget)
    rng = random.Random(seed)
    spacing = TWO_PI / grid_points
    round_no = 0
    try:
        while True:
            candidates = [tuple(w) for w in warm_starts] if round_no == 0 else []
            for _ in range(samples_per_round):
                candidates.append(tuple(spacing * rng.randrange(grid_points) for _ in range(dim)))
            scored = []
            for x in candidates:
                scored.append((-tracker(x), tuple(wrap_angle(t) for t in x), x))
            scored.sort(key=lambda item: (item[0], item[1]))
            for neg_val, _, x in scored[:top_k]:
                tracker.current_run = []
                converged = _nelder_mead(tracker, x, -neg_val, 0.5 * spacing, tol)
                if converged and tracker.best_vector in tracker.current_run:
                    tracker.best_converged = True
            round_no += 1
    except _BudgetExhausted:
        pass
    return tracker


def maximize_s(state: TwoQubitState, restriction=Restriction.PLANE_PHI_ZERO,
               budget: int = DEFAULT_BUDGET, seed: int = 0,
               warm_starts: Sequence[AngleConfiguration] = (), objective: str = "s",
               grid_points: int = DEFAULT_GRID_POINTS, top_k: int = DEFAULT_TOP_K,
               samples_per_round: int = DEFAULT_SAMPLES_PER_ROUND,
               tol: float = DIAMETER_TOL) -> OptimizationResult:
    """Multi-start lattice + Nelder-Mead maximization of S over measurement angles.

    ``objective="welfare"`` maximizes (2S + 5)/9 instead; the search path is
    the same up to floating-point ties. Deterministic in (state, restriction,
    budget, seed, warm_starts).
    """
    restriction = Restriction.parse(restriction)
    if budget < 1:
        raise ValueError("budget must be at least 1")
    if objective not in ("s", "welfare"):
        raise ValueError(f"unknown objective {objective!r}")

    def value(v):
        s = evaluate_config(state, AngleConfiguration(restriction, v))
        if objective == "s":
            return s
        # exact rational welfare keeps the map from S strictly increasing, so
        # both objectives make identical comparisons
        return (2 * Fraction(s) + 5) / 9

    starts = []
    for w in warm_starts:
        if w.restriction is not restriction:
            raise ValueError("warm start restriction does not match the search restriction")
        starts.append(w.vector)

    tracker = _search(value, restriction.dimension, budget, seed, starts,
                      grid_points, top_k, samples_per_round, tol)
    best = AngleConfiguration(restriction, tracker.best_vector)
    best_s = evaluate_config(state, best)
    return OptimizationResult(best, best_s, welfare_from_s(best_s), tracker.used,
                              tracker.best_converged, seed, budget, objective)


def restricted_sws(state: TwoQubitState, budget: int = DEFAULT_BUDGET, seed: int = 0,
                   warm_starts: Sequence[AngleConfiguration] = ()) -> OptimizationResult:
    """Best social welfare with all measurements in the x-z plane, for a fixed shared state."""
    return maximize_s(state, Restriction.PLANE_PHI_ZERO, budget, seed, warm_starts)
