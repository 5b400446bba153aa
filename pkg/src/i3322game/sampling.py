"""Seeded random generators for local boxes, two-qubit states and measurement settings."""

from __future__ import annotations

import math
import random

from .game import LocalBoxParams
from .qmath import ComplexMatrix, trace
from .quantum import MeasurementSetting, TwoQubitState


def random_local_params(rng: random.Random) -> LocalBoxParams:
    """Uniform M, N and each C_ij inside its Frechet bounds.

    Every such box is normalized and no-signaling, but it need not be local:
    pairwise-feasible correlations can still violate I3322.
    """
    m = tuple(rng.random() for _ in range(3))
    n = tuple(rng.random() for _ in range(3))
    c = tuple(tuple(rng.uniform(max(0.0, mi + nj - 1.0), min(mi, nj)) for nj in n) for mi in m)
    return LocalBoxParams(m, n, c)


def random_local_mixture(rng: random.Random, terms: int = 4) -> LocalBoxParams:
    """A random convex mixture of deterministic strategy pairs, i.e. a genuinely local box."""
    w = [rng.random() for _ in range(terms)]
    total = sum(w)
    m, n, c = [0.0] * 3, [0.0] * 3, [[0.0] * 3 for _ in range(3)]
    for wk in w:
        ga, gb = rng.randrange(8), rng.randrange(8)
        # answer bits, question 1 first; M/N count answer 0
        ma = [1 - ((ga >> (2 - i)) & 1) for i in range(3)]
        nb = [1 - ((gb >> (2 - j)) & 1) for j in range(3)]
        for i in range(3):
            m[i] += wk / total * ma[i]
            n[i] += wk / total * nb[i]
            for j in range(3):
                c[i][j] += wk / total * ma[i] * nb[j]
    return LocalBoxParams(tuple(m), tuple(n), tuple(map(tuple, c)))


def random_state(rng: random.Random) -> TwoQubitState:
    """G G^dagger / Tr(G G^dagger) for a complex Gaussian 4x4 G."""
    g = ComplexMatrix(4, 4, tuple(complex(rng.gauss(0, 1), rng.gauss(0, 1)) for _ in range(16)))
    w = g @ g.adjoint()
    return TwoQubitState(w.scale(1.0 / trace(w).real))


def random_setting(rng: random.Random) -> MeasurementSetting:
    return MeasurementSetting(rng.uniform(-math.pi, math.pi), rng.uniform(0, 2 * math.pi))


def random_triple(rng: random.Random) -> tuple:
    return tuple(random_setting(rng) for _ in range(3))
