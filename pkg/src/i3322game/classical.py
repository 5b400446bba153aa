"""Deterministic classical strategies, the 8x8 payoff table and its pure Nash equilibria."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction

from .game import (GameDefinition, LocalBoxParams, PayoffPair, closed_form_payoffs,
                   expand_local_box, paper_game, payoffs_from_box)
from .inequality import i3322_local_form

SCALE = 27


@dataclass(frozen=True)
class Strategy:
    """g_k: the answers to questions 1, 2, 3 read as a binary number equal k."""

    index: int

    def __post_init__(self):
        if not 0 <= self.index <= 7:
            raise ValueError(f"strategy index {self.index} outside 0..7")

    @property
    def answers(self) -> tuple[int, int, int]:
        k = self.index
        return ((k >> 2) & 1, (k >> 1) & 1, k & 1)

    @classmethod
    def from_answers(cls, answers) -> "Strategy":
        a1, a2, a3 = answers
        return cls(4 * a1 + 2 * a2 + a3)

    @property
    def name(self) -> str:
        return f"g{self.index}"


STRATEGIES = tuple(Strategy(k) for k in range(8))


def strategy_to_local_params(ga: Strategy, gb: Strategy) -> LocalBoxParams:
    # M_i / N_j are probabilities of answering 0
    m = tuple(1 - x for x in ga.answers)
    n = tuple(1 - y for y in gb.answers)
    return LocalBoxParams(m, n, tuple(tuple(mi * nj for nj in n) for mi in m))


@dataclass(frozen=True)
class PayoffTable:
    cells: tuple  # cells[r][c] -> PayoffPair, r = Alice's strategy, c = Bob's
    scale: int = SCALE

    def __getitem__(self, rc: tuple[int, int]) -> PayoffPair:
        r, c = rc
        return self.cells[r][c]

    def scaled(self) -> list[list[tuple]]:
        """Entries times ``scale``; integers when they are exact."""
        out = []
        for row in self.cells:
            out_row = []
            for pp in row:
                fa, fb = pp.scaled(self.scale)
                out_row.append((_as_int(fa), _as_int(fb)))
            out.append(out_row)
        return out

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write(f"# payoffs x{self.scale} (a factor 1/{self.scale} omitted); rows Alice, columns Bob\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([""] + [s.name for s in STRATEGIES])
        for s, row in zip(STRATEGIES, self.scaled()):
            w.writerow([s.name] + [f"{_fmt(a)},{_fmt(b)}" for a, b in row])
        return buf.getvalue()

    def to_json(self) -> dict:
        return {
            "scale": self.scale,
            "row_player": "A",
            "strategies": [s.name for s in STRATEGIES],
            "rows": [[[_json_num(a), _json_num(b)] for a, b in row] for row in self.scaled()],
        }


def _as_int(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    if isinstance(x, int):
        return x
    return x


def _fmt(x) -> str:
    return str(x) if isinstance(x, int) else repr(float(x))


def _json_num(x):
    return x if isinstance(x, int) else float(x)


def build_payoff_table(game: GameDefinition | None = None) -> PayoffTable:
    """All 64 deterministic strategy pairs.

    The paper game goes through the closed-form payoff expressions; any other
    game falls back to the generic utility sum.
    """
    game = paper_game() if game is None else game
    use_closed_form = game == paper_game()
    cells = []
    for ga in STRATEGIES:
        row = []
        for gb in STRATEGIES:
            params = strategy_to_local_params(ga, gb)
            if use_closed_form:
                row.append(closed_form_payoffs(params))
            else:
                row.append(payoffs_from_box(expand_local_box(params), game))
        cells.append(tuple(row))
    return PayoffTable(tuple(cells))


@dataclass(frozen=True)
class EquilibriumReport:
    cells: tuple  # ((r, c), ...) sorted
    payoffs: dict
    max_welfare_over_all_cells: object

    def to_json(self, scale: int = SCALE) -> dict:
        return {
            "scale": scale,
            "equilibria": [
                {"alice": f"g{r}", "bob": f"g{c}",
                 "payoff_scaled": [_json_num(_as_int(x)) for x in self.payoffs[(r, c)].scaled(scale)],
                 **self.payoffs[(r, c)].to_json()}
                for r, c in self.cells
            ],
            "max_welfare_over_all_cells": float(self.max_welfare_over_all_cells),
        }


def nash_equilibria(t: PayoffTable, tol: float = 0) -> EquilibriumReport:
    """Pure-strategy cells where each player is (weakly) best-responding.

    With the default ``tol=0`` rational tables are compared exactly.
    """
    n = len(t.cells)
    found = []
    for r in range(n):
        for c in range(n):
            fa, fb = t[r, c].F_A, t[r, c].F_B
            # fa + tol rather than other - tol: keeps Fractions exact when tol is the int 0
            alice_ok = all(fa + tol >= t[k, c].F_A for k in range(n))
            bob_ok = all(fb + tol >= t[r, k].F_B for k in range(n))
            if alice_ok and bob_ok:
                found.append((r, c))
    return EquilibriumReport(
        cells=tuple(found),
        payoffs={rc: t[rc] for rc in found},
        max_welfare_over_all_cells=classical_welfare_bound(t),
    )


def classical_welfare_bound(t: PayoffTable):
    return max(pp.welfare for row in t.cells for pp in row)


def classical_max_S():
    """Largest I3322 value over the 64 deterministic local boxes (the local polytope's vertices)."""
    return max(i3322_local_form(strategy_to_local_params(ga, gb)).s
               for ga in STRATEGIES for gb in STRATEGIES)
