"""Golden reproduction suite: every published number of the game, checked end to end."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .classical import (STRATEGIES, build_payoff_table, classical_max_S, classical_welfare_bound,
                        nash_equilibria, strategy_to_local_params)
from .game import (GameDefinition, expand_local_box, paper_game, paper_utilities,
                   payoffs_from_box)
from .inequality import all_forms, i3322_local_form, max_chsh_horodecki, max_discrepancy
from .optimizer import (DEFAULT_BUDGET, AngleConfiguration, Restriction, evaluate_config,
                        maximize_s, restricted_sws)
from .quantum import box_from_state, paper_settings, paper_state, singlet_state
from .sampling import random_local_mixture, random_state, random_triple

# Published 8x8 table, payoffs x27; rows Alice's strategy g0..g7, columns Bob's.
PAPER_TABLE = (
    ((6, 9), (5, 10), (6, 9), (5, 10), (3, 6), (2, 7), (3, 6), (2, 7)),
    ((7, 8), (6, 9), (4, 5), (3, 6), (7, 8), (6, 9), (4, 5), (3, 6)),
    ((3, 6), (-1, 4), (6, 9), (2, 7), (3, 6), (-1, 4), (6, 9), (2, 7)),
    ((4, 5), (0, 3), (4, 5), (0, 3), (7, 8), (3, 6), (7, 8), (3, 6)),
    ((0, 3), (2, 7), (3, 6), (5, 10), (0, 3), (2, 7), (3, 6), (5, 10)),
    ((1, 2), (3, 6), (1, 2), (3, 6), (4, 5), (6, 9), (4, 5), (6, 9)),
    ((-3, 0), (-4, 1), (3, 6), (2, 7), (0, 3), (-1, 4), (6, 9), (5, 10)),
    ((-2, -1), (-3, 0), (1, 2), (0, 3), (4, 5), (3, 6), (7, 8), (6, 9)),
)
SHADED_EQUILIBRIA = ((0, 3), (1, 1), (1, 5), (2, 2), (3, 4), (3, 6), (4, 3), (5, 5), (5, 7), (7, 7))
EQUILIBRIUM_PAYOFFS = {(5, 10), (6, 9), (7, 8)}

PAPER_BOX_VALUES = {
    "M_1": 0.808687, "M_2": 0.808687, "M_3": 0.5,
    "N_1": 0.646969, "N_2": 0.646969, "N_3": 0.5,
    "C_11": 0.576785, "C_12": 0.646188, "C_13": 0.464447,
    "C_21": 0.646188, "C_22": 0.576785, "C_23": 0.344239,
    "C_31": 0.421634, "C_32": 0.225335, "C_33": 0.08,
}
PAPER_F_A = 6.03858 / 27
PAPER_F_B = 9.03858 / 27
PAPER_WELFARE = 15.0772 / 27
PAPER_S = 0.012859  # the printed box values substituted into the local-parameter form
SINGLET_MAX_S = 0.25


@dataclass
class Check:
    name: str
    expected: Any
    actual: Any
    tolerance: float | None
    passed: bool

    def to_json(self) -> dict:
        return {"name": self.name, "expected": _plain(self.expected), "actual": _plain(self.actual),
                "tolerance": self.tolerance, "pass": self.passed}

    def line(self) -> str:
        tol = "exact" if not self.tolerance else f"tol {self.tolerance:g}"
        return (f"[{'PASS' if self.passed else 'FAIL'}] {self.name}: expected {_short(self.expected)}, "
                f"got {_short(self.actual)} ({tol})")


@dataclass
class RunReport:
    checks: list = field(default_factory=list)

    @property
    def overall_pass(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name, expected, actual, tolerance=None, passed=None) -> Check:
        if passed is None:
            if tolerance:
                passed = abs(float(actual) - float(expected)) <= tolerance
            else:
                passed = actual == expected
        c = Check(name, expected, actual, tolerance, bool(passed))
        self.checks.append(c)
        return c

    def to_json(self) -> dict:
        return {"overall_pass": self.overall_pass, "checks": [c.to_json() for c in self.checks]}

    def text(self) -> str:
        lines = [c.line() for c in self.checks]
        lines.append(f"overall: {'PASS' if self.overall_pass else 'FAIL'} "
                     f"({sum(c.passed for c in self.checks)}/{len(self.checks)} checks)")
        return "\n".join(lines)


def _plain(x):
    if isinstance(x, Fraction):
        return float(x)
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, set):
        return sorted(_plain(v) for v in x)
    return x


def _short(x) -> str:
    if isinstance(x, float):
        return f"{x:.10g}"
    s = str(_plain(x))
    return s if len(s) <= 60 else s[:57] + "..."


def faulty_game() -> GameDefinition:
    """The paper game with one transcription error: u_A(00|A_1B_1) = 1/3 instead of 2/3."""
    return GameDefinition(paper_utilities().replace("A", (0, 0, 0, 0), Fraction(1, 3)))


# ---------------------------------------------------------------- check groups

def check_classical(report: RunReport, game: GameDefinition) -> None:
    table = build_payoff_table(game)
    scaled = tuple(tuple(tuple(cell) for cell in row) for row in table.scaled())
    mismatches = [(f"g{r}", f"g{c}") for r in range(8) for c in range(8) if scaled[r][c] != PAPER_TABLE[r][c]]
    report.add("classical_table_x27", "64/64 cells", f"{64 - len(mismatches)}/64 cells",
               passed=not mismatches)

    eq = nash_equilibria(table)
    found = tuple(eq.cells)
    payoffs_ok = all(tuple(eq.payoffs[rc].scaled(27)) in EQUILIBRIUM_PAYOFFS for rc in found)
    report.add("nash_equilibria", [f"(g{r},g{c})" for r, c in SHADED_EQUILIBRIA],
               [f"(g{r},g{c})" for r, c in found],
               passed=found == SHADED_EQUILIBRIA and payoffs_ok)
    extra = sorted(set(found) - set(SHADED_EQUILIBRIA))
    missing = sorted(set(SHADED_EQUILIBRIA) - set(found))
    if extra or missing:
        report.add("equilibria_vs_shading_discrepancy", "none",
                   {"not_shaded": extra, "shaded_not_found": missing}, passed=False)

    report.add("classical_max_S", 0, classical_max_S())
    report.add("classical_welfare_bound", Fraction(15, 27), classical_welfare_bound(table))


def check_quantum(report: RunReport, game: GameDefinition) -> None:
    state = paper_state()
    alice, bob = paper_settings()
    box = box_from_state(state, alice, bob)
    lp = box.local_params()
    computed = {f"M_{i + 1}": lp.M[i] for i in range(3)}
    computed.update({f"N_{j + 1}": lp.N[j] for j in range(3)})
    computed.update({f"C_{i + 1}{j + 1}": lp.C[i][j] for i in range(3) for j in range(3)})
    for name, expected in PAPER_BOX_VALUES.items():
        report.add(name, expected, computed[name], 1e-5)

    pay = payoffs_from_box(box, game)
    report.add("quantum_F_A", PAPER_F_A, float(pay.F_A), 1e-4)
    report.add("quantum_F_B", PAPER_F_B, float(pay.F_B), 1e-4)
    report.add("quantum_welfare", PAPER_WELFARE, float(pay.welfare), 1e-4)
    report.add("F_A_exceeds_classical_6/27", "> 6/27", float(pay.F_A), passed=pay.F_A > Fraction(6, 27))
    report.add("F_B_exceeds_classical_9/27", "> 9/27", float(pay.F_B), passed=pay.F_B > Fraction(9, 27))
    report.add("welfare_exceeds_classical_15/27", "> 15/27", float(pay.welfare),
               passed=pay.welfare > Fraction(15, 27))

    s = i3322_local_form(lp).s
    report.add("I3322_paper_box", PAPER_S, s, 1e-5)
    chsh = max_chsh_horodecki(state)
    report.add("max_chsh_paper_state_below_2", "< 2", chsh.max_chsh, passed=chsh.max_chsh < 2)
    report.add("max_chsh_singlet", 2 * math.sqrt(2), max_chsh_horodecki(singlet_state()).max_chsh, 1e-9)


def check_optimizer(report: RunReport, budget: int = DEFAULT_BUDGET) -> None:
    res = maximize_s(singlet_state(), Restriction.FULL_BLOCH, budget=budget, seed=0)
    report.add("singlet_max_S_full_bloch", SINGLET_MAX_S, res.best_s, 1e-3)

    paper_cfg = AngleConfiguration.from_settings(*paper_settings())
    sws = restricted_sws(paper_state(), budget=budget, seed=0)
    report.add("restricted_sws_welfare", f">= {PAPER_WELFARE - 1e-4:.10g}", sws.best_welfare,
               passed=sws.best_welfare >= PAPER_WELFARE - 1e-4)
    gap = sws.best_s - evaluate_config(paper_state(), paper_cfg)
    report.add("paper_settings_within_1e-4_of_restricted_optimum", "<= 1e-4", gap, passed=0 <= gap <= 1e-4)


def check_identities(report: RunReport, game: GameDefinition, n: int = 1000, seed: int = 0) -> None:
    rng = random.Random(seed)
    worst_welfare = worst_forms = worst_signal = 0.0
    worst_local_s = -math.inf
    for k in range(n):
        if k % 2 == 0:
            params = random_local_mixture(rng)
            worst_local_s = max(worst_local_s, i3322_local_form(params).s)
            box = expand_local_box(params)
        else:
            box = box_from_state(random_state(rng), random_triple(rng), random_triple(rng))
            worst_signal = max(worst_signal, box.signaling_gap())
        pay = payoffs_from_box(box, game)
        s = i3322_local_form(box.local_params()).s
        worst_welfare = max(worst_welfare, abs(pay.welfare - (2 * s + 5) / 9))
        worst_forms = max(worst_forms, max_discrepancy(all_forms(box).values()))
    report.add("welfare_identity_random_boxes", 0.0, worst_welfare, 1e-12)
    report.add("three_form_I3322_agreement", 0.0, worst_forms, 1e-9)
    report.add("born_rule_boxes_no_signaling", 0.0, worst_signal, 1e-9)
    report.add("local_boxes_S_le_0", "<= 1e-9", worst_local_s, passed=worst_local_s <= 1e-9)

    brute_equal = all(
        payoffs_from_box(expand_local_box(strategy_to_local_params(ga, gb)), game)
        == build_payoff_table(paper_game())[ga.index, gb.index]
        for ga in STRATEGIES for gb in STRATEGIES)
    report.add("closed_form_vs_brute_force_64_pairs", True, brute_equal)

    a = maximize_s(paper_state(), budget=600, seed=3)
    b = maximize_s(paper_state(), budget=600, seed=3)
    report.add("optimizer_determinism", True, a == b)
    c = maximize_s(paper_state(), budget=1200, seed=3)
    report.add("optimizer_monotone_budget", f">= {a.best_s:.12g}", c.best_s, passed=c.best_s >= a.best_s)


def run_reproduction(game: GameDefinition | None = None, budget: int = DEFAULT_BUDGET,
                     include_optimizer: bool = True) -> RunReport:
    game = paper_game() if game is None else game
    report = RunReport()
    check_classical(report, game)
    check_quantum(report, game)
    if include_optimizer:
        check_optimizer(report, budget)
    check_identities(report, game)
    return report
