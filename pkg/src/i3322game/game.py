"""The 3-question, 2-answer Bayesian game: utilities, probability boxes, payoffs.

Questions are 0-based internally (``i`` in 0..2 means A_{i+1}); labels such as
``"A1B2"`` are produced only at the display/serialization surface.

Answer pairs are always ordered ``(a, b)`` = (Alice's answer, Bob's answer) and
box rows list them as ``00, 01, 10, 11``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Real
from typing import Sequence

QUESTIONS = (0, 1, 2)
QUESTION_PAIRS = tuple((i, j) for i in QUESTIONS for j in QUESTIONS)
ANSWER_PAIRS = ((0, 0), (0, 1), (1, 0), (1, 1))
BOX_TOL = 1e-9

Number = Real  # int, Fraction or float


class InvalidBox(ValueError):
    pass


def pair_label(i: int, j: int) -> str:
    return f"A{i + 1}B{j + 1}"


def parse_pair_label(label: str) -> tuple[int, int]:
    if len(label) != 4 or label[0] != "A" or label[2] != "B":
        raise ValueError(f"bad question-pair label {label!r}")
    i, j = int(label[1]) - 1, int(label[3]) - 1
    if i not in QUESTIONS or j not in QUESTIONS:
        raise ValueError(f"bad question-pair label {label!r}")
    return i, j


# ---------------------------------------------------------------- utilities

@dataclass(frozen=True)
class UtilityTable:
    """u_A(a,b|i,j) and u_B(a,b|i,j), keyed by ``(i, j, a, b)``."""

    u_a: dict = field(hash=False)
    u_b: dict = field(hash=False)

    def __post_init__(self):
        keys = {(i, j, a, b) for (i, j) in QUESTION_PAIRS for (a, b) in ANSWER_PAIRS}
        if set(self.u_a) != keys or set(self.u_b) != keys:
            raise ValueError("utility table must have exactly 9 x 4 entries per player")

    def alice(self, i: int, j: int, a: int, b: int) -> Number:
        return self.u_a[(i, j, a, b)]

    def bob(self, i: int, j: int, a: int, b: int) -> Number:
        return self.u_b[(i, j, a, b)]

    @classmethod
    def from_boxes(cls, boxes: dict[tuple[int, int], dict[tuple[int, int], tuple]]) -> "UtilityTable":
        """Build from per-question-pair boxes ``{(i, j): {(a, b): (u_A, u_B)}}``."""
        u_a, u_b = {}, {}
        for (i, j), box in boxes.items():
            for (a, b), (ua, ub) in box.items():
                u_a[(i, j, a, b)] = ua
                u_b[(i, j, a, b)] = ub
        return cls(u_a, u_b)

    def map(self, fa=None, fb=None) -> "UtilityTable":
        """A new table with ``fa``/``fb`` applied to every entry of each player."""
        fa = fa or (lambda x: x)
        fb = fb or (lambda x: x)
        return UtilityTable({k: fa(v) for k, v in self.u_a.items()},
                            {k: fb(v) for k, v in self.u_b.items()})

    def replace(self, player: str, key: tuple[int, int, int, int], value: Number) -> "UtilityTable":
        u_a, u_b = dict(self.u_a), dict(self.u_b)
        (u_a if player == "A" else u_b)[key] = value
        return UtilityTable(u_a, u_b)

    def __eq__(self, other):
        return isinstance(other, UtilityTable) and self.u_a == other.u_a and self.u_b == other.u_b


def _f(s: str) -> Fraction:
    return Fraction(s)


# Rows are Alice's answer a, columns Bob's answer b.
_BOX_A1 = {(0, 0): (_f("2/3"), _f("1")), (0, 1): (_f("-1/3"), _f("0")),
           (1, 0): (_f("0"), _f("1/3")), (1, 1): (_f("0"), _f("1/3"))}
_BOX_A2B1 = {(0, 0): (_f("1/2"), _f("0")), (0, 1): (_f("1/2"), _f("0")),
             (1, 0): (_f("-1/2"), _f("-1")), (1, 1): (_f("1/2"), _f("0"))}
_BOX_A2B3 = {(0, 0): (_f("-2/3"), _f("-1/3")), (0, 1): (_f("1/3"), _f("2/3")),
             (1, 0): (_f("1/3"), _f("2/3")), (1, 1): (_f("1/3"), _f("2/3"))}
_BOX_A2B2 = {(0, 0): (_f("1/3"), _f("2/3")), (0, 1): (_f("1/3"), _f("2/3")),
             (1, 0): (_f("-2/3"), _f("-1/3")), (1, 1): (_f("1/3"), _f("2/3"))}
_BOX_A3B3 = {(0, 0): (_f("0"), _f("0")), (0, 1): (_f("-1/3"), _f("1/3")),
             (1, 0): (_f("1/3"), _f("-1/3")), (1, 1): (_f("0"), _f("0"))}


def paper_utilities() -> UtilityTable:
    """The five utility boxes of the game, expanded to all nine question pairs."""
    return UtilityTable.from_boxes({
        (0, 0): _BOX_A1, (0, 1): _BOX_A1, (0, 2): _BOX_A1,
        (1, 0): _BOX_A2B1, (2, 0): _BOX_A2B1,
        (1, 2): _BOX_A2B3, (2, 1): _BOX_A2B3,
        (1, 1): _BOX_A2B2,
        (2, 2): _BOX_A3B3,
    })


def zero_utilities() -> UtilityTable:
    zero = {ab: (Fraction(0), Fraction(0)) for ab in ANSWER_PAIRS}
    return UtilityTable.from_boxes({ij: zero for ij in QUESTION_PAIRS})


# ---------------------------------------------------------------- game

def uniform_prior() -> dict[tuple[int, int], Fraction]:
    return {ij: Fraction(1, 9) for ij in QUESTION_PAIRS}


@dataclass(frozen=True)
class GameDefinition:
    utilities: UtilityTable
    prior: dict = field(default_factory=uniform_prior, hash=False)
    question_count_per_player: int = 3

    def __post_init__(self):
        if set(self.prior) != set(QUESTION_PAIRS):
            raise ValueError("prior must cover all 9 question pairs")
        if any(p < 0 or p > 1 for p in self.prior.values()):
            raise ValueError("prior entries must lie in [0, 1]")
        if abs(sum(self.prior.values()) - 1) > BOX_TOL:
            raise ValueError("prior must sum to 1")

    def __eq__(self, other):
        return (isinstance(other, GameDefinition) and self.utilities == other.utilities
                and self.prior == other.prior)


def paper_game() -> GameDefinition:
    return GameDefinition(paper_utilities())


# ---------------------------------------------------------------- boxes

@dataclass(frozen=True)
class LocalBoxParams:
    """Marginals M_i = P(a=0|A_i), N_j = P(b=0|B_j) and correlations C_ij = P(00|A_iB_j)."""

    M: tuple
    N: tuple
    C: tuple  # 3x3, C[i][j]

    def __post_init__(self):
        object.__setattr__(self, "M", tuple(self.M))
        object.__setattr__(self, "N", tuple(self.N))
        object.__setattr__(self, "C", tuple(tuple(row) for row in self.C))
        if len(self.M) != 3 or len(self.N) != 3 or len(self.C) != 3 or any(len(r) != 3 for r in self.C):
            raise InvalidBox("LocalBoxParams needs 3 M, 3 N and 3x3 C values")

    def validate(self, tol: float = BOX_TOL) -> None:
        for name, vals in (("M", self.M), ("N", self.N)):
            for k, v in enumerate(vals):
                if v < -tol or v > 1 + tol:
                    raise InvalidBox(f"{name}_{k + 1} = {v} outside [0, 1]")
        for i, j in QUESTION_PAIRS:
            c, m, n = self.C[i][j], self.M[i], self.N[j]
            lo, hi = max(0, m + n - 1), min(m, n)
            if c < lo - tol or c > hi + tol:
                raise InvalidBox(
                    f"C_{i + 1}{j + 1} = {c} outside [{lo}, {hi}] for ({pair_label(i, j)})")

    def to_json(self) -> dict:
        return {"M": [float(x) for x in self.M], "N": [float(x) for x in self.N],
                "C": [[float(x) for x in row] for row in self.C]}

    @classmethod
    def from_json(cls, data: dict) -> "LocalBoxParams":
        return cls(tuple(data["M"]), tuple(data["N"]), tuple(tuple(r) for r in data["C"]))

    @classmethod
    def constant(cls, value) -> "LocalBoxParams":
        return cls((value,) * 3, (value,) * 3, ((value,) * 3,) * 3)


@dataclass(frozen=True)
class ProbabilityBox:
    """P(a,b | A_i, B_j): ``entries[(i, j)] = (P00, P01, P10, P11)``."""

    entries: dict = field(hash=False)

    def __post_init__(self):
        if set(self.entries) != set(QUESTION_PAIRS):
            raise InvalidBox("probability box must have all 9 question pairs")
        if any(len(row) != 4 for row in self.entries.values()):
            raise InvalidBox("each box row needs 4 answer-pair probabilities")
        object.__setattr__(self, "entries", {k: tuple(v) for k, v in self.entries.items()})

    def p(self, i: int, j: int, a: int, b: int) -> Number:
        return self.entries[(i, j)][2 * a + b]

    def alice_zero(self, i: int, j: int = 0) -> Number:
        """P(a=0 | A_i) read off the row (A_i, B_j)."""
        row = self.entries[(i, j)]
        return row[0] + row[1]

    def bob_zero(self, j: int, i: int = 0) -> Number:
        row = self.entries[(i, j)]
        return row[0] + row[2]

    def signaling_gap(self) -> float:
        """Largest dependence of one player's marginal on the other's question."""
        gap = 0.0
        for k in QUESTIONS:
            am = [self.alice_zero(k, j) for j in QUESTIONS]
            bm = [self.bob_zero(k, i) for i in QUESTIONS]
            gap = max(gap, float(max(am) - min(am)), float(max(bm) - min(bm)))
        return gap

    def validate(self, tol: float = BOX_TOL, require_no_signaling: bool = True) -> None:
        for (i, j), row in self.entries.items():
            if any(x < -tol or x > 1 + tol for x in row):
                raise InvalidBox(f"row {pair_label(i, j)} has entries outside [0, 1]: {row}")
            if abs(sum(row) - 1) > tol:
                raise InvalidBox(f"row {pair_label(i, j)} sums to {sum(row)}")
        if require_no_signaling and self.signaling_gap() > tol:
            raise InvalidBox(f"box is signaling (gap {self.signaling_gap():.3g})")

    def local_params(self) -> LocalBoxParams:
        """Marginals read from the first partner question; exact for no-signaling boxes."""
        return LocalBoxParams(
            tuple(self.alice_zero(i) for i in QUESTIONS),
            tuple(self.bob_zero(j) for j in QUESTIONS),
            tuple(tuple(self.entries[(i, j)][0] for j in QUESTIONS) for i in QUESTIONS),
        )

    def to_json(self) -> dict:
        return {
            "columns": ["00", "01", "10", "11"],
            "rows": [{"question": pair_label(i, j), "p": [float(x) for x in self.entries[(i, j)]]}
                     for i, j in QUESTION_PAIRS],
        }

    @classmethod
    def from_json(cls, data: dict) -> "ProbabilityBox":
        rows = data["rows"]
        if len(rows) != 9:
            raise InvalidBox("box JSON needs 9 rows")
        return cls({parse_pair_label(r["question"]): tuple(r["p"]) for r in rows})

    @classmethod
    def mixture(cls, weights: Sequence, boxes: Sequence["ProbabilityBox"]) -> "ProbabilityBox":
        return cls({ij: tuple(sum(w * b.entries[ij][k] for w, b in zip(weights, boxes)) for k in range(4))
                    for ij in QUESTION_PAIRS})


def expand_local_box(p: LocalBoxParams, tol: float = BOX_TOL) -> ProbabilityBox:
    p.validate(tol)
    entries = {}
    for i, j in QUESTION_PAIRS:
        c, m, n = p.C[i][j], p.M[i], p.N[j]
        entries[(i, j)] = (c, m - c, n - c, 1 - m - n + c)
    return ProbabilityBox(entries)


# ---------------------------------------------------------------- payoffs

@dataclass(frozen=True)
class PayoffPair:
    F_A: Number
    F_B: Number

    @property
    def welfare(self) -> Number:
        return self.F_A + self.F_B

    def scaled(self, factor) -> tuple:
        return (self.F_A * factor, self.F_B * factor)

    def to_json(self) -> dict:
        return {"F_A": float(self.F_A), "F_B": float(self.F_B), "welfare": float(self.welfare)}


def payoffs_from_box(box: ProbabilityBox, game: GameDefinition) -> PayoffPair:
    """Average payoffs: sum over question pairs and answer pairs of prior x box x utility.

    Exact (``Fraction``) when the box, prior and utilities are all rational.
    """
    fa = fb = 0
    u = game.utilities
    for (i, j) in QUESTION_PAIRS:
        w = game.prior[(i, j)]
        row = box.entries[(i, j)]
        for k, (a, b) in enumerate(ANSWER_PAIRS):
            fa += w * row[k] * u.alice(i, j, a, b)
            fb += w * row[k] * u.bob(i, j, a, b)
    return PayoffPair(fa, fb)


_NINTH = Fraction(1, 9)
_THIRD = Fraction(1, 3)


def closed_form_payoffs(p: LocalBoxParams, tol: float = BOX_TOL) -> PayoffPair:
    """The paper game's payoffs written directly in M, N, C (uniform prior)."""
    p.validate(tol)
    M, N, C = p.M, p.N, p.C
    common = (C[0][0] + C[0][1] + C[0][2] + C[1][0] + C[2][0] - C[1][2] - C[2][1] + C[1][1]
              - M[0] - 2 * N[0] - N[1])
    f_a = _NINTH * (common - _THIRD * M[2] + _THIRD * N[2] + 2)
    f_b = _NINTH * (common + _THIRD * M[2] - _THIRD * N[2] + 3)
    return PayoffPair(f_a, f_b)
