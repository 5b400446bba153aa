"""I3322 functional in three independent presentations, plus the two-qubit CHSH criterion.

Sign convention: "P(A_i)" always means the probability of outcome 0 for
question A_i, and "P(A_iB_j)" the probability of the answer pair 00.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .game import LocalBoxParams, ProbabilityBox
from .qmath import ComplexMatrix, pauli, sym3_eigenvalues, tensor, trace_of_product


class Form(str, Enum):
    COEFFICIENT_TABLE = "coefficient_table"
    FULL_PROBABILITY = "full_probability"
    LOCAL_PARAMS = "local_params"


@dataclass(frozen=True)
class I3322Value:
    s: float
    form_used: Form

    def to_json(self) -> dict:
        return {"s": float(self.s), "form": self.form_used.value}


def i3322_local_form(p: LocalBoxParams) -> I3322Value:
    M, N, C = p.M, p.N, p.C
    s = (C[0][0] + C[0][1] + C[0][2] + C[1][0] + C[1][1] - C[1][2] + C[2][0] - C[2][1]
         - M[0] - 2 * N[0] - N[1])
    return I3322Value(s, Form.LOCAL_PARAMS)


_t = Fraction(1, 3)

# (i, j, answer-pair index) -> coefficient; answer-pair index 0..3 = 00, 01, 10, 11
FULL_FORM_TERMS = (
    (0, 0, 1, -_t), (0, 0, 2, -2 * _t),
    (0, 1, 0, _t), (0, 1, 1, -_t), (0, 1, 2, -_t),
    (0, 2, 0, 2 * _t), (0, 2, 1, -_t),
    (1, 0, 0, _t), (1, 0, 2, -2 * _t),
    (1, 1, 0, 2 * _t), (1, 1, 2, -_t),
    (1, 2, 0, Fraction(-1)),
    (2, 0, 0, _t), (2, 0, 2, -2 * _t),
    (2, 1, 0, -4 * _t), (2, 1, 2, -_t),
)


def i3322_full_form(box: ProbabilityBox) -> I3322Value:
    """Expansion over full joint probabilities P(ab|A_iB_j), no marginals involved."""
    s = sum(coef * box.entries[(i, j)][k] for i, j, k, coef in FULL_FORM_TERMS)
    return I3322Value(s, Form.FULL_PROBABILITY)


# Margins of the usual I3322 table: coefficient of P(A_i) on top, of P(B_j) down the side.
ALICE_MARGIN = (-1, 0, 0)
BOB_MARGIN = (-2, -1, 0)
# CORRELATION_TABLE[j][i] multiplies P(A_iB_j): rows are Bob's questions.
CORRELATION_TABLE = (
    (1, 1, 1),
    (1, 1, -1),
    (1, -1, 0),
)


def i3322_coefficient_form(box: ProbabilityBox) -> I3322Value:
    """Collins-Gisin style table: margins times single-party P(0), body times P(00).

    Single-party marginals are read from the row paired with question 1 of the
    other player; for no-signaling boxes that choice is immaterial.
    """
    s = 0
    for i in range(3):
        s += ALICE_MARGIN[i] * box.alice_zero(i, 0)
    for j in range(3):
        s += BOB_MARGIN[j] * box.bob_zero(j, 0)
    for j in range(3):
        for i in range(3):
            s += CORRELATION_TABLE[j][i] * box.entries[(i, j)][0]
    return I3322Value(s, Form.COEFFICIENT_TABLE)


def all_forms(box: ProbabilityBox) -> dict[Form, I3322Value]:
    return {
        Form.LOCAL_PARAMS: i3322_local_form(box.local_params()),
        Form.FULL_PROBABILITY: i3322_full_form(box),
        Form.COEFFICIENT_TABLE: i3322_coefficient_form(box),
    }


def max_discrepancy(values) -> float:
    ss = [float(v.s) for v in values]
    return max(ss) - min(ss)


# ---------------------------------------------------------------- CHSH

@dataclass(frozen=True)
class ChshReport:
    correlation_matrix: tuple  # 3x3, T[u][v] = Tr[rho sigma_u x sigma_v]
    m_value: float
    max_chsh: float
    violates: bool

    def to_json(self) -> dict:
        return {"max_chsh": self.max_chsh, "violates": self.violates,
                "m_value": self.m_value, "T": [list(r) for r in self.correlation_matrix]}


def correlation_matrix(rho: ComplexMatrix) -> tuple:
    paulis = [pauli(x) for x in "XYZ"]
    return tuple(tuple(trace_of_product(rho, tensor(su, sv)).real for sv in paulis) for su in paulis)


def max_chsh_horodecki(state) -> ChshReport:
    """Maximal CHSH value of a two-qubit state: 2 sqrt(sum of the two largest eigenvalues of T^T T).

    ``state`` is a ``TwoQubitState`` or a bare 4x4 density matrix.
    """
    rho = getattr(state, "rho", state)
    t = correlation_matrix(rho)
    ttt = [[sum(t[k][u] * t[k][v] for k in range(3)) for v in range(3)] for u in range(3)]
    e1, e2, _ = sym3_eigenvalues(ComplexMatrix.from_rows(ttt))
    m = max(0.0, e1 + e2)
    return ChshReport(t, m, 2.0 * math.sqrt(m), m > 1.0)
