import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from i3322game.game import (InvalidBox, LocalBoxParams, PayoffPair, ProbabilityBox, GameDefinition,
                            QUESTION_PAIRS, closed_form_payoffs, expand_local_box, paper_game,
                            paper_utilities, payoffs_from_box, zero_utilities)
from i3322game.inequality import i3322_local_form
from i3322game.quantum import box_from_state, paper_settings, paper_state
from i3322game.reproduce import PAPER_BOX_VALUES
from i3322game.sampling import random_local_params, random_state, random_triple

F = Fraction


def paper_params() -> LocalBoxParams:
    v = PAPER_BOX_VALUES
    return LocalBoxParams(
        (v["M_1"], v["M_2"], v["M_3"]), (v["N_1"], v["N_2"], v["N_3"]),
        tuple(tuple(v[f"C_{i}{j}"] for j in (1, 2, 3)) for i in (1, 2, 3)))


# ---------------------------------------------------------------- utilities

def test_utility_examples():
    u = paper_utilities()
    assert (u.alice(0, 0, 0, 0), u.bob(0, 0, 0, 0)) == (F(2, 3), 1)
    assert (u.alice(1, 0, 1, 0), u.bob(1, 0, 1, 0)) == (F(-1, 2), -1)
    assert (u.alice(2, 2, 0, 0), u.bob(2, 2, 0, 0)) == (0, 0)


def test_utility_fixture_shape_and_denominators():
    u = paper_utilities()
    assert len(u.u_a) == len(u.u_b) == 36
    for v in list(u.u_a.values()) + list(u.u_b.values()):
        assert isinstance(v, Fraction) and 6 % v.denominator == 0


def test_utility_boxes_are_shared_where_expected():
    u = paper_utilities()
    groups = [[(0, 0), (0, 1), (0, 2)], [(1, 0), (2, 0)], [(1, 2), (2, 1)]]
    for group in groups:
        first = group[0]
        for other in group[1:]:
            for a in (0, 1):
                for b in (0, 1):
                    assert u.alice(*first, a, b) == u.alice(*other, a, b)
                    assert u.bob(*first, a, b) == u.bob(*other, a, b)


# ---------------------------------------------------------------- game

def test_default_prior_uniform():
    g = paper_game()
    assert all(p == F(1, 9) for p in g.prior.values()) and sum(g.prior.values()) == 1


def test_prior_must_sum_to_one():
    with pytest.raises(ValueError):
        GameDefinition(paper_utilities(), {ij: F(1, 10) for ij in QUESTION_PAIRS})


# ---------------------------------------------------------------- boxes

def test_expand_all_ones():
    box = expand_local_box(LocalBoxParams.constant(1))
    assert all(row == (1, 0, 0, 0) for row in box.entries.values())


def test_expand_all_zeros():
    box = expand_local_box(LocalBoxParams.constant(0))
    assert all(row == (0, 0, 0, 1) for row in box.entries.values())


def test_expand_paper_row():
    # M_1 - C_11, N_1 - C_11 and 1 - M_1 - N_1 + C_11 from the printed six-decimal values
    box = expand_local_box(paper_params())
    assert box.entries[(0, 0)] == pytest.approx((0.576785, 0.231902, 0.070184, 0.121129), abs=1e-12)
    box.validate()


def test_expand_rejects_bad_correlation_and_names_pair():
    c = [[0.5] * 3 for _ in range(3)]
    c[1][2] = 0.9  # above min(M_2, N_3)
    p = LocalBoxParams((0.5,) * 3, (0.5,) * 3, c)
    with pytest.raises(InvalidBox, match="C_23"):
        expand_local_box(p)


def test_expand_rejects_marginal_out_of_range():
    with pytest.raises(InvalidBox):
        expand_local_box(LocalBoxParams((1.2, 0, 0), (0, 0, 0), [[0] * 3] * 3))


def test_box_validation_detects_signaling():
    entries = {ij: (0.25, 0.25, 0.25, 0.25) for ij in QUESTION_PAIRS}
    entries[(0, 1)] = (0.5, 0.25, 0.0, 0.25)  # Alice's marginal for A_1 now depends on B
    box = ProbabilityBox(entries)
    with pytest.raises(InvalidBox, match="signaling"):
        box.validate()
    box.validate(require_no_signaling=False)


def test_box_validation_row_sum():
    entries = {ij: (0.25, 0.25, 0.25, 0.25) for ij in QUESTION_PAIRS}
    entries[(2, 2)] = (0.3, 0.25, 0.25, 0.25)
    with pytest.raises(InvalidBox, match="A3B3"):
        ProbabilityBox(entries).validate()


def test_box_json_roundtrip():
    box = expand_local_box(paper_params())
    data = json.loads(json.dumps(box.to_json()))
    assert [r["question"] for r in data["rows"]][:2] == ["A1B1", "A1B2"]
    assert ProbabilityBox.from_json(data).entries == pytest.approx(box.entries)


def test_local_params_json_roundtrip():
    p = paper_params()
    data = json.loads(json.dumps(p.to_json()))
    assert set(data) == {"M", "N", "C"}
    assert LocalBoxParams.from_json(data) == p


# ---------------------------------------------------------------- payoffs

def test_g0_g0_payoffs_exact():
    pay = payoffs_from_box(expand_local_box(LocalBoxParams.constant(1)), paper_game())
    assert (pay.F_A, pay.F_B) == (F(6, 27), F(9, 27))


def test_paper_quantum_box_payoffs():
    pay = payoffs_from_box(expand_local_box(paper_params()), paper_game())
    assert pay.F_A == pytest.approx(6.03858 / 27, abs=1e-4)
    assert pay.F_B == pytest.approx(9.03858 / 27, abs=1e-4)


def test_zero_utilities_give_zero_payoffs():
    box = box_from_state(paper_state(), *paper_settings())
    pay = payoffs_from_box(box, GameDefinition(zero_utilities()))
    assert (pay.F_A, pay.F_B) == (0, 0)


def test_closed_form_examples():
    assert closed_form_payoffs(LocalBoxParams.constant(1)) == PayoffPair(F(2, 9), F(3, 9))
    # zeros substituted into both printed expressions: (0 + 2)/9 and (0 + 3)/9
    assert closed_form_payoffs(LocalBoxParams.constant(0)) == PayoffPair(F(6, 27), F(9, 27))
    pay = closed_form_payoffs(paper_params())
    assert pay.F_A == pytest.approx(6.03858 / 27, abs=1e-4)
    assert pay.F_B == pytest.approx(9.03858 / 27, abs=1e-4)


def test_closed_form_rejects_invalid():
    with pytest.raises(InvalidBox):
        closed_form_payoffs(LocalBoxParams((2, 0, 0), (0, 0, 0), [[0] * 3] * 3))


def test_closed_form_roundtrip_1000_random():
    rng = random.Random(1234)
    game = paper_game()
    for _ in range(1000):
        p = random_local_params(rng)
        a = closed_form_payoffs(p)
        b = payoffs_from_box(expand_local_box(p), game)
        assert abs(a.F_A - b.F_A) <= 1e-12 and abs(a.F_B - b.F_B) <= 1e-12


def test_closed_form_roundtrip_exact_on_rational_params():
    rng = random.Random(5)
    for _ in range(200):
        m = [F(rng.randint(0, 6), 6) for _ in range(3)]
        n = [F(rng.randint(0, 6), 6) for _ in range(3)]
        c = [[max(F(0), mi + nj - 1) for nj in n] for mi in m]
        p = LocalBoxParams(m, n, c)
        assert closed_form_payoffs(p) == payoffs_from_box(expand_local_box(p), paper_game())


def test_welfare_identity_local_and_quantum_boxes():
    rng = random.Random(99)
    game = paper_game()
    for k in range(1000):
        if k % 2:
            box = expand_local_box(random_local_params(rng))
        else:
            box = box_from_state(random_state(rng), random_triple(rng), random_triple(rng))
        pay = payoffs_from_box(box, game)
        s = i3322_local_form(box.local_params()).s
        assert abs(pay.welfare - (2 * s + 5) / 9) <= 1e-12


@given(st.floats(0, 1), st.integers(0, 10_000))
def test_payoffs_linear_in_box(w, seed):
    rng = random.Random(seed)
    b1 = expand_local_box(random_local_params(rng))
    b2 = box_from_state(random_state(rng), random_triple(rng), random_triple(rng))
    game = paper_game()
    mixed = payoffs_from_box(ProbabilityBox.mixture([w, 1 - w], [b1, b2]), game)
    p1, p2 = payoffs_from_box(b1, game), payoffs_from_box(b2, game)
    assert mixed.F_A == pytest.approx(w * p1.F_A + (1 - w) * p2.F_A, abs=1e-12)
    assert mixed.F_B == pytest.approx(w * p1.F_B + (1 - w) * p2.F_B, abs=1e-12)


def test_welfare_is_exact_sum():
    pay = PayoffPair(F(1, 3), 0.25)
    assert pay.welfare == F(1, 3) + 0.25
    assert pay.to_json() == {"F_A": 1 / 3, "F_B": 0.25, "welfare": 1 / 3 + 0.25}
