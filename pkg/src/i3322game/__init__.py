"""Classical and quantum analysis of a two-player, three-question, two-answer Bayesian game."""

from .classical import (Strategy, build_payoff_table, classical_max_S, classical_welfare_bound,
                        nash_equilibria, strategy_to_local_params)
from .game import (GameDefinition, LocalBoxParams, PayoffPair, ProbabilityBox, UtilityTable,
                   closed_form_payoffs, expand_local_box, paper_game, paper_utilities,
                   payoffs_from_box)
from .inequality import (i3322_coefficient_form, i3322_full_form, i3322_local_form,
                         max_chsh_horodecki)
from .optimizer import AngleConfiguration, Restriction, evaluate_config, maximize_s, restricted_sws
from .quantum import (MeasurementSetting, TwoQubitState, box_from_state, joint_probability,
                      paper_settings, paper_state, projector, singlet_state)

__version__ = "0.1.0"
