"""Command-line interface.

Exit codes: 0 success, 1 check or validation failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import classical, optimizer, quantum, reproduce
from .game import InvalidBox, ProbabilityBox, paper_game, payoffs_from_box
from .inequality import Form, all_forms, i3322_local_form, max_chsh_horodecki, max_discrepancy

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class CliError(Exception):
    """Bad input file or invalid object; reported on stderr with exit code 1."""


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)


def _read_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise CliError(f"{path} is not valid JSON: {exc}") from exc


def _load_state(args) -> quantum.TwoQubitState:
    if args.state == "paper":
        return quantum.paper_state()
    if args.state == "singlet":
        return quantum.singlet_state()
    if not args.state_file:
        raise CliError("--state file requires --state-file PATH")
    try:
        state = quantum.TwoQubitState.from_json(_read_json(args.state_file))
        state.validate()
    except (quantum.InvalidState, KeyError, TypeError, ValueError) as exc:
        raise CliError(f"invalid state: {exc}") from exc
    return state


def _load_angles(args):
    if args.angles == "paper":
        return quantum.paper_settings()
    if not args.angles_file:
        raise CliError("--angles file requires --angles-file PATH")
    data = _read_json(args.angles_file)
    if not isinstance(data, dict):
        raise CliError("angles file must hold a JSON object")
    try:
        return quantum.settings_from_json(data)
    except (quantum.InvalidSettings, TypeError, ValueError) as exc:
        raise CliError(f"invalid angles: {exc}") from exc


def _add_state_args(p, with_angles=True):
    p.add_argument("--state", choices=("paper", "singlet", "file"), default="paper")
    p.add_argument("--state-file", help="state JSON: 4x4 array of {re, im}, basis 00,01,10,11")
    if with_angles:
        p.add_argument("--angles", choices=("paper", "file"), default="paper")
        p.add_argument("--angles-file", help='settings JSON {"alice": [{"theta","phi"}x3], "bob": [...]}, radians')


# ---------------------------------------------------------------- commands

def cmd_classical_table(args, out) -> int:
    table = classical.build_payoff_table(paper_game())
    eq = classical.nash_equilibria(table) if args.equilibria else None
    if args.format == "csv":
        out.write(table.to_csv())
        if eq is not None:
            out.write("\n# pure Nash equilibria (alice,bob)\n")
            for r, c in eq.cells:
                out.write(f"g{r},g{c}\n")
    else:
        payload = {"table": table.to_json()}
        if eq is not None:
            payload["equilibria"] = eq.to_json()
        out.write(_dump(payload) + "\n")
    return EXIT_OK


def cmd_quantum(args, out) -> int:
    state = _load_state(args)
    alice, bob = _load_angles(args)
    box = quantum.box_from_state(state, alice, bob)
    pay = payoffs_from_box(box, paper_game())
    out.write(_dump({
        "settings": quantum.settings_to_json(alice, bob),
        "box": box.to_json(),
        "local_params": box.local_params().to_json(),
        "S": float(i3322_local_form(box.local_params()).s),
        **pay.to_json(),
    }) + "\n")
    return EXIT_OK


def cmd_inequality(args, out) -> int:
    if args.kind == "chsh":
        out.write(_dump(max_chsh_horodecki(_load_state(args)).to_json()) + "\n")
        return EXIT_OK
    if args.box_file:
        try:
            box = ProbabilityBox.from_json(_read_json(args.box_file))
            box.validate()
        except (InvalidBox, KeyError, TypeError, ValueError) as exc:
            raise CliError(f"invalid box: {exc}") from exc
    else:
        alice, bob = _load_angles(args)
        box = quantum.box_from_state(_load_state(args), alice, bob)
    forms = all_forms(box)
    out.write(_dump({
        "s": float(forms[Form.LOCAL_PARAMS].s),
        "forms": {f.value: float(v.s) for f, v in forms.items()},
        "max_discrepancy": max_discrepancy(forms.values()),
    }) + "\n")
    return EXIT_OK


def cmd_optimize(args, out) -> int:
    if args.budget < 1:
        raise CliError("--budget must be at least 1")
    state = _load_state(args)
    restriction = optimizer.Restriction.parse(args.restriction)
    warm = []
    if args.warm_start_paper:
        warm.append(optimizer.AngleConfiguration.from_settings(*quantum.paper_settings(), restriction))
    res = optimizer.maximize_s(state, restriction, args.budget, args.seed, warm, objective=args.objective)
    out.write(_dump(res.to_json()) + "\n")
    return EXIT_OK


def cmd_reproduce(args, out) -> int:
    game = reproduce.faulty_game() if args.inject_utility_fault else None
    report = reproduce.run_reproduction(game, budget=args.budget)
    if args.format == "json":
        out.write(_dump(report.to_json()) + "\n")
    else:
        out.write(report.text() + "\n")
    return EXIT_OK if report.overall_pass else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="i3322game",
        description="Classical and quantum analysis of a 3-question, 2-answer Bayesian game.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classical-table", help="8x8 payoff table (x27 integers)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--equilibria", action="store_true", help="also list pure Nash equilibria")
    p.set_defaults(func=cmd_classical_table)

    p = sub.add_parser("quantum", help="Born-rule box, S and payoffs for a state and settings")
    _add_state_args(p)
    p.set_defaults(func=cmd_quantum)

    p = sub.add_parser("inequality", help="I3322 (three forms) or maximal CHSH (Horodecki)")
    p.add_argument("kind", choices=("i3322", "chsh"))
    _add_state_args(p)
    p.add_argument("--box-file", help="evaluate I3322 on a box JSON instead of a state")
    p.set_defaults(func=cmd_inequality)

    p = sub.add_parser("optimize", help="maximize S (equivalently welfare) over measurement angles")
    _add_state_args(p, with_angles=False)
    p.add_argument("--restriction", choices=("plane", "full", "plane_phi_zero", "full_bloch"),
                   default="plane")
    p.add_argument("--budget", type=int, default=optimizer.DEFAULT_BUDGET,
                   help="objective evaluations")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--objective", choices=("s", "welfare"), default="s")
    p.add_argument("--warm-start-paper", action="store_true",
                   help="seed the multi-start set with the published settings")
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("reproduce", help="run the golden reproduction suite")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--budget", type=int, default=optimizer.DEFAULT_BUDGET)
    p.add_argument("--inject-utility-fault", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_reproduce)
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args, out)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
