"""Two-qubit states, projective qubit measurements and Born-rule probability boxes.

Bloch convention: outcome 0 of the setting (theta, phi) projects onto
``(cos(theta/2), e^{i phi} sin(theta/2))``. Negative polar angles are taken
as given.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .game import QUESTION_PAIRS, ProbabilityBox
from .qmath import ComplexMatrix, DEFAULT_TOL, check_hermitian, expi, tensor, trace_of_product

IDENTITY2 = ComplexMatrix.identity(2)


class InvalidState(ValueError):
    pass


class ConsistencyError(RuntimeError):
    """A Born-rule probability came out negative beyond rounding noise."""


@dataclass(frozen=True)
class TwoQubitState:
    rho: ComplexMatrix  # basis |00>, |01>, |10>, |11>

    def __post_init__(self):
        if (self.rho.rows, self.rho.cols) != (4, 4):
            raise InvalidState("two-qubit density matrix must be 4x4")

    def validate(self, tol: float = DEFAULT_TOL) -> None:
        rep = check_hermitian(self.rho, tol)
        if not rep.is_hermitian:
            raise InvalidState(f"density matrix not Hermitian (asymmetry {rep.max_asymmetry:.3g})")
        if abs(rep.trace - 1) > tol:
            raise InvalidState(f"density matrix trace is {rep.trace.real:.12g}, expected 1")
        if rep.min_eigenvalue < -tol:
            raise InvalidState(f"density matrix not PSD (min eigenvalue {rep.min_eigenvalue:.3g})")

    @classmethod
    def from_pure(cls, amplitudes: Sequence[complex]) -> "TwoQubitState":
        norm = math.sqrt(sum(abs(z) ** 2 for z in amplitudes))
        psi = [complex(z) / norm for z in amplitudes]
        return cls(ComplexMatrix.outer(psi))

    @classmethod
    def mixture(cls, weights: Sequence[float], states: Sequence["TwoQubitState"]) -> "TwoQubitState":
        acc = ComplexMatrix.zeros(4)
        for w, s in zip(weights, states):
            acc = acc + s.rho.scale(w)
        return cls(acc)

    def purity(self) -> float:
        return trace_of_product(self.rho, self.rho).real

    def to_json(self) -> dict:
        return {"basis": ["00", "01", "10", "11"],
                "rho": [[{"re": z.real, "im": z.imag} for z in row] for row in self.rho.to_rows()]}

    @classmethod
    def from_json(cls, data) -> "TwoQubitState":
        rows = data["rho"] if isinstance(data, dict) else data
        if len(rows) != 4 or any(len(r) != 4 for r in rows):
            raise InvalidState("state JSON must be a 4x4 array")
        parsed = []
        for r in rows:
            prow = []
            for z in r:
                if isinstance(z, dict):
                    prow.append(complex(float(z.get("re", 0.0)), float(z.get("im", 0.0))))
                elif isinstance(z, (int, float)):
                    prow.append(complex(z))
                else:
                    raise InvalidState(f"bad matrix entry {z!r}")
            parsed.append(prow)
        return cls(ComplexMatrix.from_rows(parsed))


def paper_state() -> TwoQubitState:
    """0.85 |Phi><Phi| + 0.15 |01><01| with |Phi> = (2|00> + |11>)/sqrt(5)."""
    phi = TwoQubitState.from_pure([2, 0, 0, 1])
    e01 = TwoQubitState.from_pure([0, 1, 0, 0])
    return TwoQubitState.mixture([0.85, 0.15], [phi, e01])


def singlet_state() -> TwoQubitState:
    return TwoQubitState.from_pure([0, 1, -1, 0])


def product_state_00() -> TwoQubitState:
    return TwoQubitState.from_pure([1, 0, 0, 0])


def maximally_mixed_state() -> TwoQubitState:
    return TwoQubitState(ComplexMatrix.identity(4).scale(0.25))


@dataclass(frozen=True)
class MeasurementSetting:
    theta: float  # polar angle, radians
    phi: float = 0.0  # azimuthal angle, radians

    def canonical(self) -> "MeasurementSetting":
        if self.theta < 0:
            return MeasurementSetting(-self.theta, self.phi + math.pi)
        return self

    def to_json(self) -> dict:
        return {"theta": self.theta, "phi": self.phi}


MeasurementTriple = tuple  # three MeasurementSetting values


def make_triple(settings: Sequence[MeasurementSetting]) -> tuple:
    settings = tuple(settings)
    if len(settings) != 3:
        raise ValueError(f"a measurement triple needs exactly 3 settings, got {len(settings)}")
    return settings


def projector(m: MeasurementSetting, outcome: int) -> ComplexMatrix:
    c = math.cos(m.theta / 2)
    s = expi(m.phi) * math.sin(m.theta / 2)
    plus = ComplexMatrix.outer((c, s))
    if outcome == 0:
        return plus
    if outcome == 1:
        return IDENTITY2 - plus
    raise ValueError(f"outcome must be 0 or 1, got {outcome}")


def _born(rho: ComplexMatrix, op: ComplexMatrix, tol: float) -> float:
    p = trace_of_product(op, rho).real
    if p < -tol or p > 1 + tol:
        raise ConsistencyError(f"Born-rule probability {p!r} outside [0, 1]")
    return min(1.0, max(0.0, p))


def joint_probability(s: TwoQubitState, ma: MeasurementSetting, mb: MeasurementSetting,
                      a: int, b: int, tol: float = DEFAULT_TOL) -> float:
    """Tr[(Pi_a x Pi_b) rho]."""
    return _born(s.rho, tensor(projector(ma, a), projector(mb, b)), tol)


def box_from_state(s: TwoQubitState, alice: Sequence[MeasurementSetting],
                   bob: Sequence[MeasurementSetting], tol: float = DEFAULT_TOL) -> ProbabilityBox:
    alice, bob = make_triple(alice), make_triple(bob)
    pa = [(projector(m, 0), projector(m, 1)) for m in alice]
    pb = [(projector(m, 0), projector(m, 1)) for m in bob]
    entries = {}
    for i, j in QUESTION_PAIRS:
        entries[(i, j)] = tuple(_born(s.rho, tensor(pa[i][a], pb[j][b]), tol)
                                for a in (0, 1) for b in (0, 1))
    return ProbabilityBox(entries)


def marginal_zero(s: TwoQubitState, m: MeasurementSetting, party: str) -> float:
    """P(outcome 0) for one party, from the reduced operator Pi_0 x I or I x Pi_0."""
    p0 = projector(m, 0)
    op = tensor(p0, IDENTITY2) if party == "A" else tensor(IDENTITY2, p0)
    return _born(s.rho, op, DEFAULT_TOL)


ETA = math.acos(math.sqrt(7 / 8))
CHI = math.acos(math.sqrt(2 / 3))


def paper_settings() -> tuple[tuple, tuple]:
    alice = (MeasurementSetting(ETA, 0.0), MeasurementSetting(-ETA, 0.0),
             MeasurementSetting(-math.pi / 2, 0.0))
    bob = (MeasurementSetting(-CHI, 0.0), MeasurementSetting(CHI, 0.0),
           MeasurementSetting(math.pi / 2, 0.0))
    return alice, bob


def settings_to_json(alice, bob) -> dict:
    return {"units": "radians",
            "alice": [m.to_json() for m in alice], "bob": [m.to_json() for m in bob]}


class InvalidSettings(ValueError):
    pass


_RADIAN_UNITS = {"rad", "radian", "radians"}


def settings_from_json(data: dict) -> tuple[tuple, tuple]:
    """Parse ``{"alice": [{"theta":, "phi":}, x3], "bob": [...]}``; radians only."""
    unit = data.get("units", data.get("unit", "radians"))
    if str(unit).lower() not in _RADIAN_UNITS:
        raise InvalidSettings(f"angles must be given in radians, got units={unit!r}")
    out = []
    for party in ("alice", "bob"):
        if party not in data:
            raise InvalidSettings(f"missing {party!r} settings")
        triple = []
        for entry in data[party]:
            extra = set(entry) - {"theta", "phi"}
            if extra:
                raise InvalidSettings(f"unexpected setting keys {sorted(extra)} (radians only: theta, phi)")
            if "theta" not in entry:
                raise InvalidSettings("setting without theta")
            triple.append(MeasurementSetting(float(entry["theta"]), float(entry.get("phi", 0.0))))
        try:
            out.append(make_triple(triple))
        except ValueError as exc:
            raise InvalidSettings(str(exc)) from exc
    return out[0], out[1]


__all__ = [
    "TwoQubitState", "MeasurementSetting", "InvalidState", "InvalidSettings", "ConsistencyError",
    "paper_state", "singlet_state", "product_state_00", "maximally_mixed_state",
    "projector", "joint_probability", "box_from_state", "marginal_zero", "paper_settings",
    "settings_to_json", "settings_from_json", "make_triple", "ETA", "CHI",
]
