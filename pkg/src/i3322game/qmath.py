"""Small fixed-size complex matrix toolkit (2x2, 3x3, 4x4).

Everything in this package fits in a 4x4 matrix, so instead of pulling in a
linear-algebra dependency we keep a tiny immutable matrix type built on
Python's ``complex``. Comparisons are always tolerance based.
"""

from __future__ import annotations

import cmath
import math
import operator
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

DEFAULT_TOL = 1e-9
SUPPORTED_DIMS = (2, 3, 4)


class InvalidArgument(ValueError):
    """Raised when an operation receives a matrix of the wrong shape or kind."""


@dataclass(frozen=True)
class ComplexMatrix:
    rows: int
    cols: int
    entries: tuple[complex, ...]  # row-major

    def __post_init__(self):
        if self.rows not in SUPPORTED_DIMS or self.cols not in SUPPORTED_DIMS:
            raise InvalidArgument(f"unsupported shape {self.rows}x{self.cols}")
        if len(self.entries) != self.rows * self.cols:
            raise InvalidArgument(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[complex]]) -> "ComplexMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        if any(len(r) != ncols for r in rows):
            raise InvalidArgument("ragged rows")
        return cls(nrows, ncols, tuple(complex(x) for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> "ComplexMatrix":
        return cls(n, n, tuple(1 + 0j if i == j else 0j for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "ComplexMatrix":
        cols = rows if cols is None else cols
        return cls(rows, cols, (0j,) * (rows * cols))

    @classmethod
    def outer(cls, ket: Sequence[complex], bra: Sequence[complex] | None = None) -> "ComplexMatrix":
        """|ket><bra|; ``bra`` defaults to ``ket`` (a pure-state projector)."""
        bra = ket if bra is None else bra
        return cls(len(ket), len(bra),
                   tuple(complex(k) * complex(b).conjugate() for k in ket for b in bra))

    @cached_property
    def transposed_entries(self) -> tuple[complex, ...]:
        r, c = self.rows, self.cols
        e = self.entries
        return tuple(e[i * c + j] for j in range(c) for i in range(r))

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, idx: tuple[int, int]) -> complex:
        i, j = idx
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(idx)
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list[list[complex]]:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    def _check_same_shape(self, other: "ComplexMatrix"):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise InvalidArgument(
                f"shape mismatch {self.rows}x{self.cols} vs {other.rows}x{other.cols}")

    def __add__(self, other: "ComplexMatrix") -> "ComplexMatrix":
        self._check_same_shape(other)
        return ComplexMatrix(self.rows, self.cols,
                             tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "ComplexMatrix") -> "ComplexMatrix":
        self._check_same_shape(other)
        return ComplexMatrix(self.rows, self.cols,
                             tuple(a - b for a, b in zip(self.entries, other.entries)))

    def scale(self, factor: complex) -> "ComplexMatrix":
        return ComplexMatrix(self.rows, self.cols, tuple(factor * a for a in self.entries))

    def __matmul__(self, other: "ComplexMatrix") -> "ComplexMatrix":
        if self.cols != other.rows:
            raise InvalidArgument(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        n, m, p = self.rows, self.cols, other.cols
        a, b = self.entries, other.entries
        out = []
        for i in range(n):
            row = a[i * m:(i + 1) * m]
            for j in range(p):
                out.append(sum(row[k] * b[k * p + j] for k in range(m)))
        return ComplexMatrix(n, p, tuple(out))

    def adjoint(self) -> "ComplexMatrix":
        r, c = self.rows, self.cols
        e = self.entries
        return ComplexMatrix(c, r, tuple(e[i * c + j].conjugate() for j in range(c) for i in range(r)))

    def is_close(self, other: "ComplexMatrix", tol: float = DEFAULT_TOL) -> bool:
        if (self.rows, self.cols) != (other.rows, other.cols):
            return False
        return all(abs(a - b) <= tol for a, b in zip(self.entries, other.entries))

    def real_rows(self) -> list[list[float]]:
        return [[z.real for z in row] for row in self.to_rows()]


def tensor(a: ComplexMatrix, b: ComplexMatrix) -> ComplexMatrix:
    """Kronecker product of two 2x2 matrices, basis order |00>,|01>,|10>,|11>."""
    if (a.rows, a.cols) != (2, 2) or (b.rows, b.cols) != (2, 2):
        raise InvalidArgument("tensor expects two 2x2 matrices")
    a00, a01, a10, a11 = a.entries
    b00, b01, b10, b11 = b.entries
    return ComplexMatrix(4, 4, (
        a00 * b00, a00 * b01, a01 * b00, a01 * b01,
        a00 * b10, a00 * b11, a01 * b10, a01 * b11,
        a10 * b00, a10 * b01, a11 * b00, a11 * b01,
        a10 * b10, a10 * b11, a11 * b10, a11 * b11,
    ))


def trace(m: ComplexMatrix) -> complex:
    if not m.is_square:
        raise InvalidArgument(f"trace of non-square {m.rows}x{m.cols} matrix")
    n = m.rows
    return sum((m.entries[i * n + i] for i in range(n)), 0j)


def trace_of_product(a: ComplexMatrix, b: ComplexMatrix) -> complex:
    """Tr(AB) without forming the product."""
    if a.cols != b.rows or a.rows != b.cols:
        raise InvalidArgument("trace_of_product: incompatible shapes")
    # sum_ik a_ik b_ki, i.e. the elementwise product of a with b transposed
    return sum(map(operator.mul, a.entries, b.transposed_entries), 0j)


def max_asymmetry(m: ComplexMatrix) -> float:
    """max |m_ij - conj(m_ji)|."""
    if not m.is_square:
        raise InvalidArgument("asymmetry of non-square matrix")
    n = m.rows
    e = m.entries
    return max((abs(e[i * n + j] - e[j * n + i].conjugate()) for i in range(n) for j in range(n)),
               default=0.0)


def sym3_eigenvalues(m: ComplexMatrix, tol: float = DEFAULT_TOL) -> tuple[float, float, float]:
    """Eigenvalues of a real symmetric 3x3 matrix, descending.

    Jacobi rather than the trigonometric cubic formula: the latter loses
    about sqrt(eps) near repeated eigenvalues.
    """
    if (m.rows, m.cols) != (3, 3):
        raise InvalidArgument("sym3_eigenvalues expects a 3x3 matrix")
    if any(abs(z.imag) > tol for z in m.entries):
        raise InvalidArgument("sym3_eigenvalues expects a real matrix")
    if max_asymmetry(m) > tol:
        raise InvalidArgument("sym3_eigenvalues expects a symmetric matrix")

    a = [[z.real for z in row] for row in m.to_rows()]
    # symmetrize away sub-tolerance noise
    sym = ComplexMatrix.from_rows([[0.5 * (a[i][j] + a[j][i]) for j in range(3)] for i in range(3)])
    return tuple(sorted(hermitian_eigenvalues(sym), reverse=True))


def hermitian_eigenvalues(m: ComplexMatrix, tol: float = 1e-14, max_sweeps: int = 100) -> list[float]:
    """Eigenvalues (ascending) of a small Hermitian matrix by cyclic complex Jacobi rotations.

    Used for the PSD check on density matrices and for 3x3 symmetric spectra.
    """
    if not m.is_square:
        raise InvalidArgument("hermitian_eigenvalues expects a square matrix")
    n = m.rows
    a = [row[:] for row in m.to_rows()]
    for i in range(n):
        for j in range(i + 1, n):
            avg = 0.5 * (a[i][j] + a[j][i].conjugate())
            a[i][j], a[j][i] = avg, avg.conjugate()
        a[i][i] = complex(a[i][i].real, 0.0)

    scale = max((abs(z) for row in a for z in row), default=0.0) or 1.0
    for _ in range(max_sweeps):
        off = math.sqrt(sum(abs(a[i][j]) ** 2 for i in range(n) for j in range(n) if i != j))
        if off <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p][q]
                if abs(apq) <= 1e-300:
                    continue
                # phase-rotate so the pivot is real, then apply a real Jacobi rotation
                phase = apq / abs(apq)
                app, aqq = a[p][p].real, a[q][q].real
                theta = 0.5 * math.atan2(2.0 * abs(apq), aqq - app)
                c, s = math.cos(theta), math.sin(theta)
                # columns: G acts on (p, q) with G = [[c, s*phase], [-s*conj(phase), c]]
                for k in range(n):
                    akp, akq = a[k][p], a[k][q]
                    a[k][p] = c * akp - s * phase.conjugate() * akq
                    a[k][q] = s * phase * akp + c * akq
                for k in range(n):
                    apk, aqk = a[p][k], a[q][k]
                    a[p][k] = c * apk - s * phase * aqk
                    a[q][k] = s * phase.conjugate() * apk + c * aqk
    return sorted(a[i][i].real for i in range(n))


@dataclass(frozen=True)
class HermitianCheckReport:
    is_hermitian: bool
    max_asymmetry: float
    min_eigenvalue: float
    trace: complex


def check_hermitian(m: ComplexMatrix, tol: float = DEFAULT_TOL) -> HermitianCheckReport:
    asym = max_asymmetry(m)
    return HermitianCheckReport(
        is_hermitian=asym <= tol,
        max_asymmetry=asym,
        min_eigenvalue=hermitian_eigenvalues(m)[0],
        trace=trace(m),
    )


def pauli(label: str) -> ComplexMatrix:
    if label == "I":
        return ComplexMatrix.identity(2)
    if label == "X":
        return ComplexMatrix(2, 2, (0j, 1 + 0j, 1 + 0j, 0j))
    if label == "Y":
        return ComplexMatrix(2, 2, (0j, -1j, 1j, 0j))
    if label == "Z":
        return ComplexMatrix(2, 2, (1 + 0j, 0j, 0j, -1 + 0j))
    raise InvalidArgument(f"unknown Pauli label {label!r}")


def ket(amplitudes: Iterable[complex]) -> tuple[complex, ...]:
    return tuple(complex(z) for z in amplitudes)


def expi(phi: float) -> complex:
    return cmath.exp(1j * phi)
