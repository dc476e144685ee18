"""Bilinear 2-cocycles on Z^m with values in Z and trivial action.

Every class in H^2(Z^m, Z) has a bilinear representative beta(x, y) = x^T B y,
and two such cocycles are cohomologous exactly when B - B^T agrees.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .factor_systems import central_bilinear_factor_system, validate_on_ball
from .groups import ExtensionGroup, FreeAbelian


def _int_matrix(matrix) -> tuple[tuple[int, ...], ...]:
    m = tuple(tuple(int(x) for x in row) for row in matrix)
    if any(len(row) != len(m) for row in m):
        raise ValueError("cocycle matrix must be square")
    return m


@dataclass(frozen=True)
class BilinearCocycle:
    matrix: tuple

    def __post_init__(self):
        object.__setattr__(self, "matrix", _int_matrix(self.matrix))
        # bilinear forms are always cocycles; checked anyway on a small window
        Z = FreeAbelian(self.rank)
        window = Z.ball(1)
        for x, y, z in itertools.product(window, repeat=3):
            lhs = self(x, y) + self(Z.mul(x, y), z)
            rhs = self(y, z) + self(x, Z.mul(y, z))
            if lhs != rhs:
                raise ValueError(f"not a cocycle at {(x, y, z)}")

    @property
    def rank(self) -> int:
        return len(self.matrix)

    def __call__(self, x, y) -> int:
        B = self.matrix
        return sum(x[i] * B[i][j] * y[j] for i in range(self.rank) for j in range(self.rank))

    def to_factor_system(self, name=None):
        return central_bilinear_factor_system(self.matrix, name=name)

    def descriptor(self) -> dict:
        return {"rank": self.rank, "matrix": [list(r) for r in self.matrix]}


def antisymmetrize(c: BilinearCocycle) -> tuple:
    B = c.matrix
    n = c.rank
    return tuple(tuple(B[i][j] - B[j][i] for j in range(n)) for i in range(n))


def _binom2(x: int) -> int:
    return x * (x - 1) // 2


@dataclass(frozen=True)
class Coboundary:
    """b(x) = sum_i diag[i] C(x_i, 2) + sum_{i<j} cross[(i, j)] x_i x_j."""

    diag: tuple
    cross: tuple  # ((i, j, coeff), ...)

    def __call__(self, x) -> int:
        v = sum(a * _binom2(xi) for a, xi in zip(self.diag, x))
        return v + sum(a * x[i] * x[j] for i, j, a in self.cross)

    def delta(self, x, y) -> int:
        return self(x) + self(y) - self(tuple(a + b for a, b in zip(x, y)))

    def is_zero(self) -> bool:
        return not any(self.diag) and not any(a for _, _, a in self.cross)


@dataclass(frozen=True)
class CohomologyVerdict:
    cohomologous: bool
    witness: Coboundary | None = None
    obstruction: tuple | None = None
    checked: int = 0


def _coboundary_for_symmetric(D) -> Coboundary:
    # delta of -C(x_i, 2) is x_i y_i; delta of -x_i x_j is x_i y_j + x_j y_i
    n = len(D)
    diag = tuple(-D[i][i] for i in range(n))
    cross = tuple((i, j, -D[i][j]) for i in range(n) for j in range(i + 1, n) if D[i][j])
    return Coboundary(diag, cross)


def is_cohomologous(c1: BilinearCocycle, c2: BilinearCocycle, window_radius: int = 3) -> CohomologyVerdict:
    """Decide whether c1 - c2 is a coboundary and certify the answer.

    Positive answers carry b with b(x) + b(y) - b(x + y) = (c1 - c2)(x, y),
    checked on all pairs from the radius-``window_radius`` ball.  Negative
    answers carry basis indices (i, j) where c1 - c2 is not symmetric, which
    no coboundary of an abelian group can be.
    """
    if c1.rank != c2.rank:
        raise ValueError(f"rank mismatch: {c1.rank} vs {c2.rank}")
    n = c1.rank
    A1, A2 = antisymmetrize(c1), antisymmetrize(c2)
    if A1 != A2:
        i, j = next((i, j) for i in range(n) for j in range(n) if A1[i][j] != A2[i][j])
        ei = tuple(int(k == i) for k in range(n))
        ej = tuple(int(k == j) for k in range(n))
        d_ij = c1(ei, ej) - c2(ei, ej)
        d_ji = c1(ej, ei) - c2(ej, ei)
        if d_ij == d_ji:
            raise AssertionError("antisymmetrization disagrees with direct evaluation")
        return CohomologyVerdict(False, obstruction=(ei, ej), checked=2)
    D = tuple(
        tuple(c1.matrix[i][j] - c2.matrix[i][j] for j in range(n)) for i in range(n)
    )
    b = _coboundary_for_symmetric(D)
    window = FreeAbelian(n).ball(window_radius)
    checked = 0
    for x, y in itertools.product(window, repeat=2):
        if b.delta(x, y) != c1(x, y) - c2(x, y):
            raise AssertionError(f"coboundary witness fails at {(x, y)}")
        checked += 1
    return CohomologyVerdict(True, witness=b, checked=checked)


def class_representative(class_param) -> BilinearCocycle:
    """Bilinear cocycle with antisymmetrization ``class_param`` (its strictly
    upper triangular part)."""
    A = _int_matrix(class_param)
    n = len(A)
    for i in range(n):
        for j in range(n):
            if A[i][j] != -A[j][i]:
                raise ValueError("class parameter must be antisymmetric")
    return BilinearCocycle(tuple(tuple(A[i][j] if j > i else 0 for j in range(n)) for i in range(n)))


def extension_family(m: int, class_param, window_radius: int = 2) -> ExtensionGroup:
    """The central extension of Z^m by Z in the class ``class_param``."""
    c = class_representative(class_param)
    if c.rank != m:
        raise ValueError(f"class parameter has rank {c.rank}, expected {m}")
    fs = c.to_factor_system(name=f"family{list(map(list, c.matrix))}")
    report = validate_on_ball(fs, window_radius)
    if not report.passed:
        raise AssertionError(f"family member failed validation: {report.violations[0]}")
    return ExtensionGroup(fs)
