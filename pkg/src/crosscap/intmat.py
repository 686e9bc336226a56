"""Exact integer matrix arithmetic and principal congruence subgroups.

Everything here is plain Python integers, so products, inverses and
determinants are exact at any size.  Matrices are small (dimension <= 8 in
practice) and immutable; reductions mod d live in a separate value type that
carries its modulus, and mixing moduli is an error rather than a coercion.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


class DimensionError(ValueError):
    """Operands have incompatible shapes."""


class NotUnimodularError(ValueError):
    """Exact inverse requested for a matrix whose determinant is not a unit."""


class ModulusMismatchError(ValueError):
    """Arithmetic attempted between matrices over different moduli."""


def _freeze(rows: Iterable[Iterable[int]]) -> tuple[tuple[int, ...], ...]:
    frozen = tuple(tuple(int(e) for e in row) for row in rows)
    n = len(frozen)
    if n == 0 or any(len(row) != n for row in frozen):
        raise DimensionError("matrix must be square and non-empty")
    return frozen


def _bareiss_det(rows: Sequence[Sequence[int]]) -> int:
    """Fraction-free Bareiss determinant; all intermediate values stay integral."""
    n = len(rows)
    a = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
        prev = pivot
    return sign * a[n - 1][n - 1]


@dataclass(frozen=True)
class IntMatrix:
    """Immutable square matrix over Z."""

    rows: tuple[tuple[int, ...], ...]

    @staticmethod
    def from_rows(rows: Iterable[Iterable[int]]) -> "IntMatrix":
        return IntMatrix(_freeze(rows))

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        if n < 1:
            raise DimensionError("dimension must be >= 1")
        return IntMatrix(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @property
    def n(self) -> int:
        return len(self.rows)

    def __mul__(self, other: "IntMatrix") -> "IntMatrix":
        if not isinstance(other, IntMatrix):
            return NotImplemented
        if self.n != other.n:
            raise DimensionError(f"cannot multiply {self.n}x{self.n} by {other.n}x{other.n}")
        n = self.n
        bt = tuple(zip(*other.rows))
        return IntMatrix(
            tuple(
                tuple(sum(a * b for a, b in zip(row, col)) for col in bt)
                for row in self.rows
            )
        )

    def __pow__(self, e: int) -> "IntMatrix":
        if e < 0:
            return self.inverse() ** (-e)
        result = IntMatrix.identity(self.n)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def transpose(self) -> "IntMatrix":
        return IntMatrix(tuple(zip(*self.rows)))

    def det(self) -> int:
        return _bareiss_det(self.rows)

    def _minor(self, i: int, j: int) -> int:
        sub = [
            [self.rows[r][c] for c in range(self.n) if c != j]
            for r in range(self.n)
            if r != i
        ]
        return _bareiss_det(sub)

    def inverse(self) -> "IntMatrix":
        d = self.det()
        if d not in (1, -1):
            raise NotUnimodularError(f"determinant is {d}, not +-1")
        n = self.n
        if n == 1:
            return IntMatrix(((d,),))
        # adjugate transposed entry (i,j) = cofactor (j,i); division by det is
        # multiplication since det = +-1
        adj = [
            [((-1) ** (i + j)) * self._minor(j, i) * d for j in range(n)]
            for i in range(n)
        ]
        return IntMatrix.from_rows(adj)

    def is_identity(self) -> bool:
        return all(
            self.rows[i][j] == (1 if i == j else 0)
            for i in range(self.n)
            for j in range(self.n)
        )

    def reduce_mod(self, d: int) -> "ModMatrix":
        if d < 2:
            raise ValueError("modulus must be >= 2")
        return ModMatrix(d, tuple(tuple(e % d for e in row) for row in self.rows))

    def __str__(self) -> str:
        return format_matrix(self)


@dataclass(frozen=True)
class ModMatrix:
    """Square matrix over Z/d; the modulus travels with the value."""

    modulus: int
    rows: tuple[tuple[int, ...], ...]

    @staticmethod
    def from_rows(d: int, rows: Iterable[Iterable[int]]) -> "ModMatrix":
        if d < 2:
            raise ValueError("modulus must be >= 2")
        return ModMatrix(d, tuple(tuple(int(e) % d for e in row) for row in _freeze(rows)))

    @staticmethod
    def identity(n: int, d: int) -> "ModMatrix":
        return IntMatrix.identity(n).reduce_mod(d)

    @property
    def n(self) -> int:
        return len(self.rows)

    def _check(self, other: "ModMatrix") -> None:
        if self.modulus != other.modulus:
            raise ModulusMismatchError(f"moduli differ: {self.modulus} vs {other.modulus}")
        if self.n != other.n:
            raise DimensionError(f"cannot combine {self.n}x{self.n} with {other.n}x{other.n}")

    def __mul__(self, other: "ModMatrix") -> "ModMatrix":
        if not isinstance(other, ModMatrix):
            return NotImplemented
        self._check(other)
        d = self.modulus
        bt = tuple(zip(*other.rows))
        return ModMatrix(
            d,
            tuple(
                tuple(sum(a * b for a, b in zip(row, col)) % d for col in bt)
                for row in self.rows
            ),
        )

    def __pow__(self, e: int) -> "ModMatrix":
        if e < 0:
            return self.inverse() ** (-e)
        result = ModMatrix.identity(self.n, self.modulus)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def transpose(self) -> "ModMatrix":
        return ModMatrix(self.modulus, tuple(zip(*self.rows)))

    def det(self) -> int:
        return _bareiss_det(self.rows) % self.modulus

    def inverse(self) -> "ModMatrix":
        d = self.modulus
        det = self.det()
        try:
            det_inv = pow(det, -1, d)
        except ValueError:
            raise NotUnimodularError(f"determinant {det} is not invertible mod {d}")
        n = self.n
        if n == 1:
            return ModMatrix(d, ((det_inv,),))
        lift = IntMatrix(self.rows)
        adj = [
            [(((-1) ** (i + j)) * lift._minor(j, i) * det_inv) % d for j in range(n)]
            for i in range(n)
        ]
        return ModMatrix.from_rows(d, adj)

    def is_identity(self) -> bool:
        return all(
            self.rows[i][j] == (1 if i == j else 0) % self.modulus
            for i in range(self.n)
            for j in range(self.n)
        )

    def __str__(self) -> str:
        return format_matrix(self)


def elementary(n: int, i: int, j: int, k: int = 1) -> IntMatrix:
    """Elementary matrix with (i, j) entry k and unit diagonal (1-based indices)."""
    if not (1 <= i <= n and 1 <= j <= n):
        raise DimensionError(f"indices ({i},{j}) out of range for dimension {n}")
    if i == j:
        raise ValueError("elementary matrix requires i != j")
    rows = [[1 if r == c else 0 for c in range(n)] for r in range(n)]
    rows[i - 1][j - 1] = int(k)
    return IntMatrix.from_rows(rows)


def congruence_member(a: IntMatrix, d: int, variant: str = "gamma") -> bool:
    """Membership in the level-d principal congruence subgroup.

    ``gamma`` asks for the SL kernel (det = 1), ``gamma_hat`` for the GL kernel
    (det = +-1); both require every entry congruent to the identity mod d.
    For d >= 3 the two variants agree on unimodular input, since a matrix
    congruent to the identity has determinant = 1 mod d.
    """
    if d < 2:
        raise ValueError("level must be >= 2")
    if variant not in ("gamma", "gamma_hat"):
        raise ValueError(f"unknown variant {variant!r}")
    n = a.n
    for i in range(n):
        for j in range(n):
            if (a.rows[i][j] - (1 if i == j else 0)) % d != 0:
                return False
    det = a.det()
    if variant == "gamma":
        return det == 1
    return det in (1, -1)


def format_matrix(m: IntMatrix | ModMatrix) -> str:
    """Rows separated by ';', entries by ',' (e.g. ``1,0;4,1``)."""
    return ";".join(",".join(str(e) for e in row) for row in m.rows)


def parse_matrix(text: str) -> IntMatrix:
    try:
        rows = [[int(e) for e in row.split(",")] for row in text.strip().split(";")]
    except ValueError as exc:
        raise ValueError(f"bad matrix literal {text!r}: {exc}") from None
    return IntMatrix.from_rows(rows)


def matrix_json(m: IntMatrix | ModMatrix) -> list[list[str]]:
    """JSON form: array of arrays of decimal strings (arbitrary precision safe)."""
    return [[str(e) for e in row] for row in m.rows]
