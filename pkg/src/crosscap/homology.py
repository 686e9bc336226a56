"""First homology of the closed non-orientable surface and generator actions.

The genus-g closed non-orientable surface has
``H_1 = <a_1, ..., a_g | 2(a_1 + ... + a_g) = 0>``; classes are integer
coefficient vectors modulo a simultaneous even shift of all coordinates, and
the normal form fixes the last coordinate to 0 or 1.

Generator actions are recorded as exact g x g integer matrices in the basis
a_1..a_g (columns are images, so the matrix of the written word ``u v`` is
``M(u) * M(v)`` with the rightmost letter applied first).  Collapsing the
total class a_1 + ... + a_g to zero gives the (g-1) x (g-1) reduced action;
reducing entries mod 2 gives the action on mod-2 homology, which preserves
the mod-2 intersection pairing.

The basis pairing a_i * a_j = delta_ij is reconstructed, not axiomatic: it
is the unique choice under which even shifts pair to zero and the twist and
slide actions below preserve the form, and the property tests exercise
exactly that.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Optional

from .intmat import IntMatrix, ModMatrix
from .words import (
    BoundaryTwist,
    MCGWord,
    Slide,
    Symbol,
    TorelliTag,
    Twist,
    validate_symbol,
)


class NoHomologyActionError(ValueError):
    """Raised when a word contains boundary-only letters."""


# ---------------------------------------------------------------------------
# homology classes
# ---------------------------------------------------------------------------


class H1Class:
    """Element of H_1, stored as raw coefficients; equality uses normal forms."""

    __slots__ = ("genus", "coeffs")

    def __init__(self, genus: int, coeffs):
        coeffs = tuple(int(c) for c in coeffs)
        if genus < 1 or len(coeffs) != genus:
            raise ValueError(f"need {genus} coefficients, got {len(coeffs)}")
        self.genus = genus
        self.coeffs = coeffs

    def normalize(self) -> "H1Class":
        """Representative with last coordinate 0 or 1 (shift by an even integer)."""
        last = self.coeffs[-1]
        shift = last - (last % 2)
        if shift == 0:
            return self
        return H1Class(self.genus, tuple(c - shift for c in self.coeffs))

    def __eq__(self, other) -> bool:
        if not isinstance(other, H1Class):
            return NotImplemented
        return (
            self.genus == other.genus
            and self.normalize().coeffs == other.normalize().coeffs
        )

    def __hash__(self) -> int:
        return hash((self.genus, self.normalize().coeffs))

    def __add__(self, other: "H1Class") -> "H1Class":
        self._check(other)
        return H1Class(self.genus, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "H1Class":
        return H1Class(self.genus, tuple(-c for c in self.coeffs))

    def _check(self, other: "H1Class") -> None:
        if self.genus != other.genus:
            raise ValueError(f"genus mismatch: {self.genus} vs {other.genus}")

    def __repr__(self) -> str:
        return f"H1Class(g={self.genus}, {format_h1(self)!r})"

    def __str__(self) -> str:
        return format_h1(self)


def basis_class(genus: int, i: int) -> H1Class:
    if not 1 <= i <= genus:
        raise ValueError(f"basis index {i} out of range")
    return H1Class(genus, tuple(1 if j == i - 1 else 0 for j in range(genus)))


def mod2_pairing(x: H1Class, y: H1Class) -> int:
    """Mod-2 intersection number; well defined on the quotient by even shifts."""
    x._check(y)
    return sum(a * b for a, b in zip(x.coeffs, y.coeffs)) % 2


_H1_TERM = re.compile(r"\s*(?P<sign>[+-])?\s*(?P<coef>\d+)?\s*a(?P<idx>\d+)")


def parse_h1(text: str, genus: int) -> H1Class:
    """Parse ``2a1 - a3 + a4`` style combinations."""
    stripped = text.strip()
    if stripped == "0":
        return H1Class(genus, (0,) * genus)
    coeffs = [0] * genus
    pos = 0
    first = True
    while pos < len(stripped):
        m = _H1_TERM.match(stripped, pos)
        if not m:
            raise ValueError(f"bad homology class {text!r} near position {pos}")
        sign = m.group("sign")
        if sign is None and not first:
            raise ValueError(f"missing '+'/'-' between terms in {text!r}")
        coef = int(m.group("coef") or 1) * (-1 if sign == "-" else 1)
        idx = int(m.group("idx"))
        if not 1 <= idx <= genus:
            raise ValueError(f"index a{idx} out of range for genus {genus}")
        coeffs[idx - 1] += coef
        pos = m.end()
        first = False
    return H1Class(genus, coeffs)


def format_h1(x: H1Class) -> str:
    parts = []
    for i, c in enumerate(x.coeffs, start=1):
        if c == 0:
            continue
        mag = abs(c)
        term = f"a{i}" if mag == 1 else f"{mag}a{i}"
        if not parts:
            parts.append(term if c > 0 else f"-{term}")
        else:
            parts.append(("+ " if c > 0 else "- ") + term)
    return " ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# generator matrices
# ---------------------------------------------------------------------------


def twist_matrix(indices: tuple[int, ...], genus: int, exp: int = 1) -> IntMatrix:
    """Action of the d-th power of a twist about the curve through ``indices``.

    With u the indicator vector of the index set and w the alternating sign
    vector (-1 at the 1st, 3rd, ... smallest indices, +1 at the rest), the
    action is I + d u w^T.  Since w . u = 0 this is exactly the d-th power of
    the single twist.
    """
    sym = Twist(indices)
    validate_symbol(sym, genus)
    idx = sym.indices
    rows = [[1 if r == c else 0 for c in range(genus)] for r in range(genus)]
    in_set = set(idx)
    for pos, j in enumerate(idx):
        sign = -1 if pos % 2 == 0 else 1
        for r in range(genus):
            if r + 1 in in_set:
                rows[r][j - 1] += exp * sign
    return IntMatrix.from_rows(rows)


def slide_matrix(moving: int, along: int, genus: int) -> IntMatrix:
    """a_moving -> -a_moving, a_along -> 2 a_moving + a_along, rest fixed."""
    sym = Slide(moving, along)
    validate_symbol(sym, genus)
    rows = [[1 if r == c else 0 for c in range(genus)] for r in range(genus)]
    a, b = moving - 1, along - 1
    rows[a][a] = -1
    rows[a][b] = 2
    return IntMatrix.from_rows(rows)


def generator_matrix(sym: Symbol, genus: int, exp: int = 1) -> IntMatrix:
    validate_symbol(sym, genus)
    if isinstance(sym, Twist):
        return twist_matrix(sym.indices, genus, exp)
    if isinstance(sym, Slide):
        # the slide action is an involution on H_1, so only exp mod 2 matters
        if exp % 2 == 0:
            return IntMatrix.identity(genus)
        return slide_matrix(sym.moving, sym.along, genus)
    if isinstance(sym, TorelliTag):
        return IntMatrix.identity(genus)
    if isinstance(sym, BoundaryTwist):
        raise NoHomologyActionError(
            f"{sym.kind} twists live on bounded surfaces and have no action here"
        )
    raise TypeError(f"not a generator symbol: {sym!r}")


def word_matrix(w: MCGWord) -> IntMatrix:
    """Exact g x g action of a word (rightmost letter applied first)."""
    m = IntMatrix.identity(w.genus)
    for sym, exp in w.letters:
        m = m * generator_matrix(sym, w.genus, exp)
    return m


def act(w: MCGWord, x: H1Class) -> H1Class:
    if w.genus != x.genus:
        raise ValueError(f"genus mismatch: word {w.genus}, class {x.genus}")
    m = word_matrix(w)
    coeffs = tuple(
        sum(m.rows[r][c] * x.coeffs[c] for c in range(w.genus)) for r in range(w.genus)
    )
    return H1Class(w.genus, coeffs)


def collapse_total_class(m: IntMatrix) -> IntMatrix:
    """Quotient action on H_1 / <a_1 + ... + a_g>, a (g-1) x (g-1) matrix."""
    g = m.n
    if g < 2:
        raise ValueError("need genus >= 2 to collapse")
    return IntMatrix.from_rows(
        [[m.rows[i][j] - m.rows[g - 1][j] for j in range(g - 1)] for i in range(g - 1)]
    )


def reduced_action(w: MCGWord) -> IntMatrix:
    """The GL(g-1, Z)-valued action (multiplicative in the word)."""
    if w.genus < 2:
        raise ValueError("reduced action needs genus >= 2")
    return collapse_total_class(word_matrix(w))


def mod2_action(w: MCGWord) -> ModMatrix:
    """Action on mod-2 homology; always orthogonal for the mod-2 pairing."""
    return word_matrix(w).reduce_mod(2)


def matrix_level_trivial(m: IntMatrix, d: int) -> bool:
    """Does a g x g action fix every class of H_1 with Z/d coefficients?

    Column j must differ from e_j by a constant vector 2l mod d; for odd d
    every constant qualifies (2 is invertible), for even d it must be even.
    """
    if d < 2:
        raise ValueError("level must be >= 2")
    g = m.n
    for j in range(g):
        residues = {(m.rows[i][j] - (1 if i == j else 0)) % d for i in range(g)}
        if len(residues) != 1:
            return False
        c = residues.pop()
        if d % 2 == 0 and c % 2 != 0:
            return False
    return True


def level_member(w: MCGWord, d: int) -> bool:
    """Membership in the level-d subgroup (trivial action on H_1(.; Z/d))."""
    return matrix_level_trivial(word_matrix(w), d)


# ---------------------------------------------------------------------------
# lifting obstruction
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LiftSearch:
    """Outcome of the exhaustive lift search for a reduced-action target."""

    obstructed: bool
    witness: Optional[IntMatrix]
    candidates_checked: int


def lift_obstruction(target: IntMatrix, genus: int, parity: str = "even") -> LiftSearch:
    """Search the 2^g lifts of a (g-1) x (g-1) target for one preserving
    the mod-2 pairing on basis classes.

    Each lift sends a_j to the target column optionally plus the total class
    a_1 + ... + a_g; whether that addition is written with coefficient 1 or d
    (the even/odd normal forms) does not change the class, so ``parity`` only
    labels the convention.  Returns the first preserving lift, columns in
    normal form, or reports the obstruction.
    """
    if parity not in ("even", "odd"):
        raise ValueError(f"parity must be 'even' or 'odd', got {parity!r}")
    if genus < 3:
        raise ValueError("lift search needs genus >= 3")
    if target.n != genus - 1:
        raise ValueError(f"target must be {genus - 1} x {genus - 1}")
    g = genus
    base_cols = []
    for j in range(g - 1):
        base_cols.append([target.rows[i][j] for i in range(g - 1)] + [0])
    last = [-sum(col[i] for col in base_cols) for i in range(g)]
    base_cols.append(last)

    checked = 0
    for eps in itertools.product((0, 1), repeat=g):
        checked += 1
        cols = [[base_cols[j][i] + eps[j] for i in range(g)] for j in range(g)]
        ok = True
        for a in range(g):
            for b in range(a, g):
                pair = sum(cols[a][i] * cols[b][i] for i in range(g)) % 2
                if pair != (1 if a == b else 0):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            normalized = []
            for col in cols:
                shift = col[-1] - (col[-1] % 2)
                normalized.append([c - shift for c in col])
            witness = IntMatrix.from_rows(
                [[normalized[j][i] for j in range(g)] for i in range(g)]
            )
            return LiftSearch(False, witness, checked)
    return LiftSearch(True, None, checked)
