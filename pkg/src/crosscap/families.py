"""Named families of mapping classes and the generating-set enumerators.

The slide family Y, the twist powers A, the slide squares B, the mixed
family C and the paired-twist family D are the building blocks of the
finite generating sets; ordered transversals over Y (and over the derived
set Z) enumerate coset representatives.  Everything is deterministic:
families are listed in lexicographic index order and transversals follow
binary counting over that order, so streams are reproducible.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

from .words import (
    BoundaryTwist,
    MCGWord,
    Slide,
    TorelliTag,
    Twist,
    commutator,
    conjugate,
    word,
)


class FamilyIndexError(ValueError):
    """Indices violate a family's constraints."""


@dataclass(frozen=True)
class NamedFamilyElement:
    family: str
    indices: tuple[int, ...]
    genus: int
    word: MCGWord
    alternates: tuple[MCGWord, ...] = ()
    sign: Optional[int] = None  # conjugated-twist exponent chosen for D


def _slide_word(g: int, a: int, b: int, exp: int = 1) -> MCGWord:
    return word(g, (Slide(a, b), exp))


def _twist_word(g: int, indices: Sequence[int], exp: int = 1) -> MCGWord:
    return word(g, (Twist(tuple(indices)), exp))


# chosen exponent for the conjugated twist inside D, per (genus, indices);
# resolved once by requiring the full word to act as the identity matrix
_D_SIGN_CACHE: dict[tuple[int, tuple[int, ...]], int] = {}

# C elements whose two realizations have been confirmed equal on homology
_C_CHECKED: set[tuple[int, tuple[int, ...]]] = set()


def _check_c_realizations(
    g: int, idx: tuple[int, ...], primary: MCGWord, twist_form: MCGWord
) -> None:
    key = (g, idx)
    if key in _C_CHECKED:
        return
    from .homology import word_matrix

    if word_matrix(primary).rows != word_matrix(twist_form).rows:
        raise FamilyIndexError(f"C{idx}: slide and twist realizations disagree on homology")
    _C_CHECKED.add(key)


def _resolve_d_sign(g: int, indices: tuple[int, ...]) -> int:
    key = (g, indices)
    if key in _D_SIGN_CACHE:
        return _D_SIGN_CACHE[key]
    from .homology import word_matrix

    i, j, k, l = indices
    conjugator = _slide_word(g, j, i) * _slide_word(g, k, l).inverse()
    twist = _twist_word(g, indices)
    winners = []
    for sign in (1, -1):
        candidate = twist * conjugate(twist**sign, conjugator)
        if word_matrix(candidate).is_identity():
            winners.append(sign)
    if len(winners) != 1:
        raise FamilyIndexError(
            f"conjugated-twist sign for D{indices} is not determined (candidates {winners})"
        )
    _D_SIGN_CACHE[key] = winners[0]
    return winners[0]


def named_element(family: str, indices: tuple[int, ...], g: int) -> NamedFamilyElement:
    """Build one family element with its realization word.

    ``Y(i,j)`` is the slide itself; ``A(i,j)`` the 4th twist power; ``B(i,j)``
    a slide square; ``C(i,j;k)`` comes in a slide form (primary) and a twist
    form (alternate) whose equality on homology is a checked identity;
    ``D(i,j,k,l)`` pairs a twist with a conjugated twist whose exponent is
    chosen so the whole word acts trivially on homology.
    """
    idx = tuple(int(v) for v in indices)
    if family == "Y":
        i, j = _expect(idx, 2, family)
        if not (1 <= i <= g - 1 and 1 <= j <= g and i != j):
            raise FamilyIndexError(f"Y{idx} out of range for genus {g}")
        return NamedFamilyElement("Y", idx, g, _slide_word(g, i, j))
    if family == "A":
        i, j = _expect(idx, 2, family)
        _require_increasing(idx[:2], g, family)
        alt1 = (_slide_word(g, j, i).inverse() * _slide_word(g, i, j)) ** 2
        alt2 = (_slide_word(g, j, i) * _slide_word(g, i, j).inverse()) ** 2
        return NamedFamilyElement("A", idx, g, _twist_word(g, (i, j), 4), (alt1, alt2))
    if family == "B":
        i, j = _expect(idx, 2, family)
        _require_increasing(idx[:2], g, family)
        primary = _slide_word(g, i, j) ** 2
        alt = _slide_word(g, j, i) ** 2
        return NamedFamilyElement("B", idx, g, primary, (alt,))
    if family == "C":
        i, j, k = _expect(idx, 3, family)
        _require_increasing((i, j), g, family)
        if not 1 <= k <= g or k in (i, j):
            raise FamilyIndexError(f"C{idx}: third index must avoid {{{i},{j}}}")
        t2 = _twist_word(g, (i, j), 2)
        if i < k < j:
            primary = (_slide_word(g, k, j) * _slide_word(g, k, i)) ** 2
            twist_form = t2.inverse() * conjugate(t2, _slide_word(g, k, i))
        else:
            primary = (_slide_word(g, k, i) * _slide_word(g, k, j)) ** 2
            twist_form = t2 * conjugate(t2.inverse(), _slide_word(g, k, i).inverse())
        _check_c_realizations(g, idx, primary, twist_form)
        return NamedFamilyElement("C", idx, g, primary, (twist_form,))
    if family == "D":
        i, j, k, l = _expect(idx, 4, family)
        _require_increasing(idx, g, family)
        sign = _resolve_d_sign(g, idx)
        conjugator = _slide_word(g, j, i) * _slide_word(g, k, l).inverse()
        twist = _twist_word(g, idx)
        return NamedFamilyElement(
            "D", idx, g, twist * conjugate(twist**sign, conjugator), sign=sign
        )
    raise FamilyIndexError(f"unknown family {family!r}")


def _expect(idx: tuple[int, ...], count: int, family: str) -> tuple[int, ...]:
    if len(idx) != count:
        raise FamilyIndexError(f"{family} takes {count} indices, got {idx}")
    return idx


def _require_increasing(idx: tuple[int, ...], g: int, family: str) -> None:
    if any(a >= b for a, b in zip(idx, idx[1:])) or idx[0] < 1 or idx[-1] > g:
        raise FamilyIndexError(f"{family}{idx} must be strictly increasing within 1..{g}")


def family_indices(family: str, g: int) -> list[tuple[int, ...]]:
    if g < 3:
        raise FamilyIndexError("families need genus >= 3")
    if family == "Y":
        return [(i, j) for i in range(1, g) for j in range(1, g + 1) if j != i]
    if family in ("A", "B"):
        return [(i, j) for i in range(1, g + 1) for j in range(i + 1, g + 1)]
    if family == "C":
        return [
            (i, j, k)
            for i in range(1, g + 1)
            for j in range(i + 1, g + 1)
            for k in range(1, g + 1)
            if k not in (i, j)
        ]
    if family == "D":
        return [
            (1, j, k, l)
            for j in range(2, g + 1)
            for k in range(j + 1, g + 1)
            for l in range(k + 1, g + 1)
        ]
    raise FamilyIndexError(f"unknown family {family!r}")


def family_elements(family: str, g: int) -> list[NamedFamilyElement]:
    return [named_element(family, idx, g) for idx in family_indices(family, g)]


def generator_alphabet(g: int) -> list[MCGWord]:
    """Every twist (even index set) and every slide, as single-letter words."""
    out = []
    for size in range(2, g + 1, 2):
        for combo in itertools.combinations(range(1, g + 1), size):
            out.append(_twist_word(g, combo))
    for a in range(1, g + 1):
        for b in range(1, g + 1):
            if a != b:
                out.append(_slide_word(g, a, b))
    return out


# ---------------------------------------------------------------------------
# ordered transversals
# ---------------------------------------------------------------------------


def y_count(g: int) -> int:
    return (g - 1) ** 2


def transversal_count(g: int) -> int:
    return 1 << y_count(g)


def subset_word(g: int, mask: int) -> MCGWord:
    """Ordered product of the Y-elements selected by ``mask`` bits."""
    pairs = family_indices("Y", g)
    if not 0 <= mask < (1 << len(pairs)):
        raise FamilyIndexError(f"mask {mask} out of range")
    letters = []
    for t, (i, j) in enumerate(pairs):
        if mask >> t & 1:
            letters.append((Slide(i, j), 1))
    return MCGWord.from_letters(g, letters)


def transversal_2y(g: int) -> Iterator[MCGWord]:
    """All ordered products of distinct Y-elements, in mask order (empty first)."""
    for mask in range(transversal_count(g)):
        yield subset_word(g, mask)


def zset(g: int, l: int) -> list[MCGWord]:
    """The tower generating set at level 2^l: suitable powers of A and C elements.

    Order: A-block before C-block, each lexicographic by indices (the total
    order is a free choice; this one is fixed so transversals reproduce).
    """
    if l < 3:
        raise FamilyIndexError("the 2^l tower starts at l = 3")
    exp = 1 << (l - 3)
    out = []
    for i in range(1, g - 1):
        out.append(named_element("A", (i, g - 1), g).word ** exp)
    for j in range(1, g):
        for k in range(1, g):
            if k != j:
                out.append(named_element("C", (j, g, k), g).word ** exp)
    return out


def zset_count(g: int) -> int:
    return (g - 2) + (g - 1) * (g - 2)


def transversal_2z(g: int, l: int) -> Iterator[MCGWord]:
    elements = zset(g, l)
    for mask in range(1 << len(elements)):
        out = MCGWord.identity(g)
        for t, element in enumerate(elements):
            if mask >> t & 1:
                out = out * element
        yield out


# ---------------------------------------------------------------------------
# normal generators of the level-d group (closed and bounded surfaces)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Main2Generator:
    name: str
    word: MCGWord
    closed_surface: bool
    condition: str


def main2_normal_generators(
    g: int, n: int, d: int, include_last_boundary: bool = False
) -> list[Main2Generator]:
    """The conditional normal-generator list for the level-d group of N_{g,n}.

    Two index conventions for the boundary families are in circulation: the
    delta/epsilon/zeta twists stop at boundary n-1 (the last boundary's
    twists being redundant) or run through boundary n.  The default is the
    tight list; ``include_last_boundary=True`` gives the redundant one.
    """
    if g < 4:
        raise FamilyIndexError("the normal generating set needs genus >= 4")
    if n < 0 or d < 2:
        raise ValueError("need n >= 0 and d >= 2")
    out: list[Main2Generator] = []
    odd = d % 2 == 1

    if odd or n >= 1:
        out.append(
            Main2Generator("twist(a12)^d", _twist_word(g, (1, 2), d), True, "d odd or n >= 1")
        )
    if odd and g == 4:
        out.append(
            Main2Generator(
                "twist(a1234)^d", _twist_word(g, (1, 2, 3, 4), d), True, "d odd and g = 4"
            )
        )
    if not odd:
        # t' is the twist about the slide image of a_{1,2}; the product with
        # the inverse twist is the commutator [t_{a12}, Y_{3,2}]
        half = commutator(_twist_word(g, (1, 2)), _slide_word(g, 3, 2)) ** (d // 2)
        out.append(Main2Generator("(twist(a12) twist(a12')^-1)^(d/2)", half, True, "d even"))
    out.append(
        Main2Generator(
            "twist(a1234) twist(a1234')",
            named_element("D", (1, 2, 3, 4), g).word,
            True,
            "always",
        )
    )
    out.append(
        Main2Generator("twist(beta12)", word(g, TorelliTag("beta", (1, 2))), True, "always")
    )
    if g == 4:
        out.append(Main2Generator("twist(gamma)", word(g, TorelliTag("gamma")), True, "g = 4"))

    top = n if include_last_boundary else n - 1
    if n >= 2:
        for k in range(1, top + 1):
            out.append(
                Main2Generator(
                    f"twist(delta{k})", word(g, BoundaryTwist("delta", (k,))), False, "n >= 2"
                )
            )
            out.append(
                Main2Generator(
                    f"twist(eps{g},{k})",
                    word(g, BoundaryTwist("epsilon", (g, k))),
                    False,
                    "n >= 2",
                )
            )
    zeta_min = 2 if include_last_boundary else 3
    if n >= zeta_min:
        for k in range(1, top + 1):
            for l in range(k + 1, top + 1):
                out.append(
                    Main2Generator(
                        f"twist(zeta{k},{l})",
                        word(g, BoundaryTwist("zeta", (k, l))),
                        False,
                        f"n >= {zeta_min}",
                    )
                )
                out.append(
                    Main2Generator(
                        f"twist(zetabar{k},{l})",
                        word(g, BoundaryTwist("zetabar", (k, l))),
                        False,
                        f"n >= {zeta_min}",
                    )
                )
    return out


# ---------------------------------------------------------------------------
# finite generating set of the level-4 group (closed surface)
# ---------------------------------------------------------------------------


def main3_families(g: int) -> list[NamedFamilyElement]:
    out = []
    for family in ("A", "B", "C", "D"):
        out.extend(family_elements(family, g))
    return out


def main3_count(g: int) -> int:
    per = sum(len(family_indices(f, g)) for f in ("A", "B", "C", "D"))
    return transversal_count(g) * per


def main3_generator(g: int, index: int, _families: Optional[list] = None) -> MCGWord:
    """Random access into the generator stream: conjugate of a family element
    by a transversal word, ordered transversal-major."""
    fams = _families if _families is not None else main3_families(g)
    per = len(fams)
    total = transversal_count(g) * per
    if not 0 <= index < total:
        raise IndexError(f"index {index} out of range 0..{total - 1}")
    mask, fam_idx = divmod(index, per)
    return conjugate(fams[fam_idx].word, subset_word(g, mask))


def main3_generators(g: int) -> Iterator[MCGWord]:
    if g < 4:
        raise FamilyIndexError("the level-4 generating set needs genus >= 4")
    fams = main3_families(g)
    for mask in range(transversal_count(g)):
        y = subset_word(g, mask)
        for element in fams:
            yield conjugate(element.word, y)


# ---------------------------------------------------------------------------
# bounded-surface generating sets
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GenNSets:
    """The generating data for the level-d group of N_{g,n} with n >= 1.

    The base set for the closed surface enters as opaque lifted names; the
    boundary families are words in boundary-twist letters (no homology
    action), with the between-boundary conjugating words built from exact
    twist powers.
    """

    g: int
    n: int
    d: int
    base: tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self):
        # n = 0 is allowed as the degenerate record with empty boundary sets
        if self.n < 0:
            raise ValueError("boundary count must be >= 0")
        if self.d < 2:
            raise ValueError("need d >= 2")

    def e_names(self) -> list[str]:
        return [f"lift[{name}]" for name in self.base]

    def f_set(self, l: int) -> list[MCGWord]:
        g, d = self.g, self.d
        if not 1 <= l <= self.n:
            raise ValueError(f"boundary index l = {l} out of range 1..{self.n}")
        out = []
        for i in range(1, g):
            out.append(_twist_word(g, (i, g), d))
        for i in range(1, g):
            out.append(word(g, (BoundaryTwist("acurve", (i, l)), d)))
        out.append(word(g, BoundaryTwist("delta", (l,))))
        for j in range(1, g + 1):
            out.append(word(g, BoundaryTwist("epsilon", (j, l))))
        for k in range(1, l):
            out.append(word(g, BoundaryTwist("zeta", (k, l))))
            out.append(word(g, BoundaryTwist("zetabar", (k, l))))
        for i1 in range(1, g):
            for i2 in range(i1 + 1, g):
                out.append(word(g, BoundaryTwist("eta", (i1, i2, l))))
        return out

    def f_count(self, l: int) -> int:
        g = self.g
        return 2 * (g - 1) + 1 + g + 2 * (l - 1) + (g - 1) * (g - 2) // 2

    def g_count(self) -> int:
        return self.d ** (self.g - 1)

    def g_set(self, l: int) -> Iterator[MCGWord]:
        """The d^(g-1) conjugating words for boundary l, in exponent-vector order."""
        g, d = self.g, self.d
        if not 1 <= l <= self.n:
            raise ValueError(f"boundary index l = {l} out of range 1..{self.n}")
        blocks = [
            _twist_word(g, (i, g), -d) * word(g, (BoundaryTwist("acurve", (i, l)), d))
            for i in range(1, g)
        ]
        for exps in itertools.product(range(d), repeat=g - 1):
            out = MCGWord.identity(g)
            for block, m in zip(blocks, exps):
                out = out * block**m
            yield out

    def h_count(self) -> int:
        return sum(self.f_count(l) * self.g_count() for l in range(1, self.n + 1))

    def h_stream(self) -> Iterator[MCGWord]:
        for l in range(1, self.n + 1):
            f_words = self.f_set(l)
            for z in self.g_set(l):
                for y in f_words:
                    yield conjugate(y, z)


def gen_n_sets(g: int, n: int, d: int, base: Sequence[str] = ()) -> GenNSets:
    return GenNSets(g, n, d, tuple(base))


# ---------------------------------------------------------------------------
# the slide-commutator decomposition table
# ---------------------------------------------------------------------------


def y_order_key(idx: tuple[int, int]) -> tuple[int, int]:
    return idx


def _b(g: int, a: int, b: int) -> MCGWord:
    assert a < b
    return named_element("B", (a, b), g).word


def _c(g: int, i: int, j: int, k: int) -> MCGWord:
    assert i < j
    return named_element("C", (i, j, k), g).word


def _conj(inner: MCGWord, outer: MCGWord) -> MCGWord:
    return conjugate(inner, outer)


def slide_commutator_rhs(x1_idx: tuple[int, int], x2_idx: tuple[int, int], g: int) -> MCGWord:
    """The decomposition of [Y_{x1}, Y_{x2}] (x1 < x2 in the Y-order) as a
    product of conjugated A/B/C elements; the identity word for the pairs
    whose slides commute.

    The bracketed conjugator in the four-distinct-index rows is read as a
    commutator of slides; on homology the factor it wraps is a Torelli
    conjugate, so either reading of the bracket gives the same action.
    """
    if y_order_key(x1_idx) >= y_order_key(x2_idx):
        raise FamilyIndexError("need x1 < x2 in the Y-order")
    i, j = x1_idx
    k, l = x2_idx
    x1 = _slide_word(g, i, j)
    x2 = _slide_word(g, k, l)

    if (k, l) == (j, i):
        b = _b(g, i, j)
        a = named_element("A", (i, j), g).word
        return b * a.inverse() * b.inverse()

    if k == i:  # (Y_{i,j}, Y_{i,k'}) with j < k' = l
        kk = l
        c = _c(g, *sorted((j, kk)), i)
        if i < j < kk:
            return c * _b(g, i, kk).inverse() * _conj(_b(g, i, j).inverse(), x2)
        if j < i < kk:
            return (
                _conj(c, x1)
                * _b(g, i, kk).inverse()
                * _conj(_b(g, j, i).inverse(), x2)
            )
        # j < kk < i
        return c * _b(g, kk, i).inverse() * _conj(_b(g, j, i).inverse(), x2)

    if l == j:  # (Y_{i,j}, Y_{k,j}) with i < k
        mid = _conj(_b(g, min(i, k), max(i, k)).inverse(), x1)
        if j < i < k:
            return _b(g, j, i).inverse() * mid * _b(g, j, i)
        if i < j < k:
            return mid
        # i < k < j
        return _b(g, i, j).inverse() * mid * _b(g, i, j)

    if k == j:  # (Y_{i,j}, Y_{j,k'}) with k' = l != i
        kk = l
        if kk < i < j:
            return _conj(_b(g, kk, i).inverse(), x1) * _c(g, kk, j, i)
        if i < kk < j:
            return (
                _b(g, i, j).inverse()
                * _conj(_b(g, i, kk).inverse(), x1)
                * _conj(_c(g, kk, j, i), x1)
                * _b(g, i, j)
            )
        # i < j < kk
        return _conj(_b(g, i, kk).inverse(), x1) * _c(g, j, kk, i)

    if l == i:  # (Y_{i,j}, Y_{k,i}) with i < k, j != k
        if j < i < k:
            return (
                _b(g, i, k).inverse()
                * _b(g, j, k).inverse()
                * _conj(_b(g, i, k).inverse(), _slide_word(g, k, j))
                * _c(g, j, i, k)
            )
        if i < j < k:
            return _c(g, i, j, k).inverse() * _conj(_b(g, j, k), x2)
        # i < k < j
        return (
            _b(g, i, k).inverse()
            * _conj(_c(g, i, j, k).inverse(), x2)
            * _conj(_b(g, k, j), x2)
            * _b(g, i, k)
        )

    # four distinct indices; nontrivial only when the index pairs interleave
    y_il = _slide_word(g, i, l)
    q = commutator(y_il, x1)
    if i < k < j < l:
        return (
            _conj(_b(g, i, l).inverse(), x1)
            * _conj(_conj(_b(g, i, k), y_il), x1)
            * _conj(_b(g, i, l), x1)
            * _conj(_b(g, i, k), x1)
            * _b(g, i, k).inverse()
            * _b(g, i, l).inverse()
            * _conj(_b(g, i, k).inverse(), x1)
            * _b(g, i, l)
        )
    if i < l < j < k:
        return (
            _conj(_b(g, i, k).inverse(), x1)
            * _conj(_b(g, i, l).inverse(), x1)
            * q.inverse()
            * _conj(_conj(_b(g, i, k).inverse(), x1), y_il)
            * q
            * _conj(_b(g, i, l), x1)
            * _b(g, i, l).inverse()
            * _conj(_b(g, i, k), y_il)
            * _b(g, i, l)
            * _b(g, i, k)
        )
    if j < l < i < k:
        return (
            _conj(_b(g, l, i).inverse(), x1)
            * _conj(_conj(_b(g, i, k), y_il), x1)
            * _conj(_b(g, l, i), x1)
            * _conj(_b(g, i, k), x1)
            * _b(g, i, k).inverse()
            * _b(g, l, i).inverse()
            * _conj(_b(g, i, k).inverse(), x1)
            * _b(g, l, i)
        )
    if l < i < k < j:
        return (
            _conj(_b(g, l, i).inverse(), x1)
            * q.inverse()
            * _conj(_conj(_b(g, i, k), x1), y_il)
            * q
            * _conj(_b(g, l, i), x1)
            * _conj(_b(g, i, k), x1)
            * _b(g, i, k).inverse()
            * _b(g, l, i).inverse()
            * _conj(_b(g, i, k).inverse(), y_il)
            * _b(g, l, i)
        )
    return MCGWord.identity(g)


# ---------------------------------------------------------------------------
# the 3-chain decomposition
# ---------------------------------------------------------------------------


def three_chain_words(j: int, k: int, l: int, g: int) -> tuple[MCGWord, MCGWord, MCGWord]:
    """Three realizations of the same mapping class for 1 < j < k < l <= g:
    the 4th power of the twist chain, the paired-twist form, and the full
    slide-word expansion.  All three must agree on homology.
    """
    if not 1 < j < k < l <= g:
        raise FamilyIndexError(f"need 1 < j < k < l <= g, got {(j, k, l)}")
    chain = (_twist_word(g, (1, j)) * _twist_word(g, (j, k)) * _twist_word(g, (k, l))) ** 4

    sign = _resolve_d_sign(g, (1, j, k, l))
    conjugator = _slide_word(g, j, 1) * _slide_word(g, k, l).inverse()
    twist = _twist_word(g, (1, j, k, l))
    paired = twist * conjugate(twist**sign, conjugator).inverse()

    def yw(a: int, b: int, e: int = 1) -> MCGWord:
        return _slide_word(g, a, b) ** e

    slide_form = (
        yw(j, 1, -1)
        * yw(1, j)
        * yw(k, j, -1)
        * yw(j, k)
        * _conj(yw(k, 1, -1) * yw(1, k), yw(j, 1))
        * yw(l, k, -1)
        * yw(k, l)
        * _conj(yw(l, j, -1) * yw(j, l), yw(k, j))
        * _conj(yw(l, 1, -1) * yw(1, l), yw(j, 1) * yw(k, l, -1))
    )
    return chain, paired, slide_form
