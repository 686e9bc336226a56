"""Free-group machinery for the punctured-surface fundamental group.

The fundamental group of the bounded surface is modelled as the free group
on ``x_1..x_g`` (crosscap loops) and ``y_1..y_{n-1}`` (boundary loops).  The
two-sided loops form the index-2 subgroup of words with even total
x-exponent; rewriting over the transversal ``{1, x_g}`` expresses its
elements in the free basis

    u_i = x_i x_g^-1 (i < g),   v_i = x_g x_i (i <= g),   y_k,   z_k,

of rank ``2g + 2n - 3`` (``u_g`` collapses to the trivial word and is
skipped; ``z_k`` abbreviates ``x_g y_k x_g^-1``).

The coefficient map ``theta`` records how pushing the base point along a
two-sided loop moves each crosscap class across the last boundary.  Its
basis values are pinned by three defining constraints -- theta(x_i x_g) =
-e_i + e_g, theta(x_i^2) = 0 and theta(y_k) = theta(z_k) = 0 -- which force
theta(u_i) = -e_i + e_g and theta(v_i) = e_i - e_g; see
``derive_theta_basis`` for the oracle that re-derives them.  The integral
map is implemented once and reduced mod d on demand, making its image the
rank-(g-1) sum-zero lattice, a checkable statement.

Subgroup questions are decided on folded graphs over the plus-basis
alphabet, since the kernel of theta lives inside the two-sided subgroup and
all index statements are relative to it.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

from .finitegrp import CosetTable, schreier_generators, todd_coxeter


class NotTwoSidedError(ValueError):
    """A one-sided loop was used where a two-sided one is required."""


class ScaleGuardError(ValueError):
    """A desk-scale guard (on d^(g-1) or similar) was exceeded."""


Atom = tuple[str, int]  # (kind, index), kind in {"x", "y", "u", "v", "z"}


def _reduce(letters: Iterable[tuple[Atom, int]]) -> tuple[tuple[Atom, int], ...]:
    stack: list[tuple[Atom, int]] = []
    for atom, exp in letters:
        exp = int(exp)
        if exp == 0:
            continue
        if stack and stack[-1][0] == atom:
            merged = stack[-1][1] + exp
            stack.pop()
            if merged != 0:
                stack.append((atom, merged))
        else:
            stack.append((atom, exp))
    return tuple(stack)


@dataclass(frozen=True)
class FreeWord:
    """Freely reduced word over named letters."""

    letters: tuple[tuple[Atom, int], ...]

    @staticmethod
    def identity() -> "FreeWord":
        return FreeWord(())

    @staticmethod
    def from_letters(letters: Iterable[tuple[Atom, int]]) -> "FreeWord":
        return FreeWord(_reduce(letters))

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        if not isinstance(other, FreeWord):
            return NotImplemented
        return FreeWord(_reduce(self.letters + other.letters))

    def inverse(self) -> "FreeWord":
        return FreeWord(tuple((a, -e) for a, e in reversed(self.letters)))

    def __pow__(self, e: int) -> "FreeWord":
        if e == 0:
            return FreeWord.identity()
        base = self if e > 0 else self.inverse()
        out = base
        for _ in range(abs(e) - 1):
            out = out * base
        return out

    def is_identity(self) -> bool:
        return not self.letters

    def length(self) -> int:
        return sum(abs(e) for _, e in self.letters)

    def single_letters(self) -> Iterator[tuple[Atom, int]]:
        """Stream (atom, +-1) steps."""
        for atom, exp in self.letters:
            step = 1 if exp > 0 else -1
            for _ in range(abs(exp)):
                yield atom, step

    def __str__(self) -> str:
        return format_free(self)


def x_(i: int, e: int = 1) -> FreeWord:
    return FreeWord.from_letters([(("x", i), e)])


def y_(k: int, e: int = 1) -> FreeWord:
    return FreeWord.from_letters([(("y", k), e)])


def x_run(*indices: int) -> FreeWord:
    """``x_{i_1, ..., i_k}`` as the product of the crosscap loops."""
    out = FreeWord.identity()
    for i in indices:
        out = out * x_(i)
    return out


_FREE_TOKEN = re.compile(r"\s*(?P<kind>[xyuvz])(?P<idx>\d+)(?:\^(?P<exp>-?\d+))?")


def parse_free(text: str) -> FreeWord:
    """Parse ``x1 x2^-1 y1`` style words (also accepts u/v/z basis letters)."""
    letters = []
    pos = 0
    stripped = text.strip()
    while pos < len(stripped):
        m = _FREE_TOKEN.match(stripped, pos)
        if not m:
            raise ValueError(f"bad free word {text!r} near position {pos}")
        letters.append(
            ((m.group("kind"), int(m.group("idx"))), int(m.group("exp") or 1))
        )
        pos = m.end()
    return FreeWord.from_letters(letters)


def format_free(w: FreeWord) -> str:
    return " ".join(
        f"{a[0]}{a[1]}" + (f"^{e}" if e != 1 else "") for a, e in w.letters
    )


def validate_ambient(w: FreeWord, g: int, n: int) -> None:
    for (kind, idx), _ in w.letters:
        if kind == "x":
            if not 1 <= idx <= g:
                raise ValueError(f"x{idx} out of range for genus {g}")
        elif kind == "y":
            if not 1 <= idx <= n - 1:
                raise ValueError(f"y{idx} out of range for {n} boundaries")
        else:
            raise ValueError(f"{kind}{idx} is a basis letter, not an ambient one")


# ---------------------------------------------------------------------------
# the two-sided subgroup and its free basis
# ---------------------------------------------------------------------------


def is_two_sided(w: FreeWord) -> bool:
    """True when the total x-exponent is even (the orientation character)."""
    return sum(e for (kind, _), e in w.letters if kind == "x") % 2 == 0


def plus_basis_alphabet(g: int, n: int) -> list[Atom]:
    """Free basis letters of the two-sided subgroup, in the fixed order used
    for graphs and coset enumeration."""
    atoms: list[Atom] = [("u", i) for i in range(1, g)]
    atoms += [("v", i) for i in range(1, g + 1)]
    atoms += [("y", k) for k in range(1, n)]
    atoms += [("z", k) for k in range(1, n)]
    return atoms


def rewrite_two_sided(w: FreeWord, g: int) -> FreeWord:
    """Rewrite a two-sided word over the plus-basis alphabet.

    Scans the word tracking which of the two cosets {1, x_g} the prefix lies
    in and emits one basis letter per step; the concatenation of the emitted
    letters equals the input in the free group.
    """
    if not is_two_sided(w):
        raise NotTwoSidedError(f"{format_free(w)} has odd x-exponent")
    out: list[tuple[Atom, int]] = []
    at_xg = False
    for (kind, idx), step in w.single_letters():
        if kind == "y":
            out.append((("z" if at_xg else "y", idx), step))
            continue
        if kind != "x":
            raise ValueError(f"cannot rewrite letter {kind}{idx}")
        if not at_xg:
            if step == 1:
                if idx != g:
                    out.append((("u", idx), 1))
            else:
                out.append((("v", idx), -1))
            at_xg = True
        else:
            if step == 1:
                out.append((("v", idx), 1))
            else:
                if idx != g:
                    out.append((("u", idx), -1))
            at_xg = False
    assert not at_xg
    return FreeWord.from_letters(out)


def expand_basis(w: FreeWord, g: int) -> FreeWord:
    """Inverse substitution of the basis letters, for verification."""
    out = FreeWord.identity()
    for (kind, idx), exp in w.letters:
        if kind == "u":
            piece = x_(idx) * x_(g, -1)
        elif kind == "v":
            piece = x_(g) * x_(idx)
        elif kind == "y":
            piece = y_(idx)
        elif kind == "z":
            piece = x_(g) * y_(idx) * x_(g, -1)
        else:
            raise ValueError(f"not a basis letter: {kind}{idx}")
        out = out * piece**exp
    return out


# ---------------------------------------------------------------------------
# the push-coefficient map
# ---------------------------------------------------------------------------


def derive_theta_basis(g: int) -> dict[Atom, tuple[int, ...]]:
    """Re-derive the basis values of the coefficient map from its defining
    constraints instead of hard-coding them.

    Constraints: pushing along x_i x_g sends e_i -> -1, e_g -> +1; squares
    x_i^2 and the boundary loops y_k, z_k push nothing.  Writing x_i x_g =
    u_i v_g and x_i^2 = u_i v_i forces theta(v_g) = 0, theta(u_i) = -e_i +
    e_g and theta(v_i) = e_i - e_g.
    """
    zero = (0,) * g
    values: dict[Atom, tuple[int, ...]] = {("v", g): zero}
    for i in range(1, g):
        target = tuple(
            (-1 if t == i - 1 else 0) + (1 if t == g - 1 else 0) for t in range(g)
        )
        values[("u", i)] = target  # theta(x_i x_g) - theta(v_g)
        values[("v", i)] = tuple(-c for c in target)  # theta(x_i^2) - theta(u_i)
    return values


def push_coefficients_int(w: FreeWord, g: int) -> tuple[int, ...]:
    """The integral coefficient vector of a two-sided word."""
    values = derive_theta_basis(g)
    total = [0] * g
    for atom, exp in rewrite_two_sided(w, g).letters:
        kind = atom[0]
        if kind in ("y", "z"):
            continue
        vec = values[atom]
        for t in range(g):
            total[t] += exp * vec[t]
    return tuple(total)


def push_coefficients(w: FreeWord, g: int, d: int) -> tuple[int, ...]:
    """The coefficient vector mod d; coordinates always sum to 0 mod d."""
    if d < 2:
        raise ValueError("modulus must be >= 2")
    return tuple(c % d for c in push_coefficients_int(w, g))


# ---------------------------------------------------------------------------
# Stallings graphs
# ---------------------------------------------------------------------------


class StallingsGraph:
    """Folded, based subgroup graph over a fixed alphabet.

    Vertices are integers with base 0; ``out[v][atom]`` and ``into[v][atom]``
    are the unique neighbours in each direction (folded).  Folding resolves
    clashes in discovery order, so graphs are reproducible.
    """

    def __init__(self, alphabet, out, into, generators):
        self.alphabet: tuple[Atom, ...] = tuple(alphabet)
        self.out: list[dict[Atom, int]] = out
        self.into: list[dict[Atom, int]] = into
        self.generators: tuple[FreeWord, ...] = tuple(generators)

    @property
    def vertex_count(self) -> int:
        return len(self.out)

    @staticmethod
    def fold(words: Sequence[FreeWord], alphabet: Sequence[Atom]) -> "StallingsGraph":
        alpha = tuple(alphabet)
        allowed = set(alpha)
        for w in words:
            for atom, _ in w.letters:
                if atom not in allowed:
                    raise ValueError(f"letter {atom} outside the graph alphabet")
        # adjacency with multi-edges during construction
        parent = [0]
        out_multi: list[dict[Atom, set[int]]] = [{}]
        in_multi: list[dict[Atom, set[int]]] = [{}]

        def new_vertex() -> int:
            parent.append(len(parent))
            out_multi.append({})
            in_multi.append({})
            return len(parent) - 1

        def find(v: int) -> int:
            root = v
            while parent[root] != root:
                root = parent[root]
            while parent[v] != root:
                parent[v], v = root, parent[v]
            return root

        def add_edge(a: int, atom: Atom, b: int) -> None:
            out_multi[a].setdefault(atom, set()).add(b)
            in_multi[b].setdefault(atom, set()).add(a)

        for w in words:
            if w.is_identity():
                continue
            steps = list(w.single_letters())
            current = 0
            for pos, (atom, step) in enumerate(steps):
                target = 0 if pos == len(steps) - 1 else new_vertex()
                if step == 1:
                    add_edge(current, atom, target)
                else:
                    add_edge(target, atom, current)
                current = target

        def merge(keep: int, drop: int) -> None:
            parent[drop] = keep
            for atom, targets in out_multi[drop].items():
                out_multi[keep].setdefault(atom, set()).update(targets)
            for atom, sources in in_multi[drop].items():
                in_multi[keep].setdefault(atom, set()).update(sources)
            out_multi[drop] = {}
            in_multi[drop] = {}

        # fold: merge targets of equal-labelled parallel edges until none
        # remain; a merge can only create new clashes at the merged vertex
        queue = list(range(len(parent)))
        while queue:
            v = find(queue.pop(0))
            while True:
                clash = None
                for store in (out_multi, in_multi):
                    for atom, targets in store[v].items():
                        reps = {find(t) for t in targets}
                        store[v][atom] = reps
                        if len(reps) > 1:
                            ordered = sorted(reps)
                            clash = (ordered[0], ordered[1])
                            break
                    if clash:
                        break
                if clash is None:
                    break
                merge(*clash)
                queue.append(clash[0])
                v = find(v)

        live = sorted({find(v) for v in range(len(parent))})
        base = find(0)
        order = [base] + [v for v in live if v != base]
        relabel = {v: i for i, v in enumerate(order)}
        out: list[dict[Atom, int]] = [{} for _ in order]
        into: list[dict[Atom, int]] = [{} for _ in order]
        for v in order:
            for atom, targets in out_multi[v].items():
                reps = {find(t) for t in targets}
                assert len(reps) <= 1
                if reps:
                    out[relabel[v]][atom] = relabel[reps.pop()]
        for v_idx, row in enumerate(out):
            for atom, t in row.items():
                into[t][atom] = v_idx
        graph = StallingsGraph(alpha, out, into, tuple(words))
        return graph

    def trace(self, w: FreeWord) -> Optional[int]:
        v = 0
        for atom, step in w.single_letters():
            nxt = self.out[v].get(atom) if step == 1 else self.into[v].get(atom)
            if nxt is None:
                return None
            v = nxt
        return v

    def contains(self, w: FreeWord) -> bool:
        return self.trace(w) == 0

    def index(self) -> Optional[int]:
        """Number of vertices when the graph is a complete cover, else None
        (infinite index)."""
        for row in self.out:
            for atom in self.alphabet:
                if atom not in row:
                    return None
        return self.vertex_count

    def same_subgroup(self, other: "StallingsGraph") -> bool:
        if set(self.alphabet) != set(other.alphabet):
            return False
        return all(other.contains(w) for w in self.generators) and all(
            self.contains(w) for w in other.generators
        )

    def to_json(self) -> dict:
        return {
            "vertices": self.vertex_count,
            "base": 0,
            "alphabet": [f"{k}{i}" for k, i in self.alphabet],
            "edges": [
                [v, f"{atom[0]}{atom[1]}", t]
                for v, row in enumerate(self.out)
                for atom, t in sorted(row.items())
            ],
        }


# ---------------------------------------------------------------------------
# kernel-of-theta generating sets
# ---------------------------------------------------------------------------


def plus_generators(g: int, n: int) -> list[FreeWord]:
    """The standard generators of the two-sided subgroup (ambient spelling)."""
    gens = [x_(i) * x_(g) for i in range(1, g)]
    gens += [x_(j) * x_(j) for j in range(1, g + 1)]
    gens += [y_(k) for k in range(1, n)]
    gens += [x_(g) * y_(k) * x_(g, -1) for k in range(1, n)]
    return gens


def gtilde(g: int, d: int) -> list[FreeWord]:
    """The transversal words (x_1 x_g)^{m_1} ... (x_{g-1} x_g)^{m_{g-1}}."""
    blocks = [x_(i) * x_(g) for i in range(1, g)]
    out = []
    for exps in itertools.product(range(d), repeat=g - 1):
        w = FreeWord.identity()
        for block, m in zip(blocks, exps):
            w = w * block**m
        out.append(w)
    return out


def _guard(g: int, d: int, cap: int) -> None:
    if d ** (g - 1) > cap:
        raise ScaleGuardError(f"d^(g-1) = {d ** (g - 1)} exceeds desk-scale cap {cap}")


def claimed_ker_theta_generators(g: int, n: int, d: int, cap: int = 4096) -> list[FreeWord]:
    """The conjugated generator list claimed to generate the kernel:
    w x_{i,g}^d w^-1, w x_{j,j} w^-1, w y_k w^-1, w z_k w^-1 and
    w x_{i1,i2,g}^2 w^-1 for transversal words w."""
    if n < 1:
        raise ValueError("needs n >= 1")
    _guard(g, d, cap)
    cores = [x_run(i, g) ** d for i in range(1, g)]
    cores += [x_run(j, j) for j in range(1, g + 1)]
    cores += [y_(k) for k in range(1, n)]
    cores += [x_(g) * y_(k) * x_(g, -1) for k in range(1, n)]
    cores += [
        x_run(i1, i2, g) ** 2 for i1 in range(1, g) for i2 in range(i1 + 1, g)
    ]
    out = []
    for w in gtilde(g, d):
        w_inv = w.inverse()
        for core in cores:
            out.append(w * core * w_inv)
    return out


def schreier_ker_theta_generators(g: int, n: int, d: int, cap: int = 4096) -> list[FreeWord]:
    """The full Schreier generating set of the kernel from the transversal."""
    if n < 1:
        raise ValueError("needs n >= 1")
    _guard(g, d, cap)
    table = {push_coefficients(w, g, d): w for w in gtilde(g, d)}
    if len(table) != d ** (g - 1):
        raise ValueError("transversal words do not hit distinct cosets")
    return list(
        schreier_generators(
            lambda w: push_coefficients(w, g, d),
            lambda key: table[key],
            plus_generators(g, n),
            FreeWord.identity(),
        )
    )


def fold_in_plus_basis(
    words: Sequence[FreeWord], g: int, n: int
) -> StallingsGraph:
    rewritten = [rewrite_two_sided(w, g) for w in words]
    return StallingsGraph.fold(rewritten, plus_basis_alphabet(g, n))


def ker_theta_normal_relators(g: int, n: int, d: int) -> list[FreeWord]:
    """The finite normal-generator list for the kernel: squares, boundary
    loops, (x_i x_j x_g)^2 and (x_i x_g)^d."""
    if n < 1:
        raise ValueError("needs n >= 1")
    rels = [x_run(j, j) for j in range(1, g + 1)]
    rels += [y_(k) for k in range(1, n)]
    rels += [x_(g) * y_(k) * x_(g, -1) for k in range(1, n)]
    rels += [x_run(i, j, g) ** 2 for i in range(1, g) for j in range(i + 1, g)]
    rels += [x_run(i, g) ** d for i in range(1, g)]
    return rels


def relators_for_enumeration(g: int, n: int, d: int) -> tuple[int, list[list[int]]]:
    """Prop-style relators rewritten over the plus basis as signed letters,
    ready for coset enumeration; returns (rank, relators)."""
    alphabet = plus_basis_alphabet(g, n)
    position = {atom: t + 1 for t, atom in enumerate(alphabet)}
    rels = []
    for w in ker_theta_normal_relators(g, n, d):
        basis = rewrite_two_sided(w, g)
        rels.append(
            [position[atom] * step for atom, step in basis.single_letters()]
        )
    return len(alphabet), rels


def coset_count_ker_theta(g: int, n: int, d: int, cap: int = 100_000) -> CosetTable:
    rank, rels = relators_for_enumeration(g, n, d)
    return todd_coxeter(rank, rels, cap)


def verify_ker_theta(g: int, n: int, d: int, cap: int = 4096) -> dict:
    """Certify the kernel generating claims at one parameter point.

    Checks that every claimed generator has zero coefficient vector, that
    the claimed subgroup equals the full Schreier-generator subgroup (folded
    graph equality), that both have index d^(g-1), and that coset
    enumeration of the normal relators gives the same index.
    """
    _guard(g, d, cap)
    claimed = claimed_ker_theta_generators(g, n, d, cap)
    zero = (0,) * g
    nonzero = [w for w in claimed if push_coefficients(w, g, d) != zero]
    schreier = schreier_ker_theta_generators(g, n, d, cap)
    graph_claimed = fold_in_plus_basis(claimed, g, n)
    graph_schreier = fold_in_plus_basis(schreier, g, n)
    expected_index = d ** (g - 1)
    cosets = coset_count_ker_theta(g, n, d).coset_count
    report = {
        "g": g,
        "n": n,
        "d": d,
        "claimed_count": len(claimed),
        "schreier_count": len(schreier),
        "claimed_all_in_kernel": not nonzero,
        "subgroups_equal": graph_claimed.same_subgroup(graph_schreier),
        "claimed_index": graph_claimed.index(),
        "schreier_index": graph_schreier.index(),
        "expected_index": expected_index,
        "coset_count": cosets,
    }
    report["ok"] = (
        report["claimed_all_in_kernel"]
        and report["subgroups_equal"]
        and report["claimed_index"] == expected_index
        and report["schreier_index"] == expected_index
        and cosets == expected_index
    )
    return report
