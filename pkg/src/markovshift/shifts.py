"""Transition matrices as symbolic dynamical systems.

Matrices act on the alphabet {1, ..., N}; a word is admissible when every
consecutive pair is allowed by the matrix.  This module covers structural
validation (zero rows, irreducibility, whether the shift space has
isolated points), periodic-orbit enumeration, the edge-shift conversion of
a nonnegative matrix, and higher-block recodings.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DomainError, InadmissibleWordError, PreconditionError, ShapeError
from .intmat import IntMatrix


@dataclass(frozen=True)
class NonNegMatrix:
    """Square matrix over the nonnegative integers, no zero row or column."""

    entries: tuple[tuple[int, ...], ...]

    MIN_SIZE = 1

    def __post_init__(self):
        n = len(self.entries)
        if n < self.MIN_SIZE:
            raise ShapeError(f"matrix must have size at least {self.MIN_SIZE}")
        for row in self.entries:
            if len(row) != n:
                raise ShapeError("transition matrix must be square")
        for i, row in enumerate(self.entries):
            for x in row:
                if not isinstance(x, int) or isinstance(x, bool):
                    raise ShapeError(f"entry {x!r} is not an integer")
                if x < 0:
                    raise DomainError(f"negative entry {x} in row {i + 1}")
        self._check_entries()
        for i, row in enumerate(self.entries):
            if all(x == 0 for x in row):
                raise DomainError(f"row {i + 1} is identically zero")
        for j in range(n):
            if all(row[j] == 0 for row in self.entries):
                raise DomainError(f"column {j + 1} is identically zero")

    def _check_entries(self):
        pass

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]]):
        return cls(tuple(tuple(int(x) for x in row) for row in rows))

    @property
    def size(self) -> int:
        return len(self.entries)

    def entry(self, s: int, t: int) -> int:
        """Entry for the symbol pair (s, t); symbols are 1-based."""
        return self.entries[s - 1][t - 1]

    def allows(self, s: int, t: int) -> bool:
        return self.entries[s - 1][t - 1] >= 1

    def as_int_matrix(self) -> IntMatrix:
        return IntMatrix(self.entries)

    @property
    def is_zero_one(self) -> bool:
        return all(x <= 1 for row in self.entries for x in row)


@dataclass(frozen=True)
class ZeroOneMatrix(NonNegMatrix):
    """Transition matrix with entries in {0, 1} and at least two states."""

    MIN_SIZE = 2

    def _check_entries(self):
        for row in self.entries:
            for x in row:
                if x > 1:
                    raise DomainError(f"entry {x} is not in {{0, 1}}")


def identity_minus(a: NonNegMatrix, transpose: bool = False) -> IntMatrix:
    """The integer matrix id - A (or id - A^t)."""
    m = a.as_int_matrix()
    if transpose:
        m = m.transpose()
    return IntMatrix.identity(a.size) - m


# ---------------------------------------------------------------------------
# words


@dataclass(frozen=True)
class Word:
    """Finite word over the alphabet {1, ..., alphabet_size}."""

    symbols: tuple[int, ...]
    alphabet_size: int

    def __post_init__(self):
        for s in self.symbols:
            if not 1 <= s <= self.alphabet_size:
                raise DomainError(f"symbol {s} outside alphabet 1..{self.alphabet_size}")

    def __len__(self) -> int:
        return len(self.symbols)

    @staticmethod
    def admissible(a: NonNegMatrix, symbols: Sequence[int]) -> "Word":
        w = Word(tuple(symbols), a.size)
        if not is_admissible(a, w.symbols):
            raise InadmissibleWordError(f"word {w.symbols} is not admissible")
        return w


def _symbols(w) -> tuple[int, ...]:
    if isinstance(w, Word):
        return w.symbols
    return tuple(w)


def is_admissible(a: NonNegMatrix, word) -> bool:
    ws = _symbols(word)
    if any(not 1 <= s <= a.size for s in ws):
        return False
    return all(a.allows(ws[i], ws[i + 1]) for i in range(len(ws) - 1))


def is_cyclically_admissible(a: NonNegMatrix, word) -> bool:
    ws = _symbols(word)
    if not ws or not is_admissible(a, ws):
        return False
    return a.allows(ws[-1], ws[0])


@dataclass(frozen=True)
class EventuallyPeriodicPoint:
    """Point of the shift space of the form (preperiod)(cycle)(cycle)..."""

    preperiod: Word
    cycle: Word

    def __post_init__(self):
        if len(self.cycle) == 0:
            raise DomainError("cycle must be nonempty")


def eventually_periodic_point(
    a: NonNegMatrix, preperiod: Sequence[int], cycle: Sequence[int]
) -> EventuallyPeriodicPoint:
    pre = tuple(preperiod)
    cyc = tuple(cycle)
    if not is_cyclically_admissible(a, cyc):
        raise InadmissibleWordError(f"cycle {cyc} is not cyclically admissible")
    if not is_admissible(a, pre + cyc):
        raise InadmissibleWordError("preperiod does not join the cycle admissibly")
    return EventuallyPeriodicPoint(Word(pre, a.size), Word(cyc, a.size))


def least_rotation_period(word) -> int:
    """Smallest p with rotate(word, p) == word; always divides the length."""
    ws = _symbols(word)
    n = len(ws)
    if n == 0:
        raise DomainError("empty word has no period")
    for p in range(1, n + 1):
        if n % p == 0 and ws[p:] + ws[:p] == ws:
            return p
    raise AssertionError("unreachable: full rotation always fixes the word")


def period_of(x: EventuallyPeriodicPoint) -> int:
    """Eventual period of the point: the least rotation period of its cycle."""
    return least_rotation_period(x.cycle)


def lex_min_rotation(word) -> tuple[int, ...]:
    ws = _symbols(word)
    return min(ws[i:] + ws[:i] for i in range(len(ws)))


# ---------------------------------------------------------------------------
# structural checks


def _adjacency(a: NonNegMatrix) -> list[list[int]]:
    return [[j for j, x in enumerate(row) if x >= 1] for row in a.entries]


def _reachable(adj: list[list[int]], start: int) -> set[int]:
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def is_irreducible(a: NonNegMatrix) -> bool:
    """True when the directed graph of the matrix is strongly connected."""
    n = a.size
    adj = _adjacency(a)
    if len(_reachable(adj, 0)) != n:
        return False
    radj: list[list[int]] = [[] for _ in range(n)]
    for v, outs in enumerate(adj):
        for w in outs:
            radj[w].append(v)
    return len(_reachable(radj, 0)) == n


def is_permutation_matrix(a: NonNegMatrix) -> bool:
    n = a.size
    for row in a.entries:
        if sum(row) != 1 or any(x > 1 for x in row):
            return False
    return all(sum(row[j] for row in a.entries) == 1 for j in range(n))


def satisfies_condition_I(a: NonNegMatrix) -> bool:
    """True when the shift space has no isolated points.

    For an irreducible matrix this holds exactly when the matrix is not a
    permutation matrix: a permutation gives a finite set of periodic
    points, anything else gives a perfect space.
    """
    if not is_irreducible(a):
        raise PreconditionError("condition (I) test requires an irreducible matrix")
    return not is_permutation_matrix(a)


@dataclass(frozen=True)
class Issue:
    code: str
    message: str


@dataclass(frozen=True)
class Diagnostics:
    size: int
    binary: bool
    issues: tuple[Issue, ...]

    @property
    def classifiable(self) -> bool:
        return not self.issues


def validate(matrix) -> Diagnostics:
    """Structural and dynamical diagnostics for a transition matrix.

    Accepts a matrix object or raw rows; problems are reported, never
    raised.  A matrix with no issues is safe for every decision procedure
    in this package.
    """
    if isinstance(matrix, NonNegMatrix):
        rows = [list(r) for r in matrix.entries]
    else:
        rows = [list(r) for r in matrix]
    issues: list[Issue] = []
    n = len(rows)
    if n == 0:
        return Diagnostics(0, True, (Issue("empty", "matrix has no rows"),))
    if any(len(r) != n for r in rows):
        return Diagnostics(n, True, (Issue("not_square", "matrix is not square"),))
    if any(not isinstance(x, int) or isinstance(x, bool) for r in rows for x in r):
        return Diagnostics(n, True, (Issue("bad_entry", "entries must be integers"),))
    if any(x < 0 for r in rows for x in r):
        issues.append(Issue("negative_entry", "entries must be nonnegative"))
        return Diagnostics(n, False, tuple(issues))
    binary = all(x <= 1 for r in rows for x in r)
    for i, row in enumerate(rows):
        if all(x == 0 for x in row):
            issues.append(Issue("zero_row", f"row {i + 1} is identically zero"))
    for j in range(n):
        if all(row[j] == 0 for row in rows):
            issues.append(Issue("zero_column", f"column {j + 1} is identically zero"))
    if binary and n < 2:
        issues.append(Issue("too_small", "a 0/1 transition matrix needs at least 2 states"))
    if issues:
        return Diagnostics(n, binary, tuple(issues))
    probe = NonNegMatrix.from_rows(rows)
    if not is_irreducible(probe):
        issues.append(Issue("reducible", "the transition graph is not strongly connected"))
    elif is_permutation_matrix(probe):
        issues.append(
            Issue(
                "condition_I",
                "permutation matrix: the shift space is finite, so every point is isolated",
            )
        )
    return Diagnostics(n, binary, tuple(issues))


# ---------------------------------------------------------------------------
# periodic orbits


def periodic_orbit_words(a: ZeroOneMatrix, max_period: int) -> list[tuple[int, ...]]:
    """One representative word per periodic orbit of least period <= max_period.

    Representatives are the lexicographically least rotations of primitive
    cyclically admissible words, listed by increasing length and then
    lexicographically.  The search walks admissible pre-necklaces, keeping
    the period of the prefix: extending by the anchor symbol keeps the
    period, a larger symbol resets it to the new length, a smaller one
    cannot lead to a minimal rotation.  A word is a primitive minimal
    rotation exactly when its period equals its length.
    """
    if max_period < 1:
        raise DomainError("period bound must be at least 1")
    n = a.size
    out: list[tuple[int, ...]] = []
    for first in range(1, n + 1):
        stack: list[tuple[tuple[int, ...], int]] = [((first,), 1)]
        while stack:
            w, p = stack.pop()
            q = len(w)
            if p == q and a.allows(w[-1], w[0]):
                out.append(w)
            if q == max_period:
                continue
            anchor = w[q % p]
            last = w[-1]
            for s in range(anchor, n + 1):
                if a.allows(last, s):
                    stack.append((w + (s,), p if s == anchor else q + 1))
    out.sort(key=lambda word: (len(word), word))
    return out


def count_period_points(a: ZeroOneMatrix, p: int) -> int:
    """Number of points fixed by the p-th shift power: trace of A^p."""
    if p < 1:
        raise DomainError("period must be at least 1")
    m = a.as_int_matrix()
    power = m
    for _ in range(p - 1):
        power = power @ m
    return power.trace()


# ---------------------------------------------------------------------------
# recodings


def edge_shift(a: NonNegMatrix) -> ZeroOneMatrix:
    """Recode a nonnegative matrix as the 0/1 matrix of its edge graph.

    Each unit of A(i, j) becomes one edge; edges are ordered by (source,
    target, copy index) so the output is reproducible.  Edge e may be
    followed by edge f exactly when e ends where f starts.  The resulting
    shift is conjugate to the original one, so every invariant computed
    downstream agrees.
    """
    edges: list[tuple[int, int]] = []
    for i in range(1, a.size + 1):
        for j in range(1, a.size + 1):
            edges.extend((i, j) for _ in range(a.entry(i, j)))
    if len(edges) < 2:
        raise DomainError("edge shift would have fewer than 2 states")
    rows = tuple(
        tuple(1 if e[1] == f[0] else 0 for f in edges) for e in edges
    )
    return ZeroOneMatrix(rows)


def admissible_words(a: ZeroOneMatrix, k: int) -> list[tuple[int, ...]]:
    """All admissible words of length k, in lexicographic order."""
    if k < 1:
        raise DomainError("word length must be at least 1")
    words: list[tuple[int, ...]] = [(s,) for s in range(1, a.size + 1)]
    for _ in range(k - 1):
        words = [w + (s,) for w in words for s in range(1, a.size + 1) if a.allows(w[-1], s)]
    return words


def higher_block(a: ZeroOneMatrix, k: int) -> ZeroOneMatrix:
    """Recode on overlapping k-blocks; k = 1 returns the matrix itself.

    States are the admissible k-words in lexicographic order; w can be
    followed by w' when they overlap in k - 1 symbols and the joined
    (k + 1)-word is admissible.
    """
    if k == 1:
        return a if isinstance(a, ZeroOneMatrix) else ZeroOneMatrix(a.entries)
    words = admissible_words(a, k)
    if len(words) < 2:
        raise DomainError("higher block recoding needs at least 2 admissible words")
    rows = tuple(
        tuple(
            1 if w[1:] == w2[:-1] and a.allows(w[-1], w2[-1]) else 0
            for w2 in words
        )
        for w in words
    )
    return ZeroOneMatrix(rows)
