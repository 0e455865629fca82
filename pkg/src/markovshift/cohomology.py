"""Locally constant integer functions and the positive-cone decision.

A function with window k assigns an integer to every admissible k-word.
Its cohomology class is positive exactly when every periodic orbit has a
nonnegative total, which reduces to the absence of a negative-weight cycle
in the k-block graph; the detector returns a violating cyclic word as a
witness.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import DomainError, InadmissibleWordError, PreconditionError, VerificationError
from .shifts import (
    EventuallyPeriodicPoint,
    ZeroOneMatrix,
    admissible_words,
    is_cyclically_admissible,
    is_irreducible,
    lex_min_rotation,
    satisfies_condition_I,
)


@dataclass(frozen=True)
class LocallyConstantFn:
    """Integer function on the shift space depending on a fixed window."""

    window: int
    values: Mapping[tuple[int, ...], int]

    def __post_init__(self):
        if self.window < 1:
            raise DomainError("window must be at least 1")
        for w in self.values:
            if len(w) != self.window:
                raise DomainError(f"table key {w} does not have window length {self.window}")

    @staticmethod
    def over(a: ZeroOneMatrix, window: int, table: Mapping[Sequence[int], int]) -> "LocallyConstantFn":
        """Build a function and check its table covers exactly the admissible words."""
        normalized = {tuple(w): int(v) for w, v in table.items()}
        expected = set(admissible_words(a, window))
        given = set(normalized)
        if given != expected:
            missing = sorted(expected - given)
            extra = sorted(given - expected)
            detail = []
            if missing:
                detail.append(f"missing {len(missing)} admissible words, e.g. {missing[:3]}")
            if extra:
                detail.append(f"{len(extra)} keys are not admissible words, e.g. {extra[:3]}")
            raise DomainError("function table does not match the admissible words: " + "; ".join(detail))
        return LocallyConstantFn(window, normalized)

    @staticmethod
    def constant(a: ZeroOneMatrix, value: int, window: int = 1) -> "LocallyConstantFn":
        return LocallyConstantFn.over(a, window, {w: value for w in admissible_words(a, window)})

    def value(self, word: Sequence[int]) -> int:
        key = tuple(word)
        try:
            return self.values[key]
        except KeyError:
            raise DomainError(f"function is not defined on word {key}") from None


def orbit_sum(a: ZeroOneMatrix, fn: LocallyConstantFn, cycle: Sequence[int]) -> int:
    """Sum of the function over one period of the periodic point cycle^inf."""
    c = tuple(cycle)
    if not is_cyclically_admissible(a, c):
        raise InadmissibleWordError(f"cycle {c} is not cyclically admissible")
    n = len(c)
    k = fn.window
    total = 0
    for i in range(n):
        window = tuple(c[(i + t) % n] for t in range(k))
        total += fn.value(window)
    return total


def attracting_weight(
    a: ZeroOneMatrix, fn: LocallyConstantFn, x: EventuallyPeriodicPoint, n: int
) -> int:
    """Weight of winding n times around the periodic tail of x.

    Equals n times the orbit sum of the cycle; this is the value the
    induced cocycle takes on the attracting loop at x.
    """
    if n < 1:
        raise DomainError("winding count must be positive")
    return n * orbit_sum(a, fn, x.cycle.symbols)


def coboundary(a: ZeroOneMatrix, eta: LocallyConstantFn) -> LocallyConstantFn:
    """The function eta - eta o shift, one window wider than eta."""
    k = eta.window
    table = {}
    for w in admissible_words(a, k + 1):
        table[w] = eta.value(w[:k]) - eta.value(w[1:])
    return LocallyConstantFn(k + 1, table)


@dataclass(frozen=True)
class PositivityResult:
    positive: bool
    witness: tuple[int, ...] | None

    def __bool__(self) -> bool:
        return self.positive


def _strongly_connected_components(adj: list[list[int]]) -> list[list[int]]:
    """Tarjan's algorithm, iterative."""
    n = len(adj)
    index: list[int | None] = [None] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    components: list[list[int]] = []
    counter = 0
    for root in range(n):
        if index[root] is not None:
            continue
        work: list[tuple[int, int]] = [(root, 0)]
        while work:
            v, next_child = work[-1]
            if next_child == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            descended = False
            for pos in range(next_child, len(adj[v])):
                w = adj[v][pos]
                if index[w] is None:
                    work[-1] = (v, pos + 1)
                    work.append((w, 0))
                    descended = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if descended:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                component = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    component.append(w)
                    if w == v:
                        break
                components.append(component)
    return components


def _negative_cycle_in_component(
    component: list[int], adj: list[list[int]], weight: list[int]
) -> list[int] | None:
    """A negative-total cycle inside one strongly connected component.

    Bellman-Ford style relaxation from an all-zero potential; an update
    surviving |component| full rounds certifies a negative cycle, which is
    then read off the predecessor chain.
    """
    members = set(component)
    dist = {v: 0 for v in component}
    pred: dict[int, int] = {}
    edges = [(u, v) for u in component for v in adj[u] if v in members]
    last_updated = None
    for _ in range(len(component) + 1):
        last_updated = None
        for u, v in edges:
            candidate = dist[u] + weight[u]
            if candidate < dist[v]:
                dist[v] = candidate
                pred[v] = u
                last_updated = v
        if last_updated is None:
            return None
    try:
        node = last_updated
        for _ in range(len(component)):
            node = pred[node]
        cycle = [node]
        walk = pred[node]
        while walk != node:
            cycle.append(walk)
            walk = pred[walk]
    except KeyError:
        raise VerificationError("relaxation reported a negative cycle but left no trail") from None
    cycle.reverse()
    return cycle


def is_positive_class(a: ZeroOneMatrix, fn: LocallyConstantFn) -> PositivityResult:
    """Decide whether the class of the function lies in the positive cone.

    Positivity holds exactly when every finite invariant set, equivalently
    every periodic orbit, has nonnegative total.  Orbits are cycles of the
    k-block graph whose edges are weighted by the value at the source
    block, so the decision is a negative-cycle search per strongly
    connected component.  A negative verdict returns a witness cyclic word.
    """
    if not is_irreducible(a):
        raise PreconditionError("positivity decision requires an irreducible matrix")
    if not satisfies_condition_I(a):
        raise PreconditionError("positivity decision requires a shift space without isolated points")
    k = fn.window
    words = admissible_words(a, k)
    if set(fn.values) != set(words):
        raise DomainError("function table does not match the admissible words of the matrix")
    position = {w: i for i, w in enumerate(words)}
    if k == 1:
        adj = [
            [position[(t,)] for t in range(1, a.size + 1) if a.allows(w[0], t)]
            for w in words
        ]
    else:
        by_prefix: dict[tuple[int, ...], list[int]] = {}
        for i, w in enumerate(words):
            by_prefix.setdefault(w[:-1], []).append(i)
        adj = [by_prefix.get(w[1:], []) for w in words]
    weight = [fn.value(w) for w in words]
    for component in _strongly_connected_components(adj):
        cycle = _negative_cycle_in_component(component, adj, weight)
        if cycle is not None:
            witness = lex_min_rotation(tuple(words[v][0] for v in cycle))
            if orbit_sum(a, fn, witness) >= 0:
                raise VerificationError("negative-cycle witness failed its recomputation")
            return PositivityResult(False, witness)
    return PositivityResult(True, None)
