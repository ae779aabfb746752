"""Memoised branching engine shared by the three exact solvers.

A search problem supplies four hooks on hashable states:

``reduce(state)``
    Apply exact reductions; return ``(forced_items, state)`` or ``None`` when
    the state admits no feasible completion.
``terminal(state)``
    True when the only completion is the empty one.
``components(state)``
    Split into independent sub-states (optima add, counts multiply).
``branches(state)``
    A list of ``(items, sub_state)`` pairs whose solution sets partition
    those of ``state``.  Partitioning is what keeps counts exact.

The engine returns ``(optimum, count)`` per state and can replay the
optimal branches to list witnesses.
"""

from __future__ import annotations

import itertools
import time
from typing import Hashable, Iterable, Protocol, Sequence

from ..errors import CapabilityError

INFEASIBLE: tuple[None, int] = (None, 0)
_CLOCK_EVERY = 2048


class SearchProblem(Protocol):
    maximize: bool

    def reduce(self, state: Hashable) -> tuple[tuple, Hashable] | None: ...

    def terminal(self, state: Hashable) -> bool: ...

    def components(self, state: Hashable) -> list[Hashable]: ...

    def branches(self, state: Hashable) -> Iterable[tuple[tuple, Hashable]]: ...


def iter_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_components(mask: int, links: Sequence[int]) -> list[int]:
    """Connected pieces of ``mask`` under the neighbourhood masks ``links``."""
    out = []
    while mask:
        comp = frontier = mask & -mask
        while frontier:
            low = frontier & -frontier
            frontier ^= low
            new = links[low.bit_length() - 1] & mask & ~comp
            comp |= new
            frontier |= new
        out.append(comp)
        mask &= ~comp
    return out


class Engine:
    def __init__(self, problem: SearchProblem, max_seconds: float | None = None):
        self.problem = problem
        self.memo: dict[Hashable, tuple[int | None, int]] = {}
        self._deadline = None if max_seconds is None else time.monotonic() + max_seconds
        self._max_seconds = max_seconds
        self._ticks = 0

    def _better(self, a: int, b: int) -> bool:
        return a > b if self.problem.maximize else a < b

    def _tick(self) -> None:
        self._ticks += 1
        if self._deadline is not None and self._ticks % _CLOCK_EVERY == 0:
            if time.monotonic() > self._deadline:
                raise CapabilityError(
                    f"oracle time budget of {self._max_seconds:g} s exhausted"
                )

    def value(self, state: Hashable) -> tuple[int | None, int]:
        hit = self.memo.get(state)
        if hit is not None:
            return hit
        self._tick()
        p = self.problem
        reduced = p.reduce(state)
        if reduced is None:
            result = INFEASIBLE
        else:
            forced, core = reduced
            result = self._core_value(core)
            if result[0] is not None:
                result = (result[0] + len(forced), result[1])
        self.memo[state] = result
        return result

    def _core_value(self, core: Hashable) -> tuple[int | None, int]:
        p = self.problem
        if p.terminal(core):
            return (0, 1)
        parts = p.components(core)
        if len(parts) > 1:
            total, count = 0, 1
            for part in parts:
                opt, c = self.value(part)
                if opt is None:
                    return INFEASIBLE
                total += opt
                count *= c
            return (total, count)
        return self.best_of(p.branches(core))

    def best_of(self, alternatives: Iterable[tuple[tuple, Hashable]]) -> tuple[int | None, int]:
        best, count = None, 0
        for items, sub in alternatives:
            opt, c = self.value(sub)
            if opt is None:
                continue
            opt += len(items)
            if best is None or self._better(opt, best):
                best, count = opt, c
            elif opt == best:
                count += c
        return (best, count) if best is not None else INFEASIBLE

    # -- witness replay ------------------------------------------------

    def witnesses(self, state: Hashable, limit: int) -> list[frozenset]:
        """Up to ``limit`` optimal solutions of ``state``."""
        opt, _ = self.value(state)
        if opt is None or limit <= 0:
            return []
        forced, core = self.problem.reduce(state)
        return [sol | frozenset(forced) for sol in self._core_witnesses(core, limit)]

    def _core_witnesses(self, core: Hashable, limit: int) -> list[frozenset]:
        p = self.problem
        if p.terminal(core):
            return [frozenset()]
        parts = p.components(core)
        if len(parts) > 1:
            pools = [self.witnesses(part, limit) for part in parts]
            combos = itertools.islice(itertools.product(*pools), limit)
            return [frozenset().union(*combo) for combo in combos]
        return self.witnesses_of(p.branches(core), limit)

    def witnesses_of(self, alternatives: Iterable[tuple[tuple, Hashable]], limit: int) -> list[frozenset]:
        alternatives = list(alternatives)
        best, _ = self.best_of(alternatives)
        out: list[frozenset] = []
        if best is None:
            return out
        for items, sub in alternatives:
            opt, _ = self.value(sub)
            if opt is None or opt + len(items) != best:
                continue
            extra = frozenset(items)
            for sol in self.witnesses(sub, limit - len(out)):
                out.append(sol | extra)
            if len(out) >= limit:
                break
        return out
