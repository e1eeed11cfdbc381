"""Binary relations on the attributes of a ground set."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .core import GroundSet


@dataclass(frozen=True)
class PairRelation:
    ground: GroundSet
    pairs: frozenset[tuple[int, int]]

    @classmethod
    def from_names(cls, ground: GroundSet, pairs: Iterable[tuple[str, str]]) -> PairRelation:
        return cls(ground, frozenset((ground.index[a], ground.index[b]) for a, b in pairs))

    def __contains__(self, pair) -> bool:
        a, b = pair
        if isinstance(a, str):
            a, b = self.ground.index[a], self.ground.index[b]
        return (a, b) in self.pairs

    def __len__(self) -> int:
        return len(self.pairs)

    def __le__(self, other: PairRelation) -> bool:
        return self.pairs <= other.pairs

    def named_pairs(self) -> list[tuple[str, str]]:
        names = self.ground.names
        return [(names[a], names[b]) for a, b in sorted(self.pairs)]

    def dual(self) -> PairRelation:
        return PairRelation(self.ground, frozenset((b, a) for a, b in self.pairs))

    def _rows(self) -> list[int]:
        rows = [0] * self.ground.n
        for a, b in self.pairs:
            rows[a] |= 1 << b
        return rows

    def transitive_closure(self) -> PairRelation:
        """Warshall's algorithm on bit rows."""
        rows = self._rows()
        n = len(rows)
        for k in range(n):
            kbit = 1 << k
            rk = rows[k]
            for i in range(n):
                if rows[i] & kbit:
                    rows[i] |= rk
        pairs = frozenset((i, j) for i in range(n) for j in range(n) if rows[i] >> j & 1)
        return PairRelation(self.ground, pairs)

    def has_cycle(self) -> bool:
        return self.find_cycle() is not None

    def find_cycle(self) -> list[str] | None:
        """One cycle as a closed walk of names (first == last), or ``None``."""
        n = self.ground.n
        succ = [[] for _ in range(n)]
        for a, b in sorted(self.pairs):
            succ[a].append(b)
        state = [0] * n  # 0 new, 1 on stack, 2 done
        stack: list[int] = []

        def dfs(u):
            state[u] = 1
            stack.append(u)
            for v in succ[u]:
                if state[v] == 1:
                    return stack[stack.index(v):] + [v]
                if state[v] == 0:
                    found = dfs(v)
                    if found:
                        return found
            stack.pop()
            state[u] = 2
            return None

        for s in range(n):
            if state[s] == 0:
                cyc = dfs(s)
                if cyc:
                    return [self.ground.names[i] for i in cyc]
        return None
