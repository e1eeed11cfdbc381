"""Ground sets, implications and the closure they induce.

Attribute sets are plain ``int`` bit masks: bit ``i`` is the ``i``-th attribute
of the :class:`GroundSet` in declaration order.  Every ordering decision in the
package (sorting, tie-breaking, lexicographic witnesses) follows that order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .errors import ParseError

AttrSet = int


def bits(mask: AttrSet) -> Iterator[int]:
    """Indices of the set bits of ``mask``, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: AttrSet) -> int:
    return mask.bit_count()


def subsets(mask: AttrSet) -> Iterator[AttrSet]:
    """All submasks of ``mask`` (including 0 and ``mask``), in increasing order."""
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        sub = (sub - mask) & mask


def is_subset(a: AttrSet, b: AttrSet) -> bool:
    return a & ~b == 0


@dataclass(frozen=True)
class GroundSet:
    """Ordered, duplicate-free list of attribute names."""

    names: tuple[str, ...]
    index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if not names:
            raise ValueError("ground set must be non-empty")
        index = {}
        for i, name in enumerate(names):
            if not name or any(ch.isspace() for ch in name):
                raise ValueError(f"invalid attribute name {name!r}")
            if name in index:
                raise ValueError(f"duplicate attribute {name!r}")
            index[name] = i
        object.__setattr__(self, "index", index)

    @property
    def n(self) -> int:
        return len(self.names)

    @property
    def full(self) -> AttrSet:
        return (1 << len(self.names)) - 1

    def mask(self, names: Iterable[str] | str) -> AttrSet:
        """Bit mask of ``names``; a string is split on whitespace."""
        if isinstance(names, str):
            names = names.split()
        m = 0
        for name in names:
            try:
                m |= 1 << self.index[name]
            except KeyError:
                raise KeyError(f"unknown attribute {name!r}") from None
        return m

    def bit(self, name: str) -> AttrSet:
        return 1 << self.index[name]

    def names_of(self, mask: AttrSet) -> list[str]:
        return [self.names[i] for i in bits(mask)]

    def fmt(self, mask: AttrSet) -> str:
        """Compact rendering: names concatenated when all are one character."""
        names = self.names_of(mask)
        if all(len(n) == 1 for n in self.names):
            return "".join(names) or "∅"
        return " ".join(names) or "∅"


@dataclass(frozen=True, order=True)
class Implication:
    premise: AttrSet
    conclusion: AttrSet

    def __post_init__(self):
        if self.premise == 0:
            raise ValueError("implication premise must be non-empty")
        if self.conclusion == 0:
            raise ValueError("implication conclusion must be non-empty")
        if self.premise & self.conclusion:
            raise ValueError("premise and conclusion must be disjoint")

    @property
    def is_binary(self) -> bool:
        return popcount(self.premise) == 1

    def sort_key(self):
        return (tuple(bits(self.premise)), tuple(bits(self.conclusion)))


@dataclass(frozen=True)
class ImplicationSet:
    """An ordered list of implications over a fixed ground set.

    Instances are immutable; closures are memoised per instance.
    """

    ground: GroundSet
    implications: tuple[Implication, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "implications", tuple(self.implications))
        full = self.ground.full
        for imp in self.implications:
            if (imp.premise | imp.conclusion) & ~full:
                raise ValueError("implication outside the ground set")

    @classmethod
    def from_pairs(cls, ground: GroundSet, pairs: Iterable[tuple[AttrSet, AttrSet]]) -> ImplicationSet:
        """Build from ``(premise, conclusion)`` masks, dropping premise
        attributes from conclusions and skipping pairs left empty."""
        imps = []
        for prem, concl in pairs:
            concl &= ~prem
            if concl and prem:
                imps.append(Implication(prem, concl))
        return cls(ground, tuple(imps))

    @classmethod
    def parse(cls, text: str) -> ImplicationSet:
        return parse(text)

    def __len__(self) -> int:
        return len(self.implications)

    def __iter__(self) -> Iterator[Implication]:
        return iter(self.implications)

    def __str__(self) -> str:
        return to_text(self)

    def with_implications(self, imps: Iterable[Implication]) -> ImplicationSet:
        return ImplicationSet(self.ground, tuple(imps))

    def canonical(self) -> ImplicationSet:
        """Deduplicated copy sorted by premise, then conclusion."""
        uniq = sorted(set(self.implications), key=Implication.sort_key)
        return ImplicationSet(self.ground, tuple(uniq))

    def same_as(self, other: ImplicationSet) -> bool:
        """Equality as sets of implications over the same ground set."""
        return self.ground == other.ground and set(self.implications) == set(other.implications)

    @property
    def binary(self) -> ImplicationSet:
        return self.with_implications(i for i in self.implications if i.is_binary)

    @property
    def nonbinary(self) -> ImplicationSet:
        return self.with_implications(i for i in self.implications if not i.is_binary)

    @property
    def premises(self) -> list[AttrSet]:
        return [i.premise for i in self.implications]

    def lookup(self, premise: AttrSet) -> Implication | None:
        for imp in self.implications:
            if imp.premise == premise:
                return imp
        return None

    # closure machinery -------------------------------------------------

    @cached_property
    def _watch(self):
        """Per-attribute lists of implications whose premise contains it."""
        watch = [[] for _ in range(self.ground.n)]
        sizes = []
        concl = []
        for k, imp in enumerate(self.implications):
            for i in bits(imp.premise):
                watch[i].append(k)
            sizes.append(popcount(imp.premise))
            concl.append(imp.conclusion)
        return watch, sizes, concl

    @cached_property
    def _cache(self) -> dict:
        return {}

    def closure(self, x: AttrSet) -> AttrSet:
        cache = self._cache
        hit = cache.get(x)
        if hit is None:
            hit = cache[x] = lin_closure(self, x)
        return hit

    def closure_of(self, names: Iterable[str] | str) -> AttrSet:
        return self.closure(self.ground.mask(names))


def lin_closure(sigma: ImplicationSet, x: AttrSet) -> AttrSet:
    """Forward chaining with unsatisfied-premise counters, linear in s(Σ)."""
    watch, sizes, concl = sigma._watch
    missing = list(sizes)
    result = x
    queue = list(bits(x))
    while queue:
        a = queue.pop()
        for k in watch[a]:
            missing[k] -= 1
            if missing[k] == 0:
                new = concl[k] & ~result
                if new:
                    result |= new
                    queue.extend(bits(new))
    return result


def naive_closure(sigma: ImplicationSet, x: AttrSet) -> AttrSet:
    """Fire every applicable implication until nothing changes."""
    result = x
    changed = True
    while changed:
        changed = False
        for imp in sigma.implications:
            if imp.premise & ~result == 0 and imp.conclusion & ~result:
                result |= imp.conclusion
                changed = True
    return result


def closure(sigma: ImplicationSet, x: AttrSet) -> AttrSet:
    return sigma.closure(x)


def is_closed(sigma: ImplicationSet, x: AttrSet) -> bool:
    return sigma.closure(x) == x


def follows(sigma: ImplicationSet, imp: Implication) -> bool:
    return is_subset(imp.conclusion, sigma.closure(imp.premise))


def entails(sigma: ImplicationSet, other: ImplicationSet) -> bool:
    return all(follows(sigma, imp) for imp in other.implications)


def equivalent(sigma1: ImplicationSet, sigma2: ImplicationSet) -> bool:
    if sigma1.ground != sigma2.ground:
        raise ValueError("implication sets over different ground sets")
    return entails(sigma1, sigma2) and entails(sigma2, sigma1)


def unit_expansion(sigma: ImplicationSet) -> ImplicationSet:
    imps = []
    for imp in sigma.implications:
        for i in bits(imp.conclusion):
            imps.append(Implication(imp.premise, 1 << i))
    return sigma.with_implications(imps)


def aggregation(sigma: ImplicationSet) -> ImplicationSet:
    """Merge implications with equal premises; first-appearance order kept."""
    merged: dict[AttrSet, AttrSet] = {}
    for imp in sigma.implications:
        merged[imp.premise] = merged.get(imp.premise, 0) | imp.conclusion
    return sigma.with_implications(Implication(p, c) for p, c in merged.items())


@dataclass(frozen=True)
class SizeMetrics:
    """Counts and literal sizes; ``binary``/``nonbinary`` hold the parts."""

    count: int
    s: int
    sL: int
    sR: int
    binary: SizeMetrics | None = None
    nonbinary: SizeMetrics | None = None

    def as_dict(self) -> dict:
        d = {"count": self.count, "s": self.s, "sL": self.sL, "sR": self.sR}
        if self.binary is not None:
            d["binary"] = self.binary.as_dict()
            d["nonbinary"] = self.nonbinary.as_dict()
        return d


def _sizes(imps: Sequence[Implication]) -> SizeMetrics:
    left = sum(popcount(i.premise) for i in imps)
    right = sum(popcount(i.conclusion) for i in imps)
    return SizeMetrics(len(imps), left + right, left, right)


def metrics(sigma: ImplicationSet) -> SizeMetrics:
    total = _sizes(sigma.implications)
    return SizeMetrics(
        total.count, total.s, total.sL, total.sR,
        binary=_sizes(sigma.binary.implications),
        nonbinary=_sizes(sigma.nonbinary.implications),
    )


def is_nonredundant(sigma: ImplicationSet) -> bool:
    imps = sigma.implications
    for k, imp in enumerate(imps):
        rest = sigma.with_implications(imps[:k] + imps[k + 1:])
        if follows(rest, imp):
            return False
    return True


# text / JSON -----------------------------------------------------------

def parse(text: str) -> ImplicationSet:
    """Parse the line format (``a b -> c``) or its JSON mirror."""
    if text.lstrip().startswith("{"):
        return from_json(text)
    ground_names: list[str] | None = None
    seen: dict[str, None] = {}
    rows: list[tuple[int, list[str], list[str]]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("ground:"):
            if ground_names is not None or rows:
                raise ParseError(f"line {lineno}: header must come first and only once")
            ground_names = line[len("ground:"):].split()
            if len(set(ground_names)) != len(ground_names):
                raise ParseError(f"line {lineno}: duplicate attribute in header")
            continue
        parts = line.split("->")
        if len(parts) != 2:
            raise ParseError(f"line {lineno}: expected exactly one '->'")
        prem, concl = parts[0].split(), parts[1].split()
        if not prem or not concl:
            raise ParseError(f"line {lineno}: empty premise or conclusion")
        if set(prem) & set(concl):
            raise ParseError(f"line {lineno}: premise and conclusion overlap")
        for tok in prem + concl:
            if ground_names is not None and tok not in ground_names:
                raise ParseError(f"line {lineno}: attribute {tok!r} not in header")
            seen.setdefault(tok)
        rows.append((lineno, prem, concl))
    if ground_names is None:
        if not seen:
            raise ParseError("no implications and no 'ground:' header")
        ground_names = list(seen)
    try:
        ground = GroundSet(tuple(ground_names))
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    imps = [Implication(ground.mask(p), ground.mask(c)) for _, p, c in rows]
    return ImplicationSet(ground, tuple(imps))


def to_text(sigma: ImplicationSet, header: bool = True) -> str:
    g = sigma.ground
    lines = ["ground: " + " ".join(g.names)] if header else []
    for imp in sigma.implications:
        lines.append(" ".join(g.names_of(imp.premise)) + " -> " + " ".join(g.names_of(imp.conclusion)))
    return "\n".join(lines) + "\n"


def to_jsonable(sigma: ImplicationSet) -> dict:
    g = sigma.ground
    return {
        "ground": list(g.names),
        "implications": [
            {"premise": g.names_of(i.premise), "conclusion": g.names_of(i.conclusion)}
            for i in sigma.implications
        ],
    }


def to_json(sigma: ImplicationSet) -> str:
    return json.dumps(to_jsonable(sigma))


def from_json(text: str | dict) -> ImplicationSet:
    try:
        data = json.loads(text) if isinstance(text, str) else text
        ground = GroundSet(tuple(data["ground"]))
        imps = []
        for item in data.get("implications", []):
            prem, concl = item["premise"], item["conclusion"]
            if not prem or not concl or set(prem) & set(concl):
                raise ParseError(f"invalid implication {item!r}")
            imps.append(Implication(ground.mask(prem), ground.mask(concl)))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"malformed JSON implication set: {exc}") from None
    return ImplicationSet(ground, tuple(imps))


def format_implication(ground: GroundSet, imp: Implication) -> str:
    return f"{ground.fmt(imp.premise)}→{ground.fmt(imp.conclusion)}"


def format_set(sigma: ImplicationSet) -> str:
    """One-line rendering such as ``{y→u, yd→e}``."""
    return "{" + ", ".join(format_implication(sigma.ground, i) for i in sigma.implications) + "}"
