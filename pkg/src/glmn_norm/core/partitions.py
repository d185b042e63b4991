"""Colored parameter tuples and the bipartitions summed over by the formulas."""

from dataclasses import dataclass
from itertools import combinations, product
from typing import Callable, Iterable, Iterator, Sequence

from glmn_norm.core.kernels import Grading
from glmn_norm.core.scalars import Scalar
from glmn_norm.utils.exceptions import (
    CardinalityMismatch,
    ColoringMismatch,
    DuplicateNode,
    EmptyColor,
    IndexOutOfRange,
)

Indices = tuple[int, ...]


@dataclass(frozen=True)
class ColoredTuple:
    """N ordered families of Bethe parameters, addressed by 1-based color."""

    colors: tuple[tuple[Scalar, ...], ...]

    @classmethod
    def of(cls, *colors: Iterable[Scalar]) -> "ColoredTuple":
        return cls(tuple(tuple(c) for c in colors))

    @property
    def N(self) -> int:
        return len(self.colors)

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.colors)

    @property
    def total(self) -> int:
        return sum(self.shape)

    def is_empty(self) -> bool:
        return self.total == 0

    def color(self, nu: int) -> tuple[Scalar, ...]:
        """Parameters of color nu; colors 0 and N+1 are empty by convention."""
        if nu == 0 or nu == self.N + 1:
            return ()
        if not 1 <= nu <= self.N:
            raise IndexOutOfRange(f"color {nu} outside 1..{self.N}")
        return self.colors[nu - 1]

    def entry(self, nu: int, j: int) -> Scalar:
        values = self.color(nu)
        if not 1 <= j <= len(values):
            raise IndexOutOfRange(f"index {j} outside 1..{len(values)} in color {nu}")
        return values[j - 1]

    def complement(self, nu: int, j: int) -> "ColoredTuple":
        self.entry(nu, j)
        values = self.colors[nu - 1]
        return self.with_color(nu, values[: j - 1] + values[j:])

    def without(self, nu: int, j: int) -> tuple[Scalar, ...]:
        """Color nu with its j-th entry removed."""
        return self.complement(nu, j).color(nu)

    def with_color(self, nu: int, values: Iterable[Scalar]) -> "ColoredTuple":
        if not 1 <= nu <= self.N:
            raise IndexOutOfRange(f"color {nu} outside 1..{self.N}")
        colors = list(self.colors)
        colors[nu - 1] = tuple(values)
        return ColoredTuple(tuple(colors))

    def replace(self, nu: int, j: int, value: Scalar) -> "ColoredTuple":
        self.entry(nu, j)
        values = list(self.colors[nu - 1])
        values[j - 1] = value
        return self.with_color(nu, values)

    def select(self, nu: int, indices: Iterable[int]) -> tuple[Scalar, ...]:
        """Entries of color nu at 0-based positions."""
        values = self.color(nu)
        return tuple(values[i] for i in indices)

    def map(self, fn: Callable[[Scalar], Scalar]) -> "ColoredTuple":
        return ColoredTuple(tuple(tuple(fn(v) for v in c) for c in self.colors))

    def drop_first_color(self) -> "ColoredTuple":
        return ColoredTuple(self.colors[1:])

    def drop_last_color(self) -> "ColoredTuple":
        return ColoredTuple(self.colors[:-1])

    def flat(self) -> list[tuple[int, int, Scalar]]:
        """(color, 1-based index, value) in color-major order."""
        return [
            (nu, j, value)
            for nu, values in enumerate(self.colors, start=1)
            for j, value in enumerate(values, start=1)
        ]

    def positions(self) -> list[tuple[int, int]]:
        return [(nu, j) for nu, j, _ in self.flat()]

    def validate_distinct(self) -> None:
        for nu, values in enumerate(self.colors, start=1):
            for a, b in combinations(range(len(values)), 2):
                if values[a] == values[b]:
                    raise DuplicateNode(
                        f"color {nu} has coinciding entries {a + 1} and {b + 1}: {values[a]}"
                    )

    def check_grading(self, grading: Grading) -> None:
        if self.N != grading.N:
            raise ColoringMismatch(
                f"{grading} has {grading.N} colors but the tuple has {self.N}"
            )


def check_matched(s: ColoredTuple, t: ColoredTuple) -> None:
    if s.N != t.N:
        raise ColoringMismatch(f"{s.N} colors against {t.N}")
    if s.shape != t.shape:
        raise CardinalityMismatch(f"cardinalities {s.shape} and {t.shape} differ")


@dataclass(frozen=True)
class Bipartition:
    """Per color, 0-based positions of the subsets I and II."""

    parts: tuple[tuple[Indices, Indices], ...]

    def first(self, nu: int) -> Indices:
        return self.parts[nu - 1][0]

    def second(self, nu: int) -> Indices:
        return self.parts[nu - 1][1]

    def split(self, values: ColoredTuple) -> tuple[ColoredTuple, ColoredTuple]:
        first = ColoredTuple(
            tuple(values.select(nu, self.first(nu)) for nu in range(1, values.N + 1))
        )
        second = ColoredTuple(
            tuple(values.select(nu, self.second(nu)) for nu in range(1, values.N + 1))
        )
        return first, second


def _color_splits(r: int) -> list[tuple[Indices, Indices, Indices, Indices]]:
    everything = range(r)
    splits = []
    for k in range(r + 1):
        for s_first in combinations(everything, k):
            s_second = tuple(i for i in everything if i not in s_first)
            for t_first in combinations(everything, k):
                t_second = tuple(i for i in everything if i not in t_first)
                splits.append((s_first, s_second, t_first, t_second))
    return splits


def enumerate_matched_bipartitions(
    rs: Sequence[int], rt: Sequence[int]
) -> Iterator[tuple[Bipartition, Bipartition]]:
    """All pairs of bipartitions with #s_I = #t_I in every color."""
    if tuple(rs) != tuple(rt):
        raise CardinalityMismatch(f"cardinalities {tuple(rs)} and {tuple(rt)} differ")
    per_color = [_color_splits(r) for r in rs]
    for choice in product(*per_color):
        yield (
            Bipartition(tuple((sf, ss) for sf, ss, _, _ in choice)),
            Bipartition(tuple((tf, ts) for _, _, tf, ts in choice)),
        )


def enumerate_singleton_partitions(
    colors: Iterable[int], values: ColoredTuple
) -> Iterator[Indices]:
    """One 0-based position per listed color, in lexicographic order."""
    colors = tuple(colors)
    ranges = []
    for nu in colors:
        size = len(values.color(nu))
        if size == 0:
            raise EmptyColor(f"color {nu} is empty")
        ranges.append(range(size))
    yield from product(*ranges)


def complement(values: ColoredTuple, nu: int, j: int) -> ColoredTuple:
    return values.complement(nu, j)
