"""Highest coefficient Z^{m|n}(s|t) by recursion on the colors."""

from collections import OrderedDict
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from logging import Logger
from threading import RLock
from typing import Optional

from glmn_norm.core.kernels import ONE, Grading, Kernels
from glmn_norm.core.partitions import ColoredTuple, check_matched
from glmn_norm.core.scalars import EPS, Scalar, field_of, limit_at_zero
from glmn_norm.utils.exceptions import IndexOutOfRange

Colors = tuple[tuple[Scalar, ...], ...]

PEEL_FIRST = "first"
PEEL_LAST = "last"
STRATEGIES = (PEEL_FIRST, PEEL_LAST)


@dataclass(frozen=True)
class HCInstance:
    grading: Grading
    s: ColoredTuple
    t: ColoredTuple

    def __post_init__(self) -> None:
        self.s.check_grading(self.grading)
        self.t.check_grading(self.grading)
        check_matched(self.s, self.t)


@dataclass(frozen=True)
class MemoStats:
    hits: int
    misses: int
    entries: int
    evictions: int = 0


@dataclass(frozen=True)
class ResidueReport:
    color: int
    index: int
    lhs: Fraction
    rhs: Fraction

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs


def _split(values: tuple[Scalar, ...], position: int) -> tuple[Scalar, tuple[Scalar, ...]]:
    return values[position], values[:position] + values[position + 1 :]


class HighestCoefficient:
    """Memoized evaluator of the highest coefficient.

    ``strategy="first"`` peels color 1 (fixed element of s^1) and reduces m when
    that color is empty; ``strategy="last"`` peels color N (fixed element of t^N)
    and reduces the last index. gl(0|n) is evaluated as gl(n|0) with c -> -c.
    The two strategies never share memo entries, so they act as independent
    evaluations of the same function. Entries are keyed by scalar field as well
    as by value, and the least recently used entry is dropped once the table
    holds ``max_entries``.
    """

    def __init__(self, logger: Logger, max_entries: Optional[int] = None):
        if max_entries is not None and max_entries < 1:
            raise ValueError(f"max_entries must be positive, got {max_entries}")
        self.logger = logger
        self.max_entries = max_entries
        self._memo: OrderedDict[tuple, Scalar] = OrderedDict()
        self._lock = RLock()
        self._hits = 0
        self._misses = 0
        self._evictions = 0

    def z_eval(
        self, inst: HCInstance, strategy: str = PEEL_FIRST, pivot: int = 1
    ) -> Scalar:
        """Z^{m|n}(s|t); ``pivot`` is the 1-based fixed element of the peeled color."""
        if strategy not in STRATEGIES:
            raise ValueError(f"Unknown strategy '{strategy}', expected one of {STRATEGIES}")
        self.logger.debug(
            f"z_eval {inst.grading} shape={inst.s.shape} strategy={strategy} pivot={pivot}"
        )
        return self._z(inst.grading, inst.s.colors, inst.t.colors, strategy, pivot)

    def memo_stats(self) -> MemoStats:
        with self._lock:
            return MemoStats(self._hits, self._misses, len(self._memo), self._evictions)

    def clear(self) -> None:
        with self._lock:
            self._memo.clear()
            self._hits = 0
            self._misses = 0
            self._evictions = 0

    def _z(self, grading: Grading, s: Colors, t: Colors, strategy: str, pivot: int) -> Scalar:
        # equal values from different fields never share an entry
        field = field_of([v for color in s + t for v in color]).name
        key = (strategy, pivot, grading.m, grading.n, grading.c, field, s, t)
        with self._lock:
            if key in self._memo:
                self._hits += 1
                self._memo.move_to_end(key)
                return self._memo[key]
            self._misses += 1
        value = self._compute(grading, s, t, strategy, pivot)
        with self._lock:
            self._memo[key] = value
            if self.max_entries is not None and len(self._memo) > self.max_entries:
                self._memo.popitem(last=False)
                self._evictions += 1
        return value

    def _compute(
        self, grading: Grading, s: Colors, t: Colors, strategy: str, pivot: int
    ) -> Scalar:
        if not any(s):
            return ONE
        if grading.m == 0:
            return self._z(grading.flipped(), s, t, strategy, pivot)
        k = Kernels(grading)
        if grading.m == 1 and grading.n == 1:
            return k.prod(k.g, s[0], t[0])
        if strategy == PEEL_FIRST:
            if not s[0]:
                return self._z(grading.drop_first(), s[1:], t[1:], strategy, 1)
            return self._peel_first(grading, s, t, strategy, pivot)
        if not s[-1]:
            return self._z(grading.drop_last(), s[:-1], t[:-1], strategy, 1)
        return self._peel_last(grading, s, t, strategy, pivot)

    def _peel_first(
        self, grading: Grading, s: Colors, t: Colors, strategy: str, pivot: int
    ) -> Scalar:
        if not 1 <= pivot <= len(s[0]):
            raise IndexOutOfRange(f"pivot {pivot} outside 1..{len(s[0])} of color 1")
        k = Kernels(grading)
        N = grading.N
        fixed, s1_rest = _split(s[0], pivot - 1)

        head: Scalar = ONE
        if grading.m == 1:
            head = k.prod(k.g, s1_rest, (fixed,)) / k.prod(k.f, s1_rest, (fixed,))

        total: Scalar = Fraction(0)
        for rho in range(2, N + 2):
            if any(not t[sigma] for sigma in range(rho - 1)):
                break
            t_choices = product(*(range(len(t[sigma])) for sigma in range(rho - 1)))
            for t_pick in t_choices:
                s_choices = product(*(range(len(s[sigma])) for sigma in range(1, rho - 1)))
                for s_pick in s_choices:
                    t_one, t_rest = zip(*(_split(t[i], p) for i, p in enumerate(t_pick)))
                    s_one = [fixed]
                    s_rest = [s1_rest]
                    for i, p in enumerate(s_pick, start=1):
                        x, rest = _split(s[i], p)
                        s_one.append(x)
                        s_rest.append(rest)

                    term = head * k.gg(2)(t_one[0], fixed)
                    term = term * k.prod(k.gamma(1), (t_one[0],), t_rest[0])
                    term = term * k.prod(k.f, t_rest[0], (fixed,))
                    s_rho = s[rho - 1] if rho <= N else ()
                    term = term / k.prod(k.fg(rho), s_rho, (s_one[rho - 2],))
                    for nu in range(2, rho):
                        a = nu - 1
                        term = term * k.gg(nu + 1)(t_one[a], t_one[a - 1])
                        term = term * k.gg(nu)(s_one[a], s_one[a - 1])
                        term = term * k.prod(k.gamma(nu), (t_one[a],), t_rest[a])
                        term = term * k.prod(k.gamma(nu), s_rest[a], (s_one[a],))
                        term = term / (
                            k.prod(k.fg(nu), s[a], (s_one[a - 1],))
                            * k.prod(k.fg(nu), (t_one[a],), t[a - 1])
                        )
                    sub_s = tuple(s_rest) + s[rho - 1 :]
                    sub_t = tuple(t_rest) + t[rho - 1 :]
                    total = total + term * self._z(grading, sub_s, sub_t, strategy, 1)
        return total

    def _peel_last(
        self, grading: Grading, s: Colors, t: Colors, strategy: str, pivot: int
    ) -> Scalar:
        if not 1 <= pivot <= len(t[-1]):
            raise IndexOutOfRange(f"pivot {pivot} outside 1..{len(t[-1])} of the last color")
        k = Kernels(grading)
        N = grading.N
        fixed, tN_rest = _split(t[-1], pivot - 1)

        head: Scalar = ONE
        if grading.m == N:
            head = k.prod(k.g, (fixed,), tN_rest) / k.prod(k.f, tN_rest, (fixed,))

        total: Scalar = Fraction(0)
        for rho in range(N, 0, -1):
            # colors rho..N of s and rho..N-1 of t each give up one element
            if any(not s[sigma] for sigma in range(rho - 1, N)):
                break
            s_choices = product(*(range(len(s[sigma])) for sigma in range(rho - 1, N)))
            for s_pick in s_choices:
                t_choices = product(*(range(len(t[sigma])) for sigma in range(rho - 1, N - 1)))
                for t_pick in t_choices:
                    s_one, s_rest = zip(
                        *(_split(s[rho - 1 + i], p) for i, p in enumerate(s_pick))
                    )
                    t_one = []
                    t_rest = []
                    for i, p in enumerate(t_pick):
                        x, rest = _split(t[rho - 1 + i], p)
                        t_one.append(x)
                        t_rest.append(rest)
                    t_one.append(fixed)
                    t_rest.append(tN_rest)

                    # s_one[i], t_one[i] belong to color rho + i
                    term = head * k.gg(N + 1)(fixed, s_one[-1])
                    term = term * k.prod(k.gamma(N), s_rest[-1], (s_one[-1],))
                    term = term * k.prod(k.fg(N + 1), (fixed,), s_rest[-1])
                    t_before = t[rho - 2] if rho >= 2 else ()
                    term = term / k.prod(k.fg(rho), (t_one[0],), t_before)
                    for nu in range(rho, N):
                        a = nu - rho
                        term = term * k.gg(nu)(s_one[a + 1], s_one[a])
                        term = term * k.gg(nu)(t_one[a + 1], t_one[a])
                        term = term * k.prod(k.gamma(nu), s_rest[a], (s_one[a],))
                        term = term * k.prod(k.gamma(nu), (t_one[a],), t_rest[a])
                        term = term / (
                            k.prod(k.fg(nu + 1), s[nu], (s_one[a],))
                            * k.prod(k.fg(nu + 1), (t_one[a + 1],), t[nu - 1])
                        )
                    sub_s = s[: rho - 1] + tuple(s_rest)
                    sub_t = t[: rho - 1] + tuple(t_rest)
                    total = total + term * self._z(grading, sub_s, sub_t, strategy, 1)
        return total

    def z_residue_check(
        self, inst: HCInstance, mu: int, j: int, strategy: str = PEEL_FIRST
    ) -> ResidueReport:
        """Compare the residue of Z at s^mu_j = t^mu_j with its closed form."""
        grading = inst.grading
        grading.check_color(mu)
        t_j = inst.t.entry(mu, j)
        for _, _, value in inst.s.flat() + inst.t.flat():
            if not isinstance(value, (int, Fraction)):
                raise TypeError("residue checks need exact rational parameters")

        s_eps = inst.s.map(EPS.embed).replace(mu, j, EPS.shift(t_j, Fraction(1)))
        t_eps = inst.t.map(EPS.embed)
        regulated = self.z_eval(HCInstance(grading, s_eps, t_eps), strategy)
        lhs = limit_at_zero(regulated * EPS.epsilon)

        k = Kernels(grading)
        s_rest = inst.s.without(mu, j)
        t_rest = inst.t.without(mu, j)
        prefactor = -grading.graded_c(mu + 1)
        prefactor = prefactor * k.prod(k.gamma(mu), t_rest, (t_j,))
        prefactor = prefactor * k.prod(k.gamma(mu), (t_j,), s_rest)
        prefactor = prefactor / (
            k.prod(k.fg(mu + 1), inst.t.color(mu + 1), (t_j,))
            * k.prod(k.fg(mu), (t_j,), inst.s.color(mu - 1))
        )
        reduced = HCInstance(grading, inst.s.complement(mu, j), inst.t.complement(mu, j))
        rhs = limit_at_zero(prefactor * self.z_eval(reduced, strategy))

        report = ResidueReport(color=mu, index=j, lhs=lhs, rhs=rhs)
        self.logger.debug(
            f"residue ({mu},{j}) {grading}: lhs={lhs} rhs={rhs} passed={report.passed}"
        )
        return report

    def residue_check_all(
        self,
        inst: HCInstance,
        colors: Optional[list[int]] = None,
        strategy: str = PEEL_FIRST,
    ) -> list[ResidueReport]:
        return [
            self.z_residue_check(inst, mu, j, strategy)
            for mu, j in inst.t.positions()
            if colors is None or mu in colors
        ]
