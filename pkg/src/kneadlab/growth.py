"""Growth balls, bad-word counts and the counting bound for good-word coverage."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .automaton import Automaton, Word
from .lengthfunc import Ball, Calculus, WeightAssignment, blocks
from .treeaction import CapExceeded


@dataclass
class GrowthTable:
    """Ball sizes at integer radii.

    ``shell[n]`` counts elements with ``n - 1 < ell <= n`` and ``ball[n]``
    those with ``ell <= n``.
    """

    radius: int
    shell: list[int]
    ball: list[int]
    weights: dict[str, str]
    candidates: int
    exact_checks: int
    partial: bool = False

    def log2_ratio(self, n: int) -> float | None:
        return math.log2(self.ball[n]) / n if n > 0 else None

    def rows(self) -> list[tuple[int, int, int, float | None]]:
        return [(n, self.shell[n], self.ball[n], self.log2_ratio(n)) for n in range(len(self.ball))]

    def to_csv(self) -> str:
        lines = ["n,b(n),cumulative,log2_ratio"]
        for n, b, cum, ratio in self.rows():
            lines.append(f"{n},{b},{cum},{'' if ratio is None else f'{ratio:.12f}'}")
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {
            "schema": 1,
            "radius": self.radius,
            "weights": self.weights,
            "rows": [{"n": n, "b": b, "cumulative": c, "log2_ratio": r} for n, b, c, r in self.rows()],
            "candidates": self.candidates,
            "exact_checks": self.exact_checks,
            "partial": self.partial,
        }


def enumerate_ball(a: Automaton, weights: WeightAssignment, radius: int,
                   generators: Sequence[str] | None = None, max_elements: int | None = None,
                   cap: int | None = None) -> GrowthTable:
    """Count group elements by length up to ``radius``, lowest weight first."""
    if radius < 0:
        raise ValueError("radius must be non-negative")
    weights.check(a)
    ball = Ball(a, weights, generators=generators, cap=cap, max_elements=max_elements)
    partial = False
    try:
        ball.grow(radius)
    except CapExceeded:
        partial = True
    reach = radius if not partial else max(0, math.floor(max(ball.dist)) - 1)
    shell = [0] * (reach + 1)
    for d in ball.dist:
        n = math.ceil(d)
        if n <= reach:
            shell[n] += 1
    cumulative = []
    total = 0
    for b in shell:
        total += b
        cumulative.append(total)
    return GrowthTable(reach, shell, cumulative, weights.to_dict(), ball.candidates,
                       ball.store.exact_checks, partial)


# -- bad words ------------------------------------------------------------------


class _PatternAutomaton:
    """Aho-Corasick automaton over block indices; ``dead`` states end a forbidden pattern."""

    def __init__(self, patterns: Iterable[tuple[int, ...]], size: int):
        self.goto: list[dict[int, int]] = [{}]
        self.dead = [False]
        for p in patterns:
            q = 0
            for x in p:
                nxt = self.goto[q].get(x)
                if nxt is None:
                    nxt = len(self.goto)
                    self.goto[q][x] = nxt
                    self.goto.append({})
                    self.dead.append(False)
                q = nxt
            self.dead[q] = True
        fail = [0] * len(self.goto)
        delta = [[0] * size for _ in self.goto]
        queue = deque()
        for x in range(size):
            q = self.goto[0].get(x)
            if q is None:
                delta[0][x] = 0
            else:
                delta[0][x] = q
                queue.append(q)
        while queue:
            q = queue.popleft()
            self.dead[q] = self.dead[q] or self.dead[fail[q]]
            for x in range(size):
                nxt = self.goto[q].get(x)
                if nxt is None:
                    delta[q][x] = delta[fail[q]][x]
                else:
                    fail[nxt] = delta[fail[q]][x]
                    delta[q][x] = nxt
                    queue.append(nxt)
        self.delta = delta

    def __len__(self) -> int:
        return len(self.delta)


@dataclass
class BadWordReport:
    """Bad words of the form ``t w_1 t ... t w_m t`` with every ``w_i`` a non-empty transversal word."""

    counts: dict[int, int]
    survivors: dict[int, list[Word]]
    general_factor: int
    u_size: int
    alphabet: list[Word] = field(default_factory=list)

    @property
    def max_count(self) -> int:
        return max(self.counts.values(), default=0)

    def general_counts(self) -> dict[int, int]:
        return {m: c * self.general_factor for m, c in self.counts.items()}

    def stable_from(self) -> int | None:
        """Smallest m after which the count no longer changes within the scan."""
        ms = sorted(self.counts)
        if not ms:
            return None
        last = self.counts[ms[-1]]
        start = ms[-1]
        for m in reversed(ms):
            if self.counts[m] != last:
                break
            start = m
        return start

    def to_dict(self) -> dict:
        show = lambda w: " ".join(w)
        return {
            "schema": 1,
            "form": "t w1 t ... t wm t",
            "u_size": self.u_size,
            "counts": {str(m): c for m, c in sorted(self.counts.items())},
            "general_counts": {str(m): c for m, c in sorted(self.general_counts().items())},
            "general_factor": self.general_factor,
            "max_count": self.max_count,
            "stable_from": self.stable_from(),
            "survivors": {str(m): [show(w) for w in ws] for m, ws in sorted(self.survivors.items())},
        }


def _pattern_blocks(u: Word, t: str, index: dict[Word, int]) -> tuple[int, ...] | None:
    """Block indices of a U-word, or None if it can never occur in the normal form."""
    if not u or u[0] != t or u[-1] != t:
        raise ValueError(f"{''.join(u)}: words of U must begin and end with the active letter")
    out = []
    for is_t, i, j in blocks(u, t):
        if is_t:
            if j - i > 1:
                return None
            continue
        k = index.get(u[i:j])
        if k is None:
            return None
        out.append(k)
    return tuple(out)


def count_bad_words(calc: Calculus, words: Iterable, max_blocks: int, list_limit: int = 200) -> BadWordReport:
    """Count words ``t w_1 t ... t w_m t`` (``m <= max_blocks``) avoiding every word of ``words``.

    The ``w_i`` range over the non-empty transversal words.  Survivors are
    listed whenever there are at most ``list_limit`` of them for that ``m``.
    """
    t = calc.t
    alphabet = [w for w in calc.transversal.reps if w]
    index = {w: i for i, w in enumerate(alphabet)}
    u_words = {calc.word(u) for u in words}
    patterns = set()
    for u in u_words:
        p = _pattern_blocks(u, t, index)
        if p is not None:
            patterns.add(p)
    pa = _PatternAutomaton(sorted(patterns), len(alphabet))
    n_states = len(pa)
    # ways[r][q]: completions of length r from state q avoiding every pattern
    ways = [[1 if not pa.dead[q] else 0 for q in range(n_states)]]
    for _ in range(max_blocks):
        prev = ways[-1]
        ways.append([0 if pa.dead[q] else sum(prev[pa.delta[q][x]] for x in range(len(alphabet)))
                     for q in range(n_states)])
    counts = {m: ways[m][0] for m in range(1, max_blocks + 1)}
    survivors: dict[int, list[Word]] = {}
    for m, c in counts.items():
        if c <= list_limit:
            survivors[m] = [_spell(seq, alphabet, t) for seq in _walk(pa, ways, m, len(alphabet))]
    return BadWordReport(counts, survivors, len(calc.transversal) ** 2, len(u_words), alphabet)


def _walk(pa: _PatternAutomaton, ways, m: int, size: int):
    stack = [(0, ())]
    while stack:
        q, seq = stack.pop()
        if len(seq) == m:
            yield seq
            continue
        rest = m - len(seq) - 1
        for x in reversed(range(size)):
            nxt = pa.delta[q][x]
            if ways[rest][nxt]:
                stack.append((nxt, seq + (x,)))


def _spell(seq: tuple[int, ...], alphabet: list[Word], t: str) -> Word:
    out = [t]
    for x in seq:
        out.extend(alphabet[x])
        out.append(t)
    return tuple(out)


# -- the counting bound ---------------------------------------------------------


def _eps(eps) -> Fraction:
    eps = Fraction(eps) if not isinstance(eps, str) else Fraction(eps)
    if not 0 < eps < 1:
        raise ValueError("epsilon must lie strictly between 0 and 1")
    return eps


def eval_bad_bound(r: int, eps, M: int, u_size: int) -> int:
    """``C(r+1, floor(eps r)+1) * M^(1+floor(eps r)) * |U|^floor(eps r)`` as an exact integer."""
    if r < 0 or M < 0 or u_size < 0:
        raise ValueError("r, M and |U| must be non-negative")
    k = math.floor(_eps(eps) * r)
    return math.comb(r + 1, k + 1) * M ** (1 + k) * u_size ** k


def bound_chain(n: int, eps, M: int, u_size: int) -> list[Fraction]:
    """The successive upper bounds for the number of eps-bad words of length at most ``n``.

    Real exponents ``eps n`` are replaced by ``floor(eps n)``, which keeps every
    line an exact rational.  Returns ``[sum_r b(r), line2, line3, line4]``.
    """
    eps = _eps(eps)
    k = math.floor(eps * n)
    factor = M ** (1 + k) * u_size ** k
    binoms = [math.comb(r + 1, math.floor(eps * r) + 1) for r in range(n + 1)]
    return [
        Fraction(sum(eval_bad_bound(r, eps, M, u_size) for r in range(n + 1))),
        Fraction(factor * sum(binoms)),
        Fraction(factor * (n + 1) * math.comb(n + 1, k + 1)),
        Fraction(factor * (n + 1) * (n + 1) ** (k + 1), math.factorial(k + 1)),
    ]
