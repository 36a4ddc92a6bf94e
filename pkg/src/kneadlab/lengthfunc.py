"""Length functions, transversals, productions and goodness certificates.

Everything here works over an involutive kneading automaton with a single
active state ``t``: group words are tuples of non-identity state names and
all weights are exact :class:`fractions.Fraction` values.
"""

from __future__ import annotations

import heapq
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .automaton import Automaton, AutomatonError, Word
from .treeaction import CapExceeded, ElementStore, PortraitKeys, default_cap, free_reduce

MODES = ("string", "reduced", "special")
_RATIONAL = re.compile(r"^\s*(-?\d+)(?:\s*/\s*(\d+))?\s*$")


class LengthBoundExceeded(RuntimeError):
    """The exact length of a word was not settled within the search budget."""

    def __init__(self, word: Word, lower: Fraction, upper: Fraction):
        super().__init__(f"length of {''.join(word) or '1'} unknown: above {lower}, at most {upper}")
        self.word = word
        self.lower = lower
        self.upper = upper


# -- weights ----------------------------------------------------------------


def parse_rational(text: str) -> Fraction:
    """Parse ``"3"`` or ``"7/2"``; decimals are rejected to keep arithmetic exact."""
    m = _RATIONAL.match(text)
    if not m:
        raise ValueError(f"not an exact rational: {text!r} (use integers or p/q)")
    num, den = m.groups()
    if den is not None and int(den) == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den else 1)


def parse_weights(text: str) -> dict[str, Fraction]:
    """Parse ``"a=7,b=7,c=6,t=3"`` into a weight map."""
    out: dict[str, Fraction] = {}
    for item in filter(None, (p.strip() for p in text.split(","))):
        name, sep, value = item.partition("=")
        if not sep or not name.strip():
            raise ValueError(f"expected name=value, got {item!r}")
        name = name.strip()
        if name in out:
            raise ValueError(f"weight for {name!r} given twice")
        out[name] = parse_rational(value)
    return out


@dataclass(frozen=True)
class WeightAssignment:
    """Positive rational weights on the non-identity states."""

    weights: Mapping[str, Fraction]

    def __post_init__(self):
        clean = {}
        for name, value in dict(self.weights).items():
            value = Fraction(value)
            if value <= 0:
                raise ValueError(f"weight of {name!r} must be positive, got {value}")
            clean[name] = value
        object.__setattr__(self, "weights", clean)

    @classmethod
    def uniform(cls, a: Automaton, value=1) -> "WeightAssignment":
        return cls({s: Fraction(value) for s in a.generators})

    def check(self, a: Automaton) -> None:
        missing = [s for s in a.generators if s not in self.weights]
        if missing:
            raise ValueError(f"no weight given for {', '.join(missing)}")
        extra = [s for s in self.weights if s not in a.generators]
        if extra:
            raise ValueError(f"weights given for unknown states {', '.join(extra)}")

    def __getitem__(self, s: str) -> Fraction:
        return self.weights[s]

    def word_weight(self, w: Iterable[str]) -> Fraction:
        try:
            return sum((self.weights[s] for s in w), Fraction(0))
        except KeyError as e:
            raise AutomatonError(f"no weight for letter {e.args[0]!r}") from None

    def to_dict(self) -> dict[str, str]:
        return {s: str(v) for s, v in self.weights.items()}


def word_weight(w: Iterable[str], weights: WeightAssignment | Mapping[str, Fraction]) -> Fraction:
    if not isinstance(weights, WeightAssignment):
        weights = WeightAssignment(weights)
    return weights.word_weight(w)


# -- weighted balls -----------------------------------------------------------


class Ball:
    """Group elements listed in order of increasing length, grown on demand.

    After ``grow(R)`` every element of length at most ``R`` is stored with its
    exact length and a geodesic word.
    """

    def __init__(self, a: Automaton, weights: WeightAssignment, generators: Sequence[str] | None = None,
                 cap: int | None = None, max_elements: int | None = None, keys: PortraitKeys | None = None):
        if not a.involutive:
            raise AutomatonError("weighted balls need every generator to be an involution")
        self.automaton = a
        self.weights = weights
        self.generators = tuple(generators) if generators is not None else a.generators
        self.store = ElementStore(a, keys=keys, cap=cap)
        self.max_elements = max_elements
        self.dist: list[Fraction] = []
        self._heap: list[tuple[Fraction, int, int, Word]] = [(Fraction(0), 0, 0, ())]
        self._count = 1
        self.radius = Fraction(-1)
        self.candidates = 0

    def __len__(self) -> int:
        return len(self.dist)

    @property
    def words(self) -> list[Word]:
        return self.store.words

    def grow(self, radius, limit: int | None = None) -> None:
        """Settle every element of length at most ``radius``.

        With ``limit`` the growth stops early, after finishing the current
        distance, once more than ``limit`` elements are stored; ``radius``
        then records how far the ball is complete.
        """
        radius = Fraction(radius)
        heap = self._heap
        store = self.store
        wt = self.weights.weights
        stop_at = None
        if limit is not None and len(self.dist) > limit:
            return
        while heap and heap[0][0] <= radius:
            if stop_at is not None and heap[0][0] > stop_at:
                self.radius = max(self.radius, stop_at)
                return
            d, _, _, w = heapq.heappop(heap)
            self.candidates += 1
            _, new = store.add(w)
            if not new:
                continue
            self.dist.append(d)
            if self.max_elements is not None and len(self.dist) > self.max_elements:
                raise CapExceeded("ball enumeration", self.max_elements)
            if limit is not None and stop_at is None and len(self.dist) > limit:
                stop_at = d
            last = w[-1] if w else None
            for s in self.generators:
                if s != last:
                    heapq.heappush(heap, (d + wt[s], len(w) + 1, self._count, w + (s,)))
                    self._count += 1
        self.radius = max(self.radius, radius)

    def distance(self, w: Word) -> Fraction | None:
        """Exact length of ``w`` if it lies in the grown ball, else None."""
        i = self.store.find(w)
        return None if i is None else self.dist[i]

    def shells(self) -> dict[Fraction, int]:
        out: dict[Fraction, int] = {}
        for d in self.dist:
            out[d] = out.get(d, 0) + 1
        return out


# -- transversal ----------------------------------------------------------------


@dataclass(frozen=True)
class Transversal:
    """Minimal-weight words for the elements of the subgroup generated by the inactive states."""

    generators: tuple[str, ...]
    order: tuple[str, ...]
    reps: tuple[Word, ...]
    table: tuple[dict, ...]
    rep_index: dict

    def __len__(self) -> int:
        return len(self.reps)

    def __contains__(self, w) -> bool:
        return tuple(w) in self.rep_index

    def element(self, block: Iterable[str]) -> int:
        i = 0
        for s in block:
            i = self.table[i][s]
        return i

    def rep(self, block: Iterable[str]) -> Word:
        return self.reps[self.element(block)]


def build_transversal(a: Automaton, weights: WeightAssignment, order: Sequence[str] | None = None,
                      active: str | None = None, cap: int = 100_000) -> Transversal:
    """Enumerate the subgroup generated by the inactive states.

    Representatives minimise weight, then length, then the lexicographic
    order induced by ``order`` (default: the automaton's state order).  That
    key is prefix-closed, so the first word settled for an element by a
    best-first search is its representative.
    """
    active = active or _active_state(a)
    gens = tuple(s for s in a.generators if s != active)
    order = tuple(order) if order is not None else gens
    if sorted(order) != sorted(gens):
        raise ValueError(f"tie-break order must list exactly {', '.join(gens)}")
    rank = {s: i for i, s in enumerate(order)}
    store = ElementStore(a)
    reps: list[Word] = []
    heap = [(Fraction(0), 0, (), ())]
    while heap:
        d, n, key, w = heapq.heappop(heap)
        _, new = store.add(w)
        if not new:
            continue
        reps.append(w)
        if len(reps) > cap:
            raise CapExceeded("transversal enumeration (subgroup not confirmed finite)", cap)
        for s in order:
            heapq.heappush(heap, (d + weights[s], n + 1, key + (rank[s],), w + (s,)))
    table = []
    for w in reps:
        row = {}
        for s in gens:
            j = store.find(w + (s,))
            assert j is not None
            row[s] = j
        table.append(row)
    return Transversal(gens, order, tuple(reps), tuple(table), {w: i for i, w in enumerate(reps)})


def _active_state(a: Automaton) -> str:
    if len(a.alphabet) != 2 or len(a.active_states) != 1:
        raise AutomatonError("the length calculus needs a binary automaton with one active state")
    return a.active_states[0]


# -- blocks and weak reduced form -----------------------------------------------


def blocks(w: Word, active: str) -> list[tuple[bool, int, int]]:
    """Maximal runs as ``(is_active_run, start, end)``."""
    out = []
    i = 0
    while i < len(w):
        kind = w[i] == active
        j = i + 1
        while j < len(w) and (w[j] == active) == kind:
            j += 1
        out.append((kind, i, j))
        i = j
    return out


def weak_reduce(w: Word, transversal: Transversal, active: str = "t") -> Word:
    """Replace each maximal inactive block by its representative; runs of the active letter stay."""
    out: list[str] = []
    for is_t, i, j in blocks(w, active):
        out.extend(w[i:j] if is_t else transversal.rep(w[i:j]))
    return tuple(out)


def is_weak_reduced(w: Word, transversal: Transversal, active: str = "t") -> bool:
    return all(is_t or w[i:j] in transversal for is_t, i, j in blocks(w, active))


def protected_spans(w: Word, active: str) -> Iterable[tuple[int, int]]:
    """All ``(i, j)`` with ``w[i:j]`` protected, leftmost then shortest first."""
    ts = [i for i, s in enumerate(w) if s == active]
    for x, i in enumerate(ts):
        for j in ts[x + 1 :]:
            if j - i > 1 and any(s != active for s in w[i + 1 : j]):
                yield i, j + 1


def maximal_protected(w: Word, active: str) -> Word | None:
    """The longest protected subword, or None when there is none."""
    ts = [i for i, s in enumerate(w) if s == active]
    if len(ts) < 2:
        return None
    v = w[ts[0] : ts[-1] + 1]
    return v if any(s != active for s in v) else None


def occurs(needle: Word, hay: Word) -> bool:
    n = len(needle)
    return any(hay[i : i + n] == needle for i in range(len(hay) - n + 1))


# -- productions ---------------------------------------------------------------


@dataclass(frozen=True)
class Production:
    left: Word
    right: Word
    trailing_t: bool
    mode: str

    def __getitem__(self, i: int) -> Word:
        return (self.left, self.right)[i]

    def __str__(self) -> str:
        show = lambda w: "".join(w) or "1"
        return f"({show(self.left)}, {show(self.right)})" + ("t" if self.trailing_t else "")


def string_production(a: Automaton, w: Word) -> tuple[Word, Word, bool]:
    """Replace letters by their restriction pairs and move active letters to the right."""
    left: list[str] = []
    right: list[str] = []
    swapped = False
    sections = a.sections
    for s in w:
        r0, r1 = sections[s]
        if swapped:
            r0, r1 = r1, r0
        if r0 is not None:
            left.append(r0)
        if r1 is not None:
            right.append(r1)
        if a.perm[s][0] != 0:
            swapped = not swapped
    return tuple(left), tuple(right), swapped


# -- the calculus ---------------------------------------------------------------


@dataclass(frozen=True)
class ChainStep:
    """``target`` is a protected subword of coordinate ``coordinate`` of the production of ``source``."""

    source: Word
    coordinate: int
    target: Word


@dataclass(frozen=True)
class GoodnessCertificate:
    word: Word
    chain: tuple[Word, ...]
    steps: tuple[ChainStep, ...]
    reducing: Word
    offset: int
    production: tuple[Word, Word]
    lengths: tuple[Fraction, Fraction]
    star: Fraction
    ratio: Fraction

    @property
    def depth(self) -> int:
        return len(self.steps)

    def to_dict(self) -> dict:
        show = lambda w: " ".join(w)
        return {
            "schema": 1,
            "word": show(self.word),
            "depth": self.depth,
            "chain": [show(u) for u in self.chain],
            "steps": [{"source": show(s.source), "coordinate": s.coordinate, "target": show(s.target)}
                      for s in self.steps],
            "reducing": show(self.reducing),
            "offset": self.offset,
            "production": [show(self.production[0]), show(self.production[1])],
            "lengths": [str(x) for x in self.lengths],
            "sigma": str(self.star),
            "ratio": str(self.ratio),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "GoodnessCertificate":
        word = lambda s: tuple(s.split())
        return cls(
            word(d["word"]),
            tuple(word(u) for u in d["chain"]),
            tuple(ChainStep(word(s["source"]), int(s["coordinate"]), word(s["target"])) for s in d["steps"]),
            word(d["reducing"]),
            int(d["offset"]),
            (word(d["production"][0]), word(d["production"][1])),
            (Fraction(d["lengths"][0]), Fraction(d["lengths"][1])),
            Fraction(d["sigma"]),
            Fraction(d["ratio"]),
        )


@dataclass(frozen=True)
class CertificateCheck:
    valid: bool
    failed_step: int | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.valid


@dataclass(frozen=True)
class AdmissibilityRow:
    word: Word
    production: Production
    lhs: Fraction
    rhs: Fraction

    @property
    def slack(self) -> Fraction:
        return self.lhs - self.rhs


class Calculus:
    """The rewriting calculus of one automaton under one weight assignment.

    Holds the transversal, a lazily grown ball used for exact lengths, and a
    cache of lengths already settled.
    """

    def __init__(self, a: Automaton, weights: WeightAssignment | Mapping[str, Fraction],
                 order: Sequence[str] | None = None, cap: int | None = None,
                 max_ball: int = 30_000):
        if not isinstance(weights, WeightAssignment):
            weights = WeightAssignment(weights)
        self.t = _active_state(a)
        if not a.involutive:
            raise AutomatonError("the length calculus needs every generator to be an involution")
        weights.check(a)
        self.automaton = a
        self.weights = weights
        self.cap = cap or default_cap()
        self.max_ball = max_ball
        self.transversal = build_transversal(a, weights, order, self.t)
        self._keys = PortraitKeys(a)
        self._ball: Ball | None = None
        self._lengths: dict[Word, Fraction] = {}
        self._production_cache: dict[tuple[Word, str], Production] = {}
        self.max_weight = max(weights.weights.values())
        self.C = self.min_length((self.t,))

    # -- words -------------------------------------------------------------

    def word(self, w) -> Word:
        return w if isinstance(w, tuple) else self.automaton.word(w)

    def weight(self, w) -> Fraction:
        return self.weights.word_weight(self.word(w))

    def r(self, w) -> Word:
        return weak_reduce(self.word(w), self.transversal, self.t)

    # -- lengths -----------------------------------------------------------

    def upper_bound(self, w) -> Fraction:
        """Weight of the word obtained by alternating r with cancellation of ``tt``."""
        w = self.word(w)
        best = self.weights.word_weight(w)
        while True:
            u = free_reduce(self.r(w))
            if u == w:
                return min(best, self.weights.word_weight(u))
            w = u
            best = min(best, self.weights.word_weight(w))

    def lower_bound(self, w) -> Fraction:
        """Words moving the first level must use the active letter."""
        w = self.word(w)
        return self.weights[self.t] if sum(s == self.t for s in w) % 2 else Fraction(0)

    @property
    def ball(self) -> Ball:
        if self._ball is None:
            self._ball = Ball(self.automaton, self.weights, cap=self.cap, keys=self._keys,
                              max_elements=4 * self.max_ball)
        return self._ball

    def min_length(self, w) -> Fraction:
        """Exact ``ell(w)``.

        Small lengths are read off a ball grown around the identity; larger
        ones are settled by scanning short suffixes ``x`` and looking up
        ``w x^-1`` in that ball.  Raises LengthBoundExceeded when the ball is
        too small to decide.
        """
        w = free_reduce(self.word(w))
        hit = self._lengths.get(w)
        if hit is not None:
            return hit
        ub = self.upper_bound(w)
        if self.lower_bound(w) < ub:
            ball = self.ball
            if ball.radius < ub:
                ball.grow(ub, limit=self.max_ball)
            if ball.radius >= ub:
                d = ball.distance(w)
                assert d is not None, "an element within the bound is missing from the ball"
            else:
                d = self._split_search(w, ub)
            ub = d
        self._lengths[w] = ub
        return ub

    def _split_search(self, w: Word, ub: Fraction) -> Fraction:
        # a geodesic of weight L <= 2*rho - W splits as p.q with p in the ball
        # and |q| < L - rho + W, so scanning suffixes up to that weight suffices
        ball = self.ball
        rho = ball.radius
        slack = self.max_weight - rho
        best = ub
        for x, dx in zip(ball.words, ball.dist):
            if dx >= best + slack:
                break
            d = ball.distance(w + tuple(reversed(x)))
            if d is not None and dx + d < best:
                best = dx + d
        limit = 2 * rho - self.max_weight
        if best <= limit:
            return best
        raise LengthBoundExceeded(w, max(limit, rho), best)

    def is_reduced_word(self, w) -> bool:
        w = self.word(w)
        return self.min_length(w) == self.weights.word_weight(w)

    # -- productions and |w|* ----------------------------------------------

    def production(self, w, mode: str = "reduced") -> Production:
        w = self.word(w)
        key = (w, mode)
        hit = self._production_cache.get(key)
        if hit is not None:
            return hit
        if mode == "string":
            left, right, odd = string_production(self.automaton, w)
        elif mode == "reduced":
            left, right, odd = string_production(self.automaton, w)
            left, right = self.r(left), self.r(right)
        elif mode == "special":
            left, right, odd = self._special(w)
        else:
            raise ValueError(f"unknown production mode {mode!r}; expected one of {MODES}")
        prod = Production(left, right, odd, mode)
        self._production_cache[key] = prod
        return prod

    def _special(self, w: Word) -> tuple[Word, Word, bool]:
        if not w or w[0] != self.t:
            raise ValueError("special production needs a word of the form t w1 t ... t wm")
        parts = blocks(w, self.t)
        for is_t, i, j in parts:
            if is_t and j - i > 1:
                raise ValueError("special production needs single active letters between blocks")
            if not is_t and w[i:j] not in self.transversal:
                raise ValueError(f"block {''.join(w[i:j])} is not a transversal word")
        left: list[str] = []
        right: list[str] = []
        swapped = False
        for is_t, i, j in parts:
            if is_t:
                swapped = not swapped
                continue
            p = self.production(w[i:j], "reduced")
            l, r = (p.right, p.left) if swapped else (p.left, p.right)
            left.extend(l)
            right.extend(r)
        return tuple(left), tuple(right), swapped

    def star_length(self, w) -> Fraction:
        """Block-collapsed weight: one ``C`` per run of active letters."""
        w = self.word(w)
        total = Fraction(0)
        for is_t, i, j in blocks(w, self.t):
            if is_t:
                total += self.C
            elif w[i:j] not in self.transversal:
                raise ValueError(f"{''.join(w)} is not in weak reduced form")
            else:
                total += self.weights.word_weight(w[i:j])
        return total

    # -- admissibility -----------------------------------------------------

    def admissibility_table(self) -> list[AdmissibilityRow]:
        rows = []
        wt = self.weights
        for rep in self.transversal.reps:
            p = self.production(rep, "reduced")
            rows.append(AdmissibilityRow(rep, p, wt[self.t] + wt.word_weight(rep),
                                         wt.word_weight(p.left) + wt.word_weight(p.right)))
        return rows

    def is_admissible(self) -> tuple[bool, Word | None]:
        for row in self.admissibility_table():
            if row.lhs < row.rhs:
                return False, row.word
        return True, None

    # -- reducing words ----------------------------------------------------

    def _reducing_shape(self, w: Word, i: int, j: int) -> bool:
        if not (0 <= i < j < len(w)) or w[i] != self.t or w[j] != self.t:
            return False
        return is_weak_reduced(w[i:j], self.transversal, self.t)

    def is_reducing(self, w, i: int, j: int, exact: bool = True) -> bool | None:
        """Whether ``w[i:j]`` is a reducing subword of ``w``.

        With ``exact=False`` only cheap bounds are used and None means
        "undecided by bounds".
        """
        w = self.word(w)
        if not self._reducing_shape(w, i, j):
            return False
        v = w[i:j]
        p = self.production(v, "reduced")
        star = self.star_length(v)
        if self.upper_bound(p.left) + self.upper_bound(p.right) < star:
            return True
        if self.lower_bound(p.left) + self.lower_bound(p.right) >= star:
            return False
        if not exact:
            return None
        return self.min_length(p.left) + self.min_length(p.right) < star

    def find_reducing(self, w, exact: bool = True) -> tuple[int, int] | None:
        """Shortest, then leftmost, reducing subword of ``w`` as a span ``(i, j)``."""
        w = self.word(w)
        ts = [i for i, s in enumerate(w) if s == self.t]
        spans = sorted(((i, j) for x, i in enumerate(ts) for j in ts[x + 1 :]), key=lambda p: (p[1] - p[0], p[0]))
        for i, j in spans:
            if self.is_reducing(w, i, j, exact=exact):
                return i, j
        return None

    # -- the order on protected words --------------------------------------

    def precedes(self, small, big) -> bool:
        """``small`` is a protected subword of a production coordinate of a protected subword of ``big``."""
        small, big = self.word(small), self.word(big)
        if maximal_protected(small, self.t) != small:
            return False
        for i, j in protected_spans(big, self.t):
            p = self.production(big[i:j], "reduced")
            if occurs(small, p.left) or occurs(small, p.right):
                return True
        return False

    def successors(self, u: Word) -> list[tuple[int, Word]]:
        """Maximal protected subwords of the two production coordinates of the maximal protected subword of ``u``.

        Every word below ``u`` is a protected subword of one of these.
        """
        core = maximal_protected(u, self.t)
        if core is None:
            return []
        p = self.production(core, "reduced")
        out = []
        for k in (0, 1):
            child = maximal_protected(p[k], self.t)
            if child is not None:
                out.append((k, child))
        return out

    # -- goodness ----------------------------------------------------------

    def search_goodness(self, u, max_depth: int = 3) -> GoodnessCertificate | None:
        """Shallowest certificate; within a depth, coordinate 0 first, then the leftmost reducing subword."""
        if max_depth < 0:
            raise ValueError("max_depth must be non-negative")
        u = self.word(u)
        level: list[tuple[tuple[Word, ...], tuple[ChainStep, ...]]] = [((u,), ())]
        for depth in range(max_depth + 1):
            for exact in (False, True):
                for chain, steps in level:
                    node = chain[-1]
                    hit = self.find_reducing(node, exact=exact)
                    if hit is not None:
                        return self._certificate(u, chain, steps, hit)
            if depth == max_depth:
                break
            nxt = []
            for chain, steps in level:
                src = maximal_protected(chain[-1], self.t)
                for k, child in self.successors(chain[-1]):
                    nxt.append((chain + (child,), steps + (ChainStep(src, k, child),)))
            level = nxt
        return None

    def _certificate(self, u, chain, steps, hit) -> GoodnessCertificate:
        i, j = hit
        v = chain[-1][i:j]
        p = self.production(v, "reduced")
        lengths = (self.min_length(p.left), self.min_length(p.right))
        star = self.star_length(v)
        return GoodnessCertificate(u, tuple(chain), tuple(steps), v, i, (p.left, p.right), lengths, star,
                                   (lengths[0] + lengths[1]) / star)

    def verify_goodness(self, cert: GoodnessCertificate) -> CertificateCheck:
        chain = cert.chain
        if not chain or chain[0] != cert.word:
            return CertificateCheck(False, 0, "chain must start at the certified word")
        if len(cert.steps) != len(chain) - 1:
            return CertificateCheck(False, 0, "one step is needed between consecutive chain words")
        for n, step in enumerate(cert.steps):
            if maximal_protected(step.source, self.t) != step.source or not occurs(step.source, chain[n]):
                return CertificateCheck(False, n, "source is not a protected subword of the chain word")
            if step.coordinate not in (0, 1):
                return CertificateCheck(False, n, "coordinate must be 0 or 1")
            if maximal_protected(step.target, self.t) != step.target or step.target != chain[n + 1]:
                return CertificateCheck(False, n, "target must be the next chain word and protected")
            if not occurs(step.target, self.production(step.source, "reduced")[step.coordinate]):
                return CertificateCheck(False, n, "target does not occur in the production coordinate")
        last = len(cert.steps)
        u_m, v, i = chain[-1], cert.reducing, cert.offset
        if u_m[i : i + len(v)] != v:
            return CertificateCheck(False, last, "reducing word is not at the stated offset")
        if not self.is_reducing(u_m, i, i + len(v)):
            return CertificateCheck(False, last, "subword is not reducing")
        p = self.production(v, "reduced")
        lengths = (self.min_length(p.left), self.min_length(p.right))
        star = self.star_length(v)
        if (p.left, p.right) != cert.production or lengths != cert.lengths or star != cert.star \
                or (lengths[0] + lengths[1]) / star != cert.ratio:
            return CertificateCheck(False, last, "recorded statistics do not match")
        return CertificateCheck(True)

    # -- epsilon covers ----------------------------------------------------

    def epsilon_cover(self, w, words: Iterable, check_reduced: bool = False) -> Fraction:
        """Largest fraction of ``|w|`` covered by occurrences of ``words``.

        Occurrences may share only a run of active letters ending one and
        starting the next.  The denominator is ``|w|``, which equals ``ell(w)``
        for the reduced words the notion is meant for.
        """
        w = self.word(w)
        total = self.weights.word_weight(w)
        if total == 0:
            return Fraction(0)
        if check_reduced and not self.is_reduced_word(w):
            raise ValueError(f"{''.join(w)} is not reduced")
        pats = {self.word(u) for u in words}
        occ = sorted({(i, i + len(p)) for p in pats if p for i in range(len(w) - len(p) + 1)
                      if w[i : i + len(p)] == p}, key=lambda x: (x[1], x[0]))
        wt = self.weights.word_weight
        best: list[Fraction] = []
        for k, (i, j) in enumerate(occ):
            value = wt(w[i:j])
            gain = value
            for m in range(k):
                pi, pj = occ[m]
                if pj <= i:
                    gain = max(gain, best[m] + value)
                elif pi < i and pj < j and all(s == self.t for s in w[i:pj]):
                    gain = max(gain, best[m] + value - wt(w[i:pj]))
            best.append(gain)
        return max(best, default=Fraction(0)) / total
