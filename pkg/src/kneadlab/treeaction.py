"""Group words acting on the rooted tree: restriction, portraits, equality."""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable

from .automaton import Automaton, AutomatonError, Word

DEFAULT_CAP = 200_000


class CapExceeded(RuntimeError):
    """A search ran past its configured step budget."""

    def __init__(self, what: str, cap: int):
        super().__init__(f"{what}: step budget of {cap} exhausted")
        self.cap = cap


def default_cap() -> int:
    value = os.environ.get("KNEADLAB_CAP_STEPS")
    return int(value) if value else DEFAULT_CAP


def _as_word(a: Automaton, w) -> Word:
    return w if isinstance(w, tuple) else a.word(w)


def free_reduce(w: Word) -> Word:
    """Cancel adjacent equal letters (valid when every generator is an involution)."""
    out: list[str] = []
    for s in w:
        if out and out[-1] == s:
            out.pop()
        else:
            out.append(s)
    return tuple(out)


def apply(a: Automaton, w, s: str) -> str:
    """Image of the tree word ``s`` under the group word ``w``."""
    w = _as_word(a, w)
    path = list(a.tree_word(s))
    for state in reversed(w):
        cur = state
        for i, x in enumerate(path):
            if cur is None:
                break
            path[i] = a.perm[cur][x]
            cur = a.sections[cur][x]
    return "".join(a.alphabet[x] for x in path)


def restrict(a: Automaton, w, s: str | Iterable[str] = "") -> Word:
    """The string ``w|s`` with identity states omitted (no group reduction)."""
    w = _as_word(a, w)
    for x in a.tree_word(s):
        w, _ = a.restrict_letter(w, x)
    return w


def wreath_decompose(a: Automaton, w) -> tuple[tuple[Word, ...], tuple[int, ...]]:
    """``(children, root_perm)`` with ``children[i] = w|alphabet[i]``."""
    w = _as_word(a, w)
    children = tuple(a.restrict_letter(w, x)[0] for x in range(len(a.alphabet)))
    return children, a.root_permutation(w)


def is_trivial_word(a: Automaton, w: Word, cap: int | None = None, reduce: bool | None = None) -> bool:
    """Decide whether ``w`` acts as the identity on the whole tree.

    Explores the restrictions of ``w``; a restriction already under examination
    counts as trivial (greatest fixed point), which is exact for tree maps.
    """
    if reduce is None:
        reduce = a.involutive
    cap = cap or default_cap()
    n = len(a.alphabet)
    stack = [w]
    seen = set()
    while stack:
        u = stack.pop()
        if reduce:
            u = free_reduce(u)
        if not u or u in seen:
            continue
        seen.add(u)
        if len(seen) > cap:
            raise CapExceeded("triviality check", cap)
        for x in range(n):
            ux, y = a.restrict_letter(u, x)
            if y != x:
                return False
            stack.append(ux)
    return True


def _bisimilar(a: Automaton, u: Word, v: Word, cap: int) -> bool:
    n = len(a.alphabet)
    stack = [(u, v)]
    seen = set()
    while stack:
        pair = stack.pop()
        if pair[0] == pair[1] or pair in seen:
            continue
        seen.add(pair)
        if len(seen) > cap:
            raise CapExceeded("bisimulation", cap)
        u, v = pair
        for x in range(n):
            ux, yu = a.restrict_letter(u, x)
            vx, yv = a.restrict_letter(v, x)
            if yu != yv:
                return False
            stack.append((ux, vx))
    return True


def elements_equal(a: Automaton, w1, w2, cap: int | None = None) -> bool:
    """True iff ``w1`` and ``w2`` induce the same map on the tree."""
    if not a.invertible:
        raise AutomatonError("equality of elements needs an invertible automaton")
    w1, w2 = _as_word(a, w1), _as_word(a, w2)
    cap = cap or default_cap()
    if a.involutive:
        return is_trivial_word(a, w1 + tuple(reversed(w2)), cap)
    return _bisimilar(a, w1, w2, cap)


@dataclass(frozen=True)
class Portrait:
    """Action of an element truncated to the first ``depth`` levels of the tree."""

    depth: int
    root_perm: tuple[int, ...]
    children: tuple["Portrait", ...]

    def serialize(self) -> str:
        """Breadth-first list of vertex permutations, levels separated by ``/``."""
        levels = []
        layer = [self]
        while layer and layer[0].depth > 0:
            levels.append(",".join("".join(map(str, p.root_perm)) for p in layer))
            layer = [c for p in layer for c in p.children]
        return "/".join(levels)

    def is_identity(self) -> bool:
        ident = tuple(range(len(self.root_perm)))
        return self.root_perm == ident and all(c.is_identity() for c in self.children)


def portrait(a: Automaton, w, depth: int) -> Portrait:
    w = _as_word(a, w)
    if depth <= 0:
        return Portrait(0, tuple(range(len(a.alphabet))), ())
    children, perm = wreath_decompose(a, w)
    return Portrait(depth, perm, tuple(portrait(a, c, depth - 1) for c in children))


def in_level_stabilizer(a: Automaton, w, n: int) -> bool:
    """True iff ``w`` fixes every tree word of length at most ``n``."""
    if n < 0:
        raise ValueError("level must be non-negative")
    w = _as_word(a, w)
    ident = tuple(range(len(a.alphabet)))
    layer = {w}
    for _ in range(n):
        nxt = set()
        for u in layer:
            if a.root_permutation(u) != ident:
                return False
            for x in range(len(a.alphabet)):
                nxt.add(a.restrict_letter(u, x)[0])
        layer = {u for u in nxt if u}
    return True


class PortraitKeys:
    """Interned portrait hashes of group words, shared between element stores."""

    def __init__(self, a: Automaton):
        self.automaton = a
        self._reduce = a.involutive
        self._memo: dict[tuple[Word, int], int] = {}
        self._intern: dict[tuple, int] = {}
        self._ident = tuple(range(len(a.alphabet)))

    def key(self, w: Word, depth: int) -> int:
        if not w or depth == 0:
            return 0
        memo = self._memo
        k = memo.get((w, depth))
        if k is not None:
            return k
        a = self.automaton
        children = []
        images = []
        for x in range(len(a.alphabet)):
            c, y = a.restrict_letter(w, x)
            if self._reduce:
                c = free_reduce(c)
            images.append(y)
            children.append(self.key(c, depth - 1))
        node = (tuple(images), tuple(children))
        if node == (self._ident, (0,) * len(children)):
            k = 0
        else:
            k = self._intern.setdefault(node, len(self._intern) + 1)
        memo[w, depth] = k
        return k


class ElementStore:
    """Insert-if-absent store of group elements.

    Words are bucketed by a depth-``depth`` portrait hash; membership is always
    confirmed by the exact equality test.  When a bucket grows past
    ``split_at`` entries the hash depth doubles and the store is rebuilt.
    """

    def __init__(self, a: Automaton, depth: int = 8, keys: PortraitKeys | None = None,
                 cap: int | None = None, split_at: int = 6, max_depth: int = 64):
        self.automaton = a
        self.keys = keys or PortraitKeys(a)
        self.depth = depth
        self.cap = cap or default_cap()
        self.split_at = split_at
        self.max_depth = max_depth
        self.words: list[Word] = []
        self._buckets: dict[int, list[int]] = {}
        self.exact_checks = 0

    def __len__(self) -> int:
        return len(self.words)

    def _normal(self, w: Word) -> Word:
        return free_reduce(w) if self.keys._reduce else w

    def find(self, w: Word) -> int | None:
        w = self._normal(w)
        for i in self._buckets.get(self.keys.key(w, self.depth), ()):
            if self.words[i] == w:
                return i
            self.exact_checks += 1
            if elements_equal(self.automaton, self.words[i], w, self.cap):
                return i
        return None

    def add(self, w: Word) -> tuple[int, bool]:
        w = self._normal(w)
        i = self.find(w)
        if i is not None:
            return i, False
        i = len(self.words)
        self.words.append(w)
        bucket = self._buckets.setdefault(self.keys.key(w, self.depth), [])
        bucket.append(i)
        if len(bucket) > self.split_at and self.depth < self.max_depth:
            self.depth *= 2
            self._buckets = {}
            for j, u in enumerate(self.words):
                self._buckets.setdefault(self.keys.key(u, self.depth), []).append(j)
        return i, True
