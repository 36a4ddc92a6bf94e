"""Mealy automata over a finite alphabet and kneading automata over {0, 1}.

An automaton is a finite set of states with a transition map
``(state, letter) -> (letter, state)``.  Each state acts on the rooted tree of
finite strings over the alphabet; a word of states acts letter by letter with
its *rightmost* state acting first.
"""

from __future__ import annotations

import itertools
import re
import string
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

Word = tuple[str, ...]
BINARY = ("0", "1")

MAX_PLANAR_STATES = 8


class AutomatonError(ValueError):
    """Raised for malformed automata or automata of the wrong kind."""


class KneadingParseError(ValueError):
    def __init__(self, text: str, position: int, reason: str):
        super().__init__(f"{reason} at position {position} in {text!r}")
        self.text = text
        self.position = position
        self.reason = reason


@dataclass(frozen=True)
class KneadingSequence:
    """The sequence ``u(v)^omega`` with pre-period ``u`` and period ``v``."""

    pre_period: str
    period: str

    def __post_init__(self):
        if not self.period:
            raise ValueError("the period of a kneading sequence must be non-empty")
        bad = set(self.pre_period + self.period) - set("01")
        if bad:
            raise ValueError(f"kneading sequences are binary; got {sorted(bad)}")

    @property
    def pre_periodic(self) -> bool:
        return bool(self.pre_period)

    @property
    def is_canonical(self) -> bool:
        # u and v ending in the same letter would give the last sticker vertex
        # two outgoing arrows on one letter; such a sequence has a shorter form
        return not self.pre_period or self.pre_period[-1] != self.period[-1]

    def __str__(self) -> str:
        return f"{self.pre_period}({self.period})"


_KS_SUFFIXES = ("^omega", "^ω", "^w", "ω")


def parse_kneading_sequence(text: str) -> KneadingSequence:
    """Parse ``u(v)`` (optionally followed by ``^ω``) into a KneadingSequence.

    >>> parse_kneading_sequence("11(0)")
    KneadingSequence(pre_period='11', period='0')
    """
    s = text.strip()
    offset = len(text) - len(text.lstrip())
    for suffix in _KS_SUFFIXES:
        if s.endswith(suffix):
            s = s[: -len(suffix)]
            break
    i = 0
    while i < len(s) and s[i] in "01":
        i += 1
    pre = s[:i]
    if i == len(s):
        raise KneadingParseError(text, offset + i, "expected '('")
    if s[i] != "(":
        raise KneadingParseError(text, offset + i, f"unexpected character {s[i]!r}")
    j = i + 1
    while j < len(s) and s[j] in "01":
        j += 1
    period = s[i + 1 : j]
    if j == len(s):
        raise KneadingParseError(text, offset + j, "unterminated period, expected ')'")
    if s[j] != ")":
        raise KneadingParseError(text, offset + j, f"unexpected character {s[j]!r}")
    if not period:
        raise KneadingParseError(text, offset + j, "empty period")
    if j + 1 != len(s):
        raise KneadingParseError(text, offset + j + 1, "trailing characters")
    return KneadingSequence(pre, period)


@dataclass(frozen=True)
class Automaton:
    """A finite automaton ``tau: A x X -> X x A``.

    ``transitions`` maps ``(state, letter)`` to ``(output letter, target)``.
    States and alphabet are ordered; the order is used for deterministic
    enumeration everywhere downstream.
    """

    states: tuple[str, ...]
    alphabet: tuple[str, ...]
    transitions: Mapping[tuple[str, str], tuple[str, str]]
    identity_state: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "transitions", dict(self.transitions))
        if len(set(self.states)) != len(self.states):
            raise AutomatonError("duplicate state names")
        if len(set(self.alphabet)) != len(self.alphabet) or not self.alphabet:
            raise AutomatonError("alphabet must be a non-empty set of distinct letters")
        for s in self.states:
            for x in self.alphabet:
                try:
                    y, target = self.transitions[s, x]
                except KeyError:
                    raise AutomatonError(f"transition for ({s}, {x}) is missing") from None
                if y not in self.alphabet or target not in self.states:
                    raise AutomatonError(f"transition ({s}, {x}) -> ({y}, {target}) leaves the automaton")
        extra = set(self.transitions) - {(s, x) for s in self.states for x in self.alphabet}
        if extra:
            raise AutomatonError(f"transitions for unknown state/letter pairs: {sorted(extra)}")
        if self.identity_state is not None:
            if self.identity_state not in self.states:
                raise AutomatonError(f"identity state {self.identity_state!r} is not a state")
            for x in self.alphabet:
                if self.transitions[self.identity_state, x] != (x, self.identity_state):
                    raise AutomatonError(f"{self.identity_state!r} does not act as the identity")

    # -- derived tables -------------------------------------------------

    @cached_property
    def letter_index(self) -> dict[str, int]:
        return {x: i for i, x in enumerate(self.alphabet)}

    @cached_property
    def perm(self) -> dict[str, tuple[int, ...]]:
        """``perm[s][i]`` is the index of ``tau_s(alphabet[i])``."""
        idx = self.letter_index
        return {s: tuple(idx[self.transitions[s, x][0]] for x in self.alphabet) for s in self.states}

    @cached_property
    def trivial_states(self) -> frozenset[str]:
        """States inducing the identity map on the tree (greatest fixed point)."""
        ident = tuple(range(len(self.alphabet)))
        cand = {s for s in self.states if self.perm[s] == ident}
        changed = True
        while changed:
            changed = False
            for s in list(cand):
                if any(self.transitions[s, x][1] not in cand for x in self.alphabet):
                    cand.discard(s)
                    changed = True
        return frozenset(cand)

    @cached_property
    def sections(self) -> dict[str, tuple[str | None, ...]]:
        """``sections[s][i]`` is the restriction of ``s`` at letter ``i``, None if trivial."""
        triv = self.trivial_states
        out = {}
        for s in self.states:
            row = []
            for x in self.alphabet:
                target = self.transitions[s, x][1]
                row.append(None if target in triv else target)
            out[s] = tuple(row)
        return out

    @cached_property
    def generators(self) -> tuple[str, ...]:
        """Non-trivial states, in state order."""
        return tuple(s for s in self.states if s not in self.trivial_states)

    @cached_property
    def active_states(self) -> tuple[str, ...]:
        ident = tuple(range(len(self.alphabet)))
        return tuple(s for s in self.states if self.perm[s] != ident)

    @property
    def invertible(self) -> bool:
        n = len(self.alphabet)
        return all(len(set(p)) == n for p in self.perm.values())

    @cached_property
    def involutive(self) -> bool:
        """True when every generator has order at most 2."""
        from .treeaction import is_trivial_word

        return all(is_trivial_word(self, (s, s), reduce=False) for s in self.generators)

    # -- words ----------------------------------------------------------

    @cached_property
    def _word_pattern(self):
        names = sorted(self.generators, key=len, reverse=True)
        return re.compile("|".join(re.escape(n) for n in names)) if names else None

    def word(self, w: str | Iterable[str]) -> Word:
        """Coerce ``w`` to a tuple of generator names.

        Strings are tokenised greedily against the state names, so ``"x0x1"``
        becomes ``("x0", "x1")``; ``""`` and ``"1"`` denote the empty word.
        """
        if isinstance(w, str):
            text = w.replace(" ", "")
            if text in ("", "1"):
                return ()
            pat = self._word_pattern
            out = []
            pos = 0
            while pos < len(text):
                m = pat.match(text, pos) if pat else None
                if not m:
                    raise AutomatonError(f"cannot read a state name at position {pos} of {w!r}")
                out.append(m.group())
                pos = m.end()
            return tuple(out)
        out = tuple(w)
        for s in out:
            if s not in self.states:
                raise AutomatonError(f"unknown state {s!r}")
            if s in self.trivial_states:
                raise AutomatonError(f"group words never contain the identity state {s!r}")
        return out

    def tree_word(self, s: str | Sequence[str]) -> tuple[int, ...]:
        idx = self.letter_index
        try:
            return tuple(idx[x] for x in s)
        except KeyError as e:
            raise AutomatonError(f"letter {e.args[0]!r} is not in the alphabet") from None

    def restrict_letter(self, w: Word, x: int) -> tuple[Word, int]:
        """Return ``(w|x, w(x))`` for a letter index ``x``; trivial states are dropped."""
        perm = self.perm
        sect = self.sections
        out = []
        for s in reversed(w):
            r = sect[s][x]
            if r is not None:
                out.append(r)
            x = perm[s][x]
        out.reverse()
        return tuple(out), x

    def root_permutation(self, w: Word) -> tuple[int, ...]:
        """Image of every letter index under ``w`` (rightmost state acts first)."""
        images = list(range(len(self.alphabet)))
        for s in reversed(w):
            p = self.perm[s]
            images = [p[y] for y in images]
        return tuple(images)

    def __repr__(self) -> str:
        return f"Automaton(states={self.states!r}, alphabet={self.alphabet!r})"


# -- kneading automata ----------------------------------------------------

ACTIVE = "t"
IDENTITY = "id"
_LETTER_NAMES = [c for c in string.ascii_lowercase if c != ACTIVE]


def _state_names(ks: KneadingSequence, count: int) -> list[str]:
    if ks.pre_period == "1" and set(ks.period) == {"0"}:
        return [f"x{i}" for i in range(count)]
    if count <= len(_LETTER_NAMES) and count <= 19:
        return _LETTER_NAMES[:count]
    return [f"s{i}" for i in range(1, count + 1)]


def automaton_from_kneading_sequence(ks: KneadingSequence | str) -> Automaton:
    """Rebuild the kneading automaton with the given kneading sequence.

    Non-active states are named in the order met while tracing arrows backwards
    from the active state ``t``.  For a periodic sequence the last symbol is the
    input letter of the arrow leaving ``t``.
    """
    if isinstance(ks, str):
        ks = parse_kneading_sequence(ks)
    if not ks.is_canonical:
        raise AutomatonError(f"{ks} is not in canonical form (pre-period and period end in the same letter)")
    labels = ks.pre_period + ks.period
    n = len(labels)
    p = len(ks.pre_period)
    names = _state_names(ks, n - 1)
    chain = [ACTIVE] + names  # chain[i] is s_i, with s_0 = t

    arrows: dict[tuple[str, str], str] = {}

    def arrow(src, letter, dst):
        if (src, letter) in arrows:
            raise AutomatonError(f"{ks}: state {src} would get two arrows on letter {letter}")
        arrows[src, letter] = dst

    for i in range(1, n):
        arrow(chain[i], labels[i - 1], chain[i - 1])
    if p:
        arrow(chain[p], labels[n - 1], chain[n - 1])
    else:
        arrow(ACTIVE, labels[n - 1], chain[n - 1])

    flip = {"0": "1", "1": "0"}
    tau = {}
    for s in names:
        for x in BINARY:
            tau[s, x] = (x, arrows.get((s, x), IDENTITY))
    for x in BINARY:
        tau[ACTIVE, x] = (flip[x], arrows.get((ACTIVE, x), IDENTITY))
        tau[IDENTITY, x] = (x, IDENTITY)
    return Automaton(tuple(names) + (ACTIVE, IDENTITY), BINARY, tau, IDENTITY)


def _in_arrows(a: Automaton) -> dict[str, list[tuple[str, str]]]:
    incoming: dict[str, list[tuple[str, str]]] = {s: [] for s in a.states}
    for s in a.states:
        for x in a.alphabet:
            incoming[a.transitions[s, x][1]].append((s, x))
    return incoming


def _trace(a: Automaton) -> KneadingSequence:
    t = a.active_states[0]
    incoming = _in_arrows(a)
    visited = [t]
    labels = []
    current = t
    while True:
        (src, letter), = incoming[current]
        labels.append(letter)
        if src in visited:
            p = visited.index(src)
            return KneadingSequence("".join(labels[:p]), "".join(labels[p:]))
        visited.append(src)
        current = src


def kneading_sequence_of(a: Automaton) -> KneadingSequence:
    """Read the kneading sequence by tracing arrows backwards from the active state.

    Labels ``(0,0)`` and ``(1,1)`` are written 0 and 1; the arrow leaving the
    active state in a periodic sequence is written by its input letter.
    """
    if not classify(a).kneading:
        raise AutomatonError("not a kneading automaton")
    return _trace(a)


def gamma_graph(a: Automaton) -> list[tuple[str, str, tuple[str, str]]]:
    """Edges ``(source, target, (input, output))`` of the Moore diagram with the identity removed."""
    triv = a.trivial_states
    edges = []
    for s in a.generators:
        for x in a.alphabet:
            y, target = a.transitions[s, x]
            if target not in triv:
                edges.append((s, target, (x, y)))
    return edges


def reduce_automaton(a: Automaton) -> Automaton:
    """Merge states inducing the same tree map (Moore partition refinement)."""
    block = {s: a.perm[s] for s in a.states}
    n_blocks = len(set(block.values()))
    while True:
        sig = {s: (block[s], tuple(block[a.transitions[s, x][1]] for x in a.alphabet)) for s in a.states}
        ids: dict = {}
        block = {s: ids.setdefault(sig[s], len(ids)) for s in a.states}
        if len(ids) == n_blocks:
            break
        n_blocks = len(ids)
    rep: dict[int, str] = {}
    for s in a.states:
        rep.setdefault(block[s], s)
    states = tuple(rep[b] for b in sorted(rep, key=lambda b: a.states.index(rep[b])))
    tau = {}
    for s in states:
        for x in a.alphabet:
            y, target = a.transitions[s, x]
            tau[s, x] = (y, rep[block[target]])
    identity = None
    triv = a.trivial_states
    for s in states:
        if s in triv:
            identity = s
            break
    return Automaton(states, a.alphabet, tau, identity)


def is_reduced(a: Automaton) -> bool:
    return len(reduce_automaton(a).states) == len(a.states)


def _is_proper_power(v: str) -> bool:
    n = len(v)
    return any(n % d == 0 and v == v[:d] * (n // d) for d in range(1, n))


@dataclass(frozen=True)
class Classification:
    invertible: bool
    reduced: bool
    kneading: bool
    pre_periodic: bool
    bad_isotropy: bool
    active_states: tuple[str, ...] = field(default_factory=tuple)
    kneading_sequence: str | None = None

    def to_dict(self) -> dict:
        return {
            "invertible": self.invertible,
            "reduced": self.reduced,
            "kneading": self.kneading,
            "pre_periodic": self.pre_periodic,
            "bad_isotropy": self.bad_isotropy,
            "active_states": list(self.active_states),
            "kneading_sequence": self.kneading_sequence,
        }


def _kneading_conditions(a: Automaton) -> bool:
    if len(a.alphabet) != 2 or len(a.active_states) != 1:
        return False
    triv = a.trivial_states
    incoming = _in_arrows(a)
    if any(len(incoming[s]) != 1 for s in a.generators):
        return False
    t = a.active_states[0]
    return sum(a.transitions[t, x][1] not in triv for x in a.alphabet) <= 1


def classify(a: Automaton) -> Classification:
    invertible = a.invertible
    reduced = is_reduced(a)
    kneading = invertible and reduced and _kneading_conditions(a)
    ks = None
    pre = bad = False
    if kneading:
        ks = _trace(a)
        pre = ks.pre_periodic
        bad = pre and _is_proper_power(ks.period)
    return Classification(invertible, reduced, kneading, pre, bad, a.active_states, str(ks) if ks else None)


def is_planar_ordering(a: Automaton, ordering: Sequence[str]) -> bool:
    """True if ``((a_1...a_m)^2)|x`` is a cyclic shift of ``a_1...a_m`` for every letter x."""
    base = tuple(ordering)
    doubled = base + base
    for x in range(len(a.alphabet)):
        r, _ = a.restrict_letter(doubled, x)
        if len(r) != len(base) or not any(r == base[k:] + base[:k] for k in range(len(base))):
            return False
    return True


def is_planar(a: Automaton) -> tuple[bool, Word | None]:
    """Brute-force search over orderings of the non-trivial states."""
    gens = a.generators
    if len(gens) > MAX_PLANAR_STATES:
        raise AutomatonError(f"planarity search is limited to {MAX_PLANAR_STATES} states")
    for ordering in itertools.permutations(gens):
        if is_planar_ordering(a, ordering):
            return True, ordering
    return False, None


# -- serialisation --------------------------------------------------------

_LINE = re.compile(r"^\s*(\S+)\s+(\S+)\s*->\s*(\S+)\s+(\S+)\s*$")


def parse_automaton_text(text: str) -> Automaton:
    """Read the ``state letter -> letter state`` format (``#`` starts a comment)."""
    states: list[str] = []
    alphabet: list[str] = []
    tau = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _LINE.match(line)
        if not m:
            raise AutomatonError(f"line {lineno}: expected 'state letter -> letter state'")
        s, x, y, target = m.groups()
        if (s, x) in tau:
            raise AutomatonError(f"line {lineno}: duplicate transition for ({s}, {x})")
        tau[s, x] = (y, target)
        for name in (s, target):
            if name not in states:
                states.append(name)
        for letter in (x, y):
            if letter not in alphabet:
                alphabet.append(letter)
    if not tau:
        raise AutomatonError("no transitions")
    if set(alphabet) == set(BINARY):
        alphabet = list(BINARY)
    a = Automaton(tuple(states), tuple(alphabet), tau)
    identity = next((s for s in a.states if s in a.trivial_states), None)
    if identity is None:
        return a
    return Automaton(a.states, a.alphabet, tau, identity)


def format_automaton_text(a: Automaton) -> str:
    lines = []
    for s in a.states:
        for x in a.alphabet:
            y, target = a.transitions[s, x]
            lines.append(f"{s} {x} -> {y} {target}")
    return "\n".join(lines) + "\n"


def automaton_to_dict(a: Automaton) -> dict:
    return {
        "schema": 1,
        "states": list(a.states),
        "alphabet": list(a.alphabet),
        "transitions": [
            {"state": s, "input": x, "output": a.transitions[s, x][0], "target": a.transitions[s, x][1]}
            for s in a.states
            for x in a.alphabet
        ],
        "identity_state": a.identity_state,
        "classification": classify(a).to_dict(),
    }
