"""Scripted re-checks of the finite computations behind the four worked examples.

Each case is a list of claims.  A claim's verdict comes only from library
operations; expected values are data.  Budget exhaustion makes a claim
"inconclusive", never "pass".
"""

from __future__ import annotations

import itertools
import json
import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .automaton import Word, automaton_from_kneading_sequence, is_planar, is_planar_ordering
from .growth import count_bad_words
from .lengthfunc import Calculus, LengthBoundExceeded, WeightAssignment
from .treeaction import CapExceeded, elements_equal, restrict, wreath_decompose

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"
CASES = ("10k", "110", "0011", "0110")
BAD_WORD_BLOCKS = 20


@dataclass
class Claim:
    description: str
    reference: str
    verdict: str
    witness: object = None

    def to_dict(self) -> dict:
        return {"claim": self.description, "reference": self.reference, "verdict": self.verdict,
                "witness": self.witness}


@dataclass
class CaseReport:
    case: str
    params: dict
    claims: list[Claim] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.verdict == PASS for c in self.claims)

    def check(self, description: str, reference: str, fn: Callable[[], tuple[bool, object]]) -> Claim:
        try:
            ok, witness = fn()
            verdict = PASS if ok else FAIL
        except (CapExceeded, LengthBoundExceeded) as e:
            verdict, witness = INCONCLUSIVE, str(e)
        claim = Claim(description, reference, verdict, witness)
        self.claims.append(claim)
        return claim

    def to_dict(self) -> dict:
        return {"schema": 1, "case": self.case, "params": self.params, "passed": self.passed,
                "claims": [c.to_dict() for c in self.claims]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, default=str)

    def to_text(self) -> str:
        width = max((len(c.description) for c in self.claims), default=10)
        lines = [f"case {self.case} {self.params or ''}".rstrip()]
        for c in self.claims:
            lines.append(f"  [{c.verdict:^12}] {c.description.ljust(width)}  {c.reference}")
        lines.append(f"  result: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines) + "\n"


def _s(w: Iterable[str]) -> str:
    return "".join(w) or "1"


def _fill(template: Sequence, boxes: Sequence[Word]) -> list[Word]:
    """Expand a template whose ``None`` entries are boxes, each filled from ``boxes``."""
    slots = sum(1 for part in template if part is None)
    out = []
    for choice in itertools.product(boxes, repeat=slots):
        it = iter(choice)
        word: list[str] = []
        for part in template:
            word.extend(next(it) if part is None else part)
        out.append(tuple(word))
    return out


def _boxed(template: str, names: dict[str, Word]) -> tuple:
    """Parse a family template such as ``"t # t b1 t"`` where ``#`` is a box."""
    parts = []
    for tok in template.split():
        parts.append(None if tok == "#" else names[tok] if tok in names else tuple(tok))
    return tuple(parts)


def _order(calc: Calculus, w) -> int:
    """Order of an element of the finite inactive subgroup."""
    T = calc.transversal
    g = T.element(w)
    k, cur = 1, g
    while cur != 0:
        cur = T.element(T.reps[cur] + tuple(w))
        k += 1
        if k > len(T) + 1:
            raise AssertionError("element order exceeds group order")
    return k


def _certify_families(report: CaseReport, calc: Calculus, families: dict[str, list[Word]],
                      depth_of: Callable[[str, Word], int], max_depth: int = 3) -> None:
    for name, words in families.items():
        def run(name=name, words=words):
            worst = {}
            for w in words:
                cert = calc.search_goodness(w, max_depth)
                if cert is None:
                    return False, {"no certificate": _s(w)}
                if cert.depth > depth_of(name, w):
                    return False, {"too deep": _s(w), "depth": cert.depth}
                if not calc.verify_goodness(cert):
                    return False, {"invalid certificate": _s(w)}
                worst[cert.depth] = worst.get(cert.depth, 0) + 1
            return True, {"instances": len(words), "depth_histogram": {str(k): v for k, v in sorted(worst.items())}}

        report.check(f"family {name} good at the stated depth", f"{name} good", run)


# -- 1(0^k) ---------------------------------------------------------------------


def weights_10k(k: int) -> dict[str, Fraction]:
    w = {f"x{i}": Fraction(k + 1 - i) for i in range(k)}
    w["t"] = Fraction((k + 2) ** 2)
    return w


def case_10k(k: int = 3) -> CaseReport:
    if k < 2:
        raise ValueError("the 1(0^k) case needs k >= 2")
    report = CaseReport("10k", {"k": k})
    a = automaton_from_kneading_sequence("1(" + "0" * k + ")")
    calc = Calculus(a, weights_10k(k))
    xs = [f"x{i}" for i in range(k)]
    full = tuple(xs)
    T = calc.transversal

    report.check(f"<x0..x{k - 1}> has order 2^{k} and exponent 2", "isomorphic to (Z/2Z)^k",
                 lambda: (len(T) == 2 ** k and all(_order(calc, w) <= 2 for w in T.reps),
                          {"order": len(T)}))
    report.check("inactive generators commute", "isomorphic to (Z/2Z)^k",
                 lambda: (all(elements_equal(a, (x, y), (y, x)) for x in xs for y in xs), None))

    def rows():
        got = {}
        for i, x in enumerate(xs):
            children, perm = wreath_decompose(a, (x,))
            got[x] = [_s(c) for c in children] + [list(perm)]
        want = {x: [xs[i - 1] if i else xs[k - 1], "1" if i else "t", [0, 1]] for i, x in enumerate(xs)}
        return got == want, got

    report.check("x0 = (x_{k-1}, t) and x_i = (x_{i-1}, 1)", "x_i = (x_{i-1}, 1)", rows)
    report.check("transversal is the increasing products of distinct x_i", "T = {x_i1...x_ia}",
                 lambda: (sorted(T.reps) == sorted(tuple(c) for n in range(k + 1) for c in itertools.combinations(xs, n)),
                          [_s(w) for w in T.reps]))

    def admissible():
        table = calc.admissibility_table()
        tight = [_s(r.word) for r in table if r.slack == 0]
        ok = all(r.slack >= 0 for r in table) and tight == [_s(full)]
        return ok, {"tight_rows": tight}

    report.check("admissible, strict except at x0...x_{k-1}", "|t| + |w| > |w0| + |w1|", admissible)

    def p0():
        bad = [_s(w) for w in T.reps if w != full and calc.search_goodness(("t",) + w + ("t",), 0) is None]
        return not bad, {"not good": bad}

    report.check("twt good at depth 0 for w in T minus the full product", "tw is reducing", p0)
    u_words = [("t",) + w + ("t",) for w in T.reps if w != full]

    def bad_words():
        rep = count_bad_words(calc, u_words, BAD_WORD_BLOCKS)
        ok = all(c == 1 for c in rep.counts.values())
        ok = ok and all(ws == [("t",) + (full + ("t",)) * m] for m, ws in rep.survivors.items())
        return ok, {"counts": rep.counts}

    report.check(f"exactly one bad word t w1 t ... t wm t per m <= {BAD_WORD_BLOCKS}",
                 "exactly one U-bad word of this form", bad_words)
    return report


# -- 11(0) ----------------------------------------------------------------------

TABLE_110 = {
    "1": ("(1, 1)", 1, 0), "a": ("(1, t)", 2, 1), "ab": ("(b, ta)", 3, 3), "aba": ("(b, tat)", 4, 4),
    "abab": ("(1, tata)", 5, 4), "b": ("(b, a)", 2, 2), "ba": ("(b, at)", 3, 3), "bab": ("(1, ata)", 4, 3),
}
DEPTHS_110 = {"P0": 0, "P1": 0, "P2": 1, "P3": 0, "P4": 1, "P5": 1, "P6": 2, "P7": 2}


def _alternating(first: str, second: str, n: int) -> Word:
    return tuple((first + second) * n)[:n]


def families_110() -> tuple[dict[str, list[Word]], dict[str, Word]]:
    names = {f"a{n}": _alternating("a", "b", n) for n in range(1, 5)}
    names.update({f"b{n}": _alternating("b", "a", n) for n in range(1, 4)})
    boxes = [names["b1"], names["b2"], names["a2"]]
    templates = {
        "P1": "t # t b1 t # t b1 t # t",
        "P2": "t b2 t # t b1 t # t b2 t",
        "P3": "t a2 t # t b1 t # t b2 t",
        "P4": "t b2 t # t b1 t # t a2 t",
        "P5": "t a2 t # t b1 t # t a2 t",
        "P6": "t b2 t # t b2 t # t b2 t # t a2 t # t a2 t # t a2 t",
        "P7": "t a2 t # t b2 t",
    }
    fams = {"P0": [("t",) + names[n] + ("t",) for n in ("a1", "a4", "b3", "a3")]}
    for key, template in templates.items():
        fams[key] = _fill(_boxed(template, names), boxes)
    return fams, names


def case_110() -> CaseReport:
    report = CaseReport("110", {})
    a = automaton_from_kneading_sequence("11(0)")
    calc = Calculus(a, WeightAssignment.uniform(a))
    T = calc.transversal
    fams, names = families_110()

    report.check("<a,b> has order 8 and is dihedral", "isomorphic to D4",
                 lambda: (len(T) == 8 and _order(calc, "a") == 2 and _order(calc, "b") == 2
                          and _order(calc, "ab") == 4, {"order": len(T), "order_ab": _order(calc, "ab")}))
    report.check("a = (1, t) and b = (b, a)", "b = (b, a)",
                 lambda: ([_s(c) for c in wreath_decompose(a, "a")[0]] == ["1", "t"]
                          and [_s(c) for c in wreath_decompose(a, "b")[0]] == ["b", "a"], None))
    report.check("abta|1 = bt", "abta|1 = bt", lambda: (_s(restrict(a, "abta", "1")) == "bt", _s(restrict(a, "abta", "1"))))
    report.check("string production of tabtbabt is (tabb, bata)t", "(tabb, bata)t",
                 lambda: (str(calc.production("tabtbabt", "string")) == "(tabb, bata)t",
                          str(calc.production("tabtbabt", "string"))))
    report.check("transversal is {1, a, ab, aba, abab, b, ba, bab}", "T = {1, a, ab, ...}",
                 lambda: (sorted(_s(w) for w in T.reps) == sorted(TABLE_110), [_s(w) for w in T.reps]))

    def table():
        got = {_s(r.word): (str(r.production), int(r.lhs), int(r.rhs)) for r in calc.admissibility_table()}
        return got == TABLE_110, got

    report.check("production / weight table reproduced", "table of |t|+|w| and |w0|+|w1|", table)
    report.check("unit weights are admissible", "admissible", lambda: calc.is_admissible())

    forms = [
        ("P0", "production of t a3 t is (tat, b)", lambda w: str(calc.production(w)) == "(tat, b)", ["t", *names["a3"], "t"]),
        ("P1", "special production of P1 minus its last t is (_, babab)t",
         lambda w: (lambda p: p.right == tuple("babab") and p.trailing_t)(calc.production(w[:-1], "special")), None),
        ("P2", "first coordinate is a t a4 t", lambda w: calc.production(w).left == ("a", "t") + names["a4"] + ("t",), None),
        ("P3", "special first coordinate is tababat",
         lambda w: calc.production(w[:-1], "special").left == tuple("tababat"), None),
        ("P4", "first coordinate is atbabta", lambda w: calc.production(w).left == tuple("atbabta"), None),
        ("P5", "first coordinate is tababta", lambda w: calc.production(w).left == tuple("tababta"), None),
        ("P6", "first coordinate is a t b2 t b2 t b1 t a2 t a2 t a", lambda w: calc.production(w).left == tuple("atbatbatbtabtabta"), None),
        ("P7", "first coordinate is t a3 t", lambda w: calc.production(w).left == tuple("tabat"), None),
    ]
    for fam, desc, pred, single in forms:
        words = [tuple(single)] if single else fams[fam]
        report.check(f"{fam}: {desc}", desc, lambda words=words, pred=pred: (
            all(pred(w) for w in words), {"instances": len(words)}))

    def depth_of(name, w):
        if name == "P0" and w == ("t",) + names["a3"] + ("t",):
            return 1
        return DEPTHS_110[name]

    _certify_families(report, calc, fams, depth_of)
    report.check("planar with ordering a, b, t", "abtabt|0 = bta",
                 lambda: (is_planar_ordering(a, ("a", "b", "t")) and _s(restrict(a, "abtabt", "0")) == "bta"
                          and _s(restrict(a, "abtabt", "1")) == "tab", None))

    u_words = [w for ws in fams.values() for w in ws]
    allowed = {names["b1"], names["b2"], names["a2"]}

    def bad_words():
        rep = count_bad_words(calc, u_words, BAD_WORD_BLOCKS, list_limit=10_000)
        ok = all(set(_blocks(w)) <= allowed for ws in rep.survivors.values() for w in ws)
        follows = _transitions(rep.survivors.values())
        ok = ok and (names["a2"], names["b2"]) not in follows
        return ok, {"counts": rep.counts, "max": rep.max_count, "stable_from": rep.stable_from()}

    report.check("bad words use only b1, b2, a2 and a2 is never followed by b2", "w_i in {b1, b2, a2}", bad_words)
    return report


def _blocks(w: Word) -> list[Word]:
    out, cur = [], []
    for s in w:
        if s == "t":
            if cur:
                out.append(tuple(cur))
            cur = []
        else:
            cur.append(s)
    if cur:
        out.append(tuple(cur))
    return out


def _transitions(groups, trim: int = 0) -> set[tuple[Word, Word]]:
    """Consecutive pairs within the odd- and even-indexed block subsequences."""
    out = set()
    for ws in groups:
        for w in ws:
            seq = _blocks(w)
            for par in (0, 1):
                sub = seq[par::2]
                for i in range(trim, len(sub) - 1 - trim):
                    out.add((sub[i], sub[i + 1]))
    return out


# -- 0(011) ---------------------------------------------------------------------

WEIGHTS_0011 = {"a": Fraction(7), "b": Fraction(7), "c": Fraction(6), "t": Fraction(3)}
ORDER_0011 = ("c", "a", "b")
TABLE_0011 = {
    "a1": ("t", "c", 10, 9), "a2": ("ta", "c", 17, 16), "a3": ("tat", "1", 24, 13), "a4": ("tata", "1", 31, 20),
    "a5": ("tatat", "c", 38, 29), "a6": ("tatata", "c", 45, 36), "a7": ("tatatat", "1", 52, 33),
    "a8": ("tatatata", "1", 59, 40),
    "b1": ("a", "1", 10, 7), "b2": ("at", "c", 17, 16), "b3": ("ata", "c", 24, 23), "b4": ("atat", "1", 31, 20),
    "b5": ("atata", "1", 38, 27), "b6": ("atatat", "c", 45, 36), "b7": ("atatata", "c", 52, 43),
}
DEPTHS_0011 = {"P0": 0, "P1": 1, "P2": 1, "P3": 2, "P4": 2, "P5": 1, "P6": 1, "P7": 1, "P8": 1,
               "P9": 2, "P10": 2, "P11": 1, "P12": 1}


def families_0011() -> tuple[dict[str, list[Word]], dict[str, Word], list[Word]]:
    names = {f"a{n}": _alternating("a", "b", n) for n in range(1, 9)}
    names.update({f"b{n}": _alternating("b", "a", n) for n in range(1, 8)})
    names.update({"c" + k: ("c",) + v for k, v in list(names.items())})
    names["c"] = ("c",)
    boxes = [names["ca1"], names["ca2"], names["cb2"], names["cb3"]]
    templates = {
        "P1": "t ca1 t # t ca1 t", "P2": "t ca1 t # t ca2 t",
        "P3": "t # t # t ca1 t # t cb2 t # t # t", "P4": "t # t # t ca2 t # t ca1 t # t # t",
        "P5": "t ca2 t # t cb2 t", "P6": "t ca2 t # t cb3 t", "P7": "t cb2 t # t ca1 t", "P8": "t cb2 t # t ca2 t",
        "P9": "t # t # t cb2 t # t cb3 t # t # t", "P10": "t # t # t cb3 t # t ca2 t # t # t",
        "P11": "t cb3 t # t cb2 t", "P12": "t cb3 t # t cb3 t",
    }
    transversal = [()] + [names[k] for k in names]
    fams = {"P0": [("t",) + w + ("t",) for w in transversal if w not in boxes]}
    for key, template in templates.items():
        fams[key] = _fill(_boxed(template, names), boxes)
    return fams, names, boxes


def case_0011() -> CaseReport:
    report = CaseReport("0011", {})
    a = automaton_from_kneading_sequence("0(011)")
    calc = Calculus(a, WEIGHTS_0011, order=ORDER_0011)
    T = calc.transversal
    fams, names, boxes = families_0011()

    def squares():
        steps = {
            "a^2|0": _s(restrict(a, "aa", "0")), "a^2|1": _s(restrict(a, "aa", "1")),
            "c^2|1": _s(restrict(a, "cc", "1")), "b^2|0": _s(restrict(a, "bb", "0")),
        }
        ok = steps == {"a^2|0": "tt", "a^2|1": "cc", "c^2|1": "bb", "b^2|0": "aa"}
        ok = ok and all(elements_equal(a, s + s, "") for s in "abc")
        return ok, steps

    report.check("a^2 = (1, c^2), c^2 = (1, b^2), b^2 = (a^2, 1) and all squares trivial", "b^2 = (a^2, 1)", squares)
    report.check("(ta)^2 = (ct, tc) verbatim", "(ta)^2 = (ct, tc)",
                 lambda: (str(calc.production("tata", "string")) == "(ct, tc)", str(calc.production("tata", "string"))))

    def ta4():
        w = tuple("ta" * 4)
        ok = all(elements_equal(a, restrict(a, w, x), "b") for x in ("00", "01", "10", "11"))
        ok = ok and wreath_decompose(a, w)[1] == (0, 1) and not elements_equal(a, w, "")
        return ok and elements_equal(a, w * 2, ""), None

    report.check("(ta)^4 = ((b,b),(b,b)) and (ta)^8 = 1", "(ta)^4 = ((b,b),(b,b))", ta4)
    report.check("|ab| = 8", "|ab| = 8", lambda: (_order(calc, "ab") == 8, _order(calc, "ab")))

    def structure():
        ab = {T.element(w) for w in itertools.product("ab", repeat=8)}  # words of length 8 reach all of <a,b>
        ab |= {T.element(w) for n in range(8) for w in itertools.product("ab", repeat=n)}
        commute = elements_equal(a, "ac", "ca") and elements_equal(a, "bc", "cb")
        ok = len(T) == 32 and len(ab) == 16 and T.element("c") not in ab and commute
        ok = ok and _order(calc, "a") == 2 and _order(calc, "b") == 2 and _order(calc, "c") == 2
        return ok, {"order": len(T), "order_ab_subgroup": len(ab)}

    report.check("<a,b,c> = D8 x Z/2 of order 32", "D8 x Z/2Z", structure)

    def table():
        got, mismatch = {}, []
        for key, (w0, w1, lhs, rhs) in TABLE_0011.items():
            for shifted in (False, True):
                word = (("c",) if shifted else ()) + names[key]
                row = calc.admissibility_table()[T.rep_index[word]]
                want1 = calc.r(calc.word(w1) + ("b",)) if shifted else calc.word(w1)
                want = (calc.word(w0), want1, lhs + 6 * shifted, rhs + 7 * shifted)
                have = (row.production.left, row.production.right, row.lhs, row.rhs)
                got[_s(word)] = [_s(have[0]), _s(have[1]), int(have[2]), int(have[3])]
                if have != want:
                    mismatch.append(_s(word))
        return not mismatch and sorted(got) == sorted(_s(w) for w in T.reps if w not in ((), ("c",))), \
            {"rows": got, "mismatch": mismatch}

    report.check("15-row table and the c-shifted rows (+6/+7, second coordinate times b)",
                 "post-multiplying the second coordinates by b", table)
    report.check("weights a=b=7, c=6, t=3 are admissible", "admissible", lambda: calc.is_admissible())

    exact_forms = {"P1": "tcbt", "P2": "tcbta", "P5": "tcabat", "P6": "tcabata", "P7": "atcbt",
                   "P8": "atcbta", "P11": "atcabat", "P12": "atcabata"}
    for fam, right in exact_forms.items():
        report.check(f"{fam}: second production coordinate is {right}", f"w1 = {right}",
                     lambda fam=fam, right=right: (all(calc.production(w).right == tuple(right) for w in fams[fam]),
                                                   {"instances": len(fams[fam])}))

    # the second coordinate contains the short word when the first box or the last box
    # is one of the listed fillings; otherwise it is the long word
    split_forms = {
        "P3": ({"ca1", "cb2"}, {"ca1", "ca2"}, "tcbt", "tcabtcbatcbat"),
        "P4": ({"ca1", "cb2"}, {"ca1", "ca2"}, "tcbt", "tcabtcabtcbat"),
        "P9": ({"ca2", "cb3"}, {"cb2", "cb3"}, "tcabat", "tcbatcbatcabt"),
        "P10": ({"ca2", "cb3"}, {"cb2", "cb3"}, "tcabat", "tcbatcabtcabt"),
    }
    box_name = {names[k]: k for k in ("ca1", "ca2", "cb2", "cb3")}
    for fam, (first, last, hit, other) in split_forms.items():
        def run(fam=fam, first=first, last=last, hit=hit, other=other):
            bad = []
            for w in fams[fam]:
                seq = _blocks(w)
                expect = hit if (box_name[seq[0]] in first or box_name[seq[-1]] in last) else other
                if expect not in _s(calc.production(w).right):
                    bad.append(_s(w))
            return not bad, {"instances": len(fams[fam]), "failures": bad[:5]}

        report.check(f"{fam}: second coordinate contains {hit}, or else {other}", f"w1 contains {hit}", run)

    _certify_families(report, calc, fams, lambda name, w: DEPTHS_0011[name])
    report.check("planar with ordering t, a, c, b", "(tacbtacb)|0 = cbta",
                 lambda: (is_planar_ordering(a, tuple("tacb")) and _s(restrict(a, "tacbtacb", "0")) == "cbta"
                          and _s(restrict(a, "tacbtacb", "1")) == "tacb", None))

    u_words = [w for ws in fams.values() for w in ws]

    def bad_words():
        rep = count_bad_words(calc, u_words, BAD_WORD_BLOCKS, list_limit=10_000)
        inner = {(box_name[x], box_name[y]) for x, y in _transitions(
            [ws for m, ws in rep.survivors.items() if m >= 8], trim=1)}
        rules = {("ca1", "cb3"), ("ca2", "ca2"), ("cb2", "cb2"), ("cb3", "ca1")}
        blocks_ok = all(set(_blocks(w)) <= set(boxes) for ws in rep.survivors.values() for w in ws)
        return blocks_ok and inner <= rules, {"counts": rep.counts, "inner_transitions": sorted(inner),
                                              "max": rep.max_count, "stable_from": rep.stable_from()}

    report.check("bad words follow the successor rules away from their ends", "ca1 can be followed only by cb3", bad_words)
    return report


# -- 01(10) ---------------------------------------------------------------------

ORDER_0110 = ("c", "b", "a")


def _parity_classes(calc: Calculus) -> tuple[bool, dict[int, tuple[int, ...]]]:
    """Assign a letter-parity vector to each element; consistency on every Cayley edge proves well-definedness."""
    T = calc.transversal
    gens = ("a", "b", "c")
    phi = {0: (0, 0, 0)}
    queue = [0]
    ok = True
    while queue:
        g = queue.pop()
        for k, s in enumerate(gens):
            h = T.table[g][s]
            v = list(phi[g])
            v[k] ^= 1
            v = tuple(v)
            if h not in phi:
                phi[h] = v
                queue.append(h)
            elif phi[h] != v:
                ok = False
    return ok, phi


def _letter_counts(calc: Calculus, target: Word, bound: int) -> tuple[set, list[Word]]:
    """Letter-count vectors of all words of length <= bound equal to ``target``, and its equal permutations."""
    T = calc.transversal
    gens = ("a", "b", "c")
    goal = T.element(target)
    layer = {(0, (0, 0, 0))}
    seen = set(layer)
    for _ in range(bound):
        nxt = set()
        for g, cnt in layer:
            for k, s in enumerate(gens):
                c = list(cnt)
                c[k] += 1
                state = (T.table[g][s], tuple(c))
                if state not in seen:
                    seen.add(state)
                    nxt.add(state)
        layer = nxt
    counts = {cnt for g, cnt in seen if g == goal}
    perms = sorted({p for p in itertools.permutations(target) if T.element(p) == goal})
    return counts, perms


def _linear_gap(calc: Calculus, w: Word) -> dict[str, int]:
    """Coefficients of ``lhs - rhs`` of the admissibility inequality of ``w`` as a form in the weights."""
    p = calc.production(w)
    lhs = Counter(w)
    lhs[calc.t] += 1
    rhs = Counter(p.left) + Counter(p.right)
    return {s: lhs[s] - rhs[s] for s in sorted(set(lhs) | set(rhs)) if lhs[s] != rhs[s]}


def case_0110(seed: int = 0, samples: int = 50) -> CaseReport:
    report = CaseReport("0110", {"seed": seed, "samples": samples})
    a = automaton_from_kneading_sequence("01(10)")
    calc = Calculus(a, WeightAssignment.uniform(a), order=ORDER_0110)
    T = calc.transversal

    report.check("a = (t, 1), b = (c, a), c = (1, b)", "a = (t,1), b = (c,a), c = (1,b)",
                 lambda: ([[_s(x) for x in wreath_decompose(a, s)[0]] for s in "abc"]
                          == [["t", "1"], ["c", "a"], ["1", "b"]], None))

    def phi():
        ok, classes = _parity_classes(calc)
        onto = len(set(classes.values())) == 8
        return ok and onto, {"group_order": len(T), "image_size": len(set(classes.values()))}

    report.check("letter parity phi: <a,b,c> -> (Z/2Z)^3 is a well-defined surjection", "phi(a) = (1,0,0)", phi)

    def central():
        gens = [T.element("abab"), T.element("bcbc")]
        sub = {0}
        frontier = [0]
        while frontier:
            g = frontier.pop()
            for h in gens:
                x = T.element(T.reps[g] + T.reps[h])
                if x not in sub:
                    sub.add(x)
                    frontier.append(x)
        is_central = all(elements_equal(a, T.reps[n] + (s,), (s,) + T.reps[n]) for n in sub for s in "abc")
        cosets = {frozenset(T.element(T.reps[n] + tuple(r)) for n in sub)
                  for r in ["", "a", "b", "c", "ab", "ac", "bc", "abc"]}
        covered = set().union(*cosets)
        commute_mod = all(T.element(x + y + x + y) in sub for x in "abc" for y in "abc")
        ok = is_central and len(cosets) == 8 and covered == set(range(len(T))) and commute_mod
        return ok, {"N_order": len(sub), "cosets": len(cosets)}

    report.check("N = <abab, bcbc> is central with transversal {1,a,b,c,ab,ac,bc,abc}", "N is central", central)

    targets = {"c": ["c"], "cbacb": ["cbacb", "cbcab"], "baba": ["baba", "abab"]}
    reps_found = {}
    for target, listed in targets.items():
        bound = 3 * len(target)

        def forced(target=target, listed=listed, bound=bound):
            counts, perms = _letter_counts(calc, tuple(target), bound)
            need = tuple(target.count(s) for s in "abc")
            dominated = all(all(c[i] >= need[i] for i in range(3)) for c in counts)
            reps_found[target] = perms
            names = sorted(_s(p) for p in perms)
            return dominated and set(listed) <= set(names), {
                "search_bound_letters": bound, "equal_permutations": names, "listed": listed}

        report.check(f"every word equal to {target} (length <= {bound}) uses each letter at least as often",
                     "at least as many occurrences of each letter", forced)

    report.check("string production of cbacb is (ctc, baba)", "(ctc, baba)",
                 lambda: (str(calc.production("cbacb", "string")) == "(ctc, baba)", str(calc.production("cbacb", "string"))))

    def infeasible():
        forms = {}
        for w in reps_found.get("cbacb", []):
            for order in (("c", "a", "b"), ("c", "b", "a")):
                sub = Calculus(a, WeightAssignment.uniform(a), order=order)
                gap = _linear_gap(sub, w)
                forms[f"{_s(w)} with {_s(sub.transversal.rep('baba'))}"] = gap
        ok = bool(forms) and all(g == {"a": -1} for g in forms.values())
        return ok, {"lhs_minus_rhs": forms, "conclusion": "|t|+|w| >= |w0|+|w1| forces weight(a) <= 0"}

    report.check("admissibility of every representative of cbacb is equivalent to weight(a) <= 0",
                 "conclude that |a| <= 0", infeasible)

    def random_weights():
        rng = random.Random(seed)
        misses = []
        for _ in range(samples):
            wts = {s: Fraction(rng.randint(1, 60), rng.randint(1, 12)) for s in ("a", "b", "c", "t")}
            sub = Calculus(a, wts, order=ORDER_0110)
            ok, bad = sub.is_admissible()
            row = sub.admissibility_table()[sub.transversal.element("cbacb")]
            if ok or row.lhs >= row.rhs:
                misses.append(sub.weights.to_dict())
        return not misses, {"samples": samples, "admissible_cases": misses}

    report.check(f"{samples} random positive rational weightings are all inadmissible", "no admissible length function",
                 random_weights)
    report.check("01(10) has no planar ordering", "exhaustive search over orderings",
                 lambda: (not is_planar(a)[0], None))
    return report


def run_case(case: str, **params) -> CaseReport:
    """Run one worked example.  Budget exhaustion while building the case gives an inconclusive report."""
    builders = {
        "10k": lambda: case_10k(int(params.get("k", 3))),
        "110": case_110,
        "0011": case_0011,
        "0110": lambda: case_0110(int(params.get("seed", 0)), int(params.get("samples", 50))),
    }
    if case not in builders:
        raise ValueError(f"unknown case {case!r}; expected one of {', '.join(CASES)}")
    try:
        return builders[case]()
    except (CapExceeded, LengthBoundExceeded) as e:
        shown = {k: v for k, v in params.items() if v is not None}
        return CaseReport(case, shown, [Claim("case setup", "", INCONCLUSIVE, str(e))])
