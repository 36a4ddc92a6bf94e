"""Independent brute-force oracles.  Nothing here imports the package's algorithms."""

import itertools
from fractions import Fraction


def leaf_tables(a, depth):
    """Each generator as a permutation of the 2^depth leaves, read straight off the transition table."""
    leaves = ["".join(p) for p in itertools.product(a.alphabet, repeat=depth)]
    index = {s: i for i, s in enumerate(leaves)}
    tables = {}
    for g in a.generators:
        images = []
        for s in leaves:
            cur, out = g, []
            for x in s:
                y, cur = a.transitions[cur, x]
                out.append(y)
            images.append(index["".join(out)])
        tables[g] = tuple(images)
    return tables, len(leaves)


def word_distances(a, depth, radius):
    """Shortest word length (unit weights) per depth-``depth`` leaf permutation, by literal enumeration.

    Enumerates every word with no two equal adjacent letters up to ``radius``.
    """
    tables, n = leaf_tables(a, depth)
    best = {tuple(range(n)): 0}
    layer = [((), tuple(range(n)))]
    for length in range(1, radius + 1):
        nxt = []
        for w, perm in layer:
            for g in a.generators:
                if w and w[-1] == g:
                    continue
                # rightmost letter acts first
                new = tuple(perm[i] for i in tables[g])
                nxt.append((w + (g,), new))
                best.setdefault(new, length)
        layer = nxt
    return best, tables


def word_permutation(tables, n, w):
    perm = tuple(range(n))
    for g in reversed(w):
        perm = tuple(tables[g][i] for i in perm)
    return perm


def pascal(n, k):
    """Binomial coefficient by Pascal's rule."""
    if k < 0 or k > n:
        return 0
    row = [1]
    for _ in range(n):
        row = [1] + [row[i] + row[i + 1] for i in range(len(row) - 1)] + [1]
    return row[k]


def cover_bruteforce(w, patterns, weight, active):
    """Best cover fraction over all subsets of occurrences, checked pairwise."""
    occ = sorted({(i, i + len(p)) for p in patterns for i in range(len(w) - len(p) + 1) if w[i:i + len(p)] == p})
    total = sum(weight[s] for s in w)
    best = Fraction(0)
    for r in range(1, len(occ) + 1):
        for subset in itertools.combinations(occ, r):
            ok = True
            for (i, j), (k, l) in itertools.combinations(sorted(subset), 2):
                lo, hi = max(i, k), min(j, l)
                if lo < hi and not all(w[x] == active for x in range(lo, hi)):
                    ok = False
                    break
                if (i <= k and l <= j) or (k <= i and j <= l):
                    ok = False
                    break
            if not ok:
                continue
            covered = {x for i, j in subset for x in range(i, j)}
            best = max(best, Fraction(sum(weight[w[x]] for x in covered), total))
    return best
