"""Ehrenfeucht-Fraisse games between two permutations.

The k-round game: each round Spoiler marks an element on either board,
Duplicator answers with an element on the other board.  Repeat picks are
allowed on both sides.  After k rounds Duplicator has won if the induced
partial map alpha -> beta preserves position order, value order, and
equality.  Duplicator has a winning strategy iff the two permutations
satisfy the same sentences of quantifier depth k; the fingerprint module
rests on that equivalence and the two are cross-checked in the tests.
"""

from __future__ import annotations

DUPLICATOR = "Duplicator"
SPOILER = "Spoiler"


def _rel_codes(p):
    # code of an ordered element pair: position comparison and value
    # comparison packed in one small int; two picks extend the partial
    # map consistently iff their codes agree across the boards
    n = len(p)
    codes = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            c = 0 if i == j else (1 if i < j else 2)
            d = 0 if i == j else (1 if p[i] < p[j] else 2)
            codes[i][j] = 3 * c + d
    return codes


def ef_winner(alpha, beta, k: int, *, cap_size: int = 7, cap_rounds: int = 3) -> str:
    """Exact minimax value of the k-round game, "Duplicator" or "Spoiler".

    Game-tree search with memoisation on (partial map, rounds left).
    Sizes and round counts are capped because the tree grows like
    (2 n^2)^k; raise the caps explicitly for bigger instances.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if k > cap_rounds:
        raise ValueError(f"k={k} above cap {cap_rounds}")
    if len(alpha) > cap_size or len(beta) > cap_size:
        raise ValueError(f"board size above cap {cap_size}")
    na, nb = len(alpha), len(beta)
    ca = _rel_codes(alpha)
    cb = _rel_codes(beta)
    memo: dict = {}

    def dup_wins(pairs: tuple, r: int) -> bool:
        # pairs is a sorted tuple of (i, j); consistency is maintained on
        # the way in, so an exhausted round budget is a Duplicator win
        if r == 0:
            return True
        key = (pairs, r)
        hit = memo.get(key)
        if hit is not None:
            return hit
        ok = True
        for i in range(na):
            good = False
            for j in range(nb):
                if all(ca[i][a] == cb[j][b] for a, b in pairs):
                    if dup_wins(tuple(sorted(pairs + ((i, j),))), r - 1):
                        good = True
                        break
            if not good:
                ok = False
                break
        if ok:
            for j in range(nb):
                good = False
                for i in range(na):
                    if all(ca[i][a] == cb[j][b] for a, b in pairs):
                        if dup_wins(tuple(sorted(pairs + ((i, j),))), r - 1):
                            good = True
                            break
                if not good:
                    ok = False
                    break
        memo[key] = ok
        return ok

    return DUPLICATOR if dup_wins((), k) else SPOILER
