"""Canonical rank-k type fingerprints of permutations.

The rank-r type of a marked tuple is defined by the standard recursion:
at rank 0 it is the atomic diagram of the tuple (the dense rank sequences
of the marked positions and of the marked values, repeats giving explicit
equalities); at rank r > 0 it is the diagram together with the set of
rank-(r-1) types obtained by marking one further element, every element
of the permutation tried, the set deduplicated and sorted.

Fingerprints are deterministic byte strings; two permutations get equal
fingerprints at rank k iff they satisfy the same sentences of quantifier
depth k.  That biconditional is exercised against the game solver in
:mod:`toto231.efgame` over all small pairs in the tests.
"""

from __future__ import annotations

EMPTY_DIAGRAM = bytes([0])


def _diagram(sigma, marks: tuple) -> bytes:
    m = len(marks)
    pos_order = {p: r for r, p in enumerate(sorted(set(marks)))}
    val_order = {v: r for r, v in enumerate(sorted({sigma[p] for p in marks}))}
    return (
        bytes([m])
        + bytes(pos_order[p] for p in marks)
        + bytes(val_order[sigma[p]] for p in marks)
    )


def fingerprint(sigma, k: int, *, cap_k: int = 3, cap_n: int = 40) -> bytes:
    """Canonical byte string naming the rank-k type of sigma.

    Cost grows like n^k memo entries, hence the caps; pass larger caps
    explicitly when the cost is understood.
    """
    if k < 0:
        raise ValueError("negative rank")
    if k > cap_k:
        raise ValueError(f"k={k} above cap {cap_k}")
    n = len(sigma)
    if n > cap_n:
        raise ValueError(f"size {n} above cap {cap_n}")
    memo: dict = {}

    def tp(marks: tuple, r: int) -> bytes:
        if r == 0:
            return _diagram(sigma, marks)
        key = (marks, r)
        got = memo.get(key)
        if got is None:
            subs = sorted({tp(marks + (b,), r - 1) for b in range(n)})
            parts = [_diagram(sigma, marks)]
            parts.extend(subs)
            got = b"".join(len(p).to_bytes(4, "big") + p for p in parts)
            memo[key] = got
        return got

    return tp((), k)


def k_equivalent(alpha, beta, k: int, **caps) -> bool:
    """Same depth-k sentences hold in both: fingerprint equality."""
    return fingerprint(alpha, k, **caps) == fingerprint(beta, k, **caps)
