"""Permutations as tuples, 231-avoidance, and the block decomposition.

Conventions used throughout the package:

- A permutation of size n is a tuple of the integers 1..n in one-line
  notation, e.g. ``(2, 1, 5, 3, 4)``.  The empty permutation is ``()``.
- ``sigma[i]`` is the value at position ``i`` (0-based positions
  internally, 1-based values).
- The text form is a comma-separated list of values, ``"2,1,5,3,4"``,
  with the empty string standing for the empty permutation.

Every nonempty 231-avoiding permutation splits uniquely around its
maximum as ``tau + (n,) + shifted pi`` where ``tau`` occupies the values
``1..len(tau)``; in block terms ``sigma = tau (+) (1 (-) pi)`` with
``(+)`` the direct sum and ``(-)`` the skew sum.  :func:`decompose`
inverts that map and is the workhorse for everything downstream.
"""

from __future__ import annotations

import random
import threading
from functools import lru_cache

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a listed dependency
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(f):
            return f

        if args and callable(args[0]):
            return args[0]
        return wrap


Perm = tuple

__all__ = [
    "Perm",
    "as_perm",
    "parse_perm",
    "format_perm",
    "catalan",
    "contains_pattern",
    "avoids_231",
    "direct_sum",
    "skew_sum",
    "decompose",
    "enumerate_av231",
    "sample_uniform_av231",
    "sample_av231_batch",
]


# ---------- basic representation ----------


def as_perm(values) -> Perm:
    """Validate ``values`` as one-line notation and return it as a tuple.

    >>> as_perm([2, 1, 3])
    (2, 1, 3)
    >>> as_perm((1, 3))
    Traceback (most recent call last):
        ...
    ValueError: not a permutation of 1..2: (1, 3)
    """
    p = tuple(int(v) for v in values)
    n = len(p)
    seen = [False] * (n + 1)
    ok = True
    for v in p:
        if v < 1 or v > n or seen[v]:
            ok = False
            break
        seen[v] = True
    if not ok:
        raise ValueError(f"not a permutation of 1..{n}: {p}")
    return p


def parse_perm(text: str) -> Perm:
    """Parse comma-separated one-line notation; "" is the empty permutation.

    >>> parse_perm("4,2,3,1")
    (4, 2, 3, 1)
    >>> parse_perm("")
    ()
    """
    text = text.strip()
    if not text:
        return ()
    try:
        values = [int(part) for part in text.split(",")]
    except ValueError as exc:
        raise ValueError(f"bad permutation text: {text!r}") from exc
    return as_perm(values)


def format_perm(p: Perm) -> str:
    """Inverse of :func:`parse_perm`."""
    return ",".join(str(v) for v in p)


# ---------- Catalan numbers ----------

_cat_lock = threading.Lock()
_cat: list[int] = [1]


def catalan(n: int) -> int:
    """n-th Catalan number, exact.

    Extends a shared cache with the multiplicative recurrence
    ``C(k+1) = C(k) * 2(2k+1) // (k+2)``; the defining convolution
    ``C(n+1) = sum_i C(i) C(n-i)`` is asserted against it in the tests.

    >>> [catalan(n) for n in range(7)]
    [1, 1, 2, 5, 14, 42, 132]
    """
    if n < 0:
        raise ValueError("negative index")
    if n >= len(_cat):
        with _cat_lock:
            while len(_cat) <= n:
                k = len(_cat) - 1
                _cat.append(_cat[k] * 2 * (2 * k + 1) // (k + 2))
    return _cat[n]


# ---------- pattern containment ----------


def contains_pattern(sigma: Perm, pattern: Perm) -> bool:
    """Classical containment: some subsequence of sigma is order-isomorphic
    to ``pattern``.  Backtracking search, exponential in the pattern size
    only.

    >>> contains_pattern((4, 5, 2, 3, 1), (2, 3, 1))
    True
    >>> contains_pattern((1, 2, 3), (2, 1))
    False
    """
    m = len(pattern)
    n = len(sigma)
    if m == 0:
        return True
    if m > n:
        return False

    def extend(start: int, chosen: list) -> bool:
        k = len(chosen)
        if k == m:
            return True
        for i in range(start, n - (m - k) + 1):
            v = sigma[i]
            ok = True
            for j, w in enumerate(chosen):
                if (pattern[j] < pattern[k]) != (w < v):
                    ok = False
                    break
            if ok:
                chosen.append(v)
                if extend(i + 1, chosen):
                    return True
                chosen.pop()
        return False

    return extend(0, [])


def avoids_231(sigma: Perm) -> bool:
    """Linear-time check via stack sorting: sigma avoids 231 iff pushing
    its entries through a single stack outputs 1, 2, ..., n.

    >>> avoids_231((2, 1, 5, 3, 4))
    True
    >>> avoids_231((4, 5, 2, 3, 1))
    False
    """
    stack: list = []
    expect = 1
    for x in sigma:
        while stack and stack[-1] < x:
            if stack[-1] != expect:
                return False
            expect += 1
            stack.pop()
        stack.append(x)
    while stack:
        if stack[-1] != expect:
            return False
        expect += 1
        stack.pop()
    return True


# ---------- block sums and the decomposition ----------


def direct_sum(tau: Perm, pi: Perm) -> Perm:
    """tau (+) pi: pi placed after and above tau.

    >>> direct_sum((1, 2), (2, 3, 1))
    (1, 2, 4, 5, 3)
    """
    a = len(tau)
    return tuple(tau) + tuple(v + a for v in pi)


def skew_sum(tau: Perm, pi: Perm) -> Perm:
    """tau (-) pi: pi placed after and below tau.

    >>> skew_sum((1, 2), (2, 3, 1))
    (4, 5, 2, 3, 1)
    """
    b = len(pi)
    return tuple(v + b for v in tau) + tuple(pi)


def decompose(sigma: Perm) -> tuple:
    """Split a nonempty 231-avoider around its maximum: returns (tau, pi)
    with ``sigma == direct_sum(tau, skew_sum((1,), pi))``.

    >>> decompose((2, 1, 5, 3, 4))
    ((2, 1), (1, 2))
    >>> decompose((1,))
    ((), ())

    Raises ValueError on the empty permutation and on 231-containing input.
    """
    if not sigma:
        raise ValueError("empty permutation has no decomposition")
    if not avoids_231(sigma):
        raise ValueError(f"not 231-avoiding: {sigma}")
    n = len(sigma)
    m = sigma.index(n)
    tau = tuple(sigma[:m])
    pi = tuple(v - m for v in sigma[m + 1 :])
    return tau, pi


# ---------- enumeration ----------


@lru_cache(maxsize=None)
def _av231_lex(n: int) -> tuple:
    if n == 0:
        return ((),)
    out = []
    for m in range(n):
        for tau in _av231_lex(m):
            head = tau + (n,)
            for pi in _av231_lex(n - 1 - m):
                out.append(head + tuple(v + m for v in pi))
    out.sort()
    return tuple(out)


def enumerate_av231(n: int, *, cap: int = 12) -> list:
    """All 231-avoiding permutations of size n in lexicographic order.

    The count is catalan(n); sizes above ``cap`` are refused because the
    list grows like 4^n.

    >>> enumerate_av231(3)
    [(1, 2, 3), (1, 3, 2), (2, 1, 3), (3, 1, 2), (3, 2, 1)]
    """
    if n < 0:
        raise ValueError("negative size")
    if n > cap:
        raise ValueError(f"size {n} above enumeration cap {cap}")
    return list(_av231_lex(n))


# ---------- exact uniform sampling ----------


def _draw_split(s: int, rng: random.Random) -> int:
    # Left-block size m has probability catalan(m) * catalan(s-1-m) / catalan(s).
    # The distribution piles up at both ends, so walk inwards from the two
    # ends alternately; the expected number of steps is O(1).
    r = rng.randrange(catalan(s))
    lo, hi = 0, s - 1
    lo_acc = 0
    hi_acc = catalan(s)
    while True:
        w = catalan(lo) * catalan(s - 1 - lo)
        if r < lo_acc + w:
            return lo
        lo_acc += w
        lo += 1
        w = catalan(hi) * catalan(s - 1 - hi)
        if r >= hi_acc - w:
            return hi
        hi_acc -= w
        hi -= 1


def sample_uniform_av231(n: int, seed=None, *, rng: random.Random | None = None) -> Perm:
    """Exactly uniform sample from the 231-avoiders of size n.

    Recursive Catalan-weighted splitting: the size m of the block before
    the maximum is drawn with probability catalan(m)*catalan(n-1-m)/catalan(n),
    exactly, using big-integer arithmetic; the two blocks are sampled
    recursively.  Reproducible via ``seed`` (or pass a shared ``rng`` to
    draw several samples from one stream).
    """
    if n < 0:
        raise ValueError("negative size")
    if rng is None:
        rng = random.Random(seed)
    out = [0] * n
    work = [(0, 0, n)]
    while work:
        p, v, s = work.pop()
        if s == 0:
            continue
        m = _draw_split(s, rng)
        out[p + m] = v + s
        work.append((p, v, m))
        work.append((p + m + 1, v + m, s - 1 - m))
    return tuple(out)


# ---------- batched sampling (linear-time random growth) ----------
#
# For Monte-Carlo runs the per-sample big-integer splitting is too slow, so
# batches use the other standard exactly-uniform route: grow a uniform
# binary tree by random leaf insertion (Remy's procedure, linear time,
# small-integer arithmetic only) and apply the same block map
# (left, root, right) -> left (+) (1 (-) right).  Distributional agreement
# of the two samplers is asserted in the tests.


@njit(cache=True)
def _remy_batch_kernel(n, count, seed, out):  # pragma: no cover - jitted
    np.random.seed(seed)
    nn = 2 * n + 1
    left = np.empty(nn, np.int32)
    right = np.empty(nn, np.int32)
    parent = np.empty(nn, np.int32)
    size = np.zeros(nn, np.int32)
    stack = np.empty(nn + 1, np.int64)
    spos = np.empty(nn + 1, np.int32)
    sval = np.empty(nn + 1, np.int32)
    snode = np.empty(nn + 1, np.int32)
    for c in range(count):
        root = 0
        left[0] = -1
        right[0] = -1
        parent[0] = -1
        for k in range(1, n + 1):
            x = np.random.randint(0, 4 * k - 2)
            v = x >> 1
            inner = 2 * k - 1
            leaf = 2 * k
            left[leaf] = -1
            right[leaf] = -1
            if x & 1 == 0:
                left[inner] = leaf
                right[inner] = v
            else:
                left[inner] = v
                right[inner] = leaf
            pv = parent[v]
            parent[inner] = pv
            if pv < 0:
                root = inner
            elif left[pv] == v:
                left[pv] = inner
            else:
                right[pv] = inner
            parent[v] = inner
            parent[leaf] = inner
        # subtree sizes over internal (odd-id) nodes, leaves count zero
        top = 0
        stack[top] = root
        top += 1
        while top > 0:
            top -= 1
            node = stack[top]
            if node >= 0:
                if node & 1 == 0:
                    size[node] = 0
                    continue
                stack[top] = -node - 1
                top += 1
                stack[top] = left[node]
                top += 1
                stack[top] = right[node]
                top += 1
            else:
                node = -node - 1
                size[node] = 1 + size[left[node]] + size[right[node]]
        # positions and values by block bookkeeping
        top = 0
        snode[top] = root
        spos[top] = 0
        sval[top] = 0
        top += 1
        while top > 0:
            top -= 1
            node = snode[top]
            p = spos[top]
            v = sval[top]
            if node & 1 == 0:
                continue
            ls = size[left[node]]
            out[c, p + ls] = v + size[node]
            snode[top] = left[node]
            spos[top] = p
            sval[top] = v
            top += 1
            snode[top] = right[node]
            spos[top] = p + ls + 1
            sval[top] = v + ls
            top += 1


def sample_av231_batch(n: int, count: int, seed: int) -> np.ndarray:
    """``count`` independent uniform 231-avoiders of size n as an
    ``(count, n)`` int32 array (1-based values), deterministic in ``seed``.
    """
    if n < 1:
        raise ValueError("batch sampler needs n >= 1")
    out = np.empty((count, n), np.int32)
    _remy_batch_kernel(n, count, int(seed), out)
    return out


if __name__ == "__main__":
    import doctest

    doctest.testmod()
