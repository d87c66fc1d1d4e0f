"""The finite type algebra of 231-avoiders at quantifier depth k.

Every permutation has a depth-k type (its fingerprint); the block
decomposition respects types, so composition descends to a total map H
on types: H(t1, t2) is the type of rep(t1) (+) (1 (-) rep(t2)), and the
choice of representatives does not matter.  The build discovers all
types realized in Av(231) by fingerprinting a seed enumeration and then
saturating H to a fixpoint.

On top of the table sit the dependency graph (u -> t when u can appear
as a component of a permutation of type t), its strongly connected
components, and the star/bullet split: star is the unique terminal SCC,
the types of asymptotically full measure; bullet is everything else,
including the type of the empty permutation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .fingerprint import fingerprint
from .perms import Perm, direct_sum, enumerate_av231, format_perm, skew_sum


class ClosureError(RuntimeError):
    """Saturation ran into the representative size cap before closing."""


@dataclass(frozen=True)
class TypeSystem:
    k: int
    seed_size: int
    fingerprints: tuple
    reps: tuple
    H: tuple  # H[t1][t2] -> TypeId
    empty_type: int
    edges: frozenset  # {(u, t)}: u occurs as a component type inside t
    star: frozenset
    bullet: frozenset

    @property
    def ntypes(self) -> int:
        return len(self.fingerprints)

    def index_of(self, fp: bytes) -> int:
        try:
            return self._index[fp]
        except AttributeError:
            object.__setattr__(self, "_index", {f: i for i, f in enumerate(self.fingerprints)})
            return self._index[fp]

    def type_of(self, sigma, *, cap_n: int = 200) -> int:
        """TypeId of a 231-avoider; unknown fingerprints are an error
        (they cannot arise from avoiders once the system is closed)."""
        fp = fingerprint(sigma, self.k, cap_k=self.k, cap_n=cap_n)
        try:
            return self.index_of(fp)
        except KeyError:
            raise ValueError(f"type of {sigma} not in the system (is it 231-avoiding?)")


# ---------- SCC decomposition (iterative Tarjan) ----------


def _sccs(nvert: int, succ) -> list:
    index = [-1] * nvert
    low = [0] * nvert
    on = [False] * nvert
    stack: list = []
    comps: list = []
    counter = [0]
    for root in range(nvert):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, pi = work[-1]
            if pi == 0:
                index[v] = low[v] = counter[0]
                counter[0] += 1
                stack.append(v)
                on[v] = True
            advanced = False
            children = succ[v]
            while pi < len(children):
                w = children[pi]
                pi += 1
                if index[w] == -1:
                    work[-1] = (v, pi)
                    work.append((w, 0))
                    advanced = True
                    break
                if on[w]:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(sorted(comp))
            if work:
                u, _ = work[-1]
                low[u] = min(low[u], low[v])
    return comps


def scc_partition(ts_or_edges, nvert: int | None = None):
    """(star, bullet, condensation edges) of the dependency graph.

    Accepts a TypeSystem or a raw edge set with a vertex count.  The
    terminal component of the condensation (no outgoing edges) must be
    unique; anything else is a hard failure.
    """
    if isinstance(ts_or_edges, TypeSystem):
        edges, nvert = ts_or_edges.edges, ts_or_edges.ntypes
    else:
        edges = ts_or_edges
        if nvert is None:
            raise ValueError("vertex count required with a raw edge set")
    succ = [[] for _ in range(nvert)]
    for u, t in sorted(edges):
        if u != t:
            succ[u].append(t)
    comps = _sccs(nvert, succ)
    comp_of = {}
    for ci, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = ci
    cond = set()
    for u, t in edges:
        if comp_of[u] != comp_of[t]:
            cond.add((comp_of[u], comp_of[t]))
    terminal = [ci for ci in range(len(comps)) if not any(a == ci for a, _ in cond)]
    if len(terminal) != 1:
        raise AssertionError(f"terminal SCC not unique: {len(terminal)} found")
    star = frozenset(comps[terminal[0]])
    bullet = frozenset(range(nvert)) - star
    return star, bullet, sorted(cond)


# ---------- construction ----------


def _saturate(k: int, seed_size: int, rep_cap: int, max_rounds: int):
    reps: dict = {}
    rounds: list = []
    seen: list = []  # discovery order

    seed_fps = set()
    for n in range(seed_size + 1):
        for sigma in enumerate_av231(n):
            fp = fingerprint(sigma, k, cap_k=k, cap_n=rep_cap)
            if fp not in reps:
                reps[fp] = sigma  # size-ascending lex enumeration: first hit is minimal
                seed_fps.add(fp)
                seen.append(fp)
    rounds.append(sorted(seed_fps))

    hmap: dict = {}
    for _ in range(max_rounds):
        new: dict = {}
        for fp1 in list(seen):
            for fp2 in list(seen):
                if (fp1, fp2) in hmap:
                    continue
                sigma = direct_sum(reps[fp1], skew_sum((1,), reps[fp2]))
                if len(sigma) > rep_cap:
                    raise ClosureError(
                        f"representative of size {len(sigma)} exceeds cap {rep_cap}"
                    )
                fp = fingerprint(sigma, k, cap_k=k, cap_n=rep_cap)
                hmap[(fp1, fp2)] = fp
                if fp not in reps:
                    if fp not in new or (len(sigma), sigma) < (len(new[fp]), new[fp]):
                        new[fp] = sigma
        if not new:
            return rounds, reps, hmap
        for fp in sorted(new):
            reps[fp] = new[fp]
            seen.append(fp)
        rounds.append(sorted(new))
    raise ClosureError(f"no fixpoint after {max_rounds} rounds")


def build_type_system(
    k: int,
    seed_size: int = 8,
    *,
    rep_cap: int = 200,
    max_rounds: int = 40,
    max_seed_size: int = 12,
) -> TypeSystem:
    """Discover T_k, the composition table, and the star/bullet split.

    Seeds with all avoiders of size up to ``seed_size`` and saturates the
    composition map; if saturation hits the representative size cap the
    build retries with a larger seed (bigger seeds give more small
    representatives, keeping compositions short).
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    attempt = seed_size
    while True:
        try:
            rounds, reps, hmap = _saturate(k, attempt, rep_cap, max_rounds)
            break
        except ClosureError:
            if attempt + 2 > max_seed_size:
                raise
            attempt += 2

    order = [fp for rnd in rounds for fp in rnd]
    index = {fp: i for i, fp in enumerate(order)}
    ntypes = len(order)
    H = tuple(
        tuple(index[hmap[(order[i], order[j])]] for j in range(ntypes))
        for i in range(ntypes)
    )
    empty_type = index[fingerprint((), k, cap_k=k)]

    edges = set()
    for u in range(ntypes):
        for v in range(ntypes):
            edges.add((u, H[u][v]))
            edges.add((u, H[v][u]))
    edges = frozenset(edges)

    star, bullet, _ = scc_partition(edges, ntypes)
    if empty_type not in bullet:
        raise AssertionError("empty type landed in the terminal component")

    return TypeSystem(
        k=k,
        seed_size=attempt,
        fingerprints=tuple(order),
        reps=tuple(reps[fp] for fp in order),
        H=H,
        empty_type=empty_type,
        edges=edges,
        star=star,
        bullet=bullet,
    )


# ---------- composition lemma verification ----------


@dataclass(frozen=True)
class CompositionReport:
    checked: int
    violations: tuple

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_composition_lemma(
    ts: TypeSystem, trials: int = 0, seed: int = 0, *, exhaustive_max: int = 4
) -> CompositionReport:
    """Check that the composed type depends only on the component types.

    Exhaustively composes every pair of avoiders of size up to
    ``exhaustive_max`` and asserts that the resulting fingerprint is
    constant on fingerprint classes of the components (that is exactly
    well-definedness of H); optionally adds ``trials`` random checks with
    components up to size 6.
    """
    import random as _random

    k = ts.k
    pool = []
    for n in range(exhaustive_max + 1):
        pool.extend(enumerate_av231(n))
    fps = {s: fingerprint(s, k, cap_k=k) for s in pool}

    checked = 0
    violations = []
    composed: dict = {}
    for tau in pool:
        for pi in pool:
            sigma = direct_sum(tau, skew_sum((1,), pi))
            fp = fingerprint(sigma, k, cap_k=k)
            key = (fps[tau], fps[pi])
            checked += 1
            if key in composed:
                if composed[key][0] != fp:
                    violations.append((composed[key][1], (tau, pi)))
            else:
                composed[key] = (fp, (tau, pi))

    if trials:
        rng = _random.Random(seed)
        big_pool = []
        for n in range(7):
            big_pool.extend(enumerate_av231(n))
        by_fp: dict = {}
        for s in big_pool:
            by_fp.setdefault(fingerprint(s, k, cap_k=k), []).append(s)
        classes = [c for c in by_fp.values() if len(c) >= 2]
        for _ in range(trials):
            ca = rng.choice(classes)
            cb = rng.choice(classes)
            t1, t2 = rng.choice(ca), rng.choice(ca)
            p1, p2 = rng.choice(cb), rng.choice(cb)
            f1 = fingerprint(direct_sum(t1, skew_sum((1,), p1)), k, cap_k=k)
            f2 = fingerprint(direct_sum(t2, skew_sum((1,), p2)), k, cap_k=k)
            checked += 1
            if f1 != f2:
                violations.append(((t1, p1), (t2, p2)))

    return CompositionReport(checked=checked, violations=tuple(violations))


# ---------- serialization ----------


def to_json(ts: TypeSystem) -> str:
    doc = {
        "k": ts.k,
        "seed_size": ts.seed_size,
        "types": [
            {"id": i, "rep": format_perm(ts.reps[i]), "star": i in ts.star}
            for i in range(ts.ntypes)
        ],
        "H": [list(row) for row in ts.H],
        "edges": sorted([u, t] for u, t in ts.edges),
    }
    return json.dumps(doc, sort_keys=True, indent=1)


def to_dot(ts: TypeSystem) -> str:
    """Condensation DAG in DOT form; the terminal component is boxed."""
    star, _, cond = scc_partition(ts)
    succ = [[] for _ in range(ts.ntypes)]
    for u, t in sorted(ts.edges):
        if u != t:
            succ[u].append(t)
    comps = _sccs(ts.ntypes, succ)
    lines = ["digraph condensation {"]
    for ci, comp in enumerate(comps):
        label = ",".join(str(v) for v in comp)
        shape = "box" if comp[0] in star else "ellipse"
        lines.append(f'  c{ci} [label="{{{label}}}" shape={shape}];')
    for a, b in cond:
        lines.append(f"  c{a} -> c{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"
