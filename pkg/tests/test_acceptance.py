"""Release gate: thirteen checks, one pass/fail line each under -v.

Each test pins one externally stated guarantee at its stated tolerance.
Nothing here is exploratory; a failure means the artifact does not meet
its contract.  Shared fixtures keep the expensive builds to one per
session.
"""

import math
from collections import defaultdict
from fractions import Fraction

import numpy as np
from scipy.stats import chisquare

from toto231.efgame import ef_winner
from toto231.fingerprint import fingerprint
from toto231.formulas import models, parse_sentence, qdepth
from toto231.inference import (
    corpus,
    invariance_corpus,
    limiting_probability,
    monte_carlo_check,
    tau_pi_distribution_check,
)
from toto231.kakeya import greedy_subsum, verify_density_grid
from toto231.perms import enumerate_av231, sample_av231_batch
from toto231.series import (
    bullet_block,
    estimate_A,
    estimate_kappa,
    eval_jacobian_at,
    spectral_radius,
    verify_column_sums,
    verify_conservation,
)
from toto231.typesystem import verify_composition_lemma

INVERSION = "(E x (E y (and (<p x y) (<v y x))))"


def test_a01_conservation_exact(ts1, ct1, ts2, ct2):
    # sum over types equals Cat_n as exact integers, both orders
    assert verify_conservation(ts1, ct1) is True
    assert verify_conservation(ts2, ct2) is True
    assert ct1.N >= 2000 and ct2.N >= 2000


def test_a02_fingerprint_matches_ef_games():
    perms = [p for n in range(6) for p in enumerate_av231(n)]
    disagreements = []
    for i, a in enumerate(perms):
        for b in perms[i:]:
            for k in (1, 2, 3):
                same = fingerprint(a, k) == fingerprint(b, k)
                dup = ef_winner(a, b, k) == "Duplicator"
                if same != dup:
                    disagreements.append((a, b, k))
    assert disagreements == []


def test_a03_type_invariance_over_small_avoiders():
    pairs = invariance_corpus()
    assert len(pairs) >= 12
    assert any(parse_sentence(t) == parse_sentence(INVERSION) for _, t in pairs)
    perms = [p for n in range(8) for p in enumerate_av231(n)]
    for name, text in pairs:
        psi = parse_sentence(text)
        depth = qdepth(psi)
        assert depth <= 3, name
        classes = defaultdict(set)
        for p in perms:
            classes[fingerprint(p, depth)].add(models(p, psi))
        split = [fp for fp, vals in classes.items() if len(vals) != 1]
        assert split == [], f"{name}: truth varies within a class"


def test_a04_composition_lemma_exhaustive(ts2):
    rep = verify_composition_lemma(ts2, exhaustive_max=4)
    assert rep.ok and rep.checked > 0
    assert len(rep.violations) == 0


def test_a05_unique_terminal_scc(ts1, ts2):
    for ts in (ts1, ts2):
        succ = defaultdict(set)
        for u, t in ts.edges:
            succ[u].add(t)

        def reach(start):
            seen, todo = {start}, [start]
            while todo:
                for v in succ[todo.pop()]:
                    if v not in seen:
                        seen.add(v)
                        todo.append(v)
            return seen

        closure = {u: reach(u) for u in range(ts.ntypes)}
        star = ts.star
        # one strongly connected component with no way out, reachable
        # from everywhere: that is the unique terminal component
        assert all(star <= closure[u] for u in star)
        assert all(closure[u] <= star for u in star)
        assert all(closure[u] & star for u in range(ts.ntypes))
        assert ts.type_of(()) not in star


def test_a06_jacobian_column_sums_exact(ts1, ct1, ts2, ct2):
    assert verify_column_sums(ts1, ct1) is True
    assert verify_column_sums(ts2, ct2) is True


def test_a07_spectral_dichotomy(ts1, ct1, ts2, ct2f):
    for ts, ct in ((ts1, ct1), (ts2, ct2f)):
        assert ct.N == 4000
        M = eval_jacobian_at(ts, ct, 0.25)
        full = spectral_radius(M).value
        blk = bullet_block(ts, M)
        bullet = spectral_radius(blk).value if blk.size else 0.0
        assert bullet <= 0.98, f"k={ts.k}: bullet radius {bullet}"
        assert 0.95 <= full <= 1.0, f"k={ts.k}: full radius {full}"


def test_a08_asymptotic_estimates(ts1, ct1, ts2, ct2f):
    (t1,) = ts1.star
    a1 = estimate_A(ct1, t1)
    assert abs(a1 - 1 / math.sqrt(math.pi)) < 0.01 / math.sqrt(math.pi)
    star_sum = sum(estimate_A(ct2f, t) for t in sorted(ts2.star))
    assert 0.553 <= star_sum <= 0.576
    bullets = set(range(ts2.ntypes)) - ts2.star
    worst = max(estimate_kappa(ct2f, t) for t in sorted(bullets))
    assert worst <= 3.95


def test_a09_limits_against_exact_values(ts2, ct2f):
    max_first = next(e.text for e in corpus() if e.name == "max-first")
    rep = limiting_probability(ts2, ct2f, max_first)
    assert abs(rep.limit - 0.25) <= 5e-3

    # the tau = (1) event sits one quantifier too deep for this system,
    # so it is certified by construction sum, exact finite-n ratio, and
    # sampling instead
    spec = greedy_subsum(Fraction(1, 16), Fraction(1, 10**6))
    assert spec.achieved == Fraction(1, 16)
    d = tau_pi_distribution_check((1,), 2000, 20000, seed=5)
    assert d["valid"] and d["ok"]
    assert abs(d["exact_at_n"] - 0.0625) <= 5e-3


def test_a10_corpus_monte_carlo_agreement():
    for i, e in enumerate(corpus()):
        mc = monte_carlo_check(e.text, 1000, 10**5, seed=100 + i, limit=float(e.limit))
        gap = abs(mc.empirical - float(e.limit))
        assert gap <= 3 * mc.stderr + 0.02, f"{e.name}: gap {gap}"


def test_a11_sampler_uniformity_chi_square():
    arr = sample_av231_batch(5, 10**5, 11)
    order = {p: i for i, p in enumerate(enumerate_av231(5))}
    assert len(order) == 42
    counts = np.zeros(42, dtype=int)
    for row in arr:
        counts[order[tuple(int(v) for v in row)]] += 1
    assert int(counts.sum()) == 10**5
    _, pvalue = chisquare(counts)
    assert pvalue > 1e-3


def test_a12_density_grid_with_membership_oracle():
    targets = [Fraction(j, 20) for j in range(1, 20)]
    rows = verify_density_grid(targets, Fraction(1, 10**4), oracle_max=9)
    assert len(rows) == 19
    for row in rows:
        assert row["within_epsilon"], row
        assert row["recomputed_ok"], row
        assert row["oracle_mismatches"] == 0, row
        assert row["incompatible_overlaps"] == 0, row


def test_a13_decay_versus_positive_limit(ts2, ct2f):
    for name in ("empty", "exactly-one"):
        text = next(e.text for e in corpus() if e.name == name)
        rep = limiting_probability(ts2, ct2f, text)
        assert rep.classification == "exponential-decay", name
        mc = monte_carlo_check(text, 200, 20000, seed=3, limit=0.0)
        assert mc.hits == 0, name
    rep = limiting_probability(ts2, ct2f, INVERSION)
    assert rep.classification == "positive-limit"
    assert abs(rep.limit - 1.0) <= 1e-3
