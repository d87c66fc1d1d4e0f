"""Limit computation, Monte Carlo, and the reference corpus."""

from fractions import Fraction

import pytest

from toto231.formulas import compile_formula, models, parse_sentence, qdepth
from toto231.inference import (
    corpus,
    invariance_corpus,
    limiting_probability,
    monte_carlo_check,
    singleton_left_block_sentence,
    tau_pi_distribution_check,
    types_of_sentence,
)
from toto231.perms import enumerate_av231


class TestTypesOfSentence:
    def test_depth_guard(self, ts2):
        deep = "(E x (E y (E z (and (<p x y) (<p y z)))))"
        with pytest.raises(ValueError):
            types_of_sentence(ts2, deep)

    def test_depth_one_split(self, ts1):
        ne = 1 - ts1.empty_type
        assert types_of_sentence(ts1, "(E x (= x x))") == frozenset({ne})
        assert types_of_sentence(ts1, "(not (E x (= x x)))") == frozenset(
            {ts1.empty_type}
        )
        assert types_of_sentence(ts1, "(A x (= x x))") == frozenset({0, 1})

    def test_hits_match_representatives(self, ts2):
        psi = parse_sentence("(E x (A y (and (not (<p y x)) (not (<v x y)))))")
        hits = types_of_sentence(ts2, psi)
        for t, rep in enumerate(ts2.reps):
            assert (t in hits) == models(rep, psi)


class TestLimitingProbability:
    def test_corpus_limits_exact_table(self, ts2, ct2):
        # depth-3 entries (the event sentences) are certified by their
        # exact construction sum and Monte Carlo, not by the k=2 system
        done = 0
        for entry in corpus():
            if qdepth(parse_sentence(entry.text)) > ts2.k:
                continue
            rep = limiting_probability(ts2, ct2, entry.text)
            assert rep.classification == entry.classification, entry.name
            assert abs(rep.limit - float(entry.limit)) < 1e-5, entry.name
            done += 1
        assert done >= 12

    def test_depth_one_limits(self, ts1, ct1):
        rep = limiting_probability(ts1, ct1, "(E x (= x x))")
        assert rep.classification == "positive-limit"
        assert abs(rep.limit - 1.0) < 1e-6
        assert rep.kappa_bound is None

    def test_decay_reports_bound_growth(self, ts2, ct2):
        for name, text in (
            ("empty", "(not (E x (= x x)))"),
            ("exactly-one", "(E x (A y (= x y)))"),
            ("min-last", "(E x (A y (and (not (<p x y)) (not (<v y x)))))"),
        ):
            rep = limiting_probability(ts2, ct2, text)
            assert rep.classification == "exponential-decay", name
            assert rep.limit == 0.0
            assert rep.kappa_bound is not None and rep.kappa_bound <= 2.0, name
            assert rep.error < 1e-6

    def test_classification_agrees_with_star_hits(self, ts2, ct2):
        for entry in corpus():
            if qdepth(parse_sentence(entry.text)) > ts2.k:
                continue
            rep = limiting_probability(ts2, ct2, entry.text)
            touches_star = bool(set(rep.type_ids) & ts2.star)
            assert touches_star == (rep.classification == "positive-limit")

    def test_complementary_pairs_sum_to_one(self, ts2, ct2):
        pairs = (
            ("(E x (= x x))", "(not (E x (= x x)))"),
            (
                "(E x (A y (and (not (<p x y)) (not (<v x y)))))",
                "(not (E x (A y (and (not (<p x y)) (not (<v x y))))))",
            ),
        )
        for pos, neg in pairs:
            a = limiting_probability(ts2, ct2, pos)
            b = limiting_probability(ts2, ct2, neg)
            assert abs(a.limit + b.limit - 1.0) < 1e-5

    def test_report_json_round_trip(self, ts2, ct2):
        import json

        rep = limiting_probability(ts2, ct2, "(E x (= x x))")
        doc = json.loads(rep.to_json())
        assert doc["classification"] == "positive-limit"
        assert doc["k"] == 2
        assert rep.to_json() == limiting_probability(ts2, ct2, "(E x (= x x))").to_json()


class TestMonteCarlo:
    def test_deterministic_given_seed(self):
        a = monte_carlo_check("(E x (= x x))", 50, 300, seed=5)
        b = monte_carlo_check("(E x (= x x))", 50, 300, seed=5)
        assert a.hits == b.hits == 300

    def test_worker_count_does_not_change_the_stream(self):
        psi = "(E x (A y (and (not (<p y x)) (not (<v x y)))))"
        lone = monte_carlo_check(psi, 200, 12_000, seed=11, chunk=2_000, threads=1)
        pooled = monte_carlo_check(psi, 200, 12_000, seed=11, chunk=2_000, threads=4)
        assert lone.hits == pooled.hits

    def test_verdict_fields(self):
        psi = "(E x (A y (and (not (<p y x)) (not (<v x y)))))"
        rep = monte_carlo_check(psi, 300, 20_000, seed=3, limit=0.25)
        assert rep.ok is True
        assert rep.deviation == pytest.approx(abs(rep.empirical - 0.25))
        bare = monte_carlo_check(psi, 300, 1_000, seed=3)
        assert bare.limit is None and bare.ok is None and bare.deviation is None

    def test_singleton_left_block_frequency(self):
        rep = monte_carlo_check(
            singleton_left_block_sentence(), 500, 20_000, seed=9, limit=1 / 16
        )
        assert rep.ok


class TestTauPiDistribution:
    def test_single_point_left_block(self):
        out = tau_pi_distribution_check((1,), 500, 20_000, seed=2)
        assert out["valid"] and out["ok"]
        assert out["limit_fraction"] == "1/16"
        assert abs(out["exact_at_n"] - out["limit"]) < 1e-3

    def test_right_side_mirrors(self):
        out = tau_pi_distribution_check((1, 2), 400, 20_000, seed=4, side="pi")
        assert out["valid"] and out["ok"]
        assert out["limit"] == 1 / 64

    def test_forbidden_pattern_never_occurs(self):
        out = tau_pi_distribution_check((2, 3, 1), 200, 5_000, seed=1)
        assert not out["valid"]
        assert out["limit"] == 0.0 and out["empirical"] == 0.0 and out["ok"]

    def test_side_validated(self):
        with pytest.raises(ValueError):
            tau_pi_distribution_check((1,), 100, 10, side="left")


class TestCorpus:
    def test_shape_and_depths(self):
        entries = corpus()
        assert len(entries) >= 12
        for e in entries:
            assert e.classification in ("positive-limit", "exponential-decay")
            assert 0 <= e.limit <= 1
            assert qdepth(parse_sentence(e.text)) <= 3

    def test_invariance_corpus_extends(self):
        pairs = invariance_corpus()
        assert len(pairs) >= 15
        names = [n for n, _ in pairs]
        assert len(names) == len(set(names))
        for _, text in pairs:
            assert qdepth(parse_sentence(text)) <= 3

    def test_small_size_sanity(self):
        # each corpus limit claim is at least consistent with exhaustive
        # frequencies at size 7 (loose band, the limit is asymptotic)
        perms = enumerate_av231(7)
        for e in corpus():
            run = compile_formula(parse_sentence(e.text))
            freq = sum(map(run, perms)) / len(perms)
            if e.classification == "positive-limit":
                assert abs(freq - float(e.limit)) < 0.12, e.name
            else:
                assert freq < 0.35, e.name
