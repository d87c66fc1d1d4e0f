import json

import pytest

from toto231.perms import decompose, enumerate_av231
from toto231.typesystem import (
    ClosureError,
    build_type_system,
    scc_partition,
    to_dot,
    to_json,
    verify_composition_lemma,
)


def all_avoiders(max_n):
    for n in range(max_n + 1):
        yield from enumerate_av231(n)


class TestDepthOne:
    def test_exactly_two_types(self, ts1):
        assert ts1.ntypes == 2
        assert ts1.reps == ((), (1,))

    def test_empty_type_is_its_own_class(self, ts1):
        assert ts1.type_of(()) == ts1.empty_type
        for sigma in all_avoiders(6):
            if sigma:
                assert ts1.type_of(sigma) == 1 - ts1.empty_type

    def test_composition_never_lands_on_empty(self, ts1):
        ne = 1 - ts1.empty_type
        assert all(t == ne for row in ts1.H for t in row)

    def test_star_is_the_nonempty_class(self, ts1):
        assert ts1.star == frozenset({1 - ts1.empty_type})
        assert ts1.empty_type in ts1.bullet


class TestDepthTwo:
    def test_partitions_small_avoiders(self, ts2):
        # avoiders up to the seed size realize exactly the types whose
        # representative fits inside the seed; the remaining types were
        # discovered during closure and carry larger representatives
        seen = set()
        for sigma in all_avoiders(ts2.seed_size):
            seen.add(ts2.type_of(sigma))
        small = {t for t, rep in enumerate(ts2.reps) if len(rep) <= ts2.seed_size}
        assert seen == small
        assert seen | {ts2.type_of(rep) for rep in ts2.reps} == set(range(ts2.ntypes))

    def test_composition_table_matches_decomposition(self, ts2):
        for sigma in all_avoiders(7):
            if not sigma:
                continue
            tau, pi = decompose(sigma)
            assert ts2.type_of(sigma) == ts2.H[ts2.type_of(tau)][ts2.type_of(pi)]

    def test_singleton_type(self, ts2):
        e = ts2.empty_type
        assert ts2.H[e][e] == ts2.type_of((1,))

    def test_closed_table(self, ts2):
        T = ts2.ntypes
        assert len(ts2.H) == T
        assert all(len(row) == T and all(0 <= t < T for t in row) for row in ts2.H)

    def test_empty_type_never_composed(self, ts2):
        assert all(t != ts2.empty_type for row in ts2.H for t in row)

    def test_edges_derived_from_table(self, ts2):
        edges = set()
        for u in range(ts2.ntypes):
            for v in range(ts2.ntypes):
                t = ts2.H[u][v]
                edges.add((u, t))
                edges.add((v, t))
        assert ts2.edges == frozenset(edges)

    def test_star_bullet_partition(self, ts2):
        assert ts2.star | ts2.bullet == frozenset(range(ts2.ntypes))
        assert not (ts2.star & ts2.bullet)
        assert ts2.empty_type in ts2.bullet
        star, bullet, _ = scc_partition(ts2)
        assert (star, bullet) == (ts2.star, ts2.bullet)

    def test_reps_have_their_own_type(self, ts2):
        for i, rep in enumerate(ts2.reps):
            assert ts2.type_of(rep) == i

    def test_deterministic_rebuild(self, ts2):
        again = build_type_system(2)
        assert again.fingerprints == ts2.fingerprints
        assert again.reps == ts2.reps
        assert again.H == ts2.H


class TestSccPartition:
    def test_two_cycle_with_sink(self):
        star, bullet, cond = scc_partition({(0, 1), (1, 0), (1, 2), (2, 2)}, nvert=3)
        assert star == frozenset({2})
        assert bullet == frozenset({0, 1})
        assert len(cond) == 1

    def test_non_unique_terminal_rejected(self):
        with pytest.raises(AssertionError, match="terminal"):
            scc_partition({(0, 1)}, nvert=3)

    def test_self_loops_ignored_for_condensation(self):
        star, bullet, cond = scc_partition({(0, 0), (0, 1), (1, 1)}, nvert=2)
        assert star == frozenset({1})
        assert bullet == frozenset({0})
        # vertex self-loops must not turn into condensation self-loops,
        # or the terminal component would stop looking terminal
        assert len(cond) == 1
        assert cond[0][0] != cond[0][1]


class TestCompositionLemma:
    def test_exhaustive_pairs(self, ts2):
        report = verify_composition_lemma(ts2)
        assert report.ok
        assert report.checked == 529  # (1+1+2+5+14)^2 component pairs
        assert report.violations == ()

    def test_sampled_pairs(self, ts2):
        report = verify_composition_lemma(ts2, trials=200, seed=7)
        assert report.ok
        assert report.checked > 529


class TestExports:
    def test_json_shape_and_determinism(self, ts2):
        doc = json.loads(to_json(ts2))
        assert doc["k"] == 2
        assert len(doc["types"]) == ts2.ntypes
        assert all(set(t) == {"id", "rep", "star"} for t in doc["types"])
        assert len(doc["H"]) == ts2.ntypes
        assert to_json(ts2) == to_json(ts2)

    def test_dot_marks_star(self, ts1):
        dot = to_dot(ts1)
        assert dot.startswith("digraph")
        assert "box" in dot


class TestFailurePaths:
    def test_rep_cap_exhaustion(self):
        with pytest.raises(ClosureError):
            build_type_system(2, seed_size=2, rep_cap=3, max_seed_size=2)

    def test_type_of_rejects_oversized(self, ts1):
        with pytest.raises(ValueError):
            ts1.type_of(tuple(range(1, 302)), cap_n=300)
