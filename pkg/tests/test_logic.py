"""Formulas, model checking, compiled evaluators, EF games, fingerprints."""

from __future__ import annotations

from itertools import permutations

import numpy as np
import pytest

from toto231.efgame import DUPLICATOR, SPOILER, ef_winner
from toto231.fingerprint import fingerprint, k_equivalent
from toto231.formulas import (
    And,
    Atom,
    Exists,
    FormulaSyntaxError,
    UnboundVariableError,
    compile_formula,
    compile_formula_rows,
    free_vars,
    models,
    parse_formula,
    parse_sentence,
    qdepth,
    unparse,
)
from toto231.perms import contains_pattern, enumerate_av231

PATTERN_21 = "(E x (E y (and (<p x y) (<v y x))))"

# a grab bag of sentences used to cross-check the three evaluators
SENTENCES = [
    PATTERN_21,
    "(E x (= x x))",
    "(not (E x (= x x)))",
    "(A x (= x x))",
    "(E x (A y (= y x)))",
    "(E x (A y (and (not (<p y x)) (not (<v x y)))))",
    "(E x (A y (and (not (<p y x)) (not (<v y x)))))",
    "(E x (E y (and (<p x y) (<v x y))))",
    "(A x (A y (imp (<p x y) (<v x y))))",
    "(E x (iff (<p x x) (<v x x)))",
    "(A x (E y (or (<v x y) (= x y))))",
    "(imp (E x (= x x)) (E y (A z (not (<v z y)))))",
    # inner quantifier reuses x, outer x referenced afterwards
    "(E x (and (E x (= x x)) (A w (not (<p x w)))))",
]


# ---------- parsing ----------


def test_parse_example_tree():
    f = parse_sentence(PATTERN_21)
    assert f == Exists(
        "x",
        Exists("y", And((Atom("ltP", "x", "y"), Atom("ltV", "y", "x")))),
    )


def test_parse_bytes_input():
    assert parse_sentence(PATTERN_21.encode()) == parse_sentence(PATTERN_21)


def test_unparse_roundtrip():
    for text in SENTENCES:
        f = parse_sentence(text)
        assert parse_sentence(unparse(f)) == f


def test_syntax_errors_carry_position():
    for bad in ["", "(E x", "(foo x y)", "(= x)", "(E X (= x x))", "(= x y) junk", ") "]:
        with pytest.raises(FormulaSyntaxError):
            parse_formula(bad)


def test_sentence_rejects_free_variables():
    with pytest.raises(UnboundVariableError):
        parse_sentence("(<p x y)")
    assert free_vars(parse_formula("(<p x y)")) == {"x", "y"}
    parse_sentence("(A x (= x x))")


# ---------- qdepth ----------


def test_qdepth_examples():
    assert qdepth(parse_formula("(= x x)")) == 0
    assert qdepth(parse_sentence(PATTERN_21)) == 2
    assert qdepth(parse_sentence("(not (A x (= x x)))")) == 1
    assert qdepth(parse_sentence("(imp (E x (= x x)) (E y (E z (<p y z))))")) == 2
    assert qdepth(parse_sentence("(iff (A x (= x x)) (E y (= y y)))")) == 1


# ---------- models ----------


def test_models_pattern_21():
    f = parse_sentence(PATTERN_21)
    assert models((2, 1), f) is True
    assert models((1, 2), f) is False


def test_models_empty_domain():
    assert models((), parse_sentence("(E x (= x x))")) is False
    assert models((), parse_sentence("(A x (= x x))")) is True


def test_models_env_and_unbound():
    f = parse_formula("(<v x y)")
    assert models((2, 1), f, env={"x": 1, "y": 0}) is True
    with pytest.raises(UnboundVariableError):
        models((2, 1), f, env={"x": 1})


def test_models_matches_pattern_containment():
    f = parse_sentence(PATTERN_21)
    for n in range(0, 6):
        for sigma in permutations(range(1, n + 1)):
            assert models(sigma, f) == contains_pattern(sigma, (2, 1))


# ---------- compiled evaluators ----------


def all_test_perms(max_n=5):
    out = []
    for n in range(0, max_n + 1):
        out.extend(permutations(range(1, n + 1)))
    return out


def test_compiled_backends_agree_with_models():
    perms_by_n: dict = {}
    for sigma in all_test_perms(5):
        perms_by_n.setdefault(len(sigma), []).append(sigma)
    for text in SENTENCES:
        f = parse_sentence(text)
        fast = compile_formula(f)
        rows = compile_formula_rows(f)
        for n, group in perms_by_n.items():
            want = [models(s, f) for s in group]
            assert [fast(s) for s in group] == want
            arr = np.array(group, dtype=np.int32).reshape(len(group), n)
            assert list(rows(arr).astype(bool)) == want


def test_compiled_rejects_open_formulas():
    with pytest.raises(UnboundVariableError):
        compile_formula(parse_formula("(<p x y)"))
    with pytest.raises(UnboundVariableError):
        compile_formula_rows(parse_formula("(<p x y)"))


def test_row_backend_handles_variable_reuse():
    # distinguishes correct shadowing from a clobbered flat scope
    f = parse_sentence("(E x (and (E x (= x x)) (A w (not (<p x w)))))")
    arr = np.array([[1, 2]], dtype=np.int32)
    assert bool(compile_formula_rows(f)(arr)[0]) is True
    assert compile_formula(f)((1, 2)) is True
    assert models((1, 2), f) is True


# ---------- EF games ----------


def test_ef_examples():
    assert ef_winner((1, 2), (2, 1), 1) == DUPLICATOR
    assert ef_winner((1, 2), (2, 1), 2) == SPOILER
    for sigma in [(), (1,), (2, 1, 3), (3, 1, 2, 4)]:
        for k in (1, 2, 3):
            assert ef_winner(sigma, sigma, k) == DUPLICATOR
    assert ef_winner((), (1,), 1) == SPOILER


def test_ef_caps():
    with pytest.raises(ValueError):
        ef_winner((1,), (1,), 4)
    with pytest.raises(ValueError):
        ef_winner(tuple(range(1, 9)), (1,), 2)
    assert ef_winner(tuple(range(1, 9)), tuple(range(1, 9)), 2, cap_size=8) == DUPLICATOR


# ---------- fingerprints ----------


def test_fingerprint_distinct_count_k1():
    fps = {fingerprint(s, 1) for s in all_test_perms(6)}
    assert len(fps) == 2
    assert fingerprint((), 1) not in {fingerprint(s, 1) for s in all_test_perms(6) if s}


def test_fingerprint_caps():
    with pytest.raises(ValueError):
        fingerprint((1,), 4)
    with pytest.raises(ValueError):
        fingerprint(tuple(range(1, 42)), 1)
    fingerprint(tuple(range(1, 42)), 1, cap_n=50)


def test_fingerprint_agrees_with_ef_small():
    univ = all_test_perms(4)
    fps = {k: {s: fingerprint(s, k) for s in univ} for k in (1, 2, 3)}
    for k in (1, 2, 3):
        for i, a in enumerate(univ):
            for b in univ[i:]:
                same = fps[k][a] == fps[k][b]
                assert same == (ef_winner(a, b, k) == DUPLICATOR), (a, b, k)


def test_fingerprint_agrees_with_ef_size5_sample():
    import random

    rng = random.Random(11)
    univ = [s for s in all_test_perms(5) if len(s) >= 4]
    for _ in range(50):
        a, b = rng.choice(univ), rng.choice(univ)
        for k in (1, 2, 3):
            assert k_equivalent(a, b, k) == (ef_winner(a, b, k) == DUPLICATOR)


def test_fingerprint_refines_with_rank():
    univ = all_test_perms(5)
    for k in (1, 2):
        hi = {s: fingerprint(s, k + 1) for s in univ}
        lo = {s: fingerprint(s, k) for s in univ}
        for i, a in enumerate(univ):
            for b in univ[i + 1 :]:
                if hi[a] == hi[b]:
                    assert lo[a] == lo[b]


def test_identity_types_stabilize():
    # fingerprints of 1, 12, 123, ... become eventually constant, with
    # the threshold at most 2^k
    for k in (1, 2, 3):
        bound = 2**k
        ids = [tuple(range(1, m + 1)) for m in range(bound + 4)]
        fps = [fingerprint(s, k, cap_n=50) for s in ids]
        assert fps[bound] == fps[bound + 1] == fps[bound + 2] == fps[bound + 3]
        first = next(m for m in range(bound + 1) if fps[m] == fps[bound])
        assert first <= bound


def test_av231_identity_and_decreasing_differ_k2():
    assert not k_equivalent((1, 2, 3, 4), (4, 3, 2, 1), 2)
