"""Limiting probabilities of first-order events over random 231-avoiders.

A sentence of quantifier depth k has constant truth on each depth-k
type, so its limiting probability is the sum of the star-type shares of
the types it holds on; bullet types contribute at exponentially small
order.  This module glues the type system to the coefficient tables and
adds Monte-Carlo machinery for empirical cross-checks.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .formulas import (
    Formula,
    compile_formula,
    compile_formula_rows,
    parse_sentence,
    qdepth,
    unparse,
)
from .kakeya import EventSpec, emit_event_sentence
from .perms import avoids_231, catalan, sample_av231_batch
from .series import CoeffTable, estimate_kappa, estimate_lambda
from .typesystem import TypeSystem


def _as_formula(psi) -> Formula:
    if isinstance(psi, (str, bytes)):
        return parse_sentence(psi)
    return psi


def types_of_sentence(ts: TypeSystem, psi) -> frozenset:
    """TypeIds on which the sentence holds, decided on representatives.

    Requires qdepth(psi) <= ts.k: a depth-k sentence cannot distinguish
    members of one depth-k type, so one representative decides the whole
    class.
    """
    psi = _as_formula(psi)
    d = qdepth(psi)
    if d > ts.k:
        raise ValueError(f"sentence has depth {d}, system only refines depth {ts.k}")
    check = compile_formula(psi)
    return frozenset(i for i, rep in enumerate(ts.reps) if check(rep))


@dataclass(frozen=True)
class LimitReport:
    sentence: str
    k: int
    type_ids: tuple
    limit: float
    error: float
    classification: str  # positive-limit | exponential-decay
    kappa_bound: float | None

    def to_json(self) -> str:
        doc = {
            "sentence": self.sentence,
            "k": self.k,
            "type_ids": list(self.type_ids),
            "limit": self.limit,
            "error": self.error,
            "classification": self.classification,
            "kappa_bound": self.kappa_bound,
        }
        return json.dumps(doc, sort_keys=True, indent=1)


def limiting_probability(ts: TypeSystem, coeffs: CoeffTable, psi) -> LimitReport:
    """The limit of P[sigma_n satisfies psi] over uniform 231-avoiders.

    Star types hit by the sentence contribute their shares; if only
    bullet types are hit the limit is zero and the decay rate is bounded
    by the largest bullet growth rate involved (kappa < 4 means the
    probability vanishes like (kappa/4)^n up to polynomial factors).
    """
    psi = _as_formula(psi)
    hits = types_of_sentence(ts, psi)
    star_hits = sorted(hits & ts.star)
    if star_hits:
        shares = [estimate_lambda(ts, coeffs, t) for t in star_hits]
        limit = sum(v for v, _ in shares)
        error = sum(e for _, e in shares)
        classification, kappa_bound = "positive-limit", None
    else:
        limit = 0.0
        error = max((coeffs.lam(t, coeffs.N) for t in sorted(hits)), default=0.0)
        classification = "exponential-decay"
        kappa_bound = max((estimate_kappa(coeffs, t) for t in sorted(hits)), default=0.0)
    return LimitReport(
        sentence=unparse(psi),
        k=ts.k,
        type_ids=tuple(sorted(hits)),
        limit=float(limit),
        error=float(error),
        classification=classification,
        kappa_bound=kappa_bound,
    )


# ---------- Monte Carlo ----------


def _thread_count(threads: int | None) -> int:
    if threads is not None:
        return max(1, threads)
    env = os.environ.get("TOTO_THREADS", "")
    try:
        return max(1, int(env))
    except ValueError:
        return 1


@dataclass(frozen=True)
class MCReport:
    sentence: str
    n: int
    samples: int
    seed: int
    hits: int
    empirical: float
    stderr: float
    limit: float | None
    deviation: float | None
    ok: bool | None

    def to_json(self) -> str:
        doc = {k: getattr(self, k) for k in self.__dataclass_fields__}
        return json.dumps(doc, sort_keys=True, indent=1)


def monte_carlo_check(
    psi,
    n: int,
    samples: int,
    *,
    seed: int = 0,
    limit: float | None = None,
    chunk: int = 10_000,
    threads: int | None = None,
) -> MCReport:
    """Empirical satisfaction frequency at size n.

    Sampling is chunked with one derived seed per chunk, so the result
    depends only on (n, samples, seed, chunk), not on the worker count
    or scheduling.  With a reference limit the report also carries the
    usual three-sigma-plus-bias verdict.
    """
    psi = _as_formula(psi)
    run = compile_formula_rows(psi)
    jobs = []
    done = 0
    i = 0
    while done < samples:
        m = min(chunk, samples - done)
        jobs.append((n, m, seed + 1_000_003 * i))
        done += m
        i += 1

    def one(job):
        nn, m, s = job
        return int(run(sample_av231_batch(nn, m, s)).sum())

    workers = _thread_count(threads)
    if workers > 1 and len(jobs) > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=workers) as pool:
            hits = sum(pool.map(one, jobs))
    else:
        hits = sum(one(j) for j in jobs)

    emp = hits / samples
    stderr = math.sqrt(max(emp * (1.0 - emp), 1e-300) / samples)
    deviation = ok = None
    if limit is not None:
        deviation = abs(emp - limit)
        ok = deviation <= 3.0 * stderr + 0.02
    return MCReport(
        sentence=unparse(psi),
        n=n,
        samples=samples,
        seed=seed,
        hits=hits,
        empirical=emp,
        stderr=stderr,
        limit=limit,
        deviation=deviation,
        ok=ok,
    )


# ---------- the left-block pattern distribution ----------


def tau_pi_distribution_check(
    rho, n: int, samples: int, *, seed: int = 0, side: str = "tau"
) -> dict:
    """P[the block beside the maximum realizes rho] three ways: the exact
    ratio Cat_{n-|rho|-1}/Cat_n at size n, its limit 4^(-|rho|-1), and an
    empirical frequency.  Patterns outside Av(231) are flagged invalid
    (they never occur)."""
    rho = tuple(rho)
    r = len(rho)
    if side not in ("tau", "pi"):
        raise ValueError("side must be 'tau' or 'pi'")
    valid = avoids_231(rho)
    limit = Fraction(1, 4 ** (r + 1)) if valid else Fraction(0)
    exact = (
        Fraction(catalan(n - r - 1), catalan(n)) if valid and n >= r + 1 else Fraction(0)
    )

    arr = sample_av231_batch(n, samples, seed)
    mx = np.argmax(arr, axis=1)
    hits = 0
    want = np.array(rho, dtype=np.int64)
    for i in np.nonzero(mx == (r if side == "tau" else n - 1 - r))[0]:
        block = arr[i, : r] if side == "tau" else arr[i, n - r :]
        if r == 0 or (np.argsort(np.argsort(block)) + 1 == want).all():
            hits += 1
    emp = hits / samples
    stderr = math.sqrt(max(emp * (1.0 - emp), 1e-300) / samples)
    return {
        "rho": list(rho),
        "side": side,
        "valid": valid,
        "limit": float(limit),
        "limit_fraction": f"{limit.numerator}/{limit.denominator}",
        "exact_at_n": float(exact),
        "empirical": emp,
        "stderr": stderr,
        "ok": abs(emp - float(exact)) <= 3.0 * stderr + 0.02,
    }


# ---------- the reference corpus ----------


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    text: str
    limit: Fraction
    classification: str


# depth <= 2, all with known limits (shares of uniform 231-avoiders)
_DEPTH2 = (
    ("nonempty", "(E x (= x x))", Fraction(1), "positive-limit"),
    ("empty", "(not (E x (= x x)))", Fraction(0), "exponential-decay"),
    ("exactly-one", "(E x (A y (= x y)))", Fraction(0), "exponential-decay"),
    ("tautology", "(A x (= x x))", Fraction(1), "positive-limit"),
    (
        "descent-pattern",
        "(E x (E y (and (<p x y) (<v y x))))",
        Fraction(1),
        "positive-limit",
    ),
    (
        "rise-pattern",
        "(E x (E y (and (<p x y) (<v x y))))",
        Fraction(1),
        "positive-limit",
    ),
    (
        "max-first",
        "(E x (A y (and (not (<p y x)) (not (<v x y)))))",
        Fraction(1, 4),
        "positive-limit",
    ),
    (
        "min-first",
        "(E x (A y (and (not (<p y x)) (not (<v y x)))))",
        Fraction(1, 4),
        "positive-limit",
    ),
    (
        "max-last",
        "(E x (A y (and (not (<p x y)) (not (<v x y)))))",
        Fraction(1, 4),
        "positive-limit",
    ),
    (
        "min-last",
        "(E x (A y (and (not (<p x y)) (not (<v y x)))))",
        Fraction(0),
        "exponential-decay",
    ),
    (
        "not-max-last",
        "(not (E x (A y (and (not (<p x y)) (not (<v x y))))))",
        Fraction(3, 4),
        "positive-limit",
    ),
    (
        "not-min-first",
        "(not (E x (A y (and (not (<p y x)) (not (<v y x))))))",
        Fraction(3, 4),
        "positive-limit",
    ),
)


def singleton_left_block_sentence() -> Formula:
    """The event 'the block left of the maximum is the one-point pattern',
    limit 1/16."""
    spec = EventSpec(F=((1,),), Fprime=(), achieved=Fraction(1, 16))
    return emit_event_sentence(spec)


def corpus() -> tuple:
    """Sentences with known limits, for Monte-Carlo and decay checks."""
    entries = [CorpusEntry(n, t, l, c) for n, t, l, c in _DEPTH2]
    entries.append(
        CorpusEntry(
            "singleton-left-block",
            unparse(singleton_left_block_sentence()),
            Fraction(1, 16),
            "positive-limit",
        )
    )
    return tuple(entries)


# extra depth-3 sentences for type-invariance checks (no limit claims)
_DEPTH3_EXTRAS = (
    (
        "rising-triple",
        "(E x (E y (E z (and (<p x y) (<p y z) (<v x y) (<v y z)))))",
    ),
    (
        "forbidden-pattern",
        "(E x (E y (E z (and (<p x y) (<p y z) (<v z x) (<v x y)))))",
    ),
    (
        "adjacent-descent",
        "(E x (E y (and (<p x y) (<v y x) (not (E z (and (<p x z) (<p z y)))))))",
    ),
)


def invariance_corpus() -> tuple:
    """(name, sentence) pairs of depth <= 3 whose truth must be constant
    on every matching-depth fingerprint class."""
    out = [(e.name, e.text) for e in corpus()]
    out.extend(_DEPTH3_EXTRAS)
    return tuple(out)
