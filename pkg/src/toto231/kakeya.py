"""Events with prescribed limiting probability.

Over uniform 231-avoiders, the chance that the block left of the maximum
realizes a fixed pattern rho tends to 4^(-|rho|-1), and likewise for the
block right of the maximum.  Unioning such events over finite pattern
sets F (left) and F' (right) gives an event whose limit is the subsum

    Sigma_k (|F_k| + |F'_k|) * 4^(-k-1),

drawn from a weight pool of multiplicity 2*Cat_k per size k.  The pool's
weights are non-increasing with total mass 1, and each weight is at most
the mass behind it (the subsum-completeness condition), so a greedy scan
never strands more than the next weight of defect.  The tail of the pool
thins like level^(-1/2), though, so subsums close to the full mass need
impractically deep truncation; targets above 1/2 are therefore built as
the complement of the event for 1 - target, which keeps every pattern
set small and every sum exact.

The event itself is first-order: "the left block realizes exactly rho"
says there are |rho| elements before the maximum in exactly rho's joint
order, and nothing else is before the maximum.  Emitted sentences are
built in a guarded nesting (each new witness constrained as soon as it
is bound) so naive evaluators prune instead of sweeping whole cartesian
powers.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction

from .formulas import (
    EQV,
    LTP,
    LTV,
    Atom,
    Exists,
    Forall,
    Formula,
    Implies,
    Not,
    conj,
    disj,
)
from .perms import avoids_231, catalan, decompose, enumerate_av231, format_perm


def _lex_av231(vals):
    """All 231-avoiding arrangements of the sorted value tuple, lazily,
    in lexicographic order.

    With first value v, avoidance forces every smaller value before
    every larger one, and both blocks must avoid 231 themselves; values
    are tried in increasing order, so the stream is lexicographic and a
    short prefix costs nothing even when the level is astronomically
    large.
    """
    if not vals:
        yield ()
        return
    for i, v in enumerate(vals):
        for a in _lex_av231(vals[:i]):
            for b in _lex_av231(vals[i + 1 :]):
                yield (v,) + a + b


def lex_first_av231(k: int, m: int) -> list:
    """The first m 231-avoiders of size k in lex order."""
    return list(itertools.islice(_lex_av231(tuple(range(1, k + 1))), m))


class InfeasibleTargetError(ValueError):
    """The target needs deeper truncation than the level cap allows."""


def kakeya_condition_ok(max_level: int = 30) -> bool:
    """Each weight is bounded by the total mass after it, exactly.

    Weight 4^(-k-1) repeats 2*Cat_k times, the full series sums to 1,
    and it is enough to check the last copy at each level against the
    tail below it: 4^(-K-1) <= 1 - Sigma_{k<=K} 2 Cat_k 4^(-k-1).
    """
    mass = Fraction(0)
    for k in range(max_level + 1):
        mass += 2 * catalan(k) * Fraction(1, 4 ** (k + 1))
        if Fraction(1, 4 ** (k + 1)) > 1 - mass:
            return False
    return True


@dataclass(frozen=True)
class EventSpec:
    """Union event (tau in F) or (pi in F'), possibly complemented.

    ``achieved`` is the exact subsum over F and F'; the event's limiting
    probability is ``limit``, which differs from ``achieved`` only when
    ``complement`` is set.
    """

    F: tuple
    Fprime: tuple
    achieved: Fraction
    complement: bool = False

    def __post_init__(self):
        if not 0 <= self.achieved <= 1:
            raise ValueError("achieved sum must lie in [0, 1]")
        for k, (nf, nfp) in self.sizes().items():
            if max(nf, nfp) > catalan(k):
                raise ValueError(f"more than Cat_{k} patterns of size {k}")
        for p in itertools.chain(self.F, self.Fprime):
            if not avoids_231(p):
                raise ValueError(f"pattern {format_perm(p)} contains 231")

    @property
    def limit(self) -> Fraction:
        return 1 - self.achieved if self.complement else self.achieved

    def sizes(self):
        out: dict = {}
        for p in self.F:
            out.setdefault(len(p), [0, 0])[0] += 1
        for p in self.Fprime:
            out.setdefault(len(p), [0, 0])[1] += 1
        return out

    def to_json(self) -> str:
        doc = {
            "F": [format_perm(p) for p in self.F],
            "Fprime": [format_perm(p) for p in self.Fprime],
            "achieved": f"{self.achieved.numerator}/{self.achieved.denominator}",
            "complement": self.complement,
            "limit": f"{self.limit.numerator}/{self.limit.denominator}",
        }
        return json.dumps(doc, sort_keys=True, indent=1)

    @staticmethod
    def recomputed_sum(F, Fprime) -> Fraction:
        return sum(
            (Fraction(1, 4 ** (len(p) + 1)) for p in itertools.chain(F, Fprime)),
            Fraction(0),
        )


def greedy_subsum(
    target, epsilon, *, max_level: int = 12, allow_complement: bool = True
) -> EventSpec:
    """Scan weights largest first, take whatever fits, stop inside epsilon.

    Selected multiplicities at each size become the lexicographically
    first permutations, filling F before F'.  The running sum never
    exceeds its target and the scan stops at the first weight that puts
    the defect under epsilon, so reruns are reproducible.

    A target above 1/2 is handed to the complementary event: the scan
    runs against 1 - target and the returned EventSpec is flagged, so the limit
    approaches the target from above instead.  Any target at most 1/2
    is met by level ceil(log4(1/epsilon)) at the latest; without the
    complement route, targets near 1 are genuinely out of reach (the
    defect would only clear epsilon at truncation depths growing like
    the inverse square of the remaining mass) and raise.
    """
    target = Fraction(target)
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    if not 0 <= target <= 1:
        raise ValueError("target must lie in [0, 1]")
    if allow_complement and target > Fraction(1, 2):
        inner = greedy_subsum(
            1 - target, epsilon, max_level=max_level, allow_complement=False
        )
        return EventSpec(
            F=inner.F, Fprime=inner.Fprime, achieved=inner.achieved, complement=True
        )
    assert kakeya_condition_ok()

    running = Fraction(0)
    F: list = []
    Fprime: list = []
    for k in range(max_level + 1):
        defect = target - running
        if defect < epsilon:
            break
        w = Fraction(1, 4 ** (k + 1))
        fits = int(defect / w)
        stop_at = int((defect - epsilon) / w) + 1
        cat = catalan(k)
        m = min(2 * cat, fits, stop_at)
        if m == 0:
            continue
        pool = lex_first_av231(k, min(m, cat))
        F.extend(pool)
        if m > cat:
            Fprime.extend(pool[: m - cat])
        running += m * w
    if target - running >= epsilon:
        # the weight tail thins like 1/sqrt(level), so targets too close
        # to the full mass need impractically deep truncation
        raise InfeasibleTargetError(
            f"defect {float(target - running):.4g} >= epsilon at level cap {max_level}"
        )
    return EventSpec(F=tuple(F), Fprime=tuple(Fprime), achieved=running)


# ---------- sentence emission ----------


def _maximum_is(m: str) -> Formula:
    return Forall("y", Not(Atom(LTV, m, "y")))


def _block_matches(rho, *, left: bool) -> Formula:
    """The elements on one side of the maximum realize exactly rho.

    Witnesses x1..xr are introduced one at a time, each guarded by its
    position constraints and by the value comparisons against the
    witnesses already bound; the innermost scope adds the coverage
    clause (no side element beyond the witnesses).
    """
    r = len(rho)
    names = [f"x{i + 1}" for i in range(r)]

    def side_of(v: str) -> Formula:
        return Atom(LTP, v, "m") if left else Atom(LTP, "m", v)

    if r:
        coverage = Forall(
            "y", Implies(side_of("y"), disj(*(Atom(EQV, "y", x) for x in names)))
        )
    else:
        coverage = Forall("y", Not(side_of("y")))

    body = coverage
    for i in reversed(range(r)):
        guards = [side_of(names[i])]
        if i > 0:
            guards.append(Atom(LTP, names[i - 1], names[i]))
        for j in range(i):
            if rho[j] < rho[i]:
                guards.append(Atom(LTV, names[j], names[i]))
            else:
                guards.append(Atom(LTV, names[i], names[j]))
        body = Exists(names[i], conj(*guards, body))
    return Exists("m", conj(_maximum_is("m"), body))


_FALSUM = Exists("x", Not(Atom(EQV, "x", "x")))


def emit_event_sentence(spec: EventSpec) -> Formula:
    """A sentence that holds on a nonempty 231-avoider exactly when its
    left block pattern is in F or its right block pattern is in F',
    negated outright for complemented specs."""
    blocks = [_block_matches(rho, left=True) for rho in spec.F]
    blocks += [_block_matches(rho, left=False) for rho in spec.Fprime]
    base = disj(*blocks) if blocks else _FALSUM
    return Not(base) if spec.complement else base


def event_holds(spec: EventSpec, sigma) -> bool:
    """Direct decomposition-based membership, the oracle the sentence is
    checked against."""
    if not sigma:
        return spec.complement
    tau, pi = decompose(sigma)
    hit = tau in set(spec.F) or pi in set(spec.Fprime)
    return hit != spec.complement


# ---------- the density grid ----------


def verify_density_grid(
    targets,
    epsilon,
    *,
    oracle_max: int = 0,
    mc_n: int = 0,
    mc_samples: int = 0,
    seed: int = 0,
):
    """Build a spec per target and report exact and observed behavior.

    Each row records the exact limit and its signed gap to the target;
    with ``oracle_max`` set, the emitted sentence is additionally
    evaluated on every avoider of size <= oracle_max and compared
    against direct decomposition membership; with ``mc_samples`` set, a
    Monte-Carlo spot check runs at size ``mc_n``.
    """
    from .formulas import compile_formula
    from .inference import monte_carlo_check

    epsilon = Fraction(epsilon)
    rows = []
    block_cache: dict = {}
    for target in targets:
        target = Fraction(target)
        spec = greedy_subsum(target, epsilon)
        row = {
            "target": f"{target.numerator}/{target.denominator}",
            "achieved": f"{spec.limit.numerator}/{spec.limit.denominator}",
            "complement": spec.complement,
            "defect": float(target - spec.limit),
            "within_epsilon": abs(target - spec.limit) < epsilon,
            "recomputed_ok": EventSpec.recomputed_sum(spec.F, spec.Fprime)
            == spec.achieved,
        }
        if oracle_max:
            mismatches = 0
            both = 0
            # both disjuncts firing forces |tau| + |pi| = n - 1 to split
            # across the two sets, impossible once n clears their joint
            # size reach
            reach = (
                max((len(p) for p in spec.F), default=0)
                + max((len(p) for p in spec.Fprime), default=0)
                + 1
            )
            fset, pset = set(spec.F), set(spec.Fprime)
            for n in range(oracle_max + 1):
                for sigma in enumerate_av231(n):
                    want = event_holds(spec, sigma)
                    fired = False
                    for side, rho in itertools.chain(
                        (("L", p) for p in spec.F), (("R", p) for p in spec.Fprime)
                    ):
                        key = (side, rho)
                        if key not in block_cache:
                            block_cache[key] = compile_formula(
                                _block_matches(rho, left=side == "L")
                            )
                        if block_cache[key](sigma):
                            fired = True
                            break
                    got = fired != spec.complement
                    if got != want:
                        mismatches += 1
                    if sigma and n > reach:
                        tau, pi = decompose(sigma)
                        if tau in fset and pi in pset:
                            both += 1
            row["oracle_mismatches"] = mismatches
            row["incompatible_overlaps"] = both
        if mc_samples:
            mc = monte_carlo_check(
                emit_event_sentence(spec),
                mc_n,
                mc_samples,
                seed=seed,
                limit=float(spec.limit),
            )
            row["mc_empirical"] = mc.empirical
            row["mc_ok"] = mc.ok
        rows.append(row)
    return rows
