"""Hitting any target probability with an explicit event.

Weights 4^(-k-1), each available 2 Cat_k times, satisfy the subsum
condition that lets a greedy scan land within epsilon of any target in
[0,1].  Targets above one half go through the complemented event, which
keeps the construction to a handful of small patterns.  The resulting
event "tau in F or pi in F'" is a first-order sentence.
"""

from fractions import Fraction

from toto231.formulas import models, unparse
from toto231.kakeya import (
    emit_event_sentence,
    event_holds,
    greedy_subsum,
    kakeya_condition_ok,
)
from toto231.perms import enumerate_av231, format_perm

print(f"subsum condition verified through level 30: {kakeya_condition_ok()}")

print()
print(f"{'target':>7s} {'achieved':>12s} {'patterns':>9s} {'comp':>5s}")
for j in range(1, 10):
    spec = greedy_subsum(Fraction(j, 10), Fraction(1, 10**4))
    npat = len(spec.F) + len(spec.Fprime)
    print(f"{j/10:7.2f} {float(spec.limit):12.6f} {npat:9d} {str(spec.complement):>5s}")

print()
spec = greedy_subsum(Fraction(1, 4), Fraction(1, 10**6))
psi = emit_event_sentence(spec)
print("target 1/4 is exact: F = {empty}, F' = {}")
print(f"  sentence: {unparse(psi)}")
hits = [p for p in enumerate_av231(4) if models(p, psi)]
print(f"  satisfied at n=4 by: {', '.join(format_perm(p) for p in hits)}")

print()
spec = greedy_subsum(Fraction(9, 20), Fraction(1, 10**4))
psi = emit_event_sentence(spec)
print(f"target 9/20 achieves {spec.achieved} with |F|={len(spec.F)}, |F'|={len(spec.Fprime)}")
agree = sum(
    models(p, psi) == event_holds(spec, p) for n in range(8) for p in enumerate_av231(n)
)
total = sum(1 for n in range(8) for _ in enumerate_av231(n))
print(f"  sentence matches direct membership on {agree}/{total} avoiders of size < 8")
