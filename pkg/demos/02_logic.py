"""Sentences over two orders, and what size-k equivalence means.

A permutation is a finite model carrying the position order and the
value order.  Sentences are written as s-expressions; this script
evaluates a few by hand, then shows that the fingerprint relation and
the k-round game relation agree pair by pair.
"""

from toto231.efgame import ef_winner
from toto231.fingerprint import fingerprint, k_equivalent
from toto231.formulas import compile_formula, models, parse_sentence, qdepth, unparse
from toto231.perms import enumerate_av231, format_perm

inversion = parse_sentence("(E x (E y (and (<p x y) (<v y x))))")
max_first = parse_sentence("(E x (A y (and (not (<p y x)) (not (<v x y)))))")

print("two sentences")
for psi in (inversion, max_first):
    print(f"  depth {qdepth(psi)}: {unparse(psi)}")

print()
print("evaluation on the avoiders of size 3")
check = compile_formula(max_first)
for p in enumerate_av231(3):
    assert check(p) == models(p, max_first)
    marks = "inversion" if models(p, inversion) else "sorted"
    lead = "max-first" if check(p) else ""
    print(f"  {format_perm(p):8s} {marks:10s} {lead}")

print()
print("fingerprints versus the k-round game, sizes up to 4")
perms = [p for n in range(5) for p in enumerate_av231(n)]
agree = disagreements = 0
for i, a in enumerate(perms):
    for b in perms[i + 1 :]:
        for k in (1, 2, 3):
            same = fingerprint(a, k) == fingerprint(b, k)
            winner = ef_winner(a, b, k)
            if same == (winner == "Duplicator"):
                agree += 1
            else:
                disagreements += 1
print(f"  {agree} agreements, {disagreements} disagreements")

a, b = (1, 2, 3), (2, 1, 3)
print()
print(f"{format_perm(a)} and {format_perm(b)}:")
for k in (1, 2):
    print(f"  k={k}: equivalent={k_equivalent(a, b, k)}, winner={ef_winner(a, b, k)}")
