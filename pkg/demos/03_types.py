"""Build the type systems and look at their structure.

Types are depth-k equivalence classes.  The transition graph has a
unique terminal strongly connected component (the star types); all
remaining types, the empty permutation's among them, are transient.
"""

from toto231.perms import enumerate_av231, format_perm
from toto231.typesystem import build_type_system, scc_partition, to_dot, to_json

for k in (1, 2):
    ts = build_type_system(k)
    star, bullet, cond = scc_partition(ts)
    print(f"k={k}: {ts.ntypes} types, {len(star)} star, {len(bullet)} bullet")
    print(f"  empty permutation has type {ts.type_of(())}, star={ts.type_of(()) in star}")
    print(f"  condensation has {len(cond)} edges between components")

ts = build_type_system(1)
print()
print("the k=1 system in full")
print("  representatives:", ", ".join(repr(format_perm(r)) for r in ts.reps))
print("  composition table H:", ts.H)

print()
print("types realized by avoiders of each size (k=2)")
ts2 = build_type_system(2)
for n in range(7):
    seen = {ts2.type_of(p) for p in enumerate_av231(n)}
    print(f"  n={n}: {len(seen)} distinct types")

dot = to_dot(ts)
print()
print("DOT export of the k=1 condensation")
for line in dot.splitlines():
    print(f"  {line}")
print()
print(f"JSON export is {len(to_json(ts2))} bytes for k=2")
