"""Refined counting series and their analytic behavior.

Each type t carries a series T_t(z) with nonnegative coefficients
c_t(n); together they partition the Catalan numbers.  At the critical
point z = 1/4 the Jacobian of the defining system splits: the bullet
block is strictly subcritical while the full matrix reaches radius one,
which is what makes every star type inherit the Catalan growth rate
4^n n^{-3/2} with its own constant A_t.
"""

import math

from toto231.perms import catalan
from toto231.series import (
    bullet_block,
    check_dlw_conditions,
    compute_coefficients,
    estimate_A,
    estimate_kappa,
    eval_jacobian_at,
    spectral_radius,
    verify_column_sums,
    verify_conservation,
)
from toto231.typesystem import build_type_system

print("k=1, exact lanes to N=2000")
ts = build_type_system(1)
ct = compute_coefficients(ts, 2000)
verify_conservation(ts, ct)
verify_column_sums(ts, ct)
print("  conservation and column sums hold exactly")
print(f"  c_t(10) by type: { {t: ct.coeff(t, 10) for t in range(ts.ntypes)} }")
print(f"  Cat_10 = {catalan(10)}")

rep = check_dlw_conditions(ts, ct)
print(f"  analytic hypotheses: {'all pass' if rep.ok else 'FAILED'}")
for c in rep.conditions:
    print(f"    {c['condition']:15s} pass={c['pass']}")

M = eval_jacobian_at(ts, ct, 0.25)
blk = bullet_block(ts, M)
sr_full = spectral_radius(M).value
sr_bullet = spectral_radius(blk).value if blk.size else 0.0
print(f"  spectral radius at 1/4: full {sr_full:.4f}, bullet {sr_bullet:.4f}")

(t_star,) = ts.star
a_hat = estimate_A(ct, t_star)
print(f"  A estimate for the star type: {a_hat:.5f} (1/sqrt(pi) = {1/math.sqrt(math.pi):.5f})")

print()
print("k=2, scaled float lane to N=1500")
ts2 = build_type_system(2)
ct2 = compute_coefficients(ts2, 1500, exact=False)
M2 = eval_jacobian_at(ts2, ct2, 0.25)
blk2 = bullet_block(ts2, M2)
print(f"  spectral radius at 1/4: full {spectral_radius(M2).value:.4f},"
      f" bullet {spectral_radius(blk2).value:.4f}")
star_sum = sum(estimate_A(ct2, t) for t in sorted(ts2.star))
print(f"  sum of star A estimates: {star_sum:.5f}")
worst = max(estimate_kappa(ct2, t) for t in sorted(set(range(ts2.ntypes)) - ts2.star))
print(f"  worst bullet growth-rate bound: {worst:.3f} (must stay below 4)")
