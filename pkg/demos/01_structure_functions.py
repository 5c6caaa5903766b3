"""A tour of the structure functions.

The exchange of two currents is controlled by the Taylor series f^{i,j}(z).
Its log has a rigid shape: the n-th coefficient is (1/n)(1-q^n)(1-t^{-n})
times a Laurent polynomial in s^n plus a tail over (1 - p^{Nn}).  This demo
prints exact coefficients at a generic point, shows the product identities
that drive the induction proof of the quadratic relations, and demonstrates
the resummation of a dressed contraction into a finite gamma product.
"""

from deformedw.context import DEFAULT_GENERIC_POINTS, ScalarCtx
from deformedw.structfn import (check_f_identities, contraction_logkernel,
                                f_logkernel, f_series, g_series, gamma_at)

q, t = DEFAULT_GENERIC_POINTS[0]
ctx = ScalarCtx.generic(3, q, t)
print(f"generic point: q = {q}, t = {t}, p = {ctx.p}")

print("\nf^{1,2} coefficients for N = 3 (exact, in Q(s), s^2 = p):")
win = f_series(ctx, 1, 2, 4)
for ell in range(5):
    print(f"  x^{ell}: {win.coefficient((ell,))}")

print("\ngamma at half-integer powers of p (the ladder of the delta terms):")
for a in (3, 5, 7):
    print(f"  gamma(p^{a}/2) = {gamma_at(ctx, a)}")

print("\nZ-algebra structure function g^{1,1} for N = 2, level 2 "
      "(cyclotomic coefficients):")
g = g_series(2, 2, 1, 1, 6)
print(" ", [str(g.coefficient((n,))) for n in range(7)])

print("\nresummation: f^{1,1} exactly cancels the equal-flavor contraction")
lk = f_logkernel(3, 1, 1) + contraction_logkernel(3, 1, 1)
print("  dressed log-kernel resums to:", lk.resum(3).factors or "{} (i.e. 1)")
lk2 = f_logkernel(3, 1, 1) + contraction_logkernel(3, 1, 2)
print("  cross-flavor dressing resums to gamma factors:", lk2.resum(3).factors)

print("\nproduct identities (both signs, all indices in 1..N), order 12:")
results = check_f_identities(ctx, 3, 12)
bad = [r for r in results if not r[1]]
print(f"  {len(results)} identities checked, {len(bad)} failures")
