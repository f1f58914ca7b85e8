"""
Multiplicative orders, summand counts and the odometer
======================================================
"""
from piso_lab.padic import (
    BetaContext,
    GroupAlgebraElement,
    OdometerPoint,
    bd_invariants,
    beta_apply,
    coset_count,
    fourier_probe,
    mult_order,
    odometer_orbit,
    stability_exponent,
)

# the order of q mod p^l stays flat up to L, then grows by a factor p per step
p, q = 7, 2
L = stability_exponent(p, q)
print(f"p={p} q={q} L={L}:", [mult_order(q, p ** l) for l in range(1, 6)])

# 1093 is a Wieferich prime, so the order does not grow at the first step
print("L for (1093, 2):", stability_exponent(1093, 2))

for p, q in [(5, 3), (7, 11), (7, 2), (11, 3)]:
    inv = bd_invariants(p, q)
    counts = [coset_count(p, k, q) for k in range(inv.L, inv.L + 4)]
    print(f"({p},{q}) count={inv.count} supernatural={inv.supernatural.format()} cosets for k>=L: {counts}")

###############################################################################
# The odometer adds one to the first digit and carries to the right.

start = OdometerPoint((1, 2, 0, 0), 2, 3)
print([pt.digits for pt in odometer_orbit(start, 3)])

###############################################################################
# The averaging action on a finite cyclic group algebra, and its Fourier side.

ctx = BetaContext(3, 5, 2, 1)
img = beta_apply(ctx, (1, 0), GroupAlgebraElement.u(ctx.M, 0))
print("image of u_0:", img.to_json())
print("idempotent:", img * img == img)
print("Fourier probe:", fourier_probe(ctx, (1, 1)))
