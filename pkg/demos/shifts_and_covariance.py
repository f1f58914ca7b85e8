"""
Shift operators and Nica covariance
===================================

Build the canonical representation of a few semigroups, check the covariance
relations on finite windows and look at a representation that breaks them.
"""

from piso_lab.covariance import check_left_nica, check_piso_rep, check_right_nica, windows
from piso_lab.operators import W, S, apply, build_representation, compose
from piso_lab.semigroups import Naturals, parse_window_spec

N = Naturals(1)

# W_y moves ε_s down to ε_x when s = x + y, and kills the rest
print("W_2 ε_5 =", apply(W(N, 2), (5,)))
print("W_2 ε_1 =", apply(W(N, 2), (1,)))

# S_2 W_2 is the projection onto 2 + N
proj = compose(S(N, 2), W(N, 2))
print("S_2 W_2 on ε_0..ε_4:", [apply(proj, (r,)) for r in range(5)])

###############################################################################
# Covariance on windows. The basis window is the element window scaled by 2,
# so every product and LCM of tested pairs lies inside it.

for spec in ["Nk:k=2,max=4", "Free:n=2,len=3", "NTimes:primes=2,3;maxexp=2"]:
    ws = parse_window_spec(spec)
    rep = build_representation(ws.descriptor, "canonical_W")
    E, B = windows(ws, rep)
    print(f"{spec:32s} piso={check_piso_rep(rep, E, B).status} "
          f"right={check_right_nica(rep, E, B).status} ({len(E)} elements, {len(B)} basis points)")

###############################################################################
# Sending every letter of the free monoid to the same shift on l^2(N) gives a
# representation whose projections cannot separate a from b.

ws = parse_window_spec("Free:n=2,len=3")
rep = build_representation(ws.descriptor, "degenerate_free")
E, B = windows(ws, rep)
for check in (check_right_nica, check_left_nica):
    report = check(rep, E, B)
    print(report.check, report.status, "first witness:", report.witnesses[0])
