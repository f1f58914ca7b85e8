"""
Indicator algebra, orthogonal projections and sup norms
=======================================================

Functions on a semigroup spanned by indicators of right ideals, the family of
orthogonal projections cut out by a finite set, and two ways to get a norm.
"""
from fractions import Fraction

from piso_lab.bp import BpFunction, bp_multiply, bp_sup_norm, indicator, qa_decomposition, tau_apply
from piso_lab.semigroups import FreeMonoid, Naturals, NTimes, parse_window_spec

NX = NTimes()
print("1_2 · 1_3 =", bp_multiply(indicator(NX, 2), indicator(NX, 3)))

F2 = FreeMonoid(2)
a, b = F2.parse("a"), F2.parse("b")
print("1_a · 1_b =", bp_multiply(indicator(F2, a), indicator(F2, b)))
print("shift of 1_b by a:", tau_apply(a, indicator(F2, b)))

###############################################################################
# The projections for F = {1, 2} in N. The subset {2} is empty as a set of
# points: anything in 2 + N is also in 1 + N.

N = Naturals(1)
report = qa_decomposition(N, [(1,), (2,)])
for e in report.entries:
    print(f"  A={[x[0] for x in e.subset]!s:8s} nonzero={e.nonzero!s:5s} Q={e.Q!r}")
print("sum is 1:", report.total() == BpFunction.unit(N), " orthogonal:", report.orthogonal())

###############################################################################
# Norms: the formula only looks at nonempty projections, the window method
# evaluates on points. They agree once the window meets every projection.

N2 = Naturals(2)
f = BpFunction(N2, {(1, 0): Fraction(1), (0, 1): Fraction(1), (2, 2): Fraction(-3, 2)})
box = parse_window_spec("Nk:k=2,max=3").elements()
print("f =", f)
print("formula:", bp_sup_norm(f), " window:", bp_sup_norm(f, "window", box))
