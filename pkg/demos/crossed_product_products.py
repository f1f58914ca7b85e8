"""
Multiplying spanning monomials
==============================

Symbolic products of monomials V_x* π(f) V_y, checked against the operators
they stand for on a window of the compressed representation.
"""
import random
from fractions import Fraction

from piso_lab.bp import BpFunction, indicator
from piso_lab.crossed import cp_adjoint, cp_multiply, cp_represent_vector, monomial
from piso_lab.operators import build_representation, default_basis
from piso_lab.semigroups import FreeMonoid, Naturals, parse_window_spec

N = Naturals(1)
u = monomial(N, (0,), None, (1,))
v = monomial(N, (2,), None, (0,))
print(u, "*", v, "=", cp_multiply(u, v))
print("adjoint of the product:", cp_adjoint(cp_multiply(u, v)))

F2 = FreeMonoid(2)
print("disjoint ideals give zero:",
      cp_multiply(monomial(F2, (), None, F2.parse("a")), monomial(F2, F2.parse("b"))))

###############################################################################
# A quick random comparison with operator composition.

ws = parse_window_spec("Free:n=2,len=2")
D, xs = ws.descriptor, ws.elements()
rep = build_representation(D, "compressed")
basis = default_basis(rep, ws.scaled(2).elements())
rng = random.Random(0)

mismatches = 0
for _ in range(200):
    m1, m2 = (monomial(D, rng.choice(xs), indicator(D, rng.choice(xs)).scale(Fraction(rng.randint(1, 3))),
                       rng.choice(xs)) for _ in range(2))
    prod = cp_multiply(m1, m2)
    for pt in basis:
        lhs = cp_represent_vector(prod, rep, {pt: 1})
        rhs = cp_represent_vector(m1, rep, cp_represent_vector(m2, rep, {pt: 1}))
        mismatches += lhs != rhs
print(f"200 random pairs on {len(basis)} basis points: {mismatches} mismatches")
