import random
from fractions import Fraction

import pytest

from piso_lab.bp import BpFunction, indicator
from piso_lab.crossed import (
    CrossedProductElement,
    SpanningMonomial,
    cp_adjoint,
    cp_multiply,
    cp_normalize,
    cp_represent,
    cp_represent_vector,
    element_from_json,
    monomial,
)
from piso_lab.operators import build_representation, default_basis
from piso_lab.semigroups import DescriptorError, FreeMonoid, Naturals, parse_window_spec

N1, F2 = Naturals(1), FreeMonoid(2)


def n(k):
    return (k,)


def test_normalize_examples():
    m = cp_normalize(SpanningMonomial(n(1), indicator(N1, n(0)), n(0)))
    assert m.f == indicator(N1, n(1))
    unit = SpanningMonomial(N1.identity, BpFunction.unit(N1), N1.identity)
    assert cp_normalize(unit) == unit
    z = cp_normalize(SpanningMonomial(F2.parse("a"), indicator(F2, F2.parse("b")), F2.identity))
    assert z.is_zero


def test_multiply_examples():
    u = monomial(N1, n(0), None, n(1))
    v = monomial(N1, n(2), None, n(0))
    assert repr(cp_multiply(u, v)) == "M(1, 1_2, 0)"
    a = monomial(F2, F2.identity, None, F2.parse("a"))
    b = monomial(F2, F2.parse("b"), None, F2.identity)
    assert not cp_multiply(a, b)
    x = monomial(F2, F2.parse("ab"), indicator(F2, F2.parse("a")), F2.parse("b"))
    assert cp_multiply(CrossedProductElement.unit(F2), x) == x == x * CrossedProductElement.unit(F2)


def test_adjoint_example():
    m = monomial(N1, n(1), indicator(N1, n(2)), n(0))
    assert repr(cp_adjoint(m)) == "M(0, 1_2, 1)"
    assert cp_adjoint(cp_adjoint(m)) == m


def test_represent_unit_is_identity():
    rep = build_representation(N1, "compressed")
    b = (n(1), n(3))
    assert cp_represent(CrossedProductElement.unit(N1), rep, b) == [(1, b)]


def test_trivial_system():
    u = monomial(N1, n(0), None, n(1), system="trivial")
    v = monomial(N1, n(2), Fraction(3), n(0), system="trivial")
    # no shift of the coefficient in the trivial system
    assert repr(cp_multiply(u, v)) == "M(1, 3*1_0, 0)"
    with pytest.raises(ValueError):
        monomial(N1, n(0), indicator(N1, n(1)), n(0), system="trivial")
    with pytest.raises(DescriptorError):
        cp_multiply(u, monomial(N1, n(0)))


def test_trivial_system_matches_canonical_operators():
    rng = random.Random(3)
    rep = build_representation(N1, "canonical_W")
    basis = [n(r) for r in range(12)]
    xs = [n(r) for r in range(4)]
    for _ in range(100):
        u = monomial(N1, rng.choice(xs), Fraction(rng.randint(1, 3)), rng.choice(xs), system="trivial")
        v = monomial(N1, rng.choice(xs), Fraction(rng.randint(1, 3)), rng.choice(xs), system="trivial")
        for b in basis:
            composed = cp_represent_vector(u, rep, cp_represent_vector(v, rep, {b: 1}))
            assert cp_represent_vector(cp_multiply(u, v), rep, {b: 1}) == composed


def test_json_roundtrip():
    u = monomial(N1, n(1), indicator(N1, n(2)).scale(Fraction(-1, 2)), n(0)) + monomial(N1, n(0))
    assert element_from_json(N1, u.to_json()) == u
    data = [{"x": "0", "y": "1", "f": [{"u": "0", "coeff": "1"}], "coeff": "2"}]
    assert element_from_json(N1, data) == monomial(N1, n(0), BpFunction.unit(N1).scale(2), n(1))


def test_addition_cancels():
    m = monomial(N1, n(1), indicator(N1, n(1)), n(0))
    assert not (m + m.scale(-1))


@pytest.mark.parametrize("spec", ["Nk:k=1,max=3", "Free:n=2,len=2"])
def test_adjoint_is_antimultiplicative(spec):
    rng = random.Random(11)
    ws = parse_window_spec(spec)
    D, xs = ws.descriptor, ws.elements()
    for _ in range(100):
        u = monomial(D, rng.choice(xs), indicator(D, rng.choice(xs)), rng.choice(xs))
        v = monomial(D, rng.choice(xs), indicator(D, rng.choice(xs)), rng.choice(xs))
        assert cp_adjoint(cp_multiply(u, v)) == cp_multiply(cp_adjoint(v), cp_adjoint(u))


@pytest.mark.parametrize("spec", ["Nk:k=1,max=2", "Free:n=2,len=2"])
def test_normalisation_does_not_change_operator(spec):
    ws = parse_window_spec(spec)
    D, xs = ws.descriptor, ws.elements()
    rep = build_representation(D, "compressed")
    basis = default_basis(rep, ws.scaled(2).elements())
    for x in xs:
        for y in xs:
            raw = BpFunction.unit(D)
            norm = cp_normalize(SpanningMonomial(x, raw, y)).f
            ops = [rep(x).H @ rep.diag(g) @ rep(y) for g in (raw, norm)]
            for b in basis:
                assert ops[0](b) == ops[1](b)
