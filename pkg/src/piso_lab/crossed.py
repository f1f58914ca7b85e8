"""Symbolic arithmetic on spanning monomials i_P(x)* i_A(f) i_P(y).

Two coefficient systems are supported:

``"bp"``       A = B_P with the shift action τ.  A monomial is normalised by
               absorbing the range projections, f ← f·1_x·1_y.
``"trivial"``  A = C with the identity action; f must be a scalar multiple of 1_e.

Products follow the Nica rule: M(x,a,y)·M(s,b,t) vanishes when Py ∩ Ps is
empty, and otherwise, writing the left LCM as z = ry = qs,

    M(x,a,y)·M(s,b,t) = M(rx, τ_r(a·1_y)·τ_q(1_s·b), qt).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .bp import BpFunction, bp_multiply, format_rational, indicator, tau_apply
from .operators import RepresentationSpec, adjoint, apply, compose_all
from .semigroups import DescriptorError, Semigroup, sort_key

SYSTEMS = ("bp", "trivial")


@dataclass(frozen=True)
class SpanningMonomial:
    x: object
    f: BpFunction
    y: object
    system: str = "bp"

    @property
    def is_zero(self):
        return not self.f


def cp_normalize(m: SpanningMonomial) -> SpanningMonomial:
    if m.system == "trivial":
        return m
    D = m.f.descriptor
    f = bp_multiply(bp_multiply(m.f, indicator(D, m.x)), indicator(D, m.y))
    return SpanningMonomial(m.x, f, m.y, m.system)


class CrossedProductElement:
    """Finite sum Σ M(x, f_{x,y}, y), keyed by (x, y)."""

    __slots__ = ("descriptor", "system", "terms")

    def __init__(self, descriptor: Semigroup, terms=None, system="bp"):
        if system not in SYSTEMS:
            raise ValueError(f"unknown system {system!r}")
        self.descriptor = descriptor
        self.system = system
        out = {}
        for (x, y), f in (terms or {}).items():
            if f.descriptor != descriptor:
                raise DescriptorError(f"{f.descriptor} vs {descriptor}")
            if system == "trivial" and set(f.terms) - {descriptor.identity}:
                raise ValueError("trivial system only allows scalar multiples of 1_e")
            m = cp_normalize(SpanningMonomial(x, f, y, system))
            if (x, y) in out:
                out[(x, y)] = out[(x, y)] + m.f
            else:
                out[(x, y)] = m.f
        self.terms = {k: f for k, f in out.items() if f}

    @classmethod
    def monomial(cls, D, x, f=None, y=None, system="bp"):
        x = D.check(x)
        y = D.identity if y is None else D.check(y)
        if f is None:
            f = BpFunction.unit(D)
        elif not isinstance(f, BpFunction):
            f = BpFunction.unit(D).scale(f)
        return cls(D, {(x, y): f}, system)

    @classmethod
    def unit(cls, D, system="bp"):
        return cls.monomial(D, D.identity, None, D.identity, system)

    def _same(self, other):
        if self.descriptor != other.descriptor or self.system != other.system:
            raise DescriptorError("crossed-product elements over different systems")

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, CrossedProductElement):
            return NotImplemented
        return (self.descriptor == other.descriptor and self.system == other.system
                and self.terms == other.terms)

    def __add__(self, other):
        self._same(other)
        out = dict(self.terms)
        for k, f in other.terms.items():
            out[k] = out[k] + f if k in out else f
        return CrossedProductElement(self.descriptor, out, self.system)

    def scale(self, c):
        return CrossedProductElement(self.descriptor, {k: f.scale(c) for k, f in self.terms.items()}, self.system)

    def __mul__(self, other):
        if isinstance(other, CrossedProductElement):
            return cp_multiply(self, other)
        return self.scale(other)

    def monomials(self):
        for (x, y), f in sorted(self.terms.items(), key=lambda kv: sort_key(kv[0])):
            yield SpanningMonomial(x, f, y, self.system)

    def to_json(self):
        D = self.descriptor
        return [{"x": D.format(m.x), "y": D.format(m.y), "f": m.f.to_json(), "coeff": "1"}
                for m in self.monomials()]

    def __repr__(self):
        if not self.terms:
            return "0"
        D = self.descriptor
        return " + ".join(f"M({D.format(m.x)}, {m.f!r}, {D.format(m.y)})" for m in self.monomials())


def monomial(D, x, f=None, y=None, system="bp") -> CrossedProductElement:
    return CrossedProductElement.monomial(D, x, f, y, system)


def _multiply_monomials(D, system, x, a, y, s, b, t):
    z = D.left_lcm(y, s)
    if z is None:
        return None
    r = D.left_divide(z, y)
    q = D.left_divide(z, s)
    if system == "trivial":
        f = bp_multiply(a, b)
    else:
        c = bp_multiply(a, indicator(D, y))
        d = bp_multiply(indicator(D, s), b)
        f = bp_multiply(tau_apply(r, c), tau_apply(q, d))
    return D.multiply(r, x), f, D.multiply(q, t)


def cp_multiply(u: CrossedProductElement, v: CrossedProductElement) -> CrossedProductElement:
    u._same(v)
    D = u.descriptor
    out = {}
    for (x, y), a in u.terms.items():
        for (s, t), b in v.terms.items():
            res = _multiply_monomials(D, u.system, x, a, y, s, b, t)
            if res is None:
                continue
            left, f, right = res
            key = (left, right)
            out[key] = out[key] + f if key in out else f
    return CrossedProductElement(D, out, u.system)


def cp_adjoint(u: CrossedProductElement) -> CrossedProductElement:
    return CrossedProductElement(u.descriptor, {(y, x): f.conjugate() for (x, y), f in u.terms.items()}, u.system)


def _monomial_operator(rep: RepresentationSpec, x, f, y):
    return compose_all(adjoint(rep(x)), rep.diag(f), rep(y))


def cp_represent_vector(u: CrossedProductElement, rep: RepresentationSpec, vector: dict) -> dict:
    """Apply the represented element to a finitely supported vector {basis point: coeff}."""
    if rep.descriptor != u.descriptor:
        raise DescriptorError(f"{rep.descriptor} vs {u.descriptor}")
    out = {}
    for (x, y), f in u.terms.items():
        op = _monomial_operator(rep, x, f, y)
        for b, c in vector.items():
            res = apply(op, b)
            if res is not None:
                k, b2 = res
                out[b2] = out.get(b2, 0) + c * k
    return {b: c for b, c in out.items() if c}


def cp_represent(u: CrossedProductElement, rep: RepresentationSpec, b) -> list:
    """Σ V_x* ρ(f) V_y applied to ε_b, as a sorted list of (coeff, basis point)."""
    vec = cp_represent_vector(u, rep, {b: 1})
    return [(c, p) for p, c in sorted(vec.items(), key=lambda kv: sort_key(kv[0]))]


def element_from_json(D: Semigroup, data, system="bp") -> CrossedProductElement:
    """Inverse of ``to_json``; ``coeff`` scales the monomial's function."""
    total = CrossedProductElement(D, {}, system)
    for item in data:
        f = BpFunction(D, {D.parse(t["u"]): Fraction(t["coeff"]) for t in item.get("f", [])})
        f = f.scale(Fraction(item.get("coeff", "1")))
        total = total + CrossedProductElement(D, {(D.parse(item["x"]), D.parse(item["y"])): f}, system)
    return total


def format_vector(rep: RepresentationSpec, vec: list) -> list:
    return [f"{format_rational(c)}·{rep.carrier.format(b)}" for c, b in vec]
