"""The diagonal algebra B_P spanned by characteristic functions of right ideals.

``BpFunction`` is a finite rational combination ``Σ λ_u 1_u`` where ``1_u`` is
the indicator of ``uP``.  Products follow ``1_u 1_v = 1_{right_lcm(u, v)}``
(zero when ``uP ∩ vP`` is empty) and the shift action is ``τ_x(1_y) = 1_{xy}``.
Since units are trivial, distinct ``u`` give linearly independent ``1_u``, so
the stored dict is a normal form and ``==`` is equality of functions.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .semigroups import DescriptorError, Semigroup, sigma, sort_key

MAX_FAMILY = 12


class FamilyTooLarge(ValueError):
    pass


def _frac(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


class BpFunction:
    __slots__ = ("descriptor", "terms")

    def __init__(self, descriptor: Semigroup, terms=None):
        self.descriptor = descriptor
        clean = {}
        for u, c in (terms or {}).items():
            c = _frac(c)
            if c:
                clean[u] = clean.get(u, 0) + c
        self.terms = {u: c for u, c in clean.items() if c}

    @classmethod
    def indicator(cls, descriptor, u, coeff=1):
        return cls(descriptor, {descriptor.check(u): coeff})

    @classmethod
    def unit(cls, descriptor):
        return cls(descriptor, {descriptor.identity: 1})

    @classmethod
    def zero(cls, descriptor):
        return cls(descriptor)

    def _same(self, other):
        if not isinstance(other, BpFunction):
            raise TypeError(f"expected BpFunction, got {type(other).__name__}")
        if other.descriptor != self.descriptor:
            raise DescriptorError(f"{self.descriptor} vs {other.descriptor}")

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, BpFunction):
            return NotImplemented
        return self.descriptor == other.descriptor and self.terms == other.terms

    def __hash__(self):
        return hash((self.descriptor, frozenset(self.terms.items())))

    def __add__(self, other):
        self._same(other)
        out = dict(self.terms)
        for u, c in other.terms.items():
            out[u] = out.get(u, 0) + c
        return BpFunction(self.descriptor, out)

    def __neg__(self):
        return BpFunction(self.descriptor, {u: -c for u, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = _frac(c)
        return BpFunction(self.descriptor, {u: c * v for u, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, BpFunction):
            return bp_multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def conjugate(self):
        # rational coefficients: conjugation is the identity
        return self

    def __call__(self, r):
        return bp_evaluate(self, r)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: sort_key(kv[0]))

    def to_json(self):
        D = self.descriptor
        return [{"u": D.format(u), "coeff": format_rational(c)} for u, c in self.sorted_terms()]

    def __repr__(self):
        if not self.terms:
            return "0"
        D = self.descriptor
        parts = []
        for u, c in self.sorted_terms():
            coef = "" if c == 1 else ("-" if c == -1 else f"{format_rational(c)}*")
            parts.append(f"{coef}1_{D.format(u)}")
        return " + ".join(parts).replace("+ -", "- ")


def format_rational(c) -> str:
    c = _frac(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def indicator(D: Semigroup, u, coeff=1) -> BpFunction:
    return BpFunction.indicator(D, u, coeff)


def bp_multiply(f: BpFunction, g: BpFunction) -> BpFunction:
    f._same(g)
    D = f.descriptor
    out = {}
    for u, a in f.terms.items():
        for v, b in g.terms.items():
            z = D.right_lcm(u, v)
            if z is not None:
                out[z] = out.get(z, 0) + a * b
    return BpFunction(D, out)


def tau_apply(x, f: BpFunction) -> BpFunction:
    """τ_x(Σ λ_y 1_y) = Σ λ_y 1_{xy}."""
    D = f.descriptor
    x = D.check(x)
    return BpFunction(D, {D.multiply(x, u): c for u, c in f.terms.items()})


def bp_evaluate(f: BpFunction, r) -> Fraction:
    D = f.descriptor
    r = D.check(r)
    total = Fraction(0)
    for u, c in f.terms.items():
        if D.right_divide(r, u) is not None:
            total += c
    return total


def _evaluate_unchecked(f: BpFunction, r):
    D = f.descriptor
    total = 0
    for u, c in f.terms.items():
        if D.right_divide(r, u) is not None:
            total += c
    return total


def product(fs: Iterable[BpFunction], D: Semigroup) -> BpFunction:
    acc = BpFunction.unit(D)
    for f in fs:
        acc = bp_multiply(acc, f)
    return acc


@dataclass
class QAEntry:
    subset: tuple
    sigma: Optional[object]
    nonzero: bool
    Q: BpFunction


@dataclass
class ProjectionFamilyReport:
    descriptor: Semigroup
    F: tuple
    entries: list

    def entry(self, subset) -> QAEntry:
        key = frozenset(subset)
        for e in self.entries:
            if frozenset(e.subset) == key:
                return e
        raise KeyError(subset)

    def total(self) -> BpFunction:
        acc = BpFunction.zero(self.descriptor)
        for e in self.entries:
            acc = acc + e.Q
        return acc

    def orthogonal(self) -> bool:
        for a, b in itertools.combinations(self.entries, 2):
            if bp_multiply(a.Q, b.Q):
                return False
        return True

    def to_json(self):
        D = self.descriptor
        return {
            "F": [D.format(x) for x in self.F],
            "entries": [
                {
                    "A": [D.format(x) for x in e.subset],
                    "sigmaA": None if e.sigma is None else D.format(e.sigma),
                    "nonzero": e.nonzero,
                    "Q": e.Q.to_json(),
                }
                for e in self.entries
            ],
        }


def _subsets(F):
    for size in range(len(F) + 1):
        yield from itertools.combinations(F, size)


def qa_decomposition(D: Semigroup, F) -> ProjectionFamilyReport:
    """Resolve the identity by the orthogonal projections Q_A, A ⊆ F.

    Q_∅ = Π (1 - 1_x), Q_F = 1_{σF}, and for proper nonempty A
    Q_A = Π_{x ∉ A} (1_{σA} - 1_{σA ∨ x}).  The ``nonzero`` flag comes from the
    membership criterion A = {x ∈ F : σA ∈ xP}, not from the expansion.
    """
    F = tuple(dict.fromkeys(D.check(x) for x in F))
    if not F:
        raise ValueError("F must be nonempty")
    if len(F) > MAX_FAMILY:
        raise FamilyTooLarge(f"|F| = {len(F)} exceeds {MAX_FAMILY}")
    one = BpFunction.unit(D)
    entries = []
    for A in _subsets(F):
        rest = [x for x in F if x not in A]
        if not A:
            sig = None
            Q = product((one - indicator(D, x) for x in F), D)
            nonzero = _evaluate_unchecked(Q, D.identity) != 0
        else:
            sig = sigma(D, A)
            if sig is None:
                Q = BpFunction.zero(D)
                nonzero = False
            else:
                L = indicator(D, sig)
                factors = []
                for x in rest:
                    z = D.right_lcm(sig, x)
                    factors.append(L - indicator(D, z) if z is not None else L)
                Q = product(factors, D) if factors else L
                members = {x for x in F if D.right_divide(sig, x) is not None}
                nonzero = members == set(A)
        entries.append(QAEntry(tuple(A), sig, nonzero, Q))
    return ProjectionFamilyReport(D, F, entries)


def bp_sup_norm(f: BpFunction, method="formula", window=None) -> Fraction:
    """Sup norm of ``f`` on P.

    ``method="formula"`` maximises |Σ_{x ∈ A} λ_x| over the subsets A of the
    support with Q_A ≠ 0; ``method="window"`` takes max |f(r)| over ``window``.
    """
    D = f.descriptor
    if method == "window":
        if window is None:
            raise ValueError("window method needs a window")
        return max((abs(_frac(_evaluate_unchecked(f, D.check(r)))) for r in window), default=Fraction(0))
    if method != "formula":
        raise ValueError(f"unknown method {method!r}")
    if not f:
        return Fraction(0)
    report = qa_decomposition(D, list(f.terms))
    best = Fraction(0)
    for e in report.entries:
        if e.nonzero:
            best = max(best, abs(sum((f.terms[x] for x in e.subset), Fraction(0))))
    return best


def norm_window(D: Semigroup, F) -> list:
    """Points that meet every nonzero Q_A for the family F: e and each σA."""
    report = qa_decomposition(D, F)
    pts = {D.identity}
    for e in report.entries:
        if e.nonzero and e.sigma is not None:
            pts.add(e.sigma)
    return sorted(pts, key=sort_key)


@dataclass
class ActionCheck:
    status: str
    witnesses: list


def check_action_left_nica(D: Semigroup, window, points=None) -> ActionCheck:
    """τ̄_x(1) τ̄_y(1) against 1_{x ∨ y} (or 0) for all window pairs.

    The symbolic product is compared with the expected indicator, and both are
    also evaluated on ``points`` (default: the window) so the check does not
    rest on the multiplication rule alone.
    """
    window = [D.check(x) for x in window]
    points = window if points is None else [D.check(r) for r in points]
    one = BpFunction.unit(D)
    witnesses = []
    for x, y in itertools.product(window, repeat=2):
        lhs = bp_multiply(tau_apply(x, one), tau_apply(y, one))
        z = D.right_lcm(x, y)
        rhs = indicator(D, z) if z is not None else BpFunction.zero(D)
        ok = lhs == rhs
        if ok:
            for r in points:
                in_x = D.right_divide(r, x) is not None
                in_y = D.right_divide(r, y) is not None
                if (in_x and in_y) != bool(_evaluate_unchecked(rhs, r)):
                    ok = False
                    break
        if not ok:
            witnesses.append({"elements": [D.format(x), D.format(y)], "lhs": repr(lhs), "rhs": repr(rhs)})
    return ActionCheck("pass" if not witnesses else "fail", witnesses)
