"""Weighted basis partial isometries on l^2(P) and on the compressed product basis.

An operator is kept as an unevaluated word of atoms and applied pointwise to
basis vectors, so nothing is ever truncated: every atom sends a basis vector
to zero or to a single rational multiple of another basis vector.

Carriers
--------
``ltwo``    basis ε_r, r ∈ B for some basis semigroup B (usually B = P).
``product`` basis ε_(r,s) with s ∈ rP.  This is l^2(P) ⊗ l^2(P) cut down by
            the projection q for the system (B_P, P, τ) with π_0 the
            multiplication representation, i.e. q ε_(r,s) = 1_r(s) ε_(r,s).

Atoms
-----
``Shift(y)``            S_y  : ε_r ↦ ε_{ry}
``CoShift(y)``          W_y  : ε_s ↦ ε_x if s = xy, else 0
``Diag(f)``             π_0(f): ε_r ↦ f(r) ε_r
``CompressedShift(x)``  V_x  : ε_(r',s) ↦ ε_(r,s) if r' = rx, else 0
``CompressedCoShift(x)``V_x* : ε_(r,s) ↦ ε_(rx,s) if s ∈ rxP, else 0
``CompressedDiag(f)``   ρ(f) : ε_(r,s) ↦ τ_r(f)(s) ε_(r,s)
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from typing import Callable, Optional

from .bp import BpFunction, _evaluate_unchecked
from .semigroups import DescriptorError, FreeMonoid, Naturals, Semigroup, opposite, sort_key


class CarrierMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Carrier:
    kind: str  # "ltwo" | "product"
    descriptor: Semigroup

    def __post_init__(self):
        if self.kind not in ("ltwo", "product"):
            raise ValueError(f"unknown carrier kind {self.kind!r}")

    def conforms(self, b) -> bool:
        D = self.descriptor
        if self.kind == "ltwo":
            return D.conforms(b)
        return (isinstance(b, tuple) and len(b) == 2 and D.conforms(b[0]) and D.conforms(b[1])
                and D.right_divide(b[1], b[0]) is not None)

    def format(self, b) -> str:
        D = self.descriptor
        if self.kind == "ltwo":
            return f"ε_{D.format(b)}"
        return f"ε_({D.format(b[0])},{D.format(b[1])})"

    def basis(self, elements) -> list:
        """Basis window built from semigroup elements (pairs s ∈ rP on the product carrier)."""
        D = self.descriptor
        elements = [D.check(x) for x in elements]
        if self.kind == "ltwo":
            return elements
        return [(r, s) for r in elements for s in elements if D.right_divide(s, r) is not None]


def ltwo(D: Semigroup) -> Carrier:
    return Carrier("ltwo", D)


def product_basis(D: Semigroup) -> Carrier:
    return Carrier("product", D)


# -- atoms -------------------------------------------------------------------
# Each atom: apply(b) -> (coeff, b') or None; adjoint() -> atom.

@dataclass(frozen=True)
class Identity:
    def apply(self, b):
        return 1, b

    def adjoint(self):
        return self

    def __str__(self):
        return "1"


@dataclass(frozen=True)
class Shift:
    D: Semigroup
    y: object

    def apply(self, b):
        return 1, self.D.multiply(b, self.y)

    def adjoint(self):
        return CoShift(self.D, self.y)

    def __str__(self):
        return f"S_{self.D.format(self.y)}"


@dataclass(frozen=True)
class CoShift:
    D: Semigroup
    y: object

    def apply(self, b):
        x = self.D.left_divide(b, self.y)
        return None if x is None else (1, x)

    def adjoint(self):
        return Shift(self.D, self.y)

    def __str__(self):
        return f"W_{self.D.format(self.y)}"


@dataclass(frozen=True)
class Diag:
    f: BpFunction

    def apply(self, b):
        c = _evaluate_unchecked(self.f, b)
        return (c, b) if c else None

    def adjoint(self):
        return Diag(self.f.conjugate())

    def __str__(self):
        return f"π({self.f!r})"


@dataclass(frozen=True)
class CompressedShift:
    D: Semigroup
    x: object

    def apply(self, b):
        r1, s = b
        r = self.D.left_divide(r1, self.x)
        return None if r is None else (1, (r, s))

    def adjoint(self):
        return CompressedCoShift(self.D, self.x)

    def __str__(self):
        return f"V_{self.D.format(self.x)}"


@dataclass(frozen=True)
class CompressedCoShift:
    D: Semigroup
    x: object

    def apply(self, b):
        r, s = b
        rx = self.D.multiply(r, self.x)
        if self.D.right_divide(s, rx) is None:
            return None
        return 1, (rx, s)

    def adjoint(self):
        return CompressedShift(self.D, self.x)

    def __str__(self):
        return f"V_{self.D.format(self.x)}*"


@dataclass(frozen=True)
class CompressedDiag:
    f: BpFunction

    def apply(self, b):
        r, s = b
        D = self.f.descriptor
        c = 0
        for u, lam in self.f.terms.items():
            if D.right_divide(s, D.multiply(r, u)) is not None:
                c += lam
        return (c, b) if c else None

    def adjoint(self):
        return CompressedDiag(self.f.conjugate())

    def __str__(self):
        return f"ρ({self.f!r})"


@dataclass(frozen=True)
class OnCoordinate:
    """Lift an l^2(P_i) atom to l^2(P_1 x ... x P_n) acting on coordinate ``index``."""

    atom: object
    index: int

    def apply(self, b):
        out = self.atom.apply(b[self.index])
        if out is None:
            return None
        c, v = out
        return c, b[:self.index] + (v,) + b[self.index + 1:]

    def adjoint(self):
        return OnCoordinate(self.atom.adjoint(), self.index)

    def __str__(self):
        return f"{self.atom}[{self.index}]"


# -- operators ---------------------------------------------------------------

@dataclass(frozen=True)
class MonomialOperator:
    carrier: Carrier
    atoms: tuple = ()

    def __call__(self, b):
        return apply(self, b)

    def __matmul__(self, other):
        return compose(self, other)

    @property
    def H(self):
        return adjoint(self)

    def __str__(self):
        return "∘".join(map(str, self.atoms)) or "1"


def identity(carrier: Carrier) -> MonomialOperator:
    return MonomialOperator(carrier, ())


def S(D, y):
    return MonomialOperator(ltwo(D), (Shift(D, D.check(y)),))


def W(D, y):
    return MonomialOperator(ltwo(D), (CoShift(D, D.check(y)),))


def diag(f: BpFunction) -> MonomialOperator:
    return MonomialOperator(ltwo(f.descriptor), (Diag(f),))


def V(D, x):
    """Compressed shift V_x = qW_xq on the product basis."""
    return MonomialOperator(product_basis(D), (CompressedShift(D, D.check(x)),))


def rho(f: BpFunction) -> MonomialOperator:
    return MonomialOperator(product_basis(f.descriptor), (CompressedDiag(f),))


def apply(A: MonomialOperator, b):
    """Evaluate the word right to left; None means the zero vector."""
    coeff = 1
    for atom in reversed(A.atoms):
        out = atom.apply(b)
        if out is None:
            return None
        c, b = out
        coeff = coeff * c
    return coeff, b


def apply_checked(A: MonomialOperator, b):
    if not A.carrier.conforms(b):
        raise CarrierMismatch(f"{b!r} is not a basis point of {A.carrier}")
    return apply(A, b)


def compose(A: MonomialOperator, B: MonomialOperator) -> MonomialOperator:
    """A∘B (apply B first)."""
    if A.carrier != B.carrier:
        raise CarrierMismatch(f"{A.carrier} vs {B.carrier}")
    return MonomialOperator(A.carrier, A.atoms + B.atoms)


def compose_all(*ops) -> MonomialOperator:
    out = ops[0]
    for op in ops[1:]:
        out = compose(out, op)
    return out


def adjoint(A: MonomialOperator) -> MonomialOperator:
    return MonomialOperator(A.carrier, tuple(a.adjoint() for a in reversed(A.atoms)))


def format_outcome(carrier: Carrier, out) -> str:
    if out is None:
        return "0"
    c, b = out
    pt = carrier.format(b)
    if c == 1:
        return pt
    return f"{c}·{pt}"


@dataclass
class EqualityReport:
    equal: bool
    witnesses: list = field(default_factory=list)


def equal_on_window(A: MonomialOperator, B: MonomialOperator, window, max_witnesses=None) -> EqualityReport:
    """Pointwise comparison on a basis window.

    Evaluation is exact, so a witness is a genuine inequality; equality is only
    certified on the sampled points.
    """
    if A.carrier != B.carrier:
        raise CarrierMismatch(f"{A.carrier} vs {B.carrier}")
    witnesses = []
    for b in window:
        lhs, rhs = apply(A, b), apply(B, b)
        if lhs != rhs:
            witnesses.append({"basis_point": A.carrier.format(b),
                              "lhs": format_outcome(A.carrier, lhs),
                              "rhs": format_outcome(A.carrier, rhs)})
            if max_witnesses and len(witnesses) >= max_witnesses:
                break
    return EqualityReport(not witnesses, witnesses)


def pairing_holds(A: MonomialOperator, window) -> bool:
    """<A b, b'> = conj <b, A* b'> for all b, b' in the window."""
    Ah = adjoint(A)
    for b, b2 in itertools.product(window, repeat=2):
        out = apply(A, b)
        lhs = out[0] if out is not None and out[1] == b2 else 0
        out2 = apply(Ah, b2)
        rhs = out2[0] if out2 is not None and out2[1] == b else 0
        if lhs != rhs:
            return False
    return True


# -- representations ---------------------------------------------------------

@dataclass
class RepresentationSpec:
    """x ↦ V_x on a carrier, optionally with the diagonal map π of a covariant pair."""

    kind: str
    descriptor: Semigroup
    carrier: Carrier
    assign_fn: Callable
    diag_fn: Optional[Callable] = None
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def assign(self, x) -> MonomialOperator:
        op = self._cache.get(x)
        if op is None:
            op = self.assign_fn(x)
            self._cache[x] = op
        return op

    __call__ = assign

    def diag(self, f: BpFunction) -> MonomialOperator:
        if self.diag_fn is None:
            raise ValueError(f"representation {self.kind!r} has no diagonal map")
        return self.diag_fn(f)

    def with_diag(self, diag_fn) -> "RepresentationSpec":
        return replace(self, diag_fn=diag_fn, _cache={})


def _scalar_diag(D):
    def diag_fn(f):
        if set(f.terms) - {D.identity}:
            raise ValueError("this representation only carries scalar multiples of 1_e")
        return MonomialOperator(ltwo(D), (Diag(f),))
    return diag_fn


def build_representation(D: Semigroup, kind: str) -> RepresentationSpec:
    """Built-in representations.

    ``canonical_W``   x ↦ W_x on l^2(P); diag is the trivial system (scalars)
    ``canonical_S``   x ↦ S_x on l^2(P), a representation of the opposite P^o
    ``compressed``    x ↦ V_x = qW_xq with ρ = qπq for (B_P, P, τ)
    ``degenerate_free`` each letter of F_n^+ ↦ W_1 on l^2(N); a word w ↦ W_|w|
    """
    if kind == "canonical_W":
        return RepresentationSpec(kind, D, ltwo(D), lambda x: W(D, x), _scalar_diag(D))
    if kind == "canonical_S":
        return RepresentationSpec(kind, opposite(D), ltwo(D), lambda x: S(D, x))
    if kind == "compressed":
        return RepresentationSpec(kind, D, product_basis(D), lambda x: V(D, x), rho)
    if kind == "degenerate_free":
        if not isinstance(D, FreeMonoid):
            raise DescriptorError("degenerate_free needs a free monoid")
        N = Naturals(1)
        return RepresentationSpec(kind, D, ltwo(N), lambda w: W(N, (len(w),)))
    raise ValueError(f"unknown representation kind {kind!r}")


def embed_coordinate(rep: RepresentationSpec, product: Semigroup, index: int) -> RepresentationSpec:
    """Let an l^2(P_i) representation act on one coordinate of l^2(P_1 x ... x P_n)."""
    if rep.carrier.kind != "ltwo" or rep.carrier.descriptor != product.factors[index]:
        raise CarrierMismatch("coordinate embedding needs an l^2 representation of that factor")
    carrier = ltwo(product)

    def assign(x):
        op = rep.assign(x)
        return MonomialOperator(carrier, tuple(OnCoordinate(a, index) for a in op.atoms))
    return RepresentationSpec(f"{rep.kind}[{index}]", rep.descriptor, carrier, assign)


def default_basis(rep: RepresentationSpec, elements) -> list:
    """Basis window matched to an element window of the representation's semigroup."""
    C = rep.carrier
    if C.descriptor == rep.descriptor or C.descriptor == opposite(rep.descriptor):
        return sorted(C.basis(elements), key=sort_key)
    if rep.kind == "degenerate_free":
        longest = max((len(w) for w in elements), default=0)
        return [(i,) for i in range(2 * longest + 2)]
    raise ValueError("no default basis for this representation")
