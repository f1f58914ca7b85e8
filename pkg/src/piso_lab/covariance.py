"""Pointwise checkers for the covariance conditions and the equivalent criteria.

All checks compare exact operator outcomes basis point by basis point.  A
``fail`` comes with witnesses that are genuine inequalities; a ``pass`` only
certifies the identities on the sampled element and basis windows.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from .bp import BpFunction, indicator, tau_apply
from .operators import (
    MonomialOperator,
    RepresentationSpec,
    adjoint,
    apply,
    compose_all,
    default_basis,
    format_outcome,
    identity,
)
from .semigroups import (
    DirectProduct,
    FreeMonoid,
    Naturals,
    NTimes,
    Semigroup,
    WindowSpec,
    parse_window_spec,
)


@dataclass
class CheckReport:
    check: str
    semigroup: str
    status: str = "pass"
    witnesses: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def add(self, witness):
        self.witnesses.append(witness)
        self.status = "fail"

    def to_json(self) -> dict:
        out = {"check": self.check, "semigroup": self.semigroup,
               "status": self.status, "witnesses": self.witnesses}
        if self.details:
            out["details"] = self.details
        return out


def _first_difference(A: MonomialOperator, B, basis, zero_rhs=False):
    """First basis point where A and B (or A and 0) disagree, with both outcomes."""
    for b in basis:
        lhs = apply(A, b)
        rhs = None if zero_rhs else apply(B, b)
        if lhs != rhs:
            return b, lhs, rhs
    return None


def _witness(rep, elements, diff, **extra):
    b, lhs, rhs = diff
    C = rep.carrier
    w = {"elements": elements, "basis_point": C.format(b),
         "lhs": format_outcome(C, lhs), "rhs": format_outcome(C, rhs)}
    w.update(extra)
    return w


def _fmt(rep, *xs):
    return [rep.descriptor.format(x) for x in xs]


def windows(spec, rep: RepresentationSpec, basis_factor: int = 2):
    """(element window, basis window) for a window spec string.

    The basis window comes from the same family scaled by ``basis_factor`` so it
    contains the products and least common multiples of the tested pairs.
    """
    if isinstance(spec, str):
        spec = parse_window_spec(spec)
    elements = spec.elements()
    return elements, default_basis(rep, spec.scaled(basis_factor).elements())


def check_piso_rep(rep: RepresentationSpec, elements, basis) -> CheckReport:
    """V_e = 1, V_xV_y = V_{xy}, V_xV_x*V_x = V_x on the basis window."""
    D = rep.descriptor
    report = CheckReport("piso_rep", str(D))
    one = identity(rep.carrier)
    diff = _first_difference(rep.assign(D.identity), one, basis)
    if diff:
        report.add(_witness(rep, _fmt(rep, D.identity), diff, relation="unital"))
    for x, y in itertools.product(elements, repeat=2):
        diff = _first_difference(compose_all(rep(x), rep(y)), rep(D.multiply(x, y)), basis)
        if diff:
            report.add(_witness(rep, _fmt(rep, x, y), diff, relation="homomorphism"))
    for x in elements:
        Vx = rep(x)
        diff = _first_difference(compose_all(Vx, adjoint(Vx), Vx), Vx, basis)
        if diff:
            report.add(_witness(rep, _fmt(rep, x), diff, relation="partial_isometry"))
    return report


def check_right_nica(rep: RepresentationSpec, elements, basis) -> CheckReport:
    """V_x*V_xV_y*V_y = V_z*V_z when Px ∩ Py = Pz, and 0 when it is empty."""
    D = rep.descriptor
    report = CheckReport("right_nica", str(D))
    for x, y in itertools.product(elements, repeat=2):
        Vx, Vy = rep(x), rep(y)
        lhs = compose_all(adjoint(Vx), Vx, adjoint(Vy), Vy)
        z = D.left_lcm(x, y)
        if z is None:
            diff = _first_difference(lhs, None, basis, zero_rhs=True)
        else:
            Vz = rep(z)
            diff = _first_difference(lhs, compose_all(adjoint(Vz), Vz), basis)
        if diff:
            report.add(_witness(rep, _fmt(rep, x, y), diff))
    return report


def check_left_nica(rep: RepresentationSpec, elements, basis) -> CheckReport:
    """V_rV_r*V_sV_s* = V_tV_t* when rP ∩ sP = tP, and 0 when it is empty."""
    D = rep.descriptor
    report = CheckReport("left_nica", str(D))
    for r, s in itertools.product(elements, repeat=2):
        Vr, Vs = rep(r), rep(s)
        lhs = compose_all(Vr, adjoint(Vr), Vs, adjoint(Vs))
        t = D.right_lcm(r, s)
        if t is None:
            diff = _first_difference(lhs, None, basis, zero_rhs=True)
        else:
            Vt = rep(t)
            diff = _first_difference(lhs, compose_all(Vt, adjoint(Vt)), basis)
        if diff:
            report.add(_witness(rep, _fmt(rep, r, s), diff))
    return report


def check_covariant_pair(rep: RepresentationSpec, elements, generators, basis) -> CheckReport:
    """Covariance of (π, V) for the system (B_P, P, τ).

    For each window element x and generator f:
      π(τ_x(f)) = V_x π(f) V_x*,   V_x*V_x π(f) = π(f) V_x*V_x,
    and for each x:  V_xV_x* = π(1_x).
    """
    if rep.diag_fn is None:
        raise ValueError(f"representation {rep.kind!r} has no diagonal map")
    D = rep.descriptor
    report = CheckReport("covariant_pair", str(D))
    for x in elements:
        Vx = rep(x)
        Vxh = adjoint(Vx)
        for f in generators:
            pf = rep.diag(f)
            diff = _first_difference(rep.diag(tau_apply(x, f)), compose_all(Vx, pf, Vxh), basis)
            if diff:
                report.add(_witness(rep, _fmt(rep, x) + [repr(f)], diff, relation="action"))
            diff = _first_difference(compose_all(Vxh, Vx, pf), compose_all(pf, Vxh, Vx), basis)
            if diff:
                report.add(_witness(rep, _fmt(rep, x) + [repr(f)], diff, relation="commutation"))
        diff = _first_difference(compose_all(Vx, Vxh), rep.diag(indicator(D, x)), basis)
        if diff:
            report.add(_witness(rep, _fmt(rep, x), diff, relation="range"))
    return report


def check_halmos(rep: RepresentationSpec, elements, basis) -> CheckReport:
    """(V_x*V_x)(V_yV_y*) = (V_yV_y*)(V_x*V_x) whenever V_xV_y is a partial isometry."""
    D = rep.descriptor
    report = CheckReport("halmos", str(D))
    for x, y in itertools.product(elements, repeat=2):
        Vx, Vy = rep(x), rep(y)
        Vxy = compose_all(Vx, Vy)
        if _first_difference(compose_all(Vxy, adjoint(Vxy), Vxy), Vxy, basis):
            continue
        a = compose_all(adjoint(Vx), Vx, Vy, adjoint(Vy))
        b = compose_all(Vy, adjoint(Vy), adjoint(Vx), Vx)
        diff = _first_difference(a, b, basis)
        if diff:
            report.add(_witness(rep, _fmt(rep, x, y), diff))
    return report


# -- characterization audits -------------------------------------------------

def _orthogonal_projections(rep, projections, basis, name):
    """Pairwise products of distinct projections must vanish."""
    report = CheckReport(name, str(rep.descriptor))
    for (i, Pi), (j, Pj) in itertools.permutations(projections, 2):
        diff = _first_difference(compose_all(Pi, Pj), None, basis, zero_rhs=True)
        if diff:
            report.add(_witness(rep, [i, j], diff))
    return report


def _merge(name, D, *reports):
    out = CheckReport(name, str(D))
    for r in reports:
        for w in r.witnesses:
            out.add(dict(w, check=r.check))
    return out


def _coprime_commutation(rep, elements, basis, bound):
    report = CheckReport("coprime_commutation", str(rep.descriptor))
    nums = [m for m in elements if m <= bound]
    for m, n in itertools.product(nums, repeat=2):
        if math.gcd(m, n) != 1:
            continue
        Vm, Vn = rep(m), rep(n)
        diff = _first_difference(compose_all(adjoint(Vm), Vn), compose_all(Vn, adjoint(Vm)), basis)
        if diff:
            report.add(_witness(rep, _fmt(rep, m, n), diff))
    return report


def _is_n2(D):
    if isinstance(D, Naturals):
        return D.k == 2
    return (isinstance(D, DirectProduct) and len(D.factors) == 2
            and all(f == Naturals(1) for f in D.factors))


def _n2_units(D):
    if isinstance(D, Naturals):
        return (1, 0), (0, 1)
    return ((1,), (0,)), ((0,), (1,))


def _n2_coords(D, x):
    if isinstance(D, Naturals):
        return x
    return x[0][0], x[1][0]


def _power_pair(rep, elements, basis, power_bound):
    """*-commuting power partial isometries V = U_(1,0), W = U_(0,1) with U_(m,n) = V^mW^n."""
    D = rep.descriptor
    e1, e2 = _n2_units(D)
    Vop, Wop = rep(e1), rep(e2)
    report = CheckReport("power_pair", str(D))
    for name, T in (("V", Vop), ("W", Wop)):
        for n in range(power_bound + 1):
            Tn = compose_all(*([T] * n)) if n else identity(rep.carrier)
            diff = _first_difference(compose_all(Tn, adjoint(Tn), Tn), Tn, basis)
            if diff:
                report.add(_witness(rep, [f"{name}^{n}"], diff, relation="power_partial_isometry"))
    for lhs, rhs, rel in (
        (compose_all(Vop, Wop), compose_all(Wop, Vop), "VW=WV"),
        (compose_all(adjoint(Vop), Wop), compose_all(Wop, adjoint(Vop)), "V*W=WV*"),
    ):
        diff = _first_difference(lhs, rhs, basis)
        if diff:
            report.add(_witness(rep, ["V", "W"], diff, relation=rel))
    for x in elements:
        m, n = _n2_coords(D, x)
        word = [Vop] * m + [Wop] * n
        target = compose_all(*word) if word else identity(rep.carrier)
        diff = _first_difference(rep(x), target, basis)
        if diff:
            report.add(_witness(rep, _fmt(rep, x), diff, relation="U=V^mW^n"))
    return report


AUDIT_KINDS = ("free_right", "free_left", "ntimes_bicov", "n2_bicov")


def criterion_equivalence_audit(rep: RepresentationSpec, kind: str, elements, basis,
                                coprime_bound: int = 36, power_bound: int = 4) -> CheckReport:
    """Evaluate both sides of a characterization and report whether the verdicts agree.

    ``free_right``   orthogonal initial projections  vs  right Nica covariance
    ``free_left``    orthogonal range projections    vs  left Nica covariance
    ``ntimes_bicov`` V_m*V_n = V_nV_m* for coprime m, n  vs  bicovariance
    ``n2_bicov``     *-commuting power partial isometries  vs  bicovariance
    The audit passes when the two verdicts agree.
    """
    D = rep.descriptor
    if kind in ("free_right", "free_left"):
        if not isinstance(D, FreeMonoid):
            raise ValueError(f"{kind} audit needs a free monoid, got {D}")
        gens = [D.generator(i) for i in range(1, D.n + 1)]
        if kind == "free_right":
            projs = [(D.format(a), compose_all(adjoint(rep(a)), rep(a))) for a in gens]
            criterion = _orthogonal_projections(rep, projs, basis, "orthogonal_initial_projections")
            direct = check_right_nica(rep, elements, basis)
        else:
            projs = [(D.format(a), compose_all(rep(a), adjoint(rep(a)))) for a in gens]
            criterion = _orthogonal_projections(rep, projs, basis, "orthogonal_range_projections")
            direct = check_left_nica(rep, elements, basis)
    elif kind == "ntimes_bicov":
        if not isinstance(D, NTimes):
            raise ValueError(f"{kind} audit needs N^x, got {D}")
        criterion = _coprime_commutation(rep, elements, basis, coprime_bound)
        direct = _merge("bicovariance", D, check_right_nica(rep, elements, basis),
                        check_left_nica(rep, elements, basis))
    elif kind == "n2_bicov":
        if not _is_n2(D):
            raise ValueError(f"{kind} audit needs N^2, got {D}")
        criterion = _power_pair(rep, elements, basis, power_bound)
        direct = _merge("bicovariance", D, check_right_nica(rep, elements, basis),
                        check_left_nica(rep, elements, basis))
    else:
        raise ValueError(f"unknown audit kind {kind!r}")
    agree = criterion.passed == direct.passed
    report = CheckReport(f"audit_{kind}", str(D))
    report.details = {"criterion": criterion.status, "direct": direct.status, "agree": agree}
    if not agree:
        report.add({"elements": [], "basis_point": "",
                    "lhs": f"criterion {criterion.status}", "rhs": f"direct {direct.status}"})
    report.criterion_report = criterion
    report.direct_report = direct
    return report


# -- products ----------------------------------------------------------------

class CommutationError(ValueError):
    def __init__(self, message, witness):
        super().__init__(message)
        self.witness = witness


def product_rep(repP: RepresentationSpec, repQ: RepresentationSpec, windowP, windowQ, basis) -> RepresentationSpec:
    """U_(p,s) = V_pW_s for *-commuting representations V of P and W of Q."""
    if repP.carrier != repQ.carrier:
        raise ValueError("both representations must act on the same carrier")
    for p, s in itertools.product(windowP, windowQ):
        Vp, Ws = repP(p), repQ(s)
        for lhs, rhs, rel in ((compose_all(Vp, Ws), compose_all(Ws, Vp), "VW=WV"),
                              (compose_all(adjoint(Vp), Ws), compose_all(Ws, adjoint(Vp)), "V*W=WV*")):
            diff = _first_difference(lhs, rhs, basis)
            if diff:
                w = {"elements": [repP.descriptor.format(p), repQ.descriptor.format(s)],
                     "basis_point": repP.carrier.format(diff[0]),
                     "lhs": format_outcome(repP.carrier, diff[1]),
                     "rhs": format_outcome(repP.carrier, diff[2]), "relation": rel}
                raise CommutationError(f"representations do not *-commute ({rel})", w)
    D = DirectProduct((repP.descriptor, repQ.descriptor))
    rep = RepresentationSpec(
        f"product({repP.kind},{repQ.kind})", D, repP.carrier,
        lambda x: compose_all(repP(x[0]), repQ(x[1])))
    rep.factors = (repP, repQ)
    return rep


def decompose_product(U: RepresentationSpec):
    """(p ↦ U_(p,e), s ↦ U_(e,s)) for a representation of a two-factor product."""
    D = U.descriptor
    P, Q = D.factors
    left = RepresentationSpec(f"{U.kind}|left", P, U.carrier, lambda p: U((p, Q.identity)))
    right = RepresentationSpec(f"{U.kind}|right", Q, U.carrier, lambda s: U((P.identity, s)))
    return left, right
