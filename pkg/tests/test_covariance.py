import pytest

from piso_lab.bp import indicator
from piso_lab.covariance import (
    CommutationError,
    check_covariant_pair,
    check_halmos,
    check_left_nica,
    check_piso_rep,
    check_right_nica,
    criterion_equivalence_audit,
    decompose_product,
    product_rep,
    windows,
)
from piso_lab.operators import (
    build_representation,
    embed_coordinate,
    equal_on_window,
    identity,
)
from piso_lab.semigroups import DirectProduct, Naturals, parse_window_spec


def setup(spec, kind="canonical_W", factor=2):
    ws = parse_window_spec(spec)
    rep = build_representation(ws.descriptor, kind)
    E, B = windows(ws, rep, factor)
    return rep, E, B


@pytest.mark.parametrize("spec,kind", [("Nk:k=2,max=4", "canonical_W"), ("Nk:k=1,max=5", "compressed"),
                                       ("Free:n=2,len=3", "degenerate_free")])
def test_piso_rep_examples(spec, kind):
    assert check_piso_rep(*setup(spec, kind)).passed


@pytest.mark.parametrize("spec", ["Nk:k=2,max=4", "Free:n=2,len=3"])
def test_right_nica_examples(spec):
    assert check_right_nica(*setup(spec)).passed


def test_left_nica_examples():
    assert check_left_nica(*setup("Nk:k=1,max=6")).passed
    assert check_left_nica(*setup("Nk:k=2,max=2", "compressed")).passed
    report = check_left_nica(*setup("Free:n=2,len=3", "degenerate_free"))
    assert not report.passed
    assert report.to_json()["status"] == "fail"


def test_canonical_free_is_not_left_nica():
    # W_a W_a* = 1 on l^2 of a free monoid, so the ranges never separate
    report = check_left_nica(*setup("Free:n=2,len=2"))
    assert report.witnesses[0]["elements"] == ["a", "b"]


def test_canonical_S_on_the_opposite():
    # isometries: initial projections are all 1, range projections follow the ideals
    args = setup("Free:n=2,len=2", "canonical_S")
    assert check_piso_rep(*args).passed
    assert check_left_nica(*args).passed
    assert not check_right_nica(*args).passed


def test_covariant_pair_examples():
    rep, E, B = setup("Nk:k=1,max=2", "compressed")
    gens = [indicator(rep.descriptor, (i,)) for i in range(3)]
    assert check_covariant_pair(rep, E, gens, B).passed
    rep, E, B = setup("Free:n=2,len=2", "compressed")
    gens = [indicator(rep.descriptor, y) for y in E]
    assert check_covariant_pair(rep, E, gens, B).passed


def test_covariant_pair_detects_wrong_diag():
    rep, E, B = setup("Nk:k=1,max=2", "compressed")
    bad = rep.with_diag(lambda f: identity(rep.carrier))
    report = check_covariant_pair(bad, E, [indicator(rep.descriptor, (0,))], B)
    relations = {w["relation"] for w in report.witnesses}
    assert "range" in relations
    assert all(w["elements"] != ["0"] for w in report.witnesses if w["relation"] == "range")


def test_covariant_pair_needs_diag():
    rep, E, B = setup("Free:n=2,len=2", "degenerate_free")
    with pytest.raises(ValueError):
        check_covariant_pair(rep, E, [], B)


@pytest.mark.parametrize("spec", ["Nk:k=2,max=3", "Free:n=2,len=3", "NTimes:primes=2,3;maxexp=2"])
def test_halmos_for_canonical(spec):
    assert check_halmos(*setup(spec)).passed


def audit(spec, kind, rep_kind="canonical_W"):
    rep, E, B = setup(spec, rep_kind)
    return criterion_equivalence_audit(rep, kind, E, B)


def test_audit_examples():
    r = audit("Free:n=2,len=3", "free_right")
    assert r.details == {"criterion": "pass", "direct": "pass", "agree": True}
    r = audit("Free:n=2,len=3", "free_right", "degenerate_free")
    assert r.details == {"criterion": "fail", "direct": "fail", "agree": True}
    r = audit("NTimes:primes=2,3;maxexp=2", "ntimes_bicov")
    assert r.details["agree"] and r.details["direct"] == "pass"


def test_audit_rejects_wrong_family():
    with pytest.raises(ValueError):
        audit("Nk:k=1,max=2", "free_right")
    with pytest.raises(ValueError):
        audit("Nk:k=1,max=2", "nonsense")


def _coordinate_product():
    N = Naturals(1)
    D = DirectProduct((N, N))
    first = embed_coordinate(build_representation(N, "canonical_W"), D, 0)
    second = embed_coordinate(build_representation(N, "canonical_W"), D, 1)
    axis = [(i,) for i in range(4)]
    basis = parse_window_spec("Prod:Nk:k=1,max=7|Nk:k=1,max=7").elements()
    return D, first, second, axis, basis


def test_product_of_coordinate_shifts_is_canonical():
    D, first, second, axis, basis = _coordinate_product()
    U = product_rep(first, second, axis, axis, basis)
    canon = build_representation(D, "canonical_W")
    window = parse_window_spec("Prod:Nk:k=1,max=3|Nk:k=1,max=3").elements()
    for x in window:
        assert equal_on_window(U(x), canon(x), basis).equal
    assert check_right_nica(U, window, basis).passed
    assert check_left_nica(U, window, basis).passed
    left, right = decompose_product(U)
    assert equal_on_window(left((2,)), first((2,)), basis).equal
    assert equal_on_window(right((3,)), second((3,)), basis).equal


def test_product_refuses_non_commuting_pair():
    N = Naturals(1)
    W = build_representation(N, "canonical_W")
    S = build_representation(N, "canonical_S")
    basis = [(i,) for i in range(6)]
    with pytest.raises(CommutationError) as info:
        product_rep(W, S, [(1,)], [(1,)], basis)
    assert info.value.witness["basis_point"] == "ε_0"
