# tests/test_voa.py

from fractions import Fraction

import pytest

from src.errors import TruncationError, ValidationError
from src.liealg import build_lie_algebra
from src.utils.linalg import EchelonBasis
from src.utils.serialize import read_csv
from src.voa import (
    binom,
    build_vacuum,
    build_verma,
    check_quotient_actions,
    combine_vectors,
    conformal_top_weight,
    conformal_vector,
    generated_submodule,
    graded_dims_csv,
    l_operator,
    maximal_submodule_radical,
    mode_action,
    radical_json,
    simple_quotient,
    singular_vectors,
    trivial_automorphism,
    verify_borcherds_commutator,
    verify_virasoro_commutators,
    vertex_mode,
)


def sl2():
    return build_lie_algebra("A1", 1)


def current_vector(module, label, power=1):
    x = module.basis.to_adapted(module.basis.algebra.element(label))
    vec = module.vacuum()
    for _ in range(power):
        vec = module.act(-1, x, vec)
    return vec


def test_binomials():
    assert binom(5, 2) == 10
    assert binom(Fraction(1, 2), 2) == Fraction(-1, 8)
    assert binom(-1, 3) == -1
    assert binom(3, -1) == 0


def test_verma_graded_dims():
    module = build_verma(sl2(), (0,), 1, 4)
    assert module.graded_dims() == [1, 3, 9, 22, 51]


def test_simple_vacuum_level_one():
    quotient = simple_quotient(build_verma(sl2(), (0,), 1, 4))
    assert quotient.graded_dims() == [1, 3, 4, 7, 13]
    assert check_quotient_actions(quotient)
    assert quotient.contains_zero(current_vector(quotient.verma, "e", 2))


def test_radical_agrees_with_generated_submodule():
    module = build_verma(sl2(), (0,), 1, 3)
    spans = generated_submodule(module, [current_vector(module, "e", 2)])
    generated = [len(module.monomials(d)) - spans[d].rank for d in module.depths()]
    assert generated == simple_quotient(module).graded_dims()


def test_singular_vectors_at_depth_two():
    module = build_verma(sl2(), (0,), 1, 2)
    assert singular_vectors(module, 1) == []
    found = singular_vectors(module, 2)
    # e(-1)^2 1 and its g-translates span a copy of V(4)
    assert len(found) == 5


def test_conformal_weight_of_top():
    module = build_verma(sl2(), (1,), 1, 1)
    top = module.top_vector(0)
    assert conformal_top_weight(module) == Fraction(1, 4)
    assert l_operator(module, 0, top) == {m: Fraction(1, 4) * c for m, c in top.items()}


def test_virasoro_commutators():
    assert verify_virasoro_commutators(build_verma(sl2(), (1,), 1, 1))["equal"]


def test_borcherds_commutator_on_vacuum():
    module = build_vacuum(trivial_automorphism(sl2()), 1, 2)
    u = current_vector(module, "e")
    v = current_vector(module, "f")
    for m, n in [(0, 0), (1, -1), (0, -1)]:
        assert verify_borcherds_commutator(module, u, v, m, n)["equal"]


def test_critical_level_rejected():
    with pytest.raises(ValidationError):
        build_verma(sl2(), (0,), -2, 1)
    with pytest.raises(ValidationError):
        build_verma(sl2(), (-1,), 1, 1)


def test_mode_action_respects_cap():
    module = build_vacuum(trivial_automorphism(sl2()), 1, 2)
    e = module.basis.to_adapted(sl2().element("e"))
    with pytest.raises(TruncationError):
        module.mode_action(-3, e, module.vacuum())


def test_parse_and_print_vectors():
    module = build_vacuum(trivial_automorphism(sl2()), 1, 2)
    vec = module.parse_vector("e(-1).f(-1) - 2*h(-2)")
    assert module.parse_vector(module.vector_str(vec)) == vec
    with pytest.raises(ValidationError):
        module.parse_vector("")


def test_graded_dims_csv():
    quotient = simple_quotient(build_verma(sl2(), (0,), 1, 2))
    rows = read_csv(graded_dims_csv(quotient))
    assert [row["dim"] for row in rows] == ["1/1", "3/1", "4/1"]
    assert rows[1]["weight"] == "1/1"


def test_radical_export():
    quotient = simple_quotient(build_verma(sl2(), (0,), 1, 2))
    exported = radical_json(quotient)
    assert exported["summary"]["graded_dims"] == [1, 3, 4]
    assert len(exported["radical"]["2/1"]["basis"]) == 5


def test_conformal_vector_grades_the_vacuum():
    module = build_vacuum(trivial_automorphism(sl2()), 1, 2)
    omega = conformal_vector(module)
    assert module.depth_of(omega) == 2
    e = current_vector(module, "e")
    assert l_operator(module, 0, e) == e
    assert l_operator(module, -1, module.vacuum()) == {}


def test_vertex_mode_of_vacuum_and_currents():
    module = build_verma(sl2(), (1,), 1, 2)
    source = module.source
    w = module.act(-1, module.basis.to_adapted(sl2().element("f")), module.top_vector(0))
    assert vertex_mode(module, source.vacuum(), -1, w) == w
    x = module.basis.to_adapted(sl2().element("e"))
    u = source.act(-1, x, source.vacuum())
    for n in (-1, 0, 1):
        assert vertex_mode(module, u, n, w) == mode_action(module, x, n, w)


def test_radical_dimensions():
    radical = maximal_submodule_radical(build_verma(sl2(), (0,), 1, 2))
    assert [len(radical[d]) for d in sorted(radical)] == [0, 0, 5]


def test_normal_ordered_square_matches_double_sum():
    module = build_vacuum(trivial_automorphism(sl2()), 1, 4)
    x = module.basis.to_adapted(sl2().element("e"))
    u = current_vector(module, "e", 2)
    w = current_vector(module, "f", 2)
    for n in range(-1, 4):
        # Y(e(-1)e(-1)1, x) = :e(x)e(x):, and e(i), e(j) commute
        expected = {}
        for j in range(n - 3, 3):
            i = n - 1 - j
            if i > 2:
                continue
            low, high = min(i, j), max(i, j)
            expected = combine_vectors(expected, module.act(low, x, module.act(high, x, w)))
        assert vertex_mode(module, u, n, w) == expected


def test_borcherds_commutator_for_weight_two_fields():
    module = build_vacuum(trivial_automorphism(sl2()), 1, 3)
    u = current_vector(module, "e", 2)
    v = current_vector(module, "f", 2)
    for m, n in [(1, 1), (2, 0), (0, 2), (3, 1)]:
        report = verify_borcherds_commutator(module, u, v, m, n)
        assert report["checked"] > 0
        assert report["equal"]


def test_annihilator_radical_matches_gram_nullspace():
    module = build_verma(sl2(), (0,), 1, 3)
    fast = maximal_submodule_radical(module)
    slow = maximal_submodule_radical(module, method="form")
    for d in module.depths():
        assert len(fast[d]) == len(slow[d])
        reducer = EchelonBasis(slow[d], module.monomials(d))
        assert all(reducer.contains(vec) for vec in fast[d])
    with pytest.raises(ValidationError):
        maximal_submodule_radical(module, method="shapovalov")
