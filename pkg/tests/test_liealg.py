# tests/test_liealg.py

from fractions import Fraction
import itertools

import pytest

from src.errors import ValidationError
from src.liealg import (
    _build_lie_algebra,
    ad_e_block_size,
    adapted_basis,
    build_lie_algebra,
    diagram_automorphism,
    eigenspace_decomposition,
    fixed_point_algebra,
    highest_root_vector,
    highest_root_vector_fixed,
    invariant_form,
    make_automorphism,
    named_permutation,
    parse_algebra_label,
)
from src.utils.linalg import add_into


def flip(g):
    return diagram_automorphism(g, named_permutation(g, "flip"))


def jacobiator(g, x, y, z):
    out = {}
    add_into(out, g.bracket(x, g.bracket(y, z)))
    add_into(out, g.bracket(y, g.bracket(z, x)))
    add_into(out, g.bracket(z, g.bracket(x, y)))
    return out


def test_dimensions_and_dual_coxeter():
    for label, dim, h in [("A1", 3, 2), ("A2", 8, 3), ("B2", 10, 3), ("G2", 14, 4), ("D4", 28, 6)]:
        g = build_lie_algebra(*parse_algebra_label(label))
        assert g.dim == dim
        assert g.dual_coxeter == h


def test_dual_coxeter_is_exact_across_types():
    for label, h in [("A4", 5), ("B3", 5), ("C3", 4), ("D5", 8), ("E6", 12), ("F4", 9), ("G2", 4)]:
        g = build_lie_algebra(*parse_algebra_label(label))
        assert isinstance(g.dual_coxeter, int)
        assert g.dual_coxeter == h


def test_build_accepts_letter_or_full_label():
    assert build_lie_algebra("A2", 2) is build_lie_algebra("A", 2)
    assert build_lie_algebra("b2", 2) is build_lie_algebra("B", 2)
    with pytest.raises(ValidationError):
        build_lie_algebra("A2", 3)
    with pytest.raises(ValidationError):
        build_lie_algebra("Q", 2)


def test_sl2_chevalley_relations():
    g = build_lie_algebra("A1", 1)
    e, h, f = g.element("e"), g.element("h"), g.element("f")
    assert g.bracket(e, f) == h
    assert g.bracket(h, e) == {0: Fraction(2)}
    assert g.bracket(h, f) == {2: Fraction(-2)}
    assert g.form_value(e, f) == 1
    assert g.form_value(h, h) == 2


def test_jacobi_identity_on_a2_and_b2():
    for label in ("A2", "B2"):
        g = build_lie_algebra(*parse_algebra_label(label))
        basis = [{b: Fraction(1)} for b in range(g.dim)]
        for x, y, z in itertools.combinations(basis, 3):
            assert jacobiator(g, x, y, z) == {}


def test_weyl_dimensions_and_dominant_weights():
    g = build_lie_algebra("A2", 2)
    assert g.weyl_dimension((1, 0)) == 3
    assert g.weyl_dimension((1, 1)) == 8
    assert g.weyl_dimension((2, 0)) == 6
    sl2 = build_lie_algebra("A1", 1)
    assert sl2.dominant_weights(1) == [(0,), (1,)]


def test_fixed_point_algebras():
    a2 = build_lie_algebra("A2", 2)
    assert fixed_point_algebra(a2, flip(a2)).algebra.dim == 3
    a3 = build_lie_algebra("A3", 3)
    assert fixed_point_algebra(a3, flip(a3)).algebra.dim == 10
    d4 = build_lie_algebra("D4", 4)
    triality = diagram_automorphism(d4, named_permutation(d4, "triality"))
    assert triality.order_T == 3
    assert fixed_point_algebra(d4, triality).algebra.dim == 14


def test_eigenspace_dimensions():
    a2 = build_lie_algebra("A2", 2)
    assert eigenspace_decomposition(a2, flip(a2)).dims == [3, 5]
    a3 = build_lie_algebra("A3", 3)
    assert eigenspace_decomposition(a3, flip(a3)).dims == [10, 5]
    d4 = build_lie_algebra("D4", 4)
    triality = diagram_automorphism(d4, named_permutation(d4, "triality"))
    assert eigenspace_decomposition(d4, triality).dims == [14, 7, 7]


def test_adapted_basis_puts_fixed_part_first():
    a2 = build_lie_algebra("A2", 2)
    basis = adapted_basis(flip(a2))
    assert basis.fixed_dim == 3
    assert basis.classes == [0, 0, 0, 1, 1, 1, 1, 1]
    e_theta = basis.to_adapted(highest_root_vector(a2))
    assert basis.class_of_element(e_theta) == 1
    assert basis.to_chevalley(e_theta) == highest_root_vector(a2)


def test_invalid_automorphisms():
    a3 = build_lie_algebra("A3", 3)
    with pytest.raises(ValidationError):
        diagram_automorphism(a3, (1, 0, 2))
    with pytest.raises(ValidationError):
        named_permutation(build_lie_algebra("B2", 2), "flip")
    a2 = build_lie_algebra("A2", 2)
    # not fixed by the flip
    with pytest.raises(ValidationError):
        make_automorphism(a2, named_permutation(a2, "flip"), a2.element("f10"))
    # not nilpotent
    with pytest.raises(ValidationError):
        make_automorphism(a2, (0, 1), a2.element("h1"))


def test_nilpotent_e_accepted():
    g = build_lie_algebra("A1", 1)
    aut = make_automorphism(g, (0,), g.parse_element("f_theta"))
    assert aut.e == g.element("f")
    assert not aut.is_diagram


def test_parse_algebra_label():
    assert parse_algebra_label("a2") == ("A", 2)
    assert parse_algebra_label("D_4") == ("D", 4)
    with pytest.raises(ValidationError):
        parse_algebra_label("X")


def test_invariant_form_normalization():
    g = build_lie_algebra("A2", 2)
    e_theta = highest_root_vector(g)
    h_theta = g.bracket(e_theta, g.element("f11"))
    assert invariant_form(g, e_theta, g.element("f11")) == 1
    assert invariant_form(g, h_theta, h_theta) == 2


def test_highest_root_of_fixed_subalgebra():
    a3 = build_lie_algebra("A3", 3)
    assert set(highest_root_vector_fixed(a3, flip(a3))) == set(highest_root_vector(a3))
    a2 = build_lie_algebra("A2", 2)
    aut = flip(a2)
    fixed = highest_root_vector_fixed(a2, aut)
    assert aut.mu(fixed) == fixed
    assert set(fixed) != set(highest_root_vector(a2))


def test_ad_e_block_size():
    g = build_lie_algebra("A1", 1)
    assert ad_e_block_size(diagram_automorphism(g, (0,)), g.element("e")) == 1
    aut = make_automorphism(g, (0,), g.element("f"))
    assert ad_e_block_size(aut, g.element("e")) == 3
    assert ad_e_block_size(aut, g.element("h")) == 2
    assert ad_e_block_size(aut, g.element("f")) == 1
    with pytest.raises(ValidationError):
        ad_e_block_size(aut, {})


def test_derived_data_is_cached_per_algebra_instance():
    a2 = build_lie_algebra("A2", 2)
    aut = flip(a2)
    assert adapted_basis(aut) is adapted_basis(aut)
    assert fixed_point_algebra(a2, aut) is fixed_point_algebra(a2, flip(a2))

    fresh = _build_lie_algebra.__wrapped__("A", 2)
    assert fresh is not a2
    fresh_basis = adapted_basis(flip(fresh))
    assert fresh_basis is not adapted_basis(aut)
    assert fresh_basis.algebra is fresh
    assert fixed_point_algebra(fresh, flip(fresh)) is not fixed_point_algebra(a2, aut)
