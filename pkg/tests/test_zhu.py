# tests/test_zhu.py

from fractions import Fraction

import pytest

from src.errors import TruncationError, ValidationError
from src.liealg import build_lie_algebra, make_automorphism, named_permutation
from src.uea import UEA
from src.voa import build_verma, simple_quotient
from src.zhu import (
    ZhuAlgebra,
    circ_g,
    lemma_expansion,
    map_I,
    o_span_basis,
    o_operator,
    omega_subspace,
    quotient_dimensions,
    star_g,
    theta_vector,
    verify_associativity,
    verify_block_size_separation,
    verify_current_commutators,
    verify_ideal,
    verify_injectivity,
    verify_lemma_v_alpha,
    verify_lie_relation,
    verify_power_step,
    verify_shift,
    verify_spanning,
    verify_zhu_power,
    zhu_power,
    zhu_reduce,
)


def sl2_zhu(level, depth=None, e=None):
    g = build_lie_algebra("A1", 1)
    aut = make_automorphism(g, (0,), g.parse_element(e) if e else None)
    return ZhuAlgebra(aut, level, depth)


def a2_flip_zhu(level, depth):
    g = build_lie_algebra("A2", 2)
    aut = make_automorphism(g, named_permutation(g, "flip"))
    return ZhuAlgebra(aut, level, depth)


def current(zhu, label):
    x = zhu.basis.to_adapted(zhu.aut.algebra.element(label))
    return zhu.V.act(-1, x, zhu.V.vacuum())


def test_star_of_currents():
    zhu = sl2_zhu(1, 2)
    e, f, h = current(zhu, "e"), current(zhu, "f"), current(zhu, "h")
    expected = dict(zhu.V.act(-1, zhu.basis.to_adapted(zhu.aut.algebra.element("e")), f))
    for m, c in h.items():
        expected[m] = expected.get(m, 0) + c
    assert zhu.star(e, f) == expected


def test_vacuum_is_the_unit():
    zhu = sl2_zhu(1, 2)
    one = zhu.V.vacuum()
    e = current(zhu, "e")
    assert zhu.product(one, e) == zhu.reduce(e)
    assert zhu.product(e, one) == zhu.reduce(e)


def test_circ_with_vacuum_is_in_o_span():
    zhu = sl2_zhu(1, 2)
    e = current(zhu, "e")
    one = zhu.V.vacuum()
    x = zhu.basis.to_adapted(zhu.aut.algebra.element("e"))
    circ = circ_g(zhu, e, one)
    assert circ == {**zhu.V.act(-2, x, one), **e}
    assert o_span_basis(zhu).contains(circ)
    assert zhu_reduce(zhu, circ).is_zero()
    assert star_g(zhu, e, one) == e
    mixed = {**e, **one}
    with pytest.raises(ValidationError):
        circ_g(zhu, mixed, one)
    with pytest.raises(ValidationError):
        star_g(zhu, mixed, one)


def test_lemma_coefficients():
    zhu = sl2_zhu(2, 4, "f_theta")
    assert lemma_expansion(zhu, 1) == {1: 1, 0: 2}
    assert lemma_expansion(zhu, 2) == {2: 1, 1: 2, 0: 2}
    # at k = l + 1 only the top power survives
    assert lemma_expansion(zhu, 3) == {3: 1}


def test_lemma_coefficients_level_three():
    zhu = sl2_zhu(3, None, "f_theta")
    assert lemma_expansion(zhu, 1) == {1: 1, 0: 3}
    assert lemma_expansion(zhu, 2) == {2: 1, 1: 4, 0: 6}
    assert lemma_expansion(zhu, 3) == {3: 1, 2: 3, 1: 6, 0: 6}
    assert lemma_expansion(zhu, 4) == {4: 1}


@pytest.mark.parametrize("level", [1, 2, 3])
def test_zhu_power_expansion(level):
    zhu = sl2_zhu(level, None, "f_theta")
    for k in range(1, level + 2):
        assert verify_zhu_power(zhu, k)["equal"]


@pytest.mark.parametrize("level", [2, 3])
def test_power_steps(level):
    zhu = sl2_zhu(level, None, "f_theta")
    for k in range(0, level + 1):
        assert verify_power_step(zhu, k)["equal"]


def test_zhu_power_needs_depth():
    zhu = sl2_zhu(1, 2, "f_theta")
    c = zhu.reduce(zhu.i(theta_vector(zhu)))
    with pytest.raises(TruncationError):
        zhu_power(zhu, c, 3)


@pytest.mark.parametrize("e", [None, "f_theta", "e_theta"])
def test_current_commutators_sl2(e):
    assert verify_current_commutators(sl2_zhu(1, 2, e))["equal"]


def test_current_commutators_sl3():
    g = build_lie_algebra("A2", 2)
    aut = make_automorphism(g, (0, 1), g.parse_element("f11"))
    assert verify_current_commutators(ZhuAlgebra(aut, 1, 2))["equal"]


def test_lie_relation_for_currents():
    zhu = sl2_zhu(1, 2, "f_theta")
    assert verify_lie_relation(zhu, current(zhu, "e"), current(zhu, "h"))["equal"]


def test_map_i_injective_low_degree():
    assert verify_injectivity(sl2_zhu(1, 3), 2)["equal"]
    assert verify_injectivity(sl2_zhu(1, 3, "f_theta"), 2)["equal"]
    assert verify_injectivity(a2_flip_zhu(1, 2), 2)["equal"]


def test_map_i_of_generator_is_i():
    zhu = sl2_zhu(1, 2, "f_theta")
    U = zhu.enveloping()
    e = U.generator(zhu.basis.fixed.algebra.element("e"))
    assert map_I(zhu, e) == zhu.reduce(zhu.i(zhu.basis.fixed_to_adapted({0: Fraction(1)})))


def test_map_i_rejects_foreign_algebra():
    zhu = sl2_zhu(1, 2)
    foreign = UEA(build_lie_algebra("A2", 2)).one()
    with pytest.raises(ValidationError):
        zhu.map_I(foreign)


def test_i_rejects_elements_outside_fixed_part():
    zhu = a2_flip_zhu(1, 2)
    with pytest.raises(ValidationError):
        zhu.i({zhu.basis.fixed_dim: Fraction(1)})


def test_odd_part_vanishes():
    assert verify_lemma_v_alpha(a2_flip_zhu(1, 2))["equal"]


def test_spanning_and_shift():
    zhu = sl2_zhu(1, 3, "f_theta")
    assert verify_spanning(zhu)["equal"]
    assert verify_shift(sl2_zhu(1, 3))["equal"]


def test_ideal_and_associativity():
    zhu = sl2_zhu(1, 3, "f_theta")
    ideal = verify_ideal(zhu, samples=25, seed=7)
    assert ideal["equal"] and ideal["checked"] > 0
    assoc = verify_associativity(zhu, samples=25, seed=7)
    assert assoc["equal"] and assoc["checked"] == 25


def test_reduce_beyond_working_depth():
    zhu = sl2_zhu(1, 2)
    e = zhu.basis.to_adapted(zhu.aut.algebra.element("e"))
    deep = zhu.V.act(-3, e, zhu.V.vacuum())
    with pytest.raises(TruncationError):
        zhu.reduce(deep)


def test_block_sizes_separate():
    zhu = sl2_zhu(1, 2, "f_theta")
    report = verify_block_size_separation(zhu, current(zhu, "e"))
    assert report["sizes"] == [3, 2, 1]
    assert report["equal"]


def test_quotient_dimensions_report():
    report = quotient_dimensions(sl2_zhu(1, 3), 2)
    assert report["enveloping_side"] == 9
    assert report["zhu_side"] == 9
    with pytest.raises(ValidationError):
        quotient_dimensions(sl2_zhu(Fraction(1, 2), 2), 2)


def test_omega_of_simple_module_is_its_top():
    quotient = simple_quotient(build_verma(build_lie_algebra("A1", 1), (1,), 1, 1))
    omega = omega_subspace(quotient)
    assert omega.dims == {Fraction(0): 2, Fraction(1): 0}
    assert set(omega.actions) == {"e1", "h1", "f1"}


def a3_flip_zhu(level, depth):
    g = build_lie_algebra("A3", 3)
    aut = make_automorphism(g, named_permutation(g, "flip"))
    return ZhuAlgebra(aut, level, depth)


@pytest.mark.parametrize("make", [
    lambda: sl2_zhu(1, 3),
    lambda: sl2_zhu(1, 3, "f_theta"),
    lambda: a2_flip_zhu(1, 3),
])
def test_map_i_injective_degree_three(make):
    report = verify_injectivity(make(), 3)
    assert report["equal"]


def test_map_i_injective_a3_flip():
    assert verify_injectivity(a3_flip_zhu(1, 3), 3)["equal"]


def test_odd_part_vanishes_up_to_weight_three():
    assert verify_lemma_v_alpha(a2_flip_zhu(1, 3), max_weight=3)["equal"]
    assert verify_lemma_v_alpha(a3_flip_zhu(1, 3), max_weight=3)["equal"]


def test_ideal_and_associativity_many_samples():
    zhu = sl2_zhu(1, 4)
    ideal = verify_ideal(zhu, samples=200, seed=11)
    assert ideal["equal"] and ideal["checked"] > 0
    assoc = verify_associativity(zhu, samples=200, seed=11)
    assert assoc["equal"] and assoc["checked"] == 200


def test_omega_default_uses_every_field_up_to_the_cap():
    quotient = simple_quotient(build_verma(build_lie_algebra("A1", 1), (1,), 1, 2))
    full = omega_subspace(quotient)
    currents_only = omega_subspace(quotient, 1)
    assert full.field_weight == 2
    assert currents_only.field_weight == 1
    assert full.dims == currents_only.dims == {Fraction(0): 2, Fraction(1): 0, Fraction(2): 0}
    with pytest.raises(ValidationError):
        omega_subspace(quotient, 0)


def test_o_operator_of_a_current_is_its_zero_mode():
    module = build_verma(build_lie_algebra("A1", 1), (1,), 1, 1)
    x = module.basis.to_adapted(module.basis.algebra.element("f"))
    u = module.source.act(-1, x, module.source.vacuum())
    top = module.top_vector(0)
    assert o_operator(module, u, top) == module.act(0, x, top)
    assert o_operator(module, module.source.vacuum(), top) == top
