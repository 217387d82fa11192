# tests/test_twisted.py

from fractions import Fraction

import pytest

from src.errors import ValidationError
from src.liealg import adapted_basis, build_lie_algebra, highest_root_vector, make_automorphism, named_permutation
from src.twisted import (
    TwistedAffineElement,
    admissibility_certificate,
    annihilation_bound,
    build_twisted_verma,
    classify,
    complete_reducibility,
    iso_phi,
    iso_phi_inverse,
    log_series,
    mu_bracket,
    reconstruct_full_Y,
    theta_bound,
    twisted_bracket,
    twisted_simple_quotient,
    twisted_vertex_mode_Y0,
    two_oracle_dims,
    verify_commutator,
    verify_current_brackets,
    verify_phi_homomorphism,
    verify_phi_roundtrip,
    verify_power_field,
    verify_twisted_jacobi,
    verify_weak_associativity,
)
from src.voa import build_verma


def sl2_twist(e="f_theta"):
    g = build_lie_algebra("A1", 1)
    return g, make_automorphism(g, (0,), g.parse_element(e) if e else None)


def a2_flip():
    g = build_lie_algebra("A2", 2)
    return g, make_automorphism(g, named_permutation(g, "flip"))


def currents(module):
    """e_θ(-1)1, f_θ(-1)1 in the vacuum module and the top vector of the module."""
    source = module.source
    g = module.basis.algebra
    e_theta = module.basis.to_adapted(highest_root_vector(g))
    f_theta = module.basis.to_adapted(g.element("f_theta"))
    u = source.act(-1, e_theta, source.vacuum())
    v = source.act(-1, f_theta, source.vacuum())
    return u, v, module.top_vector(0)


def test_twisted_bracket_picks_up_the_e_term():
    g, aut = sl2_twist()
    basis = adapted_basis(aut)
    h = TwistedAffineElement.current(basis, basis.to_adapted(g.element("h")), 0)
    e = TwistedAffineElement.current(basis, basis.to_adapted(g.element("e")), 0)
    bracket = twisted_bracket(h, e)
    (a,) = basis.to_adapted(g.element("e"))
    assert bracket.terms == {(Fraction(0), a): Fraction(2)}
    assert bracket.central == 2


def test_phi_is_a_homomorphism():
    _, aut = sl2_twist()
    basis = adapted_basis(aut)
    assert verify_phi_homomorphism(basis, bound=1)["equal"]
    assert verify_phi_roundtrip(basis, samples=10, seed=3)["equal"]
    _, flip = a2_flip()
    assert verify_phi_homomorphism(adapted_basis(flip), bound=1)["equal"]


def test_phi_shifts_zero_modes_only():
    g, aut = sl2_twist()
    basis = adapted_basis(aut)
    e = basis.to_adapted(g.element("e"))
    zero = TwistedAffineElement.current(basis, e, 0)
    assert iso_phi(zero).central == -1
    assert iso_phi(TwistedAffineElement.current(basis, e, 1)).central == 0
    assert iso_phi_inverse(iso_phi(zero)) == zero
    with pytest.raises(ValidationError):
        mu_bracket(zero, zero)


def test_modes_must_match_class():
    _, aut = a2_flip()
    basis = adapted_basis(aut)
    odd = {basis.fixed_dim: Fraction(1)}
    TwistedAffineElement.current(basis, odd, Fraction(1, 2))
    with pytest.raises(ValidationError):
        TwistedAffineElement.current(basis, odd, 1)


def test_twisted_verma_dims():
    g, aut = a2_flip()
    module = build_twisted_verma(g, aut, (0,), 1, 1)
    assert module.depths() == [0, Fraction(1, 2), 1]
    assert module.graded_dims() == [1, 5, 18]


def test_currents_satisfy_twisted_brackets():
    g, aut = sl2_twist()
    module = build_twisted_verma(g, aut, (1,), 1, 1)
    assert verify_current_brackets(module)["equal"]
    g, flip = a2_flip()
    assert verify_current_brackets(build_twisted_verma(g, flip, (1,), 1, Fraction(1, 2)))["equal"]


def test_jacobi_identity_untwisted():
    g = build_lie_algebra("A1", 1)
    module = build_verma(g, (0,), 1, 1)
    report = verify_twisted_jacobi(module, *currents(module))
    assert report["identity_name"] == "jacobi"
    assert report["equal"]


def test_twisted_jacobi_and_commutator_sl2():
    g, aut = sl2_twist()
    module = build_twisted_verma(g, aut, (1,), 1, 1)
    assert verify_twisted_jacobi(module, *currents(module))["equal"]
    assert verify_commutator(module, *currents(module))["equal"]


def test_twisted_jacobi_a2_flip():
    g, aut = a2_flip()
    module = build_twisted_verma(g, aut, (0,), 1, 1)
    report = verify_twisted_jacobi(module, *currents(module))
    assert report["compared"] > 0
    assert report["equal"]


def test_weak_associativity():
    g, aut = sl2_twist()
    module = build_twisted_verma(g, aut, (1,), 1, 1)
    u, v, w = currents(module)
    report = verify_weak_associativity(module, u, v, w)
    assert report["equal"]
    assert report["l"] == annihilation_bound(module, u, w)
    with pytest.raises(ValidationError):
        verify_weak_associativity(module, u, v, w, l_shift=report["l"] - 1)


def test_y0_modes_follow_the_class():
    g, aut = a2_flip()
    module = build_twisted_verma(g, aut, (0,), 1, 1)
    u, _, w = currents(module)
    assert twisted_vertex_mode_Y0(module, u, Fraction(1, 2), w) == {}
    assert twisted_vertex_mode_Y0(module, u, Fraction(-1, 2), w)
    with pytest.raises(ValidationError):
        twisted_vertex_mode_Y0(module, u, 0, w)


def test_full_vertex_operator_has_log_terms():
    g, aut = sl2_twist()
    module = build_twisted_verma(g, aut, (1,), 1, 1)
    u, _, w = currents(module)
    series = log_series(module, u, w)
    assert max(series.log_powers()) == 2
    assert reconstruct_full_Y(module, u, 0, 0, w) == module.vertex_mode(u, 0, w)


@pytest.mark.parametrize("level, lam", [(1, (1,)), (2, (2,))])
def test_power_field_a2_flip(level, lam):
    g, aut = a2_flip()
    module = twisted_simple_quotient(build_twisted_verma(g, aut, lam, level, 2))
    e_theta = module.basis.to_adapted(highest_root_vector(g))
    report = verify_power_field(module, e_theta, level + 1)
    assert report["equal"]
    assert report["compared"] > 0
    assert report["lambda_admissible"]
    assert report["vanishes_on_simple"]


def test_power_field_does_not_vanish_for_non_integrable_top():
    g, aut = a2_flip()
    verma = build_twisted_verma(g, aut, (0,), 1, 1)
    module = twisted_simple_quotient(verma)
    # nothing to divide out: L and the Verma module coincide
    assert module.graded_dims() == verma.graded_dims() == [1, 5, 18]
    report = verify_power_field(module, module.basis.to_adapted(highest_root_vector(g)), 2)
    assert report["equal"]
    assert not report["lambda_admissible"]
    assert not report["vanishes_on_simple"]


def test_power_field_needs_odd_f():
    g, aut = sl2_twist(None)
    module = build_twisted_verma(g, aut, (0,), 1, 1)
    with pytest.raises(ValidationError):
        verify_power_field(module, module.basis.to_adapted(g.element("e")), 2)


def test_two_oracles_agree():
    g = build_lie_algebra("A1", 1)
    module = build_verma(g, (0,), 1, 3)
    x = module.basis.to_adapted(g.element("e"))
    generator = module.act(-1, x, module.act(-1, x, module.vacuum()))
    report = two_oracle_dims(module, [generator])
    assert report["radical_dims"] == [1, 3, 4, 7]
    assert report["annihilator_dims"] == report["generated_dims"] == [1, 3, 4, 7]
    assert report["equal"]


def test_admissibility_certificate():
    g, aut = sl2_twist(None)
    good = twisted_simple_quotient(build_twisted_verma(g, aut, (1,), 1, 1))
    bad = twisted_simple_quotient(build_twisted_verma(g, aut, (2,), 1, 1))
    assert admissibility_certificate(good)["admissible"]
    assert not admissibility_certificate(bad)["admissible"]


def test_classification_sl2():
    g, aut = sl2_twist(None)
    report = classify(g, aut, 1, 1)
    assert report["sigma_admissible"] == [[0], [1]]
    assert report["predicted"] == [[0], [1]]
    assert report["within_prediction"]


def test_classification_a2_flip_is_strictly_inside_the_bound():
    g, aut = a2_flip()
    report = classify(g, aut, 1, 1)
    assert report["sigma_admissible"] == [[1]]
    assert report["predicted"] == [[0], [1]]
    assert report["within_prediction"]
    assert report["lists_match"]


def test_classification_a2_flip_with_nilpotent():
    g = build_lie_algebra("A2", 2)
    aut = make_automorphism(g, named_permutation(g, "flip"), g.parse_element("f10 + f01"))
    report = classify(g, aut, 1, 1)
    assert report["sigma_admissible"] == [[1]]
    assert report["mu_admissible"] == [[1]]
    assert report["lists_match"]


def test_classification_lists_match_with_nilpotent():
    g, aut = sl2_twist()
    report = classify(g, aut, 1, 1)
    assert report["lists_match"]
    assert report["sigma_admissible"] == [[0], [1]]


def test_theta_bound_is_the_coroot_pairing():
    _, aut = sl2_twist(None)
    basis = adapted_basis(aut)
    assert [theta_bound(basis, (m,)) for m in range(3)] == [0, 1, 2]


def test_complete_reducibility_of_top():
    g, aut = sl2_twist(None)
    module = twisted_simple_quotient(build_twisted_verma(g, aut, (1,), 1, 1))
    report = complete_reducibility(module)
    assert report["highest_weights"] == [[1]]
    assert report["weyl_dimension_total"] == 2
    assert report["equal"]
    assert report["components_killed"]


def test_complete_reducibility_a2_flip():
    g, aut = a2_flip()
    module = twisted_simple_quotient(build_twisted_verma(g, aut, (1,), 1, 1))
    report = complete_reducibility(module)
    assert report["highest_weights"] == [[1]]
    assert report["weyl_dimension_total"] == 2
    assert report["theta_power_vanishes"]
    assert report["equal"]


def test_complete_reducibility_with_nilpotent():
    g, aut = sl2_twist()
    module = twisted_simple_quotient(build_twisted_verma(g, aut, (1,), 1, 1))
    report = complete_reducibility(module)
    assert report["highest_weights"] == [[1]]
    assert report["semisimple"]
    assert report["equal"]
