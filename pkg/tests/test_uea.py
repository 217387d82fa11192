# tests/test_uea.py

import pytest

from src.errors import TruncationError, ValidationError
from src.liealg import build_lie_algebra
from src.uea import (
    UEA,
    IdealBasis,
    act_on,
    commutator,
    format_pbw,
    ideal_membership_bounded,
    irreducible_module,
    parse_pbw,
    pbw_normalize,
)


def sl2():
    g = build_lie_algebra("A1", 1)
    return g, UEA(g)


def is_zero_matrix(matrix):
    return not any(matrix.values())


def test_pbw_normal_form():
    g, U = sl2()
    ffe = pbw_normalize(U, (g.index_of("f"), g.index_of("f"), g.index_of("e")))
    assert format_pbw(ffe) == "e1.f1.f1 - 2*h1.f1 - 2*f1"


def test_commutator_is_the_bracket():
    g, U = sl2()
    e = U.generator(g.element("e"))
    f = U.generator(g.element("f"))
    h = U.generator(g.element("h"))
    assert commutator(e, f) == h
    assert commutator(h, e) == 2 * e


def test_parse_and_format_agree():
    g, U = sl2()
    x = parse_pbw(U, "f1.e1 + 3/2*h1 - 1")
    assert format_pbw(x) == "e1.f1 + 1/2*h1 - 1"
    with pytest.raises(ValidationError):
        parse_pbw(U, "e1..f1")
    with pytest.raises(ValidationError):
        parse_pbw(U, "")


def test_filtered_dimension():
    _, U = sl2()
    assert U.filtered_dim(2) == 10
    assert len(U.monomials_up_to(2)) == 10


def test_bounded_ideal():
    g, U = sl2()
    e = U.generator(g.element("e"))
    f = U.generator(g.element("f"))
    ideal = IdealBasis(e ** 2, 3)
    assert ideal.contains(e ** 2 * f)
    assert ideal.contains(f * e ** 2 - e ** 2 * f)
    assert not ideal.contains(e * f)
    assert IdealBasis(e ** 2, 2).quotient_dim() == 9
    with pytest.raises(TruncationError):
        IdealBasis(e ** 3, 2)
    with pytest.raises(TruncationError):
        ideal_membership_bounded(e ** 4, e ** 2, 3)


def test_irreducible_dimensions_match_weyl():
    a2 = build_lie_algebra("A2", 2)
    for lam in [(1, 0), (0, 1), (1, 1), (2, 0)]:
        assert irreducible_module(a2, lam).dim == a2.weyl_dimension(lam)
    g, _ = sl2()
    assert irreducible_module(g, (3,)).dim == 4


def test_power_of_e_kills_small_modules():
    g, U = sl2()
    e = U.generator(g.element("e"))
    level = 1
    for m in range(4):
        module = irreducible_module(g, (m,))
        assert is_zero_matrix(act_on(module, e ** (level + 1))) == (m <= level)


def test_casimir_acts_by_scalar():
    g, U = sl2()
    casimir = parse_pbw(U, "e1.f1 + f1.e1 + 1/2*h1.h1")
    module = irreducible_module(g, (2,))
    matrix = act_on(module, casimir)
    value = g.casimir_value((2,))
    assert matrix == {(i, i): value for i in range(module.dim)}


def test_mixed_algebras_rejected():
    g, U = sl2()
    other = UEA(build_lie_algebra("A1", 1))
    with pytest.raises(ValidationError):
        U.one() + other.one()
