# src/commands.py

"""
Command bodies behind the CLI, one function per subcommand.

Each takes the validated job state (with the algebra and automorphism already
built) and returns the artifact: a dict for JSON output or a str for CSV.
"""

from fractions import Fraction
from typing import Callable, Dict, Union

from .errors import ValidationError
from .liealg import LieAlgebraData, eigenspace_decomposition, fixed_point_algebra, highest_root_vector
from .voa import (
    build_verma,
    build_vacuum,
    graded_dims_csv,
    simple_quotient,
    trivial_automorphism,
    verify_virasoro_commutators,
)
from .twisted import (
    admissibility_certificate,
    build_twisted_verma,
    classify,
    complete_reducibility,
    twisted_simple_quotient,
    two_oracle_dims,
    verify_commutator,
    verify_current_brackets,
    verify_phi_homomorphism,
    verify_power_field,
    verify_twisted_jacobi,
    verify_weak_associativity,
)
from .zhu import (
    ZhuAlgebra,
    quotient_dimensions,
    verify_associativity,
    verify_current_commutators,
    verify_ideal,
    verify_injectivity,
    verify_lemma_v_alpha,
    verify_shift,
    verify_spanning,
    verify_zhu_power,
)

Artifact = Union[dict, str]


def _instance(state) -> dict:
    g = state["algebra"]
    aut = state["automorphism"]
    return {
        "algebra": g.name,
        "mu": list(aut.mu_perm),
        "e": g.element_str(aut.e) if aut.e else "0",
        "level": state["level"],
        "lambda": list(state["lam"]),
        "depth": state["depth"],
    }


def _zhu(state) -> ZhuAlgebra:
    depth = state.get("depth") if state.get("depth_given") else None
    return ZhuAlgebra(state["automorphism"], state["level"], depth)


def _depth(state) -> Fraction:
    return Fraction(state["depth"])


# =========================
# Structure
# =========================

def build_algebra_command(state) -> Artifact:
    g: LieAlgebraData = state["algebra"]
    aut = state["automorphism"]
    out = {"algebra": g.to_json(), "automorphism": aut.to_json()}
    if aut.order_T <= 2:
        g0 = fixed_point_algebra(g, aut).algebra
        out["fixed_point_algebra"] = {"name": g0.name, "dim": g0.dim, "cartan": [list(r) for r in g0.cartan]}
    return out


def eigen_decomp_command(state) -> Artifact:
    return eigenspace_decomposition(state["algebra"], state["automorphism"]).to_json()


# =========================
# Zhu algebra
# =========================

def zhu_product_command(state) -> Artifact:
    zhu = _zhu(state)
    u = zhu.V.parse_vector(state.get("u") or "e_theta(-1)")
    v = zhu.V.parse_vector(state.get("v") or "f_theta(-1)")
    star = zhu.star_linear(u, v)
    circ = zhu.circ(u, v)
    return {
        "instance": _instance(state),
        "working_depth": zhu.depth,
        "u": zhu.V.vector_str(u),
        "v": zhu.V.vector_str(v),
        "star": zhu.V.vector_str(star),
        "star_class": zhu.V.vector_str(zhu.reduce(star).reduced),
        "circ": zhu.V.vector_str(circ),
        "circ_class": zhu.V.vector_str(zhu.reduce(circ).reduced),
    }


def zhu_power_command(state) -> Artifact:
    zhu = _zhu(state)
    report = verify_zhu_power(zhu, state["k"])
    report["instance"] = _instance(state)
    return report


def zhu_dims_command(state) -> Artifact:
    zhu = _zhu(state)
    report = quotient_dimensions(zhu, state["k"])
    report["instance"] = _instance(state)
    report["quotient_dim_at_working_depth"] = zhu.quotient_dim()
    return report


def map_i_check_command(state) -> Artifact:
    zhu = _zhu(state)
    report = verify_injectivity(zhu, state["k"])
    report["commutators"] = verify_current_commutators(zhu)
    report["equal"] = report["equal"] and report["commutators"]["equal"]
    report["instance"] = _instance(state)
    return report


# =========================
# Modules
# =========================

def _graded_output(state, module) -> Artifact:
    if state.get("fmt") == "csv":
        return graded_dims_csv(module)
    return module.summary()


def graded_dims_command(state) -> Artifact:
    g = state["algebra"]
    module = build_verma(g, state["lam"], state["level"], _depth(state))
    if state.get("simple"):
        module = simple_quotient(module)
    return _graded_output(state, module)


def twisted_graded_dims_command(state) -> Artifact:
    module = build_twisted_verma(state["algebra"], state["automorphism"], state["lam"], state["level"], _depth(state))
    if state.get("simple"):
        module = twisted_simple_quotient(module)
    return _graded_output(state, module)


def classify_command(state) -> Artifact:
    return classify(state["algebra"], state["automorphism"], state["level"], _depth(state))


# =========================
# verify --identity
# =========================

def _currents(module):
    """e_θ(-1)1, f_θ(-1)1 and the top vector of the module."""
    source = module.source
    basis = module.basis
    g = basis.algebra
    e_theta = basis.to_adapted(highest_root_vector(g))
    f_theta = basis.to_adapted(g.element("f_theta"))
    u = source.act(-1, e_theta, source.vacuum())
    v = source.act(-1, f_theta, source.vacuum())
    return u, v, module.top_vector(0)


def _untwisted_module(state):
    g = state["algebra"]
    return build_vacuum(trivial_automorphism(g), state["level"], _depth(state))


def _twisted_module(state):
    return build_twisted_verma(state["algebra"], state["automorphism"], state["lam"], state["level"], _depth(state))


def _verify_jacobi(state) -> dict:
    module = _untwisted_module(state)
    return verify_twisted_jacobi(module, *_currents(module))


def _verify_twisted_jacobi(state) -> dict:
    module = _twisted_module(state)
    return verify_twisted_jacobi(module, *_currents(module))


def _verify_commutator(state) -> dict:
    module = _twisted_module(state)
    return verify_commutator(module, *_currents(module))


def _verify_weak_assoc(state) -> dict:
    module = _twisted_module(state)
    return verify_weak_associativity(module, *_currents(module))


def _verify_lie_relation(state) -> dict:
    return verify_current_commutators(_zhu(state))


def _verify_power_field(state) -> dict:
    module = twisted_simple_quotient(_twisted_module(state))
    basis = module.basis
    f = basis.to_adapted(highest_root_vector(basis.algebra))
    power = state["k"] if state.get("k_given") else int(state["level"]) + 1
    return verify_power_field(module, f, power)


def _verify_ideal(state) -> dict:
    return verify_ideal(_zhu(state))


def _verify_associativity(state) -> dict:
    return verify_associativity(_zhu(state))


def _verify_zhu_power(state) -> dict:
    zhu = _zhu(state)
    reports = [verify_zhu_power(zhu, k) for k in range(1, state["k"] + 1)]
    return {"identity_name": "zhu-power", "reports": reports, "equal": all(r["equal"] for r in reports)}


def _verify_v_alpha(state) -> dict:
    return verify_lemma_v_alpha(_zhu(state))


def _verify_spanning(state) -> dict:
    return verify_spanning(_zhu(state))


def _verify_shift(state) -> dict:
    return verify_shift(_zhu(state), 0)


def _verify_phi(state) -> dict:
    module = _twisted_module(state)
    report = verify_phi_homomorphism(module.basis)
    brackets = verify_current_brackets(module, depth=min(_depth(state), 1))
    report["current_brackets"] = brackets
    report["equal"] = report["equal"] and brackets["equal"]
    return report


def _verify_virasoro(state) -> dict:
    g = state["algebra"]
    return verify_virasoro_commutators(build_verma(g, state["lam"], state["level"], _depth(state)))


def _verify_two_oracle(state) -> dict:
    return two_oracle_dims(_twisted_module(state))


def _verify_complete_reducibility(state) -> dict:
    module = twisted_simple_quotient(_twisted_module(state))
    report = complete_reducibility(module)
    report["admissibility"] = admissibility_certificate(module)
    return report


IDENTITIES: Dict[str, Callable[[dict], dict]] = {
    "jacobi": _verify_jacobi,
    "twisted-jacobi": _verify_twisted_jacobi,
    "weak-assoc": _verify_weak_assoc,
    "commutator": _verify_commutator,
    "lie-relation": _verify_lie_relation,
    "power-field": _verify_power_field,
    "ideal": _verify_ideal,
    "associativity": _verify_associativity,
    "zhu-power": _verify_zhu_power,
    "v-alpha": _verify_v_alpha,
    "spanning": _verify_spanning,
    "l-1-shift": _verify_shift,
    "phi": _verify_phi,
    "virasoro": _verify_virasoro,
    "two-oracle": _verify_two_oracle,
    "complete-reducibility": _verify_complete_reducibility,
}


def verify_command(state) -> Artifact:
    name = state.get("identity")
    if name not in IDENTITIES:
        raise ValidationError(f"unknown identity '{name}'; choose from {', '.join(sorted(IDENTITIES))}")
    report = IDENTITIES[name](state)
    report["identity_name"] = name
    report["instance"] = _instance(state)
    return report


COMMANDS: Dict[str, Callable[[dict], Artifact]] = {
    "build-algebra": build_algebra_command,
    "eigen-decomp": eigen_decomp_command,
    "zhu-product": zhu_product_command,
    "zhu-power": zhu_power_command,
    "zhu-dims": zhu_dims_command,
    "map-i-check": map_i_check_command,
    "graded-dims": graded_dims_command,
    "twisted-graded-dims": twisted_graded_dims_command,
    "classify": classify_command,
    "verify": verify_command,
}
