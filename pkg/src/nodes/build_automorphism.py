# src/nodes/build_automorphism.py

from ..state import JobState
from ..errors import ToolkitError
from ..liealg import fixed_point_algebra, make_automorphism, named_permutation
from ..utils.log import log
from . import job_failure


def build_automorphism_node(state: JobState) -> dict:
    """
    Build σ = μ exp(ad e) from --mu and --e.
    Trivial μ when --mu is absent; λ defaults to 0 on g^[0].
    """
    try:
        g = state["algebra"]
        perm = named_permutation(g, state.get("mu"))
        e = g.parse_element(state["e_text"]) if state.get("e_text") else None
        aut = make_automorphism(g, perm, e)

        lam = list(state.get("lam") or [])
        if not lam:
            lam = [0] * fixed_point_algebra(g, aut).algebra.rank

        log("BUILD", f"σ on {g.name}: μ = {aut.mu_perm}, T = {aut.order_T}, "
                     f"e = {g.element_str(aut.e) if aut.e else '0'}")

        return {
            "automorphism": aut,
            "lam": lam,
            "stage": "automorphism_built",
        }
    except ToolkitError as exc:
        return job_failure(exc)
