# src/zhu.py

"""
The σ-twisted Zhu algebra A_σ(V) of V = V_g(0, ℓ), σ = μ·exp(ad e).

Products are computed by residue extraction from the vacuum module's vertex
operators; O_σ(V) is spanned at a working depth D by all u ∘ v landing in
weight ≤ D, and classes are canonical reductions against its echelon basis.
The column order (weight desc, excess desc, monomial) makes monomials built
from mode -1 currents the preferred representatives.
"""

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .errors import TruncationError, ValidationError
from .liealg import Automorphism, Elem, highest_root_vector, highest_root_vector_fixed, nilpotent_block_size
from .uea import IdealBasis, PBWElement, UEA
from .utils import config
from .utils.linalg import EchelonBasis, SpanCoordinates, add_into, nullspace, span_rank
from .utils.log import log
from .voa import InducedModule, ModMonomial, ModuleVector, SimpleQuotient, binom, binomial_polynomial, build_vacuum, v_vec


@dataclass
class ZhuClass:
    representative: ModuleVector
    reduced: ModuleVector

    def __eq__(self, other):
        return isinstance(other, ZhuClass) and self.reduced == other.reduced

    def is_zero(self) -> bool:
        return not self.reduced


class ZhuAlgebra:
    """Context for A_σ(V_g(0, ℓ)) at a fixed working depth."""

    def __init__(self, aut: Automorphism, level, depth=None):
        self.aut = aut
        self.level = Fraction(level)
        self.depth = Fraction(config.zhu_depth(self.level) if depth is None else depth)
        if self.depth < 1:
            raise ValidationError("the working depth must be at least 1")
        self.V = build_vacuum(aut, self.level, self.depth)
        self.basis = self.V.basis
        self.T = self.basis.order_T
        self.e = self.basis.e
        self._o_basis: Optional[EchelonBasis] = None
        self._columns: Optional[List[ModMonomial]] = None

    # ---- N = e(0) on V ----------------------------------------------

    def apply_n(self, u: ModuleVector) -> ModuleVector:
        return self.V.act(0, self.e, u) if self.e else {}

    def n_powers(self, u: ModuleVector) -> List[ModuleVector]:
        """[u, Nu, N²u, ...] up to the last nonzero power."""
        out = [u]
        while True:
            nxt = self.apply_n(out[-1])
            if not nxt:
                return out
            out.append(nxt)

    def binomial_n(self, powers: List[ModuleVector], j: int) -> ModuleVector:
        if j == 0:
            return dict(powers[0])
        out: ModuleVector = {}
        for r, c in enumerate(binomial_polynomial(j)):
            if c and r < len(powers):
                add_into(out, powers[r], c)
        return out

    def block_size(self, u: ModuleVector) -> int:
        return nilpotent_block_size(u, self.apply_n)

    # ---- homogeneity ------------------------------------------------

    def split(self, u: ModuleVector) -> List[Tuple[Fraction, int, ModuleVector]]:
        """Homogeneous parts (weight, class, vector) of u."""
        parts: Dict[Tuple[Fraction, int], ModuleVector] = {}
        for m, c in u.items():
            parts.setdefault((self.V.depth(m), self.V.weight_class(m)), {})[m] = c
        return [(wt, cls, vec) for (wt, cls), vec in sorted(parts.items())]

    def homogeneous(self, u: ModuleVector) -> Tuple[Fraction, int]:
        parts = self.split(u)
        if len(parts) != 1:
            raise ValidationError("u must be homogeneous in weight and class")
        return parts[0][0], parts[0][1]

    # ---- residues ---------------------------------------------------

    def _residue(self, u: ModuleVector, wt_u: Fraction, exponent: Fraction, offset: int, v: ModuleVector) -> ModuleVector:
        """Σ_s Σ_j C(exponent, s-j) (C(N,j)u)_{s+offset} v, i.e. Res_x x^{-offset-1} Y((1+x)^{exponent+N}u, x)v."""
        powers = self.n_powers(u)
        wt_v = max((self.V.depth(m) for m in v), default=Fraction(0))
        out: ModuleVector = {}
        s = 0
        while s + offset <= wt_u + wt_v - 1:
            for j in range(s + 1):
                c = binom(exponent, s - j)
                if not c:
                    continue
                z = self.binomial_n(powers, j)
                if z:
                    add_into(out, self.V.y(z, s + offset, v), c)
            s += 1
        return out

    def circ(self, u: ModuleVector, v: ModuleVector) -> ModuleVector:
        """u ∘_σ v = Res_x x^{-1-δ} Y((1+x)^{wt u + N - 1 + δ + α} u, x) v, split linearly in u."""
        out: ModuleVector = {}
        for wt, cls, part in self.split(u):
            delta = 1 if cls == 0 else 0
            alpha = Fraction(cls, self.T)
            add_into(out, self._residue(part, wt, wt - 1 + delta + alpha, -1 - delta, v))
        return out

    def star_linear(self, u: ModuleVector, v: ModuleVector) -> ModuleVector:
        out: ModuleVector = {}
        for wt, cls, part in self.split(u):
            if cls == 0:
                add_into(out, self._residue(part, wt, wt, -1, v))
        return out

    def star(self, u: ModuleVector, v: ModuleVector) -> ModuleVector:
        """u *_σ v = Res_x x^{-1} Y((1+x)^{wt u + N} u, x) v for u ∈ V^[0], else 0."""
        self.homogeneous(u)
        return self.star_linear(u, v)

    def lie_rhs(self, u: ModuleVector, v: ModuleVector) -> ModuleVector:
        """Res_x Y((1+x)^{wt u + N - 1} u, x) v."""
        out: ModuleVector = {}
        for wt, _, part in self.split(u):
            add_into(out, self._residue(part, wt, wt - 1, 0, v))
        return out

    # ---- O_σ(V) -----------------------------------------------------

    def columns(self) -> List[ModMonomial]:
        if self._columns is None:
            monomials = [m for d in self.V.depths(self.depth) for m in self.V.monomials(d)]

            def key(m):
                d = self.V.depth(m)
                return (-d, -(d - len(m[0])), m)

            self._columns = sorted(monomials, key=key)
        return self._columns

    def o_span(self) -> EchelonBasis:
        if self._o_basis is not None:
            return self._o_basis
        V, D = self.V, self.depth
        rows = []
        for du in V.depths(D):
            if du == 0:
                continue
            for u in V.monomials(du):
                delta = 1 if V.weight_class(u) == 0 else 0
                for dv in V.depths(D - du - delta):
                    for v in V.monomials(dv):
                        row = self.circ(v_vec(u), v_vec(v))
                        if row:
                            rows.append(row)
        self._o_basis = EchelonBasis(rows, self.columns())
        log("ZHU", f"O-span at depth ≤ {D}: {len(rows)} generators, rank {self._o_basis.rank}")
        return self._o_basis

    def reduce(self, v: ModuleVector) -> ZhuClass:
        for m in v:
            if self.V.depth(m) > self.depth:
                raise TruncationError(f"weight {self.V.depth(m)} exceeds the working depth {self.depth}")
        return ZhuClass(dict(v), self.o_span().reduce(v))

    def quotient_dim(self) -> int:
        """dim of V_{≤D} modulo the truncated O-span."""
        return len(self.columns()) - self.o_span().rank

    # ---- I: U(g^[0]) -> A_σ(V) --------------------------------------

    def i(self, x: Elem) -> ModuleVector:
        """i(g) = g(-1)1 + ℓ<e, g>1."""
        if not self.basis.in_fixed(x):
            raise ValidationError("element is not in g^[0]")
        out = self.V.act(-1, x, self.V.vacuum())
        shift = self.level * self.basis.form_value(self.e, x)
        if shift:
            add_into(out, self.V.vacuum(), shift)
        return out

    def product(self, u: ModuleVector, v: ModuleVector) -> ZhuClass:
        return self.reduce(self.star_linear(u, v))

    def map_I(self, p: PBWElement) -> ZhuClass:
        g0 = self.basis.fixed.algebra
        if p.uea.algebra is not g0:
            raise ValidationError("map_I takes elements of U(g^[0])")
        total: ModuleVector = {}
        for monomial, c in p.terms.items():
            acc = self.V.vacuum()
            for b in reversed(monomial):
                acc = self.product(self.i({b: Fraction(1)}), acc).reduced
            add_into(total, acc, c)
        return self.reduce(total)

    def power(self, c: ZhuClass, k: int) -> ZhuClass:
        if k < 0:
            raise ValidationError("power must be non-negative")
        acc = self.reduce(self.V.vacuum())
        for _ in range(k):
            acc = self.product(c.reduced, acc.reduced)
        return acc

    def enveloping(self) -> UEA:
        return UEA(self.basis.fixed.algebra)


# =========================
# Operations
# =========================

def circ_g(zhu: ZhuAlgebra, u: ModuleVector, v: ModuleVector) -> ModuleVector:
    zhu.homogeneous(u)
    return zhu.circ(u, v)


def star_g(zhu: ZhuAlgebra, u: ModuleVector, v: ModuleVector) -> ModuleVector:
    return zhu.star(u, v)


def o_span_basis(zhu: ZhuAlgebra) -> EchelonBasis:
    return zhu.o_span()


def zhu_reduce(zhu: ZhuAlgebra, v: ModuleVector) -> ZhuClass:
    return zhu.reduce(v)


def map_I(zhu: ZhuAlgebra, p: PBWElement) -> ZhuClass:
    return zhu.map_I(p)


def zhu_power(zhu: ZhuAlgebra, c: ZhuClass, k: int) -> ZhuClass:
    if k > zhu.depth:
        raise TruncationError(f"power {k} needs working depth ≥ {k}, have {zhu.depth}")
    return zhu.power(c, k)


def theta_vector(zhu: ZhuAlgebra) -> Elem:
    """e_θ when it lies in g^[0], otherwise e_{θ^0}, in adapted coordinates."""
    g, aut = zhu.aut.algebra, zhu.aut
    e_theta = zhu.basis.to_adapted(highest_root_vector(g))
    if zhu.basis.in_fixed(e_theta):
        return e_theta
    return zhu.basis.to_adapted(highest_root_vector_fixed(g, aut))


def lemma_expansion(zhu: ZhuAlgebra, k: int) -> Dict[int, Fraction]:
    """Coefficients a_i of [e_θ(-1)^i 1] in i(e_θ)^k: a_k = 1, a_i = C(k,i)C(ℓ-i,k-i)(k-i)!."""
    out = {k: Fraction(1)}
    for i in range(k):
        value = binom(k, i) * binom(zhu.level - i, k - i) * _factorial(k - i)
        if value:
            out[i] = value
    return out


def _factorial(n: int) -> int:
    out = 1
    for r in range(2, n + 1):
        out *= r
    return out


def theta_power_vector(zhu: ZhuAlgebra, x: Elem, i: int) -> ModuleVector:
    """x(-1)^i 1."""
    vec = zhu.V.vacuum()
    for _ in range(i):
        vec = zhu.V.act(-1, x, vec)
    return vec


def verify_zhu_power(zhu: ZhuAlgebra, k: int) -> dict:
    """i(e_θ)^k against Σ_i a_i [e_θ(-1)^i 1] as Zhu classes."""
    x = theta_vector(zhu)
    lhs = zhu_power(zhu, zhu.reduce(zhu.i(x)), k)
    rhs: ModuleVector = {}
    coefficients = lemma_expansion(zhu, k)
    for i, c in coefficients.items():
        add_into(rhs, theta_power_vector(zhu, x, i), c)
    rhs_class = zhu.reduce(rhs)
    return {
        "identity_name": "zhu-power",
        "k": k,
        "coefficients": {str(i): c for i, c in sorted(coefficients.items())},
        "lhs": zhu.V.vector_str(lhs.reduced),
        "rhs": zhu.V.vector_str(rhs_class.reduced),
        "equal": lhs == rhs_class,
    }


def verify_power_step(zhu: ZhuAlgebra, k: int) -> dict:
    """(e_θ(-1)1) *_σ e_θ(-1)^k 1 = e_θ(-1)^{k+1}1 - 2k e_θ(-1)^k 1 - k(ℓ-k+1) e_θ(-1)^{k-1}1, e = f_θ."""
    x = theta_vector(zhu)
    u = zhu.V.act(-1, x, zhu.V.vacuum())
    lhs = zhu.star_linear(u, theta_power_vector(zhu, x, k))
    rhs = dict(theta_power_vector(zhu, x, k + 1))
    add_into(rhs, theta_power_vector(zhu, x, k), -2 * k)
    if k >= 1:
        add_into(rhs, theta_power_vector(zhu, x, k - 1), -k * (zhu.level - k + 1))
    return {"identity_name": "power-step", "k": k, "equal": lhs == rhs,
            "lhs": zhu.V.vector_str(lhs), "rhs": zhu.V.vector_str(rhs)}


def verify_lie_relation(zhu: ZhuAlgebra, u: ModuleVector, v: ModuleVector) -> dict:
    """u * v - v * u ≡ Res_x Y((1+x)^{wt u + N - 1} u, x) v for u, v ∈ V^[0]."""
    for vec in (u, v):
        if zhu.homogeneous(vec)[1] != 0:
            raise ValidationError("the Lie relation needs u, v ∈ V^[0]")
    lhs = dict(zhu.star(u, v))
    add_into(lhs, zhu.star(v, u), -1)
    lhs_class = zhu.reduce(lhs)
    rhs_class = zhu.reduce(zhu.lie_rhs(u, v))
    return {
        "identity_name": "lie-relation",
        "lhs": zhu.V.vector_str(lhs_class.reduced),
        "rhs": zhu.V.vector_str(rhs_class.reduced),
        "equal": lhs_class == rhs_class,
    }


def verify_current_commutators(zhu: ZhuAlgebra) -> dict:
    """[i(a), i(b)] = i([a, b]) for all basis pairs of g^[0]."""
    n0 = zhu.basis.fixed_dim
    failures = []
    for a in range(n0):
        for b in range(n0):
            ia, ib = zhu.i({a: Fraction(1)}), zhu.i({b: Fraction(1)})
            lhs = dict(zhu.star_linear(ia, ib))
            add_into(lhs, zhu.star_linear(ib, ia), -1)
            bracket = zhu.basis.bracket({a: Fraction(1)}, {b: Fraction(1)})
            rhs = zhu.i(bracket) if bracket else {}
            if zhu.reduce(lhs) != zhu.reduce(rhs):
                failures.append([zhu.basis.labels[a], zhu.basis.labels[b]])
    return {"identity_name": "lie-relation", "pairs": n0 * n0, "failures": failures, "equal": not failures}


def verify_injectivity(zhu: ZhuAlgebra, degree: int) -> dict:
    """dim span{map_I(m) : deg m ≤ d} against dim U(g^[0])_{≤d}."""
    uea = zhu.enveloping()
    classes = [zhu.map_I(PBWElement(uea, {m: Fraction(1)})).reduced for m in uea.monomials_up_to(degree)]
    rank = span_rank(classes)
    expected = uea.filtered_dim(degree)
    return {"identity_name": "map-i", "degree": degree, "rank": rank, "expected": expected, "equal": rank == expected}


def verify_lemma_v_alpha(zhu: ZhuAlgebra, max_weight=None) -> dict:
    """Every monomial of V^[α], α ≠ 0, reduces to the zero class."""
    max_weight = zhu.depth if max_weight is None else Fraction(max_weight)
    failures = []
    checked = 0
    for d in zhu.V.depths(max_weight):
        for m in zhu.V.monomials(d):
            if zhu.V.weight_class(m) == 0:
                continue
            checked += 1
            if not zhu.reduce(v_vec(m)).is_zero():
                failures.append(zhu.V.monomial_str(m))
    return {"identity_name": "v-alpha", "checked": checked, "failures": failures, "equal": not failures}


def verify_spanning(zhu: ZhuAlgebra) -> dict:
    """Classes of weight ≤ D lie in the span of [g_1(-1)···g_k(-1)1], g_i ∈ g^[0]."""
    V = zhu.V
    n0 = zhu.basis.fixed_dim
    spanning = []
    others = []
    for d in V.depths(zhu.depth):
        for m in V.monomials(d):
            keys = m[0]
            if all(mode == -1 and a < n0 for mode, a in keys):
                spanning.append(zhu.reduce(v_vec(m)).reduced)
            else:
                others.append(m)
    span = EchelonBasis(spanning, zhu.columns())
    failures = [V.monomial_str(m) for m in others if not span.contains(zhu.reduce(v_vec(m)).reduced)]
    return {"identity_name": "spanning", "checked": len(others), "failures": failures, "equal": not failures}


def verify_shift(zhu: ZhuAlgebra, n: int = 0) -> dict:
    """Res_x Y((1+x)^{1+N} a(-1)1, x) v / x^{2+n} ≡ 0, i.e. (a(-n-2) + a(-n-1))v ≡ 0 when [e, a] = 0."""
    V = zhu.V
    failures = []
    checked = 0
    for a in range(zhu.basis.fixed_dim):
        u = V.act(-1, {a: Fraction(1)}, V.vacuum())
        for d in V.depths(zhu.depth - n - 2):
            for m in V.monomials(d):
                vec = zhu._residue(u, Fraction(1), Fraction(1), -2 - n, v_vec(m))
                checked += 1
                if not zhu.reduce(vec).is_zero():
                    failures.append([zhu.basis.labels[a], V.monomial_str(m)])
    return {"identity_name": "l-1-shift", "n": n, "checked": checked, "failures": failures, "equal": not failures}


def _random_vector(zhu: ZhuAlgebra, rng: random.Random, max_weight, class_zero: bool) -> ModuleVector:
    V = zhu.V
    choices = [m for d in V.depths(max_weight) for m in V.monomials(d)
               if not class_zero or V.weight_class(m) == 0]
    m = rng.choice(choices)
    return v_vec(m)


def verify_ideal(zhu: ZhuAlgebra, samples: Optional[int] = None, seed: Optional[int] = None) -> dict:
    """u * (v ∘ w) and (v ∘ w) * u reduce to zero for random monomials."""
    samples = config.IDENTITY_SAMPLES if samples is None else samples
    rng = random.Random(config.RANDOM_SEED if seed is None else seed)
    D = zhu.depth
    failures = []
    checked = 0
    V = zhu.V
    for _ in range(samples):
        v = _random_vector(zhu, rng, D - 1, False)
        wt_v, cls_v = zhu.homogeneous(v)
        delta = 1 if cls_v == 0 else 0
        room = D - wt_v - delta
        if room < 0:
            continue
        w = _random_vector(zhu, rng, room, False)
        o = zhu.circ(v, w)
        wt_o = max((V.depth(m) for m in o), default=Fraction(0))
        if wt_o >= D:
            continue
        u = _random_vector(zhu, rng, D - wt_o, True)
        checked += 1
        for name, value in (("left", zhu.star_linear(u, o)), ("right", zhu.star_linear(o, u))):
            if not zhu.reduce(value).is_zero():
                failures.append({"side": name, "u": V.vector_str(u), "v": V.vector_str(v), "w": V.vector_str(w)})
    return {"identity_name": "ideal", "checked": checked, "failures": failures, "equal": not failures}


def verify_associativity(zhu: ZhuAlgebra, samples: Optional[int] = None, seed: Optional[int] = None) -> dict:
    """(a * b) * c ≡ a * (b * c) for random V^[0] monomials within the working depth."""
    samples = config.IDENTITY_SAMPLES if samples is None else samples
    rng = random.Random(config.RANDOM_SEED if seed is None else seed)
    D = zhu.depth
    V = zhu.V
    failures = []
    checked = 0
    for _ in range(samples):
        a = _random_vector(zhu, rng, D, True)
        wa = zhu.homogeneous(a)[0]
        b = _random_vector(zhu, rng, D - wa, True)
        wb = zhu.homogeneous(b)[0]
        c = _random_vector(zhu, rng, D - wa - wb, True)
        left = zhu.star_linear(zhu.star_linear(a, b), c)
        right = zhu.star_linear(a, zhu.star_linear(b, c))
        checked += 1
        if zhu.reduce(left) != zhu.reduce(right):
            failures.append({"a": V.vector_str(a), "b": V.vector_str(b), "c": V.vector_str(c)})
    return {"identity_name": "associativity", "checked": checked, "failures": failures, "equal": not failures}


def verify_block_size_separation(zhu: ZhuAlgebra, u: ModuleVector) -> dict:
    """N^r u, r < b, have pairwise different (ad e)-block sizes b, b-1, ..., 1."""
    powers = zhu.n_powers(u)
    sizes = [zhu.block_size(p) for p in powers]
    expected = list(range(len(powers), 0, -1))
    return {"identity_name": "block-size", "sizes": sizes, "equal": sizes == expected}


def quotient_dimensions(zhu: ZhuAlgebra, degree: int) -> dict:
    """dim U(g^[0])_{≤d}/<x^{ℓ+1}>_{≤d} next to the rank of the same ideal's image in A_σ(V)."""
    if zhu.level.denominator != 1 or zhu.level < 0:
        raise ValidationError("the quotient report needs a non-negative integral level")
    power = int(zhu.level) + 1
    uea = zhu.enveloping()
    x = theta_vector(zhu)
    generator = uea.generator(x) ** power
    if degree >= power:
        u_side = IdealBasis(generator, degree).quotient_dim()
    else:
        u_side = uea.filtered_dim(degree)

    images = [zhu.map_I(PBWElement(uea, {m: Fraction(1)})).reduced for m in uea.monomials_up_to(degree)]
    x_class = zhu.reduce(theta_power_vector(zhu, x, power)).reduced
    ideal_images = []
    for left in uea.monomials_up_to(max(degree - power, 0)):
        for right in uea.monomials_up_to(max(degree - power - len(left), 0)):
            if len(left) + len(right) + power > degree:
                continue
            lhs = zhu.map_I(PBWElement(uea, {left: Fraction(1)})).reduced
            rhs = zhu.map_I(PBWElement(uea, {right: Fraction(1)})).reduced
            ideal_images.append(zhu.product(zhu.product(lhs, x_class).reduced, rhs).reduced)
    zhu_side = span_rank(images) - span_rank(ideal_images)
    return {"identity_name": "quotient-dims", "degree": degree, "enveloping_side": u_side, "zhu_side": zhu_side}



# =========================
# Ω on modules
# =========================

@dataclass
class OmegaReport:
    dims: Dict[Fraction, int]
    basis: List[ModuleVector]
    actions: Dict[str, Dict[Tuple[int, int], Fraction]]
    field_weight: Fraction
    note: str = "Ω tested against homogeneous u of weight ≤ field_weight"

    @property
    def dim(self) -> int:
        return len(self.basis)

    def to_json(self) -> dict:
        return {
            "dims": {str(d): n for d, n in sorted(self.dims.items())},
            "dim": self.dim,
            "field_weight": self.field_weight,
            "note": self.note,
            "actions": {label: [[r, c, v] for (r, c), v in sorted(matrix.items())]
                        for label, matrix in sorted(self.actions.items())},
        }


def _test_fields(source: InducedModule, weight) -> List[ModuleVector]:
    return [v_vec(m) for d in source.depths(weight) if d > 0 for m in source.monomials(d)]


def omega_subspace(module, field_weight=None) -> OmegaReport:
    """
    Ω(W) = {w : u_k w = 0 whenever wt u - k - 1 < 0}, tested against every basis
    u of the vacuum module with weight ≤ field_weight (default: the depth cap).
    """
    verma = module.verma if isinstance(module, SimpleQuotient) else module
    source = verma.source
    field_weight = verma.depth_cap if field_weight is None else Fraction(field_weight)
    if field_weight < 1:
        raise ValidationError("Ω needs fields of weight at least 1")
    fields = _test_fields(source, field_weight)
    dims: Dict[Fraction, int] = {}
    basis: List[ModuleVector] = []
    for d in verma.depths():
        monomials = module.monomials(d)
        rows: Dict[tuple, Dict[ModMonomial, Fraction]] = {}
        for u_index, u in enumerate(fields):
            wt_u = source.depth_of(u)
            cls = source.weight_class(next(iter(u)))
            k = Fraction(cls, verma.T) if verma.twisted else Fraction(0)
            while k <= wt_u - 1:
                k += 1
            while k <= wt_u - 1 + d:
                for m in monomials:
                    for target, c in module.y(u, k, v_vec(m)).items():
                        rows.setdefault((u_index, k, target), {})[m] = c
                k += 1
        kernel = nullspace(list(rows.values()), monomials)
        dims[d] = len(kernel)
        basis.extend(kernel)

    actions = {}
    if basis:
        coords = SpanCoordinates(basis)
        zero_modes = _zero_mode_actions(module, verma)
        for b, act in zero_modes.items():
            matrix = {}
            for j, w in enumerate(basis):
                image = coords.coordinates(act(w))
                if image is None:
                    raise ValidationError("o(i(g)) does not preserve Ω")
                for r, c in image.items():
                    matrix[(r, j)] = c
            actions[verma.basis.labels[b]] = matrix
    log("ZHU", f"Ω dims {dict((str(d), n) for d, n in dims.items())}")
    return OmegaReport(dims, basis, actions, field_weight)


def _zero_mode_actions(module, verma: InducedModule):
    """o(i(g)) for g in the g^[0] basis: g(0) on the module."""
    source = verma.source
    out = {}
    for b in range(verma.basis.fixed_dim):
        current = source.act(-1, {b: Fraction(1)}, source.vacuum())
        shift = verma.level * verma.basis.form_value(verma.log_e, {b: Fraction(1)}) if verma.log_e else 0

        def act(w, current=current, shift=shift):
            out_vec = o_operator(module, current, w)
            if shift:
                out_vec = add_into(dict(out_vec), w, shift)
            return out_vec

        out[b] = act
    return out


def o_operator(module, u: ModuleVector, w: ModuleVector) -> ModuleVector:
    """o(u) = Σ over homogeneous parts of u_{wt - 1} (log power 0)."""
    verma = module.verma if isinstance(module, SimpleQuotient) else module
    out: ModuleVector = {}
    parts: Dict[Fraction, ModuleVector] = {}
    for m, c in u.items():
        parts.setdefault(verma.source.depth(m), {})[m] = c
    for wt, part in parts.items():
        add_into(out, module.y(part, wt - 1, w))
    return out
