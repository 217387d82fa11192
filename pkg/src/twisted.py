# src/twisted.py

"""
σ-twisted structure for σ = μ·exp(ad e).

The σ-twisted affinization is realized inside the μ-twisted one through

    φ(a ⊗ t^m) = a(m) - δ_{m,0} <e, a> k,

so a σ-twisted module is a μ-twisted induced module whose zero modes are
pulled back through φ.  The vertex operators Y^σ_0 come from the shared
engine in voa.py; this module adds the bracket, φ, log-series
reconstruction, the Jacobi-type identity checks and the classification
certificates.
"""

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import TruncationError, ValidationError
from .liealg import AdaptedBasis, Automorphism, Elem, LieAlgebraData, adapted_basis, highest_root_vector
from .uea import UEA, act_on, irreducible_module
from .utils import config
from .utils.linalg import EchelonBasis, add_into, nullspace, scaled
from .utils.log import log
from .utils.serialize import rational_str
from .voa import (
    InducedModule,
    ModMonomial,
    ModuleVector,
    SimpleQuotient,
    binom,
    binomial_polynomial,
    build_vacuum,
    cartan_weights,
    generated_submodule,
    maximal_submodule_radical,
    monomial_weight,
    simple_quotient,
    singular_vectors,
    v_vec,
)
from .zhu import omega_subspace


# =========================
# Twisted affinization and φ
# =========================

@dataclass
class TwistedAffineElement:
    """Σ c (a ⊗ t^m) + c_k k with a in the adapted basis, m ∈ class(a)/T + Z."""

    basis: AdaptedBasis
    terms: Dict[Tuple[Fraction, int], Fraction] = field(default_factory=dict)
    central: Fraction = Fraction(0)
    kind: str = "sigma"

    def __post_init__(self):
        T = self.basis.order_T
        for (mode, a), c in list(self.terms.items()):
            if (Fraction(mode) - Fraction(self.basis.classes[a], T)).denominator != 1:
                raise ValidationError(f"mode {mode} does not match the class of {self.basis.labels[a]}")
            if not c:
                del self.terms[(mode, a)]
        self.central = Fraction(self.central)

    @classmethod
    def current(cls, basis: AdaptedBasis, x: Elem, mode, kind: str = "sigma") -> "TwistedAffineElement":
        return cls(basis, {(Fraction(mode), a): Fraction(c) for a, c in x.items()}, Fraction(0), kind)

    def __add__(self, other):
        _check_same(self, other)
        terms = add_into(dict(self.terms), other.terms)
        return TwistedAffineElement(self.basis, terms, self.central + other.central, self.kind)

    def __eq__(self, other):
        return (isinstance(other, TwistedAffineElement) and self.kind == other.kind
                and self.terms == other.terms and self.central == other.central)

    def __str__(self):
        parts = [f"{rational_str(c)}*{self.basis.labels[a]}({rational_str(m)})"
                 for (m, a), c in sorted(self.terms.items())]
        if self.central:
            parts.append(f"{rational_str(self.central)}*k")
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "terms": [[self.basis.labels[a], m, c] for (m, a), c in sorted(self.terms.items())],
            "central": self.central,
        }


def _check_same(x: TwistedAffineElement, y: TwistedAffineElement):
    if x.basis is not y.basis or x.kind != y.kind:
        raise ValidationError("elements belong to different affinizations")


def _bracket(x: TwistedAffineElement, y: TwistedAffineElement, e: Elem) -> TwistedAffineElement:
    basis = x.basis
    terms: Dict[Tuple[Fraction, int], Fraction] = {}
    central = Fraction(0)
    for (m, a), ca in x.terms.items():
        for (n, b), cb in y.terms.items():
            inner = basis.brackets.get((a, b), {})
            for c, coeff in inner.items():
                key = (m + n, c)
                terms[key] = terms.get(key, Fraction(0)) + ca * cb * coeff
            if m + n == 0:
                value = m * basis.form.get((a, b), Fraction(0))
                if e and inner:
                    value += basis.form_value(e, inner)
                central += ca * cb * value
    return TwistedAffineElement(basis, terms, central, x.kind)


def twisted_bracket(x: TwistedAffineElement, y: TwistedAffineElement) -> TwistedAffineElement:
    """[a⊗t^m, b⊗t^n] = [a,b]⊗t^{m+n} + δ_{m+n,0}(m<a,b> + <e,[a,b]>)k."""
    _check_same(x, y)
    if x.kind != "sigma":
        raise ValidationError("twisted_bracket takes σ-twisted elements")
    return _bracket(x, y, x.basis.e)


def mu_bracket(x: TwistedAffineElement, y: TwistedAffineElement) -> TwistedAffineElement:
    """[a(m), b(n)] = [a,b](m+n) + m δ_{m+n,0} <a,b> k."""
    _check_same(x, y)
    if x.kind != "mu":
        raise ValidationError("mu_bracket takes μ-twisted elements")
    return _bracket(x, y, {})


def _phi(x: TwistedAffineElement, sign: int, kind: str) -> TwistedAffineElement:
    basis = x.basis
    e = basis.e
    central = x.central
    for (m, a), c in x.terms.items():
        if m == 0 and e:
            central -= sign * c * basis.form_value(e, {a: Fraction(1)})
    return TwistedAffineElement(basis, dict(x.terms), central, kind)


def iso_phi(x: TwistedAffineElement) -> TwistedAffineElement:
    if x.kind != "sigma":
        raise ValidationError("φ is defined on the σ-twisted affinization")
    return _phi(x, 1, "mu")


def iso_phi_inverse(y: TwistedAffineElement) -> TwistedAffineElement:
    if y.kind != "mu":
        raise ValidationError("φ^{-1} is defined on the μ-twisted affinization")
    return _phi(y, -1, "sigma")


def _window_modes(basis: AdaptedBasis, a: int, bound) -> List[Fraction]:
    alpha = Fraction(basis.classes[a], basis.order_T)
    out = []
    m = alpha - int(bound) - 1
    while m <= bound:
        if abs(m) <= bound:
            out.append(m)
        m += 1
    return out


def verify_phi_homomorphism(basis: AdaptedBasis, bound: int = 2) -> dict:
    """φ[x, y] = [φx, φy] on all basis pairs with |m|, |n| ≤ bound."""
    failures = []
    checked = 0
    for a in range(basis.dim):
        for b in range(basis.dim):
            for m in _window_modes(basis, a, bound):
                for n in _window_modes(basis, b, bound):
                    x = TwistedAffineElement.current(basis, {a: Fraction(1)}, m)
                    y = TwistedAffineElement.current(basis, {b: Fraction(1)}, n)
                    checked += 1
                    if iso_phi(twisted_bracket(x, y)) != mu_bracket(iso_phi(x), iso_phi(y)):
                        failures.append([basis.labels[a], m, basis.labels[b], n])
    return {"identity_name": "phi-homomorphism", "checked": checked, "failures": failures, "equal": not failures}


def verify_phi_roundtrip(basis: AdaptedBasis, samples: int = 20, seed: Optional[int] = None) -> dict:
    rng = random.Random(config.RANDOM_SEED if seed is None else seed)
    failures = 0
    for _ in range(samples):
        terms = {}
        for _ in range(rng.randint(1, 3)):
            a = rng.randrange(basis.dim)
            m = rng.choice(_window_modes(basis, a, 2))
            terms[(m, a)] = Fraction(rng.randint(-5, 5))
        x = TwistedAffineElement(basis, terms, Fraction(rng.randint(-3, 3)))
        if iso_phi_inverse(iso_phi(x)) != x:
            failures += 1
    return {"identity_name": "phi-roundtrip", "checked": samples, "failures": failures, "equal": failures == 0}


# =========================
# Twisted modules
# =========================

def build_twisted_verma(g: LieAlgebraData, aut: Automorphism, lam: Sequence[int], level, depth_cap) -> InducedModule:
    """V_{(g,μ)}(λ, ℓ) with zero modes pulled back through φ."""
    if aut.algebra is not g:
        raise ValidationError("automorphism belongs to a different algebra")
    basis = adapted_basis(aut)
    source = build_vacuum(aut, level, depth_cap)
    module = InducedModule(basis, lam, level, depth_cap, twisted=True, log_e=basis.e, source=source)
    log("TWISTED", f"V_(g,μ)({tuple(lam)}, {rational_str(level)}) of {g.name}, T={basis.order_T}: "
                   f"dims {module.graded_dims()}")
    return module


def twisted_simple_quotient(handle: InducedModule) -> SimpleQuotient:
    return simple_quotient(handle)


def twisted_vertex_mode_Y0(module, u: ModuleVector, n, v: ModuleVector) -> ModuleVector:
    return module.vertex_mode(u, n, v)


def reconstruct_full_Y(module, u: ModuleVector, n, logpow: int, v: ModuleVector) -> ModuleVector:
    """Coefficient of x^{-n-1}(log x)^k in Y(u, x)v = Y_0(x^{-N}u, x)v."""
    if logpow < 0:
        raise ValidationError("log power must be non-negative")
    term = dict(u)
    for _ in range(logpow):
        term = module.apply_n(term)
        if not term:
            return {}
    return scaled(module.vertex_mode(term, n, v), Fraction((-1) ** logpow, factorial(logpow)))


@dataclass
class LogSeriesOperator:
    """Nonzero coefficients (n, k) of Y(u, x)v."""

    coefficients: Dict[Tuple[Fraction, int], ModuleVector]
    nilpotency: int

    def coefficient(self, n, k: int) -> ModuleVector:
        return self.coefficients.get((Fraction(n), k), {})

    def log_powers(self) -> List[int]:
        return sorted({k for _, k in self.coefficients})


def log_series(module, u: ModuleVector, v: ModuleVector) -> LogSeriesOperator:
    verma = _engine(module)
    source = verma.source
    wt_u = _homogeneous_weight(source, u)
    d_v = verma.depth_of(v) or Fraction(0)
    cls = source.weight_class(next(iter(u)))
    K = len(_n_powers(verma, u))
    top = wt_u + d_v - 1
    n = _largest_in_class(Fraction(cls, verma.T) if verma.T > 1 else Fraction(0), top)
    coefficients = {}
    while top - n <= verma.depth_cap:
        for k in range(K):
            value = reconstruct_full_Y(module, u, n, k, v)
            if value:
                coefficients[(n, k)] = value
        n -= 1
    return LogSeriesOperator(coefficients, K)


# =========================
# Identity checks
# =========================

def _engine(module) -> InducedModule:
    return module.verma if isinstance(module, SimpleQuotient) else module


def _homogeneous_weight(source: InducedModule, u: ModuleVector) -> Fraction:
    if not u:
        raise ValidationError("vector is zero")
    weight = source.depth_of(u)
    classes = {source.weight_class(m) for m in u}
    if len(classes) != 1:
        raise ValidationError("vector is not homogeneous in class")
    return weight


def _class_of(source: InducedModule, u: ModuleVector, T: int) -> Fraction:
    return Fraction(source.weight_class(next(iter(u))), T) if T > 1 else Fraction(0)


def _n_powers(module: InducedModule, u: ModuleVector) -> List[ModuleVector]:
    out = [dict(u)]
    while True:
        nxt = module.apply_n(out[-1])
        if not nxt:
            return out
        out.append(nxt)


def _binomial_n(powers: List[ModuleVector], j: int) -> ModuleVector:
    out: ModuleVector = {}
    for r, c in enumerate(binomial_polynomial(j)):
        if c and r < len(powers):
            add_into(out, powers[r], c)
    return out


def _iterate_side(module: InducedModule, u, wt_u, wt_v, v, k: int, m, n, w) -> ModuleVector:
    """Σ_s Σ_j C(m, s-j) ((C(N,j)u)_{k+s} v)_{m+n-s} w."""
    source = module.source
    powers = _n_powers(module, u)
    out: ModuleVector = {}
    s = 0
    while k + s <= wt_u + wt_v - 1:
        for j in range(s + 1):
            c = binom(m, s - j)
            if not c:
                continue
            z = _binomial_n(powers, j)
            inner = source.y(z, k + s, v) if z else {}
            if inner:
                add_into(out, module.y(inner, m + n - s, w), c)
        s += 1
    return out


def _jacobi_lhs(module: InducedModule, u, wt_u, v, wt_v, k: int, m, n, w, d_w) -> ModuleVector:
    """Σ_i (-1)^i C(k,i) [u_{m+k-i} v_{n+i} w - (-1)^k v_{n+k-i} u_{m+i} w]."""
    out: ModuleVector = {}
    i = 0
    while True:
        first_alive = n + i <= wt_v + d_w - 1
        second_alive = m + i <= wt_u + d_w - 1
        if (k >= 0 and i > k) or not (first_alive or second_alive):
            break
        c = (-1) ** i * binom(k, i)
        if c:
            if first_alive:
                inner = module.y(v, n + i, w)
                if inner:
                    add_into(out, module.y(u, m + k - i, inner), c)
            if second_alive:
                inner = module.y(u, m + i, w)
                if inner:
                    add_into(out, module.y(v, n + k - i, inner), -((-1) ** (k % 2)) * c)
        i += 1
    return out


def _modes(alpha: Fraction, bound) -> List[Fraction]:
    out = []
    m = alpha - int(bound) - 1
    while m <= bound:
        if -bound <= m:
            out.append(m)
        m += 1
    return out


def _window(module: InducedModule, window) -> int:
    return int(module.depth_cap) + 2 if window is None else int(window)


def _report(name: str, compared: int, excluded: int, failures: list) -> dict:
    if compared == 0:
        raise TruncationError(f"{name}: every coefficient of the window was excluded by truncation")
    return {"identity_name": name, "compared": compared, "excluded": excluded,
            "failures": failures, "equal": not failures}


def verify_twisted_jacobi(module, u: ModuleVector, v: ModuleVector, w: ModuleVector, window=None) -> dict:
    """Coefficients x_0^{-k-1} x_1^{-m-1} x_2^{-n-1} of the twisted Jacobi identity applied to w."""
    verma = _engine(module)
    source = verma.source
    wt_u, wt_v = _homogeneous_weight(source, u), _homogeneous_weight(source, v)
    d_w = verma.depth_of(w)
    bound = _window(verma, window)
    compared, excluded, failures = 0, 0, []
    for m in _modes(_class_of(source, u, verma.T), bound):
        for n in _modes(_class_of(source, v, verma.T), bound):
            for k in range(-bound, bound + 1):
                target = d_w + wt_u + wt_v - m - n - k - 2
                if target < 0:
                    continue
                if target > verma.depth_cap:
                    excluded += 1
                    continue
                lhs = _jacobi_lhs(verma, u, wt_u, v, wt_v, k, m, n, w, d_w)
                rhs = _iterate_side(verma, u, wt_u, wt_v, v, k, m, n, w)
                compared += 1
                if lhs != rhs:
                    failures.append({"m": m, "k": k, "n": n})
    log("TWISTED", f"Jacobi window ±{bound}: {compared} compared, {excluded} excluded")
    return _report("twisted-jacobi" if verma.log_e or verma.T > 1 else "jacobi", compared, excluded, failures)


def verify_commutator(module, u: ModuleVector, v: ModuleVector, w: ModuleVector, window=None) -> dict:
    """[u_m, v_n]w = Σ_s Σ_j C(m, s-j) ((C(N,j)u)_s v)_{m+n-s} w."""
    verma = _engine(module)
    source = verma.source
    wt_u, wt_v = _homogeneous_weight(source, u), _homogeneous_weight(source, v)
    d_w = verma.depth_of(w)
    bound = _window(verma, window)
    compared, excluded, failures = 0, 0, []
    for m in _modes(_class_of(source, u, verma.T), bound):
        for n in _modes(_class_of(source, v, verma.T), bound):
            target = d_w + wt_u + wt_v - m - n - 2
            if target < 0:
                continue
            if target > verma.depth_cap:
                excluded += 1
                continue
            lhs = dict(verma.y(u, m, verma.y(v, n, w)))
            add_into(lhs, verma.y(v, n, verma.y(u, m, w)), -1)
            rhs = _iterate_side(verma, u, wt_u, wt_v, v, 0, m, n, w)
            compared += 1
            if lhs != rhs:
                failures.append({"m": m, "n": n})
    return _report("commutator", compared, excluded, failures)


def annihilation_bound(module, u: ModuleVector, w: ModuleVector) -> Fraction:
    """Smallest l ∈ α + Z with u_n w = 0 for all n ≥ l."""
    verma = _engine(module)
    source = verma.source
    wt_u = _homogeneous_weight(source, u)
    d_w = verma.depth_of(w)
    alpha = _class_of(source, u, verma.T)
    l = alpha + int(wt_u + d_w - alpha)
    while l <= wt_u + d_w - 1:
        l += 1
    while l - 1 >= -(verma.depth_cap + wt_u + 1) and not verma.y(u, l - 1, w):
        l -= 1
    return l


def verify_weak_associativity(module, u: ModuleVector, v: ModuleVector, w: ModuleVector,
                              l_shift=None, window=None) -> dict:
    """Coefficients x_0^A x_2^B of (x_0+x_2)^l Y_0(u, x_0+x_2)Y_0(v, x_2)w = (x_2+x_0)^l Y_0(Y((1+x_0/x_2)^N u, x_0)v, x_2)w."""
    verma = _engine(module)
    source = verma.source
    wt_u, wt_v = _homogeneous_weight(source, u), _homogeneous_weight(source, v)
    d_w = verma.depth_of(w)
    alpha, beta = _class_of(source, u, verma.T), _class_of(source, v, verma.T)
    computed = annihilation_bound(module, u, w)
    if l_shift is None:
        l = computed
    else:
        l = Fraction(l_shift)
        if (l - alpha).denominator != 1 or l < computed:
            raise ValidationError(f"l = {l} must lie in {alpha} + Z with u_n w = 0 for n ≥ l (smallest is {computed})")
    bound = _window(verma, window)
    powers = _n_powers(verma, u)
    compared, excluded, failures = 0, 0, []
    for A in range(-bound, bound + 1):
        for B in _modes(-beta, bound):
            target = d_w + wt_u + wt_v - l + A + B
            if target < 0:
                continue
            if target > verma.depth_cap:
                excluded += 1
                continue
            lhs: ModuleVector = {}
            t = 0
            while t - B - 1 <= wt_v + d_w - 1:
                p, q = l - 1 - t - A, t - B - 1
                c = binom(l - p - 1, t)
                if c:
                    inner = verma.y(v, q, w)
                    if inner:
                        add_into(lhs, verma.y(u, p, inner), c)
                t += 1
            rhs: ModuleVector = {}
            total = 0
            while total - A - 1 <= wt_u + wt_v - 1:
                for j in range(total + 1):
                    s = total - j
                    c = binom(l, s)
                    if not c:
                        continue
                    z = _binomial_n(powers, j)
                    inner = source.y(z, total - A - 1, v) if z else {}
                    if inner:
                        add_into(rhs, verma.y(inner, l - total - B - 1, w), c)
                total += 1
            compared += 1
            if lhs != rhs:
                failures.append({"A": A, "B": B})
    report = _report("weak-assoc", compared, excluded, failures)
    report["l"] = l
    return report


def _largest_in_class(alpha: Fraction, x) -> Fraction:
    return alpha + math.floor(Fraction(x) - alpha)


def _orderings(modes: Sequence[Fraction]) -> int:
    count = factorial(len(modes))
    for m in set(modes):
        count //= factorial(modes.count(m))
    return count


def power_field_mode(module, f: Elem, power: int, n, w: ModuleVector) -> ModuleVector:
    """Coefficient of x^{-n-1} in Y_0(f(-1)1, x)^power w.

    The modes of f commute, so each multiset of modes is applied largest
    first and counted with its number of orderings.
    """
    verma = _engine(module)
    alpha = Fraction(verma.basis.class_of_element(f), verma.T) if verma.T > 1 else Fraction(0)
    d_w = verma.depth_of(w)
    out: ModuleVector = {}

    def sequences(remaining: int, target: Fraction, ceiling: Fraction, depth: Fraction):
        if remaining == 0:
            if target == 0:
                yield ()
            return
        m = _largest_in_class(alpha, min(ceiling, depth))
        while m * remaining >= target:
            for rest in sequences(remaining - 1, target - m, m, depth - m):
                yield (m,) + rest
            m -= 1

    for modes in sequences(power, Fraction(n) + 1 - power, d_w, d_w):
        vec = dict(w)
        for m in modes:
            vec = verma.current(m, f, vec)
            if not vec:
                break
        if vec:
            add_into(out, vec, _orderings(modes))
    return out


def _power_vector(source: InducedModule, f: Elem, power: int) -> ModuleVector:
    vec = source.vacuum()
    for _ in range(power):
        vec = source.act(-1, f, vec)
    return vec


def verify_power_field(module, f: Elem, power: int, depth=None) -> dict:
    """Y_0(f(-1)^p 1, x) = Y_0(f(-1)1, x)^p mode by mode on basis vectors, f outside g^[0]."""
    verma = _engine(module)
    if verma.basis.class_of_element(f) == 0:
        raise ValidationError("the power-field identity needs f outside g^[0]")
    if power < 1:
        raise ValidationError("power must be positive")
    source = verma.source
    x = _power_vector(source, f, power)
    alpha = _class_of(source, x, verma.T)
    f_alpha = Fraction(verma.basis.class_of_element(f), verma.T)
    depth = verma.depth_cap if depth is None else Fraction(depth)
    simple = isinstance(module, SimpleQuotient)
    compared, failures, commute_failures = 0, [], []
    vanishes = True
    for d in verma.depths(depth):
        for w in module.monomials(d):
            wv = v_vec(w)
            for n in _modes(alpha, d + power):
                target = d + power - n - 1
                if target < 0 or target > verma.depth_cap:
                    continue
                lhs = verma.y(x, n, wv)
                rhs = power_field_mode(verma, f, power, n, wv)
                compared += 1
                if lhs != rhs:
                    failures.append({"n": n, "w": verma.monomial_str(w)})
                if simple and module.reduce(lhs):
                    vanishes = False
            for m1 in _modes(f_alpha, d + 1):
                for m2 in _modes(f_alpha, d + 1):
                    if m1 >= m2 or d - m1 - m2 > verma.depth_cap or d - m1 - m2 < 0:
                        continue
                    left = verma.current(m1, f, verma.current(m2, f, wv))
                    right = verma.current(m2, f, verma.current(m1, f, wv))
                    if left != right:
                        commute_failures.append({"m1": m1, "m2": m2, "w": verma.monomial_str(w)})
    report = _report("power-field", compared, 0, failures)
    report["power"] = power
    report["commute_failures"] = commute_failures
    report["equal"] = not failures and not commute_failures
    if simple:
        report["vanishes_on_simple"] = vanishes
        if power == verma.level + 1:
            # vanishing at power ℓ+1 is expected only when λ is integrable
            report["lambda_admissible"] = admissibility_certificate(module)["admissible"]
    return report


def verify_current_brackets(module, depth=None) -> dict:
    """a(m)b(n) - b(n)a(m) = [a,b](m+n) + δ_{m+n,0}(m<a,b> + <e,[a,b]>)ℓ for the φ-pulled-back currents."""
    verma = _engine(module)
    basis = verma.basis
    depth = verma.depth_cap if depth is None else Fraction(depth)
    failures = []
    checked = 0
    for d in verma.depths(depth):
        for w in verma.monomials(d):
            wv = v_vec(w)
            for a in range(basis.dim):
                for b in range(basis.dim):
                    for m in _window_modes(basis, a, 1):
                        for n in _window_modes(basis, b, 1):
                            if d - m - n > verma.depth_cap or d - m - n < 0:
                                continue
                            x = TwistedAffineElement.current(basis, {a: Fraction(1)}, m)
                            y = TwistedAffineElement.current(basis, {b: Fraction(1)}, n)
                            bracket = twisted_bracket(x, y)
                            lhs = dict(verma.current(m, {a: Fraction(1)}, verma.current(n, {b: Fraction(1)}, wv)))
                            add_into(lhs, verma.current(n, {b: Fraction(1)}, verma.current(m, {a: Fraction(1)}, wv)), -1)
                            rhs: ModuleVector = {}
                            for (mode, c), coeff in bracket.terms.items():
                                add_into(rhs, verma.current(mode, {c: Fraction(1)}, wv), coeff)
                            add_into(rhs, wv, bracket.central * verma.level)
                            checked += 1
                            if lhs != rhs:
                                failures.append([basis.labels[a], m, basis.labels[b], n, verma.monomial_str(w)])
    return {"identity_name": "current-brackets", "checked": checked, "failures": failures, "equal": not failures}


# =========================
# Certificates and classification
# =========================

def theta_power(module, level) -> ModuleVector:
    """e_θ(-1)^{ℓ+1} 1 in the vacuum module."""
    verma = _engine(module)
    level = Fraction(level)
    if level.denominator != 1 or level < 0:
        raise ValidationError("the admissibility certificate needs a non-negative integral level")
    basis = verma.basis
    e_theta = basis.to_adapted(highest_root_vector(basis.algebra))
    return _power_vector(verma.source, e_theta, int(level) + 1)


def admissibility_certificate(module, level=None) -> dict:
    """Y^σ_0(e_θ(-1)^{ℓ+1}1, x) vanishes mode by mode on the module up to its cap."""
    verma = _engine(module)
    level = verma.level if level is None else Fraction(level)
    x = theta_power(module, level)
    weight = int(level) + 1
    alpha = _class_of(verma.source, x, verma.T)
    checked = 0
    failures = []
    for d in verma.depths():
        for w in module.monomials(d):
            for n in _modes(alpha, d + weight):
                target = d + weight - n - 1
                if target < 0 or target > verma.depth_cap:
                    continue
                image = verma.y(x, n, v_vec(w))
                if isinstance(module, SimpleQuotient):
                    image = module.reduce(image)
                checked += 1
                if image:
                    failures.append({"n": n, "w": verma.monomial_str(w)})
    return {"identity_name": "admissibility", "checked": checked, "failures": failures[:10],
            "admissible": not failures}


def weight_on_cartan(basis: AdaptedBasis, lam: Sequence[int], h: Elem) -> Fraction:
    """λ(h) for h in the Cartan subalgebra of g^[0] (adapted coordinates)."""
    g0 = basis.fixed.algebra
    cartan = {g0.h_index(i): i for i in range(g0.rank)}
    if any(a not in cartan for a in h):
        raise ValidationError("element is not in the Cartan subalgebra of g^[0]")
    return sum((c * lam[cartan[a]] for a, c in h.items()), Fraction(0))


def theta_bound(basis: AdaptedBasis, lam: Sequence[int]) -> Fraction:
    """<λ, θ^0> for A_{2n} with non-trivial μ, <λ, θ> otherwise."""
    g = basis.algebra
    g0 = basis.fixed.algebra
    if g.type_label == "A" and g.rank % 2 == 0 and basis.order_T == 2:
        return g0.theta_pairing(lam)
    h_theta = basis.to_adapted(g.coroot(g.num_positive - 1))
    return weight_on_cartan(basis, lam, h_theta)


def _simple_module(g, aut, lam, level, depth):
    return twisted_simple_quotient(build_twisted_verma(g, aut, lam, level, depth))


def classify(g: LieAlgebraData, aut: Automorphism, level, depth) -> dict:
    """Admissible λ of g^[0] for the σ- and μ-twisted simple modules, with the predicted list."""
    level = Fraction(level)
    basis = adapted_basis(aut)
    g0 = basis.fixed.algebra
    mu_only = aut.with_nilpotent({}) if aut.e else aut
    rows = []
    for lam in g0.dominant_weights(level + 1):
        sigma_ok = admissibility_certificate(_simple_module(g, aut, lam, level, depth), level)["admissible"]
        mu_ok = sigma_ok if mu_only is aut else \
            admissibility_certificate(_simple_module(g, mu_only, lam, level, depth), level)["admissible"]
        bound = theta_bound(basis, lam)
        rows.append({
            "lambda": list(lam),
            "theta_pairing": bound,
            "sigma_admissible": sigma_ok,
            "mu_admissible": mu_ok,
            "predicted": bound <= level,
        })
        log("TWISTED", f"λ={lam}: σ {sigma_ok}, μ {mu_ok}, predicted {bound <= level}")
    sigma_list = [r["lambda"] for r in rows if r["sigma_admissible"]]
    mu_list = [r["lambda"] for r in rows if r["mu_admissible"]]
    predicted = [r["lambda"] for r in rows if r["predicted"]]
    return {
        "algebra": g.name,
        "automorphism": aut.to_json(),
        "level": level,
        "depth": Fraction(depth),
        "candidates": rows,
        "sigma_admissible": sigma_list,
        "mu_admissible": mu_list,
        "predicted": predicted,
        "lists_match": sigma_list == mu_list,
        # <λ,θ> ≤ ℓ is necessary, not sufficient
        "within_prediction": all(lam in predicted for lam in sigma_list),
    }


def complete_reducibility(module, level=None, field_weight=None) -> dict:
    """Ω as a g^[0]-module: weight-space split, highest weight vectors, Weyl dimensions, e^{ℓ+1} = 0."""
    verma = _engine(module)
    basis = verma.basis
    g0 = basis.fixed.algebra
    level = verma.level if level is None else Fraction(level)
    omega = omega_subspace(module, field_weight)
    element_weights = cartan_weights(verma)

    # weight components of Ω vectors must lie in Ω again
    pieces: Dict[Tuple[Fraction, ...], List[ModuleVector]] = {}
    for vec in omega.basis:
        split: Dict[Tuple[Fraction, ...], ModuleVector] = {}
        for m, c in vec.items():
            split.setdefault(monomial_weight(verma, m, element_weights), {})[m] = c
        for wt, part in split.items():
            pieces.setdefault(wt, []).append(part)
    weight_spaces = {}
    for wt, parts in pieces.items():
        weight_spaces[wt] = _independent(parts)
    diagonalizable = sum(len(v) for v in weight_spaces.values()) == omega.dim

    # highest weight vectors: killed by every e_i(0) of g^[0]
    raising = [g0.e_index(g0.root_index[tuple(1 if j == i else 0 for j in range(g0.rank))]) for i in range(g0.rank)]
    highest = []
    for wt, vectors in sorted(weight_spaces.items()):
        if not vectors:
            continue
        monomials = sorted({m for vec in vectors for m in vec})
        rows: Dict[tuple, Dict[int, Fraction]] = {}
        for j, vec in enumerate(vectors):
            for i, b in enumerate(raising):
                for target, c in module.act(0, {b: Fraction(1)}, vec).items():
                    rows.setdefault((i, target), {})[j] = c
        kernel = nullspace(list(rows.values()), list(range(len(vectors))))
        for _ in kernel:
            highest.append(wt)
    e_top = basis.to_adapted(highest_root_vector(basis.algebra))
    if not basis.in_fixed(e_top):
        e_top = basis.fixed_to_adapted(highest_root_vector(g0))
    power = int(level) + 1
    # fixed part of the adapted basis is the g^[0] Chevalley basis
    e_power = UEA(g0).generator(e_top) ** power

    dims_ok = True
    weyl_total = 0
    components_killed = True
    for wt in highest:
        if any(x.denominator != 1 or x < 0 for x in wt):
            dims_ok = False
            continue
        dominant = [int(x) for x in wt]
        weyl_total += g0.weyl_dimension(dominant)
        component = irreducible_module(g0, dominant)
        if any(act_on(component, e_power).values()):
            components_killed = False
    semisimple = diagonalizable and dims_ok and weyl_total == omega.dim

    kills = True
    for vec in omega.basis:
        image = dict(vec)
        for _ in range(power):
            image = module.act(0, e_top, image)
            if not image:
                break
        if image:
            kills = False
            break
    return {
        "identity_name": "complete-reducibility",
        "omega": omega.to_json(),
        "weight_multiplicities": {",".join(rational_str(x) for x in wt): len(v) for wt, v in sorted(weight_spaces.items())},
        "highest_weights": [[x for x in wt] for wt in highest],
        "weyl_dimension_total": weyl_total,
        "cartan_diagonalizable": diagonalizable,
        "semisimple": semisimple,
        "theta_power_vanishes": kills,
        "components_killed": components_killed,
        "equal": semisimple and kills and components_killed,
    }


def _independent(vectors: List[ModuleVector]) -> List[ModuleVector]:
    basis = EchelonBasis(vectors, sorted({m for vec in vectors for m in vec}))
    return list(basis.rows.values())


def two_oracle_dims(verma: InducedModule, generators: Optional[List[ModuleVector]] = None) -> dict:
    """Graded dims of the simple quotient by the contravariant radical and by a generated submodule."""
    quotient = twisted_simple_quotient(verma)
    if generators is None:
        generators = [vec for d in verma.depths() if d > 0 for vec in singular_vectors(verma, d)]
    spans = generated_submodule(verma, generators)
    generated = [len(verma.monomials(d)) - spans[d].rank for d in verma.depths()]
    form = maximal_submodule_radical(verma, method="form")
    radical = [len(verma.monomials(d)) - len(form[d]) for d in verma.depths()]
    annihilator = quotient.graded_dims()
    return {
        "identity_name": "two-oracle",
        "depths": verma.depths(),
        "radical_dims": radical,
        "annihilator_dims": annihilator,
        "generated_dims": generated,
        "equal": radical == generated == annihilator,
    }
