# src/voa.py

"""
Induced modules for (twisted) affinizations and their vertex operators.

One engine serves the vacuum module V_g(0,ℓ), the generalized Verma modules
V_g(λ,ℓ) and the μ-twisted modules V_{(g,μ)}(λ,ℓ).  Everything is expressed in
an AdaptedBasis: a current a(m) has a in the adapted basis and m ∈ class(a)/T + Z
(twisted) or m ∈ Z (untwisted).

A monomial is ``(keys, top)`` where ``keys`` is an ascending tuple of creation
keys ``(mode, a)`` with mode < 0, read left to right as operators applied to
the top vector ``top`` (an index into M(λ)).  Vectors are dicts monomial -> Fraction.
"""

import re
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import sympy

from .errors import TruncationError, ValidationError
from .liealg import AdaptedBasis, Automorphism, Elem, LieAlgebraData, adapted_basis, diagram_automorphism
from .uea import IrreducibleModule
from .utils.linalg import EchelonBasis, add_into, nullspace, scaled
from .utils.log import log
from .utils.serialize import csv_text, rational_str

Key = Tuple[Fraction, int]
ModMonomial = Tuple[Tuple[Key, ...], int]
ModuleVector = Dict[ModMonomial, Fraction]

VACUUM: ModMonomial = ((), 0)


def binom(x, i: int) -> Fraction:
    """Generalized binomial coefficient C(x, i) for rational x."""
    if i < 0:
        return Fraction(0)
    out = Fraction(1)
    x = Fraction(x)
    for r in range(i):
        out = out * (x - r) / (r + 1)
    return out


@lru_cache(maxsize=None)
def binomial_polynomial(j: int) -> Tuple[Fraction, ...]:
    """Coefficients c_r with C(N, j) = Σ_r c_r N^r."""
    n = sympy.Symbol("N")
    poly = sympy.Poly(sympy.expand(sympy.ff(n, j) / sympy.factorial(j)), n)
    coeffs = list(reversed(poly.all_coeffs()))
    return tuple(Fraction(int(sympy.fraction(c)[0]), int(sympy.fraction(c)[1])) for c in coeffs)


class InducedModule:
    """
    U(affinization) ⊗ M(λ) with a in the adapted basis, truncated by depth.

    ``twisted`` selects fractional modes class(a)/T + Z.  ``log_e`` is the
    nilpotent e entering the σ-twisted vertex operators (φ pull-back of the
    zero modes and N = ad e in the iterate formula); it is empty for the
    untwisted and the μ-twisted structures.
    """

    def __init__(
        self,
        basis: AdaptedBasis,
        lam: Sequence[int],
        level,
        depth_cap,
        twisted: bool = False,
        log_e: Optional[Elem] = None,
        source: Optional["InducedModule"] = None,
    ):
        g = basis.algebra
        self.basis = basis
        self.level = Fraction(level)
        if self.level == -g.dual_coxeter:
            raise ValidationError(f"level {level} equals -h^v = {-g.dual_coxeter}")
        self.depth_cap = Fraction(depth_cap)
        if self.depth_cap < 0:
            raise ValidationError("depth cap must be non-negative")
        self.twisted = twisted and basis.order_T > 1
        self.T = basis.order_T if self.twisted else 1
        self.log_e = dict(log_e or {})
        if self.log_e and not basis.in_fixed(self.log_e):
            raise ValidationError("e must lie in g^[0]")

        g0 = basis.fixed.algebra
        if self.twisted or basis.order_T == 1:
            self.lam = g0.check_weight(lam)
            self.top = IrreducibleModule(g0, self.lam, anti=lambda b: basis.tau_images[b])
        else:
            if any(lam):
                raise ValidationError("untwisted modules over a μ-adapted basis need λ = 0")
            self.lam = tuple(0 for _ in range(g0.rank))
            self.top = IrreducibleModule(g0, self.lam, anti=lambda b: basis.tau_images[b])
        self.source = source if source is not None else self
        self.kind = "verma"

        self._act_memo: Dict[Tuple[Fraction, int, Tuple[Key, ...], int], ModuleVector] = {}
        self._y_memo: Dict[Tuple[ModMonomial, Fraction, ModMonomial], ModuleVector] = {}
        self._pair_memo: Dict[Tuple[ModMonomial, ModMonomial], Fraction] = {}
        self._monomials: Dict[Fraction, List[ModMonomial]] = {}

    # ---- grading ----------------------------------------------------

    def alpha(self, a: int) -> Fraction:
        """Smallest non-negative mode of a: class(a)/T, or 0 untwisted."""
        return Fraction(self.basis.classes[a], self.T) if self.twisted else Fraction(0)

    def check_mode(self, mode, a: int) -> Fraction:
        mode = Fraction(mode)
        if (mode - self.alpha(a)).denominator != 1:
            raise ValidationError(f"mode {mode} does not match the class of {self.basis.labels[a]}")
        return mode

    @staticmethod
    def depth(monomial: ModMonomial) -> Fraction:
        return -sum((k[0] for k in monomial[0]), Fraction(0))

    def depth_of(self, vec: ModuleVector) -> Optional[Fraction]:
        depths = {self.depth(m) for m in vec}
        if not depths:
            return None
        if len(depths) != 1:
            raise ValidationError("vector is not homogeneous")
        return depths.pop()

    def weight_class(self, monomial: ModMonomial) -> int:
        """μ-eigenvalue class of a vacuum-module monomial."""
        return sum(self.basis.classes[a] for _, a in monomial[0]) % self.basis.order_T

    def depths(self, cap=None) -> List[Fraction]:
        cap = self.depth_cap if cap is None else Fraction(cap)
        step = Fraction(1, self.T)
        out, d = [], Fraction(0)
        while d <= cap:
            out.append(d)
            d += step
        return out

    def creation_keys(self, max_depth) -> List[Key]:
        keys = []
        for a in range(self.basis.dim):
            m = self.alpha(a) - 1
            while -m <= max_depth:
                keys.append((m, a))
                m -= 1
        return sorted(keys)

    def monomials(self, depth) -> List[ModMonomial]:
        depth = Fraction(depth)
        if depth in self._monomials:
            return self._monomials[depth]
        keys = self.creation_keys(depth)
        found: List[Tuple[Key, ...]] = []

        def grow(prefix, start, remaining):
            if remaining == 0:
                found.append(tuple(prefix))
                return
            for pos in range(start, len(keys)):
                weight = -keys[pos][0]
                if weight <= remaining:
                    prefix.append(keys[pos])
                    grow(prefix, pos, remaining - weight)
                    prefix.pop()

        grow([], 0, depth)
        out = [(k, t) for k in sorted(found) for t in range(self.top.dim)]
        self._monomials[depth] = out
        return out

    def graded_dims(self) -> List[int]:
        return [len(self.monomials(d)) for d in self.depths()]

    # ---- current action ---------------------------------------------

    def _central(self, mode: Fraction, a: int, b: int) -> Fraction:
        if mode == 0:
            return Fraction(0)
        value = self.basis.form.get((a, b))
        return mode * value * self.level if value else Fraction(0)

    def _top_action(self, a: int, top: int) -> ModuleVector:
        if self.top.dim == 1 and not any(self.top.lam):
            return {}
        if a >= self.basis.fixed_dim:
            raise ValidationError("zero mode outside g^[0] on a non-trivial top")
        return {((), t): c for t, c in self.top.act_basis(a, top).items()}

    def _act_mono(self, mode: Fraction, a: int, keys: Tuple[Key, ...], top: int) -> ModuleVector:
        memo = (mode, a, keys, top)
        cached = self._act_memo.get(memo)
        if cached is not None:
            return cached
        if mode < 0 and (not keys or (mode, a) <= keys[0]):
            out = {(((mode, a),) + keys, top): Fraction(1)}
        elif not keys:
            out = {} if mode > 0 else self._top_action(a, top)
        else:
            first, rest = keys[0], keys[1:]
            # a(m) b(n) X = b(n) a(m) X + [a, b](m+n) X + m δ <a,b> ℓ X
            out = self.act(first[0], {first[1]: Fraction(1)}, self._act_mono(mode, a, rest, top))
            total = mode + first[0]
            for c, coeff in self.basis.brackets.get((a, first[1]), {}).items():
                add_into(out, self._act_mono(total, c, rest, top), coeff)
            if total == 0:
                central = self._central(mode, a, first[1])
                if central:
                    add_into(out, {(rest, top): Fraction(1)}, central)
        self._act_memo[memo] = out
        return out

    def act(self, mode, x: Elem, vec: ModuleVector) -> ModuleVector:
        """x(mode)·vec for x in the adapted basis, no truncation check."""
        mode = Fraction(mode)
        out: ModuleVector = {}
        for a, ca in x.items():
            for (keys, top), cv in vec.items():
                add_into(out, self._act_mono(mode, a, keys, top), ca * cv)
        return out

    def current(self, mode, x: Elem, vec: ModuleVector) -> ModuleVector:
        """Zero modes pulled back through φ: a(m) - δ_{m,0} <e,a> ℓ."""
        out = self.act(mode, x, vec)
        if mode == 0 and self.log_e:
            shift = self.basis.form_value(self.log_e, x)
            if shift:
                add_into(out, vec, -shift * self.level)
        return out

    def mode_action(self, mode, x: Elem, vec: ModuleVector) -> ModuleVector:
        """x(mode)·vec, failing when the result leaves the truncation."""
        for a in x:
            self.check_mode(mode, a)
        out = self.act(mode, x, vec)
        self._check_depth(out)
        return out

    def _check_depth(self, vec: ModuleVector):
        for m in vec:
            if self.depth(m) > self.depth_cap:
                raise TruncationError(f"result of depth {self.depth(m)} exceeds the cap {self.depth_cap}")

    # ---- vertex operators -------------------------------------------

    def n_power(self, x: Elem, r: int) -> Elem:
        for _ in range(r):
            x = self.basis.bracket(self.log_e, x)
            if not x:
                break
        return x

    def binomial_n(self, x: Elem, j: int) -> Elem:
        """C(N, j)·x with N = ad e."""
        if j == 0:
            return dict(x)
        out: Elem = {}
        for r, c in enumerate(binomial_polynomial(j)):
            if c:
                add_into(out, self.n_power(x, r), c)
        return out

    def _y_mono(self, u: ModMonomial, P: Fraction, w: ModMonomial) -> ModuleVector:
        memo = (u, P, w)
        cached = self._y_memo.get(memo)
        if cached is not None:
            return cached
        keys, _ = u
        if not keys:
            out = {w: Fraction(1)} if P == -1 else {}
            self._y_memo[memo] = out
            return out

        (k, a), rest = keys[0], keys[1:]
        k = int(k)
        v = (rest, 0)
        wt_v = self.depth(v)
        d_w = self.depth(w)
        m = self.alpha(a)
        x = {a: Fraction(1)}
        out: ModuleVector = {}

        i = 0
        while P - m + i <= wt_v + d_w - 1:
            inner = self._y_mono(v, P - m + i, w)
            if inner:
                add_into(out, self.current(m + k - i, x, inner), (-1) ** i * binom(k, i))
            i += 1

        sign = -((-1) ** (k % 2))
        i = 0
        while m + i <= d_w:
            inner = self.current(m + i, x, {w: Fraction(1)})
            if inner:
                add_into(out, self.y(v_vec(v), P - m + k - i, inner), sign * (-1) ** i * binom(k, i))
            i += 1

        s = 1
        while k + s <= wt_v:
            for j in range(s + 1):
                c = binom(m, s - j)
                if not c:
                    continue
                z = self.binomial_n(x, j)
                if not z:
                    continue
                lifted = self.source.act(k + s, z, v_vec(v))
                if lifted:
                    add_into(out, self.y(lifted, P - s, {w: Fraction(1)}), -c)
            s += 1

        self._y_memo[memo] = out
        return out

    def y(self, u: ModuleVector, n, w: ModuleVector) -> ModuleVector:
        """u_n w for u in the vacuum module, no truncation check."""
        n = Fraction(n)
        out: ModuleVector = {}
        for um, cu in u.items():
            for wm, cw in w.items():
                add_into(out, self._y_mono(um, n, wm), cu * cw)
        return out

    def vertex_mode(self, u: ModuleVector, n, w: ModuleVector) -> ModuleVector:
        """Coefficient of x^{-n-1} in Y(u, x)w (Y_0 in the σ-twisted case)."""
        if self.twisted:
            for um in u:
                if (Fraction(n) - Fraction(self.source.weight_class(um), self.T)).denominator != 1:
                    raise ValidationError(f"mode {n} does not match the class of {self.source.monomial_str(um)}")
        out = self.y(u, n, w)
        self._check_depth(out)
        return out

    def apply_n(self, u: ModuleVector) -> ModuleVector:
        """N·u = e(0)u on the vacuum module."""
        return self.source.act(0, self.log_e, u) if self.log_e else {}

    # ---- contravariant form -----------------------------------------

    def _pair_mono(self, left: ModMonomial, right: ModMonomial) -> Fraction:
        memo = (left, right)
        if memo in self._pair_memo:
            return self._pair_memo[memo]
        keys, top = left
        if not keys:
            if right[0]:
                value = Fraction(0)
            else:
                value = self.top.form(top, right[1])
        else:
            (mode, a), rest = keys[0], keys[1:]
            moved = self.act(-mode, self.basis.tau_images[a], {right: Fraction(1)})
            value = sum((c * self._pair_mono((rest, top), m) for m, c in moved.items()), Fraction(0))
        self._pair_memo[memo] = value
        return value

    def pair(self, u: ModuleVector, w: ModuleVector) -> Fraction:
        total = Fraction(0)
        for um, cu in u.items():
            for wm, cw in w.items():
                if self.depth(um) == self.depth(wm):
                    total += cu * cw * self._pair_mono(um, wm)
        return total

    def gram(self, depth) -> List[List[Fraction]]:
        monomials = self.monomials(depth)
        return [[self._pair_mono(m1, m2) for m2 in monomials] for m1 in monomials]

    # ---- vectors and text -------------------------------------------

    def vacuum(self) -> ModuleVector:
        return {VACUUM: Fraction(1)}

    def top_vector(self, t: int = 0) -> ModuleVector:
        return {((), t): Fraction(1)}

    def monomial_str(self, monomial: ModMonomial) -> str:
        keys, top = monomial
        parts = [f"{self.basis.labels[a]}({rational_str(m) if m.denominator != 1 else m.numerator})"
                 for m, a in keys]
        suffix = f"v{top}" if self.top.dim > 1 or self is not self.source else "1"
        return ".".join(parts + [suffix])

    def vector_str(self, vec: ModuleVector) -> str:
        if not vec:
            return "0"
        parts = []
        for m, c in sorted(vec.items(), key=lambda item: (self.depth(item[0]), item[0])):
            body = self.monomial_str(m)
            mag = abs(c)
            parts.append(("-" if c < 0 else "+", body if mag == 1 else f"{mag}*{body}"))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def parse_vector(self, text: str) -> ModuleVector:
        """'2*e_theta(-1).f_theta(-1) - 1' style text, applied to the top vector 0."""
        compact = re.sub(r"\s+", "", text or "")
        if not compact:
            raise ValidationError("empty module vector")
        out: ModuleVector = {}
        for term in _TERM_SPLIT.split(compact):
            match = _TERM.fullmatch(term)
            if not match or not (match.group(2) or match.group(3)):
                raise ValidationError(f"cannot parse module vector term '{term}'")
            sign, coeff, body = match.groups()
            top = 0
            suffix = _SUFFIX.search(body)
            if suffix:
                top = int(suffix.group(1)[1:]) if suffix.group(1).startswith("v") else 0
                body = body[:suffix.start()]
            if top >= self.top.dim:
                raise ValidationError(f"top vector v{top} does not exist (top dimension {self.top.dim})")
            if body and not _WORD.fullmatch(body):
                raise ValidationError(f"cannot parse module vector term '{term}'")
            scale = Fraction(coeff) if coeff else Fraction(1)
            vec = self.top_vector(top)
            for label, mode in reversed(_MODE.findall(body)):
                x = self.basis.parse(label)
                for a in x:
                    self.check_mode(Fraction(mode), a)
                vec = self.act(Fraction(mode), x, vec)
            add_into(out, vec, -scale if sign == "-" else scale)
        return out

    def summary(self) -> dict:
        return {
            "algebra": self.basis.algebra.name,
            "order_T": self.T,
            "lambda": list(self.lam),
            "level": self.level,
            "depth_cap": self.depth_cap,
            "kind": self.kind,
            "graded_dims": self.graded_dims(),
        }


def v_vec(monomial: ModMonomial) -> ModuleVector:
    return {monomial: Fraction(1)}



_TERM_SPLIT = re.compile(r"(?<=[^(*/])(?=[+-])")
_TERM = re.compile(r"([+-]?)(?:(\d+(?:/\d+)?)(?:\*|(?=[A-Za-z_]|$)))?(.*)")
_SUFFIX = re.compile(r"(?:^|\.)(1|v\d+)$")
_MODE = re.compile(r"([A-Za-z_][\w:]*)\((-?\d+(?:/\d+)?)\)")
_WORD = re.compile(r"(?:[A-Za-z_][\w:]*\(-?\d+(?:/\d+)?\)\.)*[A-Za-z_][\w:]*\(-?\d+(?:/\d+)?\)")

# =========================
# Constructors
# =========================

def trivial_automorphism(g: LieAlgebraData) -> Automorphism:
    return diagram_automorphism(g, tuple(range(g.rank)))


def build_vacuum(aut: Automorphism, level, depth_cap) -> InducedModule:
    """V_g(0, ℓ) over the adapted basis of aut (integer modes)."""
    basis = adapted_basis(aut)
    module = InducedModule(basis, [0] * basis.fixed.algebra.rank, level, depth_cap)
    log("VOA", f"vacuum module of {aut.algebra.name} at level {rational_str(level)}, depth ≤ {depth_cap}")
    return module


def build_verma(g: LieAlgebraData, lam: Sequence[int], level, depth_cap) -> InducedModule:
    """Generalized Verma module V_g(λ, ℓ) truncated at depth_cap."""
    aut = trivial_automorphism(g)
    basis = adapted_basis(aut)
    source = None if not any(lam) else InducedModule(basis, [0] * g.rank, level, depth_cap)
    module = InducedModule(basis, lam, level, depth_cap, source=source)
    log("VOA", f"V({tuple(lam)}, {rational_str(level)}) of {g.name}: dims {module.graded_dims()}")
    return module


def mode_action(module: InducedModule, x: Elem, mode, vec: ModuleVector) -> ModuleVector:
    return module.mode_action(mode, x, vec)


def vertex_mode(module: InducedModule, u: ModuleVector, n, vec: ModuleVector) -> ModuleVector:
    return module.vertex_mode(u, n, vec)


# =========================
# Conformal structure
# =========================

def conformal_vector(module: InducedModule) -> ModuleVector:
    """ω = Σ u_i(-1)u^i(-1)1 / (2(ℓ + h^v)) in the vacuum module."""
    source = module.source
    basis = source.basis
    g = basis.algebra
    dual = basis.dual_basis()
    out: ModuleVector = {}
    for i in range(basis.dim):
        inner = source.act(-1, dual[i], source.vacuum())
        add_into(out, source.act(-1, {i: Fraction(1)}, inner))
    return scaled(out, Fraction(1) / (2 * (source.level + g.dual_coxeter)))


def l_operator(module: InducedModule, n: int, vec: ModuleVector) -> ModuleVector:
    """L(n) = Y(ω, x) coefficient at x^{-n-2}."""
    return module.y(conformal_vector(module), n + 1, vec)


def conformal_top_weight(module: InducedModule) -> Fraction:
    g = module.basis.algebra
    return g.casimir_value(module.lam) / (2 * (module.level + g.dual_coxeter))


def verify_virasoro_commutators(module: InducedModule, modes: Iterable[int] = (-1, 0, 1)) -> dict:
    """[L(0), a(n)] = -n a(n) and [L(-1), a(n)] = -n a(n-1) on every basis vector."""
    omega = conformal_vector(module)
    failures = []
    checked = 0
    for d in module.depths():
        for w in module.monomials(d):
            wv = v_vec(w)
            for a in range(module.basis.dim):
                x = {a: Fraction(1)}
                for base in modes:
                    n = module.alpha(a) + base
                    an_w = module.act(n, x, wv)
                    lhs0 = combine_vectors(module.y(omega, 1, an_w), module.act(n, x, module.y(omega, 1, wv)), -1)
                    rhs0 = scaled(an_w, -n)
                    lhs1 = combine_vectors(module.y(omega, 0, an_w), module.act(n, x, module.y(omega, 0, wv)), -1)
                    rhs1 = scaled(module.act(n - 1, x, wv), -n)
                    checked += 2
                    if lhs0 != rhs0:
                        failures.append({"relation": "L0", "a": module.basis.labels[a], "n": n, "w": module.monomial_str(w)})
                    if lhs1 != rhs1:
                        failures.append({"relation": "L-1", "a": module.basis.labels[a], "n": n, "w": module.monomial_str(w)})
    return {"identity_name": "virasoro", "checked": checked, "failures": failures, "equal": not failures}


def combine_vectors(u: ModuleVector, v: ModuleVector, scale=1) -> ModuleVector:
    return add_into(dict(u), v, scale)


def verify_borcherds_commutator(module: InducedModule, u: ModuleVector, v: ModuleVector, m: int, n: int,
                                max_depth=None) -> dict:
    """[u_m, v_n] = Σ_i C(m,i) (u_i v)_{m+n-i} on basis vectors up to max_depth (untwisted)."""
    if module.twisted:
        raise ValidationError("the Borcherds commutator check is for untwisted modules")
    source = module.source
    wt_u = source.depth_of(u) or Fraction(0)
    wt_v = source.depth_of(v) or Fraction(0)
    max_depth = module.depth_cap if max_depth is None else Fraction(max_depth)
    failures = []
    checked = 0
    for d in module.depths(max_depth):
        for w in module.monomials(d):
            wv = v_vec(w)
            lhs = combine_vectors(module.y(u, m, module.y(v, n, wv)), module.y(v, n, module.y(u, m, wv)), -1)
            rhs: ModuleVector = {}
            for i in range(int(wt_u + wt_v) + 1):
                c = binom(m, i)
                product = source.y(u, i, v) if c else {}
                if product:
                    add_into(rhs, module.y(product, m + n - i, wv), c)
            checked += 1
            if lhs != rhs:
                failures.append(module.monomial_str(w))
    return {"identity_name": "jacobi", "m": m, "n": n, "checked": checked, "failures": failures, "equal": not failures}


# =========================
# Radical and simple quotient
# =========================

def cartan_weights(module: InducedModule) -> List[Tuple[Fraction, ...]]:
    """h^[0]-weight of each adapted basis vector."""
    basis = module.basis
    g0 = basis.fixed.algebra
    weights = []
    for b in range(basis.dim):
        values = []
        for i in range(g0.rank):
            image = basis.bracket({g0.h_index(i): Fraction(1)}, {b: Fraction(1)})
            scale = image.get(b, Fraction(0))
            if image != ({b: scale} if scale else {}):
                raise ValidationError(f"{basis.labels[b]} is not an h^[0]-weight vector")
            values.append(scale)
        weights.append(tuple(values))
    return weights


def monomial_weight(module: InducedModule, monomial: ModMonomial, element_weights=None) -> Tuple[Fraction, ...]:
    element_weights = element_weights or cartan_weights(module)
    keys, top = monomial
    total = [Fraction(x) for x in module.top.weight(top)]
    for _, a in keys:
        total = [t + w for t, w in zip(total, element_weights[a])]
    return tuple(total)


def positive_modes(module: InducedModule, a: int, max_depth) -> List[Fraction]:
    """Modes m > 0 of a with m ≤ max_depth."""
    m = module.alpha(a) if module.alpha(a) > 0 else Fraction(1)
    out = []
    while m <= max_depth:
        out.append(m)
        m += 1
    return out


def form_radical(module: InducedModule) -> Dict[Fraction, List[ModuleVector]]:
    """Nullspace of the contravariant Gram matrix, depth by depth."""
    if module.kind != "verma":
        raise ValidationError("radical is computed on a Verma-type module")
    out = {}
    for d in module.depths():
        monomials = module.monomials(d)
        gram = module.gram(d)
        rows = [{m2: gram[i][j] for j, m2 in enumerate(monomials) if gram[i][j]} for i in range(len(monomials))]
        out[d] = nullspace(rows, monomials)
    return out


def maximal_submodule_radical(module: InducedModule, method: str = "annihilator") -> Dict[Fraction, List[ModuleVector]]:
    """
    Maximal proper submodule, depth by depth.

    ``annihilator``: v of depth d > 0 lies in it iff every a(m)v with m > 0 lies
    in it at depth d - m.  Each depth is solved one h^[0]-weight block at a time
    against the pieces already found.  ``form`` takes the Gram nullspace instead;
    both give the radical of the contravariant form.
    """
    if method == "form":
        return form_radical(module)
    if method != "annihilator":
        raise ValidationError(f"unknown radical method '{method}'")
    if module.kind != "verma":
        raise ValidationError("radical is computed on a Verma-type module")
    element_weights = cartan_weights(module)
    out: Dict[Fraction, List[ModuleVector]] = {}
    reducers: Dict[Fraction, EchelonBasis] = {}
    for d in module.depths():
        monomials = module.monomials(d)
        if d == 0:
            out[d] = []
        else:
            blocks: Dict[Tuple[Fraction, ...], List[ModMonomial]] = {}
            for m in monomials:
                blocks.setdefault(monomial_weight(module, m, element_weights), []).append(m)
            # column w of the map v -> (a(m)v mod radical) for all positive modes
            images: Dict[ModMonomial, Dict[Tuple, Fraction]] = {m: {} for m in monomials}
            for a in range(module.basis.dim):
                for mode in positive_modes(module, a, d):
                    reducer = reducers[d - mode]
                    for w in monomials:
                        image = reducer.reduce(module.act(mode, {a: Fraction(1)}, {w: Fraction(1)}))
                        for target, c in image.items():
                            images[w][(a, mode, target)] = c
            found: List[ModuleVector] = []
            for block in blocks.values():
                rows: Dict[Tuple, Dict[ModMonomial, Fraction]] = {}
                for w in block:
                    for row_key, c in images[w].items():
                        rows.setdefault(row_key, {})[w] = c
                found.extend(nullspace(list(rows.values()), block))
            out[d] = found
        reducers[d] = EchelonBasis(out[d], monomials)
        if out[d]:
            log("VOA", f"radical at depth {d}: {len(out[d])} of {len(monomials)}")
    return out


class SimpleQuotient:
    """Verma module modulo the radical of its contravariant form, up to depth_cap."""

    def __init__(self, verma: InducedModule):
        if verma.kind != "verma":
            raise ValidationError("simple quotient needs a Verma-type module")
        self.verma = verma
        self.kind = "simple"
        self.radical = maximal_submodule_radical(verma)
        self.reducers: Dict[Fraction, EchelonBasis] = {}
        self.kept: Dict[Fraction, List[ModMonomial]] = {}
        for d, vectors in self.radical.items():
            monomials = verma.monomials(d)
            reducer = EchelonBasis(vectors, monomials)
            self.reducers[d] = reducer
            self.kept[d] = [m for m in monomials if m not in reducer.rows]
        log("VOA", f"simple quotient dims {self.graded_dims()}")

    # delegate the bookkeeping of the Verma side
    def __getattr__(self, name):
        return getattr(self.verma, name)

    def monomials(self, depth) -> List[ModMonomial]:
        return self.kept[Fraction(depth)]

    def graded_dims(self) -> List[int]:
        return [len(self.kept[d]) for d in self.verma.depths()]

    def reduce(self, vec: ModuleVector) -> ModuleVector:
        out: ModuleVector = {}
        parts: Dict[Fraction, ModuleVector] = {}
        for m, c in vec.items():
            parts.setdefault(self.verma.depth(m), {})[m] = c
        for d, part in parts.items():
            if d not in self.reducers:
                raise TruncationError(f"depth {d} is beyond the quotient's cap {self.verma.depth_cap}")
            add_into(out, self.reducers[d].reduce(part))
        return out

    def act(self, mode, x: Elem, vec: ModuleVector) -> ModuleVector:
        return self.reduce(self.verma.act(mode, x, vec))

    def current(self, mode, x: Elem, vec: ModuleVector) -> ModuleVector:
        return self.reduce(self.verma.current(mode, x, vec))

    def mode_action(self, mode, x: Elem, vec: ModuleVector) -> ModuleVector:
        return self.reduce(self.verma.mode_action(mode, x, vec))

    def y(self, u: ModuleVector, n, w: ModuleVector) -> ModuleVector:
        return self.reduce(self.verma.y(u, n, w))

    def vertex_mode(self, u: ModuleVector, n, w: ModuleVector) -> ModuleVector:
        return self.reduce(self.verma.vertex_mode(u, n, w))

    def contains_zero(self, vec: ModuleVector) -> bool:
        return not self.reduce(vec)

    def summary(self) -> dict:
        out = self.verma.summary()
        out["kind"] = "simple"
        out["graded_dims"] = self.graded_dims()
        return out


def simple_quotient(module: InducedModule) -> SimpleQuotient:
    if module.depth_cap == 0:
        raise ValidationError("depth cap 0 only carries the trivial radical")
    return SimpleQuotient(module)


def check_quotient_actions(quotient: SimpleQuotient) -> bool:
    """Currents map the radical into the radical within the cap."""
    verma = quotient.verma
    for d, vectors in quotient.radical.items():
        for r in vectors:
            for a in range(verma.basis.dim):
                base = verma.alpha(a)
                for mode in (base - 1, base, base + 1):
                    if d - mode > verma.depth_cap or d - mode < 0:
                        continue
                    if quotient.reduce(verma.act(mode, {a: Fraction(1)}, r)):
                        return False
    return True


# =========================
# Second oracle: generated submodules, singular vectors
# =========================

def generated_submodule(module: InducedModule, generators: Sequence[ModuleVector]) -> Dict[Fraction, EchelonBasis]:
    """
    Graded pieces (depth ≤ cap) of the submodule generated by ``generators``:
    closure under non-negative modes, then under creation operators.
    """
    cap = module.depth_cap
    depths = module.depths()
    pieces: Dict[Fraction, List[ModuleVector]] = {d: [] for d in depths}
    closed: Dict[Fraction, EchelonBasis] = {d: EchelonBasis([], module.monomials(d)) for d in depths}
    queue = [g for g in generators if g]

    while queue:
        vec = queue.pop()
        d = module.depth_of(vec)
        if d > cap:
            raise TruncationError("generator beyond the cap")
        reduced = closed[d].reduce(vec)
        if not reduced:
            continue
        pieces[d].append(reduced)
        closed[d] = EchelonBasis(pieces[d], module.monomials(d))
        for a in range(module.basis.dim):
            mode = module.alpha(a)
            while mode <= d:
                image = module.act(mode, {a: Fraction(1)}, reduced)
                if image:
                    queue.append(image)
                mode += 1

    # S_d = X_d + Σ a(m) S_{d+m}, from the bottom up
    spans: Dict[Fraction, EchelonBasis] = {}
    for d in depths:
        rows = list(pieces[d])
        for mode, a in module.creation_keys(d):
            lower = d + mode
            if lower < 0 or lower not in spans:
                continue
            for row in spans[lower].rows.values():
                image = module.act(mode, {a: Fraction(1)}, row)
                if image:
                    rows.append(image)
        spans[d] = EchelonBasis(rows, module.monomials(d))
    return spans


def singular_vectors(module: InducedModule, depth) -> List[ModuleVector]:
    """Vectors at ``depth`` annihilated by every positive-mode current."""
    depth = Fraction(depth)
    monomials = module.monomials(depth)
    rows: Dict[ModMonomial, Dict[ModMonomial, Fraction]] = {}
    for a in range(module.basis.dim):
        mode = module.alpha(a) if module.alpha(a) > 0 else Fraction(1)
        while mode <= depth:
            for m in monomials:
                for target, c in module.act(mode, {a: Fraction(1)}, v_vec(m)).items():
                    rows.setdefault((mode, a, target), {})[m] = c
            mode += 1
    return nullspace(list(rows.values()), monomials)


# =========================
# Export
# =========================

def graded_dims_csv(module) -> str:
    depths = module.verma.depths() if isinstance(module, SimpleQuotient) else module.depths()
    dims = module.graded_dims()
    T = module.T
    return csv_text(["weight_numerator", "T", "weight", "dim"],
                    [[int(d * T), T, d, n] for d, n in zip(depths, dims)])


def radical_json(quotient: SimpleQuotient) -> dict:
    verma = quotient.verma
    out = {}
    for d, vectors in quotient.radical.items():
        monomials = verma.monomials(d)
        index = {m: i for i, m in enumerate(monomials)}
        out[rational_str(d)] = {
            "monomials": [verma.monomial_str(m) for m in monomials],
            "basis": [[[index[m], c] for m, c in sorted(vec.items(), key=lambda item: index[item[0]])]
                      for vec in vectors],
        }
    return {"summary": quotient.summary(), "radical": out}
