# src/liealg.py

"""
Simple Lie algebras in a Chevalley basis, diagram automorphisms, and the
eigenspace decomposition g = g^[0] + ... + g^[T-1] of a diagram automorphism.

Sign convention
---------------
Simply-laced algebras (A, D, E) are built with the ε-construction:

    ε(α_i, α_j) = -1  if i == j, or if i < j and the nodes are joined,
                   1  otherwise,

extended bimultiplicatively.  With e_α = E_α and f_α = -E_{-α} (α > 0):

    [e_α, e_β] =  ε(α,β) e_{α+β}        [f_α, f_β] = -ε(α,β) f_{α+β}
    [e_α, f_α] =  h_α                   [h_i, e_α] = (α_i, α) e_α
    [e_α, f_β] = -ε(α,β) e_{α-β}  (α-β > 0)
    [e_α, f_β] =  ε(α,β) f_{β-α}  (β-α > 0)

Types B, C, F, G are obtained by folding D_{n+1}, A_{2n-1}, E_6 and D_4 with
the same routine that builds the fixed-point subalgebra g^[0]; non-simple root
vectors there are e_β = [e_i, e_γ]/(p+1) for the smallest i with γ = β - α_i a
root, so the signs are determined by the simple generators.

Basis order (also the PBW order): positive root vectors by (height, coordinates),
then h_1..h_n, then negative root vectors in the same root order.
"""

import itertools
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import sympy

from .errors import ValidationError
from .utils.linalg import SpanCoordinates, Vector, add_into, combine, rref, scaled, to_fraction, to_qq
from .utils.log import log

Elem = Dict[int, Fraction]
Root = Tuple[int, ...]


# =========================
# Cartan matrices and root data
# =========================

def cartan_matrix(type_label: str, rank: int) -> Tuple[Tuple[int, ...], ...]:
    """a_ij = <α_i^∨, α_j>, Bourbaki numbering (0-based)."""
    valid = {
        "A": rank >= 1,
        "B": rank >= 2,
        "C": rank >= 2,
        "D": rank >= 4,
        "E": rank in (6, 7, 8),
        "F": rank == 4,
        "G": rank == 2,
    }
    if not valid.get(type_label, False):
        raise ValidationError(f"no simple Lie algebra of type {type_label}{rank}")

    a = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]

    def join(i, j):
        a[i][j] = a[j][i] = -1

    if type_label in "ABC":
        for i in range(rank - 1):
            join(i, i + 1)
        if type_label == "B":
            a[rank - 1][rank - 2] = -2
        elif type_label == "C":
            a[rank - 2][rank - 1] = -2
    elif type_label == "D":
        for i in range(rank - 2):
            join(i, i + 1)
        join(rank - 3, rank - 1)
    elif type_label == "E":
        join(0, 2)
        join(1, 3)
        for i in range(2, rank - 1):
            join(i, i + 1)
    elif type_label == "F":
        join(0, 1)
        join(2, 3)
        a[1][2] = -1
        a[2][1] = -2
    elif type_label == "G":
        a[0][1] = -3
        a[1][0] = -1
    return tuple(tuple(row) for row in a)


def _simple_norms(cartan) -> Tuple[Fraction, ...]:
    """(α_i, α_i), long roots normalized to 2."""
    n = len(cartan)
    norms: List[Optional[Fraction]] = [None] * n
    norms[0] = Fraction(1)
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(n):
            if j != i and cartan[i][j] != 0 and norms[j] is None:
                # (α_j,α_j) = (α_i,α_i) * a_ij / a_ji
                norms[j] = norms[i] * Fraction(cartan[i][j], cartan[j][i])
                stack.append(j)
    top = max(norms)
    return tuple(Fraction(2) * x / top for x in norms)


def _positive_roots(cartan) -> List[Root]:
    n = len(cartan)
    simple = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    roots = set(simple)
    layer = list(simple)
    while layer:
        nxt = []
        for beta in layer:
            for i in range(n):
                # q = max k with beta - k α_i a root; p = q - <beta, α_i^∨>
                q = 0
                gamma = list(beta)
                while True:
                    gamma[i] -= 1
                    if tuple(gamma) in roots:
                        q += 1
                    else:
                        break
                pairing = sum(beta[j] * cartan[i][j] for j in range(n))
                if q - pairing > 0:
                    up = list(beta)
                    up[i] += 1
                    up = tuple(up)
                    if up not in roots:
                        roots.add(up)
                        nxt.append(up)
        layer = nxt
    return sorted(roots, key=lambda r: (sum(r), r))


# =========================
# LieAlgebraData
# =========================

@dataclass(eq=False)
class LieAlgebraData:
    type_label: str
    rank: int
    cartan: Tuple[Tuple[int, ...], ...]
    positive_roots: Tuple[Root, ...]
    simple_norms: Tuple[Fraction, ...]
    labels: Tuple[str, ...]
    brackets: Dict[Tuple[int, int], Elem]
    form: Dict[Tuple[int, int], Fraction]
    root_index: Dict[Root, int] = field(default_factory=dict)

    def __post_init__(self):
        self.root_index = {r: k for k, r in enumerate(self.positive_roots)}
        self._label_index = {label: i for i, label in enumerate(self.labels)}
        # fixed-point algebras and adapted bases derived from this instance
        self.derived: Dict[Tuple, object] = {}

    # ---- layout -----------------------------------------------------

    @property
    def name(self) -> str:
        return f"{self.type_label}{self.rank}"

    @property
    def num_positive(self) -> int:
        return len(self.positive_roots)

    @property
    def dim(self) -> int:
        return 2 * self.num_positive + self.rank

    def e_index(self, k: int) -> int:
        return k

    def h_index(self, i: int) -> int:
        return self.num_positive + i

    def f_index(self, k: int) -> int:
        return self.num_positive + self.rank + k

    def kind(self, b: int) -> str:
        if b < self.num_positive:
            return "e"
        if b < self.num_positive + self.rank:
            return "h"
        return "f"

    def root_of(self, b: int) -> Root:
        """Weight of a basis element in simple-root coordinates."""
        kind = self.kind(b)
        if kind == "e":
            return self.positive_roots[b]
        if kind == "f":
            return tuple(-c for c in self.positive_roots[b - self.num_positive - self.rank])
        return tuple(0 for _ in range(self.rank))

    def height(self, b: int) -> int:
        return sum(self.root_of(b))

    def pbw_rank(self, b: int) -> int:
        return b

    @property
    def highest_root(self) -> Root:
        return self.positive_roots[-1]

    # ---- root data --------------------------------------------------

    def root_inner(self, beta: Sequence[int], gamma: Sequence[int]) -> Fraction:
        total = Fraction(0)
        for i, bi in enumerate(beta):
            if not bi:
                continue
            for j, gj in enumerate(gamma):
                if gj:
                    total += bi * gj * self.cartan[i][j] * self.simple_norms[i] / 2
        return total

    def root_norm(self, k: int) -> Fraction:
        beta = self.positive_roots[k]
        return self.root_inner(beta, beta)

    def coroot(self, k: int) -> Elem:
        """h_β = [e_β, f_β] expanded in h_1..h_n."""
        beta = self.positive_roots[k]
        norm = self.root_inner(beta, beta)
        return {self.h_index(i): c * self.simple_norms[i] / norm for i, c in enumerate(beta) if c}

    @property
    def dual_coxeter(self) -> int:
        theta = self.highest_root
        value = 1 + sum((c * self.simple_norms[i] / 2 for i, c in enumerate(theta)), Fraction(0))
        if value.denominator != 1:
            raise ValidationError(f"{self.name}: dual Coxeter number {value} is not an integer; check the root normalization")
        return value.numerator

    @property
    def _fundamental_gram(self):
        return _fundamental_gram(self.cartan, self.simple_norms)

    def weight_inner(self, lam: Sequence[int], mu: Sequence) -> Fraction:
        """(λ, μ) for weights given by Dynkin labels."""
        gram = self._fundamental_gram
        return sum((Fraction(lam[i]) * Fraction(mu[j]) * gram[i][j]
                    for i in range(self.rank) for j in range(self.rank)), Fraction(0))

    def weight_root_pairing(self, lam: Sequence, beta: Sequence[int]) -> Fraction:
        """(λ, β) for λ in Dynkin labels and β in simple-root coordinates."""
        return sum((Fraction(lam[i]) * b * self.simple_norms[i] / 2 for i, b in enumerate(beta)), Fraction(0))

    def theta_pairing(self, lam: Sequence[int]) -> Fraction:
        """<λ, θ> with θ the highest root (long, square length 2)."""
        return self.weight_root_pairing(lam, self.highest_root)

    def rho(self) -> Tuple[int, ...]:
        return tuple(1 for _ in range(self.rank))

    def casimir_value(self, lam: Sequence[int]) -> Fraction:
        """<λ, λ + 2ρ>."""
        two_rho = [2 * r for r in self.rho()]
        return self.weight_inner(lam, [Fraction(l) + t for l, t in zip(lam, two_rho)])

    def weyl_dimension(self, lam: Sequence[int]) -> int:
        num = Fraction(1)
        den = Fraction(1)
        shifted = [Fraction(l) + 1 for l in lam]
        for beta in self.positive_roots:
            num *= self.weight_root_pairing(shifted, beta)
            den *= self.weight_root_pairing(self.rho(), beta)
        value = num / den
        if value.denominator != 1:
            raise ValidationError(f"weight {tuple(lam)} is not integral")
        return int(value)

    def dominant_weights(self, bound) -> List[Tuple[int, ...]]:
        """Dominant integral λ with <λ, θ> ≤ bound, in lexicographic order."""
        theta = self.highest_root
        steps = [theta[i] * self.simple_norms[i] / 2 for i in range(self.rank)]
        ranges = [range(0, int(Fraction(bound) / s) + 1) for s in steps]
        return [lam for lam in itertools.product(*ranges) if self.theta_pairing(lam) <= bound]

    def check_weight(self, lam: Sequence[int]) -> Tuple[int, ...]:
        if len(lam) != self.rank:
            raise ValidationError(f"weight needs {self.rank} Dynkin labels, got {len(lam)}")
        if any(Fraction(x).denominator != 1 or x < 0 for x in lam):
            raise ValidationError(f"weight {tuple(lam)} is not dominant integral")
        return tuple(int(x) for x in lam)

    # ---- elements ---------------------------------------------------

    def basis_element(self, b: int) -> Elem:
        return {b: Fraction(1)}

    def bracket_basis(self, i: int, j: int) -> Elem:
        return self.brackets.get((i, j), {})

    def bracket(self, x: Elem, y: Elem) -> Elem:
        out: Elem = {}
        for i, a in x.items():
            for j, b in y.items():
                table = self.brackets.get((i, j))
                if table:
                    add_into(out, table, a * b)
        return out

    def form_value(self, x: Elem, y: Elem) -> Fraction:
        total = Fraction(0)
        for i, a in x.items():
            for j, b in y.items():
                value = self.form.get((i, j))
                if value:
                    total += a * b * value
        return total

    def ad_power(self, x: Elem, y: Elem, k: int) -> Elem:
        for _ in range(k):
            y = self.bracket(x, y)
            if not y:
                break
        return y

    def tau(self, x: Elem) -> Elem:
        """Chevalley anti-involution e_β <-> f_β, h -> h."""
        out: Elem = {}
        for b, c in x.items():
            kind = self.kind(b)
            if kind == "e":
                out[self.f_index(b)] = c
            elif kind == "f":
                out[self.e_index(b - self.num_positive - self.rank)] = c
            else:
                out[b] = c
        return out

    def index_of(self, label: str) -> int:
        alias = {"e_theta": self.e_index(self.num_positive - 1),
                 "f_theta": self.f_index(self.num_positive - 1)}
        if self.rank == 1:
            alias.update({"e": 0, "h": 1, "f": 2})
        if label in alias:
            return alias[label]
        if label not in self._label_index:
            raise ValidationError(f"unknown basis element '{label}' of {self.name}")
        return self._label_index[label]

    def element(self, label: str) -> Elem:
        if label == "h_theta":
            return self.coroot(self.num_positive - 1)
        return {self.index_of(label): Fraction(1)}

    def parse_element(self, text: str) -> Elem:
        return parse_linear_combination(text, self.element)

    def element_str(self, x: Elem) -> str:
        return format_linear_combination({self.labels[b]: c for b, c in sorted(x.items())})

    def to_json(self) -> dict:
        triples = []
        for (i, j), value in sorted(self.brackets.items()):
            if i < j:
                for k, c in sorted(value.items()):
                    triples.append([i, j, k, c.numerator, c.denominator])
        return {
            "type": self.type_label,
            "rank": self.rank,
            "dim": self.dim,
            "cartan": [list(row) for row in self.cartan],
            "positive_roots": [list(r) for r in self.positive_roots],
            "basis": list(self.labels),
            "structure_constants": triples,
            "form": [[i, j, v.numerator, v.denominator] for (i, j), v in sorted(self.form.items()) if i <= j],
            "dual_coxeter": self.dual_coxeter,
        }


@lru_cache(maxsize=None)
def _fundamental_gram(cartan, simple_norms):
    """(ω_i, ω_j) = ((A^T)^{-1})_{ji} (α_i, α_i)/2."""
    a = sympy.Matrix(cartan)
    inv = a.T.inv()
    n = len(cartan)
    return tuple(tuple(Fraction(str(inv[j, i])) * simple_norms[i] / 2 for j in range(n)) for i in range(n))


def _labels(roots: Sequence[Root], rank: int) -> Tuple[str, ...]:
    def word(r):
        return "".join(str(c) for c in r)
    return tuple(["e" + word(r) for r in roots]
                 + [f"h{i + 1}" for i in range(rank)]
                 + ["f" + word(r) for r in roots])


def _standard_form(cartan, roots, norms) -> Dict[Tuple[int, int], Fraction]:
    n = len(cartan)
    p = len(roots)
    form = {}
    for k, beta in enumerate(roots):
        norm = sum(beta[i] * beta[j] * cartan[i][j] * norms[i] / 2 for i in range(n) for j in range(n))
        value = Fraction(2) / norm
        form[(k, p + n + k)] = value
        form[(p + n + k, k)] = value
    for i in range(n):
        for j in range(n):
            if cartan[i][j]:
                form[(p + i, p + j)] = Fraction(2 * cartan[i][j]) / norms[j]
    return form


# =========================
# Simply-laced construction
# =========================

def _simply_laced(type_label: str, rank: int) -> LieAlgebraData:
    cartan = cartan_matrix(type_label, rank)
    roots = _positive_roots(cartan)
    norms = _simple_norms(cartan)
    p = len(roots)
    n = rank
    index = {r: k for k, r in enumerate(roots)}

    def eps(alpha, beta) -> int:
        exponent = 0
        for i in range(n):
            if not alpha[i] % 2:
                continue
            for j in range(n):
                if beta[j] % 2 and (i == j or (i < j and cartan[i][j] != 0)):
                    exponent += 1
        return -1 if exponent % 2 else 1

    def inner(alpha, beta):
        return sum(alpha[i] * beta[j] * cartan[i][j] for i in range(n) for j in range(n))

    e = lambda k: k
    h = lambda i: p + i
    f = lambda k: p + n + k

    brackets: Dict[Tuple[int, int], Elem] = {}

    def put(i, j, value: Elem):
        if value:
            brackets[(i, j)] = value
            brackets[(j, i)] = scaled(value, -1)

    for a, alpha in enumerate(roots):
        for b, beta in enumerate(roots):
            s = tuple(x + y for x, y in zip(alpha, beta))
            if a < b and s in index:
                c = Fraction(eps(alpha, beta))
                put(e(a), e(b), {e(index[s]): c})
                put(f(a), f(b), {f(index[s]): -c})
            if a == b:
                put(e(a), f(a), {h(i): Fraction(c) for i, c in enumerate(alpha) if c})
                continue
            d = tuple(x - y for x, y in zip(alpha, beta))
            if d in index:
                put(e(a), f(b), {e(index[d]): Fraction(-eps(alpha, beta))})
            minus = tuple(-x for x in d)
            if minus in index:
                put(e(a), f(b), {f(index[minus]): Fraction(eps(alpha, beta))})
        for i in range(n):
            simple = tuple(1 if k == i else 0 for k in range(n))
            c = inner(simple, alpha)
            if c:
                put(h(i), e(a), {e(a): Fraction(c)})
                put(h(i), f(a), {f(a): Fraction(-c)})

    return LieAlgebraData(
        type_label=type_label,
        rank=rank,
        cartan=cartan,
        positive_roots=tuple(roots),
        simple_norms=norms,
        labels=_labels(roots, rank),
        brackets=brackets,
        form=_standard_form(cartan, roots, norms),
    )


# =========================
# Construction from generators (folding, fixed points)
# =========================

def _chevalley_from_generators(
    type_label: str,
    cartan,
    ambient: LieAlgebraData,
    e_gen: Sequence[Elem],
    f_gen: Sequence[Elem],
    h_gen: Sequence[Elem],
) -> Tuple[LieAlgebraData, List[Elem]]:
    """
    Chevalley basis of the subalgebra generated by e_gen/f_gen/h_gen inside
    ``ambient``; returns the algebra and the embedding of its basis.
    """
    n = len(cartan)
    roots = _positive_roots(cartan)
    norms = _simple_norms(cartan)
    index = {r: k for k, r in enumerate(roots)}
    p = len(roots)

    e_vec: List[Elem] = [None] * p
    f_vec: List[Elem] = [None] * p
    for k, beta in enumerate(roots):
        if sum(beta) == 1:
            i = beta.index(1)
            e_vec[k] = dict(e_gen[i])
            f_vec[k] = dict(f_gen[i])
            continue
        for i in range(n):
            gamma = list(beta)
            gamma[i] -= 1
            gamma = tuple(gamma)
            if gamma in index:
                break
        string = 0
        lowered = list(gamma)
        while True:
            lowered[i] -= 1
            if tuple(lowered) in index:
                string += 1
            else:
                break
        scale = Fraction(1, string + 1)
        e_vec[k] = scaled(ambient.bracket(e_gen[i], e_vec[index[gamma]]), scale)
        f_vec[k] = scaled(ambient.bracket(f_gen[i], f_vec[index[gamma]]), -scale)

    embedding = e_vec + [dict(x) for x in h_gen] + f_vec
    coords = SpanCoordinates(embedding)

    for k, beta in enumerate(roots):
        norm = sum(beta[i] * beta[j] * cartan[i][j] * norms[i] / 2 for i in range(n) for j in range(n))
        expected: Elem = {}
        for i, c in enumerate(beta):
            if c:
                add_into(expected, h_gen[i], c * norms[i] / norm)
        if ambient.bracket(e_vec[k], f_vec[k]) != expected:
            raise RuntimeError(f"[e_β, f_β] != h_β for β = {beta} while building {type_label}{n}")

    brackets: Dict[Tuple[int, int], Elem] = {}
    dim = len(embedding)
    for i in range(dim):
        for j in range(i + 1, dim):
            value = ambient.bracket(embedding[i], embedding[j])
            if not value:
                continue
            local = coords.coordinates(value)
            if local is None:
                raise RuntimeError(f"subalgebra {type_label}{n} is not closed under the bracket")
            if local:
                brackets[(i, j)] = local
                brackets[(j, i)] = scaled(local, -1)

    algebra = LieAlgebraData(
        type_label=type_label,
        rank=n,
        cartan=tuple(tuple(row) for row in cartan),
        positive_roots=tuple(roots),
        simple_norms=norms,
        labels=_labels(roots, n),
        brackets=brackets,
        form=_standard_form(cartan, roots, norms),
    )
    return algebra, embedding


def _fold(ambient: LieAlgebraData, perm: Sequence[int], target: Optional[Tuple[str, int]] = None):
    """Fixed-point subalgebra of the diagram automorphism ``perm`` in a Chevalley basis."""
    n = ambient.rank
    orbits = []
    seen = set()
    for i in range(n):
        if i in seen:
            continue
        orbit = [i]
        j = perm[i]
        while j != i:
            orbit.append(j)
            j = perm[j]
        seen.update(orbit)
        orbits.append(sorted(orbit))

    e_gen, f_gen, h_gen = [], [], []
    for orbit in orbits:
        e = {ambient.e_index(ambient.root_index[_unit(i, n)]): Fraction(1) for i in orbit}
        f = {ambient.f_index(ambient.root_index[_unit(i, n)]): Fraction(1) for i in orbit}
        h = {ambient.h_index(i): Fraction(1) for i in orbit}
        c = _coefficient(ambient.bracket(h, e), e)
        e_gen.append(e)
        f_gen.append(scaled(f, Fraction(2) / c))
        h_gen.append(scaled(h, Fraction(2) / c))

    m = len(orbits)
    folded = [[int(_coefficient(ambient.bracket(h_gen[i], e_gen[j]), e_gen[j])) for j in range(m)] for i in range(m)]

    label = target or _folded_type(ambient, max(_cycle_lengths(perm)))
    wanted = cartan_matrix(*label)
    order = _match_cartan(folded, wanted)
    if order is None:
        raise RuntimeError(f"folding {ambient.name} did not produce {label[0]}{label[1]}")
    e_gen = [e_gen[k] for k in order]
    f_gen = [f_gen[k] for k in order]
    h_gen = [h_gen[k] for k in order]
    return _chevalley_from_generators(label[0], wanted, ambient, e_gen, f_gen, h_gen)


def _unit(i: int, n: int) -> Root:
    return tuple(1 if k == i else 0 for k in range(n))


def _coefficient(value: Elem, reference: Elem) -> Fraction:
    """c with value == c * reference."""
    key = next(iter(reference))
    c = value.get(key, Fraction(0)) / reference[key]
    if scaled(reference, c) != value:
        raise RuntimeError("vector is not a multiple of the reference")
    return c


def _cycle_lengths(perm: Sequence[int]) -> List[int]:
    lengths, seen = [], set()
    for i in range(len(perm)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = perm[j]
            length += 1
        lengths.append(length)
    return lengths


def _folded_type(ambient: LieAlgebraData, order: int) -> Tuple[str, int]:
    t, n = ambient.type_label, ambient.rank
    if order == 1:
        return t, n
    if t == "A" and n % 2 == 0:
        return ("B", n // 2) if n >= 4 else ("A", 1)
    if t == "A":
        return ("C", (n + 1) // 2) if n >= 3 else ("A", 1)
    if t == "D" and order == 2:
        return "B", n - 1
    if t == "D" and order == 3:
        return "G", 2
    if t == "E" and n == 6:
        return "F", 4
    raise ValidationError(f"no diagram automorphism of order {order} on {ambient.name}")


def _match_cartan(folded, wanted) -> Optional[List[int]]:
    m = len(folded)
    if len(wanted) != m:
        return None
    for order in itertools.permutations(range(m)):
        if all(folded[order[i]][order[j]] == wanted[i][j] for i in range(m) for j in range(m)):
            return list(order)
    return None


_FOLDINGS = {
    "B": lambda n: ((("D", n + 1), tuple(list(range(n - 1)) + [n, n - 1])) if n >= 3 else (("A", 3), (2, 1, 0))),
    "C": lambda n: (("A", 2 * n - 1), tuple(range(2 * n - 2, -1, -1))),
    "F": lambda n: (("E", 6), (5, 1, 4, 3, 2, 0)),
    "G": lambda n: (("D", 4), (2, 1, 3, 0)),
}


def build_lie_algebra(type_label: str, rank: int) -> LieAlgebraData:
    """Simple Lie algebra of the given type in the Chevalley basis described above.

    `type_label` is a letter ("A") or a full label ("A2"); a full label must agree with `rank`.
    """
    letter = (type_label or "").strip().upper()
    if any(ch.isdigit() for ch in letter):
        letter, label_rank = parse_algebra_label(letter)
        if label_rank != rank:
            raise ValidationError(f"label {type_label} has rank {label_rank}, not {rank}")
    return _build_lie_algebra(letter, int(rank))


@lru_cache(maxsize=None)
def _build_lie_algebra(type_label: str, rank: int) -> LieAlgebraData:
    cartan_matrix(type_label, rank)
    if type_label in "ADE":
        g = _simply_laced(type_label, rank)
    else:
        (ambient_type, ambient_rank), perm = _FOLDINGS[type_label](rank)
        ambient = _build_lie_algebra(ambient_type, ambient_rank)
        g, _ = _fold(ambient, perm, target=(type_label, rank))
    log("BUILD", f"{g.name}: dim {g.dim}, {g.num_positive} positive roots, h^v = {g.dual_coxeter}")
    return g


def invariant_form(g: LieAlgebraData, a: Elem, b: Elem) -> Fraction:
    return g.form_value(a, b)


def highest_root_vector(g: LieAlgebraData) -> Elem:
    return {g.e_index(g.num_positive - 1): Fraction(1)}


def parse_algebra_label(text: str) -> Tuple[str, int]:
    match = re.fullmatch(r"\s*([A-Ga-g])\s*_?\s*(\d+)\s*", text or "")
    if not match:
        raise ValidationError(f"cannot parse algebra '{text}' (expected e.g. A1, D4)")
    return match.group(1).upper(), int(match.group(2))


# =========================
# Automorphisms
# =========================

@dataclass(eq=False)
class Automorphism:
    algebra: LieAlgebraData
    mu_perm: Tuple[int, ...]
    order_T: int
    e: Elem
    mu_images: List[Elem]

    @property
    def is_inner(self) -> bool:
        return all(i == p for i, p in enumerate(self.mu_perm))

    @property
    def is_diagram(self) -> bool:
        return not self.e

    def mu(self, x: Elem) -> Elem:
        out: Elem = {}
        for b, c in x.items():
            add_into(out, self.mu_images[b], c)
        return out

    def ad_e(self, x: Elem) -> Elem:
        return self.algebra.bracket(self.e, x)

    def exp_ad_e(self, x: Elem) -> Elem:
        out = dict(x)
        term = dict(x)
        k = 0
        while term:
            k += 1
            term = scaled(self.ad_e(term), Fraction(1, k))
            add_into(out, term)
        return out

    def sigma(self, x: Elem) -> Elem:
        return self.mu(self.exp_ad_e(x))

    def class_of(self, x: Elem) -> Optional[int]:
        """j with μx = η^j x, for T ≤ 2; None when x is not an eigenvector."""
        image = self.mu(x)
        if image == x:
            return 0
        if self.order_T == 2 and image == scaled(x, -1):
            return 1
        return None

    def with_nilpotent(self, e: Elem) -> "Automorphism":
        return Automorphism(self.algebra, self.mu_perm, self.order_T, _check_nilpotent(self, e), self.mu_images)

    def to_json(self) -> dict:
        g = self.algebra
        return {
            "algebra": g.name,
            "mu_perm": list(self.mu_perm),
            "order_T": self.order_T,
            "e": {g.labels[b]: c for b, c in sorted(self.e.items())},
            "is_inner": self.is_inner,
            "is_diagram": self.is_diagram,
        }


def named_permutation(g: LieAlgebraData, name: str) -> Tuple[int, ...]:
    n = g.rank
    name = (name or "identity").strip().lower()
    if name in ("identity", "id", "trivial", "none"):
        return tuple(range(n))
    if name == "flip":
        if g.type_label == "A" and n >= 2:
            return tuple(range(n - 1, -1, -1))
        if g.type_label == "D":
            return tuple(list(range(n - 2)) + [n - 1, n - 2])
        if g.type_label == "E" and n == 6:
            return (5, 1, 4, 3, 2, 0)
    if name in ("rotation", "triality") and g.type_label == "D" and n == 4:
        return (2, 1, 3, 0)
    if re.fullmatch(r"[\d,\s]+", name):
        return tuple(int(x) for x in name.replace(" ", "").split(",") if x != "")
    raise ValidationError(f"no diagram automorphism '{name}' on {g.name}")


def diagram_automorphism(g: LieAlgebraData, perm: Sequence[int]) -> Automorphism:
    """μ(e_i) = e_{perm(i)}, μ(f_i) = f_{perm(i)}, extended through the brackets."""
    perm = tuple(int(x) for x in perm)
    n = g.rank
    if sorted(perm) != list(range(n)):
        raise ValidationError(f"{perm} is not a permutation of the {n} simple roots")
    if any(g.cartan[perm[i]][perm[j]] != g.cartan[i][j] for i in range(n) for j in range(n)):
        raise ValidationError(f"{perm} is not a symmetry of the {g.name} Dynkin diagram")

    p = g.num_positive
    images: List[Elem] = [None] * g.dim
    for i in range(n):
        k = g.root_index[_unit(i, n)]
        target = g.root_index[_unit(perm[i], n)]
        images[g.e_index(k)] = {g.e_index(target): Fraction(1)}
        images[g.f_index(k)] = {g.f_index(target): Fraction(1)}
        images[g.h_index(i)] = {g.h_index(perm[i]): Fraction(1)}
    for k, beta in enumerate(g.positive_roots):
        if sum(beta) == 1:
            continue
        for i in range(n):
            gamma = list(beta)
            gamma[i] -= 1
            gamma = tuple(gamma)
            if gamma not in g.root_index:
                continue
            simple = g.root_index[_unit(i, n)]
            kg = g.root_index[gamma]
            c_e = g.bracket_basis(g.e_index(simple), g.e_index(kg)).get(g.e_index(k))
            c_f = g.bracket_basis(g.f_index(simple), g.f_index(kg)).get(g.f_index(k))
            if c_e and c_f:
                images[g.e_index(k)] = scaled(g.bracket(images[g.e_index(simple)], images[g.e_index(kg)]), 1 / c_e)
                images[g.f_index(k)] = scaled(g.bracket(images[g.f_index(simple)], images[g.f_index(kg)]), 1 / c_f)
                break
    order = math.lcm(*_cycle_lengths(perm))
    log("BUILD", f"diagram automorphism {perm} of {g.name}, order {order}")
    return Automorphism(g, perm, order, {}, images)


def _check_nilpotent(aut: Automorphism, e: Elem) -> Elem:
    g = aut.algebra
    e = {b: Fraction(c) for b, c in e.items() if c}
    if aut.mu(e) != e:
        raise ValidationError(f"e = {g.element_str(e)} is not fixed by μ")
    for b in range(g.dim):
        if g.ad_power(e, {b: Fraction(1)}, g.dim + 1):
            raise ValidationError(f"e = {g.element_str(e)} is not ad-nilpotent")
    return e


def make_automorphism(g: LieAlgebraData, perm: Sequence[int], e: Optional[Elem] = None) -> Automorphism:
    aut = diagram_automorphism(g, perm)
    return aut.with_nilpotent(e) if e else aut


# =========================
# Eigenspaces and g^[0]
# =========================

@dataclass
class EigenDecomposition:
    order_T: int
    components: List[List[dict]]
    dims: List[int]

    def to_json(self) -> dict:
        return {
            "order_T": self.order_T,
            "dims": self.dims,
            "components": [[{str(b): _scalar_json(c) for b, c in sorted(v.items())} for v in comp]
                           for comp in self.components],
        }


def _scalar_json(c):
    return c if isinstance(c, Fraction) else str(c)


def _mu_power(aut: Automorphism, x: Elem, k: int) -> Elem:
    for _ in range(k):
        x = aut.mu(x)
    return x


def eigenspace_decomposition(g: LieAlgebraData, aut: Automorphism) -> EigenDecomposition:
    """Bases of g^[j] = {x : μx = η^j x}, η = exp(2πi/T)."""
    T = aut.order_T
    if T == 1:
        comps = [[{b: Fraction(1)} for b in range(g.dim)]]
    elif T == 2:
        comps = []
        for sign in (1, -1):
            rows = [combine((1, {b: Fraction(1)}), (sign, aut.mu({b: Fraction(1)}))) for b in range(g.dim)]
            comps.append([row for _, row in rref(rows, list(range(g.dim)))])
    elif T == 3:
        comps = _order_three_components(g, aut)
    else:
        raise ValidationError(f"diagram automorphisms have order ≤ 3, got {T}")
    dims = [len(c) for c in comps]
    if sum(dims) != g.dim:
        raise RuntimeError("eigenspace dimensions do not add up")
    return EigenDecomposition(T, comps, dims)


def _order_three_components(g: LieAlgebraData, aut: Automorphism) -> List[List[dict]]:
    from sympy.polys.domains import QQ
    from sympy.polys.matrices.sdm import SDM

    field_ = QQ.algebraic_field(sympy.sqrt(-3))
    zeta = field_.from_sympy((-1 + sympy.sqrt(-3)) / 2)
    powers = [[_mu_power(aut, {b: Fraction(1)}, k) for k in range(3)] for b in range(g.dim)]
    comps = []
    for j in range(3):
        data = {}
        for b in range(g.dim):
            row = {}
            for k in range(3):
                coeff = zeta ** ((-j * k) % 3)
                for col, c in powers[b][k].items():
                    row[col] = row.get(col, field_.zero) + coeff * field_.convert_from(to_qq(c), QQ)
            row = {col: v for col, v in row.items() if v}
            if row:
                data[b] = row
        reduced, _ = SDM(data, (g.dim, g.dim), field_).rref()
        comps.append([{col: field_.to_sympy(v) for col, v in entries.items()} for entries in reduced.values() if entries])
    return comps


@dataclass(eq=False)
class FixedPointAlgebra:
    algebra: LieAlgebraData
    embedding: List[Elem]

    def embed(self, x: Elem) -> Elem:
        out: Elem = {}
        for b, c in x.items():
            add_into(out, self.embedding[b], c)
        return out


def fixed_point_algebra(g: LieAlgebraData, aut: Automorphism) -> FixedPointAlgebra:
    """g^[0] in its own Chevalley basis together with its embedding in g."""
    key = ("fixed", aut.mu_perm)
    if key in g.derived:
        return g.derived[key]
    if aut.is_inner:
        fixed = FixedPointAlgebra(g, [{b: Fraction(1)} for b in range(g.dim)])
    else:
        g0, embedding = _fold(g, aut.mu_perm)
        fixed = FixedPointAlgebra(g0, embedding)
        log("BUILD", f"g^[0] of {g.name} under {aut.mu_perm} is {g0.name} (dim {g0.dim})")
    g.derived[key] = fixed
    return fixed


def highest_root_vector_fixed(g: LieAlgebraData, aut: Automorphism) -> Elem:
    fixed = fixed_point_algebra(g, aut)
    return fixed.embed(highest_root_vector(fixed.algebra))


def nilpotent_block_size(v, apply: Callable, limit: int = 10_000) -> int:
    """Smallest k with apply^k(v) = 0."""
    if not v:
        raise ValidationError("block size of the zero vector is undefined")
    k = 0
    while v:
        v = apply(v)
        k += 1
        if k > limit:
            raise ValidationError("operator is not nilpotent on this vector")
    return k


def ad_e_block_size(aut: Automorphism, v: Elem) -> int:
    return nilpotent_block_size(v, aut.ad_e)


# =========================
# Adapted (μ-eigen) basis
# =========================

@dataclass(eq=False)
class AdaptedBasis:
    """
    Basis of g made of μ-eigenvectors: the g^[0] Chevalley basis first, then a
    basis of g^[1].  Carries structure constants, form and τ in its own
    coordinates; module and Zhu computations work in this basis.
    """

    algebra: LieAlgebraData
    aut: Automorphism
    fixed: FixedPointAlgebra
    vectors: List[Elem]
    labels: List[str]
    classes: List[int]
    brackets: Dict[Tuple[int, int], Elem]
    form: Dict[Tuple[int, int], Fraction]
    tau_images: List[Elem]
    coords: SpanCoordinates

    @property
    def dim(self) -> int:
        return len(self.vectors)

    @property
    def order_T(self) -> int:
        return self.aut.order_T

    @property
    def fixed_dim(self) -> int:
        return self.fixed.algebra.dim

    def to_adapted(self, x: Elem) -> Elem:
        local = self.coords.coordinates(x)
        if local is None:
            raise ValidationError("element is outside g")
        return local

    def to_chevalley(self, y: Elem) -> Elem:
        out: Elem = {}
        for a, c in y.items():
            add_into(out, self.vectors[a], c)
        return out

    def bracket(self, x: Elem, y: Elem) -> Elem:
        out: Elem = {}
        for i, a in x.items():
            for j, b in y.items():
                table = self.brackets.get((i, j))
                if table:
                    add_into(out, table, a * b)
        return out

    def form_value(self, x: Elem, y: Elem) -> Fraction:
        total = Fraction(0)
        for i, a in x.items():
            for j, b in y.items():
                value = self.form.get((i, j))
                if value:
                    total += a * b * value
        return total

    def tau(self, x: Elem) -> Elem:
        out: Elem = {}
        for a, c in x.items():
            add_into(out, self.tau_images[a], c)
        return out

    @property
    def e(self) -> Elem:
        return self.to_adapted(self.aut.e)

    def ad_e(self, x: Elem) -> Elem:
        return self.bracket(self.e, x)

    def class_of_element(self, x: Elem) -> int:
        classes = {self.classes[a] for a in x}
        if len(classes) != 1:
            raise ValidationError("element is not a μ-eigenvector")
        return classes.pop()

    def in_fixed(self, x: Elem) -> bool:
        return all(self.classes[a] == 0 for a in x)

    def fixed_to_adapted(self, x: Elem) -> Elem:
        """g^[0] Chevalley coordinates -> adapted coordinates (same indices)."""
        return dict(x)

    def parse(self, text: str) -> Elem:
        """Element text in g labels, g^[0] labels (prefixed '0:') or adapted labels."""
        def resolve(label: str) -> Elem:
            if label in self._label_index:
                return {self._label_index[label]: Fraction(1)}
            if label in ("e_theta0", "e_theta_0"):
                return self.to_adapted(highest_root_vector_fixed(self.algebra, self.aut))
            if label in ("f_theta0", "f_theta_0"):
                g0 = self.fixed.algebra
                return {g0.f_index(g0.num_positive - 1): Fraction(1)}
            return self.to_adapted(self.algebra.element(label))
        return parse_linear_combination(text, resolve)

    def element_str(self, x: Elem) -> str:
        return format_linear_combination({self.labels[a]: c for a, c in sorted(x.items())})

    def dual_basis(self) -> List[Elem]:
        """u^i with <u_i, u^j> = δ_ij."""
        n = self.dim
        rows = [{j: self.form[(i, j)] for j in range(n) if (i, j) in self.form} for i in range(n)]
        inverse = _invert(rows, n)
        return [{j: inverse[j].get(i, Fraction(0)) for j in range(n) if inverse[j].get(i)} for i in range(n)]

    def __post_init__(self):
        self._label_index = {label: a for a, label in enumerate(self.labels)}


def _invert(rows: List[Vector], n: int) -> List[Vector]:
    from sympy.polys.domains import QQ
    from sympy.polys.matrices.sdm import SDM

    data = {i: {j: to_qq(v) for j, v in row.items()} for i, row in enumerate(rows) if row}
    inverse = SDM(data, (n, n), QQ).inv()
    return [{j: to_fraction(v) for j, v in inverse.get(i, {}).items() if v} for i in range(n)]


def adapted_basis(aut: Automorphism) -> AdaptedBasis:
    g = aut.algebra
    if aut.order_T > 2:
        raise ValidationError("module and Zhu computations support automorphisms of order ≤ 2")
    key = ("adapted", aut.mu_perm, tuple(sorted(aut.e.items())))
    if key in g.derived:
        return g.derived[key]

    fixed = fixed_point_algebra(g, aut)
    g0 = fixed.algebra
    vectors = [dict(v) for v in fixed.embedding]
    if aut.order_T == 1:
        labels = list(g.labels)
    else:
        labels = ["p_" + label for label in g0.labels]
    classes = [0] * len(vectors)
    if aut.order_T == 2:
        for b in range(g.dim):
            image = aut.mu({b: Fraction(1)})
            (target, sign), = image.items()
            if target == b and sign == -1:
                vectors.append({b: Fraction(1)})
            elif target > b:
                vectors.append(combine((1, {b: Fraction(1)}), (-1, image)))
            else:
                continue
            labels.append("m_" + g.labels[b])
            classes.append(1)
    if len(vectors) != g.dim:
        raise RuntimeError("adapted basis has the wrong size")

    coords = SpanCoordinates(vectors)
    brackets: Dict[Tuple[int, int], Elem] = {}
    form: Dict[Tuple[int, int], Fraction] = {}
    for i in range(g.dim):
        for j in range(i, g.dim):
            value = g.form_value(vectors[i], vectors[j])
            if value:
                form[(i, j)] = form[(j, i)] = value
            if j == i:
                continue
            local = coords.coordinates(g.bracket(vectors[i], vectors[j]))
            if local:
                brackets[(i, j)] = local
                brackets[(j, i)] = scaled(local, -1)
    tau_images = [coords.coordinates(g.tau(v)) for v in vectors]

    basis = AdaptedBasis(g, aut, fixed, vectors, labels, classes, brackets, form, tau_images, coords)
    g.derived[key] = basis
    return basis


# =========================
# Text form of linear combinations
# =========================

_TERM = re.compile(r"([+-]?)(?:(\d+(?:/\d+)?)\*)?([A-Za-z_][A-Za-z0-9_:]*)")


def parse_linear_combination(text: str, resolve: Callable[[str], Elem]) -> Elem:
    compact = re.sub(r"\s+", "", text or "")
    if not compact:
        raise ValidationError("empty element")
    out: Elem = {}
    pos = 0
    while pos < len(compact):
        match = _TERM.match(compact, pos)
        if not match or match.end() == pos:
            raise ValidationError(f"cannot parse element '{text}' at '{compact[pos:]}'")
        sign = -1 if match.group(1) == "-" else 1
        coeff = Fraction(match.group(2)) if match.group(2) else Fraction(1)
        add_into(out, resolve(match.group(3)), sign * coeff)
        pos = match.end()
    return out


def format_linear_combination(terms: Dict[str, Fraction]) -> str:
    parts = []
    for label, c in terms.items():
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        body = label if mag == 1 else f"{mag}*{label}"
        parts.append((sign, body))
    if not parts:
        return "0"
    first_sign, first = parts[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text
