# src/uea.py

"""
Universal enveloping algebras in PBW normal form, bounded two-sided ideals,
and finite-dimensional irreducible highest-weight modules M(λ).
"""

import itertools
import re
from fractions import Fraction
from math import comb
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .errors import TruncationError, ValidationError
from .liealg import Elem, LieAlgebraData
from .utils.linalg import EchelonBasis, add_into, nullspace, scaled
from .utils.log import log

Monomial = Tuple[int, ...]
Terms = Dict[Monomial, Fraction]


# =========================
# Enveloping algebra
# =========================

class UEA:
    """
    U(a) for a Lie algebra a given in a basis.

    ``order`` is "standard" (basis index order: e < h < f) or "neg_first"
    (f < h < e, used for highest-weight modules).
    """

    def __init__(self, algebra: LieAlgebraData, order: str = "standard"):
        if order not in ("standard", "neg_first"):
            raise ValidationError(f"unknown PBW order '{order}'")
        self.algebra = algebra
        self.order = order
        if order == "standard":
            self._rank = list(range(algebra.dim))
        else:
            block = {"f": 0, "h": 1, "e": 2}
            keys = sorted(range(algebra.dim), key=lambda b: (block[algebra.kind(b)], b))
            self._rank = [0] * algebra.dim
            for r, b in enumerate(keys):
                self._rank[b] = r
        self._cache: Dict[Monomial, Terms] = {}

    def rank(self, b: int) -> int:
        return self._rank[b]

    def sort_key(self, monomial: Monomial):
        return (len(monomial), tuple(self._rank[b] for b in monomial))

    def is_ordered(self, monomial: Monomial) -> bool:
        return all(self._rank[x] <= self._rank[y] for x, y in zip(monomial, monomial[1:]))

    def normalize(self, word: Sequence[int]) -> Terms:
        word = tuple(word)
        cached = self._cache.get(word)
        if cached is not None:
            return cached
        for i in range(len(word) - 1):
            x, y = word[i], word[i + 1]
            if self._rank[x] > self._rank[y]:
                # x y = y x + [x, y]
                out = dict(self.normalize(word[:i] + (y, x) + word[i + 2:]))
                for k, c in self.algebra.bracket_basis(x, y).items():
                    add_into(out, self.normalize(word[:i] + (k,) + word[i + 2:]), c)
                break
        else:
            out = {word: Fraction(1)}
        self._cache[word] = out
        return out

    def element(self, terms: Terms) -> "PBWElement":
        out: Terms = {}
        for monomial, c in terms.items():
            add_into(out, self.normalize(monomial), c)
        return PBWElement(self, out)

    def one(self) -> "PBWElement":
        return PBWElement(self, {(): Fraction(1)})

    def generator(self, x: Elem) -> "PBWElement":
        return PBWElement(self, {(b,): Fraction(c) for b, c in x.items() if c})

    def monomials(self, degree: int) -> List[Monomial]:
        basis = sorted(range(self.algebra.dim), key=self._rank.__getitem__)
        return list(itertools.combinations_with_replacement(basis, degree))

    def monomials_up_to(self, degree: int) -> List[Monomial]:
        return [m for d in range(degree + 1) for m in self.monomials(d)]

    def filtered_dim(self, degree: int) -> int:
        """dim U(a)_{≤ degree}."""
        return comb(self.algebra.dim + degree, degree)

    def parse(self, text: str) -> "PBWElement":
        return parse_pbw(self, text)


class PBWElement:
    """Exact linear combination of ordered monomials of one UEA."""

    __slots__ = ("uea", "terms")

    def __init__(self, uea: UEA, terms: Terms):
        self.uea = uea
        self.terms = {m: Fraction(c) for m, c in terms.items() if c}

    def _check(self, other: "PBWElement"):
        if not isinstance(other, PBWElement):
            raise TypeError(f"cannot combine PBWElement with {type(other).__name__}")
        if other.uea is not self.uea:
            raise ValidationError("elements live in different enveloping algebras")

    @property
    def degree(self) -> int:
        return max((len(m) for m in self.terms), default=0)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        self._check(other)
        return PBWElement(self.uea, add_into(dict(self.terms), other.terms))

    def __sub__(self, other):
        self._check(other)
        return PBWElement(self.uea, add_into(dict(self.terms), other.terms, -1))

    def __neg__(self):
        return PBWElement(self.uea, scaled(self.terms, -1))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return PBWElement(self.uea, scaled(self.terms, Fraction(other)))
        return multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return PBWElement(self.uea, scaled(self.terms, Fraction(other)))
        return NotImplemented

    def __pow__(self, k: int):
        out = self.uea.one()
        for _ in range(k):
            out = multiply(out, self)
        return out

    def __eq__(self, other):
        return isinstance(other, PBWElement) and other.uea is self.uea and other.terms == self.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"PBWElement({format_pbw(self)!r})"

    def __str__(self):
        return format_pbw(self)


def pbw_normalize(uea: UEA, word: Sequence[int]) -> PBWElement:
    return PBWElement(uea, uea.normalize(word))


def multiply(a: PBWElement, b: PBWElement) -> PBWElement:
    a._check(b)
    out: Terms = {}
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            add_into(out, a.uea.normalize(ma + mb), ca * cb)
    return PBWElement(a.uea, out)


def commutator(a: PBWElement, b: PBWElement) -> PBWElement:
    return multiply(a, b) - multiply(b, a)


# =========================
# Bounded ideals
# =========================

class IdealBasis:
    """Row-reduced span of m1·gen·m2 over monomials with total degree ≤ degree_cap."""

    def __init__(self, generator: PBWElement, degree_cap: int):
        if generator.is_zero():
            raise ValidationError("ideal generator is zero")
        self.generator = generator
        self.degree_cap = degree_cap
        uea = generator.uea
        room = degree_cap - generator.degree
        if room < 0:
            raise TruncationError(f"generator degree {generator.degree} exceeds cap {degree_cap}")
        rows = []
        monomials = uea.monomials_up_to(room)
        for left in monomials:
            for right in monomials:
                if len(left) + len(right) > room:
                    continue
                product: Terms = {}
                for m, c in generator.terms.items():
                    add_into(product, uea.normalize(left + m + right), c)
                if product:
                    rows.append(product)
        columns = uea.monomials_up_to(degree_cap)
        self.span_basis = EchelonBasis(rows, columns)
        log("UEA", f"ideal <{format_pbw(generator)}> at degree ≤ {degree_cap}: rank {self.span_basis.rank}")

    def contains(self, x: PBWElement) -> bool:
        if x.degree > self.degree_cap:
            raise TruncationError(f"degree {x.degree} exceeds ideal cap {self.degree_cap}")
        return self.span_basis.contains(x.terms)

    def quotient_dim(self) -> int:
        """dim U_{≤cap} / (ideal ∩ U_{≤cap}) as witnessed at this cap."""
        return self.generator.uea.filtered_dim(self.degree_cap) - self.span_basis.rank


def ideal_membership_bounded(x: PBWElement, gen: PBWElement, degree_cap: int) -> bool:
    """True means x is in the two-sided ideal; False means not witnessed at this cap."""
    x._check(gen)
    if x.degree > degree_cap:
        raise TruncationError(f"degree {x.degree} exceeds cap {degree_cap}")
    return IdealBasis(gen, degree_cap).contains(x)


# =========================
# Text form
# =========================

def format_pbw(x: PBWElement) -> str:
    if not x.terms:
        return "0"
    labels = x.uea.algebra.labels
    ordered = sorted(x.terms.items(), key=lambda item: (-len(item[0]), x.uea.sort_key(item[0])[1]))
    parts = []
    for monomial, c in ordered:
        word = ".".join(labels[b] for b in monomial) if monomial else ""
        mag = abs(c)
        if not word:
            body = str(mag)
        elif mag == 1:
            body = word
        else:
            body = f"{mag}*{word}"
        parts.append(("-" if c < 0 else "+", body))
    text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


_PBW_TERM = re.compile(r"([+-]?)(?:(\d+(?:/\d+)?)(?:\*|(?=[+-]|$)))?((?:[A-Za-z_][A-Za-z0-9_]*)(?:\.[A-Za-z_][A-Za-z0-9_]*)*)?")


def parse_pbw(uea: UEA, text: str) -> PBWElement:
    compact = re.sub(r"\s+", "", text or "")
    if not compact:
        raise ValidationError("empty PBW element")
    g = uea.algebra
    out: Terms = {}
    pos = 0
    while pos < len(compact):
        match = _PBW_TERM.match(compact, pos)
        if not match or match.end() == pos or not (match.group(2) or match.group(3)):
            raise ValidationError(f"cannot parse PBW element '{text}' at '{compact[pos:]}'")
        sign = -1 if match.group(1) == "-" else 1
        coeff = Fraction(match.group(2)) if match.group(2) else Fraction(1)
        word = tuple(g.index_of(label) for label in match.group(3).split(".")) if match.group(3) else ()
        add_into(out, uea.normalize(word), sign * coeff)
        pos = match.end()
    return PBWElement(uea, out)


# =========================
# Finite irreducible modules
# =========================

class IrreducibleModule:
    """
    M(λ) = Verma(λ) / radical of the contravariant form, weight space by
    weight space.  Basis vectors are f-monomials (neg_first PBW order) applied
    to the highest-weight vector; ``anti`` is the anti-involution used for the
    form and defaults to e_β <-> f_β, h -> h.
    """

    def __init__(self, algebra: LieAlgebraData, lam: Sequence[int], anti: Optional[Callable[[int], Elem]] = None):
        self.algebra = algebra
        self.lam = algebra.check_weight(lam)
        self.uea = UEA(algebra, "neg_first")
        self._anti = anti or (lambda b: algebra.tau({b: Fraction(1)}))
        negatives = [algebra.f_index(k) for k in range(algebra.num_positive)]
        self._negatives = sorted(negatives, key=self.uea.rank)

        self.basis: List[Monomial] = []
        self._reducers: Dict[int, EchelonBasis] = {}
        self._height_of: Dict[Monomial, int] = {}
        height = 0
        while True:
            monomials = self._verma_monomials(height)
            gram = [[self._pair(m1, {m2: Fraction(1)}) for m2 in monomials] for m1 in monomials]
            rows = [{m2: gram[i][j] for j, m2 in enumerate(monomials) if gram[i][j]} for i in range(len(monomials))]
            radical = nullspace(rows, monomials)
            reducer = EchelonBasis(radical, monomials)
            self._reducers[height] = reducer
            kept = [m for m in monomials if m not in reducer.rows]
            if not kept:
                break
            for m in kept:
                self._height_of[m] = height
            self.basis.extend(kept)
            height += 1
        self.index = {m: i for i, m in enumerate(self.basis)}
        self._gram = self._top_gram()
        log("UEA", f"M{self.lam} of {algebra.name}: dim {self.dim}")

    # ---- Verma side -------------------------------------------------

    def _verma_monomials(self, height: int) -> List[Monomial]:
        g = self.algebra
        heights = {b: -g.height(b) for b in self._negatives}
        out = []

        def grow(prefix, start, remaining):
            if remaining == 0:
                out.append(tuple(prefix))
                return
            for pos in range(start, len(self._negatives)):
                b = self._negatives[pos]
                if heights[b] <= remaining:
                    prefix.append(b)
                    grow(prefix, pos, remaining - heights[b])
                    prefix.pop()

        grow([], 0, height)
        return out

    def _eval_terms(self, terms: Terms) -> Terms:
        """Apply normal-ordered terms to the highest-weight vector."""
        g = self.algebra
        out: Terms = {}
        for monomial, c in terms.items():
            f_part = []
            scalar = c
            for b in monomial:
                kind = g.kind(b)
                if kind == "f":
                    f_part.append(b)
                elif kind == "h":
                    scalar *= self.lam[b - g.num_positive]
                else:
                    scalar = 0
                    break
            if scalar:
                add_into(out, {tuple(f_part): Fraction(1)}, scalar)
        return out

    def verma_act(self, b: int, vec: Terms) -> Terms:
        out: Terms = {}
        for monomial, c in vec.items():
            add_into(out, self._eval_terms(self.uea.normalize((b,) + monomial)), c)
        return out

    def _verma_act_elem(self, x: Elem, vec: Terms) -> Terms:
        out: Terms = {}
        for b, c in x.items():
            add_into(out, self.verma_act(b, vec), c)
        return out

    def _pair(self, left: Monomial, right: Terms) -> Fraction:
        """<left·v, right> for the contravariant form."""
        for b in left:
            right = self._verma_act_elem(self._anti(b), right)
            if not right:
                return Fraction(0)
        return right.get((), Fraction(0))

    def _reduce(self, vec: Terms) -> Dict[int, Fraction]:
        out: Dict[int, Fraction] = {}
        by_height: Dict[int, Terms] = {}
        for m, c in vec.items():
            by_height.setdefault(-sum(self.algebra.height(b) for b in m), {})[m] = c
        for height, part in by_height.items():
            reducer = self._reducers.get(height)
            if reducer is None:
                # above the last nonzero weight space
                continue
            for m, c in reducer.reduce(part).items():
                if m not in self.index:
                    raise RuntimeError("reduction left a non-basis monomial")
                out[self.index[m]] = c
        return out

    # ---- module structure -------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.basis)

    def weight(self, i: int) -> Tuple[int, ...]:
        """Dynkin labels of basis vector i."""
        g = self.algebra
        labels = list(self.lam)
        for b in self.basis[i]:
            root = g.root_of(b)
            for a in range(g.rank):
                labels[a] += sum(g.cartan[a][j] * root[j] for j in range(g.rank))
        return tuple(labels)

    def act_basis(self, b: int, i: int) -> Dict[int, Fraction]:
        return self._reduce(self.verma_act(b, {self.basis[i]: Fraction(1)}))

    def act(self, x: Elem, vec: Dict[int, Fraction]) -> Dict[int, Fraction]:
        out: Dict[int, Fraction] = {}
        for i, c in vec.items():
            for b, a in x.items():
                add_into(out, self.act_basis(b, i), a * c)
        return out

    def _top_gram(self) -> Dict[Tuple[int, int], Fraction]:
        gram = {}
        for i, m1 in enumerate(self.basis):
            for j, m2 in enumerate(self.basis):
                if self._height_of[m1] != self._height_of[m2]:
                    continue
                value = self._pair(m1, {m2: Fraction(1)})
                if value:
                    gram[(i, j)] = value
        return gram

    def form(self, i: int, j: int) -> Fraction:
        return self._gram.get((i, j), Fraction(0))

    def action_matrices(self) -> Dict[int, Dict[Tuple[int, int], Fraction]]:
        out = {}
        for b in range(self.algebra.dim):
            matrix = {}
            for i in range(self.dim):
                for r, c in self.act_basis(b, i).items():
                    matrix[(r, i)] = c
            out[b] = matrix
        return out


def act_on(module: IrreducibleModule, p: PBWElement) -> Dict[Tuple[int, int], Fraction]:
    """Matrix of p ∈ U(a) on M(λ); columns indexed by basis vectors."""
    if p.uea.algebra is not module.algebra:
        raise ValidationError("PBW element and module use different algebras")
    matrix = {}
    for i in range(module.dim):
        total: Dict[int, Fraction] = {}
        for monomial, c in p.terms.items():
            vec = {i: Fraction(1)}
            for b in reversed(monomial):
                vec = module.act({b: Fraction(1)}, vec)
                if not vec:
                    break
            add_into(total, vec, c)
        for r, c in total.items():
            matrix[(r, i)] = c
    return matrix


def irreducible_module(algebra: LieAlgebraData, lam: Sequence[int], anti=None) -> IrreducibleModule:
    return IrreducibleModule(algebra, lam, anti)
