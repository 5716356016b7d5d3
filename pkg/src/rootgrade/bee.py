"""The algebra b = a ⊕ C attached to a coordinate quadruple.

Elements of b are stored flat: indices ``0..dim a - 1`` are the a-basis and
``dim a .. dim a + dim C - 1`` the C-basis.  :class:`BElement` is the
user-facing pair view.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Tuple

from . import linalg as la
from .coords import ABSplit, CoordinateQuadruple, split_ab
from .errors import DimensionError, WrongKind
from .linalg import Vec

# d_{c,c'} enters with the opposite sign to the printed heart term; this is
# the sign for which every generator of the relation space K is sent to the
# zero derivation (equivalently d|_a = (1/2ℓ) ad β* for all arguments).
HEART_SIGN = Fraction(-1)


@dataclass(frozen=True)
class BElement:
    a_part: Vec
    c_part: Vec

    def flat(self, n: int) -> Vec:
        out = dict(self.a_part)
        out.update({n + t: x for t, x in self.c_part.items()})
        return out

    @classmethod
    def from_flat(cls, v: Vec, n: int) -> "BElement":
        return cls({i: x for i, x in v.items() if i < n}, {i - n: x for i, x in v.items() if i >= n})

    def __add__(self, other):
        return BElement(la.add(self.a_part, other.a_part), la.add(self.c_part, other.c_part))

    def __sub__(self, other):
        return BElement(la.add(self.a_part, other.a_part, -1), la.add(self.c_part, other.c_part, -1))

    def __rmul__(self, s):
        return BElement(la.scale(self.a_part, s), la.scale(self.c_part, s))

    def __bool__(self):
        return bool(self.a_part) or bool(self.c_part)


def alpha(v: Vec) -> BElement:
    return BElement(dict(v), {})


def cvec(v: Vec) -> BElement:
    return BElement({}, dict(v))


@dataclass(frozen=True)
class EllParam:
    ell: int

    def __post_init__(self):
        if not isinstance(self.ell, int) or self.ell < 1:
            raise ValueError("ell must be a positive integer")


def _ell(ell) -> int:
    return ell.ell if isinstance(ell, EllParam) else int(ell)


class Bee:
    """Operations on b(q); construct once per quadruple and reuse."""

    def __init__(self, q: CoordinateQuadruple, split: ABSplit | None = None):
        self.q = q
        self.n = q.a.dim
        self.m = q.C.dim
        self.dim = self.n + self.m
        self.split = split if split is not None else split_ab(q)

    # basis helpers
    def basis(self, k: int) -> BElement:
        return BElement.from_flat(la.unit(k), self.n)

    def _check(self, x: BElement):
        for i in x.a_part:
            if not 0 <= i < self.n:
                raise DimensionError("a-part outside a")
        for t in x.c_part:
            if not 0 <= t < self.m:
                raise DimensionError("C-part outside C")

    def mul(self, x: BElement, y: BElement) -> BElement:
        """(α1 + c1)(α2 + c2) = α1α2 + f(c1, c2) + α1·c2 + α2*·c1."""
        self._check(x)
        self._check(y)
        a, C = self.q.a, self.q.C
        ap = la.add(a.product(x.a_part, y.a_part), C.form(x.c_part, y.c_part))
        cp = la.add(C.action(x.a_part, y.c_part), C.action(a.apply_star(y.a_part), x.c_part))
        return BElement(ap, cp)

    def circ_bracket(self, x: BElement, y: BElement) -> Tuple[BElement, BElement]:
        xy, yx = self.mul(x, y), self.mul(y, x)
        return xy + yx, xy - yx

    def diamond_heart(self, c: Vec, d: Vec) -> Tuple[Vec, Vec]:
        """(c ⋄ d, c ♡ d) = ((f(c,d) - f(d,c))/2, (f(c,d) + f(d,c))/2)."""
        if self.q.kind != "BC" and (c or d):
            raise WrongKind("⋄ and ♡ are only defined for kind BC")
        fcd = self.q.C.form(c, d)
        fdc = self.q.C.form(d, c)
        half = Fraction(1, 2)
        return la.scale(la.add(fcd, fdc, -1), half), la.scale(la.add(fcd, fdc), half)

    def ab_parts(self, x: Vec) -> Tuple[Vec, Vec]:
        """Write α ∈ a as (A-part, B-part) = ((α + α*)/2, (α - α*)/2)."""
        s = self.q.a.apply_star(x)
        half = Fraction(1, 2)
        return la.scale(la.add(x, s), half), la.scale(la.add(x, s, -1), half)

    def beta_star(self, x: BElement, y: BElement) -> Tuple[Vec, Vec, Vec]:
        """(β*, β1*, β2*) = ([a1,a2] + [b1,b2] - c1 ♡ c2, c1, c2)."""
        a = self.q.a
        a1, b1 = self.ab_parts(x.a_part)
        a2, b2 = self.ab_parts(y.a_part)
        out = la.add(a.commutator(a1, a2), a.commutator(b1, b2))
        if x.c_part and y.c_part:
            out = la.add(out, self.diamond_heart(x.c_part, y.c_part)[1], -1)
        return out, dict(x.c_part), dict(y.c_part)

    # derivations ------------------------------------------------------------

    def _d_aa(self, al: Vec, al2: Vec, ell: int) -> Callable[[BElement], BElement]:
        q = self.q
        a, C = q.a, q.C
        kind = q.kind
        if kind == "D" or not al or not al2:
            return lambda beta: BElement({}, {})
        if kind == "A":
            z = la.scale(a.commutator(al, al2), Fraction(1, ell + 1))
            return lambda beta: BElement(a.commutator(z, beta.a_part), {})
        if kind == "B":
            def dB(beta):
                p = beta.a_part
                return BElement(la.add(a.product(al2, a.product(al, p)), a.product(al, a.product(al2, p)), -1), {})
            return dB
        z = la.add(a.commutator(al, al2), a.commutator(a.apply_star(al), a.apply_star(al2)))
        z = la.scale(z, Fraction(1, 4 * ell))
        return lambda beta: BElement(a.commutator(z, beta.a_part), C.action(z, beta.c_part))

    def _d_cc(self, c: Vec, c2: Vec, ell: int) -> Callable[[BElement], BElement]:
        q = self.q
        if q.kind != "BC" or not c or not c2:
            return lambda beta: BElement({}, {})
        a, C = q.a, q.C
        h = la.scale(self.diamond_heart(c, c2)[1], HEART_SIGN / (2 * ell))
        half = Fraction(-1, 2)

        def dBC(beta):
            ap = a.commutator(h, beta.a_part)
            cp = C.action(h, beta.c_part)
            if beta.c_part:
                corr = la.add(C.action(C.form(beta.c_part, c2), c), C.action(C.form(beta.c_part, c), c2))
                cp = la.add(cp, corr, half)
            return BElement(ap, cp)
        return dBC

    def derivation(self, x: BElement, y: BElement, ell) -> "BOperator":
        """The endomorphism d_{x,y} of b as a matrix of basis images."""
        ell = _ell(ell)
        self._check(x)
        self._check(y)
        d1 = self._d_aa(x.a_part, y.a_part, ell)
        d2 = self._d_cc(x.c_part, y.c_part, ell)
        images = []
        for k in range(self.dim):
            e = self.basis(k)
            images.append((d1(e) + d2(e)).flat(self.n))
        return BOperator(self.n, tuple(images))


@dataclass(frozen=True)
class BOperator:
    """Linear endomorphism of b; ``images[k]`` is the image of basis vector k (flat)."""

    n: int
    images: Tuple[Vec, ...]

    def apply_flat(self, v: Vec) -> Vec:
        out: Vec = {}
        for k, x in v.items():
            la.iadd(out, self.images[k], x)
        return out

    def __call__(self, x: BElement) -> BElement:
        return BElement.from_flat(self.apply_flat(x.flat(self.n)), self.n)

    def is_zero(self) -> bool:
        return not any(self.images)

    def flattened(self) -> Vec:
        """Row-major flattening: entry (k, j) = coefficient of basis j in the image of basis k."""
        dim = len(self.images)
        out: Vec = {}
        for k, img in enumerate(self.images):
            for j, x in img.items():
                out[k * dim + j] = x
        return out


# module-level API -------------------------------------------------------------


def mul_b(q: CoordinateQuadruple, x: BElement, y: BElement) -> BElement:
    return Bee(q).mul(x, y)


def circ_bracket_b(q, x, y):
    return Bee(q).circ_bracket(x, y)


def diamond_heart(q, c: Vec, d: Vec):
    return Bee(q).diamond_heart(c, d)


def derivation(q, x, y, ell) -> BOperator:
    return Bee(q).derivation(x, y, ell)


def beta_star(q, x, y):
    return Bee(q).beta_star(x, y)
