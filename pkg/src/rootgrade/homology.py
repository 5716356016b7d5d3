"""The Lie algebra {b,b} = (b⊗b)/K, its homology subspace HF(b), and quotients.

Tensor coordinates: ``e_i ⊗ e_j`` sits at index ``i * dim_b + j``.  A basis of
{b,b} is given by the non-pivot columns of the RREF of K, so every class has
a canonical representative supported on those columns and the class
coordinates are simply that representative read on those columns.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from . import linalg as la
from .bee import Bee, BElement, BOperator, _ell
from .coords import CoordinateQuadruple
from .errors import NotInHF, NotUniform
from .linalg import Subspace, Vec


def relation_generators(bee: Bee) -> List[Vec]:
    """The spanning set of K, family by family, in a fixed order."""
    n, m, N = bee.n, bee.m, bee.dim
    q = bee.q
    a, C = q.a, q.C

    def t(x: Vec, y: Vec) -> Vec:
        out: Vec = {}
        for i, xi in x.items():
            for j, yj in y.items():
                la.iadd(out, {i * N + j: xi * yj})
        return out

    def cflat(c: Vec) -> Vec:
        return {n + s: x for s, x in c.items()}

    ab = [la.unit(i) for i in range(n)]
    cb = [la.unit(s) for s in range(m)]
    gens: List[Vec] = []
    for al in ab:
        for c in cb:
            gens.append(t(al, cflat(c)))
            gens.append(t(cflat(c), al))
    for x in bee.split.A.basis:
        for y in bee.split.B.basis:
            gens.append(t(x, y))
    for i in range(n):
        for j in range(i, n):
            gens.append(la.add(t(ab[i], ab[j]), t(ab[j], ab[i])))
    for s in range(m):
        for u in range(s + 1, m):
            gens.append(la.add(t(cflat(cb[s]), cflat(cb[u])), t(cflat(cb[u]), cflat(cb[s])), -1))
    for i in range(n):
        for j in range(n):
            for k in range(n):
                g = t(a.mul[i][j], ab[k])
                la.iadd(g, t(a.mul[k][i], ab[j]))
                la.iadd(g, t(a.mul[j][k], ab[i]))
                gens.append(g)
    for s in range(m):
        for u in range(m):
            for i in range(n):
                g = t(C.f[s][u], ab[i])
                la.iadd(g, t(cflat(C.action(a.apply_star(ab[i]), cb[u])), cflat(cb[s])))
                la.iadd(g, t(cflat(C.act[i][s]), cflat(cb[u])), -1)
                gens.append(g)
    return [g for g in gens if g]


class BB:
    """{b,b} for a quadruple at a fixed ℓ, with cached structure constants."""

    def __init__(self, q: CoordinateQuadruple, ell, bee: Optional[Bee] = None):
        self.q = q
        self.ell = _ell(ell)
        self.bee = bee if bee is not None else Bee(q)
        self.N = self.bee.dim
        self.generators = relation_generators(self.bee)
        self.K = la.span(self.generators, self.N * self.N)
        self.cols = self.K.complement_cols()
        self.col_pos = {c: k for k, c in enumerate(self.cols)}
        self.dim = len(self.cols)
        self._d_cache: Dict[int, BOperator] = {}
        self._sc: Optional[List[List[Vec]]] = None

    # tensors and classes
    def tensor(self, x: Vec, y: Vec) -> Vec:
        """Elementary tensor of two flat b-vectors."""
        N = self.N
        out: Vec = {}
        for i, xi in x.items():
            for j, yj in y.items():
                la.iadd(out, {i * N + j: xi * yj})
        return out

    def cls(self, tensor: Vec) -> Vec:
        """{b,b}-coordinates of the class of a tensor."""
        red = la.coset_reduce(tensor, self.K)
        return {self.col_pos[i]: x for i, x in red.items()}

    def pair(self, x: Vec, y: Vec) -> Vec:
        return self.cls(self.tensor(x, y))

    def pair_b(self, x: BElement, y: BElement) -> Vec:
        n = self.bee.n
        return self.pair(x.flat(n), y.flat(n))

    def rep(self, k: int) -> Tuple[int, int]:
        """Elementary tensor (i, j) representing basis class k."""
        return divmod(self.cols[k], self.N)

    def rep_tensor(self, v: Vec) -> Vec:
        return {self.cols[k]: x for k, x in v.items()}

    # derivation map
    def d_pair(self, i: int, j: int) -> BOperator:
        key = i * self.N + j
        op = self._d_cache.get(key)
        if op is None:
            op = self.bee.derivation(self.bee.basis(i), self.bee.basis(j), self.ell)
            self._d_cache[key] = op
        return op

    def d_tensor(self, tensor: Vec) -> Vec:
        """Flattened Σ x_ij d_{e_i, e_j} for a tensor Σ x_ij e_i⊗e_j."""
        out: Vec = {}
        for idx, x in tensor.items():
            i, j = divmod(idx, self.N)
            la.iadd(out, self.d_pair(i, j).flattened(), x)
        return out

    def d_operator(self, tensor: Vec) -> BOperator:
        flat = self.d_tensor(tensor)
        N = self.N
        images = [dict() for _ in range(N)]
        for idx, x in flat.items():
            k, j = divmod(idx, N)
            images[k][j] = x
        return BOperator(self.bee.n, tuple(images))

    def bracket_tensors(self, s: Vec, t: Vec) -> Vec:
        """Bilinear extension of [{β1,β2},{β1',β2'}] = {dβ1',β2'} + {β1',dβ2'}, unreduced."""
        d = self.d_operator(s)
        N = self.N
        out: Vec = {}
        for idx, x in t.items():
            i, j = divmod(idx, N)
            di, dj = d.images[i], d.images[j]
            la.iadd(out, self.tensor(di, la.unit(j)), x)
            la.iadd(out, self.tensor(la.unit(i), dj), x)
        return out

    def structure_constants(self) -> List[List[Vec]]:
        if self._sc is None:
            sc = [[{} for _ in range(self.dim)] for _ in range(self.dim)]
            for k in range(self.dim):
                sk = {self.cols[k]: Fraction(1)}
                for l in range(self.dim):
                    sc[k][l] = self.cls(self.bracket_tensors(sk, {self.cols[l]: Fraction(1)}))
            self._sc = sc
        return self._sc

    def bracket(self, s: Vec, t: Vec) -> Vec:
        sc = self.structure_constants()
        out: Vec = {}
        for k, x in s.items():
            for l, y in t.items():
                la.iadd(out, sc[k][l], x * y)
        return out

    # HF and β*
    def d_matrix_rows(self) -> List[Vec]:
        return [self.d_tensor({c: Fraction(1)}) for c in self.cols]

    def hf(self) -> Subspace:
        return la.kernel(self.d_matrix_rows(), self.N * self.N)

    def bstar_of_class(self, v: Vec) -> Vec:
        """Σ β*_{β_i, β_i'} over the canonical representative of a class."""
        out: Vec = {}
        bee = self.bee
        for k, x in v.items():
            i, j = self.rep(k)
            la.iadd(out, bee.beta_star(bee.basis(i), bee.basis(j))[0], x)
        return out

    def bstar_tensor(self, tensor: Vec) -> Vec:
        out: Vec = {}
        bee = self.bee
        for idx, x in tensor.items():
            i, j = divmod(idx, self.N)
            la.iadd(out, bee.beta_star(bee.basis(i), bee.basis(j))[0], x)
        return out


def build_relations(q: CoordinateQuadruple, ell) -> Subspace:
    return BB(q, ell).K


def bracket_bb(s: Vec, t: Vec, bb: BB) -> Vec:
    """Bracket of two {b,b} classes given by their coordinates."""
    return bb.bracket(s, t)


def compute_hf(q: CoordinateQuadruple, ell) -> Subspace:
    """HF(b) as a subspace of {b,b}-coordinates (ambient dimension dim {b,b})."""
    return BB(q, ell).hf()


@dataclass(frozen=True)
class UniformResult:
    ok: bool
    witness: Optional[Vec] = None
    bstar: Optional[Vec] = None

    def __bool__(self):
        return self.ok


def check_uniform(K_sub: Subspace, bb: BB, hf: Optional[Subspace] = None) -> UniformResult:
    """Whether every element of K_sub has vanishing Σβ*; raises NotInHF if K_sub ⊄ HF(b)."""
    hf = bb.hf() if hf is None else hf
    for v in K_sub.basis:
        if not hf.contains(v):
            raise NotInHF("subspace is not contained in HF(b)")
    for v in K_sub.basis:
        bs = bb.bstar_of_class(v)
        if bs:
            return UniformResult(False, v, bs)
    return UniformResult(True)


class QuotientDD:
    """⟨b,b⟩ = {b,b}/K_sub with the induced bracket."""

    def __init__(self, bb: BB, K_sub: Optional[Subspace] = None, check: bool = True):
        self.bb = bb
        self.K_sub = K_sub if K_sub is not None else la.zero_space(bb.dim)
        if check:
            res = check_uniform(self.K_sub, bb)
            if not res:
                raise NotUniform(f"subspace violates the uniform property; witness {res.witness}")
        self.cols = self.K_sub.complement_cols()
        self.col_pos = {c: k for k, c in enumerate(self.cols)}
        self.dim = len(self.cols)

    def project(self, v: Vec) -> Vec:
        """{b,b}-coordinates → ⟨b,b⟩-coordinates."""
        red = la.coset_reduce(v, self.K_sub)
        return {self.col_pos[i]: x for i, x in red.items()}

    def lift(self, v: Vec) -> Vec:
        """Canonical section ⟨b,b⟩ → {b,b}."""
        return {self.cols[k]: x for k, x in v.items()}

    def pair(self, x: Vec, y: Vec) -> Vec:
        return self.project(self.bb.pair(x, y))

    def bracket(self, s: Vec, t: Vec) -> Vec:
        return self.project(self.bb.bracket(self.lift(s), self.lift(t)))


def quotient_dd(q: CoordinateQuadruple, ell, K_sub: Optional[Subspace] = None) -> QuotientDD:
    return QuotientDD(BB(q, ell), K_sub)
