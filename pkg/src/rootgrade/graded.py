"""Assembly of L(q, K) = (G⊗A) ⊕ (S⊗B) ⊕ (V⊗C) ⊕ ⟨b,b⟩ and its verification.

Basis order: G⊗A (index p*dim A + r), then S⊗B, then V⊗C (j*dim C + t), then
⟨b,b⟩ in quotient coordinates.  Structure constants are computed once from
the bracket table and stored as a :class:`~rootgrade.structure.LieAlgebra`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from . import linalg as la
from .bee import Bee
from .coords import CoordinateQuadruple
from .errors import NotClosed, WrongKind
from .homology import BB, QuotientDD
from .linalg import Subspace, Vec
from .structure import CheckResult, LieAlgebra, Weight
from .symplectic import IndexData, SparseOp, Symplectic, commutator, embed_op, embed_vec, form_eval, rank1, root_system

# Scalars on the two operator terms of [u⊗c, v⊗c'], fixed by requiring the
# Jacobi identity (see tests/test_graded.py::test_row6_calibration).
SYM_SCALE = Fraction(-1, 2)
SKEW_SCALE = Fraction(1, 2)

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class Block:
    name: str
    offset: int
    size: int


class GradedAlgebra:
    """L(q, K_sub) at rank ``idx.n`` with ℓ = |I0|."""

    def __init__(
        self,
        q: CoordinateQuadruple,
        idx: IndexData,
        K_sub: Optional[Subspace] = None,
        bb: Optional[BB] = None,
        sym_scale=SYM_SCALE,
        skew_scale=SKEW_SCALE,
        check_uniform: bool = True,
    ):
        if q.kind != "BC" and q.C.dim:
            raise WrongKind("graded assembly needs kind BC or C = {0}")
        self.q = q
        self.idx = idx
        self.ell = idx.ell
        self.bee = Bee(q)
        self.bb = bb if bb is not None and bb.ell == idx.ell else BB(q, idx.ell, self.bee)
        self.dd = QuotientDD(self.bb, K_sub, check=check_uniform)
        self.K_sub = self.dd.K_sub
        self.sp = Symplectic(idx)
        self.sym_scale = Fraction(sym_scale)
        self.skew_scale = Fraction(skew_scale)
        split = self.bee.split
        self.A, self.B = split.A, split.B
        self.nA, self.nB, self.m = self.A.rank, self.B.rank, q.C.dim
        self.nG, self.nS, self.nV = len(self.sp.g), len(self.sp.s), idx.size
        sizes = [("GA", self.nG * self.nA), ("SB", self.nS * self.nB), ("VC", self.nV * self.m), ("DD", self.dd.dim)]
        self.blocks: Dict[str, Block] = {}
        off = 0
        for name, size in sizes:
            self.blocks[name] = Block(name, off, size)
            off += size
        self.dim = off
        self.labels, self.weights = self._labels_weights()
        self._lie: Optional[LieAlgebra] = None

    # basis bookkeeping ----------------------------------------------------

    def _labels_weights(self) -> Tuple[List[str], List[Weight]]:
        labels, weights = [], []
        zero = (0,) * self.idx.n
        for b in self.sp.g:
            for r in range(self.nA):
                labels.append(f"{b.label}⊗A{r}")
                weights.append(b.weight)
        for b in self.sp.s:
            for r in range(self.nB):
                labels.append(f"{b.label}⊗B{r}")
                weights.append(b.weight)
        for name, _, w in self.sp.v:
            for t in range(self.m):
                labels.append(f"{name}⊗C{t}")
                weights.append(w)
        for k in range(self.dd.dim):
            labels.append(f"<>{k}")
            weights.append(zero)
        return labels, weights

    def decode(self, i: int) -> Tuple[str, int, int]:
        for name, blk in self.blocks.items():
            if blk.offset <= i < blk.offset + blk.size:
                loc = i - blk.offset
                if name == "GA":
                    return name, *divmod(loc, self.nA)
                if name == "SB":
                    return name, *divmod(loc, self.nB)
                if name == "VC":
                    return name, *divmod(loc, self.m)
                return name, loc, 0
        raise IndexError(i)

    def block_of(self, i: int) -> str:
        return self.decode(i)[0]

    # encoders: summand data -> flat L-vectors
    def enc_ga(self, op: SparseOp, a: Vec) -> Vec:
        if not op or not a:
            return {}
        off = self.blocks["GA"].offset
        ac = self.A.rref_coordinates(a)
        out: Vec = {}
        for p, x in self.sp.g_coords(op).items():
            for r, y in ac.items():
                out[off + p * self.nA + r] = x * y
        return out

    def enc_sb(self, op: SparseOp, b: Vec) -> Vec:
        if not op or not b:
            return {}
        off = self.blocks["SB"].offset
        bc = self.B.rref_coordinates(b)
        out: Vec = {}
        for p, x in self.sp.s_coords(op).items():
            for r, y in bc.items():
                out[off + p * self.nB + r] = x * y
        return out

    def enc_vc(self, v: Vec, c: Vec) -> Vec:
        off = self.blocks["VC"].offset
        return {off + j * self.m + t: x * y for j, x in v.items() for t, y in c.items()}

    def enc_dd(self, d: Vec) -> Vec:
        off = self.blocks["DD"].offset
        return {off + k: x for k, x in d.items()}

    def pair_a(self, x: Vec, y: Vec) -> Vec:
        """⟨x, y⟩ for x, y ∈ a."""
        return self.dd.pair(x, y)

    def pair_c(self, c: Vec, d: Vec) -> Vec:
        n = self.bee.n
        return self.dd.pair({n + t: v for t, v in c.items()}, {n + t: v for t, v in d.items()})

    # element access
    def ga(self, p: int, r: int):
        return self.sp.g[p].op, self.A.basis[r]

    def sb(self, p: int, r: int):
        return self.sp.s[p].op, self.B.basis[r]

    def vc(self, j: int, t: int):
        return la.unit(j), la.unit(t)

    def dd_rep(self, k: int):
        """(β*, β1*, β2*) of the canonical representative of ⟨b,b⟩ basis element k."""
        i, j = self.bb.rep(self.dd.cols[k])
        bee = self.bee
        return bee.beta_star(bee.basis(i), bee.basis(j))

    # bracket table --------------------------------------------------------

    def _a_circ(self, x, y):
        a = self.q.a
        return la.add(a.product(x, y), a.product(y, x))

    def _a_brk(self, x, y):
        return self.q.a.commutator(x, y)

    def _tr(self, e: SparseOp, f: SparseOp) -> Fraction:
        return (e @ f).trace()

    def _basis_bracket(self, i: int, j: int) -> Vec:
        bi, p, r = self.decode(i)
        bj, p2, r2 = self.decode(j)
        order = ["GA", "SB", "VC", "DD"]
        if order.index(bi) > order.index(bj):
            return la.scale(self._basis_bracket(j, i), -1)
        sp, q = self.sp, self.q
        key = bi + bj
        if key == "GAGA":
            (x, al), (y, al2) = self.ga(p, r), self.ga(p2, r2)
            out = self.enc_ga(commutator(x, y), la.scale(self._a_circ(al, al2), HALF))
            la.iadd(out, self.enc_sb(sp.circ(x, y), la.scale(self._a_brk(al, al2), HALF)))
            la.iadd(out, self.enc_dd(self.pair_a(al, al2)), self._tr(x, y))
            return out
        if key == "GASB":
            (x, al), (s, b) = self.ga(p, r), self.sb(p2, r2)
            out = self.enc_ga(sp.circ(x, s), la.scale(self._a_brk(al, b), HALF))
            la.iadd(out, self.enc_sb(commutator(x, s), la.scale(self._a_circ(al, b), HALF)))
            return out
        if key == "SBSB":
            (s, b), (t, b2) = self.sb(p, r), self.sb(p2, r2)
            out = self.enc_ga(commutator(s, t), la.scale(self._a_circ(b, b2), HALF))
            la.iadd(out, self.enc_sb(sp.circ(s, t), la.scale(self._a_brk(b, b2), HALF)))
            la.iadd(out, self.enc_dd(self.pair_a(b, b2)), self._tr(s, t))
            return out
        if key in ("GAVC", "SBVC"):
            x, al = self.ga(p, r) if bi == "GA" else self.sb(p, r)
            u, c = self.vc(p2, r2)
            return self.enc_vc(x.apply(u), q.C.action(al, c))
        if key == "VCVC":
            (u, c), (v, c2) = self.vc(p, r), self.vc(p2, r2)
            dia, heart = self.bee.diamond_heart(c, c2)
            A_sym = rank1(u, v, self.idx) + rank1(v, u, self.idx)
            A_skew = (rank1(u, v, self.idx) - rank1(v, u, self.idx)) + Fraction(form_eval(u, v, self.idx), self.ell) * sp.J0
            out = self.enc_ga(A_sym, la.scale(dia, self.sym_scale))
            la.iadd(out, self.enc_sb(A_skew, la.scale(heart, self.skew_scale)))
            la.iadd(out, self.enc_dd(self.pair_c(c, c2)), form_eval(u, v, self.idx))
            return out
        if bj == "DD" and bi != "DD":
            bs, c1, c2 = self.dd_rep(p2)
            return la.scale(self._dd_action(bi, p, r, bs, c1, c2), -1)
        if key == "DDDD":
            return self.enc_dd(self.dd.bracket(la.unit(p), la.unit(p2)))
        raise AssertionError(key)

    def _dd_action(self, blk: str, p: int, r: int, bs: Vec, c1: Vec, c2: Vec) -> Vec:
        """[⟨β1, β2⟩, X] for a basis element X of the three tensor summands."""
        sp, q, ell = self.sp, self.q, self.ell
        J0 = sp.J0
        k = Fraction(-1, 4 * ell)
        if blk == "GA":
            x, al = self.ga(p, r)
            out = self.enc_ga(sp.circ(x, J0), la.scale(self._a_brk(al, bs), k))
            la.iadd(out, self.enc_sb(commutator(x, J0), la.scale(self._a_circ(al, bs), k)))
            return out
        if blk == "SB":
            s, b = self.sb(p, r)
            out = self.enc_ga(commutator(s, J0), la.scale(self._a_circ(b, bs), k))
            la.iadd(out, self.enc_sb(sp.circ(s, J0), la.scale(self._a_brk(b, bs), k)))
            la.iadd(out, self.enc_dd(self.pair_a(b, bs)), 2 * k * self._tr(s, J0))
            return out
        u, c = self.vc(p, r)
        C = q.C
        out = self.enc_vc(J0.apply(u), la.scale(C.action(bs, c), Fraction(1, 2 * ell)))
        corr = la.add(C.action(C.form(c, c2), c1), C.action(C.form(c, c1), c2))
        la.iadd(out, self.enc_vc(u, corr), -HALF)
        return out

    # structure constants --------------------------------------------------

    @property
    def lie(self) -> LieAlgebra:
        if self._lie is None:
            pairs = {}
            for i in range(self.dim):
                for j in range(i + 1, self.dim):
                    v = self._basis_bracket(i, j)
                    if v:
                        pairs[(i, j)] = v
            self._lie = LieAlgebra.from_pairs(self.dim, pairs, self.labels, list(self.weights))
            self._lie.cartan = h_elements(self)
        return self._lie

    def bracket(self, x: Vec, y: Vec) -> Vec:
        return self.lie.bracket(x, y)

    def summand_dims(self) -> Dict[str, int]:
        return {name: blk.size for name, blk in self.blocks.items()}

    def unit_ga(self, op: SparseOp) -> Vec:
        """x ⊗ 1 for x ∈ G."""
        return self.enc_ga(op, self.q.a.unit)


def assemble(q: CoordinateQuadruple, idx: IndexData, K_sub: Optional[Subspace] = None, **kw) -> GradedAlgebra:
    alg = GradedAlgebra(q, idx, K_sub, **kw)
    alg.lie
    return alg


def bracket_L(x: Vec, y: Vec, alg: GradedAlgebra) -> Vec:
    return alg.bracket(x, y)


# grading ---------------------------------------------------------------------


def h_elements(alg: GradedAlgebra) -> List[Vec]:
    return [alg.unit_ga(h) for h in (b.op for b in alg.sp.g if b.label.startswith("h"))]


def grade(alg: GradedAlgebra) -> Dict[Weight, Subspace]:
    """Weight spaces under ad(h_i ⊗ 1); checks every basis element is an eigenvector with its recorded weight."""
    L = alg.lie
    hs = h_elements(alg)
    for i, h in enumerate(hs):
        for k in range(alg.dim):
            img = L.bracket(h, {k: Fraction(1)})
            expect = alg.weights[k][i]
            if la.add(img, {k: Fraction(expect)}, -1):
                raise NotClosed(f"basis element {k} is not an h_{i}-eigenvector of weight {expect}")
    spaces: Dict[Weight, List[Vec]] = {}
    for k, w in enumerate(alg.weights):
        spaces.setdefault(w, []).append(la.unit(k))
    return {w: la.span(v, alg.dim) for w, v in sorted(spaces.items())}


@dataclass
class GradedReport:
    checks: List[CheckResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def lines(self) -> List[str]:
        return [c.line() for c in self.checks]


def check_grading_law(L: LieAlgebra, weights: List[Weight], roots) -> CheckResult:
    allowed = set(roots) | {tuple(0 for _ in weights[0])} if weights else set()
    for k, w in enumerate(weights):
        if w not in allowed:
            return CheckResult("weights_in_R", False, (k,), f"weight {w}")
    for i, j, v in L.nonzero_pairs():
        target = tuple(a + b for a, b in zip(weights[i], weights[j]))
        for k in v:
            if weights[k] != target:
                return CheckResult("grading", False, (i, j), f"component {k} has weight {weights[k]}")
    return CheckResult("grading", True)


def check_zero_space(L: LieAlgebra, weights: List[Weight], extra_zero: int = 0) -> CheckResult:
    """L_0 = Σ_{α≠0} [L_α, L_{−α}]."""
    zero = tuple(0 for _ in weights[0]) if weights else ()
    L0 = [k for k, w in enumerate(weights) if w == zero]
    target = la.span([la.unit(k) for k in L0], L.dim)
    by_w: Dict[Weight, List[int]] = {}
    for k, w in enumerate(weights):
        by_w.setdefault(w, []).append(k)
    vecs = []
    for w, ks in by_w.items():
        if w == zero:
            continue
        neg = tuple(-x for x in w)
        for i in ks:
            for j in by_w.get(neg, ()):
                v = L.sc[i][j]
                if v:
                    vecs.append(v)
    got = la.span(vecs, L.dim)
    if got == target:
        return CheckResult("zero_space", True)
    missing = [k for k in L0 if not got.contains(la.unit(k))]
    return CheckResult("zero_space", False, tuple(missing[:1]), f"rank {got.rank} vs {target.rank}")


def check_graded(alg: GradedAlgebra, jacobi: bool = True) -> GradedReport:
    """Antisymmetry, weights, [L_α, L_β] ⊆ L_{α+β}, L_0 = Σ[L_α, L_{−α}], Jacobi, perfectness."""
    return check_structure(alg.lie, alg.idx.n, jacobi)


def check_structure(L: LieAlgebra, n: Optional[int] = None, jacobi: bool = True) -> GradedReport:
    """The graded report computed from structure constants, weights and Cartan elements alone."""
    rep = GradedReport()
    rep.checks.append(L.check_antisymmetry())
    if L.weights:
        n = len(L.weights[0]) if n is None else n
        rep.checks.append(L.check_weights())
        rep.checks.append(check_grading_law(L, L.weights, root_system(n)))
        rep.checks.append(check_zero_space(L, L.weights))
    if jacobi:
        rep.checks.append(L.check_jacobi())
    rep.checks.append(CheckResult("perfect", L.is_perfect()))
    return rep


# rank monotonicity -------------------------------------------------------------


def embedding_rows(small: GradedAlgebra, big: GradedAlgebra) -> List[Vec]:
    """Images in ``big`` of the basis of ``small`` under the inclusion of ranks."""
    if small.q is not big.q or small.idx.I0 != big.idx.I0 or small.K_sub != big.K_sub:
        raise ValueError("embedding needs the same quadruple, I0 and K_sub")
    rows = []
    for k in range(small.dim):
        blk, p, r = small.decode(k)
        if blk == "GA":
            x, al = small.ga(p, r)
            rows.append(big.enc_ga(embed_op(x, small.idx, big.idx), al))
        elif blk == "SB":
            s, b = small.sb(p, r)
            rows.append(big.enc_sb(embed_op(s, small.idx, big.idx), b))
        elif blk == "VC":
            u, c = small.vc(p, r)
            rows.append(big.enc_vc(embed_vec(u, small.idx, big.idx), c))
        else:
            rows.append(big.enc_dd(la.unit(p)))
    return rows


def check_rank_embedding(small: GradedAlgebra, big: GradedAlgebra) -> CheckResult:
    rows = embedding_rows(small, big)
    if la.span(rows, big.dim).rank != small.dim:
        return CheckResult("rank_embedding", False, None, "not injective")
    bad = small.lie.is_homomorphism_to(big.lie, rows)
    return CheckResult("rank_embedding", bad is None, bad)
