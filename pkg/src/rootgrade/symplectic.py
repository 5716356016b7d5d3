"""The symplectic layer at finite rank: V, its form, G = sp(V), S, projectors and weights.

Indices of V run over J = I ⊎ Ī with ``j`` (0 ≤ j < n) for v_j and ``n + j``
for v_j̄.  Operators are :class:`SparseOp` matrices in the basis v_0..v_{2n-1};
flattened operator coordinates use ``row * 2n + col``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from . import linalg as la
from .errors import NotClosed, NotInGS, RankTooSmall
from .linalg import Subspace, Vec, invariant_complement  # noqa: F401  (re-exported)

Weight = Tuple[int, ...]


@dataclass(frozen=True)
class IndexData:
    n: int
    ell: int
    I0: Tuple[int, ...] = ()
    chain: Tuple[Tuple[int, ...], ...] = ()

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("rank must be positive")
        I0 = tuple(self.I0) if self.I0 else tuple(range(self.ell))
        if len(set(I0)) != self.ell or not all(0 <= i < self.n for i in I0):
            raise ValueError("I0 must be ell distinct indices of I")
        object.__setattr__(self, "I0", tuple(sorted(I0)))
        for lam in self.chain:
            if not set(I0) <= set(lam) <= set(range(self.n)):
                raise ValueError("chain members must satisfy I0 ⊆ I_λ ⊆ I")

    @property
    def size(self) -> int:
        return 2 * self.n

    def bar(self, j: int) -> int:
        return j + self.n if j < self.n else j - self.n

    def eps(self, j: int) -> Weight:
        """Weight of v_j: ε_j for j ∈ I, −ε_j for j ∈ Ī."""
        w = [0] * self.n
        if j < self.n:
            w[j] = 1
        else:
            w[j - self.n] = -1
        return tuple(w)

    def op_weight(self, r: int, c: int) -> Weight:
        return tuple(x - y for x, y in zip(self.eps(r), self.eps(c)))


class SparseOp:
    """Endomorphism of V stored as ``{(row, col): coeff}``."""

    __slots__ = ("size", "entries")

    def __init__(self, size: int, entries: Optional[Dict[Tuple[int, int], Fraction]] = None):
        self.size = size
        self.entries = {k: Fraction(v) for k, v in (entries or {}).items() if v}

    @classmethod
    def unit(cls, size, r, c, coeff=1) -> "SparseOp":
        return cls(size, {(r, c): Fraction(coeff)})

    def _acc(self, other, s) -> "SparseOp":
        out = dict(self.entries)
        for k, v in other.entries.items():
            y = out.get(k, 0) + s * v
            if y:
                out[k] = y
            else:
                out.pop(k, None)
        return SparseOp(self.size, out)

    def __add__(self, other):
        return self._acc(other, 1)

    def __sub__(self, other):
        return self._acc(other, -1)

    def __neg__(self):
        return SparseOp(self.size, {k: -v for k, v in self.entries.items()})

    def __rmul__(self, s):
        s = Fraction(s)
        return SparseOp(self.size, {k: s * v for k, v in self.entries.items()})

    def __matmul__(self, other: "SparseOp") -> "SparseOp":
        by_row: Dict[int, List[Tuple[int, Fraction]]] = {}
        for (r, c), v in other.entries.items():
            by_row.setdefault(r, []).append((c, v))
        out: Dict[Tuple[int, int], Fraction] = {}
        for (r, m), v in self.entries.items():
            for c, w in by_row.get(m, ()):
                k = (r, c)
                y = out.get(k, 0) + v * w
                if y:
                    out[k] = y
                else:
                    out.pop(k, None)
        return SparseOp(self.size, out)

    def __eq__(self, other):
        return isinstance(other, SparseOp) and self.size == other.size and self.entries == other.entries

    def __hash__(self):
        return hash((self.size, frozenset(self.entries.items())))

    def __bool__(self):
        return bool(self.entries)

    def __repr__(self):
        return f"SparseOp({self.size}, {self.entries})"

    def trace(self) -> Fraction:
        return sum((v for (r, c), v in self.entries.items() if r == c), Fraction(0))

    def apply(self, v: Vec) -> Vec:
        out: Vec = {}
        for (r, c), x in self.entries.items():
            y = v.get(c)
            if y:
                la.iadd(out, {r: x * y})
        return out

    def flat(self) -> Vec:
        return {r * self.size + c: v for (r, c), v in self.entries.items()}

    @classmethod
    def from_flat(cls, size: int, v: Vec) -> "SparseOp":
        return cls(size, {divmod(k, size): x for k, x in v.items()})


def commutator(e: SparseOp, f: SparseOp) -> SparseOp:
    return (e @ f) - (f @ e)


def form_eval(u: Vec, w: Vec, idx: IndexData) -> Fraction:
    """(v_j, v_k̄) = −(v_k̄, v_j) = 2δ_jk, all other pairings zero."""
    n = idx.n
    out = Fraction(0)
    for j, x in u.items():
        k = j + n if j < n else j - n
        y = w.get(k)
        if y:
            out += (2 if j < n else -2) * x * y
    return out


def form_adjoint_sign(op: SparseOp, idx: IndexData) -> Optional[int]:
    """+1 if op is form-symmetric, −1 if form-skew, 0 if zero, None otherwise."""
    if not op:
        return 0
    signs = set()
    N = idx.size
    for a in range(N):
        pa = op.apply(la.unit(a))
        for b in range(N):
            lhs = form_eval(pa, la.unit(b), idx)
            rhs = form_eval(la.unit(a), op.apply(la.unit(b)), idx)
            if lhs == rhs == 0:
                continue
            if lhs == rhs:
                signs.add(1)
            elif lhs == -rhs:
                signs.add(-1)
            else:
                return None
    if len(signs) == 1:
        return signs.pop()
    return None


@dataclass(frozen=True)
class BasisOp:
    label: str
    op: SparseOp
    weight: Weight


def _E(idx, r, c, s=1):
    return SparseOp.unit(idx.size, r, c, s)


def build_g(idx: IndexData, support: Optional[Iterable[int]] = None) -> List[BasisOp]:
    """Basis of sp(V), optionally restricted to indices in ``support`` ⊆ I.

    The diagonal long-root vectors are taken as e_{i,ī} and e_{ī,i} (the i = j
    members of the symmetric families divided by 2).
    """
    n = idx.n
    I = sorted(support) if support is not None else list(range(n))
    b = idx.bar
    out: List[BasisOp] = []
    for i in I:
        for j in I:
            if i != j:
                op = _E(idx, i, j) - _E(idx, b(j), b(i))
                out.append(BasisOp(f"e{i},{j}-e{j}',{i}'", op, idx.op_weight(i, j)))
    for i in I:
        for j in I:
            if i < j:
                op = _E(idx, i, b(j)) + _E(idx, j, b(i))
                out.append(BasisOp(f"e{i},{j}'+e{j},{i}'", op, idx.op_weight(i, b(j))))
            elif i == j:
                out.append(BasisOp(f"e{i},{i}'", _E(idx, i, b(i)), idx.op_weight(i, b(i))))
    for i in I:
        for j in I:
            if i < j:
                op = _E(idx, b(i), j) + _E(idx, b(j), i)
                out.append(BasisOp(f"e{i}',{j}+e{j}',{i}", op, idx.op_weight(b(i), j)))
            elif i == j:
                out.append(BasisOp(f"e{i}',{i}", _E(idx, b(i), i), idx.op_weight(b(i), i)))
    for i in I:
        out.append(BasisOp(f"h{i}", _E(idx, i, i) - _E(idx, b(i), b(i)), (0,) * n))
    return out


def build_s(idx: IndexData) -> List[BasisOp]:
    """Basis of trace-zero form-symmetric operators."""
    n = idx.n
    if n < 2:
        raise RankTooSmall("S needs rank at least 2")
    b = idx.bar
    out: List[BasisOp] = []
    for i in range(n):
        for j in range(n):
            if i != j:
                op = _E(idx, i, j) + _E(idx, b(j), b(i))
                out.append(BasisOp(f"e{i},{j}+e{j}',{i}'", op, idx.op_weight(i, j)))
    for i in range(n):
        for j in range(i + 1, n):
            op = _E(idx, i, b(j)) - _E(idx, j, b(i))
            out.append(BasisOp(f"e{i},{j}'-e{j},{i}'", op, idx.op_weight(i, b(j))))
    for i in range(n):
        for j in range(i + 1, n):
            op = _E(idx, b(i), j) - _E(idx, b(j), i)
            out.append(BasisOp(f"e{i}',{j}-e{j}',{i}", op, idx.op_weight(b(i), j)))
    mean = Fraction(1, n)
    for r in range(n - 1):
        ent = {}
        for i in range(n):
            ent[(i, i)] = -mean
            ent[(b(i), b(i))] = -mean
        ent[(r, r)] += 1
        ent[(b(r), b(r))] += 1
        out.append(BasisOp(f"s0_{r}", SparseOp(idx.size, ent), (0,) * n))
    return out


def build_v(idx: IndexData) -> List[Tuple[str, Vec, Weight]]:
    return [(f"v{j}" if j < idx.n else f"v{j - idx.n}'", la.unit(j), idx.eps(j)) for j in range(idx.size)]


def projector_J(idx: IndexData, lam: Iterable[int]) -> SparseOp:
    """Identity on span{v_r, v_r̄ : r ∈ lam}, zero elsewhere."""
    ent = {}
    for r in lam:
        if not 0 <= r < idx.n:
            raise ValueError("lam must be a subset of I")
        ent[(r, r)] = Fraction(1)
        ent[(idx.bar(r), idx.bar(r))] = Fraction(1)
    return SparseOp(idx.size, ent)


def h_ops(idx: IndexData) -> List[SparseOp]:
    return [_E(idx, i, i) - _E(idx, idx.bar(i), idx.bar(i)) for i in range(idx.n)]


def root_system(n: int) -> List[Weight]:
    """Nonzero roots of BC_n: ±ε_i, ±2ε_i, ±ε_i ± ε_j."""
    roots = set()
    for i in range(n):
        for s in (1, -1, 2, -2):
            w = [0] * n
            w[i] = s
            roots.add(tuple(w))
        for j in range(i + 1, n):
            for s in (1, -1):
                for t in (1, -1):
                    w = [0] * n
                    w[i], w[j] = s, t
                    roots.add(tuple(w))
    return sorted(roots)


class Symplectic:
    """Bases and coordinate maps for G, S, V at a fixed :class:`IndexData`."""

    def __init__(self, idx: IndexData):
        self.idx = idx
        self.g = build_g(idx)
        self.s = build_s(idx) if idx.n >= 2 else []
        self.v = build_v(idx)
        self.J0 = projector_J(idx, idx.I0)
        N = idx.size
        self._gspace = la.span([b.op.flat() for b in self.g], N * N, track=True)
        self._sspace = la.span([b.op.flat() for b in self.s], N * N, track=True)

    def in_g(self, op: SparseOp) -> bool:
        return self._gspace.contains(op.flat())

    def in_s(self, op: SparseOp) -> bool:
        return self._sspace.contains(op.flat())

    def g_coords(self, op: SparseOp) -> Vec:
        try:
            return self._gspace.coordinates(op.flat())
        except ValueError:
            raise NotInGS("operator is not in G") from None

    def s_coords(self, op: SparseOp) -> Vec:
        try:
            return self._sspace.coordinates(op.flat())
        except ValueError:
            raise NotInGS("operator is not in S") from None

    def g_op(self, coords: Vec) -> SparseOp:
        return _lin(self.idx.size, ((x, self.g[k].op) for k, x in coords.items()))

    def s_op(self, coords: Vec) -> SparseOp:
        return _lin(self.idx.size, ((x, self.s[k].op) for k, x in coords.items()))

    def circ(self, e: SparseOp, f: SparseOp) -> SparseOp:
        """e ∘ f without the membership check (also used with 𝔍_0 as an argument)."""
        ef = e @ f
        return (ef + (f @ e)) - Fraction(ef.trace(), self.idx.ell) * self.J0

    def circ_trace(self, e: SparseOp, f: SparseOp) -> SparseOp:
        for x in (e, f):
            if not (self.in_g(x) or self.in_s(x)):
                raise NotInGS("∘ is only defined on G ∪ S")
        return self.circ(e, f)

    def v_ops(self, u: Vec, w: Vec) -> Tuple[SparseOp, SparseOp]:
        return v_ops(u, w, self.idx)


def _lin(size, terms) -> SparseOp:
    out = SparseOp(size)
    for x, op in terms:
        out = out + x * op
    return out


def circ_trace(e: SparseOp, f: SparseOp, idx: IndexData) -> SparseOp:
    """ef + fe − (tr(ef)/ℓ)𝔍_0 for e, f ∈ G ∪ S."""
    return Symplectic(idx).circ_trace(e, f)


def rank1(u: Vec, w: Vec, idx: IndexData) -> SparseOp:
    """The operator x ↦ (x, u) w."""
    ent: Dict[Tuple[int, int], Fraction] = {}
    for c in range(idx.size):
        s = form_eval(la.unit(c), u, idx)
        if s:
            for r, y in w.items():
                ent[(r, c)] = ent.get((r, c), 0) + s * y
    return SparseOp(idx.size, ent)


def v_ops(u: Vec, w: Vec, idx: IndexData) -> Tuple[SparseOp, SparseOp]:
    """(sym, skew) with sym(x) = (x,u)w + (x,w)u ∈ G and
    skew(x) = (x,u)w − (x,w)u + ((u,w)/ℓ)𝔍_0(x) ∈ S."""
    a, b = rank1(u, w, idx), rank1(w, u, idx)
    corr = Fraction(form_eval(u, w, idx), idx.ell) * projector_J(idx, idx.I0)
    return a + b, (a - b) + corr


# weights ---------------------------------------------------------------------


@dataclass(frozen=True)
class WeightVector:
    weight: Weight
    space: Subspace


def _simultaneous_eigen(W: Subspace, actions: Sequence[Callable[[Vec], Vec]], bound: int) -> Dict[Weight, Subspace]:
    """Split W into joint integer eigenspaces of commuting diagonalizable actions."""
    Wt = la.span(list(W.basis), W.ambient_dim, track=True)
    mats = []
    for act in actions:
        rows = []
        for v in W.basis:
            img = act(v)
            try:
                rows.append(Wt.coordinates(img))
            except ValueError:
                raise NotClosed("an h-action leaves the span") from None
        mats.append(rows)
    d = W.rank
    pieces: Dict[Weight, Subspace] = {(): la.full_space(d)}
    for rows in mats:
        new: Dict[Weight, Subspace] = {}
        for lam in range(-bound, bound + 1):
            shifted = [la.add(r, {k: Fraction(1)}, -lam) for k, r in enumerate(rows)]
            E = la.kernel(shifted, d)
            if not E.rank:
                continue
            for w, P in pieces.items():
                X = la.intersection(P, E)
                if X.rank:
                    new[w + (lam,)] = X
        pieces = new
    if sum(P.rank for P in pieces.values()) != d:
        raise NotClosed("space is not a sum of integer weight spaces")
    out = {}
    for w, P in pieces.items():
        vecs = [la.combine((x, W.basis[k]) for k, x in v.items()) for v in P.basis]
        out[w] = la.span(vecs, W.ambient_dim)
    return out


def weight_decompose(space: Sequence, idx: IndexData, bound: int = 4) -> List[WeightVector]:
    """Weight spaces of a list of operators (adjoint h-action) or V-vectors (natural action)."""
    items = list(space)
    hs = h_ops(idx)
    if items and isinstance(items[0], SparseOp):
        N = idx.size
        W = la.span([x.flat() for x in items], N * N)
        acts = [lambda v, h=h: commutator(h, SparseOp.from_flat(N, v)).flat() for h in hs]
    else:
        W = la.span([dict(x) for x in items], idx.size)
        acts = [lambda v, h=h: h.apply(v) for h in hs]
    dec = _simultaneous_eigen(W, acts, bound)
    return [WeightVector(w, dec[w]) for w in sorted(dec)]


def generated_submodule(seed: Subspace, action: Sequence[Callable[[Vec], Vec]], ambient: Subspace) -> Subspace:
    """Smallest action-stable subspace of ``ambient`` containing ``seed``."""
    cur = seed
    frontier = list(seed.basis)
    while frontier:
        vecs = list(cur.basis)
        for v in frontier:
            for act in action:
                vecs.append(act(v))
        nxt = la.span(vecs, seed.ambient_dim)
        if not ambient.contains_subspace(nxt):
            raise NotClosed("action leaves the ambient space")
        if nxt.rank == cur.rank:
            break
        frontier = [b for b in nxt.basis if not cur.contains(b)]
        cur = nxt
    return cur


def g_lambda(idx: IndexData, lam: Iterable[int]) -> List[BasisOp]:
    """Basis of G ∩ span{e_{r,s} : r, s ∈ lam ∪ lam̄}."""
    return build_g(idx, lam)


def embed_op(op: SparseOp, small: IndexData, big: IndexData) -> SparseOp:
    """Extend an operator of rank-n V to rank-m V (n ≤ m) by zero."""
    def m(j):
        return j if j < small.n else j - small.n + big.n
    return SparseOp(big.size, {(m(r), m(c)): v for (r, c), v in op.entries.items()})


def embed_vec(v: Vec, small: IndexData, big: IndexData) -> Vec:
    return {(j if j < small.n else j - small.n + big.n): x for j, x in v.items()}
