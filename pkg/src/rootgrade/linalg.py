"""Exact sparse linear algebra over the rationals.

Vectors are plain ``dict[int, Fraction]`` maps with no stored zeros.  A
:class:`Subspace` keeps its basis in reduced row-echelon form, which makes
membership tests, coset representatives and coordinate extraction cheap
(they only ever look at pivot columns).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import DimensionError, NoComplement

Vec = Dict[int, Fraction]


def vec(entries: Iterable = (), ambient_dim: Optional[int] = None) -> Vec:
    """Build a sparse vector from a dense sequence or ``(index, value)`` pairs."""
    if isinstance(entries, dict):
        items = entries.items()
    else:
        entries = list(entries)
        if entries and isinstance(entries[0], tuple):
            items = entries
        else:
            items = enumerate(entries)
    out: Vec = {}
    for i, x in items:
        x = Fraction(x)
        if x:
            if ambient_dim is not None and not 0 <= i < ambient_dim:
                raise DimensionError(f"index {i} outside ambient dimension {ambient_dim}")
            out[i] = out.get(i, 0) + x
            if not out[i]:
                del out[i]
    return out


def dense(v: Vec, n: int) -> List[Fraction]:
    out = [Fraction(0)] * n
    for i, x in v.items():
        out[i] = x
    return out


def unit(i: int) -> Vec:
    return {i: Fraction(1)}


def add(u: Vec, w: Vec, s=1) -> Vec:
    """Return ``u + s*w``."""
    out = dict(u)
    if not s:
        return out
    for i, x in w.items():
        y = out.get(i, 0) + s * x
        if y:
            out[i] = y
        else:
            out.pop(i, None)
    return out


def iadd(u: Vec, w: Vec, s=1) -> Vec:
    """In-place ``u += s*w``; returns ``u``."""
    if not s:
        return u
    for i, x in w.items():
        y = u.get(i, 0) + s * x
        if y:
            u[i] = y
        else:
            u.pop(i, None)
    return u


def scale(u: Vec, s) -> Vec:
    if not s:
        return {}
    return {i: s * x for i, x in u.items()}


def combine(terms: Iterable[Tuple[object, Vec]]) -> Vec:
    out: Vec = {}
    for s, v in terms:
        iadd(out, v, s)
    return out


def dot(u: Vec, w: Vec) -> Fraction:
    if len(u) > len(w):
        u, w = w, u
    return sum((x * w[i] for i, x in u.items() if i in w), Fraction(0))


def _check_dim(v: Vec, n: int) -> None:
    for i in v:
        if not 0 <= i < n:
            raise DimensionError(f"index {i} outside ambient dimension {n}")


class _Reducer:
    """Incremental RREF builder; pivot = leftmost nonzero, first row wins."""

    def __init__(self, track: bool = False):
        self.rows: Dict[int, Vec] = {}
        self.track = track
        self.combos: Dict[int, Vec] = {}

    def reduce(self, v: Vec, combo: Optional[Vec] = None):
        v = dict(v)
        for p in [p for p in v if p in self.rows]:
            c = v.get(p)
            if c:
                iadd(v, self.rows[p], -c)
                if combo is not None:
                    iadd(combo, self.combos[p], -c)
        return v, combo

    def insert(self, v: Vec, tag: Optional[int] = None) -> bool:
        combo = {tag: Fraction(1)} if self.track else None
        v, combo = self.reduce(v, combo)
        if not v:
            return False
        p = min(v)
        inv = 1 / v[p]
        v = scale(v, inv)
        if combo is not None:
            combo = scale(combo, inv)
        for q, row in self.rows.items():
            c = row.get(p)
            if c:
                iadd(row, v, -c)
                if self.track:
                    iadd(self.combos[q], combo, -c)
        self.rows[p] = v
        if self.track:
            self.combos[p] = combo
        return True


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^ambient_dim with an RREF basis.

    ``combos`` (present when built with ``track=True``) records each RREF row
    as a combination of the generating vectors, enabling :meth:`coordinates`.
    """

    ambient_dim: int
    basis: Tuple[Vec, ...]
    pivot_cols: Tuple[int, ...]
    combos: Optional[Tuple[Vec, ...]] = field(default=None, compare=False, repr=False)
    n_generators: int = field(default=0, compare=False, repr=False)

    @property
    def rank(self) -> int:
        return len(self.basis)

    dim = rank

    def _pivot_index(self) -> Dict[int, int]:
        d = self.__dict__.get("_pidx")
        if d is None:
            d = {p: k for k, p in enumerate(self.pivot_cols)}
            object.__setattr__(self, "_pidx", d)
        return d

    def reduce(self, v: Vec) -> Vec:
        return coset_reduce(v, self)

    def contains(self, v: Vec) -> bool:
        return not coset_reduce(v, self)

    __contains__ = contains

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(b) for b in other.basis)

    def rref_coordinates(self, v: Vec, check: bool = True) -> Vec:
        """Coefficients of ``v`` against the RREF rows (keyed by row index)."""
        pidx = self._pivot_index()
        out = {pidx[p]: x for p, x in v.items() if p in pidx}
        if check:
            resid = dict(v)
            for k, x in out.items():
                iadd(resid, self.basis[k], -x)
            if resid:
                raise ValueError("vector is not in the subspace")
        return out

    def coordinates(self, v: Vec, check: bool = True) -> Vec:
        """Coefficients of ``v`` against the generating vectors used to build the span."""
        if self.combos is None:
            raise ValueError("subspace was built without coordinate tracking")
        out: Vec = {}
        for k, x in self.rref_coordinates(v, check).items():
            iadd(out, self.combos[k], x)
        return out

    def complement_cols(self) -> List[int]:
        """Non-pivot columns; they index a basis of the quotient space."""
        piv = set(self.pivot_cols)
        return [i for i in range(self.ambient_dim) if i not in piv]

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.ambient_dim == other.ambient_dim
            and self.pivot_cols == other.pivot_cols
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.pivot_cols))


def span(vectors: Sequence[Vec], ambient_dim: int, track: bool = False) -> Subspace:
    """RREF basis of the span of ``vectors``.

    With ``track=True`` the result can express members in terms of the input
    vectors (the inputs must then be linearly independent for the coordinates
    to be unique; dependent inputs receive coefficient 0).
    """
    red = _Reducer(track=track)
    vectors = list(vectors)
    for tag, v in enumerate(vectors):
        _check_dim(v, ambient_dim)
        red.insert(v, tag)
    pivots = tuple(sorted(red.rows))
    basis = tuple(red.rows[p] for p in pivots)
    combos = tuple(red.combos[p] for p in pivots) if track else None
    return Subspace(ambient_dim, basis, pivots, combos, len(vectors))


def zero_space(ambient_dim: int) -> Subspace:
    return Subspace(ambient_dim, (), (), (), 0)


def full_space(ambient_dim: int) -> Subspace:
    return span([unit(i) for i in range(ambient_dim)], ambient_dim)


def coset_reduce(v: Vec, K: Subspace) -> Vec:
    """Canonical representative of ``v + K``: eliminate every pivot coordinate."""
    v = dict(v)
    pidx = K._pivot_index()
    for p in [p for p in v if p in pidx]:
        c = v.get(p)
        if c:
            iadd(v, K.basis[pidx[p]], -c)
    return v


def sum_space(U: Subspace, W: Subspace) -> Subspace:
    return span(list(U.basis) + list(W.basis), U.ambient_dim)


def intersection(U: Subspace, W: Subspace) -> Subspace:
    """U ∩ W via the kernel of (x, y) ↦ x - y on U × W."""
    n = U.ambient_dim
    rows = list(U.basis) + [scale(w, -1) for w in W.basis]
    ker = kernel(rows, n)
    out = []
    for k in ker.basis:
        out.append(combine((c, U.basis[i]) for i, c in k.items() if i < U.rank))
    return span(out, n)


def kernel(map_rows: Sequence[Vec], codomain_dim: Optional[int] = None) -> Subspace:
    """Null space of the map whose i-th row is the image of the i-th domain basis vector.

    Returns a subspace of Q^len(map_rows) of vectors ``x`` with
    ``sum_i x_i * map_rows[i] == 0``.
    """
    d = len(map_rows)
    if codomain_dim is None:
        codomain_dim = 1 + max((max(r) for r in map_rows if r), default=-1)
    for r in map_rows:
        _check_dim(r, codomain_dim)
    m = codomain_dim
    red = _Reducer()
    for i, r in enumerate(map_rows):
        v = dict(r)
        v[m + i] = Fraction(1)
        red.insert(v)
    kvecs = []
    for p, row in red.rows.items():
        if p >= m:
            kvecs.append({k - m: x for k, x in row.items()})
    return span(kvecs, d)


def image(map_rows: Sequence[Vec], codomain_dim: int) -> Subspace:
    return span(map_rows, codomain_dim)


def solve(equations: Sequence[Tuple[Vec, Fraction]], n_unknowns: int) -> Optional[Vec]:
    """A particular solution of ``eq·x = rhs`` for every equation, or None.

    Free variables are set to zero.
    """
    red = _Reducer()
    for lhs, rhs in equations:
        v = dict(lhs)
        _check_dim(v, n_unknowns)
        rhs = Fraction(rhs)
        if rhs:
            v[n_unknowns] = rhs
        red.insert(v)
    if n_unknowns in red.rows:
        return None
    return {p: row.get(n_unknowns, Fraction(0)) for p, row in red.rows.items() if row.get(n_unknowns)}


Operator = Callable[[Vec], Vec]


def invariant_complement(W: Subspace, action: Sequence[Operator], U: Subspace) -> Subspace:
    """An action-stable complement P of U inside W (W = U ⊕ P).

    Solves for a projection W → U that commutes with every operator and is the
    identity on U; its kernel is the complement.  Raises :class:`NoComplement`
    when no such projection exists.
    """
    if not W.contains_subspace(U):
        raise ValueError("U must be contained in W")
    w, u = W.rank, U.rank
    if u == 0:
        return W
    if u == w:
        return zero_space(W.ambient_dim)
    Wt = span(list(W.basis), W.ambient_dim, track=True)
    Ut = span(list(U.basis), U.ambient_dim, track=True)
    Wc = lambda v: Wt.coordinates(v)  # noqa: E731
    u_in_w = [Wc(b) for b in U.basis]
    mats, umats = [], []
    for op in action:
        mats.append([Wc(op(b)) for b in W.basis])
        try:
            umats.append([Ut.coordinates(op(b)) for b in U.basis])
        except ValueError:
            raise ValueError("action does not preserve U") from None

    # unknown X[j][r] at index j*u + r: P(W_j) = sum_r X[j][r] U_r
    def var(j, r):
        return j * u + r

    eqs: List[Tuple[Vec, Fraction]] = []
    for r_src, uw in enumerate(u_in_w):
        for r in range(u):
            eqs.append(({var(j, r): c for j, c in uw.items()}, Fraction(int(r == r_src))))
    for M, Mu in zip(mats, umats):
        for j in range(w):
            for r in range(u):
                lhs: Vec = {}
                for i, c in M[j].items():
                    iadd(lhs, {var(i, r): c})
                for s in range(u):
                    c = Mu[s].get(r)
                    if c:
                        iadd(lhs, {var(j, s): -c})
                eqs.append((lhs, Fraction(0)))
    sol = solve(eqs, w * u)
    if sol is None:
        raise NoComplement("no action-commuting projection onto U exists")
    proj_rows = [{r: sol.get(var(j, r), Fraction(0)) for r in range(u) if sol.get(var(j, r))} for j in range(w)]
    ker = kernel(proj_rows, u)
    P = [combine((c, W.basis[j]) for j, c in k.items()) for k in ker.basis]
    return span(P, W.ambient_dim)


def matrix_rank(rows: Sequence[Vec], ncols: int) -> int:
    return span(rows, ncols).rank
