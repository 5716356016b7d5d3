"""Central extensions of L(q, K): cocycles, grading transfer, and the universal extension.

An extension L̃ = L ⊕ E is stored as a :class:`LieAlgebra` on the basis of L
followed by a basis of E; its bracket is [x, y] + τ(x, y).
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from . import linalg as la
from .errors import CertificateFailure, DNotTrivial, InvalidCocycle, NotPerfect, TauGNonzero
from .graded import GradedAlgebra, check_grading_law, check_zero_space, h_elements
from .homology import BB, check_uniform
from .linalg import Subspace, Vec
from .structure import CheckResult, LieAlgebra, Weight
from .symplectic import IndexData, root_system


@dataclass
class Cocycle:
    """Bilinear τ: L × L → E given on basis pairs i < j; τ(e_j, e_i) = −τ(e_i, e_j)."""

    E_dim: int
    values: Dict[Tuple[int, int], Vec] = field(default_factory=dict)
    diagonal: Dict[int, Vec] = field(default_factory=dict)

    def basis_value(self, i: int, j: int) -> Vec:
        if i == j:
            return self.diagonal.get(i, {})
        if i < j:
            return self.values.get((i, j), {})
        return la.scale(self.values.get((j, i), {}), -1)

    def __call__(self, x: Vec, y: Vec) -> Vec:
        out: Vec = {}
        for i, a in x.items():
            for j, b in y.items():
                v = self.basis_value(i, j)
                if v:
                    la.iadd(out, v, a * b)
        return out


def validate_cocycle(tau: Cocycle, L: LieAlgebra) -> List[str]:
    out = []
    for i, v in sorted(tau.diagonal.items()):
        if v:
            out.append(f"alternating: ({i},{i})")
    for (i, j), v in tau.values.items():
        if not (0 <= i < j < L.dim) or any(not 0 <= k < tau.E_dim for k in v):
            out.append(f"shape: ({i},{j})")
    if out:
        return out
    n = L.dim
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                s = tau(L.sc[i][j], {k: Fraction(1)})
                la.iadd(s, tau(L.sc[j][k], {i: Fraction(1)}))
                la.iadd(s, tau(L.sc[k][i], {j: Fraction(1)}))
                if s:
                    out.append(f"cocycle_law: ({i},{j},{k})")
                    return out
    return out


@dataclass
class CentralExtension:
    base: LieAlgebra
    tau: Cocycle
    total: LieAlgebra
    graded: Optional[GradedAlgebra] = None
    # {b,b}-coordinates -> vectors of the total space, for factor_through
    bb_model: Optional[Callable[[Vec], Vec]] = None

    @property
    def E_dim(self) -> int:
        return self.tau.E_dim

    def e_vector(self, k: int) -> Vec:
        return {self.base.dim + k: Fraction(1)}

    def check_central(self) -> CheckResult:
        n = self.base.dim
        for k in range(self.E_dim):
            for j in range(self.total.dim):
                if self.total.sc[n + k][j]:
                    return CheckResult("kernel_central", False, (n + k, j))
        return CheckResult("kernel_central", True)

    def check_projection(self) -> CheckResult:
        rows = [la.unit(i) for i in range(self.base.dim)] + [{} for _ in range(self.E_dim)]
        bad = self.total.is_homomorphism_to(self.base, rows)
        return CheckResult("projection_hom", bad is None, bad)


def central_extend(alg, tau: Cocycle, check: bool = True, bb_model=None) -> CentralExtension:
    """L ⊕ E with [x + e, y + f] = [x, y] + τ(x, y)."""
    graded = alg if isinstance(alg, GradedAlgebra) else None
    L = alg.lie if graded is not None else alg
    if check:
        bad = validate_cocycle(tau, L)
        if bad:
            raise InvalidCocycle(bad[0])
    n, e = L.dim, tau.E_dim
    pairs = {}
    for i in range(n):
        for j in range(i + 1, n):
            v = dict(L.sc[i][j])
            for k, x in tau.basis_value(i, j).items():
                v[n + k] = x
            if v:
                pairs[(i, j)] = v
    weights = None
    if L.weights is not None:
        zero = tuple(0 for _ in L.weights[0]) if L.weights else ()
        weights = list(L.weights) + [zero] * e
    labels = list(L.labels) + [f"E{k}" for k in range(e)] if L.labels else []
    total = LieAlgebra.from_pairs(n + e, pairs, labels, weights)
    return CentralExtension(L, tau, total, graded, bb_model)


# cocycle generators -------------------------------------------------------------


def coboundary(L: LieAlgebra, mu: Sequence[Vec], E_dim: int) -> Cocycle:
    """τ(x, y) = μ([x, y]) with ``mu[k]`` the image of basis vector k."""
    vals = {}
    for i, j, v in L.nonzero_pairs():
        out: Vec = {}
        for k, x in v.items():
            la.iadd(out, mu[k], x)
        if out:
            vals[(i, j)] = out
    return Cocycle(E_dim, vals)


def random_coboundary(L: LieAlgebra, E_dim: int, rng: random.Random, density: float = 0.3) -> Cocycle:
    mu = []
    for _ in range(L.dim):
        mu.append(la.vec({k: Fraction(rng.randint(-3, 3)) for k in range(E_dim) if rng.random() < density}))
    return coboundary(L, mu, E_dim)


def dd_coboundary(alg: GradedAlgebra, mu: Sequence[Vec], E_dim: int) -> Cocycle:
    """A coboundary read off the ⟨b,b⟩ component only; vanishes on G ⊗ 1."""
    off = alg.blocks["DD"].offset
    full = [{} for _ in range(off)] + list(mu)
    return coboundary(alg.lie, full, E_dim)


@dataclass
class QuotientData:
    """L(q, K0) → L(q, K_sub) realized as a central extension of the smaller algebra."""

    cover: GradedAlgebra
    base: GradedAlgebra
    E_basis: Subspace  # K_sub / K0 inside cover ⟨b,b⟩ coordinates, tracked
    E_vectors: List[Vec]


def _quotient_data(cover: GradedAlgebra, base: GradedAlgebra) -> QuotientData:
    gens = [cover.dd.project(v) for v in base.K_sub.basis]
    red = la.span(gens, cover.dd.dim)
    return QuotientData(cover, base, la.span(list(red.basis), cover.dd.dim, track=True), list(red.basis))


def _cover_to_split(qd: QuotientData, rho: Optional[Sequence[Vec]] = None) -> Callable[[Vec], Tuple[Vec, Vec]]:
    """y ∈ L(q,K0) ↦ (π(y) ∈ L(q,K_sub), ε(y) ∈ K_sub/K0) with y = σ(π(y)) + ε(y)."""
    cover, base = qd.cover, qd.base
    c_off, b_off = cover.blocks["DD"].offset, base.blocks["DD"].offset

    def split(y: Vec) -> Tuple[Vec, Vec]:
        tensor = {k: x for k, x in y.items() if k < c_off}
        ddc = {k - c_off: x for k, x in y.items() if k >= c_off}
        full = cover.dd.lift(ddc)
        proj = base.dd.project(full)
        back = cover.dd.project(base.dd.lift(proj))
        eps = la.add(ddc, back, -1)
        ecoords = qd.E_basis.rref_coordinates(eps) if eps else {}
        if rho is not None:
            e: Vec = {}
            for k, x in ecoords.items():
                la.iadd(e, rho[k], x)
            ecoords = e
        out = dict(tensor)
        la.iadd(out, {b_off + k: x for k, x in proj.items()})
        return out, ecoords

    return split


def quotient_cocycle(cover: GradedAlgebra, base: GradedAlgebra, rho: Optional[Sequence[Vec]] = None, E_dim: Optional[int] = None):
    """τ on L(q,K_sub) with L(q,K_sub) ⊕_τ E ≅ L(q,K0) (or its pushout along ρ).

    Returns (cocycle, split map, quotient data).
    """
    qd = _quotient_data(cover, base)
    split = _cover_to_split(qd, rho)
    e_dim = qd.E_basis.rank if rho is None else E_dim
    c_off, b_off = cover.blocks["DD"].offset, base.blocks["DD"].offset

    def section(x: Vec) -> Vec:
        out = {k: v for k, v in x.items() if k < b_off}
        dd = {k - b_off: v for k, v in x.items() if k >= b_off}
        la.iadd(out, {c_off + k: v for k, v in cover.dd.project(base.dd.lift(dd)).items()})
        return out

    L, A = base.lie, cover.lie
    vals = {}
    for i in range(L.dim):
        si = section(la.unit(i))
        for j in range(i + 1, L.dim):
            sj = section(la.unit(j))
            _, e = split(A.bracket(si, sj))
            if e:
                vals[(i, j)] = e
    return Cocycle(e_dim, vals), split, qd


def extension_from_quotient(cover: GradedAlgebra, base: GradedAlgebra) -> CentralExtension:
    """L(q,K_sub) ⊕_τ (K_sub/K0), isomorphic to ``cover`` = L(q,K0)."""
    tau, split, qd = quotient_cocycle(cover, base)
    n = base.dim
    c_off = cover.blocks["DD"].offset

    def bb_model(v: Vec) -> Vec:
        y = {c_off + k: x for k, x in cover.dd.project(v).items()}
        x, e = split(y)
        la.iadd(x, {n + k: c for k, c in e.items()})
        return x

    ext = central_extend(base, tau, check=False, bb_model=bb_model)
    ext.cover_split = split  # type: ignore[attr-defined]
    return ext


def graded_cocycle(cover: GradedAlgebra, base: GradedAlgebra, rho: Sequence[Vec], E_dim: int) -> Cocycle:
    """ρ∘τ for the quotient cocycle τ and a linear ρ: K_sub/K0 → E."""
    return quotient_cocycle(cover, base, rho, E_dim)[0]


def trivial_extension(base: GradedAlgebra, E_dim: int) -> CentralExtension:
    """τ = 0; ⟨b,b⟩ classes map into the L-summand."""
    off = base.blocks["DD"].offset

    def bb_model(v: Vec) -> Vec:
        return {off + k: x for k, x in base.dd.project(v).items()}

    return central_extend(base, Cocycle(E_dim), check=False, bb_model=bb_model)


# grading transfer --------------------------------------------------------------


def g_vectors(alg: GradedAlgebra) -> List[Vec]:
    """G ⊗ 1 as vectors of L."""
    return [alg.unit_ga(b.op) for b in alg.sp.g]


@dataclass
class GradingReport:
    weights: Dict[Weight, Subspace]
    checks: List[CheckResult]

    @property
    def ok(self):
        return all(c.ok for c in self.checks)


def grade_extension(ext: CentralExtension) -> GradingReport:
    """Weight decomposition of L̃ with L̃_0 = L_0 ⊕ E; requires perfectness and τ(G, L) = 0."""
    if ext.graded is None:
        raise ValueError("extension of a graded algebra required")
    T = ext.total
    if not T.is_perfect():
        raise NotPerfect("[L̃, L̃] ≠ L̃")
    alg = ext.graded
    for g in g_vectors(alg):
        for j in range(alg.dim):
            if ext.tau(g, {j: Fraction(1)}):
                raise TauGNonzero(f"τ(G, e_{j}) ≠ 0")
    checks = []
    hs = h_elements(alg)
    ok = True
    for i, h in enumerate(hs):
        for k in range(T.dim):
            if la.add(T.bracket(h, {k: Fraction(1)}), {k: Fraction(T.weights[k][i])}, -1):
                ok = False
                checks.append(CheckResult("eigen", False, (i, k)))
                break
    if ok:
        checks.append(CheckResult("eigen", True))
    checks.append(check_grading_law(T, T.weights, root_system(alg.idx.n)))
    checks.append(check_zero_space(T, T.weights))
    spaces: Dict[Weight, List[Vec]] = {}
    for k, w in enumerate(T.weights):
        spaces.setdefault(w, []).append(la.unit(k))
    weights = {w: la.span(v, T.dim) for w, v in sorted(spaces.items())}
    zero = tuple(0 for _ in T.weights[0])
    base_zero = sum(1 for w in alg.weights if w == zero)
    dims_ok = weights[zero].rank == base_zero + ext.E_dim and all(
        weights[w].rank == sum(1 for x in alg.weights if x == w) for w in weights if w != zero
    )
    checks.append(CheckResult("dimension_bookkeeping", dims_ok))
    return GradingReport(weights, checks)


def check_trivial_submodule(ext: CentralExtension, D: Subspace, G: Optional[List[Vec]] = None) -> bool:
    """τ(G, D) = 0, after checking [G, D] = 0 in the base."""
    if G is None:
        if ext.graded is None:
            raise ValueError("G must be given for ungraded bases")
        G = g_vectors(ext.graded)
    for g in G:
        for d in D.basis:
            if ext.base.bracket(g, d):
                raise DNotTrivial("[G, D] ≠ 0")
    return all(not ext.tau(g, d) for g in G for d in D.basis)


def dd_subspace(alg: GradedAlgebra) -> Subspace:
    off = alg.blocks["DD"].offset
    return la.span([la.unit(off + k) for k in range(alg.dd.dim)], alg.dim)


# universal central extension ----------------------------------------------------


@dataclass
class HomCertificate:
    rows: List[Vec]
    domain: str
    codomain: str
    checked: bool = False
    witness: Optional[Tuple[int, int]] = None


def projection_rows(cover: GradedAlgebra, base: GradedAlgebra) -> List[Vec]:
    """L(q,K0) → L(q,K_sub): identity on tensor summands, ⟨·⟩ + K_sub on ⟨b,b⟩."""
    c_off, b_off = cover.blocks["DD"].offset, base.blocks["DD"].offset
    if c_off != b_off:
        raise ValueError("tensor summands differ")
    rows = [la.unit(i) for i in range(c_off)]
    for k in range(cover.dd.dim):
        full = cover.dd.lift(la.unit(k))
        rows.append({b_off + i: x for i, x in base.dd.project(full).items()})
    return rows


@dataclass
class UniversalReport:
    cover: GradedAlgebra
    base: GradedAlgebra
    pi: HomCertificate
    checks: List[CheckResult]
    kernel: Subspace
    center_dim: int

    @property
    def ok(self):
        return all(c.ok for c in self.checks)


def universal_extension(q, idx: IndexData, K_sub: Subspace, bb: Optional[BB] = None, cover: Optional[GradedAlgebra] = None) -> UniversalReport:
    """Build 𝔄 = L(q,{0}) → L(q,K_sub) and certify it is a central extension with kernel K_sub."""
    bb = bb or BB(q, idx.ell)
    cover = cover or GradedAlgebra(q, idx, None, bb=bb)
    base = GradedAlgebra(q, idx, K_sub, bb=bb)
    rows = projection_rows(cover, base)
    A, L = cover.lie, base.lie
    checks = []
    bad = A.is_homomorphism_to(L, rows)
    checks.append(CheckResult("pi_homomorphism", bad is None, bad))
    img = la.span(rows, base.dim)
    checks.append(CheckResult("pi_surjective", img.rank == base.dim))
    ker = la.kernel(rows, base.dim)
    off = cover.blocks["DD"].offset
    emb = la.span([{off + k: x for k, x in v.items()} for v in K_sub.basis], cover.dim)
    checks.append(CheckResult("kernel_is_K", ker == emb, None, f"dim {ker.rank} vs {K_sub.rank}"))
    central = all(not A.bracket(z, la.unit(j)) for z in ker.basis for j in range(A.dim))
    checks.append(CheckResult("kernel_central", central))
    ok = True
    n = cover.bee.dim
    for i in range(n):
        for j in range(n):
            x, y = la.unit(i), la.unit(j)
            if base.dd.project(cover.dd.lift(cover.dd.pair(x, y))) != base.dd.pair(x, y):
                ok = False
                checks.append(CheckResult("pair_generators", False, (i, j)))
                break
        if not ok:
            break
    if ok:
        checks.append(CheckResult("pair_generators", True))
    Z = A.center()
    pi = HomCertificate(rows, "L(q,{0})", "L(q,K)", checked=bad is None, witness=bad)
    return UniversalReport(cover, base, pi, checks, ker, Z.rank)


def compose_rows(first: List[Vec], second: List[Vec]) -> List[Vec]:
    out = []
    for r in first:
        v: Vec = {}
        for k, x in r.items():
            la.iadd(v, second[k], x)
        out.append(v)
    return out


def factor_through(cover: GradedAlgebra, pi: HomCertificate, ext: CentralExtension) -> HomCertificate:
    """ψ: L(q,{0}) → L̃ with φ∘ψ = π; identity on tensor summands, {β,β'} ↦ its class in L̃."""
    if ext.bb_model is None:
        raise ValueError("extension carries no model for ⟨b,b⟩ classes")
    off = cover.blocks["DD"].offset
    rows = [la.unit(i) for i in range(off)]
    for k in range(cover.dd.dim):
        rows.append(ext.bb_model(cover.dd.lift(la.unit(k))))
    bad = cover.lie.is_homomorphism_to(ext.total, rows)
    if bad is not None:
        raise CertificateFailure("ψ is not a homomorphism", bad)
    n = ext.base.dim
    for i, r in enumerate(rows):
        phi = {k: x for k, x in r.items() if k < n}
        if phi != pi.rows[i]:
            raise CertificateFailure("φ∘ψ ≠ π", (i,))
    return HomCertificate(rows, "L(q,{0})", "L~", checked=True)


def check_uniform_subspace(q, ell, K_sub: Subspace, bb: Optional[BB] = None):
    bb = bb or BB(q, ell)
    return check_uniform(K_sub, bb)
