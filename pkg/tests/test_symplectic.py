from collections import Counter
from fractions import Fraction

import pytest

from rootgrade import linalg as la
from rootgrade.errors import NotInGS, RankTooSmall
from rootgrade.symplectic import (
    IndexData,
    SparseOp,
    Symplectic,
    build_g,
    build_s,
    circ_trace,
    commutator,
    embed_op,
    form_adjoint_sign,
    form_eval,
    g_lambda,
    generated_submodule,
    invariant_complement,
    projector_J,
    rank1,
    root_system,
    v_ops,
    weight_decompose,
)


def idx(n, ell=None):
    return IndexData(n, ell if ell is not None else min(n, 4))


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_dimensions(n):
    i = idx(n)
    assert len(build_g(i)) == n * (2 * n + 1)
    assert len(build_s(i)) == n * (2 * n - 1) - 1
    sp = Symplectic(i)
    assert sp._gspace.rank == len(sp.g) and sp._sspace.rank == len(sp.s)
    assert sum(1 for b in sp.s if not any(b.weight)) == n - 1


def test_s_needs_rank_two():
    with pytest.raises(RankTooSmall):
        build_s(IndexData(1, 1))


def test_form_examples():
    i = idx(3)
    assert form_eval(la.unit(0), la.unit(3), i) == 2
    assert form_eval(la.unit(3), la.unit(0), i) == -2
    assert form_eval(la.unit(0), la.unit(1), i) == 0
    assert form_eval(la.unit(0), la.unit(4), i) == 0


@pytest.mark.parametrize("n", [2, 3, 4])
def test_g_skew_s_symmetric(n):
    i = idx(n)
    for b in build_g(i):
        assert form_adjoint_sign(b.op, i) == -1
    for b in build_s(i):
        assert form_adjoint_sign(b.op, i) == 1
        assert b.op.trace() == 0


@pytest.mark.parametrize("n", [2, 3, 4])
def test_weights_match_adjoint_action(n):
    i = idx(n)
    hs = [b.op for b in build_g(i) if b.label.startswith("h")]
    for b in build_g(i) + build_s(i):
        for k, h in enumerate(hs):
            assert commutator(h, b.op) == b.weight[k] * b.op


@pytest.mark.parametrize("n", [2, 3, 4])
def test_roots(n):
    i = idx(n)
    g_roots = Counter(b.weight for b in build_g(i) if any(b.weight))
    s_roots = Counter(b.weight for b in build_s(i) if any(b.weight))
    v_roots = Counter(i.eps(j) for j in range(i.size))
    everything = set(g_roots) | set(s_roots) | set(v_roots)
    assert everything == set(root_system(n))
    assert all(m == 1 for m in g_roots.values())
    assert len(root_system(n)) == 2 * n * n + 2 * n


def test_weight_decompose_vectors_and_ops():
    i = idx(3)
    ws = weight_decompose([la.unit(j) for j in range(i.size)], i)
    assert {w.weight for w in ws} == {i.eps(j) for j in range(i.size)}
    ws = weight_decompose([b.op for b in build_g(i)], i)
    zero = [w for w in ws if not any(w.weight)]
    assert zero[0].space.rank == 3


def test_circ_examples():
    i = idx(4)
    sp = Symplectic(i)
    h0 = sp.g[[b.label for b in sp.g].index("h0")].op
    out = circ_trace(h0, h0, i)
    # h0² is the projector on v_0, v_0̄ and tr = 2
    expect = 2 * projector_J(i, [0]) - Fraction(2, 4) * sp.J0
    assert out == expect
    e01 = sp.g[0].op
    assert sp.in_g(e01)
    assert sp.in_s(circ_trace(e01, h0, i))


def test_circ_lands_in_s():
    i = idx(4)
    sp = Symplectic(i)
    for e in sp.g[::5]:
        for f in sp.g[::7]:
            assert sp.in_s(sp.circ_trace(e.op, f.op))
        for f in sp.s[::7]:
            assert sp.in_s(commutator(e.op, f.op))
    for e in sp.s[::5]:
        for f in sp.s[::7]:
            assert sp.in_s(sp.circ_trace(e.op, f.op))


def test_circ_rejects_outside_g_s():
    i = idx(4)
    sp = Symplectic(i)
    with pytest.raises(NotInGS):
        sp.circ_trace(sp.J0, sp.g[0].op)
    with pytest.raises(NotInGS):
        circ_trace(SparseOp.unit(i.size, 0, 1), sp.g[0].op, i)
    with pytest.raises(NotInGS):
        sp.g_coords(sp.J0)


def test_v_ops():
    i = idx(4)
    sp = Symplectic(i)
    u, w = la.unit(0), la.unit(4)
    sym, skew = v_ops(u, w, i)
    assert sp.in_g(sym) and sp.in_s(skew)
    assert rank1(u, w, i).apply(la.unit(4)) == {4: -2}
    sym, skew = v_ops(la.unit(1), la.unit(2), i)
    assert sp.in_g(sym) and sp.in_s(skew)


def test_projectors():
    i = IndexData(6, 4)
    J = projector_J(i, i.I0)
    assert J.trace() == 8 and J @ J == J
    for b in build_g(i, range(4)):
        assert commutator(J, b.op) == SparseOp(i.size)
    with pytest.raises(ValueError):
        projector_J(i, [7])


def test_g_lambda_is_restriction():
    i = IndexData(5, 4)
    lam = [0, 1, 2, 3]
    sub = g_lambda(i, lam)
    N = i.size
    G = la.span([b.op.flat() for b in build_g(i)], N * N)
    inside = {r for j in lam for r in (j, i.bar(j))}
    expect = [f for f in G.basis if all(k // N in inside and k % N in inside for k in f)]
    assert la.span([b.op.flat() for b in sub], N * N) == la.span(expect, N * N)
    Jl = projector_J(i, lam)
    assert all(commutator(Jl, b.op) == SparseOp(N) for b in sub)


def test_adjoint_irreducible():
    i = idx(2)
    sp = Symplectic(i)
    N = i.size
    G = la.span([b.op.flat() for b in sp.g], N * N)
    acts = [lambda v, e=b.op: commutator(e, SparseOp.from_flat(N, v)).flat() for b in sp.g]
    for seed in (sp.g[0].op, sp.g[-1].op):
        assert generated_submodule(la.span([seed.flat()], N * N), acts, G) == G
    S = la.span([b.op.flat() for b in sp.s], N * N)
    for b in sp.s:
        assert generated_submodule(la.span([b.op.flat()], N * N), acts, S) == S


def test_complement_g_plus_trivial():
    i = idx(2)
    sp = Symplectic(i)
    N = i.size
    ident = SparseOp(N, {(k, k): Fraction(1) for k in range(N)})
    W = la.span([b.op.flat() for b in sp.g] + [ident.flat()], N * N)
    acts = [lambda v, e=b.op: commutator(e, SparseOp.from_flat(N, v)).flat() for b in sp.g]
    U = la.span([ident.flat()], N * N)
    P = invariant_complement(W, acts, U)
    assert P == sp._gspace


def test_embedding_preserves_brackets():
    small, big = IndexData(4, 4), IndexData(6, 4)
    g = build_g(small)
    sp_big = Symplectic(big)
    for a in g[::3]:
        for b in g[::4]:
            lhs = embed_op(commutator(a.op, b.op), small, big)
            rhs = commutator(embed_op(a.op, small, big), embed_op(b.op, small, big))
            assert lhs == rhs and sp_big.in_g(lhs)
