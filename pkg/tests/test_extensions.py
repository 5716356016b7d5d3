import random
from fractions import Fraction

import pytest

import support
from rootgrade import linalg as la
from rootgrade.errors import CertificateFailure, DNotTrivial, InvalidCocycle, NotPerfect, TauGNonzero
from rootgrade.extensions import (
    Cocycle,
    HomCertificate,
    central_extend,
    check_trivial_submodule,
    compose_rows,
    dd_coboundary,
    dd_subspace,
    extension_from_quotient,
    factor_through,
    g_vectors,
    grade_extension,
    graded_cocycle,
    projection_rows,
    random_coboundary,
    trivial_extension,
    validate_cocycle,
)
from rootgrade.graded import GradedAlgebra
from rootgrade.structure import LieAlgebra
from rootgrade.symplectic import IndexData


def _heisenberg():
    # x, y with [x, y] = 0; τ(x, y) = z gives the Heisenberg algebra
    return LieAlgebra.from_pairs(2, {})


def test_cocycle_on_abelian_gives_heisenberg():
    L = _heisenberg()
    tau = Cocycle(1, {(0, 1): {0: Fraction(1)}})
    assert validate_cocycle(tau, L) == []
    ext = central_extend(L, tau)
    assert ext.total.bracket(la.unit(0), la.unit(1)) == {2: 1}
    assert ext.check_central().ok and ext.check_projection().ok
    assert ext.total.check_jacobi().ok
    assert not ext.total.is_perfect()


def test_cocycle_antisymmetric_evaluation():
    tau = Cocycle(2, {(0, 1): {1: Fraction(3)}})
    assert tau(la.unit(1), la.unit(0)) == {1: -3}
    assert tau(la.unit(0), la.unit(0)) == {}


def test_invalid_cocycles():
    L = support.algebra("bc-symplectic-rank1").lie
    bad = Cocycle(1, {(0, 1): {0: Fraction(1)}})
    with pytest.raises(InvalidCocycle):
        central_extend(L, bad)
    assert validate_cocycle(Cocycle(1, {}, {3: {0: Fraction(1)}}), L) == ["alternating: (3,3)"]
    assert validate_cocycle(Cocycle(1, {(2, 1): {0: Fraction(1)}}), L)[0].startswith("shape")


def test_random_coboundary_is_central_not_perfect():
    alg = support.algebra("bc-symplectic-rank1")
    rng = random.Random(7)
    tau = random_coboundary(alg.lie, 2, rng)
    ext = central_extend(alg, tau)
    assert ext.check_central().ok and ext.total.check_jacobi().ok
    if tau.values:
        with pytest.raises(NotPerfect):
            grade_extension(ext)


def test_dd_coboundary_vanishes_on_g():
    alg = support.algebra("bc-symplectic-rank1")
    mu = [{0: Fraction(k + 1)} for k in range(alg.dd.dim)]
    tau = dd_coboundary(alg, mu, 1)
    assert all(not tau(g, la.unit(j)) for g in g_vectors(alg) for j in range(alg.dim))


def test_tau_on_g_rejected():
    u = support.universal()
    ext = extension_from_quotient(u.cover, u.base)
    g = g_vectors(u.base)[0]
    k = next(j for j in range(u.base.dim) if u.base.bracket(g, la.unit(j)))
    pairs = {}
    for (i, j), v in ext.tau.values.items():
        pairs[(i, j)] = v
    # add μ([·,·]) with μ supported on [g, e_k]; still a cocycle, now nonzero on G
    mu = [{} for _ in range(u.base.dim)]
    for c in u.base.bracket(g, la.unit(k)):
        mu[c] = {0: Fraction(1)}
    extra = {}
    for i, j, v in u.base.lie.nonzero_pairs():
        out = {}
        for c, x in v.items():
            la.iadd(out, mu[c], x)
        if out:
            extra[(i, j)] = out
    for key, v in extra.items():
        pairs[key] = la.add(pairs.get(key, {}), v)
    tau = Cocycle(ext.E_dim, {k_: v for k_, v in pairs.items() if v})
    bad = central_extend(u.base, tau)
    with pytest.raises(TauGNonzero):
        grade_extension(bad)


def test_quotient_extension_grading():
    u = support.universal()
    ext = extension_from_quotient(u.cover, u.base)
    assert ext.E_dim == 3
    assert validate_cocycle(ext.tau, u.base.lie) == []
    rep = grade_extension(ext)
    assert rep.ok
    zero = (0, 0, 0, 0)
    assert rep.weights[zero].rank == sum(1 for w in u.base.weights if w == zero) + 3


def test_graded_cocycle_pushout():
    u = support.universal()
    rho = [{0: Fraction(1)}, {0: Fraction(2)}, {0: Fraction(-1)}]
    tau = graded_cocycle(u.cover, u.base, rho, 1)
    ext = central_extend(u.base, tau)
    assert ext.E_dim == 1 and grade_extension(ext).ok


def test_trivial_submodule():
    u = support.universal()
    ext = extension_from_quotient(u.cover, u.base)
    assert check_trivial_submodule(ext, dd_subspace(u.base))
    # ⟨b,b⟩ is not G-trivial once β* is nonzero
    alg = support.algebra("bc-exchange")
    triv = trivial_extension(alg, 1)
    with pytest.raises(DNotTrivial):
        check_trivial_submodule(triv, la.span([la.unit(k) for k in range(alg.blocks["VC"].offset, alg.blocks["VC"].offset + 1)], alg.dim))


def test_universal_report():
    u = support.universal()
    assert u.ok, [c.line() for c in u.checks]
    assert u.kernel.rank == 3 and u.center_dim >= u.kernel.rank
    assert [c.name for c in u.checks] == [
        "pi_homomorphism", "pi_surjective", "kernel_is_K", "kernel_central", "pair_generators"
    ]


def test_factor_through_chain():
    u = support.universal()
    q = u.cover.q
    for K0 in support.k0_chain():
        mid = GradedAlgebra(q, IndexData(4, 4), K0, bb=u.cover.bb)
        ext = extension_from_quotient(mid, u.base)
        psi = factor_through(u.cover, u.pi, ext)
        assert psi.checked
        assert compose_rows(psi.rows, [la.unit(i) for i in range(u.base.dim)] + [{}] * ext.E_dim) == u.pi.rows


def test_factor_through_trivial_and_failure():
    u = support.universal()
    psi = factor_through(u.cover, u.pi, trivial_extension(u.base, 2))
    assert psi.checked
    wrong = HomCertificate([{} for _ in u.pi.rows], "L", "L")
    with pytest.raises(CertificateFailure):
        factor_through(u.cover, wrong, trivial_extension(u.base, 1))


def test_projection_transitivity():
    u = support.universal()
    q, bb = u.cover.q, u.cover.bb
    K1 = support.k0_chain()[1]
    mid = GradedAlgebra(q, IndexData(4, 4), K1, bb=bb)
    first = projection_rows(u.cover, mid)
    second = projection_rows(mid, u.base)
    assert compose_rows(first, second) == u.pi.rows
