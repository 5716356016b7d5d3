from fractions import Fraction

import pytest

import support
from rootgrade import linalg as la
from rootgrade.coords import CoordinateQuadruple, algebra_from_table, catalog, catalog_names, empty_module
from rootgrade.errors import NotInHF, NotUniform
from rootgrade.homology import BB, QuotientDD, check_uniform, compute_hf, quotient_dd

# dim {b,b} and dim HF(b) at ℓ = 4, computed once by brute-force kernels
REGRESSION = {
    "a-matrix2": (3, 0),
    "b-spin-factor2": (1, 0),
    "bc-exchange": (1, 0),
    "bc-matrix2": (4, 0),
    "bc-matrix2-nilpotent": (7, 1),
    "bc-square-zero3": (3, 3),
    "bc-symplectic-rank1": (3, 0),
    "c-transpose2": (1, 0),
    "d-dual-numbers": (0, 0),
}


@pytest.mark.parametrize("name", catalog_names())
def test_regression_dimensions(name):
    b = support.bb(name)
    assert (b.dim, support.hf(name).rank) == REGRESSION[name]


def test_kind_d_on_field_collapses():
    a = algebra_from_table(1, {(0, 0): {0: 1}}, {0: 1})
    b = BB(CoordinateQuadruple("D", a, empty_module(1)), 4)
    assert b.dim == 0


@pytest.mark.parametrize("name", catalog_names())
def test_antisymmetry_relations(name):
    b = support.bb(name)
    n, N = b.bee.n, b.N
    for i in range(n):
        for j in range(n):
            assert b.cls(la.add(b.tensor(la.unit(i), la.unit(j)), b.tensor(la.unit(j), la.unit(i)))) == {}
    for s in range(n, N):
        for t in range(n, N):
            assert b.pair(la.unit(s), la.unit(t)) == b.pair(la.unit(t), la.unit(s))


@pytest.mark.parametrize("name", catalog_names())
def test_d_vanishes_on_K(name):
    b = support.bb(name)
    for g in b.generators:
        assert b.d_tensor(g) == {}


@pytest.mark.parametrize("name", catalog_names())
def test_bracket_well_defined(name):
    b = support.bb(name)
    N2 = b.N * b.N
    classes = [{c: Fraction(1)} for c in b.cols]
    for g in b.generators:
        for t in classes:
            assert b.K.contains(b.bracket_tensors(g, t))
            assert b.K.contains(b.bracket_tensors(t, g))
    assert b.K.ambient_dim == N2


@pytest.mark.parametrize("name", catalog_names())
def test_lie_structure(name):
    b = support.bb(name)
    n = b.dim
    E = [la.unit(k) for k in range(n)]
    for x in E:
        for y in E:
            assert la.add(b.bracket(x, y), b.bracket(y, x)) == {}
    for i in range(n):
        for j in range(n):
            for k in range(n):
                s = b.bracket(E[i], b.bracket(E[j], E[k]))
                la.iadd(s, b.bracket(E[j], b.bracket(E[k], E[i])))
                la.iadd(s, b.bracket(E[k], b.bracket(E[i], E[j])))
                assert s == {}


def test_bracket_examples():
    b = support.bb("d-dual-numbers")
    assert b.dim == 0
    b = support.bb("bc-symplectic-rank1")
    x = b.pair(b.bee.basis(1).flat(1), b.bee.basis(2).flat(1))
    assert b.bracket(x, x) == {}
    assert b.bracket(x, {}) == {}


@pytest.mark.parametrize("name", catalog_names())
def test_hf_is_central(name):
    b = support.bb(name)
    for h in support.hf(name).basis:
        for k in range(b.dim):
            assert b.bracket(h, la.unit(k)) == {}


def test_hf_type_d_is_everything():
    for name in ("d-dual-numbers", "bc-square-zero3"):
        assert support.hf(name).rank == support.bb(name).dim


def test_uniform_examples():
    b = support.bb("bc-square-zero3")
    assert check_uniform(la.zero_space(b.dim), b)
    H = support.hf("bc-square-zero3")
    assert check_uniform(H, b)
    for v in H.basis:
        assert check_uniform(la.span([v], b.dim), b)


def test_non_uniform_witness():
    b = support.bb("bc-matrix2-nilpotent")
    H = support.hf("bc-matrix2-nilpotent")
    res = check_uniform(H, b)
    assert not res and res.witness and res.bstar
    with pytest.raises(NotUniform):
        QuotientDD(b, H)


def test_not_in_hf():
    b = support.bb("bc-symplectic-rank1")
    with pytest.raises(NotInHF):
        check_uniform(la.full_space(b.dim), b)


def test_quotients():
    b = support.bb("bc-square-zero3")
    assert QuotientDD(b).dim == b.dim
    H = support.hf("bc-square-zero3")
    assert QuotientDD(b, H).dim == 0
    K1 = la.span(H.basis[:1], b.dim)
    Q = quotient_dd(b.q, 4, K1)
    assert Q.dim == b.dim - 1
    b2 = support.bb("bc-exchange")
    assert compute_hf(b2.q, 4).rank == 0


def test_hf_per_ell():
    # HF is reported per ℓ; the catalog values do not move between ℓ = 1 and ℓ = 4
    for name in ("bc-exchange", "bc-matrix2-nilpotent"):
        assert BB(catalog(name), 1).hf().rank == support.hf(name).rank
