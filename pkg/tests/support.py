"""Cached fixtures shared across test modules."""
from functools import lru_cache

from rootgrade import linalg as la
from rootgrade.coords import catalog
from rootgrade.graded import GradedAlgebra
from rootgrade.homology import BB
from rootgrade.symplectic import IndexData

ELL = 4
BC_NAMES = ["bc-symplectic-rank1", "bc-exchange", "bc-square-zero3", "bc-matrix2"]

# acceptance results, filled by test_acceptance and printed by conftest
ACCEPTANCE = {}


@lru_cache(maxsize=None)
def bb(name, ell=ELL):
    return BB(catalog(name), ell)


@lru_cache(maxsize=None)
def hf(name, ell=ELL):
    return bb(name, ell).hf()


@lru_cache(maxsize=None)
def algebra(name, n=4, k="zero"):
    b = bb(name)
    K = la.zero_space(b.dim) if k == "zero" else hf(name)
    alg = GradedAlgebra(catalog(name), IndexData(n, ELL), K, bb=b)
    alg.lie
    return alg


@lru_cache(maxsize=None)
def universal(name="bc-square-zero3"):
    from rootgrade.extensions import universal_extension

    return universal_extension(catalog(name), IndexData(4, ELL), hf(name), bb=bb(name), cover=algebra(name))


def k0_chain(name="bc-square-zero3"):
    """{0} ⊂ span(h0) ⊂ span(h0, h1) inside HF."""
    H, d = hf(name), bb(name).dim
    return [la.span(H.basis[:k], d) for k in range(3)]
