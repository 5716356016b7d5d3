"""Coordinate quadruples (a, *, C, f) of types A, B, C, D and BC.

Algebras are stored by structure constants on a fixed basis.  Everything is
validated exhaustively on basis tuples, which is what makes a violation
report meaningful: each entry names the failed axiom and the basis indices
that witness it.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from . import linalg as la
from .errors import QuadrupleFormatError, StarNotInvolutive, UnknownName
from .linalg import Subspace, Vec

KINDS = ("A", "B", "C", "D", "BC")


@dataclass(frozen=True)
class FiniteAlgebra:
    """Unital algebra by structure constants: ``mul[i][j]`` is ``e_i * e_j``.

    ``star`` lists the images of the basis vectors; ``None`` means identity.
    """

    dim: int
    unit: Vec
    mul: Tuple[Tuple[Vec, ...], ...]
    star: Optional[Tuple[Vec, ...]] = None

    def product(self, x: Vec, y: Vec) -> Vec:
        out: Vec = {}
        for i, xi in x.items():
            row = self.mul[i]
            for j, yj in y.items():
                la.iadd(out, row[j], xi * yj)
        return out

    def apply_star(self, x: Vec) -> Vec:
        if self.star is None:
            return dict(x)
        out: Vec = {}
        for i, c in x.items():
            la.iadd(out, self.star[i], c)
        return out

    def commutator(self, x: Vec, y: Vec) -> Vec:
        return la.add(self.product(x, y), self.product(y, x), -1)

    def jordan(self, x: Vec, y: Vec) -> Vec:
        """``x ∘ y = xy + yx``."""
        return la.add(self.product(x, y), self.product(y, x))

    @property
    def star_is_identity(self) -> bool:
        if self.star is None:
            return True
        return all(self.star[i] == la.unit(i) for i in range(self.dim))


@dataclass(frozen=True)
class ModuleC:
    """Module C over a with form f.

    ``act[i][t]`` is ``e_i · c_t`` (a vector in C) and ``f[s][t]`` is
    ``f(c_s, c_t)`` (a vector in a).
    """

    dim: int
    act: Tuple[Tuple[Vec, ...], ...]
    f: Tuple[Tuple[Vec, ...], ...]

    def action(self, x: Vec, c: Vec) -> Vec:
        out: Vec = {}
        for i, xi in x.items():
            row = self.act[i]
            for t, ct in c.items():
                la.iadd(out, row[t], xi * ct)
        return out

    def form(self, c: Vec, d: Vec) -> Vec:
        out: Vec = {}
        for s, cs in c.items():
            row = self.f[s]
            for t, dt in d.items():
                la.iadd(out, row[t], cs * dt)
        return out


@dataclass(frozen=True)
class CoordinateQuadruple:
    kind: str
    a: FiniteAlgebra
    C: ModuleC
    name: str = ""

    @property
    def f(self):
        return self.C.form

    @property
    def star(self):
        return self.a.apply_star


@dataclass(frozen=True)
class ABSplit:
    A: Subspace
    B: Subspace


def empty_module(a_dim: int) -> ModuleC:
    return ModuleC(0, tuple(() for _ in range(a_dim)), ())


# -- validation -------------------------------------------------------------


def _basis(n):
    return [la.unit(i) for i in range(n)]


def validate_quadruple(q: CoordinateQuadruple) -> List[str]:
    """Return the list of violated axioms; empty iff q is a coordinate quadruple.

    Each entry has the form ``"axiom: witness"`` with basis indices.
    """
    out: List[str] = []
    a = q.a
    n = a.dim
    E = _basis(n)
    if q.kind not in KINDS:
        return [f"kind: unknown kind {q.kind!r}"]

    def fail(axiom, witness):
        out.append(f"{axiom}: {witness}")

    for i in range(n):
        if a.product(a.unit, E[i]) != E[i]:
            fail("unit_left", (i,))
        if a.product(E[i], a.unit) != E[i]:
            fail("unit_right", (i,))

    associative = q.kind in ("A", "C", "D", "BC")
    if associative:
        for i in range(n):
            for j in range(n):
                ij = a.mul[i][j]
                for k in range(n):
                    if a.product(ij, E[k]) != a.product(E[i], a.mul[j][k]):
                        fail("associativity", (i, j, k))
    if q.kind in ("B", "D"):
        for i in range(n):
            for j in range(i + 1, n):
                if a.mul[i][j] != a.mul[j][i]:
                    fail("commutativity", (i, j))

    if q.kind in ("A", "D") and not a.star_is_identity:
        for i in range(n):
            if a.apply_star(E[i]) != E[i]:
                fail("star_identity", (i,))

    involutive = True
    for i in range(n):
        if a.apply_star(a.apply_star(E[i])) != E[i]:
            fail("star_involution", (i,))
            involutive = False
    if q.kind != "A":
        for i in range(n):
            for j in range(n):
                lhs = a.apply_star(a.mul[i][j])
                rhs = a.product(a.apply_star(E[j]), a.apply_star(E[i]))
                if lhs != rhs:
                    fail("star_antiautomorphism", (i, j))

    if q.kind == "B" and involutive:
        split = split_ab(q)
        for x in split.A.basis:
            for y in split.A.basis:
                if not split.A.contains(a.product(x, y)):
                    fail("clifford_A_subalgebra", (x, y))
            for y in split.B.basis:
                if not split.B.contains(a.product(x, y)):
                    fail("clifford_A_module", (x, y))
        for x in split.B.basis:
            for y in split.B.basis:
                if not split.A.contains(a.product(x, y)):
                    fail("clifford_form_values", (x, y))

    C = q.C
    m = C.dim
    if q.kind != "BC":
        if m:
            fail("C_zero", (m,))
        return out

    D = _basis(m)
    for t in range(m):
        if C.action(a.unit, D[t]) != D[t]:
            fail("module_unit", (t,))
    for i in range(n):
        for j in range(n):
            for t in range(m):
                if C.action(a.mul[i][j], D[t]) != C.action(E[i], C.act[j][t]):
                    fail("module_associativity", (i, j, t))
    for s in range(m):
        for t in range(m):
            if a.apply_star(C.f[s][t]) != la.scale(C.f[t][s], -1):
                fail("f_skew_hermitian", (s, t))
    for i in range(n):
        for s in range(m):
            for t in range(m):
                if C.form(C.act[i][s], D[t]) != a.product(E[i], C.f[s][t]):
                    fail("f_sesquilinear", (i, s, t))
    return out


def split_ab(q: CoordinateQuadruple) -> ABSplit:
    """Eigenspace split of the involution: A = fixed points, B = skew points."""
    a = q.a
    E = _basis(a.dim)
    for e in E:
        if a.apply_star(a.apply_star(e)) != e:
            raise StarNotInvolutive(f"star is not an involution of {q.name or 'a'}")
    fix = [la.add(e, a.apply_star(e)) for e in E]
    skew = [la.add(e, a.apply_star(e), -1) for e in E]
    return ABSplit(la.span(fix, a.dim), la.span(skew, a.dim))


# -- catalog ----------------------------------------------------------------


def _F(x):
    return Fraction(x)


def algebra_from_table(dim, table, unit, star=None) -> FiniteAlgebra:
    """Build an algebra from ``table[(i, j)] = {k: coeff}`` (missing = 0)."""
    mul = tuple(tuple(la.vec(table.get((i, j), {})) for j in range(dim)) for i in range(dim))
    st = None if star is None else tuple(la.vec(s) for s in star)
    return FiniteAlgebra(dim, la.vec(unit), mul, st)


def matrix_algebra(k: int, star: Optional[str] = None) -> FiniteAlgebra:
    """k×k matrices, basis E_{rs} at index r*k + s; ``star`` in {None, 'transpose'}."""
    dim = k * k
    table = {}
    for r in range(k):
        for s in range(k):
            for t in range(k):
                table[(r * k + s, s * k + t)] = {r * k + t: 1}
    unit = {r * k + r: 1 for r in range(k)}
    st = None
    if star == "transpose":
        st = [{s * k + r: 1} for r in range(k) for s in range(k)]
    return algebra_from_table(dim, table, unit, st)


def truncated_polynomials(nvars: int, degree_bound: int = 1) -> FiniteAlgebra:
    """F[x_1..x_m]/(x_1..x_m)^(degree_bound+1) for degree_bound 1; basis 1, x_1..x_m."""
    if degree_bound != 1:
        raise NotImplementedError("only square-zero maximal ideals are provided")
    dim = nvars + 1
    table = {(0, j): {j: 1} for j in range(dim)}
    table.update({(j, 0): {j: 1} for j in range(dim)})
    return algebra_from_table(dim, table, {0: 1})


def tensor_algebra(x: FiniteAlgebra, y: FiniteAlgebra) -> FiniteAlgebra:
    """x ⊗ y with basis e_i ⊗ e_j at i * dim y + j and involution *⊗* when both exist."""
    n = y.dim
    table = {}
    for i in range(x.dim):
        for k in range(x.dim):
            pxy = x.mul[i][k]
            if not pxy:
                continue
            for j in range(n):
                for l in range(n):
                    pyy = y.mul[j][l]
                    if pyy:
                        table[(i * n + j, k * n + l)] = {
                            r * n + s: u * v for r, u in pxy.items() for s, v in pyy.items()
                        }
    unit = {r * n + s: u * v for r, u in x.unit.items() for s, v in y.unit.items()}
    star = None
    if x.star is not None or y.star is not None:
        star = []
        for i in range(x.dim):
            for j in range(n):
                si = x.apply_star(la.unit(i))
                sj = y.apply_star(la.unit(j))
                star.append({r * n + s: u * v for r, u in si.items() for s, v in sj.items()})
    return algebra_from_table(x.dim * n, table, unit, star)


def regular_module(a: FiniteAlgebra, sigma: Vec) -> ModuleC:
    """C = a as a left module with f(c, c') = c σ c'^*; skew-hermitian iff σ^* = -σ."""
    n = a.dim
    act = tuple(tuple(dict(a.mul[i][t]) for t in range(n)) for i in range(n))
    f = tuple(
        tuple(a.product(a.product(la.unit(s), la.vec(sigma)), a.apply_star(la.unit(t))) for t in range(n))
        for s in range(n)
    )
    return ModuleC(n, act, f)


def _catalog_entries():
    cat = {}

    a = algebra_from_table(1, {(0, 0): {0: 1}}, {0: 1})
    C = ModuleC(2, (({0: _F(1)}, {1: _F(1)}),), (({}, {0: _F(1)}), ({0: _F(-1)}, {})))
    cat["bc-symplectic-rank1"] = CoordinateQuadruple("BC", a, C, "bc-symplectic-rank1")

    # F ⊕ F with the exchange involution; C = a as a left module,
    # f(c, c') = c σ c'^* with σ = (1, -1).
    a = algebra_from_table(2, {(0, 0): {0: 1}, (1, 1): {1: 1}}, {0: 1, 1: 1}, [{1: 1}, {0: 1}])
    act = tuple(tuple(la.vec(a.mul[i][t]) for t in range(2)) for i in range(2))
    f = (({}, {0: _F(1)}), ({1: _F(-1)}, {}))
    cat["bc-exchange"] = CoordinateQuadruple("BC", a, ModuleC(2, act, f), "bc-exchange")

    a = algebra_from_table(2, {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}}, {0: 1})
    cat["d-dual-numbers"] = CoordinateQuadruple("D", a, empty_module(2), "d-dual-numbers")

    a = matrix_algebra(2)
    cat["a-matrix2"] = CoordinateQuadruple("A", a, empty_module(4), "a-matrix2")

    a = matrix_algebra(2, "transpose")
    cat["c-transpose2"] = CoordinateQuadruple("C", a, empty_module(4), "c-transpose2")

    # spin factor: A = F·1, B = F b1 ⊕ F b2 with g(b_i, b_j) = δ_ij
    table = {(0, j): {j: 1} for j in range(3)}
    table.update({(j, 0): {j: 1} for j in range(3)})
    table[(1, 1)] = {0: 1}
    table[(2, 2)] = {0: 1}
    a = algebra_from_table(3, table, {0: 1}, [{0: 1}, {1: -1}, {2: -1}])
    cat["b-spin-factor2"] = CoordinateQuadruple("B", a, empty_module(3), "b-spin-factor2")

    a = matrix_algebra(2, "transpose")
    C = regular_module(a, {1: 1, 2: -1})
    cat["bc-matrix2"] = CoordinateQuadruple("BC", a, C, "bc-matrix2")

    # M2 ⊗ F<x,y>/(words of length 3) with transpose ⊗ (x, y fixed); [x, y] is
    # central and skew, so HF(b) contains a class with nonzero β*.
    nil = algebra_from_table(
        5,
        {**{(0, i): {i: 1} for i in range(5)}, **{(i, 0): {i: 1} for i in range(5)},
         (1, 2): {3: 1}, (2, 1): {4: 1}},
        {0: 1},
        [{0: 1}, {1: 1}, {2: 1}, {4: 1}, {3: 1}],
    )
    a = tensor_algebra(matrix_algebra(2, "transpose"), nil)
    cat["bc-matrix2-nilpotent"] = CoordinateQuadruple("BC", a, empty_module(a.dim), "bc-matrix2-nilpotent")

    # degenerate BC: commutative square-zero algebra, identity involution, C = 0
    a = truncated_polynomials(3)
    cat["bc-square-zero3"] = CoordinateQuadruple("BC", a, empty_module(4), "bc-square-zero3")
    return cat


_CATALOG: Optional[Dict[str, CoordinateQuadruple]] = None


def catalog_names() -> List[str]:
    return sorted(_catalog())


def _catalog():
    global _CATALOG
    if _CATALOG is None:
        _CATALOG = _catalog_entries()
    return _CATALOG


def catalog(name: str) -> CoordinateQuadruple:
    try:
        return _catalog()[name]
    except KeyError:
        raise UnknownName(f"no catalog quadruple named {name!r}") from None


# -- JSON file format ---------------------------------------------------------


def _fmt(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _parse_rat(s, where) -> Fraction:
    if isinstance(s, bool) or not isinstance(s, (str, int)):
        raise QuadrupleFormatError(f"expected rational string, got {s!r}", where)
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise QuadrupleFormatError(f"bad rational {s!r}", where) from None


def _dense_list(v: Vec, n: int):
    return [_fmt(x) for x in la.dense(v, n)]


def quadruple_to_dict(q: CoordinateQuadruple) -> dict:
    a, C = q.a, q.C
    return {
        "kind": q.kind,
        "a": {
            "dim": a.dim,
            "unit": _dense_list(a.unit, a.dim),
            "mul": [[_dense_list(a.mul[i][j], a.dim) for j in range(a.dim)] for i in range(a.dim)],
            "star": "identity" if a.star is None else [_dense_list(s, a.dim) for s in a.star],
        },
        "C": {
            "dim": C.dim,
            "act": [[_dense_list(C.act[i][t], C.dim) for t in range(C.dim)] for i in range(a.dim)],
            "f": [[_dense_list(C.f[s][t], a.dim) for t in range(C.dim)] for s in range(C.dim)],
        },
    }


def dumps_quadruple(q: CoordinateQuadruple) -> str:
    return json.dumps(quadruple_to_dict(q), indent=1, sort_keys=True) + "\n"


def _vector(raw, n, where) -> Vec:
    if not isinstance(raw, list) or len(raw) != n:
        raise QuadrupleFormatError(f"expected list of {n} rationals", where)
    return la.vec(_parse_rat(x, f"{where}[{k}]") for k, x in enumerate(raw))


def _nested(raw, shape, n, where):
    if not shape:
        return _vector(raw, n, where)
    if not isinstance(raw, list) or len(raw) != shape[0]:
        raise QuadrupleFormatError(f"expected list of length {shape[0]}", where)
    return tuple(_nested(r, shape[1:], n, f"{where}[{k}]") for k, r in enumerate(raw))


def quadruple_from_dict(d: dict, name: str = "") -> CoordinateQuadruple:
    try:
        kind = d["kind"]
        ad = d["a"]
        dim = ad["dim"]
    except (KeyError, TypeError) as e:
        raise QuadrupleFormatError(f"missing field {e}", "$") from None
    if kind not in KINDS:
        raise QuadrupleFormatError(f"unknown kind {kind!r}", "$.kind")
    if not isinstance(dim, int) or dim < 1:
        raise QuadrupleFormatError("dim must be a positive integer", "$.a.dim")
    unit = _vector(ad.get("unit"), dim, "$.a.unit")
    mul = _nested(ad.get("mul"), (dim, dim), dim, "$.a.mul")
    star_raw = ad.get("star", "identity")
    star = None if star_raw == "identity" else _nested(star_raw, (dim,), dim, "$.a.star")
    a = FiniteAlgebra(dim, unit, mul, star)
    cd = d.get("C", {"dim": 0, "act": [[] for _ in range(dim)], "f": []})
    m = cd.get("dim", 0)
    if not isinstance(m, int) or m < 0:
        raise QuadrupleFormatError("dim must be a natural number", "$.C.dim")
    act = _nested(cd.get("act", [[] for _ in range(dim)]), (dim, m), m, "$.C.act")
    f = _nested(cd.get("f", []), (m, m), dim, "$.C.f")
    return CoordinateQuadruple(kind, a, ModuleC(m, act, f), name)


def loads_quadruple(text: str, name: str = "") -> CoordinateQuadruple:
    try:
        d = json.loads(text)
    except json.JSONDecodeError as e:
        raise QuadrupleFormatError(e.msg, f"line {e.lineno} column {e.colno}") from None
    if not isinstance(d, dict):
        raise QuadrupleFormatError("top level must be an object", "$")
    return quadruple_from_dict(d, name)
