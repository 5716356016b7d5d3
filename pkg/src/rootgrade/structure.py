"""Finite-dimensional Lie algebras given by structure constants.

``sc[i][j]`` is the sparse vector [e_i, e_j].  Only the upper triangle is
authoritative: :class:`LieAlgebra` stores full rows so brackets are plain
sparse contractions.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from . import linalg as la
from .errors import QuadrupleFormatError
from .linalg import Subspace, Vec

Weight = Tuple[int, ...]


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    witness: Optional[tuple] = None
    detail: str = ""

    def __bool__(self):
        return self.ok

    def line(self) -> str:
        if self.ok:
            return f"{self.name}: pass"
        return f"{self.name}: FAIL witness={self.witness} {self.detail}".rstrip()


@dataclass
class LieAlgebra:
    dim: int
    sc: List[List[Vec]]
    labels: List[str] = field(default_factory=list)
    weights: Optional[List[Weight]] = None
    # elements whose adjoint action realizes the weights, if known
    cartan: Optional[List[Vec]] = None

    @classmethod
    def from_pairs(cls, dim: int, pairs: Dict[Tuple[int, int], Vec], labels=None, weights=None, cartan=None) -> "LieAlgebra":
        """Build from ``pairs[(i, j)]`` for i < j, filling the rest by antisymmetry."""
        sc = [[{} for _ in range(dim)] for _ in range(dim)]
        for (i, j), v in pairs.items():
            if i == j:
                continue
            if i > j:
                i, j, v = j, i, la.scale(v, -1)
            sc[i][j] = dict(v)
            sc[j][i] = la.scale(v, -1)
        return cls(dim, sc, list(labels or []), weights, cartan)

    def bracket(self, x: Vec, y: Vec) -> Vec:
        out: Vec = {}
        for i, a in x.items():
            row = self.sc[i]
            for j, b in y.items():
                v = row[j]
                if v:
                    la.iadd(out, v, a * b)
        return out

    def ad_rows(self, x: Vec) -> List[Vec]:
        """Rows of ad x: row j is [x, e_j]."""
        return [self.bracket(x, {j: Fraction(1)}) for j in range(self.dim)]

    def nonzero_pairs(self) -> Iterator[Tuple[int, int, Vec]]:
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                v = self.sc[i][j]
                if v:
                    yield i, j, v

    # verification ---------------------------------------------------------

    def check_antisymmetry(self) -> CheckResult:
        for i in range(self.dim):
            if self.sc[i][i]:
                return CheckResult("antisymmetry", False, (i, i))
            for j in range(i + 1, self.dim):
                if la.add(self.sc[i][j], self.sc[j][i]):
                    return CheckResult("antisymmetry", False, (i, j))
        return CheckResult("antisymmetry", True)

    def jacobiator(self, i: int, j: int, k: int) -> Vec:
        sc = self.sc
        out: Vec = {}
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            inner = sc[b][c]
            row = sc[a]
            for l, x in inner.items():
                v = row[l]
                if v:
                    la.iadd(out, v, x)
        return out

    def check_jacobi(self) -> CheckResult:
        """Exhaustive over i < j < k; the first failing triple in lexicographic order is the witness."""
        n = self.dim
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    if self.jacobiator(i, j, k):
                        return CheckResult("jacobi", False, (i, j, k))
        return CheckResult("jacobi", True)

    def derived(self) -> Subspace:
        return la.span([v for _, _, v in self.nonzero_pairs()], self.dim)

    def is_perfect(self) -> bool:
        return self.derived().rank == self.dim

    def center(self) -> Subspace:
        """Kernel of x ↦ ([x, e_j])_j."""
        n = self.dim
        rows = []
        for i in range(n):
            r: Vec = {}
            for j in range(n):
                for k, x in self.sc[i][j].items():
                    r[j * n + k] = x
            rows.append(r)
        return la.kernel(rows, n * n)

    def check_weights(self) -> CheckResult:
        """Every basis vector is an eigenvector of ad(cartan[i]) with eigenvalue weights[k][i]."""
        if self.weights is None or self.cartan is None:
            return CheckResult("weights", False, None, "no weight data")
        for i, h in enumerate(self.cartan):
            for k in range(self.dim):
                if la.add(self.bracket(h, {k: Fraction(1)}), {k: Fraction(self.weights[k][i])}, -1):
                    return CheckResult("weights", False, (i, k))
        return CheckResult("weights", True)

    def is_homomorphism_to(self, other: "LieAlgebra", rows: Sequence[Vec]) -> Optional[Tuple[int, int]]:
        """First basis pair (i, j) with φ[e_i, e_j] ≠ [φe_i, φe_j], or None; ``rows[i]`` = φ(e_i)."""
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                lhs: Vec = {}
                for k, x in self.sc[i][j].items():
                    la.iadd(lhs, rows[k], x)
                if la.add(lhs, other.bracket(rows[i], rows[j]), -1):
                    return (i, j)
        return None

    # serialization --------------------------------------------------------

    def dump_lines(self) -> List[str]:
        lines = [f"dim={self.dim}"]
        if self.weights is not None:
            for i, w in enumerate(self.weights):
                lines.append(f"weight[{i}]={','.join(str(x) for x in w)}")
        if self.cartan is not None:
            for i, h in enumerate(self.cartan):
                lines.append(f"cartan[{i}] = {_terms(h)}")
        for i, j, v in self.nonzero_pairs():
            lines.append(f"bracket[{i}][{j}] = {_terms(v)}")
        return lines

    def dumps(self) -> str:
        return "\n".join(self.dump_lines()) + "\n"


def _fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _terms(v: Vec) -> str:
    return " + ".join(f"{_fmt(x)}*{k}" for k, x in sorted(v.items()))


def _parse_terms(rhs: str) -> Vec:
    v: Vec = {}
    for term in rhs.split("+"):
        c, k = term.strip().split("*")
        la.iadd(v, {int(k): Fraction(c)})
    return v


def loads(text: str) -> LieAlgebra:
    """Parse the ``dim=`` / ``weight[i]=`` / ``bracket[i][j] = c*k + ...`` format."""
    dim = None
    pairs: Dict[Tuple[int, int], Vec] = {}
    weights: Dict[int, Weight] = {}
    cartan: Dict[int, Vec] = {}
    line_of: Dict[Tuple[int, int], int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        where = f"line {lineno}"
        try:
            if line.startswith("dim="):
                dim = int(line[4:])
            elif line.startswith("weight["):
                idx, val = line[7:].split("]=", 1)
                weights[int(idx)] = tuple(int(x) for x in val.split(",")) if val else ()
            elif line.startswith("cartan["):
                head, rhs = line.split("=", 1)
                cartan[int(head.strip()[7:-1])] = _parse_terms(rhs)
            elif line.startswith("bracket["):
                head, rhs = line.split("=", 1)
                i, j = (int(s) for s in head.strip()[8:-1].split("]["))
                v = _parse_terms(rhs)
                if i >= j:
                    raise ValueError("bracket entries must have i < j")
                pairs[(i, j)] = v
                line_of[(i, j)] = lineno
            else:
                raise ValueError(f"unrecognized line {line!r}")
        except (ValueError, ZeroDivisionError) as exc:
            raise QuadrupleFormatError(str(exc), where) from None
    if dim is None:
        raise QuadrupleFormatError("missing dim= line", "line 1")
    for (i, j), v in pairs.items():
        if j >= dim or any(k >= dim or k < 0 for k in v):
            raise QuadrupleFormatError(f"index out of range in bracket[{i}][{j}]", f"line {line_of[(i, j)]}")
    if weights and sorted(weights) != list(range(dim)):
        raise QuadrupleFormatError("weight lines must cover every basis index")
    w = [weights[i] for i in range(dim)] if weights else None
    h = [cartan[i] for i in range(len(cartan))] if cartan else None
    if cartan and sorted(cartan) != list(range(len(cartan))):
        raise QuadrupleFormatError("cartan lines must be numbered 0..r-1")
    return LieAlgebra.from_pairs(dim, pairs, weights=w, cartan=h)
