"""Brute-force oracle: (di)derivation spaces as exact rational nullspaces.

The Leibniz identities are linear in the unknown operator entries, so each
space is the kernel of a sparse constraint system over Q.  Rows are
generated lazily per basis pair and streamed into an integer Gaussian
elimination; every pivot row is normalized to a primitive integer vector
(gcd 1, positive leading entry), which keeps coefficient growth tame and
makes the echelon form, and hence every result, bit-reproducible.

Unknown ordering: operator entry M[r][c] is unknown r * n + c (row-major,
matching LinOp.flat()).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Iterator, Sequence

from .algebras import FiniteAlgebra
from .dialgebras import Dialgebra
from .operators import LinOp, operator_from_flat
from .scalars import Scalar
from .util import ContractViolation

Row = dict[int, int]
RowMeta = tuple  # (identity, *indices) that produced the row


@dataclass
class ConstraintSystem:
    """A homogeneous linear system; rows may be a one-shot generator."""

    unknowns: int
    rows: Iterable[tuple[Row, RowMeta]]
    space_dim: int | None = None  # set when unknowns = space_dim**2 (operator space)
    space_tag: str = ""
    kind: str = ""


@dataclass(frozen=True)
class SubspaceBasis:
    """Kernel basis in reduced form: vector i is the unique basis element
    with a nonzero entry at its own free column and zeros at the others."""

    dimension: int
    basis_ops: tuple[LinOp, ...]
    vectors: tuple[tuple[int, ...], ...]
    free_cols: tuple[int, ...]
    space_tag: str
    kind: str

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "space_tag": self.space_tag,
            "dimension": self.dimension,
            "basis": [op.to_json() for op in self.basis_ops],
        }


def _normalize(row: Row) -> Row:
    g = 0
    for v in row.values():
        g = gcd(g, v)
    if g > 1:
        row = {c: v // g for c, v in row.items()}
    if row and row[min(row)] < 0:
        row = {c: -v for c, v in row.items()}
    return row


class _Echelon:
    """Incremental integer echelon form with leftmost-column pivoting."""

    def __init__(self):
        self.pivots: dict[int, Row] = {}

    def reduce(self, row: Row) -> Row:
        while row:
            lead = min(row)
            pivot = self.pivots.get(lead)
            if pivot is None:
                return _normalize(row)
            a, b = row[lead], pivot[lead]
            new = {c: b * v for c, v in row.items()}
            for c, v in pivot.items():
                w = new.get(c, 0) - a * v
                if w:
                    new[c] = w
                elif c in new:
                    del new[c]
            row = _normalize(new)
        return row

    def insert(self, row: Row) -> None:
        self.pivots[min(row)] = row

    def add(self, row: Row) -> bool:
        """Reduce and keep the row; True when it added rank."""
        reduced = self.reduce(row)
        if reduced:
            self.insert(reduced)
            return True
        return False

    def rref(self) -> None:
        """Back-substitute so every pivot column is zero in the other rows."""
        for c in sorted(self.pivots, reverse=True):
            pivot = self.pivots[c]
            for c2, other in self.pivots.items():
                if c2 == c or c not in other:
                    continue
                a, b = other[c], pivot[c]
                new = {col: b * v for col, v in other.items()}
                for col, v in pivot.items():
                    w = new.get(col, 0) - a * v
                    if w:
                        new[col] = w
                    elif col in new:
                        del new[col]
                self.pivots[c2] = _normalize(new)

    def kernel(self, n: int) -> tuple[list[tuple[int, ...]], list[int]]:
        """Primitive integer kernel basis, one vector per free column."""
        self.rref()
        pivot_cols = set(self.pivots)
        free = [c for c in range(n) if c not in pivot_cols]
        basis = []
        for f in free:
            entries: dict[int, Fraction] = {f: Fraction(1)}
            for c, row in self.pivots.items():
                if f in row:
                    entries[c] = Fraction(-row[f], row[c])
            scale = lcm(*(v.denominator for v in entries.values()))
            vec = [0] * n
            for c, v in entries.items():
                vec[c] = int(v * scale)
            g = 0
            for v in vec:
                g = gcd(g, v)
            if g > 1:
                vec = [v // g for v in vec]
            basis.append(tuple(vec))
        return basis, free


def _int_row(row: dict[int, Scalar]) -> Row:
    """Clear denominators and drop zeros; rows stay exact integers."""
    cleaned = {c: Fraction(v) for c, v in row.items() if v}
    if not cleaned:
        return {}
    scale = lcm(*(v.denominator for v in cleaned.values()))
    return {c: int(v * scale) for c, v in cleaned.items()}


def nullspace(system: ConstraintSystem) -> SubspaceBasis:
    """Exact kernel basis of the streamed constraint system."""
    ech = _Echelon()
    for row, _meta in system.rows:
        int_row = _int_row(row)
        if int_row:
            ech.add(int_row)
    vectors, free = ech.kernel(system.unknowns)
    ops: tuple[LinOp, ...] = ()
    if system.space_dim is not None:
        if system.space_dim ** 2 != system.unknowns:
            raise ContractViolation("space_dim does not match unknown count")
        ops = tuple(operator_from_flat(v, system.space_dim, system.space_tag)
                    for v in vectors)
    return SubspaceBasis(
        dimension=len(vectors),
        basis_ops=ops,
        vectors=tuple(vectors),
        free_cols=tuple(free),
        space_tag=system.space_tag,
        kind=system.kind,
    )


# ---------------------------------------------------------------------------
# constraint generators
# ---------------------------------------------------------------------------

def _reverse_tables(table, n: int):
    """revL[j][m] = [(m', c)] with e_m' * e_j having coefficient c at e_m,
    revR[i][m] likewise for e_i * e_m'."""
    revL = [dict() for _ in range(n)]
    revR = [dict() for _ in range(n)]
    for a in range(n):
        for b in range(n):
            for m, c in table[a][b]:
                revL[b].setdefault(m, []).append((a, c))
                revR[a].setdefault(m, []).append((b, c))
    return revL, revR


def _leibniz_rows(identity: str, table, revL, revR, n: int,
                  first_col_own: bool = True) -> Iterator[tuple[Row, RowMeta]]:
    """Rows of d(e_i e_j) - d(e_i) e_j - e_i d(e_j) = 0 per output coord."""
    for i in range(n):
        for j in range(n):
            prod = table[i][j]
            if prod:
                coords = range(n)
            else:
                coords = sorted(set(revL[j]) | set(revR[i]))
            for m in coords:
                row: dict[int, Scalar] = {}
                for k, c in prod:
                    row[m * n + k] = row.get(m * n + k, 0) + c
                for mp, c in revL[j].get(m, ()):  # (d e_i) e_j
                    u = mp * n + i
                    row[u] = row.get(u, 0) - c
                for mp, c in revR[i].get(m, ()):  # e_i (d e_j)
                    u = mp * n + j
                    row[u] = row.get(u, 0) - c
                if row:
                    yield row, (identity, i, j, m)


def derivation_system(D: Dialgebra) -> ConstraintSystem:
    n = D.space_dim

    def rows():
        for name, table in (("leibniz_left", D.left_prod),
                            ("leibniz_right", D.right_prod)):
            revL, revR = _reverse_tables(table, n)
            yield from _leibniz_rows(name, table, revL, revR, n)

    return ConstraintSystem(n * n, rows(), space_dim=n, space_tag=D.name,
                            kind="derivation")


def diderivation_system(D: Dialgebra,
                        identities: tuple[str, ...] = ("left", "right")) -> ConstraintSystem:
    """Constraints delta(x * y) = delta(x) -| y + x |- delta(y) with * ranging
    over the products named in ``identities`` ("left" for |-, "right" for -|).
    The default enforces both equalities; passing a single name probes
    whether one of them is redundant."""
    n = D.space_dim
    revL_rt, _ = _reverse_tables(D.right_prod, n)   # delta(x) -| y
    _, revR_lt = _reverse_tables(D.left_prod, n)    # x |- delta(y)

    def rows():
        for name in identities:
            table = D.left_prod if name == "left" else D.right_prod
            for i in range(n):
                for j in range(n):
                    prod = table[i][j]
                    if prod:
                        coords = range(n)
                    else:
                        coords = sorted(set(revL_rt[j]) | set(revR_lt[i]))
                    for m in coords:
                        row: dict[int, Scalar] = {}
                        for k, c in prod:
                            row[m * n + k] = row.get(m * n + k, 0) + c
                        for mp, c in revL_rt[j].get(m, ()):
                            u = mp * n + i
                            row[u] = row.get(u, 0) - c
                        for mp, c in revR_lt[i].get(m, ()):
                            u = mp * n + j
                            row[u] = row.get(u, 0) - c
                        if row:
                            yield row, (f"dider_{name}_product", i, j, m)

    return ConstraintSystem(n * n, rows(), space_dim=n, space_tag=D.name,
                            kind="diderivation")


def algebra_derivation_system(A: FiniteAlgebra, kind: str) -> ConstraintSystem:
    n = A.dim
    revL, revR = _reverse_tables(A.table, n)

    def rows():
        for i in range(n):
            for j in range(n):
                prod = A.table[i][j]
                if prod:
                    coords = range(n)
                else:
                    coords = sorted(set(revL[j]) | set(revR[i]) | set(revL[i]) | set(revR[j]))
                for m in coords:
                    row: dict[int, Scalar] = {}
                    for k, c in prod:
                        row[m * n + k] = row.get(m * n + k, 0) + c
                    if kind == "two_sided":
                        terms = ((revL[j], i), (revR[i], j))    # d(x)y + x d(y)
                    elif kind == "left":
                        terms = ((revR[i], j), (revR[j], i))    # x d(y) + y d(x)
                    elif kind == "right":
                        terms = ((revL[j], i), (revL[i], j))    # d(x)y + d(y)x
                    else:
                        raise ContractViolation(f"unknown derivation kind {kind!r}")
                    for rev, col in terms:
                        for mp, c in rev.get(m, ()):
                            u = mp * n + col
                            row[u] = row.get(u, 0) - c
                    if row:
                        yield row, (f"{kind}_leibniz", i, j, m)

    return ConstraintSystem(n * n, rows(), space_dim=n, space_tag=A.name,
                            kind=f"{kind}_derivation")


def derivation_space(D: Dialgebra) -> SubspaceBasis:
    """Der(D): simultaneous derivations of both products."""
    return nullspace(derivation_system(D))


def diderivation_space(D: Dialgebra,
                       identities: tuple[str, ...] = ("left", "right")) -> SubspaceBasis:
    """Dider(D): both diderivation equalities (or a chosen subset)."""
    return nullspace(diderivation_system(D, identities))


def algebra_derivation_space(A: FiniteAlgebra, kind: str = "two_sided") -> SubspaceBasis:
    """Der / LDer / RDer of a one-product algebra."""
    return nullspace(algebra_derivation_system(A, kind))


# ---------------------------------------------------------------------------
# span queries
# ---------------------------------------------------------------------------

def span_contains(B: SubspaceBasis, op: LinOp) -> tuple[bool, dict]:
    """Exact membership of op in span(B) with a certificate.

    On success the certificate carries the rational coefficients against
    B's basis; on failure it names a separating coordinate (an unknown
    index where the residual is provably nonzero).
    """
    if op.domain_tag != B.space_tag or op.codomain_tag != B.space_tag:
        raise ContractViolation(
            f"operator tagged {op.domain_tag!r} is not in space {B.space_tag!r}")
    v = [Fraction(c) for c in op.flat()]
    coeffs = []
    for vec, f in zip(B.vectors, B.free_cols):
        coeff = v[f] / vec[f]
        coeffs.append(coeff)
        if coeff:
            v = [a - coeff * b for a, b in zip(v, vec)]
    for idx, a in enumerate(v):
        if a:
            return False, {"separating_index": idx, "residual_value": a}
    return True, {"coefficients": coeffs}


def span_rank(flats: Sequence[Sequence[Scalar]]) -> int:
    """Rank of a family of flattened operators (exact)."""
    ech = _Echelon()
    rank = 0
    for flat in flats:
        row = _int_row({i: c for i, c in enumerate(flat) if c})
        if row and ech.add(row):
            rank += 1
    return rank


def center_space(A: FiniteAlgebra) -> list[tuple[int, ...]]:
    """Primitive integer basis of the center Z(A) (elements commuting with
    every basis vector).  Used to weight component families when A is not
    commutative."""
    n = A.dim
    ech = _Echelon()
    for j in range(n):
        per_coord: dict[int, dict[int, Scalar]] = {}
        for i in range(n):
            for m, c in A.table[i][j]:
                per_coord.setdefault(m, {})[i] = per_coord.setdefault(m, {}).get(i, 0) + c
            for m, c in A.table[j][i]:
                per_coord.setdefault(m, {})[i] = per_coord.setdefault(m, {}).get(i, 0) - c
        for m in sorted(per_coord):
            row = _int_row(per_coord[m])
            if row:
                ech.add(row)
    vectors, _free = ech.kernel(n)
    return vectors
