"""Tensor-product dialgebras built from a left perm algebra and a unital algebra.

The two products on P (x) A are

    (p (x) a) |- (q (x) b) = (p o q) (x) ab
    (p (x) a) -| (q (x) b) = (q o p) (x) ab

i.e. the perm factors multiply in argument order for |- and swapped for -|,
while the algebra factors always multiply in argument order.  Together with
associativity of both operations this satisfies the three dialgebra
compatibility axioms whenever P is associative left perm and A associative.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .algebras import (FiniteAlgebra, SparseVec, algebra_from_json,
                       algebra_mul, algebra_to_json, validate_associative,
                       validate_perm, validate_unit)
from .reports import Report
from .scalars import Scalar, as_scalar, format_scalar, parse_scalar
from .util import ContractViolation, FormatError, expect, parallel_map

LEFT = "left"    # |-
RIGHT = "right"  # -|
PRODUCTS = (LEFT, RIGHT)


@dataclass(frozen=True)
class Provenance:
    """How a KP dialgebra was built: the factors and the truncation window."""

    perm: FiniteAlgebra
    alg: FiniteAlgebra
    window: tuple[int, int] | None  # (N1, N2) for the two-slot perm factor

    def to_json(self) -> dict:
        return {
            "perm": self.perm.name,
            "algebra": self.alg.name,
            "window": list(self.window) if self.window is not None else None,
        }


@dataclass(frozen=True)
class Dialgebra:
    name: str
    space_dim: int
    basis_labels: tuple[str, ...]
    left_prod: tuple[tuple[SparseVec, ...], ...]
    right_prod: tuple[tuple[SparseVec, ...], ...]
    provenance: Provenance | None

    def table(self, product: str):
        if product == LEFT:
            return self.left_prod
        if product == RIGHT:
            return self.right_prod
        raise ContractViolation(f"unknown product {product!r}")

    def basis_vector(self, i: int) -> list[Scalar]:
        out = [Fraction(0)] * self.space_dim
        out[i] = Fraction(1)
        return out

    def mul(self, product: str, v: Sequence[Scalar], w: Sequence[Scalar]) -> list[Scalar]:
        return dialgebra_mul(self, product, v, w)

    def label_index(self, label: str) -> int:
        try:
            return self.basis_labels.index(label)
        except ValueError:
            raise ContractViolation(f"{self.name}: no basis element {label!r}") from None

    def element(self, coeffs: Mapping[str, object]) -> "DialgebraElement":
        out = [Fraction(0)] * self.space_dim
        for label, c in coeffs.items():
            out[self.label_index(label)] += as_scalar(c)
        return DialgebraElement(tuple(out))


@dataclass(frozen=True)
class DialgebraElement:
    coords: tuple[Scalar, ...]


def coords_of(value) -> Sequence[Scalar]:
    """Accept either a DialgebraElement or a raw coordinate sequence."""
    return value.coords if isinstance(value, DialgebraElement) else value


def dialgebra_mul(D: Dialgebra, product: str, v, w) -> list[Scalar]:
    v = coords_of(v)
    w = coords_of(w)
    if len(v) != D.space_dim or len(w) != D.space_dim:
        raise ContractViolation(f"{D.name}: element length does not match dim {D.space_dim}")
    table = D.table(product)
    out = [Fraction(0)] * D.space_dim
    for i, vi in enumerate(v):
        if not vi:
            continue
        row = table[i]
        for j, wj in enumerate(w):
            if not wj:
                continue
            s = vi * wj
            for k, c in row[j]:
                out[k] += s * c
    return out


def kp_dialgebra(P: FiniteAlgebra, A: FiniteAlgebra,
                 window: tuple[int, int] | None = None) -> Dialgebra:
    """Build the tensor-product dialgebra on P (x) A.

    Refuses to construct unless P is verified associative + left perm and A
    is verified associative with a two-sided unit; the failed validator
    report rides along on the raised error.

    Basis pair (perm index p, algebra index k) sits at flat p * A.dim + k.
    """
    for rep in (validate_associative(P), validate_perm(P, "left")):
        if not rep.passed:
            raise ContractViolation(f"perm factor rejected: {rep.summary()}", report=rep)
    for rep in (validate_associative(A), validate_unit(A)):
        if not rep.passed:
            raise ContractViolation(f"algebra factor rejected: {rep.summary()}", report=rep)

    dim = P.dim * A.dim
    labels = [f"{lp}⊗{la}" for lp in P.basis_labels for la in A.basis_labels]

    def build(swap_perm: bool):
        rows = []
        for p1 in range(P.dim):
            for k1 in range(A.dim):
                row = []
                for p2 in range(P.dim):
                    perm_entries = P.table[p2][p1] if swap_perm else P.table[p1][p2]
                    for k2 in range(A.dim):
                        cell = []
                        for mp, cp in perm_entries:
                            for mk, ck in A.table[k1][k2]:
                                cell.append((mp * A.dim + mk, cp * ck))
                        row.append(tuple(sorted(cell)))
                rows.append(tuple(row))
        return tuple(rows)

    return Dialgebra(
        name=f"KP({P.name},{A.name})",
        space_dim=dim,
        basis_labels=tuple(labels),
        left_prod=build(swap_perm=False),
        right_prod=build(swap_perm=True),
        provenance=Provenance(P, A, window),
    )


def kp_window_dialgebra(n1: int, n2: int, A: FiniteAlgebra) -> Dialgebra:
    """The standard instance at truncation window (n1, n2).

    n2 = 0 collapses the second slot to the scalars, which is exactly the
    single-slot dialgebra P0[n1] (x) A; both shapes share this entry point.
    """
    from .algebras import perm_window_algebra
    return kp_dialgebra(perm_window_algebra(n1, n2), A, window=(n1, n2))


def dialgebra_from_associative(A: FiniteAlgebra) -> Dialgebra:
    """Degenerate dialgebra with |- = -| = the algebra product."""
    rep = validate_associative(A)
    if not rep.passed:
        raise ContractViolation(f"factor rejected: {rep.summary()}", report=rep)
    return Dialgebra(
        name=f"Di({A.name})",
        space_dim=A.dim,
        basis_labels=A.basis_labels,
        left_prod=A.table,
        right_prod=A.table,
        provenance=None,
    )


def _sparse_dimul(D: Dialgebra, product: str, sv: SparseVec, j: int,
                  basis_on_right: bool) -> dict[int, Scalar]:
    out: dict[int, Scalar] = {}
    table = D.table(product)
    for i, c in sv:
        entries = table[i][j] if basis_on_right else table[j][i]
        for k, ck in entries:
            out[k] = out.get(k, Fraction(0)) + c * ck
    return {k: c for k, c in out.items() if c}


def validate_dialgebra(D: Dialgebra) -> Report:
    """Check all five dialgebra identities on every basis triple.

    Associativity of each product plus the three compatibility axioms:

        x -| (y -| z) = x -| (y |- z)
        (x -| y) |- z = (x |- y) |- z
        x |- (y -| z) = (x |- y) -| z
    """
    n = D.space_dim
    lt, rt = D.left_prod, D.right_prod

    def check_row(i: int) -> Report:
        rep = Report(subject=f"dialgebra axioms of {D.name}")
        for j in range(n):
            ij_l = lt[i][j]
            ij_r = rt[i][j]
            for l in range(n):
                jl_l = lt[j][l]
                jl_r = rt[j][l]
                cases = (
                    ("assoc_left",
                     _sparse_dimul(D, LEFT, ij_l, l, True),
                     _sparse_dimul(D, LEFT, jl_l, i, False)),
                    ("assoc_right",
                     _sparse_dimul(D, RIGHT, ij_r, l, True),
                     _sparse_dimul(D, RIGHT, jl_r, i, False)),
                    ("bar_inner",   # x -| (y -| z) = x -| (y |- z)
                     _sparse_dimul(D, RIGHT, jl_r, i, False),
                     _sparse_dimul(D, RIGHT, jl_l, i, False)),
                    ("bar_left",    # (x -| y) |- z = (x |- y) |- z
                     _sparse_dimul(D, LEFT, ij_r, l, True),
                     _sparse_dimul(D, LEFT, ij_l, l, True)),
                    ("bar_mixed",   # x |- (y -| z) = (x |- y) -| z
                     _sparse_dimul(D, LEFT, jl_r, i, False),
                     _sparse_dimul(D, RIGHT, ij_l, l, True)),
                )
                for identity, lhs, rhs in cases:
                    rep.checked += 1
                    if lhs != rhs:
                        diff = [lhs.get(k, 0) - rhs.get(k, 0) for k in range(n)]
                        rep.add(identity, (i, j, l), diff)
        return rep

    report = Report(subject=f"dialgebra axioms of {D.name}")
    for part in parallel_map(check_row, range(n)):
        report.merge(part)
    return report


def is_bar_unit(D: Dialgebra, element) -> bool:
    """True when element |- v = v for every basis vector v."""
    e = list(coords_of(element))
    for j in range(D.space_dim):
        if dialgebra_mul(D, LEFT, e, D.basis_vector(j)) != D.basis_vector(j):
            return False
    return True


def find_bar_units(D: Dialgebra) -> list[tuple[str, DialgebraElement]]:
    """All left units for |- among basis elements.

    For KP-built instances the probe set also includes the composites
    (perm basis monomial) (x) 1_A, since the algebra unit need not be a
    basis vector (M_n being the obvious case).
    """
    candidates: list[tuple[str, list[Scalar]]] = [
        (D.basis_labels[i], D.basis_vector(i)) for i in range(D.space_dim)
    ]
    if D.provenance is not None and D.provenance.alg.unit is not None:
        P, A = D.provenance.perm, D.provenance.alg
        for p in range(P.dim):
            vec = [Fraction(0)] * D.space_dim
            for k, c in enumerate(A.unit):
                vec[p * A.dim + k] = c
            candidates.append((f"{P.basis_labels[p]}⊗1", vec))
    units = []
    seen = set()
    for label, vec in candidates:
        key = tuple(vec)
        if key in seen:
            continue
        seen.add(key)
        if is_bar_unit(D, vec):
            units.append((label, DialgebraElement(key)))
    return units


# ---------------------------------------------------------------------------
# interchange
# ---------------------------------------------------------------------------

def _table_to_json(table) -> list[list]:
    out = []
    for i, row in enumerate(table):
        for j, cell in enumerate(row):
            for k, c in cell:
                out.append([i, j, k, format_scalar(c)])
    return out


def dialgebra_to_json(D: Dialgebra) -> dict:
    return {
        "name": D.name,
        "dim": D.space_dim,
        "basis": list(D.basis_labels),
        "left_prod": _table_to_json(D.left_prod),
        "right_prod": _table_to_json(D.right_prod),
        "provenance": D.provenance.to_json() if D.provenance else None,
    }


def _table_from_json(doc: list, dim: int, name: str, field: str):
    cells: dict[tuple[int, int], dict[int, Scalar]] = {}
    for entry in doc:
        if (not isinstance(entry, list) or len(entry) != 4
                or not all(isinstance(e, int) for e in entry[:3])):
            raise FormatError(f"dialgebra {name}: bad {field} entry {entry!r}")
        i, j, k, c = entry
        if not all(0 <= e < dim for e in (i, j, k)):
            raise FormatError(f"dialgebra {name}: {field} index out of range: {entry!r}")
        cell = cells.setdefault((i, j), {})
        if k in cell:
            raise FormatError(f"dialgebra {name}: duplicate {field} entry at {entry[:3]}")
        cell[k] = parse_scalar(c)
    rows = []
    for i in range(dim):
        row = []
        for j in range(dim):
            row.append(tuple(sorted(cells.get((i, j), {}).items())))
        rows.append(tuple(row))
    return tuple(rows)


def dialgebra_from_json(doc: dict) -> Dialgebra:
    """Load a dialgebra document.  Provenance is names-only in a file, so the
    loaded object carries none; rebuild through kp_window_dialgebra when the
    decomposition machinery is needed."""
    name = expect(doc, "name", str, "dialgebra")
    dim = expect(doc, "dim", int, "dialgebra")
    basis = expect(doc, "basis", list, "dialgebra")
    if dim < 1 or len(basis) != dim:
        raise FormatError(f"dialgebra {name}: basis does not match dim")
    left = _table_from_json(expect(doc, "left_prod", list, "dialgebra"), dim, name, "left_prod")
    right = _table_from_json(expect(doc, "right_prod", list, "dialgebra"), dim, name, "right_prod")
    return Dialgebra(name, dim, tuple(basis), left, right, provenance=None)
