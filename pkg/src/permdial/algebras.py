"""Finite-dimensional algebras by structure constants, plus a stock catalog.

An algebra is a labeled basis with a full product table.  The table is kept
sparse per basis pair ((k, coeff) entries) because every algebra we build
has near-monomial products, but the public accessor hands out dense
coordinate vectors.  Everything is immutable after construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .reports import Report
from .scalars import Scalar, as_scalar, format_scalar, parse_scalar
from .util import ContractViolation, FormatError, expect

ASSOCIATIVE = "associative"
LEFT_PERM = "left_perm"
RIGHT_PERM = "right_perm"
FLAVORS = (ASSOCIATIVE, LEFT_PERM, RIGHT_PERM)

# one basis-pair product: tuple of (basis index, coefficient)
SparseVec = tuple[tuple[int, Scalar], ...]


@dataclass(frozen=True)
class FiniteAlgebra:
    name: str
    dim: int
    basis_labels: tuple[str, ...]
    table: tuple[tuple[SparseVec, ...], ...]  # table[i][j] = e_i * e_j
    unit: tuple[Scalar, ...] | None
    flavor: str

    def __post_init__(self):
        if self.dim < 1 or len(self.basis_labels) != self.dim:
            raise ContractViolation(f"{self.name}: bad basis of size {len(self.basis_labels)}")
        if self.flavor not in FLAVORS:
            raise ContractViolation(f"{self.name}: unknown flavor {self.flavor!r}")
        if len(self.table) != self.dim or any(len(row) != self.dim for row in self.table):
            raise ContractViolation(f"{self.name}: product table must cover all basis pairs")
        if self.unit is not None and len(self.unit) != self.dim:
            raise ContractViolation(f"{self.name}: unit vector has wrong length")

    def structure_vector(self, i: int, j: int) -> list[Scalar]:
        """Dense coordinate vector of e_i * e_j."""
        out = [Fraction(0)] * self.dim
        for k, c in self.table[i][j]:
            out[k] = c
        return out

    def basis_vector(self, i: int) -> list[Scalar]:
        out = [Fraction(0)] * self.dim
        out[i] = Fraction(1)
        return out

    def mul(self, v: Sequence[Scalar], w: Sequence[Scalar]) -> list[Scalar]:
        return algebra_mul(self, v, w)

    def label_index(self, label: str) -> int:
        try:
            return self.basis_labels.index(label)
        except ValueError:
            raise ContractViolation(f"{self.name}: no basis element {label!r}") from None

    def element(self, coeffs: Mapping[str, object]) -> list[Scalar]:
        """Coordinate vector from a {label: coefficient} mapping."""
        out = [Fraction(0)] * self.dim
        for label, c in coeffs.items():
            out[self.label_index(label)] += as_scalar(c)
        return out


def make_algebra(name: str, labels: Sequence[str],
                 products: Mapping[tuple[int, int], Mapping[int, object]],
                 unit: Sequence[object] | None = None,
                 flavor: str = ASSOCIATIVE) -> FiniteAlgebra:
    """Build a FiniteAlgebra from sparse products; missing pairs are zero."""
    dim = len(labels)
    table = []
    for i in range(dim):
        row = []
        for j in range(dim):
            entries = products.get((i, j), {})
            cleaned = tuple(sorted((k, as_scalar(c)) for k, c in entries.items()
                                   if as_scalar(c)))
            for k, _ in cleaned:
                if not 0 <= k < dim:
                    raise ContractViolation(f"{name}: product ({i},{j}) hits index {k}")
            row.append(cleaned)
        table.append(tuple(row))
    unit_vec = tuple(as_scalar(c) for c in unit) if unit is not None else None
    return FiniteAlgebra(name, dim, tuple(labels), tuple(table), unit_vec, flavor)


def algebra_mul(A: FiniteAlgebra, v: Sequence[Scalar], w: Sequence[Scalar]) -> list[Scalar]:
    """Bilinear extension of the structure constants, exactly."""
    if len(v) != A.dim or len(w) != A.dim:
        raise ContractViolation(
            f"{A.name}: vector lengths {len(v)}, {len(w)} do not match dim {A.dim}")
    out = [Fraction(0)] * A.dim
    table = A.table
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


def _sparse_mul(A: FiniteAlgebra, sv: SparseVec, j_side: int, left: bool) -> dict[int, Scalar]:
    """Product of a sparse vector with a basis element (basis on the given side)."""
    out: dict[int, Scalar] = {}
    for i, c in sv:
        entries = A.table[i][j_side] if left else A.table[j_side][i]
        for k, ck in entries:
            out[k] = out.get(k, Fraction(0)) + c * ck
    return {k: c for k, c in out.items() if c}


def validate_associative(A: FiniteAlgebra) -> Report:
    """Check (e_i e_j) e_l = e_i (e_j e_l) on every basis triple."""
    report = Report(subject=f"associativity of {A.name}")
    for i in range(A.dim):
        for j in range(A.dim):
            left_ij = A.table[i][j]
            for l in range(A.dim):
                lhs = _sparse_mul(A, left_ij, l, left=True)
                rhs = _sparse_mul(A, A.table[j][l], i, left=False)
                report.checked += 1
                if lhs != rhs:
                    diff = [lhs.get(k, 0) - rhs.get(k, 0) for k in range(A.dim)]
                    report.add("associativity", (i, j, l), diff)
    return report


def validate_perm(A: FiniteAlgebra, side: str) -> Report:
    """Check the chosen permutative identity on every basis triple.

    left:  (x y) z = (y x) z      right:  x (y z) = x (z y)
    """
    if side not in ("left", "right"):
        raise ContractViolation(f"side must be 'left' or 'right', got {side!r}")
    report = Report(subject=f"{side} perm identity of {A.name}")
    for i in range(A.dim):
        for j in range(A.dim):
            for l in range(A.dim):
                if side == "left":
                    lhs = _sparse_mul(A, A.table[i][j], l, left=True)
                    rhs = _sparse_mul(A, A.table[j][i], l, left=True)
                else:
                    lhs = _sparse_mul(A, A.table[j][l], i, left=False)
                    rhs = _sparse_mul(A, A.table[l][j], i, left=False)
                report.checked += 1
                if lhs != rhs:
                    diff = [lhs.get(k, 0) - rhs.get(k, 0) for k in range(A.dim)]
                    report.add(f"{side}_perm", (i, j, l), diff)
    return report


def validate_unit(A: FiniteAlgebra) -> Report:
    """Check both unit laws on every basis element (if a unit is declared)."""
    report = Report(subject=f"unit laws of {A.name}")
    if A.unit is None:
        report.add("unit_declared", (), ())
        return report
    unit = list(A.unit)
    for j in range(A.dim):
        e = A.basis_vector(j)
        report.checked += 2
        left = algebra_mul(A, unit, e)
        if left != e:
            report.add("left_unit", (j,), [a - b for a, b in zip(left, e)])
        right = algebra_mul(A, e, unit)
        if right != e:
            report.add("right_unit", (j,), [a - b for a, b in zip(right, e)])
    return report


def validators_for(A: FiniteAlgebra) -> list[Report]:
    """The validator set the flavor tag demands (perm flavors imply associativity)."""
    reports = [validate_associative(A)]
    if A.flavor == LEFT_PERM:
        reports.append(validate_perm(A, "left"))
    elif A.flavor == RIGHT_PERM:
        reports.append(validate_perm(A, "right"))
    if A.unit is not None:
        reports.append(validate_unit(A))
    return reports


def is_commutative(A: FiniteAlgebra) -> bool:
    return all(A.table[i][j] == A.table[j][i]
               for i in range(A.dim) for j in range(A.dim))


# ---------------------------------------------------------------------------
# catalog
# ---------------------------------------------------------------------------

def perm_quotient(N: int) -> FiniteAlgebra:
    """The evaluation-at-zero perm algebra on Q[x]/(x^(N+1)).

    Product x^i o x^j = x^j if i == 0 else 0.  The constant 1 is a left
    unit only, so no (two-sided) unit is declared.
    """
    if N < 0:
        raise ContractViolation("truncation degree must be non-negative")
    labels = ["1"] + [f"x^{i}" if i > 1 else "x" for i in range(1, N + 1)]
    products = {(0, j): {j: 1} for j in range(N + 1)}
    return make_algebra(f"P0[{N}]", labels, products, unit=None, flavor=LEFT_PERM)


def truncated_poly(n: int) -> FiniteAlgebra:
    """The commutative quotient Q[t]/(t^n), dimension n >= 1."""
    if n < 1:
        raise ContractViolation("truncated_poly needs n >= 1")
    labels = ["1"] + [f"t^{i}" if i > 1 else "t" for i in range(1, n)]
    products = {(i, j): {i + j: 1} for i in range(n) for j in range(n) if i + j < n}
    unit = [1] + [0] * (n - 1)
    return make_algebra(f"k[t]/t^{n}", labels, products, unit=unit)


def matrix_algebra(n: int) -> FiniteAlgebra:
    """Full matrix algebra M_n(Q) on the matrix-unit basis E_rc."""
    if n < 1:
        raise ContractViolation("matrix_algebra needs n >= 1")
    labels = [f"E{r + 1}{c + 1}" for r in range(n) for c in range(n)]
    idx = lambda r, c: r * n + c
    products = {}
    for a in range(n):
        for b in range(n):
            for c in range(n):
                for d in range(n):
                    if b == c:
                        products[(idx(a, b), idx(c, d))] = {idx(a, d): 1}
    unit = [0] * (n * n)
    for r in range(n):
        unit[idx(r, r)] = 1
    return make_algebra(f"M{n}", labels, products, unit=unit)


def group_algebra_c2() -> FiniteAlgebra:
    """The group algebra of the two-element group: g * g = 1."""
    products = {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}, (1, 1): {0: 1}}
    return make_algebra("k[C2]", ["1", "g"], products, unit=[1, 0])


def rationals_algebra() -> FiniteAlgebra:
    """The base field Q as a one-dimensional unital algebra."""
    return make_algebra("k", ["1"], {(0, 0): {0: 1}}, unit=[1])


def tensor_algebra(A: FiniteAlgebra, B: FiniteAlgebra) -> FiniteAlgebra:
    """Tensor product with the componentwise product (a(x)f)(b(x)g) = ab(x)fg.

    Basis pair (i, j) sits at flat index i * B.dim + j.  When A is left perm
    and B is commutative associative the result is again left perm; the
    flavor tag is inherited from A and the validators confirm it.
    """
    dim_b = B.dim
    labels = [f"{la}⊗{lb}" for la in A.basis_labels for lb in B.basis_labels]
    products: dict[tuple[int, int], dict[int, Scalar]] = {}
    for i1 in range(A.dim):
        for i2 in range(A.dim):
            a_entries = A.table[i1][i2]
            if not a_entries:
                continue
            for j1 in range(dim_b):
                for j2 in range(dim_b):
                    b_entries = B.table[j1][j2]
                    if not b_entries:
                        continue
                    cell: dict[int, Scalar] = {}
                    for ka, ca in a_entries:
                        for kb, cb in b_entries:
                            cell[ka * dim_b + kb] = ca * cb
                    products[(i1 * dim_b + j1, i2 * dim_b + j2)] = cell
    unit = None
    if A.unit is not None and B.unit is not None:
        unit = [ca * cb for ca in A.unit for cb in B.unit]
    return make_algebra(f"{A.name}⊗{B.name}", labels, products, unit=unit,
                        flavor=A.flavor)


def perm_window_algebra(n1: int, n2: int) -> FiniteAlgebra:
    """The truncated two-slot perm algebra P0[n1] (x) Q[t]/(t^(n2+1)).

    Monomial x^(i1) (x) x^(i2) sits at flat index i1 * (n2 + 1) + i2.
    """
    if n1 < 0 or n2 < 0:
        raise ContractViolation("window components must be non-negative")
    return tensor_algebra(perm_quotient(n1), truncated_poly(n2 + 1))


CATALOG = {
    "q": rationals_algebra,
    "t3": lambda: truncated_poly(3),
    "m2": lambda: matrix_algebra(2),
    "c2": group_algebra_c2,
}


def catalog_algebra(key: str) -> FiniteAlgebra:
    try:
        return CATALOG[key]()
    except KeyError:
        raise FormatError(
            f"unknown catalog algebra {key!r}; known: {sorted(CATALOG)}") from None


# ---------------------------------------------------------------------------
# interchange
# ---------------------------------------------------------------------------

def algebra_to_json(A: FiniteAlgebra) -> dict:
    structure = []
    for i in range(A.dim):
        for j in range(A.dim):
            for k, c in A.table[i][j]:
                structure.append([i, j, k, format_scalar(c)])
    return {
        "name": A.name,
        "flavor": A.flavor,
        "dim": A.dim,
        "basis": list(A.basis_labels),
        "unit": [format_scalar(c) for c in A.unit] if A.unit is not None else None,
        "structure": structure,
    }


def algebra_from_json(doc: dict) -> FiniteAlgebra:
    name = expect(doc, "name", str, "algebra")
    flavor = expect(doc, "flavor", str, "algebra")
    if flavor not in FLAVORS:
        raise FormatError(f"algebra {name}: unknown flavor {flavor!r}")
    dim = expect(doc, "dim", int, "algebra")
    basis = expect(doc, "basis", list, "algebra")
    if dim < 1 or len(basis) != dim or not all(isinstance(b, str) for b in basis):
        raise FormatError(f"algebra {name}: basis does not match dim")
    unit_doc = doc.get("unit")
    unit = None
    if unit_doc is not None:
        if not isinstance(unit_doc, list) or len(unit_doc) != dim:
            raise FormatError(f"algebra {name}: unit has wrong shape")
        unit = [parse_scalar(c) for c in unit_doc]
    products: dict[tuple[int, int], dict[int, Scalar]] = {}
    for entry in expect(doc, "structure", list, "algebra"):
        if (not isinstance(entry, list) or len(entry) != 4
                or not all(isinstance(e, int) for e in entry[:3])):
            raise FormatError(f"algebra {name}: bad structure entry {entry!r}")
        i, j, k, c = entry
        if not all(0 <= e < dim for e in (i, j, k)):
            raise FormatError(f"algebra {name}: structure index out of range: {entry!r}")
        cell = products.setdefault((i, j), {})
        if k in cell:
            raise FormatError(f"algebra {name}: duplicate structure entry at {entry[:3]}")
        cell[k] = parse_scalar(c)
    try:
        return make_algebra(name, basis, products, unit=unit, flavor=flavor)
    except ContractViolation as exc:
        raise FormatError(f"algebra {name}: {exc}") from exc
