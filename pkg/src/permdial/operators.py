"""Exact linear operators and the Leibniz-identity checkers.

Checkers test identities on basis pairs only: the products are bilinear and
the spaces finite-dimensional, so a pass over all basis pairs is a proof at
the given truncation, not a sample.  Reports keep the first 10 violating
witnesses (ordered by basis pair) together with the full violation count.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebras import FiniteAlgebra
from .dialgebras import Dialgebra, LEFT, RIGHT, coords_of, dialgebra_mul
from .reports import Report
from .scalars import Scalar, format_scalar, parse_scalar
from .util import ContractViolation, FormatError, expect, parallel_map

WITNESS_CAP = 10


@dataclass(frozen=True)
class LinOp:
    """Dense exact matrix tied to named domain/codomain spaces."""

    domain_dim: int
    codomain_dim: int
    matrix: tuple[tuple[Scalar, ...], ...]  # codomain_dim rows x domain_dim cols
    domain_tag: str
    codomain_tag: str

    def __post_init__(self):
        if len(self.matrix) != self.codomain_dim or any(
                len(row) != self.domain_dim for row in self.matrix):
            raise ContractViolation("matrix shape does not match declared dims")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Scalar]], tag: str,
                  codomain_tag: str | None = None) -> "LinOp":
        rows = tuple(tuple(r) for r in rows)
        dom = len(rows[0]) if rows else 0
        return cls(dom, len(rows), rows, tag, codomain_tag or tag)

    @classmethod
    def zero(cls, dim: int, tag: str) -> "LinOp":
        return cls(dim, dim, tuple((0,) * dim for _ in range(dim)), tag, tag)

    @classmethod
    def identity(cls, dim: int, tag: str) -> "LinOp":
        rows = tuple(tuple(1 if i == j else 0 for j in range(dim)) for i in range(dim))
        return cls(dim, dim, rows, tag, tag)

    def is_endo(self) -> bool:
        return self.domain_dim == self.codomain_dim and self.domain_tag == self.codomain_tag

    def is_zero(self) -> bool:
        return all(not c for row in self.matrix for c in row)

    def apply(self, v: Sequence[Scalar]) -> list[Scalar]:
        if len(v) != self.domain_dim:
            raise ContractViolation("vector length does not match operator domain")
        return [sum(r * x for r, x in zip(row, v) if x) for row in self.matrix]

    def column(self, j: int) -> list[Scalar]:
        return [row[j] for row in self.matrix]

    def columns(self) -> list[list[Scalar]]:
        return [list(col) for col in zip(*self.matrix)] if self.matrix else []

    def compose(self, other: "LinOp") -> "LinOp":
        """self after other."""
        if other.codomain_tag != self.domain_tag or other.codomain_dim != self.domain_dim:
            raise ContractViolation(
                f"cannot compose: {self.domain_tag!r} after {other.codomain_tag!r}")
        cols = [self.apply(other.column(j)) for j in range(other.domain_dim)]
        rows = tuple(tuple(cols[j][i] for j in range(other.domain_dim))
                     for i in range(self.codomain_dim))
        return LinOp(other.domain_dim, self.codomain_dim, rows,
                     other.domain_tag, self.codomain_tag)

    def _binary(self, other: "LinOp", op) -> "LinOp":
        if (self.domain_dim, self.codomain_dim) != (other.domain_dim, other.codomain_dim) \
                or self.domain_tag != other.domain_tag \
                or self.codomain_tag != other.codomain_tag:
            raise ContractViolation("operator shapes or space tags do not match")
        rows = tuple(tuple(op(a, b) for a, b in zip(ra, rb))
                     for ra, rb in zip(self.matrix, other.matrix))
        return LinOp(self.domain_dim, self.codomain_dim, rows,
                     self.domain_tag, self.codomain_tag)

    def __add__(self, other: "LinOp") -> "LinOp":
        return self._binary(other, lambda a, b: a + b)

    def __sub__(self, other: "LinOp") -> "LinOp":
        return self._binary(other, lambda a, b: a - b)

    def scale(self, s) -> "LinOp":
        rows = tuple(tuple(s * c for c in row) for row in self.matrix)
        return LinOp(self.domain_dim, self.codomain_dim, rows,
                     self.domain_tag, self.codomain_tag)

    def flat(self) -> tuple[Scalar, ...]:
        """Row-major flattening; the unknown ordering used by the solver."""
        return tuple(c for row in self.matrix for c in row)

    def to_json(self) -> dict:
        return {
            "domain_tag": self.domain_tag,
            "codomain_tag": self.codomain_tag,
            "domain_dim": self.domain_dim,
            "codomain_dim": self.codomain_dim,
            "matrix": [format_scalar(c) for row in self.matrix for c in row],
        }

    @classmethod
    def from_json(cls, doc: dict) -> "LinOp":
        dom = expect(doc, "domain_dim", int, "operator")
        codom = expect(doc, "codomain_dim", int, "operator")
        flat = expect(doc, "matrix", list, "operator")
        if dom < 0 or codom < 0 or len(flat) != dom * codom:
            raise FormatError("operator: matrix length does not match dims")
        vals = [parse_scalar(c) for c in flat]
        rows = tuple(tuple(vals[i * dom:(i + 1) * dom]) for i in range(codom))
        return cls(dom, codom, rows,
                   expect(doc, "domain_tag", str, "operator"),
                   expect(doc, "codomain_tag", str, "operator"))


def operator_from_flat(flat: Sequence[Scalar], dim: int, tag: str) -> LinOp:
    rows = tuple(tuple(flat[i * dim:(i + 1) * dim]) for i in range(dim))
    return LinOp(dim, dim, rows, tag, tag)


# ---------------------------------------------------------------------------
# multiplication operators and inner (di)derivations
# ---------------------------------------------------------------------------

def _element_in(D: Dialgebra, a) -> list[Scalar]:
    v = list(coords_of(a))
    if len(v) != D.space_dim:
        raise ContractViolation(f"element does not live in {D.name}")
    return v


def mult_left(D: Dialgebra, product: str, a) -> LinOp:
    """L_a for the chosen product: b -> a * b."""
    v = _element_in(D, a)
    cols = [dialgebra_mul(D, product, v, D.basis_vector(j)) for j in range(D.space_dim)]
    rows = tuple(tuple(cols[j][i] for j in range(D.space_dim)) for i in range(D.space_dim))
    return LinOp(D.space_dim, D.space_dim, rows, D.name, D.name)


def mult_right(D: Dialgebra, product: str, a) -> LinOp:
    """R_a for the chosen product: b -> b * a."""
    v = _element_in(D, a)
    cols = [dialgebra_mul(D, product, D.basis_vector(j), v) for j in range(D.space_dim)]
    rows = tuple(tuple(cols[j][i] for j in range(D.space_dim)) for i in range(D.space_dim))
    return LinOp(D.space_dim, D.space_dim, rows, D.name, D.name)


def inner_ad(D: Dialgebra, a) -> LinOp:
    """ad_a = R_a^(-|) - L_a^(|-), a derivation of any dialgebra.

    When |- = -| this is b -> b a - a b, the negative of the usual
    commutator; the sign convention is kept as-is everywhere.
    """
    return mult_right(D, RIGHT, a) - mult_left(D, LEFT, a)


def inner_Ad(D: Dialgebra, a) -> LinOp:
    """Ad_a = R_a^(|-) - L_a^(-|), b -> b |- a - a -| b, a diderivation."""
    return mult_right(D, LEFT, a) - mult_left(D, RIGHT, a)


def bracket(f: LinOp, g: LinOp) -> LinOp:
    """Commutator f g - g f of two endomorphisms of the same space."""
    if not (f.is_endo() and g.is_endo() and f.domain_tag == g.domain_tag
            and f.domain_dim == g.domain_dim):
        raise ContractViolation("bracket needs endomorphisms of the same tagged space")
    return f.compose(g) - g.compose(f)


# ---------------------------------------------------------------------------
# Leibniz checkers
# ---------------------------------------------------------------------------

def _require_endo(space_dim: int, tag: str, d: LinOp) -> None:
    if not d.is_endo() or d.domain_dim != space_dim or d.domain_tag != tag:
        raise ContractViolation(
            f"operator is not an endomorphism of {tag!r} (dim {space_dim})")


def _image_of_sparse(cols, sv) -> dict[int, Scalar]:
    """d(v) for sparse v, as a sparse accumulation over operator columns."""
    out: dict[int, Scalar] = {}
    for i, c in sv:
        for m, x in enumerate(cols[i]):
            if x:
                out[m] = out.get(m, 0) + c * x
    return out


def _mul_image_basis(table, cols, i: int, j: int, d_on_first: bool) -> dict[int, Scalar]:
    """d(e_i) * e_j (or e_i * d(e_j)) against a sparse product table."""
    out: dict[int, Scalar] = {}
    col = cols[j] if not d_on_first else cols[i]
    if d_on_first:
        for m, x in enumerate(col):
            if x:
                for k, c in table[m][j]:
                    out[k] = out.get(k, 0) + x * c
    else:
        for m, x in enumerate(col):
            if x:
                for k, c in table[i][m]:
                    out[k] = out.get(k, 0) + x * c
    return out


def _diff(lhs: dict, rhs: dict, n: int):
    if lhs == rhs:
        return None
    keys = set(lhs) | set(rhs)
    if all(lhs.get(k, 0) == rhs.get(k, 0) for k in keys):
        return None
    return [lhs.get(k, 0) - rhs.get(k, 0) for k in range(n)]


def _leibniz_report(subject: str, n: int, tables: list[tuple[str, object]],
                    d: LinOp) -> Report:
    """Check d(x y) = d(x) y + x d(y) for each named product table."""
    cols = d.columns()

    def check_i(i: int) -> Report:
        rep = Report(subject=subject, witness_cap=WITNESS_CAP)
        for j in range(n):
            for identity, table in tables:
                lhs = _image_of_sparse(cols, table[i][j])
                rhs = _mul_image_basis(table, cols, i, j, d_on_first=True)
                for k, c in _mul_image_basis(table, cols, i, j, d_on_first=False).items():
                    rhs[k] = rhs.get(k, 0) + c
                diff = _diff(lhs, rhs, n)
                rep.checked += 1
                if diff is not None:
                    rep.add(identity, (i, j), diff)
        return rep

    report = Report(subject=subject, witness_cap=WITNESS_CAP)
    for part in parallel_map(check_i, range(n)):
        report.merge(part)
    return report


def is_derivation(D: Dialgebra, d: LinOp) -> Report:
    """Leibniz rule for both products on every basis pair."""
    _require_endo(D.space_dim, D.name, d)
    return _leibniz_report(f"derivation check on {D.name}", D.space_dim,
                           [("leibniz_left", D.left_prod),
                            ("leibniz_right", D.right_prod)], d)


def is_diderivation(D: Dialgebra, delta: LinOp) -> Report:
    """Both diderivation equalities on every basis pair:

        delta(x |- y) = delta(x) -| y + x |- delta(y)
        delta(x -| y) = delta(x) -| y + x |- delta(y)

    (equivalently, the two product images agree and match the mixed
    Leibniz expansion).
    """
    _require_endo(D.space_dim, D.name, delta)
    n = D.space_dim
    cols = delta.columns()
    lt, rt = D.left_prod, D.right_prod

    def check_i(i: int) -> Report:
        rep = Report(subject=f"diderivation check on {D.name}", witness_cap=WITNESS_CAP)
        for j in range(n):
            rhs = _mul_image_basis(rt, cols, i, j, d_on_first=True)     # delta(x) -| y
            for k, c in _mul_image_basis(lt, cols, i, j, d_on_first=False).items():
                rhs[k] = rhs.get(k, 0) + c                              # x |- delta(y)
            for identity, table in (("dider_left_product", lt),
                                    ("dider_right_product", rt)):
                lhs = _image_of_sparse(cols, table[i][j])
                diff = _diff(lhs, rhs, n)
                rep.checked += 1
                if diff is not None:
                    rep.add(identity, (i, j), diff)
        return rep

    report = Report(subject=f"diderivation check on {D.name}", witness_cap=WITNESS_CAP)
    for part in parallel_map(check_i, range(n)):
        report.merge(part)
    return report


def is_algebra_derivation(P: FiniteAlgebra, d: LinOp) -> Report:
    """Ordinary two-sided derivation of a one-product algebra."""
    _require_endo(P.dim, P.name, d)
    return _leibniz_report(f"derivation check on {P.name}", P.dim,
                           [("leibniz", P.table)], d)


def _sided_report(P: FiniteAlgebra, d: LinOp, side: str) -> Report:
    _require_endo(P.dim, P.name, d)
    n = P.dim
    cols = d.columns()
    table = P.table

    report = Report(subject=f"{side} derivation check on {P.name}", witness_cap=WITNESS_CAP)
    for i in range(n):
        for j in range(n):
            lhs = _image_of_sparse(cols, table[i][j])
            if side == "left":
                # d(x y) = x d(y) + y d(x)
                rhs = _mul_image_basis(table, cols, i, j, d_on_first=False)
                extra = _mul_image_basis(table, cols, j, i, d_on_first=False)
            else:
                # d(x y) = d(x) y + d(y) x
                rhs = _mul_image_basis(table, cols, i, j, d_on_first=True)
                extra = _mul_image_basis(table, cols, j, i, d_on_first=True)
            for k, c in extra.items():
                rhs[k] = rhs.get(k, 0) + c
            diff = _diff(lhs, rhs, n)
            report.checked += 1
            if diff is not None:
                report.add(f"{side}_leibniz", (i, j), diff)
    return report


def is_left_derivation(P: FiniteAlgebra, d: LinOp) -> Report:
    """Check d(x y) = x d(y) + y d(x) on every basis pair."""
    return _sided_report(P, d, "left")


def is_right_derivation(P: FiniteAlgebra, d: LinOp) -> Report:
    """Check d(x y) = d(x) y + d(y) x on every basis pair."""
    return _sided_report(P, d, "right")
