"""Sparse univariate polynomials over Q, optionally truncated.

A bounded polynomial lives in the quotient ring Q[x]/(x^(bound+1)): the
constructor discards every term above the bound, so bounded values form a
genuinely closed finite-dimensional ring rather than a leaky degree window.
Two polynomials may only be combined when they share the same bound
convention (both unbounded, or both bounded with the same bound).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .scalars import as_scalar, format_scalar, parse_scalar
from .util import ContractViolation, FormatError


class Poly:
    """Immutable sparse polynomial; zero coefficients are never stored."""

    __slots__ = ("coeffs", "bound")

    def __init__(self, coeffs: Mapping[int, object] | Iterable[tuple[int, object]] = (),
                 bound: int | None = None):
        if bound is not None and bound < 0:
            raise ContractViolation(f"bound must be non-negative, got {bound}")
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        store: dict[int, Fraction] = {}
        for degree, value in items:
            if not isinstance(degree, int) or degree < 0:
                raise ContractViolation(f"bad degree {degree!r}")
            if bound is not None and degree > bound:
                continue
            c = as_scalar(value)
            if c:
                store[degree] = store.get(degree, Fraction(0)) + c
                if not store[degree]:
                    del store[degree]
        object.__setattr__(self, "coeffs", store)
        object.__setattr__(self, "bound", bound)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def zero(cls, bound: int | None = None) -> "Poly":
        return cls((), bound)

    @classmethod
    def one(cls, bound: int | None = None) -> "Poly":
        return cls({0: 1}, bound)

    @classmethod
    def x(cls, bound: int | None = None) -> "Poly":
        return cls({1: 1}, bound)

    @classmethod
    def monomial(cls, degree: int, coeff=1, bound: int | None = None) -> "Poly":
        return cls({degree: coeff}, bound)

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int | None:
        """Largest stored degree, or None for the zero polynomial."""
        return max(self.coeffs) if self.coeffs else None

    def coefficient(self, degree: int) -> Fraction:
        return self.coeffs.get(degree, Fraction(0))

    def __eq__(self, other) -> bool:
        return (isinstance(other, Poly)
                and self.bound == other.bound
                and self.coeffs == other.coeffs)

    def __hash__(self) -> int:
        return hash((self.bound, frozenset(self.coeffs.items())))

    def __add__(self, other: "Poly") -> "Poly":
        _check_bounds(self, other)
        merged = dict(self.coeffs)
        for d, c in other.coeffs.items():
            merged[d] = merged.get(d, Fraction(0)) + c
        return Poly(merged, self.bound)

    def __neg__(self) -> "Poly":
        return Poly({d: -c for d, c in self.coeffs.items()}, self.bound)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def scale(self, scalar) -> "Poly":
        s = as_scalar(scalar)
        return Poly({d: s * c for d, c in self.coeffs.items()}, self.bound)

    def __mul__(self, other: "Poly") -> "Poly":
        return poly_mul(self, other)

    def __repr__(self) -> str:
        if not self.coeffs:
            body = "0"
        else:
            parts = []
            for d in sorted(self.coeffs):
                c = format_scalar(self.coeffs[d])
                if d == 0:
                    parts.append(c)
                else:
                    head = "" if c == "1" else ("-" if c == "-1" else c + "*")
                    parts.append(f"{head}x^{d}" if d > 1 else f"{head}x")
            body = " + ".join(parts).replace("+ -", "- ")
        suffix = "" if self.bound is None else f" (mod x^{self.bound + 1})"
        return body + suffix

    def to_json(self) -> list[list]:
        """Array of [degree, "p/q"] pairs sorted by degree."""
        return [[d, format_scalar(self.coeffs[d])] for d in sorted(self.coeffs)]

    @classmethod
    def from_json(cls, doc, bound: int | None = None) -> "Poly":
        if not isinstance(doc, list):
            raise FormatError("polynomial document must be an array")
        pairs = []
        for entry in doc:
            if (not isinstance(entry, list) or len(entry) != 2
                    or not isinstance(entry[0], int)):
                raise FormatError(f"bad polynomial term: {entry!r}")
            pairs.append((entry[0], parse_scalar(entry[1])))
        return cls(pairs, bound)


def _check_bounds(p: Poly, q: Poly) -> None:
    if p.bound != q.bound:
        raise ContractViolation(
            f"mixed bound conventions: {p.bound!r} vs {q.bound!r}")


def poly_mul(p: Poly, q: Poly) -> Poly:
    """Coefficientwise convolution; bounded inputs multiply in the quotient."""
    _check_bounds(p, q)
    out: dict[int, Fraction] = {}
    for dp, cp in p.coeffs.items():
        for dq, cq in q.coeffs.items():
            d = dp + dq
            if p.bound is not None and d > p.bound:
                continue
            out[d] = out.get(d, Fraction(0)) + cp * cq
    return Poly(out, p.bound)


def poly_eval0(p: Poly) -> Fraction:
    """Evaluation at zero, i.e. the constant coefficient."""
    return p.coefficient(0)


def perm_circ(p: Poly, q: Poly) -> Poly:
    """The perm product p(0) * q(x), the product that drives everything here."""
    _check_bounds(p, q)
    return q.scale(poly_eval0(p))
