"""Assembling and decomposing (di)derivations of the tensor dialgebra.

A derivation of D = P (x) A splits against the natural bases into

    d  =  sum_j  id (x) L_(x^j) (x) D_j   +   sum_k  d_k (x) R_(u_k)

with D_j a derivation of A and d_k a derivation of P, and a diderivation
splits into

    delta = sum_(i1,i2)  x^i1 ev0 (x) L_(x^i2) (x) D_(i1,i2)
          +  sum_k  dd_k (x) R_(u_k)

with D_(i1,i2) a derivation of A and dd_k a left derivation of P.  The
decomposition here reads those components straight off the two basis
slices {x^pi (x) 1_A} and {1 (x) 1 (x) u_k}, exactly as the identities
dictate, and the reconstruction is an exact matrix identity at every
truncation window.

Component families are keyed "(i1,i2),k" (perm parts, the k drives
R_(u_k)) and "(j),k" (derivation algebra parts, the j drives L_(x^j)).
Decomposition emits one aggregate operator per assembly-relevant index
and zeroes the label-only key slots; finer coordinate splits of these
aggregates are generally *not* derivations themselves, so the aggregate
is the canonical representative.

Caveat found while testing, worth stating loudly: a perm part paired with
a basis weight u_k only assembles to a (di)derivation when the aggregated
slice map P -> P (x) A lands in P (x) Z(A).  Every honest (di)derivation
satisfies this (the residual report checks it), and the random family
sampler guarantees it by weighting perm draws with central elements.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .algebras import FiniteAlgebra
from .dialgebras import LEFT, Dialgebra, DialgebraElement, dialgebra_mul
from .operators import (LinOp, is_algebra_derivation, is_derivation,
                        is_diderivation, is_left_derivation,
                        is_right_derivation)
from .reports import Report
from .scalars import Scalar
from .solver import SubspaceBasis
from .util import ContractViolation, FormatError, expect

PermKey = tuple[tuple[int, int], int]  # ((i1, i2), k)
AlgKey = tuple[int, int]               # (j, k)

MISMATCH_CAP = 20


@dataclass
class DerComponentFamily:
    perm_parts: dict[PermKey, LinOp] = field(default_factory=dict)
    alg_parts: dict[AlgKey, LinOp] = field(default_factory=dict)

    def is_empty(self) -> bool:
        return not self.perm_parts and not self.alg_parts


@dataclass
class DiderComponentFamily:
    perm_parts: dict[PermKey, LinOp] = field(default_factory=dict)
    alg_parts: dict[PermKey, LinOp] = field(default_factory=dict)  # ((i1,i2), k)

    def is_empty(self) -> bool:
        return not self.perm_parts and not self.alg_parts


@dataclass
class DecompositionReport:
    """Residual diagnostics accompanying a decomposition."""

    part_checks: dict[str, bool] = field(default_factory=dict)
    phi: dict[str, dict] = field(default_factory=dict)
    center_condition: bool = True
    roundtrip_exact: bool = True
    mismatches: list[dict] = field(default_factory=list)
    sidedness: dict[str, str] = field(default_factory=dict)
    sidedness_outcome: str = ""

    @property
    def clean(self) -> bool:
        return (self.roundtrip_exact and self.center_condition
                and all(self.part_checks.values())
                and all(entry["determined_by_perm_parts"] for entry in self.phi.values()))

    def to_json(self) -> dict:
        doc = {
            "part_checks": dict(sorted(self.part_checks.items())),
            "phi": {key: {"operator": entry["operator"].to_json(),
                          "determined_by_perm_parts": entry["determined_by_perm_parts"]}
                    for key, entry in sorted(self.phi.items())},
            "center_condition": self.center_condition,
            "roundtrip_exact": self.roundtrip_exact,
            "mismatches": self.mismatches,
        }
        if self.sidedness_outcome:
            doc["sidedness"] = dict(sorted(self.sidedness.items()))
            doc["sidedness_outcome"] = self.sidedness_outcome
        return doc


def window_context(D: Dialgebra) -> tuple[FiniteAlgebra, FiniteAlgebra, int, int]:
    """The factors and window of a KP dialgebra; decomposition needs them."""
    if D.provenance is None or D.provenance.window is None:
        raise ContractViolation(
            f"{D.name} carries no truncation-window provenance; "
            "build it through kp_window_dialgebra")
    n1, n2 = D.provenance.window
    return D.provenance.perm, D.provenance.alg, n1, n2


def _pflat(i1: int, i2: int, n2: int) -> int:
    return i1 * (n2 + 1) + i2


def _perm_slice_vector(D: Dialgebra, pi: int) -> list[Scalar]:
    """Coordinates of x^pi (x) 1_A."""
    A = D.provenance.alg
    vec = [Fraction(0)] * D.space_dim
    for k, c in enumerate(A.unit):
        if c:
            vec[pi * A.dim + k] = c
    return vec


# ---------------------------------------------------------------------------
# family validation
# ---------------------------------------------------------------------------

def validate_der_family(D: Dialgebra, fam: DerComponentFamily) -> Report:
    P, A, n1, n2 = window_context(D)
    report = Report(subject=f"derivation component family for {D.name}")
    for ((i1, i2), k), op in sorted(fam.perm_parts.items()):
        report.checked += 1
        if not (0 <= i1 <= n1 and 0 <= i2 <= n2 and 0 <= k < A.dim):
            report.add("perm_key_window", (i1, i2, k), ())
            continue
        sub = is_algebra_derivation(P, op)
        if not sub.passed:
            report.add("perm_part_not_derivation", (i1, i2, k), ())
    for (j, k), op in sorted(fam.alg_parts.items()):
        report.checked += 1
        if not (0 <= j <= n2 and 0 <= k < A.dim):
            report.add("alg_key_window", (j, k), ())
            continue
        sub = is_algebra_derivation(A, op)
        if not sub.passed:
            report.add("alg_part_not_derivation", (j, k), ())
    return report


def validate_dider_family(D: Dialgebra, fam: DiderComponentFamily,
                          sidedness: str = "either") -> tuple[Report, dict[str, str]]:
    """Check a diderivation family; perm parts must be one-sided derivations.

    sidedness: "left", "right", or "either" (accept whichever holds).
    Returns the validation report plus the observed side per perm part.
    """
    P, A, n1, n2 = window_context(D)
    report = Report(subject=f"diderivation component family for {D.name}")
    observed: dict[str, str] = {}
    for ((i1, i2), k), op in sorted(fam.perm_parts.items()):
        report.checked += 1
        if not (0 <= i1 <= n1 and 0 <= i2 <= n2 and 0 <= k < A.dim):
            report.add("perm_key_window", (i1, i2, k), ())
            continue
        left = is_left_derivation(P, op).passed
        right = is_right_derivation(P, op).passed
        observed[f"{i1},{i2},{k}"] = ("both" if left and right else
                                      "left" if left else
                                      "right" if right else "neither")
        accepted = {"left": left, "right": right,
                    "either": left or right}[sidedness]
        if not accepted:
            report.add(f"perm_part_not_{sidedness}_derivation", (i1, i2, k), ())
    for ((i1, i2), k), op in sorted(fam.alg_parts.items()):
        report.checked += 1
        if not (0 <= i1 <= n1 and 0 <= i2 <= n2 and 0 <= k < A.dim):
            report.add("alg_key_window", (i1, i2, k), ())
            continue
        if not is_algebra_derivation(A, op).passed:
            report.add("alg_part_not_derivation", (i1, i2, k), ())
    return report, observed


# ---------------------------------------------------------------------------
# assembly
# ---------------------------------------------------------------------------

def _add_perm_sector(M: list[list], D: Dialgebra, fam_perm) -> None:
    """Accumulate sum_k part (x) R_(u_k) into the matrix."""
    A = D.provenance.alg
    dim_a = A.dim
    dim_p = D.provenance.perm.dim
    for ((_i1, _i2), k), op in sorted(fam_perm.items()):
        for pi in range(dim_p):
            col = op.column(pi)
            for pj in range(dim_p):
                c = col[pj]
                if not c:
                    continue
                for kappa in range(dim_a):
                    for l, ck in A.table[kappa][k]:
                        M[pj * dim_a + l][pi * dim_a + kappa] += c * ck


def assemble_derivation(D: Dialgebra, fam: DerComponentFamily) -> LinOp:
    """Realize sum id (x) L_(x^j) (x) D_j + sum d (x) R_(u_k) as a matrix.

    Slot-2 multiplication happens inside the truncated quotient, so terms
    pushed past the window vanish; keys outside the window are rejected.
    """
    report = validate_der_family(D, fam)
    if not report.passed:
        raise ContractViolation(f"invalid component family: {report.summary()}",
                                report=report)
    _P, A, n1, n2 = window_context(D)
    n = D.space_dim
    dim_a = A.dim
    M = [[Fraction(0)] * n for _ in range(n)]
    for (j, _k), op in sorted(fam.alg_parts.items()):
        for i1 in range(n1 + 1):
            for i2 in range(n2 + 1):
                if i2 + j > n2:
                    continue
                src = _pflat(i1, i2, n2)
                dst = _pflat(i1, i2 + j, n2)
                for kappa in range(dim_a):
                    col = op.column(kappa)
                    for m in range(dim_a):
                        if col[m]:
                            M[dst * dim_a + m][src * dim_a + kappa] += col[m]
    _add_perm_sector(M, D, fam.perm_parts)
    return LinOp.from_rows(M, D.name)


def assemble_diderivation(D: Dialgebra, fam: DiderComponentFamily,
                          sidedness: str = "either") -> LinOp:
    """Realize sum x^i1 ev0 (x) L_(x^i2) (x) D + sum dd (x) R_(u_k)."""
    report, _observed = validate_dider_family(D, fam, sidedness)
    if not report.passed:
        raise ContractViolation(f"invalid component family: {report.summary()}",
                                report=report)
    _P, A, n1, n2 = window_context(D)
    n = D.space_dim
    dim_a = A.dim
    M = [[Fraction(0)] * n for _ in range(n)]
    for ((i1, i2), _k), op in sorted(fam.alg_parts.items()):
        # ev0 kills every slot-1 monomial of positive degree
        for p2 in range(n2 + 1):
            if i2 + p2 > n2:
                continue
            src = _pflat(0, p2, n2)
            dst = _pflat(i1, i2 + p2, n2)
            for kappa in range(dim_a):
                col = op.column(kappa)
                for m in range(dim_a):
                    if col[m]:
                        M[dst * dim_a + m][src * dim_a + kappa] += col[m]
    _add_perm_sector(M, D, fam.perm_parts)
    return LinOp.from_rows(M, D.name)


# ---------------------------------------------------------------------------
# decomposition
# ---------------------------------------------------------------------------

def _slice_center_condition(D: Dialgebra, op: LinOp) -> bool:
    """Does op send every x^pi (x) 1_A into P (x) Z(A)?"""
    A = D.provenance.alg
    dim_a = A.dim
    dim_p = D.provenance.perm.dim
    for pi in range(dim_p):
        img = op.apply(_perm_slice_vector(D, pi))
        for pj in range(dim_p):
            part = img[pj * dim_a:(pj + 1) * dim_a]
            if not any(part):
                continue
            for j in range(dim_a):
                e = A.basis_vector(j)
                if A.mul(part, e) != A.mul(e, part):
                    return False
    return True


def _right_mult_matrix(A: FiniteAlgebra, z: Sequence[Scalar]) -> LinOp:
    cols = [A.mul(A.basis_vector(kappa), list(z)) for kappa in range(A.dim)]
    rows = tuple(tuple(cols[j][i] for j in range(A.dim)) for i in range(A.dim))
    return LinOp(A.dim, A.dim, rows, A.name, A.name)


def _extract_perm_aggregates(D: Dialgebra, op: LinOp) -> dict[int, LinOp]:
    """Per-u_k aggregate maps P -> P read off the slice {x^pi (x) 1_A}."""
    P, A = D.provenance.perm, D.provenance.alg
    dim_a, dim_p = A.dim, P.dim
    images = [op.apply(_perm_slice_vector(D, pi)) for pi in range(dim_p)]
    out: dict[int, LinOp] = {}
    for k in range(dim_a):
        rows = [[images[pi][pj * dim_a + k] for pi in range(dim_p)]
                for pj in range(dim_p)]
        if any(any(r) for r in rows):
            out[k] = LinOp.from_rows(rows, P.name)
    return out


def _extract_alg_aggregates(D: Dialgebra, op: LinOp) -> dict[int, LinOp]:
    """Per-perm-slot aggregate maps A -> A read off the slice {1 (x) u_k}."""
    A = D.provenance.alg
    dim_a = A.dim
    dim_p = D.provenance.perm.dim
    images = [op.column(0 * dim_a + kappa) for kappa in range(dim_a)]
    out: dict[int, LinOp] = {}
    for pi in range(dim_p):
        rows = [[images[kappa][pi * dim_a + l] for kappa in range(dim_a)]
                for l in range(dim_a)]
        if any(any(r) for r in rows):
            out[pi] = LinOp.from_rows(rows, A.name)
    return out


def _roundtrip(d: LinOp, rebuilt: LinOp, n2: int, dim_a: int,
               report: DecompositionReport) -> None:
    if rebuilt.matrix == d.matrix:
        return
    report.roundtrip_exact = False
    for r, (row_a, row_b) in enumerate(zip(d.matrix, rebuilt.matrix)):
        for c, (a, b) in enumerate(zip(row_a, row_b)):
            if a != b and len(report.mismatches) < MISMATCH_CAP:
                slot2 = (r // dim_a) % (n2 + 1)
                report.mismatches.append({
                    "row": r, "col": c, "row_slot2_degree": slot2,
                    "at_truncation_boundary": slot2 == n2,
                })


def decompose_derivation(D: Dialgebra, d: LinOp) -> tuple[DerComponentFamily,
                                                          DecompositionReport]:
    """Read a derivation's components off the canonical basis slices.

    Returns the component family together with a residual report carrying
    the leftover slice data: the maps at slots with positive slot-1 degree
    (which the reconstruction annihilates, and which are determined by the
    perm parts), the center condition, each component's own derivation
    check, and an exact roundtrip comparison.
    """
    check = is_derivation(D, d)
    if not check.passed:
        raise ContractViolation(f"not a derivation: {check.summary()}", report=check)
    P, A, n1, n2 = window_context(D)
    dim_a = A.dim
    fam = DerComponentFamily()
    report = DecompositionReport()

    for k, op in _extract_perm_aggregates(D, d).items():
        fam.perm_parts[((0, 0), k)] = op
        report.part_checks[f"perm 0,0,{k}"] = is_algebra_derivation(P, op).passed

    alg_slots = _extract_alg_aggregates(D, d)
    # slot (0, j) components feed L_(x^j); positive slot-1 degree is phi data
    for pi, op in alg_slots.items():
        i1, i2 = divmod(pi, n2 + 1)
        if i1 == 0:
            fam.alg_parts[(i2, 0)] = op
            report.part_checks[f"alg {i2},0"] = is_algebra_derivation(A, op).passed
        else:
            z = [Fraction(0)] * dim_a
            for k, part in fam.perm_parts.items():
                # coordinate of d_k(1 (x) 1) at monomial slot pi
                z[k[1]] += part.matrix[pi][0]
            determined = op.matrix == _right_mult_matrix(A, z).matrix
            report.phi[f"{i1},{i2}"] = {"operator": op,
                                        "determined_by_perm_parts": determined}

    report.center_condition = _slice_center_condition(D, d)
    rebuilt = assemble_derivation(D, fam)
    _roundtrip(d, rebuilt, n2, dim_a, report)
    return fam, report


def decompose_diderivation(D: Dialgebra, delta: LinOp) -> tuple[DiderComponentFamily,
                                                                DecompositionReport]:
    """Slice extraction for diderivations.

    Every perm part is tested against BOTH one-sided derivation identities
    and the outcome recorded; the reassembly must reproduce delta exactly.
    """
    check = is_diderivation(D, delta)
    if not check.passed:
        raise ContractViolation(f"not a diderivation: {check.summary()}", report=check)
    P, A, n1, n2 = window_context(D)
    fam = DiderComponentFamily()
    report = DecompositionReport()

    for k, op in _extract_perm_aggregates(D, delta).items():
        fam.perm_parts[((0, 0), k)] = op
        left = is_left_derivation(P, op).passed
        right = is_right_derivation(P, op).passed
        outcome = ("both" if left and right else "left" if left
                   else "right" if right else "neither")
        report.sidedness[f"0,0,{k}"] = outcome
        report.part_checks[f"perm 0,0,{k}"] = left or right

    for pi, op in _extract_alg_aggregates(D, delta).items():
        i1, i2 = divmod(pi, n2 + 1)
        fam.alg_parts[((i1, i2), 0)] = op
        report.part_checks[f"alg {i1},{i2},0"] = is_algebra_derivation(A, op).passed

    outcomes = set(report.sidedness.values())
    if not outcomes:
        report.sidedness_outcome = "vacuous"
    elif outcomes <= {"both"}:
        report.sidedness_outcome = "both"
    elif outcomes <= {"left", "both"}:
        report.sidedness_outcome = "left"
    elif outcomes <= {"right", "both"}:
        report.sidedness_outcome = "right"
    else:
        report.sidedness_outcome = "mixed"

    report.center_condition = _slice_center_condition(D, delta)
    rebuilt = assemble_diderivation(D, fam)
    _roundtrip(delta, rebuilt, n2, A.dim, report)
    return fam, report


def reconstruct_check(D: Dialgebra, d: LinOp) -> Report:
    """Verify d(x^pi (x) a) = d(1 (x) a) |- (x^pi (x) 1) + (1 (x) a) |- d(x^pi (x) 1)
    on every basis element.  Empty for derivations; for arbitrary operators it
    measures the distance from the factorization."""
    _P, A, _n1, _n2 = window_context(D)
    if not d.is_endo() or d.domain_dim != D.space_dim or d.domain_tag != D.name:
        raise ContractViolation(f"operator is not an endomorphism of {D.name}")
    dim_a = A.dim
    dim_p = D.provenance.perm.dim
    report = Report(subject=f"reconstruction identity on {D.name}", witness_cap=10)
    slice_imgs = [d.apply(_perm_slice_vector(D, pi)) for pi in range(dim_p)]
    for pi in range(dim_p):
        pvec = _perm_slice_vector(D, pi)
        for kappa in range(dim_a):
            e = D.basis_vector(0 * dim_a + kappa)  # 1 (x) u_kappa
            lhs = d.column(pi * dim_a + kappa)
            rhs = dialgebra_mul(D, LEFT, d.column(kappa), pvec)
            for m, c in enumerate(dialgebra_mul(D, LEFT, e, slice_imgs[pi])):
                rhs[m] += c
            report.checked += 1
            if lhs != rhs:
                report.add("reconstruction", (pi, kappa),
                           [a - b for a, b in zip(lhs, rhs)])
    return report


# ---------------------------------------------------------------------------
# random valid families (seeded)
# ---------------------------------------------------------------------------

def random_element(D: Dialgebra, rng, lo: int = -3, hi: int = 3) -> DialgebraElement:
    return DialgebraElement(tuple(Fraction(rng.randint(lo, hi))
                                  for _ in range(D.space_dim)))


def random_combination(basis: SubspaceBasis, rng, lo: int = -2, hi: int = 2) -> LinOp | None:
    """Random integer combination of a solved subspace basis; None if empty."""
    if basis.dimension == 0:
        return None
    op = None
    for b in basis.basis_ops:
        c = rng.randint(lo, hi)
        if c:
            term = b.scale(c)
            op = term if op is None else op + term
    return op


def random_der_family(D: Dialgebra, rng, perm_derivations: SubspaceBasis,
                      alg_derivations: SubspaceBasis,
                      center: Sequence[Sequence[int]]) -> DerComponentFamily:
    """Draw a valid derivation family.

    Perm draws are weighted by a random central element of A spread over
    its basis coordinates, which is what keeps the assembled perm sector a
    derivation when A is noncommutative (see module docstring).
    """
    _P, A, n1, n2 = window_context(D)
    fam = DerComponentFamily()
    for _ in range(rng.randint(1, 2)):
        dP = random_combination(perm_derivations, rng)
        if dP is None:
            break
        z = [0] * A.dim
        for vec in center:
            c = rng.randint(-2, 2)
            if c:
                z = [a + c * b for a, b in zip(z, vec)]
        if not any(z):
            z = list(center[0])
        key_slot = (rng.randint(0, n1), rng.randint(0, n2))
        for k, zk in enumerate(z):
            if zk:
                term = dP.scale(zk)
                key = (key_slot, k)
                fam.perm_parts[key] = (fam.perm_parts[key] + term
                                       if key in fam.perm_parts else term)
    for _ in range(rng.randint(1, 2)):
        dA = random_combination(alg_derivations, rng)
        if dA is None:
            break
        key = (rng.randint(0, n2), rng.randint(0, A.dim - 1))
        fam.alg_parts[key] = (fam.alg_parts[key] + dA
                              if key in fam.alg_parts else dA)
    fam.perm_parts = {k: v for k, v in fam.perm_parts.items() if not v.is_zero()}
    fam.alg_parts = {k: v for k, v in fam.alg_parts.items() if not v.is_zero()}
    return fam


def random_dider_family(D: Dialgebra, rng, perm_sided: SubspaceBasis,
                        alg_derivations: SubspaceBasis,
                        center: Sequence[Sequence[int]]) -> DiderComponentFamily:
    """Draw a diderivation family; perm draws come from a one-sided
    derivation space (left or right, the caller's sidedness experiment)."""
    _P, A, n1, n2 = window_context(D)
    fam = DiderComponentFamily()
    for _ in range(rng.randint(1, 2)):
        dP = random_combination(perm_sided, rng)
        if dP is None:
            break
        z = [0] * A.dim
        for vec in center:
            c = rng.randint(-2, 2)
            if c:
                z = [a + c * b for a, b in zip(z, vec)]
        if not any(z):
            z = list(center[0])
        key_slot = (rng.randint(0, n1), rng.randint(0, n2))
        for k, zk in enumerate(z):
            if zk:
                term = dP.scale(zk)
                key = (key_slot, k)
                fam.perm_parts[key] = (fam.perm_parts[key] + term
                                       if key in fam.perm_parts else term)
    for _ in range(rng.randint(1, 2)):
        dA = random_combination(alg_derivations, rng)
        if dA is None:
            break
        key = ((rng.randint(0, n1), rng.randint(0, n2)), rng.randint(0, A.dim - 1))
        fam.alg_parts[key] = (fam.alg_parts[key] + dA
                              if key in fam.alg_parts else dA)
    fam.perm_parts = {k: v for k, v in fam.perm_parts.items() if not v.is_zero()}
    fam.alg_parts = {k: v for k, v in fam.alg_parts.items() if not v.is_zero()}
    return fam


# ---------------------------------------------------------------------------
# interchange
# ---------------------------------------------------------------------------

def _perm_key_str(key: PermKey) -> str:
    (i1, i2), k = key
    return f"{i1},{i2},{k}"


def family_to_json(fam: DerComponentFamily | DiderComponentFamily) -> dict:
    if isinstance(fam, DerComponentFamily):
        return {
            "type": "derivation",
            "perm_parts": {_perm_key_str(k): op.to_json()
                           for k, op in sorted(fam.perm_parts.items())},
            "alg_parts": {f"{j},{k}": op.to_json()
                          for (j, k), op in sorted(fam.alg_parts.items())},
        }
    return {
        "type": "diderivation",
        "perm_parts": {_perm_key_str(k): op.to_json()
                       for k, op in sorted(fam.perm_parts.items())},
        "alg_parts": {_perm_key_str(k): op.to_json()
                      for k, op in sorted(fam.alg_parts.items())},
    }


def _parse_ints(text: str, count: int, where: str) -> tuple[int, ...]:
    parts = text.split(",")
    if len(parts) != count:
        raise FormatError(f"{where}: key {text!r} needs {count} comma-separated integers")
    try:
        return tuple(int(p) for p in parts)
    except ValueError:
        raise FormatError(f"{where}: bad key {text!r}") from None


def family_from_json(doc: dict) -> DerComponentFamily | DiderComponentFamily:
    kind = expect(doc, "type", str, "family")
    perm_doc = expect(doc, "perm_parts", dict, "family")
    alg_doc = expect(doc, "alg_parts", dict, "family")
    perm_parts = {}
    for key, op_doc in perm_doc.items():
        i1, i2, k = _parse_ints(key, 3, "family.perm_parts")
        perm_parts[((i1, i2), k)] = LinOp.from_json(op_doc)
    if kind == "derivation":
        fam = DerComponentFamily(perm_parts=perm_parts)
        for key, op_doc in alg_doc.items():
            j, k = _parse_ints(key, 2, "family.alg_parts")
            fam.alg_parts[(j, k)] = LinOp.from_json(op_doc)
        return fam
    if kind == "diderivation":
        fam = DiderComponentFamily(perm_parts=perm_parts)
        for key, op_doc in alg_doc.items():
            i1, i2, k = _parse_ints(key, 3, "family.alg_parts")
            fam.alg_parts[((i1, i2), k)] = LinOp.from_json(op_doc)
        return fam
    raise FormatError(f"family: unknown type {kind!r}")
