"""Command-line front end: reproducible validate / solve / assemble /
decompose / compare runs over JSON interchange files.

Exit codes: 0 all checks passed, 1 a mathematical violation was found,
2 unreadable or malformed input.  Reports are machine-diffable JSON by
default; --pretty switches to a stable text rendering.  Seeds only govern
randomized component-family sampling; everything algebraic is
deterministic, so identical configurations give byte-identical output.
"""

from __future__ import annotations

import argparse
import random
import sys
from dataclasses import dataclass

from .algebras import FiniteAlgebra, algebra_from_json, catalog_algebra, validators_for
from .decomposition import (assemble_derivation, assemble_diderivation,
                            decompose_derivation, decompose_diderivation,
                            family_from_json, family_to_json, random_der_family,
                            random_dider_family, DerComponentFamily)
from .dialgebras import dialgebra_from_json, kp_window_dialgebra, validate_dialgebra
from .operators import LinOp, is_derivation, is_diderivation
from .solver import (algebra_derivation_space, center_space, derivation_space,
                     diderivation_space, span_rank)
from .util import ContractViolation, FormatError, dump_json, load_json_file

OK, VIOLATION, BAD_INPUT = 0, 1, 2


@dataclass
class RunConfig:
    command: str
    algebra_path: str | None
    dialgebra_path: str | None
    perm_window: tuple[int, int]
    seed: int
    output_path: str | None
    pretty: bool
    family_path: str | None = None
    operator_path: str | None = None
    kind: str = "der"
    trials: int = 12


def _load_algebra(path: str) -> FiniteAlgebra:
    if path.startswith("catalog:"):
        return catalog_algebra(path.split(":", 1)[1])
    return algebra_from_json(load_json_file(path))


def _render_text(doc, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(doc, dict):
        for key in sorted(doc):
            value = doc[key]
            if isinstance(value, (dict, list)) and value:
                lines.append(f"{pad}{key}:")
                lines.append(_render_text(value, indent + 1))
            else:
                lines.append(f"{pad}{key}: {value if value != [] and value != {} else '(none)'}")
    elif isinstance(doc, list):
        for value in doc:
            if isinstance(value, (dict, list)):
                lines.append(f"{pad}-")
                lines.append(_render_text(value, indent + 1))
            else:
                lines.append(f"{pad}- {value}")
    else:
        lines.append(f"{pad}{doc}")
    return "\n".join(lines)


def _emit(doc: dict, cfg: RunConfig) -> None:
    text = _render_text(doc) + "\n" if cfg.pretty else dump_json(doc)
    if cfg.output_path:
        with open(cfg.output_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_validate(cfg: RunConfig) -> int:
    reports = []
    if cfg.dialgebra_path:
        D = dialgebra_from_json(load_json_file(cfg.dialgebra_path))
        subject = D.name
        reports.append(validate_dialgebra(D))
    elif cfg.algebra_path:
        A = _load_algebra(cfg.algebra_path)
        subject = A.name
        reports.extend(validators_for(A))
    else:
        raise FormatError("validate needs --algebra or --dialgebra")
    passed = all(r.passed for r in reports)
    _emit({
        "command": "validate",
        "subject": subject,
        "passed": passed,
        "reports": [r.to_json() for r in reports],
    }, cfg)
    return OK if passed else VIOLATION


def _build(cfg: RunConfig):
    if not cfg.algebra_path:
        raise FormatError(f"{cfg.command} needs --algebra")
    A = _load_algebra(cfg.algebra_path)
    n1, n2 = cfg.perm_window
    return kp_window_dialgebra(n1, n2, A)


def cmd_space(cfg: RunConfig) -> int:
    D = _build(cfg)
    space = derivation_space(D) if cfg.command == "derspace" else diderivation_space(D)
    _emit({
        "command": cfg.command,
        "algebra": D.provenance.alg.name,
        "window": list(cfg.perm_window),
        "space": space.to_json(),
    }, cfg)
    return OK


def cmd_assemble(cfg: RunConfig) -> int:
    D = _build(cfg)
    if not cfg.family_path:
        raise FormatError("assemble needs --family")
    fam = family_from_json(load_json_file(cfg.family_path))
    if isinstance(fam, DerComponentFamily):
        op = assemble_derivation(D, fam)
        check = is_derivation(D, op)
    else:
        op = assemble_diderivation(D, fam)
        check = is_diderivation(D, op)
    _emit({
        "command": "assemble",
        "algebra": D.provenance.alg.name,
        "window": list(cfg.perm_window),
        "operator": op.to_json(),
        "check": check.to_json(),
        "passed": check.passed,
    }, cfg)
    return OK if check.passed else VIOLATION


def cmd_decompose(cfg: RunConfig) -> int:
    D = _build(cfg)
    if not cfg.operator_path:
        raise FormatError("decompose needs --operator")
    op = LinOp.from_json(load_json_file(cfg.operator_path))
    if cfg.kind == "der":
        fam, residual = decompose_derivation(D, op)
    else:
        fam, residual = decompose_diderivation(D, op)
    _emit({
        "command": "decompose",
        "algebra": D.provenance.alg.name,
        "window": list(cfg.perm_window),
        "kind": cfg.kind,
        "family": family_to_json(fam),
        "residual": residual.to_json(),
        "passed": residual.clean,
    }, cfg)
    return OK if residual.clean else VIOLATION


def cmd_compare(cfg: RunConfig) -> int:
    """Solver spaces vs theorem-reachable spans, with the sidedness verdict.

    The assembled span always includes the reassembly of every solver basis
    element (decompositions are valid families), so the reported numbers,
    and therefore the whole table, are seed-independent.
    """
    D = _build(cfg)
    P, A = D.provenance.perm, D.provenance.alg
    der = derivation_space(D)
    dider = diderivation_space(D)
    lder = algebra_derivation_space(P, "left")
    rder = algebra_derivation_space(P, "right")
    perm_der = algebra_derivation_space(P)
    alg_der = algebra_derivation_space(A)
    centre = center_space(A)
    rng = random.Random(cfg.seed)

    der_flats = []
    sidedness = set()
    for op in der.basis_ops:
        fam, _res = decompose_derivation(D, op)
        der_flats.append(assemble_derivation(D, fam).flat())
    for _ in range(cfg.trials):
        fam = random_der_family(D, rng, perm_der, alg_der, centre)
        der_flats.append(assemble_derivation(D, fam).flat())

    dider_flats = []
    for op in dider.basis_ops:
        fam, res = decompose_diderivation(D, op)
        dider_flats.append(assemble_diderivation(D, fam).flat())
        if res.sidedness_outcome != "vacuous":
            sidedness.add(res.sidedness_outcome)
    for _ in range(cfg.trials):
        fam = random_dider_family(D, rng, lder, alg_der, centre)
        dider_flats.append(assemble_diderivation(D, fam).flat())

    der_span = span_rank(der_flats)
    dider_span = span_rank(dider_flats)
    outcome = sidedness.pop() if len(sidedness) == 1 else (
        "vacuous" if not sidedness else "mixed")
    doc = {
        "command": "compare",
        "algebra": A.name,
        "window": list(cfg.perm_window),
        "seed": cfg.seed,
        "derivations": {
            "solver_dim": der.dimension,
            "assembled_span_dim": der_span,
            "gap": der.dimension - der_span,
        },
        "diderivations": {
            "solver_dim": dider.dimension,
            "assembled_span_dim": dider_span,
            "gap": dider.dimension - dider_span,
            "sidedness": outcome,
        },
        "perm_factor": {
            "name": P.name,
            "der_dim": perm_der.dimension,
            "lder_dim": lder.dimension,
            "rder_dim": rder.dimension,
        },
        "dider_single_identity_dims": {
            "left_only": diderivation_space(D, identities=("left",)).dimension,
            "right_only": diderivation_space(D, identities=("right",)).dimension,
        },
    }
    _emit(doc, cfg)
    gap_free = doc["derivations"]["gap"] == 0 and doc["diderivations"]["gap"] == 0
    return OK if gap_free else VIOLATION


COMMANDS = {
    "validate": cmd_validate,
    "derspace": cmd_space,
    "diderspace": cmd_space,
    "assemble": cmd_assemble,
    "decompose": cmd_decompose,
    "compare": cmd_compare,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="permdial",
        description="Exact perm-algebra / tensor-dialgebra toolkit")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--algebra", help="algebra JSON path, or catalog:{q,t3,m2,c2}")
        p.add_argument("--dialgebra", help="dialgebra JSON path (validate only)")
        p.add_argument("--window", nargs=2, type=int, default=[1, 1],
                       metavar=("N1", "N2"), help="perm truncation window")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", help="output path (default stdout)")
        p.add_argument("--pretty", action="store_true",
                       help="text rendering instead of compact JSON")
        p.add_argument("--family", help="component family JSON (assemble)")
        p.add_argument("--operator", help="operator JSON (decompose)")
        p.add_argument("--kind", choices=("der", "dider"), default="der")
        p.add_argument("--trials", type=int, default=12,
                       help="sampled families per compare run")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.window[0] < 0 or args.window[1] < 0:
        print("error: window components must be non-negative", file=sys.stderr)
        return BAD_INPUT
    cfg = RunConfig(
        command=args.command,
        algebra_path=args.algebra,
        dialgebra_path=args.dialgebra,
        perm_window=(args.window[0], args.window[1]),
        seed=args.seed,
        output_path=args.out,
        pretty=args.pretty,
        family_path=args.family,
        operator_path=args.operator,
        kind=args.kind,
        trials=args.trials,
    )
    try:
        return COMMANDS[cfg.command](cfg)
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT
    except ContractViolation as exc:
        doc = {"command": cfg.command, "error": str(exc), "passed": False}
        if exc.report is not None:
            doc["report"] = exc.report.to_json()
        _emit(doc, cfg)
        return VIOLATION


if __name__ == "__main__":
    sys.exit(main())
