"""Command-line front end emitting deterministic JSON reports.

Subcommands: classify (M-classes and existence), certify (integrability
sweeps with serialized witnesses), moduli, spinor, and hermitian.  Exit
codes: 0 success, 1 usage error, 2 invariant violation or unsupported
input, 3 theorem-contradiction sentinel (an Integrable verdict on a GM2
flag).  Reports are byte-identical for fixed inputs and seed.
"""

from __future__ import annotations

import argparse
import itertools
import json
import os
import random
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction as Q
from typing import Dict, List, Optional, Sequence, Tuple

from . import __version__
from .btransform import hermitian_pair, metric_normal_form, moduli_coordinates, pure_spinor
from .chevalley import build_structure_constants
from .courant import Witness, check_integrability
from .errors import FlagcxError, TheoremContradiction, UnsupportedFlag
from .gtangent import (
    Block,
    ComplexBlock,
    GVector,
    InvariantGacs,
    NonComplexBlock,
    assemble,
    random_structure,
)
from .mclass import compute_classes, decide_existence
from .rationals import GQ
from .rootsys import FlagSpec, LieType, Root, build_root_system, parse_root_label, root_label


class _UsageError(Exception):
    """A malformed flag, theta, combination, or block specification."""


def _parse_flag(type_: str, rank: int, theta_text: str) -> FlagSpec:
    rs = build_root_system(LieType(type_.upper(), rank))
    text = theta_text.strip()
    if text.lower() == "all":
        return FlagSpec(rs, frozenset(rs.simple_roots))
    theta: List[Root] = []
    if text:
        for token in text.split(","):
            try:
                theta.append(parse_root_label(rs, token.replace("λ", "l")))
            except ValueError as exc:
                raise _UsageError(str(exc)) from exc
    if not set(theta) <= set(rs.simple_roots):
        raise _UsageError("theta must consist of simple roots")
    return FlagSpec(rs, frozenset(theta))


def _q_str(value: Q) -> str:
    return str(value)


def _gq_json(value: GQ) -> Dict[str, str]:
    return {"re": _q_str(value.re), "im": _q_str(value.im)}


def _gvector_json(rs, v: GVector) -> List[Dict[str, object]]:
    items = sorted(v.coeffs.items(), key=lambda kv: (kv[0][0], kv[0][1]))
    return [
        {"part": "tangent" if part == "x" else "dual", "root": root_label(rs, root), "coeff": _gq_json(c)}
        for (part, root), c in items
    ]


def _witness_json(rs, w: Witness) -> Dict[str, object]:
    return {
        "u": _gvector_json(rs, w.u),
        "v": _gvector_json(rs, w.v),
        "l": _gvector_json(rs, w.l),
        "nijenhuis": _gq_json(w.value),
    }


def _flag_json(flag: FlagSpec) -> Dict[str, object]:
    rs = flag.root_system
    return {
        "type": rs.lie_type.family,
        "rank": rs.lie_type.rank,
        "theta": sorted(root_label(rs, a) for a in flag.theta),
    }


def _report(command: str, flag: FlagSpec, payload: Dict[str, object], seed: Optional[int] = None) -> Dict[str, object]:
    return {
        "tool": "flagcx",
        "tool_version": __version__,
        "schema": 1,
        "command": command,
        "flag": _flag_json(flag),
        "seed": seed,
        "payload": payload,
    }


def _emit(report: Dict[str, object], args: argparse.Namespace) -> None:
    text = json.dumps(report, indent=2) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def cmd_classify(args: argparse.Namespace) -> int:
    flag = _parse_flag(args.type, args.rank, args.theta)
    rs = flag.root_system
    report = decide_existence(flag)
    payload = {
        "is_maximal": flag.is_maximal,
        "is_trivial": flag.is_trivial,
        "complement_dimension": sum(c.size for c in report.classes),
        "classes": [
            {
                "representative": root_label(rs, cls.representative),
                "members": [root_label(rs, r) for r in cls.members],
                "size": cls.size,
            }
            for cls in report.classes
        ],
        "admits_gacs": report.admits_gacs,
        "gm2": report.gm2,
    }
    _emit(_report("classify", flag, payload), args)
    return 0


_KINDS = {"c": "complex", "complex": "complex", "nc": "noncomplex", "noncomplex": "noncomplex"}


def _parse_combination(text: str, two_dim: int) -> Tuple[str, ...]:
    tokens = [t.strip().lower() for t in text.split(",")]
    try:
        kinds = tuple(_KINDS[t] for t in tokens)
    except KeyError as exc:
        raise _UsageError(f"unknown combination token {exc.args[0]!r} (use c or nc)") from exc
    if len(kinds) != two_dim:
        raise _UsageError(f"combination needs {two_dim} tokens, got {len(kinds)}")
    return kinds


def cmd_certify(args: argparse.Namespace) -> int:
    flag = _parse_flag(args.type, args.rank, args.theta)
    rs = flag.root_system
    report = decide_existence(flag)
    if not flag.is_maximal:
        raise UnsupportedFlag("certify requires a maximal flag (empty theta)")
    if not report.admits_gacs:
        raise UnsupportedFlag("flag admits no invariant structure")
    # C4 maximal is outside the non-integrability theorem (its big-class
    # combinatorics are open), so its sweeps never claim a contradiction.
    exploratory = not report.gm2 or (
        rs.lie_type.family == "C" and rs.lie_type.rank == 4
    )
    two_dim = sum(1 for c in report.classes if c.size == 2)

    combinations: List[Optional[Tuple[str, ...]]]
    if args.all_combinations:
        if two_dim == 0:
            raise UnsupportedFlag("flag has no 2-element classes to combine over")
        combinations = [kinds for kinds in itertools.product(("complex", "noncomplex"), repeat=two_dim)]
    elif args.combination:
        combinations = [_parse_combination(args.combination, two_dim)]
    elif args.random:
        combinations = [None]
    else:
        raise _UsageError("choose one of --all-combinations, --combination, --random")

    sc = build_structure_constants(rs)
    threads = max(1, int(os.environ.get("FLAGCX_THREADS", "1")))

    def run_sample(task: Tuple[int, Optional[Tuple[str, ...]], int]) -> Dict[str, object]:
        combo_index, kinds, sample = task
        rng = random.Random(f"{args.seed}:{combo_index}:{sample}")
        j = random_structure(flag, rng, kinds)
        result = check_integrability(sc, j)
        entry: Dict[str, object] = {
            "combination": list(kinds) if kinds else "random",
            "sample": sample,
            "kinds": [b.kind for b in j.blocks],
            "integrable": result.integrable,
        }
        if not result.integrable:
            if not result.witness.re_verify(sc):
                raise FlagcxError("witness failed re-verification before emission")
            entry["witness"] = _witness_json(rs, result.witness)
        return entry

    tasks = [
        (ci, kinds, sample)
        for ci, kinds in enumerate(combinations)
        for sample in range(args.samples)
    ]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            verdicts = list(pool.map(run_sample, tasks))
    else:
        verdicts = [run_sample(t) for t in tasks]

    integrable_count = sum(1 for v in verdicts if v["integrable"])
    payload = {
        "exploratory": exploratory,
        "theorem_claim": None if exploratory else "no integrable invariant structure (GM2 maximal)",
        "combinations": len(combinations),
        "samples_per_combination": args.samples,
        "summary": {
            "total": len(verdicts),
            "not_integrable": len(verdicts) - integrable_count,
            "integrable": integrable_count,
        },
        "verdicts": verdicts,
    }
    _emit(_report("certify", flag, payload, seed=args.seed), args)
    if integrable_count and not exploratory:
        raise TheoremContradiction("Integrable verdict on a GM2 maximal flag")
    return 0


def _parse_blocks(flag: FlagSpec, text: str) -> InvariantGacs:
    classes = compute_classes(flag)
    tokens = [t.strip() for t in text.split(",")] if text.strip() else []
    if len(tokens) != len(classes):
        raise _UsageError(f"expected {len(classes)} block tokens, got {len(tokens)}")
    blocks: List[Block] = []
    for token in tokens:
        parts = token.split(":")
        try:
            if parts[0] in ("c", "complex") and len(parts) == 3:
                blocks.append(ComplexBlock(Q(parts[1]), Q(parts[2])))
            elif parts[0] in ("nc", "noncomplex") and len(parts) == 3:
                a, x = Q(parts[1]), Q(parts[2])
                blocks.append(NonComplexBlock(a, x, (a * a + 1) / x))
            elif parts[0] in ("sym", "symplectic") and len(parts) == 2:
                x = Q(parts[1])
                blocks.append(NonComplexBlock(Q(0), x, 1 / x))
            else:
                raise _UsageError(
                    f"bad block token {token!r} (use c:b:c, nc:a:x, or sym:x)"
                )
        except (ValueError, ZeroDivisionError) as exc:
            raise _UsageError(f"bad block token {token!r}: {exc}") from exc
    return assemble(flag, blocks)


def _require_gm2(flag: FlagSpec) -> None:
    report = decide_existence(flag)
    if not (flag.is_maximal and report.admits_gacs):
        raise UnsupportedFlag("this command requires a maximal flag admitting structures")


def cmd_moduli(args: argparse.Namespace) -> int:
    flag = _parse_flag(args.type, args.rank, args.theta)
    _require_gm2(flag)
    j = _parse_blocks(flag, args.blocks)
    rs = flag.root_system
    charts = moduli_coordinates(j)
    payload = {
        "charts": [
            {
                "class": root_label(rs, cls.representative),
                "kind": chart.kind,
                **(
                    {"x": _q_str(chart.x)}
                    if chart.kind == "symplectic"
                    else {"c": _q_str(chart.c), "b": _q_str(chart.b)}
                ),
            }
            for cls, chart in zip(j.classes, charts)
        ]
    }
    _emit(_report("moduli", flag, payload), args)
    return 0


def cmd_spinor(args: argparse.Namespace) -> int:
    flag = _parse_flag(args.type, args.rank, args.theta)
    _require_gm2(flag)
    j = _parse_blocks(flag, args.blocks)
    rs = flag.root_system
    phi = pure_spinor(j)
    order = {key: i for i, key in enumerate(sorted(phi.terms, key=lambda k: (len(k), k)))}
    payload = {
        "terms": [
            {"roots": [root_label(rs, r) for r in key], "coeff": _gq_json(phi.terms[key])}
            for key in sorted(phi.terms, key=order.__getitem__)
        ]
    }
    _emit(_report("spinor", flag, payload), args)
    return 0


def cmd_hermitian(args: argparse.Namespace) -> int:
    flag = _parse_flag(args.type, args.rank, args.theta)
    _require_gm2(flag)
    j = _parse_blocks(flag, args.blocks)
    jp = _parse_blocks(flag, args.blocks2)
    rs = flag.root_system
    pair = hermitian_pair(j, jp)
    payload: Dict[str, object] = {
        "commute": pair.commute,
        "positive": pair.positive,
        "valid": pair.valid,
    }
    if not pair.valid:
        payload["reason"] = (
            "structures do not commute"
            if not pair.commute
            else "metric is not positive definite (needs c*x > 0 on every class)"
        )
    if pair.metric is not None:
        payload["metric_blocks"] = [
            {
                "class": root_label(rs, cls.representative),
                "matrix": [[_q_str(x) for x in row] for row in pair.metric.block_matrix(ci)],
            }
            for ci, cls in enumerate(pair.metric.classes)
        ]
    if pair.valid:
        form = metric_normal_form(pair.metric)
        payload["normal_form"] = {
            "riemannian": [
                {
                    "class": root_label(rs, cls.representative),
                    "matrix": [[_q_str(x) for x in row] for row in form.riemannian[ci]],
                }
                for ci, cls in enumerate(form.classes)
            ],
            "b_field": [
                {"pair": [root_label(rs, r1), root_label(rs, r2)], "coeff": _q_str(t)}
                for (r1, r2), t in sorted(form.b2.coeffs.items())
            ],
        }
    _emit(_report("hermitian", flag, payload), args)
    return 0


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _add_flag_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--type", required=True, help="Lie type family: A, B, C, D, or G")
    parser.add_argument("--rank", required=True, type=int, help="rank of the Lie type")
    parser.add_argument(
        "--theta",
        default="",
        help='comma-separated simple roots (labels or 1-based indices); "" = maximal, "all" = trivial',
    )
    parser.add_argument("--format", choices=("json",), default="json", help="output format")
    parser.add_argument("--out", default=None, help="write the report to a file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="flagcx", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"flagcx {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="M-classes, existence, and GM2 status of a flag")
    _add_flag_args(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("certify", help="integrability sweeps with re-verified witnesses")
    _add_flag_args(p)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--all-combinations", action="store_true", help="sweep every complex/noncomplex combination")
    group.add_argument("--combination", default=None, help="fixed combination, e.g. c,nc,nc")
    group.add_argument("--random", action="store_true", help="draw a random combination per sample")
    p.add_argument("--samples", type=int, default=100, help="samples per combination")
    p.add_argument("--seed", type=int, default=0, help="PRNG seed")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("moduli", help="moduli coordinates of a given structure")
    _add_flag_args(p)
    p.add_argument("--blocks", required=True, help="per-class blocks, e.g. sym:1,c:0:2 (c:b:c, nc:a:x, sym:x)")
    p.set_defaults(func=cmd_moduli)

    p = sub.add_parser("spinor", help="pure spinor term list of a given structure")
    _add_flag_args(p)
    p.add_argument("--blocks", required=True, help="per-class blocks (c:b:c, nc:a:x, sym:x)")
    p.set_defaults(func=cmd_spinor)

    p = sub.add_parser("hermitian", help="Hermitian pair verdict and generalized metric")
    _add_flag_args(p)
    p.add_argument("--blocks", required=True, help="blocks of the first structure")
    p.add_argument("--blocks2", required=True, help="blocks of the second structure")
    p.set_defaults(func=cmd_hermitian)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"flagcx: error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"flagcx: error: {exc}", file=sys.stderr)
        return 1
    except TheoremContradiction as exc:
        print(f"flagcx: theorem contradiction: {exc}", file=sys.stderr)
        return 3
    except FlagcxError as exc:
        print(f"flagcx: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
