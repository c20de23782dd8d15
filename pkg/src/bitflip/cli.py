"""Command-line interface.

Exit codes: 0 pass/success, 1 verified failure, 2 usage or format error,
3 budget exceeded.  Reports go to stdout as one JSON document.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from math import comb
from pathlib import Path

from . import report
from .alist import parse_alist, write_alist
from .decoder import DecoderConfig, Status, TieBreak, decode
from .errors import BitflipError, BudgetExceededError, InstanceTooLargeError, NotLeftRegularError, TrivialCodeError
from .geometry import (
    UNION_BUDGET,
    design_pseudoweight_bound,
    expansion_check,
    max_pairwise_intersection,
    union_size_distribution,
)
from .gf2 import BinaryMatrix, column_blocks, min_distance, rank, syndrome
from .instances import FAMILIES, build_family
from .spectral import (
    EIGEN_BUDGET,
    report_bound,
    spectral_summary,
    tanner_distance_bound,
    tanner_expansion_bound,
)
from .verifier import (
    VERIFY_BUDGET,
    VerifyMode,
    certify_pseudoredundancy,
    structural_t3_scan_c5,
    two_error_scan,
    verify_exhaustive,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(BitflipError):
    pass


def _load(path: str) -> tuple[BinaryMatrix, str]:
    data = Path(path).read_bytes()
    return parse_alist(data.decode()), report.digest_bytes(data)


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _decoder_config(args) -> DecoderConfig:
    variant = {"step": "step_by_step", "parallel": "parallel"}[args.variant]
    return DecoderConfig(variant, TieBreak.parse(args.tie_break), args.max_iterations)


def _emit(doc: dict) -> None:
    sys.stdout.write(report.dumps(doc))


def _guaranteed_t(c: int, s: int) -> int | None:
    """Largest t with (2t - 1) s < c; None when s = 0 (no finite bound from this rule)."""
    if s == 0:
        return None
    t = 0
    while (2 * (t + 1) - 1) * s < c:
        t += 1
    return t


def cmd_construct(args) -> int:
    con = build_family(args.family, args.q, args.m)
    text = write_alist(con.matrix)
    if args.out is None:
        sys.stdout.write(text)
        return EXIT_OK
    Path(args.out).write_text(text)
    H = con.matrix
    _emit(
        report.document(
            "construct",
            report.digest_bytes(text.encode()),
            {
                "construction": {
                    "provenance": f"constructions ({con.family})",
                    "family": con.family,
                    "params": con.params,
                    "rows": H.nrows,
                    "cols": H.ncols,
                    "output": str(args.out),
                    "metadata": con.metadata,
                }
            },
        )
    )
    return EXIT_OK


def _analysis_sections(H: BinaryMatrix, want_distance: bool) -> dict:
    rk = rank(H)
    params = {
        "provenance": "gf2.rank, gf2.nullspace_basis" + (", gf2.min_distance" if want_distance else ""),
        "n": H.ncols,
        "r": H.nrows,
        "rank": rk,
        "k": H.ncols - rk,
    }
    if want_distance:
        try:
            params["d_min"] = min_distance(H)
        except TrivialCodeError:
            params["d_min"] = None
            params["note"] = "dimension 0: minimum distance undefined"
    col_hist: dict[int, int] = {}
    for w in H.column_weights():
        col_hist[w] = col_hist.get(w, 0) + 1
    row_w = sorted(set(H.row_weights()))
    sections = {"code_params": params}
    reg = {
        "provenance": "gf2.column_blocks",
        "left_regular": False,
        "column_weight": None,
        "column_weight_histogram": {str(k): v for k, v in sorted(col_hist.items())},
        "row_weights": row_w,
        "right_regular": len(row_w) == 1,
    }
    sections["regularity"] = reg
    try:
        blocks = column_blocks(H)
    except NotLeftRegularError:
        return sections
    reg["left_regular"] = True
    reg["column_weight"] = c = blocks.block_size
    if blocks.n >= 2:
        s = max_pairwise_intersection(blocks)
        sections["partial_geometry"] = {
            "provenance": "geometry.max_pairwise_intersection",
            "s": s,
            "is_partial_geometry": s <= 1,
            "guaranteed_t": _guaranteed_t(c, s),
        }
        if s >= 1:
            sections["design_pseudoweight_bound"] = {
                "provenance": "geometry.design_pseudoweight_bound",
                **report.fraction(design_pseudoweight_bound(c, s)),
            }
    return sections


def cmd_analyze(args) -> int:
    H, dig = _load(args.file)
    _emit(report.document("analyze", dig, _analysis_sections(H, args.min_distance)))
    return EXIT_OK


def cmd_decode(args) -> int:
    H, dig = _load(args.file)
    blocks = column_blocks(H)
    support = _int_list(args.error)
    if any(not 0 <= i < blocks.n for i in support):
        raise UsageError(f"error positions must lie in 0..{blocks.n - 1}")
    if len(set(support)) != len(support):
        raise UsageError("repeated error position")
    cfg = _decoder_config(args)
    res = decode(blocks, syndrome(blocks, support), cfg)
    section = {"provenance": "decoder.decode", "error_support": sorted(support), "variant": cfg.variant.value}
    section.update(report.decode_result(res, include_trace=args.trace))
    correct = res.status is Status.SUCCESS and res.estimated_error == frozenset(support)
    section["correct"] = correct
    _emit(report.document("decode", dig, {"decode": section}))
    return EXIT_OK if correct else EXIT_FAIL


def _verify_mode(args) -> VerifyMode:
    if args.mode == "fixed":
        return VerifyMode("fixed", _decoder_config(args))
    return VerifyMode(args.mode)


def cmd_verify(args) -> int:
    H, dig = _load(args.file)
    rep = verify_exhaustive(H, args.t, _verify_mode(args), jobs=args.jobs, budget=args.budget)
    _emit(report.document("verify", dig, {"verify": report.verify_report(rep, args.max_listed)}))
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_certify(args) -> int:
    H, dig = _load(args.file)
    ref = _load(args.reference)[0] if args.reference else H
    meta = {"candidate_file_digest": dig, "reference": "candidate" if not args.reference else "file"}
    cert = certify_pseudoredundancy(ref, H, jobs=args.jobs, budget=args.budget, metadata=meta)
    _emit(report.document("certify", dig, {"certificate": report.certificate(cert)}))
    return EXIT_OK if cert.verdict == "pass" else EXIT_FAIL


def cmd_spectral(args) -> int:
    H, dig = _load(args.file)
    s = spectral_summary(H, tol=args.tol, budget=args.budget)
    sections = {"spectral": report.spectral_summary(s)}
    bounds: dict = {"provenance": "spectral.tanner_distance_bound, spectral.tanner_expansion_bound"}
    if not (s.biregular and s.connected):
        bounds["applicable"] = False
        bounds["reason"] = "Tanner graph must be connected and biregular"
    elif not s.lambda1 > s.lambda2 + args.tol:
        bounds["applicable"] = False
        bounds["reason"] = "degenerate spectrum: lambda1 = lambda2"
    else:
        c = s.c
        bounds["applicable"] = True
        bounds["distance"] = report_bound(tanner_distance_bound(s.n, c, s.lambda1, s.lambda2))
        t_max = args.t_max if args.t_max is not None else min(s.n, c + 1)
        bounds["expansion"] = [
            {"t": t, **report_bound(tanner_expansion_bound(s.n, c, s.lambda1, s.lambda2, t))}
            for t in range(1, t_max + 1)
        ]
    sections["tanner_bounds"] = bounds
    _emit(report.document("spectral", dig, sections))
    return EXIT_OK


def _parse_alpha(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"alpha must be a rational P/Q, got {text!r}") from None


def cmd_expander(args) -> int:
    H, dig = _load(args.file)
    blocks = column_blocks(H)
    alpha = _parse_alpha(args.alpha)
    if not 1 <= args.t_max <= blocks.n:
        raise UsageError(f"--t-max must lie in 1..{blocks.n}")
    res = expansion_check(blocks, args.t_max, alpha, budget=args.budget)
    s = max_pairwise_intersection(blocks) if blocks.n >= 2 else None
    section = report.expansion(res, blocks.block_size, s)
    if args.distribution:
        section["union_distribution"] = {
            str(t): {str(k): v for k, v in union_size_distribution(blocks, t, args.budget).items()}
            for t in range(1, args.t_max + 1)
        }
    _emit(report.document("expander", dig, {"expansion": section}))
    return EXIT_OK if res.passed else EXIT_FAIL


def cmd_failure_scan(args) -> int:
    H, dig = _load(args.file)
    blocks = column_blocks(H)
    if args.t == 2:
        fails = two_error_scan(blocks)
        section = report.pair_failures(fails, comb(blocks.n, 2))
        passed = not fails
    else:
        v = structural_t3_scan_c5(blocks)
        section = report.structural(v)
        passed = v.passed
    _emit(report.document("failure-scan", dig, {"failure_scan": section}))
    return EXIT_OK if passed else EXIT_FAIL


def _add_decoder_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--variant", choices=("step", "parallel"), default="step")
    p.add_argument("--tie-break", default="lowest", help="lowest | seed:N | first:K")
    p.add_argument("--max-iterations", type=int, default=None)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="bitflip", description="Bit-flipping decoding and pseudoredundancy tools")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a parity-check matrix")
    p.add_argument("--family", required=True, choices=FAMILIES)
    p.add_argument("--q", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--out", help="alist output path (stdout if omitted)")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("analyze", help="code parameters, regularity, partial-geometry s")
    p.add_argument("file")
    p.add_argument("--min-distance", action="store_true")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("decode", help="run the decoder on one error pattern")
    p.add_argument("file")
    p.add_argument("--error", required=True, help="comma-separated 0-based positions")
    _add_decoder_args(p)
    p.add_argument("--trace", action="store_true")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("verify", help="exhaustive t-error verification")
    p.add_argument("file")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--mode", choices=("fixed", "adversarial", "existential"), default="adversarial")
    _add_decoder_args(p)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--budget", type=int, default=VERIFY_BUDGET)
    p.add_argument("--max-listed", type=int, default=50, help="failures listed in the report")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("certify", help="pseudoredundancy upper-bound certificate")
    p.add_argument("file")
    p.add_argument("--reference", help="parity-check matrix defining the code (default: FILE)")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--budget", type=int, default=VERIFY_BUDGET)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("spectral", help="eigenvalues of H^T H and Tanner bounds")
    p.add_argument("file")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--t-max", type=int, default=None)
    p.add_argument("--budget", type=int, default=EIGEN_BUDGET)
    p.set_defaults(func=cmd_spectral)

    p = sub.add_parser("expander", help="exhaustive vertex-expansion check")
    p.add_argument("file")
    p.add_argument("--t-max", type=int, required=True)
    p.add_argument("--alpha", required=True, help="rational P/Q")
    p.add_argument("--budget", type=int, default=UNION_BUDGET)
    p.add_argument("--distribution", action="store_true", help="also report union-size histograms")
    p.set_defaults(func=cmd_expander)

    p = sub.add_parser("failure-scan", help="structural failure criteria for t = 2 or 3")
    p.add_argument("file")
    p.add_argument("--t", type=int, choices=(2, 3), required=True)
    p.set_defaults(func=cmd_failure_scan)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "jobs", 1) < 1:
        print("bitflip: --jobs must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (BudgetExceededError, InstanceTooLargeError) as exc:
        print(f"bitflip: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (BitflipError, ValueError, OSError) as exc:
        print(f"bitflip: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
