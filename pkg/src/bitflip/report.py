"""JSON report documents (schema version "1").

Every section names the operation(s) that produced its numbers under
``provenance``.  Documents are dumped with sorted keys and carry no timing
or environment data, so identical inputs give byte-identical output.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import asdict
from fractions import Fraction
from math import comb

from .decoder import DecodeResult
from .geometry import ConfigurationWitness, ExpansionResult
from .spectral import SpectralSummary
from .verifier import Certificate, PairFailure, StructuralVerdict, VerifyReport

SCHEMA_VERSION = "1"


def digest_bytes(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def document(command: str, input_digest: str | None, sections: dict) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "input_digest": input_digest,
        "sections": sections,
    }


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def fraction(x: Fraction) -> dict:
    return {"exact": str(x), "value": float(x)}


def decode_result(res: DecodeResult, include_trace: bool = True) -> dict:
    out = {
        "status": res.status.value,
        "estimated_error": sorted(res.estimated_error),
        "flips": sum(len(s.flipped) for s in res.trace),
        "iterations": len(res.trace),
        "initial_weight": res.initial_weight,
        "final_weight": res.final_syndrome.bit_count(),
    }
    if include_trace:
        out["syndrome_weights"] = res.weights()
        out["trace"] = [
            {"flipped": list(s.flipped), "unsat": s.unsat, "weight_after": s.weight_after} for s in res.trace
        ]
    return out


def verify_report(rep: VerifyReport, max_listed: int = 50) -> dict:
    return {
        "provenance": "verifier.verify_exhaustive",
        "t": rep.t,
        "mode": rep.mode.describe(),
        "patterns_checked": rep.patterns_checked,
        "failure_count": len(rep.failures),
        "failures_listed": min(len(rep.failures), max_listed),
        "failures": [
            {"support": list(f.support), "witness": decode_result(f.witness)} for f in rep.failures[:max_listed]
        ],
        "verdict": "pass" if rep.passed else "fail",
    }


def certificate(cert: Certificate) -> dict:
    out = asdict(cert)
    out["provenance"] = "verifier.certify_pseudoredundancy"
    return out


def spectral_summary(s: SpectralSummary) -> dict:
    out = asdict(s)
    out["lambda1"] = float(f"{s.lambda1:.12g}")
    out["lambda2"] = float(f"{s.lambda2:.12g}")
    out["provenance"] = "spectral.top_two_eigenvalues, spectral.check_biregular_connected"
    return out


def witness(w: ConfigurationWitness | None) -> dict | None:
    if w is None:
        return None
    return {"block_indices": list(w.block_indices), "intersection_points": list(w.intersection_points)}


def expansion(res: ExpansionResult, c: int, s: int | None) -> dict:
    per_t = []
    for t, u in enumerate(res.min_unions, start=1):
        row = {"t": t, "min_union": u, "threshold": fraction(res.alpha * t)}
        if s is not None:
            row["counting_lower_bound"] = c * t - comb(t, 2) * s
        per_t.append(row)
    return {
        "provenance": "geometry.expansion_check, geometry.min_union_size",
        "alpha": str(res.alpha),
        "t_max": res.t_max,
        "passed": res.passed,
        "per_t": per_t,
        "failing_t": res.failing_t,
        "witness": list(res.witness) if res.witness is not None else None,
    }


def pair_failures(fails: list[PairFailure], n_pairs: int) -> dict:
    return {
        "provenance": "verifier.two_error_scan",
        "pairs_checked": n_pairs,
        "failure_count": len(fails),
        "failures": [{"pair": list(f.pair), "third": f.third, "reason": f.reason} for f in fails],
        "verdict": "pass" if not fails else "fail",
    }


def structural(v: StructuralVerdict) -> dict:
    return {
        "provenance": "verifier.structural_t3_scan_c5, geometry.find_configuration",
        "verdict": "pass" if v.passed else "fail",
        "four_line_witness": witness(v.witness),
    }
