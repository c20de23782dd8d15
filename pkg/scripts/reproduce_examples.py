"""Rebuild the named instances and print their headline numbers.

    python3 scripts/reproduce_examples.py
"""

from bitflip import constructions as cons
from bitflip.decoder import DecoderConfig, TieBreak, decode
from bitflip.geometry import max_pairwise_intersection
from bitflip.gf2 import column_blocks, dimension, min_distance, nullspace_basis, syndrome
from bitflip.instances import fig1_instance
from bitflip.spectral import spectral_summary, tanner_distance_bound
from bitflip.verifier import certify_pseudoredundancy, structural_t3_scan_c5, verify_exhaustive


def code_table():
    print("code parameters")
    for name, H in (
        ("PG(2,2)", cons.projective_plane(2)),
        ("PG(2,4)", cons.projective_plane(4)),
        ("EG(2,4)*", cons.euclidean_punctured(4)),
    ):
        print(f"  {name:9s} [{H.ncols}, {dimension(H)}, {min_distance(H)}]")


def certificates():
    print("certificates (adversarial verification at t = (d-1)//2)")
    cases = [
        ("PG(2,4)", cons.projective_plane(4), cons.projective_plane(4)),
        ("EG(2,4)*", cons.euclidean_punctured(4), cons.euclidean_punctured(4)),
        ("simplex w3 m=4", nullspace_basis(cons.hamming_matrix(4)), cons.simplex_weight3_matrix(4)),
        ("simplex circulant m=4", nullspace_basis(cons.cyclic_hamming_matrix(4)), cons.simplex_circulant(4)),
        ("hamming circulant m=3", cons.cyclic_hamming_matrix(3), cons.hamming_circulant(3)),
        ("hamming circulant m=4", cons.cyclic_hamming_matrix(4), cons.hamming_circulant(4)),
    ]
    for name, ref, cand in cases:
        cert = certify_pseudoredundancy(ref, cand)
        bound = f"rho <= {cert.rho_upper_bound}" if cert.verdict == "pass" else f"fails at {cert.failed_clause}"
        print(f"  {name:22s} d={cert.d_min} t={cert.t_target}: {bound} ({cert.failure_count} failing patterns)")


def pg4_three_errors():
    blocks = column_blocks(cons.projective_plane(4))
    v = structural_t3_scan_c5(blocks)
    rep = verify_exhaustive(blocks, 3)
    print(f"PG(2,4) t=3: four-line witness {v.witness.block_indices}, {len(rep.failures)} failing patterns")


def spectra():
    print("Tanner distance bound on PG(2,q)")
    for q in (2, 3, 4, 5):
        H = cons.projective_plane(q)
        s = spectral_summary(H)
        b = tanner_distance_bound(s.n, s.c, s.lambda1, s.lambda2)
        print(f"  q={q}: lambda1={s.lambda1:.6f} lambda2={s.lambda2:.6f} bound={b:.6f}")


def frame():
    blocks, support = fig1_instance()
    run = decode(blocks, syndrome(blocks, support), DecoderConfig(tie_break=TieBreak("forced_first", 4)))
    flips = [s.flipped[0] for s in run.trace]
    print(f"frame example: s={max_pairwise_intersection(blocks)}, flips {flips}, |S| {run.weights()}")


if __name__ == "__main__":
    code_table()
    certificates()
    pg4_three_errors()
    spectra()
    frame()
