"""Random left-regular instances: expansion radius against distance and decoding radius.

    python3 scripts/expander_sweep.py --instances 200 --seed 2024
"""

import argparse
import random
from collections import Counter
from fractions import Fraction

from bitflip.errors import TrivialCodeError
from bitflip.geometry import expansion_check
from bitflip.gf2 import min_distance
from bitflip.instances import random_left_regular
from bitflip.verifier import verify_exhaustive


def expansion_radius(blocks, alpha):
    d = 0
    while d < blocks.n and expansion_check(blocks, d + 1, alpha).passed:
        d += 1
    return d


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--instances", type=int, default=200)
    ap.add_argument("--seed", type=int, default=2024)
    ap.add_argument("--max-n", type=int, default=20)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    rows = []
    while len(rows) < args.instances:
        c = rng.choice([3, 5])
        n = rng.randint(4, args.max_n)
        pg = len(rows) % 2 == 1
        r = rng.randint(c + 1, (4 if pg else 3) * n)
        blocks = random_left_regular(rng, n, r, c, partial_geometry=pg)
        if blocks is None:
            continue
        d_half = expansion_radius(blocks, Fraction(c, 2))
        d_34 = expansion_radius(blocks, Fraction(3 * c, 4))
        try:
            dmin = min_distance(blocks.to_matrix())
        except TrivialCodeError:
            dmin = None
        decodes = verify_exhaustive(blocks, d_34 // 2).passed
        rows.append((n, r, c, pg, d_half, dmin, d_34, decodes))

    bad_distance = [row for row in rows if row[5] is not None and not row[5] > row[4]]
    bad_decoding = [row for row in rows if not row[7]]
    print(f"{len(rows)} instances ({sum(r[3] for r in rows)} partial geometries)")
    print(f"nontrivial codes: {sum(r[5] is not None for r in rows)}")
    print("c/2 expansion radius histogram:", dict(sorted(Counter(r[4] for r in rows).items())))
    print("3c/4 expansion radius histogram:", dict(sorted(Counter(r[6] for r in rows).items())))
    print(f"distance violations: {len(bad_distance)}, decoding violations: {len(bad_decoding)}")
    gaps = Counter(r[5] - r[4] for r in rows if r[5] is not None)
    print("d_min - radius:", dict(sorted(gaps.items())))


if __name__ == "__main__":
    main()
