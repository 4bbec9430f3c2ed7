"""Randomized sweep checking that a system and its dual get the same verdict.

Generates commuting systems from three always-valid families over the
builtin models (identity actions, one shared action with divisors differing
by an invariant vector, and invariant divisors under arbitrary action
powers), then compares verdict kinds across the dual.

Usage: python scripts/duality_sweep.py [--count N] [--seed S] [--bound B]
"""

import argparse
import collections
import random
import warnings

from ncample.ampleness import nc_ample_verdict
from ncample.bimodule_system import dual, make_system
from ncample.lattice_algebra import Matrix
from ncample.scheme_model import builtin_scheme

SCHEMES = ("P1", "P1xP1", "P2", "AbelianSurfaceHyperbolic")


def permutation_action(rho: int, rng: random.Random) -> Matrix:
    perm = list(range(rho))
    rng.shuffle(perm)
    rows = [[0] * rho for _ in range(rho)]
    for j in range(rho):
        rows[j][perm.index(j)] = 1
    return Matrix.from_rows(rows)


def random_system(rng: random.Random):
    scheme = builtin_scheme(rng.choice(SCHEMES))
    rho = scheme.rho
    s = rng.randint(1, 3)
    family = rng.randrange(3)
    if family == 0:
        # independent divisors, identity actions
        pairs = [(tuple(rng.randint(-2, 3) for _ in range(rho)),
                  Matrix.identity(rho)) for _ in range(s)]
    elif family == 1:
        # one shared permutation action, divisors differ by invariant shifts
        action = permutation_action(rho, rng)
        base = tuple(rng.randint(-1, 2) for _ in range(rho))
        pairs = []
        for _ in range(s):
            off = rng.randint(0, 2)
            pairs.append((tuple(b + off for b in base), action))
    else:
        # invariant divisors, independent powers of one permutation
        action = permutation_action(rho, rng)
        pairs = []
        for _ in range(s):
            level = rng.randint(-1, 2)
            pairs.append(((level,) * rho, action ** rng.randint(0, 3)))
    return make_system(scheme, pairs)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--count", type=int, default=200)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--bound", type=int, default=8)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    kinds = collections.Counter()
    decisive = 0
    disagreements = []
    produced = 0
    while produced < args.count:
        system = random_system(rng)
        produced += 1
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            v = nc_ample_verdict(system, search_bound=args.bound)
            vd = nc_ample_verdict(dual(system), search_bound=args.bound)
        kinds[v.kind] += 1
        if v.decisive and vd.decisive:
            decisive += 1
        if v.kind != vd.kind:
            disagreements.append((v.kind, vd.kind))

    print(f"systems checked: {produced}")
    for kind, count in sorted(kinds.items()):
        print(f"  {kind:<24} {count}")
    print(f"decisive on both sides: {decisive}")
    print(f"disagreements: {len(disagreements)}")
    for pair in disagreements:
        print(f"  {pair[0]} vs dual {pair[1]}")
    return 1 if disagreements else 0


if __name__ == "__main__":
    raise SystemExit(main())
