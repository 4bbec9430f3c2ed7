"""Walk every document in data/ and print verdicts and growth in one table.

Usage: python scripts/golden_tour.py [--bound N] [--data DIR]
"""

import argparse
import json
import os
import warnings

from ncample.ampleness import nc_ample_verdict
from ncample.bimodule_system import load_system
from ncample.errors import NotNCAmple
from ncample.gk_dimension import gk

DEFAULT_DATA = os.path.join(os.path.dirname(__file__), os.pardir, "data")


def describe(path: str, bound: int) -> dict:
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    system = load_system(doc)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        verdict = nc_ample_verdict(system, search_bound=bound)
    row = {
        "name": os.path.basename(path),
        "scheme": system.scheme.name,
        "s": system.s,
        "kind": verdict.kind,
        "m0": verdict.m0,
        "gk": None,
        "warned": bool(caught),
    }
    if verdict.kind == "NCAmple":
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            row["gk"] = gk(system, search_bound=bound).gk
    return row


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--bound", type=int, default=16)
    parser.add_argument("--data", default=DEFAULT_DATA)
    args = parser.parse_args()

    paths = sorted(
        os.path.join(args.data, name)
        for name in os.listdir(args.data) if name.endswith(".json"))
    if not paths:
        print(f"no documents under {args.data}")
        return 1

    header = f"{'document':<28} {'scheme':<10} {'s':>2} {'verdict':<24} {'m0':<10} {'gk':>3}"
    print(header)
    print("-" * len(header))
    for path in paths:
        try:
            row = describe(path, args.bound)
        except NotNCAmple as exc:
            print(f"{os.path.basename(path):<28} growth undefined: {exc}")
            continue
        m0 = "-" if row["m0"] is None else ",".join(map(str, row["m0"]))
        gk_text = "-" if row["gk"] is None else str(row["gk"])
        mark = " !" if row["warned"] else ""
        print(f"{row['name']:<28} {row['scheme']:<10} {row['s']:>2} "
              f"{row['kind']:<24} {m0:<10} {gk_text:>3}{mark}")
    print("\n'!' marks documents that triggered a realizability warning")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
