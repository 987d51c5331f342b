#!/usr/bin/env python3
"""Sweep multiplicity tables over a parabolic grid and report dimensions.

For each subset pair (I, J) with |I|, |J| bounded and every index word in a
length ball, build the standard and simple tables and print the filtration
dimensions (nabla, delta).  Useful both as a demonstration and as a quick
positivity/parity stress run, since every table re-checks its invariants.

Examples:
    python3 scripts/tilt_grid.py --type A3
    python3 scripts/tilt_grid.py --type affA2 --level neg --max-length 5
"""

import argparse
from itertools import combinations

from tiltc.coxeter import CoxeterElement, CoxeterSystem, format_word
from tiltc.errors import ValidationError
from tiltc.hecke import HeckeContext
from tiltc.tilting import CategoryO, KacMoody


def ball(system, max_len):
    gens = {s: system.element((s,)) for s in system.names}
    seen = {system.element(())}
    frontier = list(seen)
    for _ in range(max_len):
        new = []
        for w in frontier:
            for s in system.names:
                z = w * gens[s]
                if z.length > w.length and z not in seen:
                    seen.add(z)
                    new.append(z)
        frontier = new
    return sorted(seen, key=CoxeterElement.sort_key)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--type", required=True)
    ap.add_argument("--level", choices=["neg", "pos"], default="neg",
                    help="Kac-Moody level when the type is affine")
    ap.add_argument("--max-length", type=int, default=6)
    ap.add_argument("--max-subset", type=int, default=1,
                    help="largest |I| and |J| to sweep")
    args = ap.parse_args()

    system = CoxeterSystem.from_type(args.type)
    hecke = HeckeContext(system)
    elements = ball(system, args.max_length)
    subsets = [
        c
        for k in range(args.max_subset + 1)
        for c in combinations(system.names, k)
    ]
    built = skipped = 0
    for I in subsets:
        for J in subsets:
            try:
                setting = (
                    CategoryO(hecke, I, J)
                    if system.is_finite
                    else KacMoody(hecke, I, J, args.level)
                )
            except ValidationError:
                continue
            header_shown = False
            for x in elements:
                row = []
                for kind, maker in (
                    ("std", setting.standard_table),
                    ("sim", setting.simple_table),
                ):
                    try:
                        table = maker(x.word)
                    except ValidationError:
                        continue
                    nabla, delta = table.dims()
                    row.append(f"{kind} nabla={nabla} delta={delta}")
                    built += 1
                if not row:
                    skipped += 1
                    continue
                if not header_shown:
                    print(
                        f"== {setting.setting_name} {system.tag} "
                        f"I=({format_word(I)}) J=({format_word(J)})"
                    )
                    header_shown = True
                print(f"  x = {format_word(x.word) or 'e':<16} " + "   ".join(row))
    print(f"# built {built} tables ({skipped} indices outside the grid)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
