#!/usr/bin/env python3
"""Generate a directory of synthetic household purchase files.

Each household is an independent draw from the same generator family
with its own seed, so the panel is reproducible from the base seed
alone. Example:

    python scripts/synth_panel.py out/panel --households 50 --T 20 \
        --noise 0.7,1.0 --seed 42
"""

from __future__ import annotations

import argparse
from pathlib import Path

from revpref import GeneratorSpec, UtilityFamily, serialize_csv, synthesize
from revpref.rational import as_fraction


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("outdir")
    parser.add_argument("--households", type=int, default=50)
    parser.add_argument("--T", type=int, default=20)
    parser.add_argument("--L", type=int, default=2)
    parser.add_argument(
        "--family", choices=[f.value for f in UtilityFamily], default="cobb-douglas"
    )
    parser.add_argument("--params", default="1,2")
    parser.add_argument("--noise", default="0.7,1.0")
    parser.add_argument("--price-range", dest="price_range", default="1,4")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    params = tuple(as_fraction(v) for v in args.params.split(","))
    noise = tuple(as_fraction(v) for v in args.noise.split(","))
    price_range = tuple(as_fraction(v) for v in args.price_range.split(","))
    for i in range(args.households):
        spec = GeneratorSpec(
            T=args.T,
            L=args.L,
            utility_family=UtilityFamily(args.family),
            utility_params=params,
            efficiency_noise=(noise[0], noise[1]),
            price_range=(price_range[0], price_range[1]),
            seed=args.seed * 1_000_003 + i,
        )
        path = outdir / f"household_{i:04d}.csv"
        path.write_text(serialize_csv(synthesize(spec)))
    print(f"wrote {args.households} households to {outdir}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
