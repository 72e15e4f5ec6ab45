#!/usr/bin/env python3
"""Emit grid CSV slices of the kernel modulus around a certificate.

Builds (or loads) a zero certificate and writes one CSV per requested
axis, suitable for heat-map plotting of |K| near the certified zero.

Usage:
    python scripts/zero_landscape.py --n 3 --res 200 --width 0.05
    python scripts/zero_landscape.py --cert c4.json --axes z lambda1
"""

import argparse
import json
import sys
from pathlib import Path

from symdisc import cli, zerofind


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--cert", help="existing certificate JSON (otherwise one is built)")
    ap.add_argument("--n", type=int, default=3, help="dimension when building fresh")
    ap.add_argument("--axes", nargs="+", default=["z"], choices=["z", "lambda1", "mu2"])
    ap.add_argument("--res", type=int, default=200)
    ap.add_argument("--width", type=float, default=0.05)
    ap.add_argument("--out-dir", default="out")
    args = ap.parse_args()

    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)

    if args.cert:
        cert_path = Path(args.cert)
    else:
        cert = zerofind.build_certificate_chain(args.n) if args.n > 3 else zerofind.construct_zero_dim3()
        cert_path = out / f"certificate_n{args.n}.json"
        cert_path.write_text(json.dumps(cert.to_dict(), indent=2, sort_keys=True))
        print(f"built {cert_path} (residual {cert.residual_rel:.3e})")

    for axis in args.axes:
        target = out / f"landscape_{cert_path.stem}_{axis}.csv"
        code = cli.main(
            [
                "grid",
                "--around",
                str(cert_path),
                "--axis",
                axis,
                "--res",
                str(args.res),
                "--width",
                str(args.width),
                "--out",
                str(target),
            ]
        )
        if code != 0:
            return code
        print(f"wrote {target} ({args.res}x{args.res} cells, width {args.width})")
    return 0


if __name__ == "__main__":
    sys.exit(main())
