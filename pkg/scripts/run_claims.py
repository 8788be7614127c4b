"""Run the claim verifiers and write a JSON report plus a text summary.

    python scripts/run_claims.py [--claims A B CE1 H1] [--out results/claims.json]

Timing is left out of the JSON unless ``--timing`` is given, so reruns are
byte-identical and can be diffed against ``tests/golden/verify_claims.json``.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

from arckit import claims
from arckit.errors import FixtureInvalid


@dataclass
class RunConfig:
    names: tuple[str, ...] = claims.DEFAULT_CLAIMS
    out: Path = Path("results") / "claims.json"
    h1_samples: int = 50
    h1_seed: int = 0
    h1_n_max: int = 6
    timing: bool = False


def run(cfg: RunConfig) -> list[claims.ClaimReport]:
    reports = []
    for name in cfg.names:
        try:
            if name == "H1":
                rep = claims.verify_h1_on_primes(
                    sample_count=cfg.h1_samples, seed=cfg.h1_seed, n_max=cfg.h1_n_max
                )
            else:
                rep = claims.VERIFIERS[name]()
        except FixtureInvalid as exc:
            print(f"{name}: fixture rejected: {exc}", file=sys.stderr)
            if exc.report is None:
                raise
            rep = exc.report
        reports.append(rep)
    return reports


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--claims", nargs="+", choices=claims.CLAIMS, default=list(RunConfig.names))
    ap.add_argument("--out", type=Path, default=RunConfig.out)
    ap.add_argument("--samples", type=int, default=RunConfig.h1_samples)
    ap.add_argument("--seed", type=int, default=RunConfig.h1_seed)
    ap.add_argument("--timing", action="store_true")
    args = ap.parse_args(argv)
    cfg = RunConfig(tuple(args.claims), args.out, args.samples, args.seed, timing=args.timing)

    reports = run(cfg)
    cfg.out.parent.mkdir(parents=True, exist_ok=True)
    cfg.out.write_text(claims.reports_to_json(reports, timing=cfg.timing))
    for rep in reports:
        print(rep.render())
    print(f"report written to {cfg.out}")
    return 0 if all(r.ok for r in reports) else 2


if __name__ == "__main__":
    raise SystemExit(main())
