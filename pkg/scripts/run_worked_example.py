#!/usr/bin/env python3
"""Run the bundled reference model end to end and print the summary.

Covers the full pipeline on one known-good system: frequency-domain check,
spectrum report, synthesis of parameters from the realization, and the
parameter-level conversions, each with its numerical deviation.
"""

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from oqho import jsonio
from oqho.worked_example import run_worked_example


@dataclass(frozen=True)
class ExampleConfig:
    tol: float = 1e-8
    num_samples: int = 20
    seed: int = 42
    output: str | None = None


def parse_args(argv=None) -> ExampleConfig:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--tol", type=float, default=1e-8,
                        help="residual tolerance (default 1e-8)")
    parser.add_argument("--samples", type=int, default=20,
                        help="frequency sample count (default 20)")
    parser.add_argument("--seed", type=int, default=42,
                        help="sample-point RNG seed (default 42)")
    parser.add_argument("--output", default=None,
                        help="optional path for the full JSON payload")
    ns = parser.parse_args(argv)
    return ExampleConfig(ns.tol, ns.samples, ns.seed, ns.output)


def main(argv=None) -> int:
    cfg = parse_args(argv)
    lines, payload = run_worked_example(
        tol=cfg.tol, num_samples=cfg.num_samples, seed=cfg.seed
    )
    for line in lines:
        print(line)
    if cfg.output is not None:
        Path(cfg.output).write_text(jsonio.dumps(payload), encoding="utf-8")
        print(f"payload written to {cfg.output}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
