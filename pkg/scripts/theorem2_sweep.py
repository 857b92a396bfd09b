"""Run the PSU(2)-in-PSU(3) verification over a range of primes and save the reports."""

import argparse
import json
import time
from dataclasses import asdict, dataclass
from pathlib import Path

from modrep.cyclotomic import is_prime
from modrep.repcheck import theorem2_verify


@dataclass
class SweepConfig:
    lo: int = 5
    hi: int = 50
    crosscheck: bool = True
    out: str = "results/theorem2.json"


def admissible(cfg: SweepConfig):
    return [p for p in range(cfg.lo, cfg.hi + 1) if is_prime(p) and p % 3 == 2 and p >= 5]


def main(cfg: SweepConfig):
    rows = []
    for r in admissible(cfg):
        t0 = time.perf_counter()
        rep = theorem2_verify(r, crosscheck=cfg.crosscheck)
        dt = time.perf_counter() - t0
        c = rep.proportionality_constant
        print(f"r={r:3d}  {'PASS' if rep.passed else 'FAIL'}  eps={rep.scalars['epsilon']:+d}  c={complex(c):.6f}  {dt:6.2f} s")
        rows.append({"seconds": dt, **rep.to_json()})
    path = Path(cfg.out)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps({"config": asdict(cfg), "results": rows}, indent=1))
    print(f"wrote {path}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--lo", type=int, default=SweepConfig.lo)
    ap.add_argument("--hi", type=int, default=SweepConfig.hi)
    ap.add_argument("--no-crosscheck", action="store_true")
    ap.add_argument("--out", default=SweepConfig.out)
    a = ap.parse_args()
    main(SweepConfig(a.lo, a.hi, not a.no_crosscheck, a.out))
