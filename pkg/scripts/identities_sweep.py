"""Exhaustive character-sum identity checks for every odd prime below a bound."""

import argparse
import time
from dataclasses import dataclass

from modrep.charsums import identity_suite, s_value
from modrep.cyclotomic import is_prime


@dataclass
class IdentityConfig:
    bound: int = 50
    samples: int = 100


def main(cfg: IdentityConfig):
    all_ok = True
    for r in (p for p in range(3, cfg.bound) if is_prime(p)):
        t0 = time.perf_counter()
        res = identity_suite(r, samples=cfg.samples)
        cells = [f"{name}={'ok' if ok else 'FAIL'}({n})" for name, (ok, n) in res.items()]
        if r >= 5 and r % 3 == 2:
            cells.append(f"s={'ok' if s_value(r).equal else 'FAIL'}")
        all_ok &= all(ok for ok, _ in res.values())
        print(f"r={r:3d}  " + "  ".join(cells) + f"  {time.perf_counter() - t0:.2f} s")
    print("all identities hold" if all_ok else "FAILURES above")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--bound", type=int, default=IdentityConfig.bound)
    ap.add_argument("--samples", type=int, default=IdentityConfig.samples)
    a = ap.parse_args()
    main(IdentityConfig(a.bound, a.samples))
