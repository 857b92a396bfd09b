"""
Commutant dimensions of the lifted representations, plus the numeric
decomposition of the unfolded representation into invariant pieces.

The restricted PSU(3) pair has the same commutant as PSU(2) (its S is a
scalar multiple and T coincides), so any reducibility has to be looked for
in the unfolded space.
"""

import argparse
from dataclasses import dataclass

from modrep.repcheck import commutant_dim, comparison_pair, invariant_subspaces, lift
from modrep.weil import build_unfolded


@dataclass
class SurveyConfig:
    primes: tuple = (5, 11, 17, 23)
    unfolded_primes: tuple = (5,)
    mode: str = "exact"


def main(cfg: SurveyConfig):
    for r in cfg.primes:
        psu3, psu2 = comparison_pair(r)
        d3 = commutant_dim(lift(psu3), mode=cfg.mode)
        d2 = commutant_dim(lift(psu2), mode=cfg.mode)
        print(f"r={r:3d}  dim={psu3.dim:3d}  commutant psu3_restricted={d3}  psu2={d2}")
    for r in cfg.unfolded_primes:
        U = lift(build_unfolded(r))
        dim = commutant_dim(U, mode=cfg.mode, force=True)
        pieces = invariant_subspaces(U.S.to_complex(), U.T.to_complex())
        sizes = sorted(Q.shape[1] for Q, _ in pieces)
        worst = max(res for _, res in pieces)
        print(f"unfolded r={r}: commutant={dim}  invariant pieces {sizes}  max residual {worst:.1e}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--primes", type=int, nargs="+", default=list(SurveyConfig.primes))
    ap.add_argument("--unfolded", type=int, nargs="*", default=list(SurveyConfig.unfolded_primes))
    ap.add_argument("--mode", choices=("exact", "float"), default="exact")
    a = ap.parse_args()
    main(SurveyConfig(tuple(a.primes), tuple(a.unfolded), a.mode))
