"""Random survey of the pairing over assembled matrices.

For each random family: assemble H, compute delta, draw torsion vectors and
check hermitian symmetry, containment of delta * value in the localized ring
and (for nonsingular H) agreement with the inverse-matrix formula.  Counts
symmetrization failures separately since they are domain errors, not bugs.

    python3 scripts/survey.py --cases 200 --mu 2 --n 4 --seed 1
"""
import argparse
import random
import time
from collections import Counter
from dataclasses import dataclass

from ccomplex.blanchfield import fast_pair, pair, random_torsion_vectors, torsion_order
from ccomplex.errors import SymmetrizationError
from ccomplex.ratfield import RatFunc, in_lambda_s, qls_conj
from ccomplex.sampling import FamilyConfig, random_family
from ccomplex.seifert import assemble


@dataclass
class SurveyConfig:
    cases: int = 100
    mu: int = 2
    n: int = 4
    seed: int = 0
    # fraction of cases built with a rank-deficient integer core
    deficient: float = 0.25


def survey(cfg: SurveyConfig) -> Counter:
    rng = random.Random(cfg.seed)
    stats = Counter({k: 0 for k in ("hermitian violations", "containment violations",
                                    "fast path mismatches", "symmetrization failures")})
    for _ in range(cfg.cases):
        mu, n = rng.randint(1, cfg.mu), rng.randint(1, cfg.n)
        rank = rng.randint(0, n - 1) if rng.random() < cfg.deficient else None
        H = assemble(random_family(rng, FamilyConfig(mu=mu, n=n, rank=rank)))
        try:
            td = torsion_order(H)
        except SymmetrizationError:
            stats["symmetrization failures"] += 1
            continue
        stats["cases"] += 1
        stats["free part" if td.free_rank else "nonsingular"] += 1
        v, w = random_torsion_vectors(H, 2, rng)
        a, b = pair(td, v, w), pair(td, w, v)
        if a != qls_conj(b):
            stats["hermitian violations"] += 1
        if not in_lambda_s(RatFunc.from_poly(td.delta) * a.rep):
            stats["containment violations"] += 1
        if not td.free_rank and a != fast_pair(H, v, w):
            stats["fast path mismatches"] += 1
    return stats


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, default in vars(SurveyConfig()).items():
        p.add_argument(f"--{name}", type=type(default), default=default)
    cfg = SurveyConfig(**vars(p.parse_args()))
    start = time.perf_counter()
    stats = survey(cfg)
    print(f"{cfg}")
    for key in sorted(stats):
        print(f"  {key}: {stats[key]}")
    print(f"  elapsed: {time.perf_counter() - start:.1f}s")


if __name__ == "__main__":
    main()
