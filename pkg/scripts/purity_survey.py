"""Survey maximal collection sizes for each separation kind.

Exhaustive for n <= 4, random-order greedy completions above that.

    python3 scripts/purity_survey.py --max-n 7 --trials 200
"""
import argparse
import time
from dataclasses import dataclass

from sepsys.subsets import Kind, verify_purity


@dataclass
class SurveyConfig:
    max_n: int = 6
    trials: int = 100
    seed: int = 0


def survey(cfg: SurveyConfig) -> bool:
    ok = True
    print(f"{'kind':6} {'n':>2} {'mode':10} {'found':>6} {'rank':>5}  sizes          time")
    for n in range(1, cfg.max_n + 1):
        for kind in Kind:
            t0 = time.perf_counter()
            if n <= 4:
                rep = verify_purity(kind, n, exhaustive=True)
            else:
                rep = verify_purity(kind, n, trials=cfg.trials, seed=cfg.seed + n)
            sizes = ",".join(f"{s}x{c}" for s, c in sorted(rep.sizes.items()))
            print(f"{kind.name.lower():6} {n:>2} {rep.mode:10} {rep.count:>6} {rep.expected:>5}  "
                  f"{sizes:14} {time.perf_counter() - t0:.2f}s")
            ok &= rep.ok
    return ok


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=SurveyConfig.max_n)
    ap.add_argument("--trials", type=int, default=SurveyConfig.trials)
    ap.add_argument("--seed", type=int, default=SurveyConfig.seed)
    a = ap.parse_args()
    ok = survey(SurveyConfig(a.max_n, a.trials, a.seed))
    print("all pure" if ok else "IMPURITY FOUND")
    raise SystemExit(0 if ok else 1)


if __name__ == "__main__":
    main()
