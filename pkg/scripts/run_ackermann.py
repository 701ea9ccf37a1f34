"""Run the Ackermann driver over a grid of arguments and tabulate steps, time and result."""

import argparse
import time

from loopw.driver import Outcome, report_top_level, run_program
from loopw.parser import parse_program
from loopw.programs import ack, ackermann_driver


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-m", type=int, default=3)
    ap.add_argument("--max-n", type=int, default=4)
    ap.add_argument("--budget", type=int, default=1_000_000)
    args = ap.parse_args()

    print(f"{'M':>2} {'N':>2} {'steps':>9} {'seconds':>8} {'R':>6} {'oracle':>6}")
    for m in range(args.max_m + 1):
        for n in range(args.max_n + 1):
            t = time.perf_counter()
            rep = run_program(parse_program(ackermann_driver(m, n)), args.budget)
            elapsed = time.perf_counter() - t
            result = dict(report_top_level(rep)).get("R") if rep.outcome is Outcome.CONVERGED else rep.outcome
            shown = getattr(result, "n", result)
            print(f"{m:>2} {n:>2} {rep.steps_taken:>9} {elapsed:>8.2f} {shown!s:>6} {ack(m, n):>6}")


if __name__ == "__main__":
    main()
