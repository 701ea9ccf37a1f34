"""Enumerate all derivations at every configuration of generated runs and report overlaps."""

import argparse
from collections import Counter

from loopw.driver import initial_config
from loopw.gen import GenConfig, generate
from loopw.parser import parse_program
from loopw.pretty import pretty
from loopw.programs import ackermann_driver
from loopw.relation import audit


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--programs", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-depth", type=int, default=5)
    ap.add_argument("--show", type=int, default=1, help="print this many overlapping configurations")
    args = ap.parse_args()

    rep = audit(initial_config(parse_program(ackermann_driver(2, 3))))
    print(f"Ackermann (2,3): {rep.steps} configurations, {len(rep.findings)} findings")

    cfg = GenConfig(max_depth=args.max_depth)
    kinds, programs, configs, shown = Counter(), 0, 0, 0
    for seed in range(args.seed, args.seed + args.programs):
        a = audit(initial_config(generate(seed, cfg)))
        configs += a.steps
        if a.findings:
            programs += 1
        for f in a.findings:
            kinds[(f.kind, tuple(sorted({str(r) for d in f.derivations for r in d.rules[-1:]})))] += 1
            if shown < args.show:
                shown += 1
                print(f"\nseed {seed}, step {f.step}: {len(f.derivations)} derivations of")
                print("  " + pretty(f.config.cmd))
                for d in f.derivations:
                    print("  - " + " / ".join(str(r) for r in d.rules))
    print(f"\n{args.programs} programs, {configs} configurations audited")
    print(f"{programs} programs with at least one configuration lacking a unique derivation")
    for (kind, ends), count in kinds.most_common():
        print(f"  {count:>4} {kind}: derivations end in {', '.join(ends)}")


if __name__ == "__main__":
    main()
