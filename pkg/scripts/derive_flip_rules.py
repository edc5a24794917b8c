#!/usr/bin/env python3
"""Show how the half-twist coordinate rules are derived, case by case.

The update rule for a half-twist on triangulation coordinates is fixed
by three requirements: the move is supported in a window of edges near
the swapped punctures, it permutes the reference curves the way the
swap must, and applying it twice equals the full twist.  For each
boundary case (leftmost, interior, rightmost, two-puncture disc) the
report lists the window, the ring of fixed edges around it, how many
elementary flips realize the move, and how many candidate rules
survived the constraints.
"""
import json

from twistbench.laminations import derivation_report, edge_names, round_curve


def main() -> int:
    report = derivation_report()
    for case, data in report.items():
        window = " ".join(f"{kind}{idx}" for kind, idx in data["window"])
        ring = " ".join(f"{kind}{idx}" for kind, idx in data["ring"]) or "-"
        print(f"case {case:9} reference n,i = {tuple(data['reference'])}")
        print(f"  flips: {data['flips']}   candidates kept: {data['candidates']}")
        print(f"  window: {window}")
        print(f"  fixed ring: {ring}")
    print()
    print("edge order at n=4:", " ".join(f"{k}{i}" for k, i in edge_names(4)))
    print("round curve around punctures 2..3 at n=4:", round_curve(4, 2, 3))
    print()
    print(json.dumps({k: dict(v) for k, v in report.items()}, default=list))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
