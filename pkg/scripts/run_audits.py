"""Run every audit command on the bundled configs and tabulate the outcomes.

    python scripts/run_audits.py --out results/ [--quick]

Each (command, config) pair writes its JSON report to ``--out``; the table
on stdout lists exit code, checks and violations.
"""

import argparse
import json
import time
from dataclasses import replace
from pathlib import Path

from napdec.audits import Depths
from napdec.cli import RunConfig, run

ROOT = Path(__file__).resolve().parent.parent
PLAN = [
    ("verdict", "q2_max_n2.json"),
    ("verdict", "q3_max_n4_ball.json"),
    ("verdict", "f3t_degree_n3.json"),
    ("verdict", "trivial_q_n3_paradoxical.json"),
    ("verdict", "trivial_q_n2_triangular.json"),
    ("verdict", "locally_finite_n5.json"),
    ("verdict", "q2_n1.json"),
    ("fixed-points", "q2_magnus.json"),
    ("audit-nonparabolic", "q2_magnus.json"),
    ("audit-freeness", "q2_magnus.json"),
    ("audit-freeness", "qt_equal_char.json"),
    ("audit-freeness", "f5t_equal_char.json"),
    ("audit-localcomm", "q2_magnus.json"),
    ("audit-localcomm", "qt_equal_char.json"),
    ("audit-pingpong", "qt_equal_char.json"),
    ("audit-pingpong", "f5t_equal_char.json"),
    ("audit-paradox-words", "q2_magnus.json"),
    ("audit-orbit", "q2_magnus.json"),
    ("audit-isometry", "q2_weighted_isometry.json"),
]


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", type=Path, default=ROOT / "results")
    parser.add_argument("--quick", action="store_true", help="use reduced depths")
    args = parser.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    print(f"{'command':<22}{'config':<32}{'exit':>5}{'checked':>10}{'violations':>11}{'sec':>7}")
    for command, name in PLAN:
        cfg = RunConfig.from_json(json.loads((ROOT / "configs" / name).read_text()))
        if args.quick:
            cfg = replace(cfg, depths=Depths.reduced(), seed=cfg.seed or 0)
        start = time.perf_counter()
        code, doc = run(command, cfg)
        elapsed = time.perf_counter() - start
        stem = f"{command}__{Path(name).stem}"
        (args.out / f"{stem}.json").write_text(json.dumps(doc, sort_keys=True, indent=2) + "\n")
        audits = doc.get("audits", {}).values()
        checked = sum(a["checked"] for a in audits)
        bad = sum(a["violation_count"] for a in audits)
        print(f"{command:<22}{name:<32}{code:>5}{checked:>10}{bad:>11}{elapsed:>7.1f}")


if __name__ == "__main__":
    main()
