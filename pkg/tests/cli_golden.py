"""Golden-file cases for the command line.

Each case is an argv with ``{tmp}`` and ``{golden}`` placeholders and the
output file compared byte-for-byte against ``tests/golden/<name>``. Cases
run in order because later ones read earlier outputs. Set
``KCORESET_REGEN_GOLDEN=1`` to rewrite the golden outputs.
"""
import os
import time
from pathlib import Path

from kcoreset.cli import main

GOLDEN = Path(__file__).parent / "golden"

CASES = [
    ("pts.csv", ["synth", "--spec", "{golden}/spec.json", "--out", "{tmp}/pts.csv"]),
    ("fixed.json", ["build", "--in", "{tmp}/pts.csv", "--k", "3", "--p", "2", "--m", "60",
                    "--delta", "0.1", "--seed", "7", "--out", "{tmp}/fixed.json"]),
    ("oneshot.json", ["build-oneshot", "--in", "{tmp}/pts.csv", "--k", "3", "--p-max", "3",
                      "--m", "60", "--seed", "7", "--out", "{tmp}/oneshot.json"]),
    ("eval.json", ["eval", "--in", "{tmp}/pts.csv", "--coreset", "{tmp}/fixed.json",
                   "--queries", "dp:20", "--p", "2", "--out", "{tmp}/eval.json"]),
    ("eval_oneshot.json", ["eval", "--in", "{tmp}/pts.csv", "--coreset", "{tmp}/oneshot.json",
                           "--queries", "uniform:20", "--p", "1.5", "--seed", "3",
                           "--out", "{tmp}/eval_oneshot.json"]),
    ("oracle.json", ["oracle", "--in", "{golden}/triple.csv", "--k", "1", "--p", "1",
                     "--out", "{tmp}/oracle.json"]),
]


def run_cases(tmp):
    """Run every case; returns ``(name, matched, seconds)`` triples."""
    regen = os.environ.get("KCORESET_REGEN_GOLDEN") == "1"
    results = []
    for name, argv in CASES:
        args = [a.format(tmp=tmp, golden=GOLDEN) for a in argv]
        t0 = time.perf_counter()
        status = main(args)
        elapsed = time.perf_counter() - t0
        got = (Path(tmp) / name).read_bytes()
        if regen:
            (GOLDEN / name).write_bytes(got)
        results.append((name, status == 0 and got == (GOLDEN / name).read_bytes(), elapsed))
    return results
