#!/usr/bin/env python3
"""Smoke test for the chainlint Python extension.

Builds the extension with cargo if it is not already built, imports it, and
exercises the analyze / evaluate / compare surface against the bundled
fixtures.

Usage: python3 python/smoke_test.py
"""

import json
import shutil
import subprocess
import sys
import tempfile
from pathlib import Path

REPO = Path(__file__).resolve().parents[1]


def load_module():
    lib = next(
        (
            REPO / "target" / profile / "libchainlint.so"
            for profile in ("debug", "release")
            if (REPO / "target" / profile / "libchainlint.so").exists()
        ),
        None,
    )
    if lib is None:
        subprocess.run(["cargo", "build", "-p", "chainlint-py"], cwd=REPO, check=True)
        lib = REPO / "target" / "debug" / "libchainlint.so"
    stage = Path(tempfile.mkdtemp(prefix="chainlint-py-"))
    shutil.copy2(lib, stage / "chainlint.so")
    sys.path.insert(0, str(stage))
    import chainlint

    return chainlint


def main():
    cl = load_module()
    ran = 0

    def check(cond, what):
        nonlocal ran
        assert cond, what
        ran += 1
        print(f"ok {ran:2d} - {what}")

    check(cl.__version__, "module reports a version")
    check(len(cl.RULES) == 8 and "cosmos/map-iteration" in cl.RULES, "eight rules exported")

    # --- analyze: a clean module -------------------------------------------
    clean = cl.analyze(str(REPO / "fixtures" / "minimod"))
    check(clean.mode == "whitelist", "default mode is whitelist")
    check(clean.findings == [], "minimod is clean")
    check(clean.diagnostics == [], "minimod parses without diagnostics")
    check(len(clean.scope) == 6, "minimod scope closure has six functions")
    move = next(e for e in clean.scope if e.func == "(Keeper).moveCoins")
    check(
        move.entry_kinds == ["BeginBlock", "DeliverTx"],
        "shared helper is reachable from both entry kinds",
    )
    check(
        all(e.resolution in ("direct", "interface", "unresolved") for e in clean.edges),
        "edge resolutions are the three documented kinds",
    )

    # --- analyze: the evaluation corpus -------------------------------------
    corpus = cl.analyze(str(REPO / "fixtures" / "corpus"))
    check(len(corpus.findings) == 34, "corpus whitelist run finds the planted set")
    check(len(corpus.unsuppressed()) == len(corpus.findings), "none are suppressed")
    check("BeginBlock" in corpus.entries and corpus.entries["BeginBlock"], "entries discovered")
    halt = next(f for f in corpus.findings if f.rule == "cosmos/block-panic")
    check(halt.witness, "reachability findings carry a witness chain")
    check(halt.entry_kinds, "and name the entry kinds that reach them")
    check(
        all(len(f.fingerprint) == 16 for f in corpus.findings),
        "fingerprints are 16 hex digits",
    )

    black = cl.analyze(str(REPO / "fixtures" / "corpus"), mode="blacklist")
    check(black.mode == "blacklist", "mode override applies")
    check(
        len(black.findings) >= len(corpus.findings) + 10,
        "legacy blacklist scoping adds false positives",
    )

    sarif = json.loads(corpus.sarif())
    check(sarif["version"] == "2.1.0", "sarif document parses")
    check(
        len(sarif["runs"][0]["results"]) == len(corpus.findings),
        "sarif carries every finding",
    )
    check(len(corpus.text().splitlines()) == len(corpus.findings), "text report is line-per-finding")

    # --- evaluate / compare --------------------------------------------------
    items = [("cosmos/map-iteration", f"f{i}") for i in range(13)]
    labels = {f"f{i}": ("FP" if i < 8 else "TP") for i in range(13)}
    m = cl.evaluate(items, labels)
    g = m.groups["cosmos/map-iteration"]
    check(
        (g.p, g.fp, g.tp, g.utp) == (13, 8, 5, 5),
        "counters match hand computation",
    )
    check(
        g.precision_pct == "38.46%" and g.noise_ratio_pct == "0.00%",
        "formatted percentages match the table renderer",
    )
    check(abs(g.precision - 5 / 13) < 1e-12, "float view agrees with the exact ratio")

    labels["f12"] = "DUP:f11"
    m2 = cl.evaluate(items, labels)
    check(
        (m2.totals.tp, m2.totals.utp) == (5, 4),
        "a DUP label keeps TP but shrinks UTP",
    )
    delta = cl.compare_reports(m.json(), m2.json())
    check("dUTP" in delta and "-1" in delta, "comparison renders the UTP regression")
    same = cl.compare_reports(m.json(), m.json())
    check("100.00%" not in same, "self-comparison shows no gain")

    # --- error mapping --------------------------------------------------------
    try:
        cl.analyze(str(REPO / "does-not-exist"))
        raise SystemExit("missing root must raise")
    except ValueError:
        check(True, "usage errors raise ValueError")
    try:
        cl.evaluate([("r", "unlabeled")], {})
        raise SystemExit("unlabeled finding must raise")
    except RuntimeError as e:
        check("unlabeled" in str(e), "analysis errors raise RuntimeError")
    m3 = cl.evaluate([("r", "unlabeled")], {}, allow_unlabeled=True)
    check(m3.totals.unlabeled == 1, "allow_unlabeled routes them to the unlabeled column")

    print(f"\nall {ran} smoke checks passed")


if __name__ == "__main__":
    main()
