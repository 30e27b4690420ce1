#!/usr/bin/env python3
"""Smoke test for the rekit_py extension module.

Builds nothing itself: expects the cdylib to exist already, e.g.

    cargo build -p rekit-python --release
    python3 python/smoke_test.py
"""

import shutil
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def load_module():
    candidates = [
        ROOT / "target" / profile / name
        for profile in ("release", "debug")
        for name in ("librekit_py.so", "rekit_py.so", "librekit_py.dylib")
    ]
    built = next((p for p in candidates if p.exists()), None)
    if built is None:
        sys.exit(
            "rekit_py cdylib not found; run `cargo build -p rekit-python` first"
        )
    stage = Path(tempfile.mkdtemp(prefix="rekit-py-"))
    shutil.copy(built, stage / "rekit_py.so")
    sys.path.insert(0, str(stage))
    import rekit_py

    return rekit_py


def check(condition, label):
    status = "ok" if condition else "FAILED"
    print(f"  {label}: {status}")
    if not condition:
        sys.exit(1)


def main():
    rk = load_module()
    print(f"loaded rekit_py from {rk.__file__}")

    re = rk.Regex.parse("(a+b)*a")
    check(re.measures() == {"size": 7, "alph": 3, "rpn": 6}, "measures")
    check(re.render() == "(a+b)*a", "render round trip")
    check(not re.nullable() and re.is_reduced() and re.is_snf(), "predicates")

    pos = re.position_automaton()
    check(pos.states == 4 and len(pos.transitions()) == 9, "position automaton")
    check(pos.is_homogeneous() and not pos.is_deterministic(), "position flags")

    pd = re.pd_automaton()
    check(pd.states == 2 and len(pd.transitions()) == 3, "partial derivative automaton")
    check(pd.accepts("bba") and not pd.accepts("ab"), "acceptance")

    follow = re.follow_automaton()
    check(follow.equivalent_up_to(pd, 8), "follow ~ pd languages")
    check(sorted(pd.enumerate(2)) == ["a", "aa", "ba"], "bounded enumeration")

    minimal = re.minimal_dfa()
    check(minimal.states == 2 and len(minimal.transitions()) == 4, "minimal dfa")
    check(minimal.is_deterministic(), "minimal dfa determinism")

    snf = rk.Regex.parse("(a*b*)*").to_snf()
    check(snf.render() == "(a+b)*", "star normal form")
    check(
        rk.Regex.parse("(a*b*)*")
        .position_automaton()
        .is_isomorphic(snf.position_automaton()),
        "snf keeps the position automaton",
    )

    derivs = {d.render() for d in re.derivative("a")}
    check(derivs == {"(a+b)*a", "@e"}, "partial derivatives")
    check(len(re.linear_form()) == 3, "linear form")

    reduced = rk.Regex.parse("@e+a*").reduce()
    check(reduced.render() == "a*", "reduction")

    round_trip = rk.Nfa.from_json(pd.to_json())
    check(round_trip == pd, "json round trip")
    check(pd.to_dot().startswith("digraph"), "dot export")

    rev = pos.reverse()
    check(rev.reverse() == pos, "reversal involution")
    check(pos.lr_equiv().size() <= pos.size(), "invariant-equivalence reduction")

    texts = rk.generate(size=20, alphabet_size=3, count=5, seed=42)
    check(len(texts) == 5, "dataset generation")
    check(texts == rk.generate(size=20, alphabet_size=3, count=5, seed=42), "generation determinism")
    for t in texts:
        parsed = rk.Regex.parse(t)
        check(parsed.measures()["size"] == 20, f"parse-back of {t!r}")

    check(rk.count_expressions(1, 1) == 3, "exact counting")
    check(rk.count_expressions(300, 10) > 10**100, "big counts stay exact")

    csv = rk.run_experiment_csv(sizes=[15], alphabet_size=2, samples=25, seed=7)
    header, row = csv.strip().splitlines()
    check("alph_avg" in header.split(",") and len(row.split(",")) == len(header.split(",")), "experiment csv")

    print("smoke test passed")


if __name__ == "__main__":
    main()
