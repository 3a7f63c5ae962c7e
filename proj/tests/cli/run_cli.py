import json
import subprocess
import sys
from pathlib import Path

import jsonschema

CASES = {
    "kottwitz_ramified": (["kottwitz", "norm1_ramified.json"], 0, ["target = Z/2"]),
    "kottwitz_dual_sequence": (["kottwitz", "norm1_unramified.json", "--modulus", "4"], 0, ["target = 0", "[pass] dual-sequence-exact"]),
    "diagram_split": (["verify-diagram", "gm_split.json", "unram_c1.json", "--modulus", "4"], 0, ["[pass] v3-iso"]),
    "diagram_norm_one_even": (["verify-diagram", "norm1_unramified.json", "unram_c1.json", "--modulus", "4"], 1,
                              ["[pass] left-square", "[pass] right-square", "[fail] v1-iso"]),
    "cohomology_zminus": (["cohomology", "c2_zminus.json", "--degree", "1"], 0, ["H^1 = Z/2"]),
    "cohomology_oracle": (["cohomology", "c4_z8_x3.json", "--degree", "1", "--seed", "7"], 0, ["[pass] enumeration-oracle"]),
    "cohomology_tate": (["cohomology", "c2_ztriv.json", "--degree", "-2", "--tate"], 0, ["Hhat^-2 = Z/2"]),
    "class_formation": (["class-formation", "unram_c6.json"], 0, ["H^2 = Z/6"]),
    "class_formation_finite": (["class-formation", "toy_c2_mod4.json"], 1, ["H^1 is not trivial"]),
    "pi1": (["pi1", "induced_cubic.json", "unram_c3.json"], 0, ["pi1 = Z"]),
    "correspondence": (["correspondence", "induced_quadratic.json", "unram_c2.json", "--modulus", "8"], 0, ["H^1 = Z/8"]),
    "correspondence_obstruction": (["correspondence", "norm1_ramified.json", "unram_c2.json", "--modulus", "4"], 3,
                                   ["lhs = 0", "rhs = Z/2"]),
    "sheaf_function": (["sheaf-function", "z26_x3.json", "--level", "3", "--modulus", "26"], 0, ["level_1 = Z/2", "level_n = Z/26"]),
    "depth": (["depth", "z16_x3.json", "z16_x3_chain.json", "--modulus", "16", "--level", "2"], 0, ["[pass] depth-preservation"]),
    "max_order_skips": (["--max-order", "4", "sheaf-function", "z8_x3.json", "--level", "2", "--modulus", "8"], 0, ["[skipped] dual-norm"]),
    "usage_error": (["kottwitz"], 2, []),
    "parse_error": (["kottwitz", "unram_c1.json"], 2, []),
    "computational_error": (["pi1", "induced_quadratic.json", "unram_c1.json"], 2, []),
}


def run(exe, args, cwd):
    return subprocess.run([exe] + args, cwd=cwd, capture_output=True, text=True)


def main():
    exe, data, schema_dir, name = sys.argv[1:5]
    args, code, needles = CASES[name]
    text = run(exe, args, data)
    if text.returncode != code:
        sys.exit(f"exit {text.returncode}, expected {code}\n{text.stdout}{text.stderr}")
    for n in needles:
        if n not in text.stdout:
            sys.exit(f"missing {n!r} in\n{text.stdout}")
    if code == 2:
        if "error:" not in text.stderr and "Run with --help" not in text.stderr:
            sys.exit(f"no diagnostic on stderr: {text.stderr!r}")
        if name == "parse_error" and "/kind" not in text.stderr:
            sys.exit(f"parse error lacks a document path: {text.stderr!r}")
        return
    js = run(exe, ["--json"] + args, data)
    again = run(exe, ["--json"] + args, data)
    if js.stdout != again.stdout:
        sys.exit("JSON report is not deterministic")
    if js.returncode != code:
        sys.exit(f"--json exit {js.returncode}, expected {code}")
    report = json.loads(js.stdout)
    schema = json.loads((Path(schema_dir) / "report.schema.json").read_text())
    jsonschema.validate(report, schema)
    verdict = text.stdout.strip().splitlines()[-1].removeprefix("result: ")
    if report["status"] != verdict:
        sys.exit(f"text verdict {verdict} differs from JSON verdict {report['status']}")
    text_status = [l.split("] ")[0][1:] for l in text.stdout.splitlines() if l.startswith("[")]
    if text_status != [c["status"] for c in report["checks"]]:
        sys.exit("per-check statuses differ between text and JSON")


if __name__ == "__main__":
    main()
