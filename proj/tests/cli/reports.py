#!/usr/bin/env python3
"""Drives the jumploci CLI over the corpus.

  reports.py BIN schema       every report validates against schemas/report.schema.json
  reports.py BIN determinism  two runs give byte-identical reports
  reports.py BIN regression   reports match corpus/expected/
  reports.py BIN exit-codes   parse errors exit 1, refusals exit 2
  reports.py BIN update       rewrite corpus/expected/
"""
import json
import os
import pathlib
import subprocess
import sys

import jsonschema

ROOT = pathlib.Path(__file__).resolve().parents[2]
EXPECTED = ROOT / "corpus" / "expected"

GROUPS = ["surface2", "surface3", "free2", "free3", "z1", "z2", "z3", "z4", "z3_plus_z",
          "surface2_x_z2", "surface2_free_z2", "torsion_free_product", "trefoil"]

# (fixture name, argv, expected exit code)
RUNS = [(f"analyze_{g}", ["analyze", f"corpus/{g}.json", "--K", "3"], 0) for g in GROUPS]
RUNS += [
    ("analyze_surface2_x_surface3", ["analyze", "corpus/surface2_x_surface3.json", "--K", "3"], 0),
    ("analyze_surface2_free_z2_m3", ["analyze", "corpus/surface2_free_z2.json", "--K", "3", "--m", "3"], 0),
    ("analyze_surface2_numeric", ["analyze", "corpus/surface2.json", "--K", "2", "--numeric-fallback", "--seed", "7"], 0),
    ("ng_surface2_g2", ["ng", "corpus/surface2.json", "--g", "2"], 0),
    ("ng_surface2_g3", ["ng", "corpus/surface2.json", "--g", "3"], 0),
    ("ng_z4_g2", ["ng", "corpus/z4.json", "--g", "2", "--K", "3"], 0),
    ("certify_surface2_full", ["certify", "corpus/surface2.json"], 0),
    ("certify_surface2_point", ["certify", "corpus/surface2.json", "--relations", "1,0,0,0;0,1,0,0;0,0,1,0;0,0,0,1",
                                "--angles", "1/2,0,0,0"], 0),
    ("certify_surface2_free_z2", ["certify", "corpus/surface2_free_z2.json", "--torsion", "1/2", "--m", "3"], 0),
    ("orbit_4_2", ["orbit", "--moduli", "4,2", "--angles", "0,0"], 0),
    ("orbit_mixed", ["orbit", "--moduli", "4,2,3", "--angles", "1/3,0,1/2"], 0),
    ("orbit_variant_a", ["orbit", "--moduli", "2", "--angles", "0", "--variant", "A"], 0),
    ("dims_surface2_trivial", ["dims", "corpus/surface2.json", "--i", "2"], 0),
    ("dims_surface2_torsion", ["dims", "corpus/surface2.json", "--i", "2", "--angles", "1/2,1/3,0,0"], 0),
    ("dims_z3_h2", ["dims", "corpus/z3.json", "--i", "2"], 2),
    ("weights_z1", ["weights", "corpus/z1.json"], 0),
    ("weights_z2", ["weights", "corpus/z2.json"], 0),
    ("weights_z3_plus_z", ["weights", "corpus/z3_plus_z.json"], 0),
    ("weights_trefoil", ["weights", "corpus/trefoil.json"], 0),
    ("weights_surface2", ["weights", "corpus/surface2.json", "--K", "3"], 0),
    ("weights_n3", ["weights", "corpus/z1.json", "--N", "3"], 2),
    ("finite_cover_z3_plus_z", ["finite-cover", "corpus/z3_plus_z.json"], 0),
    ("finite_cover_trefoil", ["finite-cover", "corpus/trefoil.json"], 0),
    ("finite_cover_free2", ["finite-cover", "corpus/free2.json", "--K", "3"], 2),
    ("cover_surface2_free_z2", ["cover", "corpus/surface2_free_z2.json", "--K", "3"], 0),
    ("cover_surface2", ["cover", "corpus/surface2.json", "--K", "3"], 0),
    ("higgs_n1", ["higgs", "--n", "1", "--samples", "30"], 0),
    ("higgs_n2", ["higgs", "--n", "2", "--samples", "15", "--seed", "3"], 0),
]

BAD = [
    ["orbit", "--angles", "1/x"],
    ["orbit", "--angles", "1/0"],
    ["orbit", "--moduli", "1,2", "--angles", "0"],
    ["dims", "corpus/does_not_exist.json"],
    ["dims", "corpus/surface2.json", "--angles", "1/2,0"],
    ["certify", "corpus/surface2.json", "--relations", "1,a"],
    ["analyze"],
    ["no-such-command"],
]


def run(binary, argv, workers=None):
    env = dict(os.environ)
    if workers:
        env["JUMPLOCI_WORKERS"] = str(workers)
    p = subprocess.run([binary] + argv, cwd=ROOT, capture_output=True, env=env)
    return p.returncode, p.stdout


def check_schema(binary):
    schema = json.loads((ROOT / "schemas" / "report.schema.json").read_text())
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)
    bad = 0
    for name, argv, code in RUNS:
        rc, out = run(binary, argv)
        if rc != code:
            print(f"{name}: exit {rc}, expected {code}")
            bad += 1
            continue
        errors = list(validator.iter_errors(json.loads(out)))
        for e in errors[:3]:
            print(f"{name}: {e.json_path}: {e.message}")
        bad += bool(errors)
        # keys must come out sorted at every level
        if out.decode() != json.dumps(json.loads(out), indent=2, sort_keys=True, ensure_ascii=False) + "\n":
            print(f"{name}: keys not in canonical order")
            bad += 1
    return bad


def check_determinism(binary):
    bad = 0
    for name, argv, _ in RUNS:
        # the worker count must not leak into the output
        if run(binary, argv, workers=1) != run(binary, argv, workers=3):
            print(f"{name}: reports differ between runs")
            bad += 1
    return bad


def check_regression(binary):
    bad = 0
    for name, argv, _ in RUNS:
        path = EXPECTED / f"{name}.json"
        if not path.exists():
            print(f"{name}: missing fixture {path.name}")
            bad += 1
            continue
        if run(binary, argv)[1] != path.read_bytes():
            print(f"{name}: report differs from {path.name}")
            bad += 1
    return bad


def check_exit_codes(binary):
    bad = 0
    for argv in BAD:
        rc, out = run(binary, argv)
        if rc != 1 or out:
            print(f"{' '.join(argv)}: exit {rc}, stdout {len(out)} bytes")
            bad += 1
    return bad


def update(binary):
    EXPECTED.mkdir(exist_ok=True)
    for name, argv, _ in RUNS:
        (EXPECTED / f"{name}.json").write_bytes(run(binary, argv)[1])
    return 0


def main():
    binary, mode = sys.argv[1], sys.argv[2]
    modes = {"schema": check_schema, "determinism": check_determinism, "regression": check_regression,
             "exit-codes": check_exit_codes, "update": update}
    bad = modes[mode](binary)
    print(f"{mode}: {bad} problem(s)")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
