#!/usr/bin/env python3
"""Validates the JSON output of every CLI command against the schemas shipped
under docs/schemas/, and checks that the annotated example config drives a run.

Usage: validate_schemas.py <rabi-cf binary> <schema dir> <example config>

Exits 0 on success, 77 when the jsonschema package is unavailable (reported as
a skip by ctest), and 1 on any validation failure.
"""
import json
import pathlib
import subprocess
import sys


def run(binary, args):
    proc = subprocess.run([binary] + args, capture_output=True, text=True, timeout=120)
    if proc.returncode != 0:
        sys.exit(
            f"FAIL: {' '.join(args)} exited {proc.returncode}\nstderr: {proc.stderr}"
        )
    return proc.stdout


def main():
    if len(sys.argv) != 4:
        sys.exit(f"usage: {sys.argv[0]} <rabi-cf binary> <schema dir> <example config>")
    binary, schema_dir, example_conf = sys.argv[1], pathlib.Path(sys.argv[2]), sys.argv[3]

    try:
        import jsonschema
    except ImportError:
        print("SKIP: the jsonschema package is not installed")
        return 77

    two_mode = ["--set", "delta=0.7", "--set", "g=0.5"]
    sector = ["--set", "blocks=1/2", "--set", "parity=plus"]
    checks = [
        # (label, schema file, argv)
        ("regime two-mode", "regime", ["regime"] + two_mode + ["--format", "json"]),
        ("regime free model", "regime", ["regime", "--format", "json"]),
        ("regime k=3", "regime",
         ["regime", "--set", "family=kphoton", "--set", "k=3", "--set", "delta=0.3",
          "--set", "g=0.1", "--format", "json"]),
        ("blocks two-mode", "blocks", ["blocks"] + two_mode + ["--format", "json"]),
        ("blocks two-photon", "blocks",
         ["blocks", "--set", "family=kphoton", "--set", "k=2", "--set", "g=0.2",
          "--format", "json"]),
        ("spectrum", "spectrum",
         ["spectrum"] + two_mode + sector + ["--set", "levels=3", "--format", "json"]),
        ("oracle", "oracle",
         ["oracle"] + two_mode + sector +
         ["--set", "truncation=80", "--set", "levels=4", "--format", "json"]),
        ("compare", "compare",
         ["compare"] + two_mode + sector +
         ["--set", "levels=3", "--set", "truncation=120", "--format", "json"]),
        ("wavefunction", "wavefunction",
         ["wavefunction"] + two_mode + sector +
         ["--set", "levels=2", "--set", "wf_terms=64", "--set", "wf_samples=9",
          "--format", "json"]),
        ("diverge", "diverge",
         ["diverge", "--set", "delta=0.4", "--set", "g=1.2"] + sector +
         ["--format", "json"]),
        ("convergence", "convergence",
         ["convergence", "--set", "family=kphoton", "--set", "k=3", "--set", "delta=0.3",
          "--set", "g=0.1", "--set", "blocks=all:1", "--set", "parity=plus",
          "--set", "truncations=40,80", "--set", "conv_levels=3", "--format", "json"]),
        # The annotated example ships format=auto, which resolves to JSON for
        # regime; this both proves the example parses and validates its output.
        ("annotated example config", "regime", ["regime", "--config", example_conf]),
    ]

    failures = 0
    for label, schema_name, args in checks:
        schema = json.loads((schema_dir / f"{schema_name}.schema.json").read_text())
        jsonschema.Draft7Validator.check_schema(schema)
        doc = json.loads(run(binary, args))
        errors = sorted(
            jsonschema.Draft7Validator(schema).iter_errors(doc), key=str
        )
        if errors:
            failures += 1
            print(f"FAIL {label}:")
            for err in errors:
                path = "/".join(str(p) for p in err.absolute_path) or "<root>"
                print(f"  at {path}: {err.message}")
        else:
            print(f"ok   {label}")

    if failures:
        print(f"{failures} of {len(checks)} checks failed")
        return 1
    print(f"all {len(checks)} checks passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
