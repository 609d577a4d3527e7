#!/usr/bin/env python3
"""Runs the command-line tool on representative inputs and validates each
report against its JSON schema, along with the documented exit codes."""

import json
import subprocess
import sys
from pathlib import Path

import jsonschema

CASES = [
    ("tuples_check", ["tuples", "check", "0,2,6"], 0),
    ("tuples_check", ["tuples", "check", "0,1"], 0),
    ("tuples_check", ["tuples", "check", "--ring", "Fq[t]:q=3", "0;1;2,1"], 0),
    ("tuples_check", ["tuples", "check", "--ring", "Q(sqrt:2)", "0,0;2,0;6,0"], 0),
    ("tuples_find", ["tuples", "find", "--k", "6"], 0),
    ("tuples_find", ["tuples", "find", "--ring", "Fq[t]:q=3", "--k", "4"], 0),
    ("tuples_lift", ["tuples", "lift", "--field", "sqrt:5", "0,4,6"], 0),
    ("verify_engelsma", ["tuples", "verify-engelsma"], 0),
    ("irr_count", ["irr", "count", "--q", "2", "--n", "4"], 0),
    ("irr_list", ["irr", "list", "--q", "3", "--n", "2"], 0),
    ("irr_test", ["irr", "test", "--q", "3", "1,0,1"], 0),
    ("sieve_demo", ["sieve-demo", "--N", "20000"], 0),
    ("sieve_demo", ["sieve-demo", "--ring", "Fq[t]:q=3", "--tuple", "0;1", "--N", "6561", "--D0", "2", "--R", "27"], 0),
    ("ggpy_check", ["ggpy-check", "--z", "1000"], 0),
    ("ggpy_check", ["ggpy-check", "--ring", "Fq[t]:q=3", "--z", "729", "--G", "x"], 0),
    ("lod_measure", ["lod-measure", "--q", "3", "--n", "6", "--max-degree", "2"], 0),
    ("mk", ["mk", "--k", "1", "--degree", "0"], 0),
    ("mk", ["mk", "--k", "5", "--degree", "3", "--mc-samples", "10000", "--seed", "4"], 0),
    ("ff_census", ["ff-gaps", "census", "--q", "3", "--n", "2", "--d", "0"], 0),
    ("ff_census", ["ff-gaps", "census", "--q", "3", "--n", "2", "--d", "1"], 0),
    ("ff_monomials", ["ff-gaps", "monomials", "--q", "7", "--n", "3", "--d", "0"], 0),
    ("ff_twist", ["ff-gaps", "twist", "--q", "3", "--f1", "1,2,0,1", "--f2", "2,2,0,1", "--a", "1"], 0),
    ("ff_zcheck", ["ff-gaps", "zcheck", "--q", "3", "--k", "2", "--d", "0", "--n", "2"], 0),
    ("ff_zcheck", ["ff-gaps", "zcheck", "--q", "5", "--k", "3", "--d", "1", "--n", "3", "--budget", "10"], 3),
    ("ff_bound", ["ff-gaps", "bound", "--k0", "105", "--q", "107"], 0),
    ("nf_pairs", ["nf", "pairs", "--field", "sqrt:2", "--bound", "2", "--box", "30"], 0),
    ("nf_prime_test", ["nf", "prime-test", "--field", "sqrt:2", "3,1"], 0),
]

# (arguments, expected exit code) for failures
ERRORS = [
    (["tuples", "check", "1,1"], 2),
    (["tuples", "lift", "0,1"], 2),
    (["ff-gaps", "twist", "--q", "5", "--f1", "2,0,1", "--f2", "3,0,1"], 2),
    (["ff-gaps", "bound", "--q", "5", "--k0", "5"], 2),
    (["irr", "test", "--q", "4", "1,1"], 2),
    (["mk"], 2),
    (["no-such-command"], 2),
    (["tuples", "find", "--ring", "Fq[t]:q=2", "--k", "3", "--attempts", "1"], 3),
    (["irr", "count", "--q", "2", "--n", "30", "--budget", "1000"], 3),
]


def run(cli, args):
    return subprocess.run([cli, *args], capture_output=True, text=True, timeout=300)


def main():
    cli, schema_dir = sys.argv[1], Path(sys.argv[2])
    failures = []
    for name, args, code in CASES:
        schema = json.loads((schema_dir / f"{name}.schema.json").read_text())
        proc = run(cli, args)
        label = " ".join(args)
        if proc.returncode != code:
            failures.append(f"{label}: exit {proc.returncode}, expected {code}: {proc.stderr.strip()}")
            continue
        try:
            jsonschema.validate(json.loads(proc.stdout), schema)
        except (json.JSONDecodeError, jsonschema.ValidationError) as e:
            failures.append(f"{label}: {str(e).splitlines()[0]}")
    for args, code in ERRORS:
        proc = run(cli, args)
        if proc.returncode != code:
            failures.append(f"{' '.join(args)}: exit {proc.returncode}, expected {code}")

    csv = run(cli, ["ff-gaps", "census", "--q", "2", "--n", "1", "--d", "0", "--format", "csv"])
    if csv.stdout != 'gap_poly,count\n"1",2\n':
        failures.append(f"census csv: {csv.stdout!r}")
    one = run(cli, ["--threads", "1", "mk", "--k", "5", "--mc-samples", "100000"]).stdout
    eight = run(cli, ["mk", "--k", "5", "--mc-samples", "100000", "--threads", "8"]).stdout
    if one != eight:
        failures.append("mk output depends on --threads")

    for f in failures:
        print("FAIL", f)
    total = len(CASES) + len(ERRORS) + 2
    print(f"{total - len(failures)}/{total} CLI checks passed")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
