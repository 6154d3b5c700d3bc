"""Validates the CLI's JSON reports against docs/report.schema.json."""
import json
import subprocess
import sys

import jsonschema

tool, schema_path = sys.argv[1], sys.argv[2]
schema = json.load(open(schema_path))
runs = [
    ["differentials", "--p", "3", "--n", "4", "--poly", "(x^2+3^4)*((x-1)^2-3^3)"],
    ["differentials", "--p", "2", "--n", "3", "--poly", "(x^3-2^4)*((x+2)^2+2^3)*((x+2)^2-2^3)", "--timing"],
    ["model", "--p", "2", "--poly", "(x^3-2^4)*((x+2)^2+2^3)*((x+2)^2-2^3)"],
    ["model", "--p", "5", "--poly", "x^3+1", "--include-infinity", "off"],
    ["tree", "--p", "3", "--poly", "(x^2+3^4)*((x-1)^2-3^3)"],
]
for args in runs:
    out = subprocess.run([tool, *args, "--format", "json"], check=True, capture_output=True, text=True).stdout
    jsonschema.validate(json.loads(out), schema)
    print("ok:", " ".join(args))
