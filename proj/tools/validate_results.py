"""Validate results.json files against schema/results.schema.json.

Also checks that every non-excluded ratio equals best_value / best_known.
"""

import argparse
import json
import math
import pathlib
import sys

import jsonschema

SCHEMA = pathlib.Path(__file__).resolve().parent.parent / "schema" / "results.schema.json"


def check(path: pathlib.Path, validator: jsonschema.protocols.Validator) -> list[str]:
    doc = json.loads(path.read_text())
    problems = [f"{path}: {e.json_path}: {e.message}" for e in validator.iter_errors(doc)]
    if problems:
        return problems
    for i, r in enumerate(doc["records"]):
        if r["best_known"] > 0:
            expected = r["best_value"] / r["best_known"]
            if r["ratio"] is None or not math.isclose(r["ratio"], expected, rel_tol=1e-12):
                problems.append(f"{path}: records[{i}]: ratio {r['ratio']} != {expected}")
        elif r["ratio"] is not None or not r["excluded"]:
            problems.append(f"{path}: records[{i}]: non-positive best_known must be excluded")
    return problems


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("results", nargs="+", type=pathlib.Path)
    args = parser.parse_args()
    schema = json.loads(SCHEMA.read_text())
    validator_cls = jsonschema.validators.validator_for(schema)
    validator_cls.check_schema(schema)
    validator = validator_cls(schema)
    problems = [p for path in args.results for p in check(path, validator)]
    for p in problems:
        print(p, file=sys.stderr)
    return 1 if problems else 0


if __name__ == "__main__":
    sys.exit(main())
