# Copyright 2026 The qswitch Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Runs the qswitch binary and checks exit code, report schema and stderr."""

import argparse
import json
import subprocess
import sys

import jsonschema


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--schema")
    parser.add_argument("--expect-exit", type=int, default=0)
    parser.add_argument("--stderr-contains", action="append", default=[])
    parser.add_argument("--repeat-identical", action="store_true")
    parser.add_argument("command", nargs=argparse.REMAINDER)
    args = parser.parse_args()
    command = args.command[1:] if args.command[:1] == ["--"] else args.command

    first = subprocess.run(command, capture_output=True, text=True)
    if first.returncode != args.expect_exit:
        print(f"exit {first.returncode}, expected {args.expect_exit}\n{first.stderr}", file=sys.stderr)
        return 1
    for needle in args.stderr_contains:
        if needle not in first.stderr:
            print(f"stderr lacks {needle!r}:\n{first.stderr}", file=sys.stderr)
            return 1
    if args.schema:
        with open(args.schema) as f:
            schema = json.load(f)
        try:
            jsonschema.Draft202012Validator(schema).validate(json.loads(first.stdout))
        except jsonschema.ValidationError as e:
            print(f"schema violation: {e.message} at {list(e.absolute_path)}", file=sys.stderr)
            return 1
    if args.repeat_identical:
        second = subprocess.run(command, capture_output=True, text=True)
        if second.stdout != first.stdout:
            print("second run produced different bytes", file=sys.stderr)
            return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
