"""Runs the lt binary and checks its JSON output.

  cli_json.py LT --rc N [--check EXPR] [--same-as "ARGS"] -- ARGS...

EXPR is evaluated with the parsed stdout bound to `d`. --same-as reruns lt
with other arguments and requires byte-identical stdout.
"""

import argparse
import json
import shlex
import subprocess
import sys


def run(lt, args):
    return subprocess.run([lt, *args], capture_output=True, text=True)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("lt")
    ap.add_argument("--rc", type=int, default=0)
    ap.add_argument("--check", action="append", default=[])
    ap.add_argument("--same-as")
    cut = sys.argv.index("--")
    o = ap.parse_args(sys.argv[1:cut])
    args = sys.argv[cut + 1:]
    r = run(o.lt, args)
    if r.returncode != o.rc:
        sys.exit(f"exit code {r.returncode}, expected {o.rc}\n{r.stderr}")
    d = json.loads(r.stdout)
    for expr in o.check:
        if not eval(expr, {}, {"d": d}):
            sys.exit(f"check failed: {expr}")
    if o.same_as is not None:
        again = run(o.lt, shlex.split(o.same_as))
        if again.stdout != r.stdout:
            sys.exit("reports differ")


if __name__ == "__main__":
    main()
