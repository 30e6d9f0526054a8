#!/usr/bin/env python3
# Copyright 2026 The IIM Hardening Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Solve an all-binary LP file written by `iim export-lp` with HiGHS.

Reads the subset of the LP format the exporter emits (Minimize, Subject To,
Binaries, End) and prints `objective <v>` followed by one `<name> <value>`
line per variable, the format `iim check-solution` reads.

    solve_lp.py model.lp > solution.txt
    solve_lp.py --batch a.lp b.lp     # writes a.lp.sol, b.lp.sol
"""

import argparse
import re
import sys

import numpy as np
from scipy.optimize import Bounds, LinearConstraint, milp
from scipy.sparse import coo_matrix

_TERM = re.compile(r"([+-])?\s*(\d+(?:\.\d*)?(?:[eE][+-]?\d+)?)?\s*([A-Za-z_][\w.]*)")
_REL = re.compile(r"(<=|>=|=)\s*(-?\s*\d+(?:\.\d*)?(?:[eE][+-]?\d+)?)\s*$")


def parse_terms(text):
    """'x - 0.5 y + z' -> [(1.0, 'x'), (-0.5, 'y'), (1.0, 'z')]."""
    terms = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse terms near {text[pos:pos + 30]!r}")
        sign = -1.0 if m.group(1) == "-" else 1.0
        coef = float(m.group(2)) if m.group(2) else 1.0
        terms.append((sign * coef, m.group(3)))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return terms


def read_lp(path):
    sections = {"obj": [], "st": [], "bin": []}
    current = None
    with open(path, encoding="utf-8") as fh:
        for raw in fh:
            line = raw.split("\\", 1)[0].rstrip("\n")
            key = line.strip().lower()
            if not key:
                continue
            if key == "minimize":
                current = "obj"
            elif key == "subject to":
                current = "st"
            elif key == "binaries":
                current = "bin"
            elif key == "end":
                current = None
            elif current is None:
                raise ValueError(f"text outside a section: {line!r}")
            else:
                sections[current].append(line)

    variables = " ".join(sections["bin"]).split()
    index = {name: i for i, name in enumerate(variables)}

    obj_text = " ".join(sections["obj"])
    obj_text = obj_text.split(":", 1)[1] if ":" in obj_text else obj_text
    c = np.zeros(len(variables))
    if obj_text.strip() != "0":
        for coef, name in parse_terms(obj_text):
            c[index[name]] += coef

    # A constraint starts with "name:" and may continue on indented lines.
    rows = []
    for line in sections["st"]:
        if re.match(r"\s*[\w.]+\s*:", line):
            rows.append(line)
        else:
            rows[-1] += " " + line
    data, ri, ci, lo, hi = [], [], [], [], []
    for r, row in enumerate(rows):
        body = row.split(":", 1)[1]
        m = _REL.search(body)
        if not m:
            raise ValueError(f"constraint without relation: {row!r}")
        rhs = float(m.group(2).replace(" ", ""))
        for coef, name in parse_terms(body[: m.start()]):
            data.append(coef)
            ri.append(r)
            ci.append(index[name])
        lo.append(rhs if m.group(1) in (">=", "=") else -np.inf)
        hi.append(rhs if m.group(1) in ("<=", "=") else np.inf)
    a = coo_matrix((data, (ri, ci)), shape=(len(rows), len(variables))).tocsr()
    return variables, c, a, np.array(lo), np.array(hi)


def solve(path, out):
    variables, c, a, lo, hi = read_lp(path)
    constraints = [LinearConstraint(a, lo, hi)] if a.shape[0] else []
    res = milp(c, constraints=constraints, integrality=np.ones(len(variables)),
               bounds=Bounds(0, 1))
    if res.x is None:
        print(f"{path}: solver failed: {res.message}", file=sys.stderr)
        return False
    values = np.rint(res.x).astype(int)
    out.write(f"objective {int(round(float(c @ values)))}\n")
    for name, v in zip(variables, values):
        out.write(f"{name} {v}\n")
    return True


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("lp", nargs="+", help="LP file(s)")
    parser.add_argument("--batch", action="store_true",
                        help="write each solution to <lp>.sol instead of stdout")
    args = parser.parse_args()
    if len(args.lp) > 1 and not args.batch:
        parser.error("several LP files need --batch")

    ok = True
    for path in args.lp:
        if args.batch:
            with open(path + ".sol", "w", encoding="utf-8") as fh:
                ok = solve(path, fh) and ok
        else:
            ok = solve(path, sys.stdout) and ok
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
