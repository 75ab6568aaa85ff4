#!/usr/bin/env python3
# Copyright 2026 The SCGC Authors.
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

"""Converts a LINQS-style citation dump (<name>.content, <name>.cites) into
the edges.txt / features.txt / labels.txt layout read by `scgc`.

  convert_linqs.py --content cora.content --cites cora.cites --out data/cora

Nodes keep the order of the content file. Class names are numbered in
sorted order. Citation lines naming unknown ids are dropped and counted.
"""

import argparse
import pathlib
import sys


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--content", required=True, type=pathlib.Path)
    parser.add_argument("--cites", required=True, type=pathlib.Path)
    parser.add_argument("--out", required=True, type=pathlib.Path)
    args = parser.parse_args()

    ids, rows, classes = {}, [], []
    with args.content.open() as f:
        for line_no, line in enumerate(f, 1):
            parts = line.split()
            if not parts:
                continue
            if parts[0] in ids:
                sys.exit(f"{args.content}:{line_no}: duplicate id {parts[0]}")
            ids[parts[0]] = len(rows)
            rows.append(parts[1:-1])
            classes.append(parts[-1])
    if not rows:
        sys.exit(f"{args.content}: no nodes")
    dim = len(rows[0])
    if any(len(r) != dim for r in rows):
        sys.exit(f"{args.content}: rows differ in feature count")
    class_id = {name: i for i, name in enumerate(sorted(set(classes)))}

    edges, dropped = [], 0
    with args.cites.open() as f:
        for line in f:
            parts = line.split()
            if len(parts) != 2:
                continue
            if parts[0] not in ids or parts[1] not in ids:
                dropped += 1
                continue
            edges.append((ids[parts[0]], ids[parts[1]]))

    args.out.mkdir(parents=True, exist_ok=True)
    with (args.out / "edges.txt").open("w") as f:
        for u, v in edges:
            f.write(f"{u} {v}\n")
    with (args.out / "features.txt").open("w") as f:
        f.write(f"{len(rows)} {dim}\n")
        for r in rows:
            f.write(" ".join(r) + "\n")
    with (args.out / "labels.txt").open("w") as f:
        for c in classes:
            f.write(f"{class_id[c]}\n")

    print(f"{len(rows)} nodes, {dim} features, {len(class_id)} classes, "
          f"{len(edges)} edge lines ({dropped} dropped) -> {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
