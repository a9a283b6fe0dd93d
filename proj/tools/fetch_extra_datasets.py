#!/usr/bin/env python3
# Copyright 2026 The vqc Authors.
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
"""Downloads the datasets that are not shipped under data/ and writes them in
the same CSV layout (features, then a {0, 1} label).

  sonar01.csv              UCI sonar, rock -> 0, mine -> 1       (208 x 60)
  semeion0_or_1.csv        UCI semeion digits 0 and 1            (323 x 256)
  semeion0_vs_rest.csv     digit 0 -> 0, every other digit -> 1  (1593 x 256)
  mnist256_0_or_1.csv      MNIST pooled to 16x16, digits 0 and 1 (569 x 256)
  mnist256_0_vs_rest.csv   MNIST pooled to 16x16, 0 vs rest      (2766 x 256)

The MNIST rows are a seeded random draw of the stated size; pooling is done
by `vqc coarse-grain`, so the build must exist (pass --vqc).

Needs network access to the UCI archive and OpenML.
"""

import argparse
import io
import os
import subprocess
import tempfile
import urllib.request

import numpy as np

UCI = "https://archive.ics.uci.edu/ml/machine-learning-databases"


def fetch(url):
    with urllib.request.urlopen(url, timeout=120) as r:
        return r.read().decode()


def write(path, x, y):
    np.savetxt(path, np.column_stack([x, y.astype(int)]), delimiter=",",
               fmt=["%.17g"] * x.shape[1] + ["%d"])
    print(f"wrote {path}: {x.shape[0]} x {x.shape[1]}")


def sonar(out):
    rows = [l.split(",") for l in fetch(f"{UCI}/undocumented/connectionist-bench/sonar/sonar.all-data").split()]
    x = np.array([[float(v) for v in r[:-1]] for r in rows])
    y = np.array([r[-1] == "M" for r in rows])
    write(os.path.join(out, "sonar01.csv"), x, y)


def semeion(out):
    a = np.loadtxt(io.StringIO(fetch(f"{UCI}/semeion/semeion.data")))
    x, digit = a[:, :256], a[:, 256:].argmax(axis=1)
    keep = digit <= 1
    write(os.path.join(out, "semeion0_or_1.csv"), x[keep], digit[keep] == 1)
    write(os.path.join(out, "semeion0_vs_rest.csv"), x, digit != 0)


def mnist(out, vqc, seed):
    from sklearn.datasets import fetch_openml

    x, digit = fetch_openml("mnist_784", version=1, return_X_y=True, as_frame=False)
    x = x / 255.0
    digit = digit.astype(int)
    rng = np.random.default_rng(seed)
    pick01 = rng.choice(np.flatnonzero(digit <= 1), 569, replace=False)
    pickall = rng.choice(len(digit), 2766, replace=False)
    for name, idx, label in [("mnist256_0_or_1", pick01, digit[pick01] == 1),
                             ("mnist256_0_vs_rest", pickall, digit[pickall] != 0)]:
        with tempfile.TemporaryDirectory() as tmp:
            raw = os.path.join(tmp, "raw.csv")
            write(raw, x[idx], label)
            dst = os.path.join(out, name + ".csv")
            subprocess.run([vqc, "coarse-grain", "--in", raw, "--out", dst], check=True)
            print(f"pooled {dst}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default=os.path.join(os.path.dirname(__file__), "..", "data"))
    ap.add_argument("--vqc", default="build/tools/vqc", help="path to the vqc binary")
    ap.add_argument("--seed", type=int, default=0, help="MNIST subsample seed")
    ap.add_argument("--only", choices=["sonar", "semeion", "mnist"], action="append")
    args = ap.parse_args()
    todo = args.only or ["sonar", "semeion", "mnist"]
    if "sonar" in todo:
        sonar(args.out)
    if "semeion" in todo:
        semeion(args.out)
    if "mnist" in todo:
        mnist(args.out, args.vqc, args.seed)


if __name__ == "__main__":
    main()
