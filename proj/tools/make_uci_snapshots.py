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
"""Writes the binary-label CSV snapshots shipped under data/.

Uses the copies of the UCI iris, breast-cancer and wine tables bundled with
scikit-learn, so no network access is needed. Output format: no header,
feature columns, then an integer label in {0, 1}.
"""
import argparse
import pathlib

import numpy as np
from sklearn import datasets


def write(path, X, y):
    with open(path, "w", newline="\n") as f:
        for row, label in zip(X, y):
            f.write(",".join(repr(float(v)) for v in row))
            f.write(",%d\n" % int(label))
    print("wrote %s (N=%d, M=%d)" % (path, X.shape[0], X.shape[1]))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=str(pathlib.Path(__file__).resolve().parent.parent / "data"))
    args = ap.parse_args()
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    iris = datasets.load_iris()
    X, t = iris.data, iris.target
    keep = t <= 1
    write(out / "iris01.csv", X[keep], t[keep])
    # "k or non-k": class k -> 0, every other class -> 1
    write(out / "iris0_vs_rest.csv", X, (t != 0).astype(int))
    write(out / "iris1_vs_rest.csv", X, (t != 1).astype(int))

    # sklearn encodes malignant as 0; relabel to B -> 0, M -> 1
    cancer = datasets.load_breast_cancer()
    write(out / "cancer01.csv", cancer.data, 1 - cancer.target)

    wine = datasets.load_wine()
    write(out / "wine0_vs_rest.csv", wine.data, (wine.target != 0).astype(int))


if __name__ == "__main__":
    main()
