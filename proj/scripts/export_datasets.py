#!/usr/bin/env python3
# Copyright 2025-2026 The evoqk developers.
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

"""Exports the benchmark datasets to the CSV layout evoqk reads
(comma-separated features, integer label in the last column).

digits, wine and breast_cancer come bundled with scikit-learn. fashion
needs tensorflow (or any local copy of Fashion-MNIST) and network access
the first time; it is optional and skipped when unavailable.
"""

import argparse
import os


def write_csv(path, X, y, comment):
    with open(path, "w") as f:
        f.write(f"# {comment}\n")
        for row, label in zip(X, y):
            f.write(",".join(repr(float(v)) for v in row) + f",{int(label)}\n")
    print(f"wrote {path}  ({len(y)} rows, {X.shape[1]} features)")


def export_sklearn(out_dir):
    from sklearn.datasets import load_breast_cancer, load_digits, load_wine

    for name, loader in [("digits", load_digits), ("wine", load_wine),
                         ("breast_cancer", load_breast_cancer)]:
        d = loader()
        write_csv(os.path.join(out_dir, f"{name}.csv"), d.data, d.target,
                  f"{name}: scikit-learn export, features then integer label")


def export_fashion(out_dir, per_class):
    try:
        import numpy as np
        import tensorflow as tf
    except ImportError as e:
        print(f"skipping fashion ({e})")
        return
    try:
        (x_train, y_train), _ = tf.keras.datasets.fashion_mnist.load_data()
    except Exception as e:  # no network, no cache
        print(f"skipping fashion ({e})")
        return
    x = x_train.reshape(len(x_train), -1).astype(float)
    rng = np.random.default_rng(0)
    keep = []
    for cls in range(10):
        idx = np.flatnonzero(y_train == cls)
        keep.extend(rng.choice(idx, size=per_class, replace=False))
    keep = np.sort(np.array(keep))
    write_csv(os.path.join(out_dir, "fashion.csv"), x[keep], y_train[keep],
              f"fashion: {per_class} samples per class, flattened 28x28 pixels")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="data")
    ap.add_argument("--fashion-per-class", type=int, default=40)
    args = ap.parse_args()
    os.makedirs(args.out, exist_ok=True)
    export_sklearn(args.out)
    export_fashion(args.out, args.fashion_per_class)


if __name__ == "__main__":
    main()
