#!/usr/bin/env python3
"""Export the real benchmark datasets into data/ in the CSV+descriptor layout.

Bundled with scikit-learn (exported offline):
  wine           -- 178 x 13, 3 classes
  breast_cancer  -- 569 x 30, 2 classes

Require a network or manual download (not fetched here):
  divorce        -- UCI "Divorce Predictors" (170 x 54, 2 classes):
                    https://archive.ics.uci.edu/dataset/497
                    save as data/divorce.csv with a trailing `label` column and a
                    data/divorce.json descriptor {"label_cols": 1, "mode": "single"}
  flags/emotions -- MULAN repository ARFF + XML:
                    https://mulan.sourceforge.net/datasets-mlc.html
                    convert with: flel convert-arff --in <name>.arff --xml <name>.xml \
                                  --mode multi --out data/<name>
"""

import argparse
import json
import os


def export_single(out_dir, name, features, target, class_names):
    os.makedirs(out_dir, exist_ok=True)
    csv_path = os.path.join(out_dir, name + ".csv")
    with open(csv_path, "w") as f:
        cols = [f"f{i}" for i in range(features.shape[1])] + ["label"]
        f.write(",".join(cols) + "\n")
        for row, t in zip(features, target):
            f.write(",".join(repr(float(v)) for v in row))
            f.write("," + str(class_names[t]) + "\n")
    with open(os.path.join(out_dir, name + ".json"), "w") as f:
        json.dump({"label_cols": 1, "mode": "single"}, f)
        f.write("\n")
    print(f"wrote {csv_path} ({features.shape[0]} x {features.shape[1]})")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="data", help="output directory")
    args = ap.parse_args()

    from sklearn.datasets import load_breast_cancer, load_wine

    wine = load_wine()
    export_single(args.out, "wine", wine.data, wine.target, list(wine.target_names))

    bc = load_breast_cancer()
    export_single(args.out, "breast_cancer", bc.data, bc.target, list(bc.target_names))

    for missing in ("divorce", "flags", "emotions"):
        if not os.path.exists(os.path.join(args.out, missing + ".csv")):
            print(f"note: {missing} not present; see the module docstring for how to add it")


if __name__ == "__main__":
    main()
