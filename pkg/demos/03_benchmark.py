"""Benchmark grid hashing against brute force and a kd-tree.

Runs the harness on the bundled classification CSV and prints the report
as a markdown table. The same run is available from the command line:

    bench --dataset data/clusters.csv --label-col label --task cls \
          --k 3 --algos ghn,brute,kdtree --report md
"""

from pathlib import Path

from gridneighbors import DatasetSpec, run_bench

csv_path = Path(__file__).resolve().parent.parent / "data" / "clusters.csv"
spec = DatasetSpec(str(csv_path), "label", "classification")

report = run_bench(spec, algos=("ghn", "brute", "kdtree"), k=3, mode="heuristic",
                   scaler_kind="standard", seed=0, repeats=3)
print(report.to_markdown())

ghn = report.algorithms[0]
print(f"grid exploration scanned ~{ghn.mean_points_scanned:.0f} points per query "
      f"(training set has {report.env['n_train']}), visiting "
      f"{ghn.mean_layers_visited:.1f} layers on average.")
