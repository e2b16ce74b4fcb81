import numpy as np
import os
import pandas as pd
import sys
import time
from tqdm import tqdm

import regulib
from regulib.suites import SUITES, run_suite

RESULTS_NAME = "suite-results"

# Suites with options keeping a single run within a few seconds. The full
# parameter grids are timed by passing "full" on the command line.
QUICK_OPTIONS = {
    "lemma-2.3": {"max_n": 12},
    "lemma-2.4": {"max_n": 12},
    "lemma-2.7": {},
    "lemma-2.8": {"max_n": 6, "l": 3},
    "table-1": {"p": 3},
    "prop-6.1": {"max_n": 8},
    "example-6.4": {"m": 3, "f": 1},
    "example-6.6": {},
    "prop-6.7": {},
    "prop-7.1": {},
    "theorem-A": {},
}

def print_mean_pm_stddev(times):
    if len(times) == 0:
        return "-"
    else:
        t = np.mean(times)
        s = np.std(times)
        return f"{t:.1f} ± {s:.1f}"

def find_col_maxlen(rows, col):
    return np.max([len(row[col]) for row in rows])

def print_aligned_columns(rows):
    ncols = len(rows[0])
    maxlens = [find_col_maxlen(rows, i) for i in range(ncols)]
    for row in rows:
        print(" ".join(col.ljust(maxlen) for col, maxlen in zip(row, maxlens)))

def time_suite(suite, opts, jobs):
    start = time.perf_counter()
    report = run_suite(suite, opts, jobs)
    elapsed = (time.perf_counter() - start) * 1000.0
    return elapsed, len(report.items), report.passed

def print_suite_output(csv_file, suites, jobs):
    results_df = pd.read_csv(csv_file)
    rows = [["Suite", "Items"] + [f"{j} jobs" for j in jobs]]
    for suite in suites:
        results_suite = results_df[results_df["suite"] == suite]
        if results_suite.empty:
            continue
        row = [suite, str(results_suite["items"].iloc[0])]
        for j in jobs:
            times = results_suite[results_suite["jobs"] == j]["time"]
            row.append(print_mean_pm_stddev(list(times)))
        rows.append(row)
    print_aligned_columns(rows)
    failed = results_df[~results_df["pass"]]["suite"].unique()
    if len(failed) > 0:
        print(f"Suites with failing items: {', '.join(failed)}")

def run_suite_benchmark(full=False, niters=3):
    suites = list(SUITES)
    jobs = [1, regulib.backend.cpu_count()]
    jobs = sorted(set(jobs))
    csv_file = f"{RESULTS_NAME}-{'full' if full else 'quick'}.csv"

    # Only run the benchmarks if the CSV data file does not exist.
    if not os.path.isfile(csv_file):
        results = []
        with tqdm(total=len(suites) * len(jobs) * niters) as pbar:
            for suite in suites:
                opts = {} if full else QUICK_OPTIONS[suite]
                for j in jobs:
                    for _ in range(niters):
                        elapsed, items, passed = time_suite(suite, opts, j)
                        results.append({"suite": suite, "jobs": j, "items": items,
                                        "time": elapsed, "pass": passed})
                        pbar.update(1)
        pd.DataFrame(results).to_csv(csv_file, index=False)
    else:
        print("CSV results found - skipping benchmarks and printing results")

    print_suite_output(csv_file, suites, jobs)

benchmark_id = sys.argv[1] if len(sys.argv) > 1 else "quick"
if benchmark_id == "quick":
    run_suite_benchmark()
elif benchmark_id == "full":
    niters = int(sys.argv[2]) if len(sys.argv) > 2 else 1
    run_suite_benchmark(True, niters)
else:
    print(f"Unknown benchmark '{benchmark_id}', expected 'quick' or 'full'")
    exit(1)
