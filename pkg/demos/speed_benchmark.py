"""Closed form vs Lindblad oracle: wall-time comparison.

Times both evaluators on identical grids at the reference operating point
(one warm-up run excluded, mean over repetitions) and prints the speedup
per grid size. Writes the table to speed_benchmark.csv.
"""

from wavelink import io
from wavelink.sweep import benchmark


def main():
    report = benchmark([100, 1_000, 10_000, 100_000], repetitions=10)
    print(f"{'N_t':>8} {'analytic (ms)':>14} {'lindblad (ms)':>14} {'speedup':>8}")
    for r in report.rows:
        flag = "  (timer-resolution limited)" if r.timing_flagged else ""
        print(f"{r.n_t:>8} {r.analytic_mean * 1e3:14.3f} {r.lindblad_mean * 1e3:14.3f} "
              f"{r.speedup:7.1f}x{flag}")
    io.write_bench("speed_benchmark.csv", report)
    print("wrote speed_benchmark.csv")


if __name__ == "__main__":
    main()
