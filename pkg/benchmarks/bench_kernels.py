"""Compare the compiled and pure-Python solver kernels.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse

from lzn.bench import report, run
from lzn.solver import CKernel

if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if CKernel is None:
        print("compiled kernel not built; timing the Python kernel only")
    print(report(run(args.repeat)), end="")
