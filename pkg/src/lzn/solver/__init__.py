"""Exact localization number of finite graphs.

The partition/expand kernel is compiled when available; set LZN_KERNEL=python
to force the pure-Python fallback.
"""

import os

from ._pykernel import Kernel as PyKernel

try:
    from ._ckernel import Kernel as CKernel
except ImportError:
    CKernel = None

if CKernel is not None and os.environ.get("LZN_KERNEL", "").lower() != "python":
    Kernel = CKernel
    KERNEL_NAME = "compiled"
else:
    Kernel = PyKernel
    KERNEL_NAME = "python"

from .core import (  # noqa: E402
    LOSE,
    BudgetExceeded,
    Entry,
    SolverCop,
    WinTable,
    check_win_table,
    cop_wins,
    default_budget,
    localization_number,
    make_kernel,
    mask_of,
    members,
    probe_tuples,
    prove,
    solve_exact,
    synthesize_strategy,
)

__all__ = [
    "CKernel", "PyKernel", "Kernel", "KERNEL_NAME", "LOSE", "BudgetExceeded", "Entry",
    "SolverCop", "WinTable", "check_win_table", "cop_wins", "default_budget",
    "localization_number", "make_kernel", "mask_of", "members", "probe_tuples", "prove",
    "solve_exact", "synthesize_strategy",
]
