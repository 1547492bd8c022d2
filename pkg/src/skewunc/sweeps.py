"""Row-level evaluation for the sweep command: build the example state at a
given mixing parameter, compute both memory bounds through the numeric
pipeline at Pauli x/z bases, and put the closed-form values next to them.
"""

from __future__ import annotations

import numpy as np

from .bounds import example_closed_forms, product_bound_check, sum_bound_check
from .correlation import OptimizerConfig, brute_force_D_qubit, quantum_correlation_D
from .errors import ValidationError
from .linalg import BipartiteDensityMatrix
from .states import example2_state, pauli_basis, werner_isotropic, werner_swap

EXAMPLE_P_RANGES = {1: (-1.0, 1.0), 2: None, 3: (0.0, 1.0)}

# Maximum |pipeline - closed form| per row for the sweep to count as a
# faithful reproduction.
SWEEP_ERR_TOL = 1e-8


def example_state(example_id: int, p: float | None) -> BipartiteDensityMatrix:
    if example_id == 1:
        return werner_swap(p)
    if example_id == 3:
        return werner_isotropic(p)
    if example_id == 2:
        return example2_state()
    raise ValidationError(f"unknown example id {example_id}")


def certified_d(state: BipartiteDensityMatrix, alpha: float, oracle: str,
                optimizer_cfg: OptimizerConfig | None = None) -> float:
    """Quantum correlation through the selected minimizer."""
    if oracle == "grid":
        return brute_force_D_qubit(state, alpha)
    if oracle == "optimizer":
        return quantum_correlation_D(state, alpha,
                                     optimizer_cfg or OptimizerConfig()).value
    raise ValidationError(f"oracle must be 'grid' or 'optimizer', got {oracle!r}")


def bound_pair(state: BipartiteDensityMatrix, alpha: float, d_value: float):
    """Product and sum reports at Pauli x/z measurement bases."""
    phi = pauli_basis("x")
    psi = pauli_basis("z")
    prod = product_bound_check(state, phi, psi, alpha, d_value)
    summ = sum_bound_check(state, phi, psi, alpha, d_value)
    return prod, summ


def sweep_row(example_id: int, p: float | None, alpha: float, oracle: str,
              optimizer_cfg: OptimizerConfig | None = None) -> dict:
    """One output row: pipeline values, closed forms where they exist, and
    the worst absolute deviation between the two."""
    state = example_state(example_id, p)
    d_value = certified_d(state, alpha, oracle, optimizer_cfg=optimizer_cfg)
    prod, summ = bound_pair(state, alpha, d_value)
    row = {
        "p": p,
        "alpha": alpha,
        "lhs_product": prod.lhs,
        "rhs_product": prod.rhs,
        "lhs_sum": summ.lhs,
        "rhs_sum": summ.rhs,
        "sum_L": prod.terms["sum_L"],
        "D_tilde": d_value,
        "closed_form_lhs_product": None,
        "closed_form_rhs_product": None,
        "closed_form_lhs_sum": None,
        "closed_form_rhs_sum": None,
        "abs_err_max": None,
    }
    if example_id in (1, 3):
        cp_l, cp_r = example_closed_forms(example_id, "product", p, alpha)
        cs_l, cs_r = example_closed_forms(example_id, "sum", p, alpha)
        row["closed_form_lhs_product"] = cp_l
        row["closed_form_rhs_product"] = cp_r
        row["closed_form_lhs_sum"] = cs_l
        row["closed_form_rhs_sum"] = cs_r
        row["abs_err_max"] = max(
            abs(prod.lhs - cp_l), abs(prod.rhs - cp_r),
            abs(summ.lhs - cs_l), abs(summ.rhs - cs_r))
    return row


def p_grid(start: float, stop: float, step: float) -> list[float]:
    """Inclusive arithmetic grid; the last point is clamped to ``stop`` so
    accumulated rounding cannot step outside a validated parameter range."""
    if step <= 0:
        raise ValidationError(f"step must be positive, got {step}")
    if stop < start:
        raise ValidationError(f"empty grid: stop {stop} < start {start}")
    n = int(np.floor((stop - start) / step + 1e-9)) + 1
    return [min(start + i * step, stop) for i in range(n)]
