"""State-file serialization. The on-disk format is a single JSON document

    {"d_A": 2, "d_B": 2, "matrix": [[re, im], [re, im], ...]}

with the matrix flattened row-major, one [re, im] pair per entry. Numbers are
written with 17 significant digits so a load/save round trip is exact at
double precision.
"""

from __future__ import annotations

import json

import numpy as np

from .errors import ConfigError
from .linalg import BipartiteDensityMatrix


def fmt17(x: float) -> str:
    """Format a float with 17 significant digits (exact round trip)."""
    return format(float(x), ".17g")


def matrix_to_pairs(mat: np.ndarray) -> list[list[float]]:
    """Flatten a complex matrix to a row-major list of [re, im] pairs."""
    flat = np.asarray(mat, dtype=np.complex128).ravel()
    return [[float(z.real), float(z.imag)] for z in flat]


def pairs_to_matrix(pairs, dim: int) -> np.ndarray:
    if len(pairs) != dim * dim:
        raise ConfigError(
            f"matrix has {len(pairs)} entries, expected {dim * dim}")
    flat = np.empty(dim * dim, dtype=np.complex128)
    for i, pair in enumerate(pairs):
        if (not isinstance(pair, (list, tuple)) or len(pair) != 2
                or not all(isinstance(v, (int, float)) for v in pair)):
            raise ConfigError(f"matrix entry {i} is not a [re, im] pair: {pair!r}")
        flat[i] = complex(pair[0], pair[1])
    return flat.reshape(dim, dim)


def state_to_json(state: BipartiteDensityMatrix) -> str:
    """Serialize a bipartite state to the canonical JSON text."""
    entries = ",".join(f"[{fmt17(z.real)},{fmt17(z.imag)}]"
                       for z in state.mat.ravel())
    return (f'{{"d_A":{state.d_A},"d_B":{state.d_B},'
            f'"matrix":[{entries}]}}')


def save_state(path: str, state: BipartiteDensityMatrix) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(state_to_json(state))
        fh.write("\n")


def load_state(path: str) -> BipartiteDensityMatrix:
    """Load and validate a bipartite state file."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read state file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"state file {path} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ConfigError("state file must contain a JSON object")
    missing = {"d_A", "d_B", "matrix"} - doc.keys()
    if missing:
        raise ConfigError(f"state file is missing fields: {sorted(missing)}")
    d_a, d_b = doc["d_A"], doc["d_B"]
    if not isinstance(d_a, int) or not isinstance(d_b, int) or d_a < 1 or d_b < 1:
        raise ConfigError("d_A and d_B must be positive integers")
    mat = pairs_to_matrix(doc["matrix"], d_a * d_b)
    return BipartiteDensityMatrix(mat, d_a, d_b)
