"""Property-check campaigns over seeded random ensembles.

Every invariant declared by the core modules is expressed here as a runner
that draws configured sample counts, tracks the worst slack seen, and can
hand back a witness payload (state, basis, alpha) for any violation. The
CLI's check command and the test suite both drive these runners.

Pass rule: a property passes when ``worst_slack >= -tol``. Inequality
properties use the literal margin as slack; agreement properties use the
negated absolute error, so the same rule applies everywhere.
"""

from __future__ import annotations

import json
import os
import zlib
from dataclasses import dataclass, replace

import numpy as np
import scipy.linalg

from .bounds import heisenberg_type_check, product_bound_check, sum_bound_check
from .correlation import (
    DeficitEvaluator,
    OptimizerConfig,
    basis_from_unitary,
    brute_force_D_qubit,
    quantum_correlation_D,
)
from .errors import ConfigError
from .linalg import (
    BipartiteDensityMatrix,
    DensityMatrix,
    HermitianOperator,
    fractional_power,
    herm_eig,
    kron,
    partial_trace,
)
from .serialize import matrix_to_pairs
from .skew import (
    SkewEngine,
    skew_information_I,
    skew_information_J,
    skew_information_via_powers,
    variance,
)
from .states import (
    EnsembleSpec,
    example2_state,
    random_density,
    random_hermitian,
    random_unitary,
    werner_isotropic,
    werner_swap,
)
from .sweeps import SWEEP_ERR_TOL, p_grid, sweep_row

DEFAULT_ALPHAS = tuple(round(0.1 * k, 1) for k in range(1, 10))

# Theorem checks whose right side carries a grid-oracle correlation value are
# held to the oracle's certification level, not machine precision.
ORACLE_TOL = 1e-6


@dataclass(frozen=True)
class EnsembleRun:
    spec: EnsembleSpec
    n_samples: int


@dataclass(frozen=True)
class CheckConfig:
    """Settings for one check campaign."""

    seed: int = 42
    n_samples: int = 1000      # cheap random-sample properties
    n_optimizer: int = 100     # properties that run the basis optimizer
    n_theorem: int = 200       # theorem checks with an oracle-certified D
    alphas: tuple[float, ...] = DEFAULT_ALPHAS
    dims: tuple[int, ...] = (2, 3, 4)
    herm_tol: float = 1e-10
    psd_tol: float = 1e-10
    bound_tol: float = 1e-9
    ensembles: tuple[EnsembleRun, ...] = ()

    def validate(self) -> None:
        if self.n_samples < 1 or self.n_optimizer < 1 or self.n_theorem < 1:
            raise ConfigError("sample counts must be >= 1")
        if min(self.herm_tol, self.psd_tol, self.bound_tol) <= 0:
            raise ConfigError("tolerances must be positive")
        if not self.alphas or any(not (0.0 <= a <= 1.0) for a in self.alphas):
            raise ConfigError("alphas must be a nonempty subset of [0, 1]")
        if not self.dims or any(d < 2 for d in self.dims):
            raise ConfigError("dims must contain integers >= 2")


@dataclass(frozen=True)
class PropertyResult:
    name: str
    samples: int
    worst_slack: float
    tol: float
    passed: bool
    witness: str | None = None


def _tag_seed(seed: int, tag: str) -> int:
    ss = np.random.SeedSequence(entropy=int(seed),
                                spawn_key=(zlib.crc32(tag.encode()),))
    return int(ss.generate_state(1)[0])


class _Tracker:
    """Keeps the minimum slack and the payload that produced it."""

    def __init__(self):
        self.worst = np.inf
        self.payload: dict | None = None
        self.count = 0

    def update(self, slack: float, payload: dict | None = None) -> None:
        self.count += 1
        if slack < self.worst:
            self.worst = float(slack)
            self.payload = payload

    def result(self, name: str, tol: float) -> tuple[PropertyResult, dict | None]:
        passed = bool(self.worst >= -tol)
        res = PropertyResult(name=name, samples=self.count,
                             worst_slack=float(self.worst), tol=tol, passed=passed)
        return res, (None if passed else self.payload)


def _state_payload(state: DensityMatrix, **extra) -> dict:
    payload = {"matrix": matrix_to_pairs(state.mat)}
    if isinstance(state, BipartiteDensityMatrix):
        payload["d_A"] = state.d_A
        payload["d_B"] = state.d_B
    else:
        payload["dim"] = state.dim
    payload.update(extra)
    return payload


def _bipartite_dims(cfg: CheckConfig) -> list[tuple[int, int]]:
    return [(2, 2), (2, 3)] if max(cfg.dims) >= 3 else [(2, 2)]


# ---------------------------------------------------------------------------
# linalg properties
# ---------------------------------------------------------------------------

def prop_eig_reconstruction(cfg: CheckConfig):
    seed = _tag_seed(cfg.seed, "eig_reconstruction")
    dims = (2, 3, 4, 6)
    tr = _Tracker()
    for i in range(cfg.n_samples):
        h = random_hermitian(dims[i % len(dims)], seed, index=i)
        dec = herm_eig(h)
        resid = float(np.max(np.abs(dec.reconstruct() - h.mat)))
        orth = float(np.max(np.abs(
            dec.eigenvectors.conj().T @ dec.eigenvectors - np.eye(h.dim))))
        tr.update(-max(resid, orth),
                  {"dim": h.dim, "matrix": matrix_to_pairs(h.mat)})
    return tr.result("linalg_eig_reconstruction", 1e-10)


def prop_fractional_power_pair(cfg: CheckConfig):
    seed = _tag_seed(cfg.seed, "fractional_power_pair")
    tr = _Tracker()
    for i in range(cfg.n_samples):
        d = cfg.dims[i % len(cfg.dims)]
        if i % 3 == 0 and d > 2:
            spec = EnsembleSpec("fixed_rank", d, seed, rank=d - 1)
        else:
            spec = EnsembleSpec("full_rank", d, seed)
        rho = random_density(spec, index=i)
        alpha = cfg.alphas[i % len(cfg.alphas)]
        prod = fractional_power(rho, alpha).mat @ fractional_power(rho, 1.0 - alpha).mat
        err = float(np.max(np.abs(prod - rho.mat)))
        tr.update(-err, _state_payload(rho, alpha=alpha))
    return tr.result("linalg_fractional_power_pair", 1e-9)


def prop_partial_trace(cfg: CheckConfig):
    seed = _tag_seed(cfg.seed, "partial_trace")
    dims = _bipartite_dims(cfg)
    tr = _Tracker()
    for i in range(cfg.n_samples):
        da, db = dims[i % len(dims)]
        rho = random_density(EnsembleSpec("full_rank", (da, db), seed), index=i)
        bad = 0.0
        for keep in ("A", "B"):
            red = partial_trace(rho, keep)
            bad = max(bad, abs(float(np.trace(red.mat).real) - 1.0),
                      max(0.0, -float(np.linalg.eigvalsh(red.mat)[0])))
        tr.update(-bad, _state_payload(rho))
    return tr.result("linalg_partial_trace", 1e-9)


def prop_kron_roundtrip(cfg: CheckConfig):
    seed = _tag_seed(cfg.seed, "kron_roundtrip")
    dims = _bipartite_dims(cfg)
    tr = _Tracker()
    for i in range(cfg.n_samples):
        da, db = dims[i % len(dims)]
        a = random_density(EnsembleSpec("full_rank", da, seed), index=2 * i)
        b = random_density(EnsembleSpec("full_rank", db, seed), index=2 * i + 1)
        joint = BipartiteDensityMatrix(kron(a.mat, b.mat), da, db)
        err = max(float(np.max(np.abs(partial_trace(joint, "A").mat - a.mat))),
                  float(np.max(np.abs(partial_trace(joint, "B").mat - b.mat))))
        tr.update(-err, _state_payload(joint))
    return tr.result("linalg_kron_roundtrip", 1e-12)


# ---------------------------------------------------------------------------
# skew properties
# ---------------------------------------------------------------------------

def prop_skew_ordering(cfg: CheckConfig):
    seed = _tag_seed(cfg.seed, "skew_ordering")
    tr = _Tracker()
    for i in range(cfg.n_samples):
        d = cfg.dims[i % len(cfg.dims)]
        rho = random_density(EnsembleSpec("full_rank", d, seed), index=i)
        h = random_hermitian(d, seed + 1, index=i)
        alpha = cfg.alphas[i % len(cfg.alphas)]
        engine = SkewEngine(rho, alpha)
        i_val = engine.i_value(h.mat)
        j_val = engine.j_value(h.mat)
        tr.update(min(j_val - i_val, i_val),
                  _state_payload(rho, alpha=alpha,
                                 observable=matrix_to_pairs(h.mat)))
    return tr.result("skew_ordering_J_ge_I_ge_0", cfg.bound_tol)


def prop_pure_reduction(cfg: CheckConfig):
    seed = _tag_seed(cfg.seed, "pure_reduction")
    tr = _Tracker()
    for i in range(cfg.n_samples):
        d = cfg.dims[i % len(cfg.dims)]
        rho = random_density(EnsembleSpec("pure", d, seed), index=i)
        h = random_hermitian(d, seed + 1, index=i)
        v = variance(rho, h)
        err = max(abs(skew_information_I(rho, h, a) - v) for a in cfg.alphas)
        tr.update(-err, _state_payload(rho, observable=matrix_to_pairs(h.mat)))
    return tr.result("skew_pure_state_reduction", 1e-9)


def prop_alpha_symmetry(cfg: CheckConfig):
    seed = _tag_seed(cfg.seed, "alpha_symmetry")
    tr = _Tracker()
    for i in range(cfg.n_samples):
        d = cfg.dims[i % len(cfg.dims)]
        rho = random_density(EnsembleSpec("full_rank", d, seed), index=i)
        h = random_hermitian(d, seed + 1, index=i)
        alpha = cfg.alphas[i % len(cfg.alphas)]
        err = max(
            abs(skew_information_I(rho, h, alpha) - skew_information_I(rho, h, 1 - alpha)),
            abs(skew_information_J(rho, h, alpha) - skew_information_J(rho, h, 1 - alpha)))
        tr.update(-err, _state_payload(rho, alpha=alpha))
    return tr.result("skew_alpha_symmetry", 1e-10)


def prop_half_alpha_agreement(cfg: CheckConfig):
    seed = _tag_seed(cfg.seed, "half_alpha")
    tr = _Tracker()
    for i in range(cfg.n_samples):
        d = cfg.dims[i % len(cfg.dims)]
        rho = random_density(EnsembleSpec("full_rank", d, seed), index=i)
        h = random_hermitian(d, seed + 1, index=i)
        main = skew_information_I(rho, h, 0.5)
        root = scipy.linalg.sqrtm(rho.mat)
        direct = float((np.trace(rho.mat @ h.mat @ h.mat)
                        - np.trace(root @ h.mat @ root @ h.mat)).real)
        via_powers = skew_information_via_powers(rho, h, 0.5)
        err = max(abs(main - direct), abs(main - via_powers))
        tr.update(-err, _state_payload(rho, observable=matrix_to_pairs(h.mat)))
    return tr.result("skew_half_alpha_agreement", 1e-10)


def prop_local_monotonicity(cfg: CheckConfig):
    seed = _tag_seed(cfg.seed, "local_monotonicity")
    dims = _bipartite_dims(cfg)
    tr = _Tracker()
    for i in range(cfg.n_samples):
        da, db = dims[i % len(dims)]
        rho = random_density(EnsembleSpec("full_rank", (da, db), seed), index=i)
        x = random_hermitian(da, seed + 1, index=i)
        alpha = cfg.alphas[i % len(cfg.alphas)]
        embedded = HermitianOperator(kron(x.mat, np.eye(db)))
        slack = (skew_information_I(rho, embedded, alpha)
                 - skew_information_I(partial_trace(rho, "A"), x, alpha))
        tr.update(slack, _state_payload(rho, alpha=alpha,
                                        observable=matrix_to_pairs(x.mat)))
    return tr.result("skew_local_monotonicity", cfg.bound_tol)


# ---------------------------------------------------------------------------
# correlation properties
# ---------------------------------------------------------------------------

def prop_deficit_nonnegative(cfg: CheckConfig):
    seed = _tag_seed(cfg.seed, "deficit_nonneg")
    dims = _bipartite_dims(cfg)
    tr = _Tracker()
    for i in range(cfg.n_samples):
        da, db = dims[i % len(dims)]
        rho = random_density(EnsembleSpec("full_rank", (da, db), seed), index=i)
        alpha = cfg.alphas[i % len(cfg.alphas)]
        basis = basis_from_unitary(random_unitary(da, seed + 1, index=i))
        total, _ = DeficitEvaluator(rho, alpha).basis_deficit(basis.columns)
        tr.update(total, _state_payload(rho, alpha=alpha,
                                        basis=matrix_to_pairs(basis.columns)))
    return tr.result("correlation_deficit_nonnegative", cfg.bound_tol)


def prop_relabel_invariance(cfg: CheckConfig):
    seed = _tag_seed(cfg.seed, "relabel")
    tr = _Tracker()
    for i in range(cfg.n_samples):
        rho = random_density(EnsembleSpec("full_rank", (2, 2), seed), index=i)
        alpha = cfg.alphas[i % len(cfg.alphas)]
        u = random_unitary(2, seed + 1, index=i)
        ev = DeficitEvaluator(rho, alpha)
        t1, _ = ev.basis_deficit(u)
        t2, _ = ev.basis_deficit(u[:, ::-1])
        tr.update(-abs(t1 - t2), _state_payload(rho, alpha=alpha))
    return tr.result("correlation_relabel_invariance", 1e-12)


def prop_oracle_consistency(cfg: CheckConfig):
    seed = _tag_seed(cfg.seed, "oracle_consistency")
    alphas = (0.3, 0.5, 0.7)
    tr = _Tracker()
    for i in range(cfg.n_optimizer):
        rho = random_density(EnsembleSpec("full_rank", (2, 2), seed), index=i)
        alpha = alphas[i % len(alphas)]
        opt = quantum_correlation_D(rho, alpha, OptimizerConfig(seed=seed + i)).value
        grid = brute_force_D_qubit(rho, alpha)
        # optimizer may only undershoot by the grid resolution and may not
        # overshoot the certified value meaningfully
        slack = min(1e-6 - (opt - grid), (opt - grid) + 1e-4)
        tr.update(slack, _state_payload(rho, alpha=alpha, optimizer=opt, grid=grid))
    return tr.result("correlation_oracle_consistency", 0.0)


def prop_local_unitary_covariance(cfg: CheckConfig):
    seed = _tag_seed(cfg.seed, "lu_covariance")
    tr = _Tracker()
    for i in range(cfg.n_optimizer):
        rho = random_density(EnsembleSpec("full_rank", (2, 2), seed), index=i)
        alpha = cfg.alphas[i % len(cfg.alphas)]
        u = kron(random_unitary(2, seed + 1, index=i), np.eye(2))
        rotated = BipartiteDensityMatrix(u @ rho.mat @ u.conj().T, 2, 2)
        err = abs(brute_force_D_qubit(rho, alpha) - brute_force_D_qubit(rotated, alpha))
        tr.update(-err, _state_payload(rho, alpha=alpha))
    return tr.result("correlation_local_unitary_covariance", 1e-4)


def prop_cq_nullity(cfg: CheckConfig):
    seed = _tag_seed(cfg.seed, "cq_nullity")
    dims = _bipartite_dims(cfg)
    tr = _Tracker()
    states: list[BipartiteDensityMatrix] = [example2_state()]
    for i in range(cfg.n_optimizer):
        da, db = dims[i % len(dims)]
        states.append(random_density(
            EnsembleSpec("classical_quantum", (da, db), seed), index=i))
    for i, rho in enumerate(states):
        alpha = cfg.alphas[i % len(cfg.alphas)]
        value = quantum_correlation_D(rho, alpha, OptimizerConfig(seed=seed + i)).value
        tr.update(-value, _state_payload(rho, alpha=alpha, value=value))
    return tr.result("correlation_classical_quantum_nullity", ORACLE_TOL)


# ---------------------------------------------------------------------------
# bounds properties
# ---------------------------------------------------------------------------

def prop_heisenberg(cfg: CheckConfig):
    seed = _tag_seed(cfg.seed, "heisenberg")
    tr = _Tracker()
    for d in cfg.dims:
        for i in range(cfg.n_samples):
            rho = random_density(EnsembleSpec("full_rank", d, seed + d), index=i)
            r = random_hermitian(d, seed + 10 * d, index=i)
            s = random_hermitian(d, seed + 20 * d, index=i)
            for alpha in cfg.alphas:
                rep = heisenberg_type_check(rho, r, s, alpha,
                                            tolerance=cfg.bound_tol)
                tr.update(rep.slack, _state_payload(rho, alpha=alpha,
                                                    r=matrix_to_pairs(r.mat),
                                                    s=matrix_to_pairs(s.mat)))
    return tr.result("bounds_heisenberg_random", cfg.bound_tol)


def _random_two_qubit_pair(seed: int, i: int):
    rho = random_density(EnsembleSpec("full_rank", (2, 2), seed), index=i)
    phi = basis_from_unitary(random_unitary(2, seed + 1, index=i))
    psi = basis_from_unitary(random_unitary(2, seed + 2, index=i))
    return rho, phi, psi


def prop_theorems_with_oracle(cfg: CheckConfig):
    """Theorem checks and the proof-chain links, sharing one oracle run."""
    seed = _tag_seed(cfg.seed, "theorems")
    thm = _Tracker()
    chain = _Tracker()
    for i in range(cfg.n_theorem):
        rho, phi, psi = _random_two_qubit_pair(seed, i)
        alpha = cfg.alphas[i % len(cfg.alphas)]
        d_val = brute_force_D_qubit(rho, alpha)
        prod = product_bound_check(rho, phi, psi, alpha, d_val, tolerance=ORACLE_TOL)
        summ = sum_bound_check(rho, phi, psi, alpha, d_val, tolerance=ORACLE_TOL)
        payload = _state_payload(rho, alpha=alpha, d_tilde=d_val,
                                 phi=matrix_to_pairs(phi.columns),
                                 psi=matrix_to_pairs(psi.columns))
        thm.update(min(prod.slack, summ.slack), payload)

        # chain links of the product bound's proof
        sum_i_phi = float(sum(prod.terms["per_k_I_phi"]))
        sum_i_psi = float(sum(prod.terms["per_k_I_psi"]))
        mid = sum_i_phi * sum_i_psi
        rho_a = partial_trace(rho, "A")
        eng_a = SkewEngine(rho_a, alpha)
        i_a_phi = [eng_a.i_value(phi.projector(k).mat) for k in range(2)]
        i_a_psi = [eng_a.i_value(psi.projector(k).mat) for k in range(2)]
        mid2 = (d_val + sum(i_a_phi)) * (d_val + sum(i_a_psi))
        mid3 = d_val**2 + sum(a * b for a, b in zip(i_a_phi, i_a_psi))
        tight = min(prod.lhs - mid, mid2 - mid3, mid3 - prod.rhs)
        # the link through the minimum inherits the oracle's certification
        oracle_link = mid - mid2
        violation = max(-tight - cfg.bound_tol, -oracle_link - ORACLE_TOL)
        chain.update(-violation, payload)
    thm_res = thm.result("bounds_theorems_oracle_certified", ORACLE_TOL)
    chain_res = chain.result("bounds_proof_chain_consistency", 0.0)
    return [thm_res, chain_res]


def prop_closed_form_agreement(cfg: CheckConfig):
    tr = _Tracker()
    for example_id, (lo, hi) in ((1, (-1.0, 1.0)), (3, (0.0, 1.0))):
        for p in p_grid(lo, hi, 0.01):
            for alpha in (0.2, 0.5):
                row = sweep_row(example_id, p, alpha, "grid")
                tr.update(-row["abs_err_max"],
                          {"example": example_id, "p": p, "alpha": alpha,
                           "abs_err_max": row["abs_err_max"]})
    return tr.result("bounds_closed_form_agreement", SWEEP_ERR_TOL)


# ---------------------------------------------------------------------------
# states properties
# ---------------------------------------------------------------------------

def default_ensembles(cfg: CheckConfig) -> tuple[EnsembleRun, ...]:
    seed = _tag_seed(cfg.seed, "ensembles")
    n = max(1, cfg.n_samples // 20)
    runs = []
    for d in cfg.dims:
        runs.append(EnsembleRun(EnsembleSpec("full_rank", d, seed), n))
        runs.append(EnsembleRun(EnsembleSpec("pure", d, seed + 1), n))
    runs.append(EnsembleRun(EnsembleSpec("fixed_rank", 4, seed + 2, rank=2), n))
    for dims in _bipartite_dims(cfg):
        runs.append(EnsembleRun(EnsembleSpec("product", dims, seed + 3), n))
        runs.append(EnsembleRun(EnsembleSpec("classical_quantum", dims, seed + 4), n))
        runs.append(EnsembleRun(EnsembleSpec("separable_mixture", dims, seed + 5), n))
    return tuple(runs)


def prop_factory_validity(cfg: CheckConfig):
    runs = cfg.ensembles or default_ensembles(cfg)
    tr = _Tracker()
    for run in runs:
        for i in range(run.n_samples):
            try:
                random_density(run.spec, index=i)
                tr.update(0.0)
            except Exception:
                tr.update(-1.0, {"kind": run.spec.kind, "dims": run.spec.dims,
                                 "seed": run.spec.seed, "index": i})
    for p in (-1.0, -0.5, 0.0, 0.5, 1.0):
        werner_swap(p)
        tr.update(0.0)
    for p in (0.0, 1.0 / 3.0, 1.0):
        werner_isotropic(p)
        tr.update(0.0)
    return tr.result("states_factory_validity", 0.0)


def prop_werner_swap_symmetry(cfg: CheckConfig):
    seed = _tag_seed(cfg.seed, "swap_symmetry")
    rng = np.random.default_rng(seed)
    tr = _Tracker()
    for i in range(max(1, cfg.n_samples // 10)):
        p = float(rng.uniform(-1.0, 1.0))
        rho = werner_swap(p)
        u = random_unitary(2, seed + 1, index=i)
        uu = kron(u, u)
        err = float(np.max(np.abs(uu @ rho.mat @ uu.conj().T - rho.mat)))
        tr.update(-err, {"p": p})
    return tr.result("states_werner_swap_symmetry", 1e-10)


def prop_isotropic_symmetry(cfg: CheckConfig):
    seed = _tag_seed(cfg.seed, "isotropic_symmetry")
    rng = np.random.default_rng(seed)
    tr = _Tracker()
    for i in range(max(1, cfg.n_samples // 10)):
        p = float(rng.uniform(0.0, 1.0))
        rho = werner_isotropic(p)
        u = random_unitary(2, seed + 1, index=i)
        uu = kron(u, u.conj())
        err = float(np.max(np.abs(uu @ rho.mat @ uu.conj().T - rho.mat)))
        tr.update(-err, {"p": p})
    return tr.result("states_isotropic_symmetry", 1e-10)


# ---------------------------------------------------------------------------
# campaign driver
# ---------------------------------------------------------------------------

ALL_PROPERTIES = (
    prop_eig_reconstruction,
    prop_fractional_power_pair,
    prop_partial_trace,
    prop_kron_roundtrip,
    prop_skew_ordering,
    prop_pure_reduction,
    prop_alpha_symmetry,
    prop_half_alpha_agreement,
    prop_local_monotonicity,
    prop_deficit_nonnegative,
    prop_relabel_invariance,
    prop_oracle_consistency,
    prop_local_unitary_covariance,
    prop_cq_nullity,
    prop_heisenberg,
    prop_theorems_with_oracle,
    prop_closed_form_agreement,
    prop_factory_validity,
    prop_werner_swap_symmetry,
    prop_isotropic_symmetry,
)


@dataclass(frozen=True)
class CheckReport:
    results: tuple[PropertyResult, ...]
    all_pass: bool

    def to_dict(self, cfg: CheckConfig) -> dict:
        return {
            "seed": cfg.seed,
            "n_samples": cfg.n_samples,
            "n_optimizer": cfg.n_optimizer,
            "n_theorem": cfg.n_theorem,
            "alphas": list(cfg.alphas),
            "dims": list(cfg.dims),
            "properties": [
                {"name": r.name, "samples": r.samples,
                 "worst_slack": r.worst_slack, "tol": r.tol,
                 "pass": r.passed, "witness": r.witness}
                for r in self.results
            ],
            "all_pass": self.all_pass,
        }


def _write_witness(witness_dir: str, name: str, payload: dict) -> str:
    os.makedirs(witness_dir, exist_ok=True)
    path = os.path.join(witness_dir, f"witness_{name}.json")
    with open(path, "w", encoding="utf-8") as fh:
        json.dump({"property": name, **payload}, fh, indent=2)
        fh.write("\n")
    return path


def run_checks(cfg: CheckConfig, witness_dir: str | None = None,
               properties=None, progress=None) -> CheckReport:
    """Run a property campaign; returns all results in declaration order.

    ``properties`` can be overridden (or extended) with callables taking the
    config and returning one PropertyResult-payload pair or a list of them.
    """
    cfg.validate()
    if properties is None:
        properties = ALL_PROPERTIES
    results: list[PropertyResult] = []
    for prop in properties:
        outcome = prop(cfg)
        pairs = outcome if isinstance(outcome, list) else [outcome]
        for res, payload in pairs:
            if not res.passed and payload is not None and witness_dir:
                path = _write_witness(witness_dir, res.name, payload)
                res = replace(res, witness=path)
            results.append(res)
            if progress is not None:
                progress(res)
    return CheckReport(results=tuple(results),
                       all_pass=all(r.passed for r in results))
