"""Cyclic Jacobi sweeps, parallel-step execution, and bound verification.

``run_cycles`` applies full sweeps of a pivot ordering to one matrix and
returns a step-by-step report.  ``batch_sweep`` runs the same arithmetic
vectorized across a batch of matrices and is what the seeded verification
campaigns use.  ``check_bound`` evaluates the contraction ratio
S(A^[t+tau]) / S(A^[t]) promised by a classification record, and
``verification_campaign`` sweeps that check across orderings and random
matrices.

A single run is inherently sequential; distinct runs and campaign cells are
independent and may execute concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .core import SymMatrix, _apply_rotation, _rotation_params
from .orderings import TRANSPOSE, PivotOrdering, relate
from .classification import (
    Bound,
    ClassificationRecord,
    PAR_ANCHOR,
    PAR_ANCHOR_MIRROR,
    Parallel,
    classify,
    label_text,
)

__all__ = [
    "StepRecord",
    "SweepReport",
    "BoundCheck",
    "BatchSweep",
    "CampaignCell",
    "CampaignReport",
    "NotParallelOrderingError",
    "FP_SLACK",
    "UNIVERSAL_BOUND",
    "RNG_ALGORITHM",
    "run_cycles",
    "run_parallel_cycle",
    "check_bound",
    "batch_sweep",
    "verification_campaign",
    "default_rng",
    "random_symmetric",
    "random_symmetric_batch",
    "random_spd_factor",
    "verify_step_identities",
    "verify_cycle_monotonicity",
]

FP_SLACK = 1e-12          # absolute slack on bound ratios
OFF_NORM_FLOOR = 1e-300   # stop sweeping below this off-norm (denormal churn)
RNG_ALGORITHM = "numpy-PCG64"

UNIVERSAL_BOUND = Bound(1.0 - 1e-5, 3, 1)


class NotParallelOrderingError(ValueError):
    """The ordering is not a transposition-variant of a parallel anchor."""


@dataclass(frozen=True)
class StepRecord:
    """One annihilation step, or one group of commuting steps.

    ``s_before``/``s_after`` bracket the whole group, so
    s_before^2 - s_after^2 equals the sum of the squared pivot values up to
    roundoff.
    """

    pivots: tuple[tuple[int, int], ...]
    values: tuple[float, ...]
    angles: tuple[float, ...]
    s_before: float
    s_after: float


@dataclass
class SweepReport:
    ordering: PivotOrdering
    cycles_requested: int
    cycles_executed: int
    steps: list[StepRecord]
    cycle_off_norms: list[float]  # S at every cycle boundary, starting at t=0
    final: SymMatrix


def verify_step_identities(report: SweepReport, rtol: float = 1e-13) -> float:
    """Largest relative violation of S^2 drop == sum of squared pivots."""
    worst = 0.0
    for rec in report.steps:
        expected = rec.s_before**2 - sum(v * v for v in rec.values)
        scale = max(rec.s_before**2, OFF_NORM_FLOOR)
        worst = max(worst, abs(rec.s_after**2 - expected) / scale)
    if worst > rtol:
        raise AssertionError(f"step decrement identity violated: {worst:.3e} > {rtol:.0e}")
    return worst


def verify_cycle_monotonicity(report: SweepReport, rtol: float = 1e-14) -> None:
    norms = report.cycle_off_norms
    for t in range(len(norms) - 1):
        if norms[t + 1] > norms[t] * (1.0 + rtol):
            raise AssertionError(
                f"off-norm grew across cycle {t}: {norms[t]:.17g} -> {norms[t + 1]:.17g}"
            )


def _off_norm_dense(a: np.ndarray) -> float:
    n = a.shape[0]
    iu = np.triu_indices(n, k=1)
    return float(np.sqrt(np.sum(a[iu] ** 2)))


def run_cycles(a: SymMatrix, ordering: PivotOrdering, cycles: int) -> tuple[SymMatrix, SweepReport]:
    """Apply ``cycles`` full sweeps of ``ordering`` to ``a``.

    Stops early (reporting the executed count) once the off-norm falls below
    ``OFF_NORM_FLOOR``.
    """
    if a.n != ordering.n:
        raise ValueError(f"matrix dimension {a.n} does not match ordering n={ordering.n}")
    if cycles < 0:
        raise ValueError("cycle count must be nonnegative")
    dense = a.to_dense()
    s = _off_norm_dense(dense)
    steps: list[StepRecord] = []
    cycle_norms = [s]
    executed = 0
    for _ in range(cycles):
        if s < OFF_NORM_FLOOR:
            break
        for (i, j) in ordering.pairs:
            i0, j0 = i - 1, j - 1
            piv = dense[i0, j0]
            c, sn, phi = _rotation_params(dense[i0, i0], dense[j0, j0], piv)
            if sn != 0.0:
                _apply_rotation(dense, i0, j0, c, sn)
                dense[i0, j0] = 0.0
                dense[j0, i0] = 0.0
            s_new = _off_norm_dense(dense)
            steps.append(StepRecord(((i, j),), (piv,), (phi,), s, s_new))
            s = s_new
        executed += 1
        cycle_norms.append(s)
    final = SymMatrix.from_dense(dense)
    return final, SweepReport(ordering, cycles, executed, steps, cycle_norms, final)


def _commuting_groups(ordering: PivotOrdering) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    pairs = ordering.pairs
    groups = []
    for k in range(0, len(pairs), 2):
        a, b = pairs[k], pairs[k + 1]
        if set(a) & set(b):
            raise NotParallelOrderingError(f"pairs {a} and {b} do not commute")
        groups.append((a, b))
    return groups


def run_parallel_cycle(a: SymMatrix, ordering: PivotOrdering) -> tuple[SymMatrix, SweepReport]:
    """One sweep executed as three simultaneous-rotation steps.

    The ordering must be a transposition-variant of one of the two parallel
    anchors.  Both rotations of a group are computed from the same iterate
    and applied jointly as one orthogonal transformation.
    """
    if a.n != ordering.n or ordering.n != 4:
        raise ValueError("parallel execution is defined for n=4")
    if (
        relate(ordering, PAR_ANCHOR, {TRANSPOSE}) is None
        and relate(ordering, PAR_ANCHOR_MIRROR, {TRANSPOSE}) is None
    ):
        raise NotParallelOrderingError(f"not a parallel ordering: {ordering}")
    dense = a.to_dense()
    s = _off_norm_dense(dense)
    steps: list[StepRecord] = []
    cycle_norms = [s]
    for group in _commuting_groups(ordering):
        q = np.eye(4)
        pivots, values, angles = [], [], []
        for (i, j) in group:
            i0, j0 = i - 1, j - 1
            piv = dense[i0, j0]
            c, sn, phi = _rotation_params(dense[i0, i0], dense[j0, j0], piv)
            rot = np.eye(4)
            rot[i0, i0] = rot[j0, j0] = c
            rot[i0, j0] = -sn
            rot[j0, i0] = sn
            q = q @ rot
            pivots.append((i, j))
            values.append(piv)
            angles.append(phi)
        dense = q.T @ dense @ q
        dense = (dense + dense.T) / 2.0
        s_new = _off_norm_dense(dense)
        steps.append(StepRecord(tuple(pivots), tuple(values), tuple(angles), s, s_new))
        s = s_new
    cycle_norms.append(s)
    final = SymMatrix.from_dense(dense)
    return final, SweepReport(ordering, 1, 1, steps, cycle_norms, final)


# --- batch kernel -------------------------------------------------------------

@dataclass
class BatchSweep:
    """Vectorized sweep result for a batch of matrices.

    ``off_norms`` has shape (cycles + 1, m): S at every cycle boundary for
    every matrix.  ``identity_violation`` is the largest relative deviation
    of the per-step S^2 decrement from the squared pivot values;
    ``monotonicity_excess`` the largest relative cycle-to-cycle growth of S
    (nonpositive when S never grows).
    """

    off_norms: np.ndarray
    identity_violation: float
    monotonicity_excess: float
    finals: np.ndarray


def batch_sweep(mats: np.ndarray, ordering: PivotOrdering, cycles: int) -> BatchSweep:
    """Run ``cycles`` sweeps of ``ordering`` on a stack of symmetric matrices."""
    a = np.array(mats, dtype=float)
    if a.ndim != 3 or a.shape[1] != a.shape[2]:
        raise ValueError(f"expected a (m, n, n) stack, got shape {a.shape}")
    n = a.shape[1]
    if n != ordering.n:
        raise ValueError(f"matrix dimension {n} does not match ordering n={ordering.n}")
    iu = np.triu_indices(n, k=1)
    m = a.shape[0]
    off = np.empty((cycles + 1, m))
    s2 = np.sum(a[:, iu[0], iu[1]] ** 2, axis=1)
    off[0] = np.sqrt(s2)
    identity_violation = 0.0
    monotonicity_excess = -np.inf
    for t in range(cycles):
        for (i, j) in ordering.pairs:
            i0, j0 = i - 1, j - 1
            aij = a[:, i0, j0].copy()
            diff = a[:, i0, i0] - a[:, j0, j0]
            zero = aij == 0.0
            tie = (diff == 0.0) & ~zero
            with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
                tau = diff / (2.0 * aij)
                tt = np.sign(tau) / (np.abs(tau) + np.hypot(1.0, tau))
            tt = np.where(tie, np.sign(aij), tt)
            tt = np.where(zero, 0.0, tt)
            h = np.hypot(1.0, tt)
            c = (1.0 / h)[:, None]
            sn = (tt / h)[:, None]
            ri = a[:, i0, :].copy()
            rj = a[:, j0, :].copy()
            a[:, i0, :] = c * ri + sn * rj
            a[:, j0, :] = c * rj - sn * ri
            ci = a[:, :, i0].copy()
            cj = a[:, :, j0].copy()
            a[:, :, i0] = c * ci + sn * cj
            a[:, :, j0] = c * cj - sn * ci
            a[:, i0, j0] = 0.0
            a[:, j0, i0] = 0.0
            s2_new = np.sum(a[:, iu[0], iu[1]] ** 2, axis=1)
            dev = np.abs(s2_new - (s2 - aij**2)) / np.maximum(s2, OFF_NORM_FLOOR)
            identity_violation = max(identity_violation, float(dev.max()))
            s2 = s2_new
        off[t + 1] = np.sqrt(s2)
        growth = (off[t + 1] - off[t]) / np.maximum(off[t], OFF_NORM_FLOOR)
        monotonicity_excess = max(monotonicity_excess, float(growth.max()))
    return BatchSweep(off, identity_violation, monotonicity_excess, a)


# --- bound checks -------------------------------------------------------------

@dataclass(frozen=True)
class BoundCheck:
    """Worst observed ratio S(A^[t+tau]) / S(A^[t]) against a bound.

    ``passed`` means worst_ratio <= gamma + FP_SLACK; windows with
    S(A^[t]) = 0 are vacuous and score a ratio of 0.  ``worst_ratio_sq`` is
    the same statistic for S^2, recorded alongside the primary S-form.
    """

    gamma: float
    tau: int
    t0: int
    observed_worst_ratio: float
    worst_ratio_sq: float
    passed: bool
    margin: float


def _ratios_from_norms(norms: Sequence[float], bound: Bound) -> tuple[float, float]:
    worst = 0.0
    worst_sq = 0.0
    last_start = len(norms) - 1 - bound.tau
    for t in range(bound.t0, last_start + 1):
        if norms[t] <= 0.0:
            continue  # vacuous window
        ratio = norms[t + bound.tau] / norms[t]
        worst = max(worst, ratio)
        worst_sq = max(worst_sq, ratio * ratio)
    return worst, worst_sq


def check_bound(a: SymMatrix, record: ClassificationRecord, cycles: int) -> BoundCheck:
    """Run the record's ordering on ``a`` and test its contraction bound."""
    bound = record.bound
    if isinstance(record.label, Parallel) and a.n != 4:
        raise ValueError("parallel bounds are defined for n=4 only")
    if cycles < bound.t0 + bound.tau:
        raise ValueError(f"need at least {bound.t0 + bound.tau} cycles for this bound")
    _, report = run_cycles(a, record.ordering, cycles)
    worst, worst_sq = _ratios_from_norms(report.cycle_off_norms, bound)
    passed = worst <= bound.gamma + FP_SLACK
    return BoundCheck(
        bound.gamma, bound.tau, bound.t0, worst, worst_sq, passed, bound.gamma + FP_SLACK - worst
    )


# --- seeded generators ----------------------------------------------------------

def default_rng(seed: int) -> np.random.Generator:
    """The campaign RNG; its algorithm is recorded in reports."""
    return np.random.default_rng(seed)


def random_symmetric_batch(
    rng: np.random.Generator,
    count: int,
    n: int = 4,
    zero_pairs: Iterable[tuple[int, int]] = (),
) -> np.ndarray:
    """I.i.d. uniform [-1, 1] entries, symmetrized; optional pinned zeros."""
    raw = rng.uniform(-1.0, 1.0, size=(count, n, n))
    out = (raw + raw.transpose(0, 2, 1)) / 2.0
    for (r, s) in zero_pairs:
        out[:, r - 1, s - 1] = 0.0
        out[:, s - 1, r - 1] = 0.0
    return out


def random_symmetric(rng: np.random.Generator, n: int = 4) -> SymMatrix:
    return SymMatrix.from_dense(random_symmetric_batch(rng, 1, n)[0])


def random_spd_factor(
    rng: np.random.Generator, n: int = 4, max_cond: float = 100.0
) -> np.ndarray:
    """Random nonsingular factor L with cond(L) <= max_cond (redrawn until so).

    The conditioning cap keeps A = L^T L comfortably definite, so hyperbolic
    angles at convergence sit far below the reporting thresholds.
    """
    while True:
        cand = rng.uniform(-1.0, 1.0, size=(n, n))
        if np.linalg.cond(cand) <= max_cond:
            return cand


# --- campaigns ---------------------------------------------------------------

@dataclass(frozen=True)
class CampaignCell:
    ordering: PivotOrdering
    label: str
    mode: str  # "classified" or "universal"
    gamma: float
    tau: int
    t0: int
    worst_ratio: float
    worst_ratio_sq: float
    violations: int
    vacuous_windows: int


@dataclass
class CampaignReport:
    seed: int
    samples: int
    rng_algorithm: str
    cells: list[CampaignCell]
    identity_violation: float
    monotonicity_excess: float
    falsifications: list[str] = field(default_factory=list)

    @property
    def total_violations(self) -> int:
        return sum(c.violations for c in self.cells)


def _cell_from_offs(
    ordering: PivotOrdering,
    label: str,
    mode: str,
    bound: Bound,
    offs: np.ndarray,
) -> CampaignCell:
    worst = 0.0
    worst_sq = 0.0
    violations = 0
    vacuous = 0
    last_start = offs.shape[0] - 1 - bound.tau
    for t in range(bound.t0, last_start + 1):
        start = offs[t]
        live = start > 0.0
        vacuous += int(np.sum(~live))
        if not np.any(live):
            continue
        ratios = offs[t + bound.tau][live] / start[live]
        worst = max(worst, float(ratios.max()))
        worst_sq = max(worst_sq, float((ratios**2).max()))
        violations += int(np.sum(ratios > bound.gamma + FP_SLACK))
    return CampaignCell(
        ordering, label, mode, bound.gamma, bound.tau, bound.t0,
        worst, worst_sq, violations, vacuous,
    )


def campaign_cells_for_ordering(
    ordering: PivotOrdering, mats: np.ndarray, modes: tuple[str, ...]
) -> tuple[list[CampaignCell], float, float]:
    """Evaluate the selected bound modes for one ordering over a matrix batch."""
    record = classify(ordering)
    label = label_text(record.label)
    bounds = []
    if "classified" in modes:
        bounds.append(("classified", record.bound))
    if "universal" in modes:
        bounds.append(("universal", UNIVERSAL_BOUND))
    cycles = max(b.t0 + b.tau + 4 for _, b in bounds)
    sweep = batch_sweep(mats, ordering, cycles)
    cells = [
        _cell_from_offs(ordering, label, mode, bound, sweep.off_norms)
        for mode, bound in bounds
    ]
    return cells, sweep.identity_violation, sweep.monotonicity_excess


def verification_campaign(
    seed: int,
    samples: int,
    orderings: Sequence[PivotOrdering],
    modes: tuple[str, ...] = ("classified", "universal"),
    zero_pairs: Iterable[tuple[int, int]] = (),
) -> CampaignReport:
    """Check contraction bounds for every ordering over a seeded matrix batch.

    Any ratio beyond gamma + FP_SLACK is counted as a violation and flagged
    as a falsification event in the report.
    """
    if samples < 1:
        raise ValueError("need at least one sample matrix")
    rng = default_rng(seed)
    mats = random_symmetric_batch(rng, samples, n=4, zero_pairs=zero_pairs)
    cells: list[CampaignCell] = []
    identity_violation = 0.0
    monotonicity_excess = -np.inf
    for ordering in orderings:
        new_cells, ident, mono = campaign_cells_for_ordering(ordering, mats, modes)
        cells.extend(new_cells)
        identity_violation = max(identity_violation, ident)
        monotonicity_excess = max(monotonicity_excess, mono)
    report = CampaignReport(
        seed, samples, f"{RNG_ALGORITHM}({seed})", cells,
        identity_violation, monotonicity_excess,
    )
    for cell in cells:
        if cell.violations:
            report.falsifications.append(
                f"{cell.mode} bound violated {cell.violations}x for {cell.ordering}"
                f" (worst ratio {cell.worst_ratio:.17g} > {cell.gamma + FP_SLACK:.17g})"
            )
    return report
