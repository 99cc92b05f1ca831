"""Numeric cross-checks of structural verdicts on random weight realizations.

The structural results hold for almost every choice of nonzero weights, so
a random realization of the pattern should reproduce them: full observability
rank for an observable observer set, matrix rank equal to the structural rank.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import DivergedEstimate, NotNumericallyObservable, NumericOverflow, ZeroStructure
from .graph import DiGraph, adjacency_pattern
from .observability import augmented_matching_size, check_observable, reaching_nodes
from .structure import scc_decompose

WEIGHT_LOW = 0.1
WEIGHT_HIGH = 1.0
UNSTABLE_RADIUS = 1.1
DIVERGENCE_GUARD = 1e100
# largest log-magnitude a block may reach before the unscaled matrix overflows
_LOG_REPRESENTABLE = 700.0


@dataclass(frozen=True, eq=False)
class WeightedRealization:
    a_matrix: np.ndarray
    c_matrix: np.ndarray
    observers: tuple[int, ...]
    seed: int
    spectral_radius: float

    @property
    def n(self) -> int:
        return self.a_matrix.shape[0]


class RankResult(NamedTuple):
    rank: int
    condition_number: float


@dataclass
class EstimationTrace:
    msee: list[float]
    trials: int
    steps: int
    noise_std_process: float
    noise_std_measurement: float
    step_size: float = 1.0
    window: int = 0


def _has_cycle(g: DiGraph) -> bool:
    if any(a == b for a, b in g.edges):
        return True
    return any(len(c) > 1 for c in scc_decompose(g).components)


def output_matrix(n: int, observers: Iterable[int]) -> np.ndarray:
    obs = sorted(set(observers))
    c = np.zeros((len(obs), n))
    c[np.arange(len(obs)), obs] = 1.0
    return c


def realize_weights(g: DiGraph, observers: Iterable[int], seed: int,
                    scale_unstable: bool = True) -> WeightedRealization:
    """Draw a random ``A`` on the adjacency pattern of ``g`` and the matching ``C``.

    Each nonzero is ``±U(0.1, 1)`` with an independent sign. With
    ``scale_unstable`` the matrix is rescaled to spectral radius 1.1 when its
    radius is at most 1; an acyclic pattern is nilpotent and is left alone.
    """
    obs = tuple(sorted(set(observers)))
    for o in obs:
        if not 0 <= o < g.n:
            raise ValueError(f"observer index {o} out of range for n={g.n}")
    rng = np.random.default_rng(seed)
    a = np.zeros((g.n, g.n))
    edges = g.sorted_edges()
    if not edges:
        warnings.warn("graph has no edges; realization is the zero matrix", ZeroStructure,
                      stacklevel=2)
    else:
        mags = rng.uniform(WEIGHT_LOW, WEIGHT_HIGH, size=len(edges))
        signs = rng.choice([-1.0, 1.0], size=len(edges))
        src = np.fromiter((e[0] for e in edges), dtype=int, count=len(edges))
        dst = np.fromiter((e[1] for e in edges), dtype=int, count=len(edges))
        a[dst, src] = mags * signs
    if edges and _has_cycle(g):
        rho = float(np.max(np.abs(np.linalg.eigvals(a))))
    else:
        rho = 0.0
    if scale_unstable and edges:
        if rho == 0.0:
            warnings.warn("pattern is acyclic (nilpotent A); cannot rescale to rho > 1",
                          ZeroStructure, stacklevel=2)
        elif rho <= 1.0:
            a *= UNSTABLE_RADIUS / rho
            rho = float(np.max(np.abs(np.linalg.eigvals(a))))
    return WeightedRealization(a, output_matrix(g.n, obs), obs, seed, rho)


def _balanced_blocks(c: np.ndarray, a: np.ndarray, count: int):
    """Blocks ``C A^k`` for ``k < count``, each scaled to unit Frobenius norm.

    Returns the scaled blocks and the natural log of each scale factor
    (``-inf`` for a block that vanished).
    """
    blocks, logs = [], []
    cur = c.copy()
    log_scale = 0.0
    for _ in range(count):
        if not np.all(np.isfinite(cur)):
            raise NumericOverflow("non-finite entries in observability blocks")
        norm = np.linalg.norm(cur)
        if norm == 0.0:
            blocks.append(cur)
            logs.append(-math.inf)
            cur = cur @ a
            continue
        cur = cur / norm
        log_scale += math.log(norm)
        blocks.append(cur)
        logs.append(log_scale)
        cur = cur @ a
    return blocks, logs


def observability_matrix(r: WeightedRealization) -> np.ndarray:
    """Unscaled ``[C; CA; ...; CA^(n-1)]``; raises ``NumericOverflow`` if not representable."""
    blocks, logs = _balanced_blocks(r.c_matrix, r.a_matrix, r.n)
    if max(logs, default=0.0) > _LOG_REPRESENTABLE:
        raise NumericOverflow("observability matrix exceeds double precision range")
    return np.vstack([b * (math.exp(s) if s > -math.inf else 0.0) for b, s in zip(blocks, logs)]
                     or [np.zeros((0, r.n))])


def observability_rank(r: WeightedRealization, tolerance: float = 1e-8) -> RankResult:
    """Numeric rank of the observability matrix and its Gramian condition number.

    Rank counts singular values at least ``tolerance * sigma_max`` of the
    stacked matrix with every ``C A^k`` block normalised, which keeps powers of
    an unstable ``A`` finite. The condition number is ``sqrt(l_max / l_min)``
    of ``O^T O`` for the unscaled matrix, ``inf`` when rank deficient or when
    the unscaled matrix is not representable.
    """
    if tolerance <= 0:
        raise ValueError("tolerance must be positive")
    n = r.n
    if r.c_matrix.shape[0] == 0 or n == 0:
        return RankResult(0, math.inf)
    blocks, logs = _balanced_blocks(r.c_matrix, r.a_matrix, n)
    sv = np.linalg.svd(np.vstack(blocks), compute_uv=False)
    rank = int(np.sum(sv >= tolerance * sv[0])) if sv[0] > 0 else 0
    if rank < n or max(logs) > _LOG_REPRESENTABLE:
        return RankResult(rank, math.inf)
    full = np.vstack([b * (math.exp(s) if s > -math.inf else 0.0) for b, s in zip(blocks, logs)])
    # eigenvalues of the Gramian O^T O are the squared singular values of O
    sv_full = np.linalg.svd(full, compute_uv=False)
    if sv_full[-1] == 0.0:
        return RankResult(rank, math.inf)
    return RankResult(rank, float(sv_full[0] / sv_full[-1]))


def discretize(a: np.ndarray, max_step_norm: float = 0.5) -> tuple[np.ndarray, float]:
    """Forward-Euler surrogate ``I + h A`` with ``||h A||_2 = max_step_norm`` (h <= 1)."""
    norm = np.linalg.norm(a, 2) if a.size else 0.0
    h = 1.0 if norm == 0 else min(1.0, max_step_norm / norm)
    return np.eye(a.shape[0]) + h * a, h


def _window_map(c: np.ndarray, ad: np.ndarray, window: int) -> np.ndarray:
    blocks = []
    cur = c.copy()
    for _ in range(window):
        blocks.append(cur)
        cur = cur @ ad
    return np.vstack(blocks)


def simulate_estimation(r: WeightedRealization, trials: int = 100, steps: int = 100,
                        x0_range: float = 5.0, process_std: float = 0.05,
                        meas_std: float = 0.05, seed: int = 0, window: int | None = None,
                        reanchor: bool = True, tolerance: float = 1e-8) -> EstimationTrace:
    """Monte-Carlo run of an open-loop least-squares state estimator.

    The dynamics are the discrete surrogate ``x[k+1] = Ad x[k] + v[k]`` with
    ``Ad = I + h A`` and measurements ``y[k] = C x[k] + r[k]``. The estimator
    inverts the stacked map ``[C; C Ad; ...]`` over a window of ``window``
    measurements (default ``n``) to recover the state at the start of the
    window and propagates it with ``Ad``. The first window gives ``x(0)``;
    with ``reanchor`` every later step re-solves on the most recent window,
    otherwise the initial estimate is propagated for the whole run.

    ``msee[k]`` is the squared error at step ``k`` averaged over states and
    trials. Trial ``t`` draws from its own child seed of ``seed``.

    Raises
    ------
    NotNumericallyObservable
        The realization's observability rank is below ``n``.
    DivergedEstimate
        An error exceeded ``DIVERGENCE_GUARD`` or became non-finite.
    """
    if trials < 1 or steps < 1:
        raise ValueError("trials and steps must be at least 1")
    n = r.n
    rank = observability_rank(r, tolerance).rank
    if rank < n:
        raise NotNumericallyObservable(f"observability rank {rank} < {n}")
    window = n if window is None else window
    if window < 1:
        raise ValueError("window must be at least 1")
    ad, h = discretize(r.a_matrix)
    c = r.c_matrix
    p = c.shape[0]
    solver = np.linalg.pinv(_window_map(c, ad, window))
    horizon = max(steps, window)
    # Ad^j for propagating a window-start estimate to the window end
    powers = [np.eye(n)]
    for _ in range(max(window, steps)):
        powers.append(powers[-1] @ ad)

    sq_err = np.zeros(steps)
    children = np.random.SeedSequence(seed).spawn(trials)
    for child in children:
        rng = np.random.default_rng(child)
        x = np.empty((horizon, n))
        x[0] = rng.uniform(-x0_range, x0_range, size=n)
        v = rng.normal(0.0, process_std, size=(horizon, n)) if process_std > 0 else np.zeros((horizon, n))
        for k in range(horizon - 1):
            x[k + 1] = ad @ x[k] + v[k]
        y = x @ c.T
        if meas_std > 0:
            y = y + rng.normal(0.0, meas_std, size=(horizon, p))
        est = np.empty((steps, n))
        x0_hat = solver @ y[:window].reshape(-1)
        for k in range(steps):
            start = k - window + 1
            if reanchor and start > 0:
                xs = solver @ y[start:k + 1].reshape(-1)
                est[k] = powers[window - 1] @ xs
            else:
                est[k] = powers[k] @ x0_hat
        err = est - x[:steps]
        if not np.all(np.isfinite(err)) or np.max(np.abs(err)) > DIVERGENCE_GUARD:
            raise DivergedEstimate("estimation error left the finite range")
        sq_err += np.mean(err * err, axis=1)
    msee = sq_err / trials
    return EstimationTrace(
        msee=[float(e) for e in msee], trials=trials, steps=steps,
        noise_std_process=process_std, noise_std_measurement=meas_std,
        step_size=h, window=window,
    )


@dataclass
class SeedCheck:
    seed: int
    rank: int
    numeric_observable: bool
    agrees: bool


@dataclass
class CrossValidationReport:
    n: int
    observers: tuple[int, ...]
    structural_observable: bool
    checks: list[SeedCheck] = field(default_factory=list)

    @property
    def agreements(self) -> int:
        return sum(c.agrees for c in self.checks)

    @property
    def disagreements(self) -> list[int]:
        return [c.seed for c in self.checks if not c.agrees]


def cross_validate(g: DiGraph, observers: Iterable[int], seeds: Sequence[int],
                   tolerance: float = 1e-8) -> CrossValidationReport:
    """Compare the structural verdict with full numeric rank, seed by seed.

    Disagreements are reported, never raised; they point at a tolerance
    problem or a non-generic draw.
    """
    if not seeds:
        raise ValueError("need at least one seed")
    obs = tuple(sorted(set(observers)))
    structural = check_observable(g, obs).observable
    report = CrossValidationReport(g.n, obs, structural)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ZeroStructure)
        for s in seeds:
            r = realize_weights(g, obs, s, scale_unstable=True)
            rank = observability_rank(r, tolerance).rank
            numeric = rank == g.n
            report.checks.append(SeedCheck(s, rank, numeric, numeric == structural))
    return report


def numeric_rank(matrix: np.ndarray, tolerance: float = 1e-8) -> int:
    """Rank with singular values thresholded relative to the largest."""
    if matrix.size == 0:
        return 0
    sv = np.linalg.svd(matrix, compute_uv=False)
    return int(np.sum(sv >= tolerance * sv[0])) if sv[0] > 0 else 0


def structural_rank_bound(g: DiGraph, observers: Iterable[int]) -> int:
    """Generic rank of the observability matrix for the pattern of ``g``.

    Nodes with no path to an observer give zero columns. Among the rest the
    generic rank is the number of nodes coverable by disjoint cycles and
    observer-terminated paths, i.e. the augmented matching size on the
    subgraph of output-reachable nodes.
    """
    reach = sorted(reaching_nodes(g, observers))
    pos = {v: i for i, v in enumerate(reach)}
    sub = DiGraph.from_indices(
        [g.label(v) for v in reach],
        [(pos[a], pos[b]) for a, b in g.edges if a in pos and b in pos],
    )
    return augmented_matching_size(sub, [pos[o] for o in observers])


def pattern_rank(g: DiGraph, seed: int) -> int:
    """Numeric rank of one random realization of the adjacency pattern."""
    rng = np.random.default_rng(seed)
    pattern = adjacency_pattern(g)
    vals = rng.uniform(WEIGHT_LOW, WEIGHT_HIGH, size=pattern.shape) * rng.choice([-1.0, 1.0], size=pattern.shape)
    return numeric_rank(np.where(pattern, vals, 0.0))
