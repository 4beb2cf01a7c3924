"""Average-case experiments on uniformly random instances.

Every instance is drawn from a SplitMix64 stream seeded with ``base_seed + i``;
per item the stream is consumed in a fixed order: d size components in
{1..B}, then the arrival in [0, T - mu], then the duration in [1, mu]. Sizes
are stored as size/B against unit capacity. Each run is scored against the
height lower bound, so reported ratios over-estimate the true ratio to OPT.
"""
import concurrent.futures
import logging
import time
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import partial
from pathlib import Path
from typing import Optional, Sequence
import humanize
import numpy as np
import psutil
import settings
from core.bounds import lb_height
from core.engine import cost_of, simulate
from core.errors import ParseError, UsageError
from core.model import Instance, Item, parse_scalar, render_scalar
from core.policies import PolicyKind
from core.prng import MASK64, SplitMix64
from core.utils.formats import PathLike, read_text, write_text

RESULTS_CSV_HEADER = "seed,policy,cost,lb_height,ratio"
PLOTDATA_CSV_HEADER = "d,mu,policy,mean,stddev"


@dataclass(frozen=True)
class ExperimentConfig:
    d: int = 2
    n: int = 1000
    mu: int = 10
    T: int = 1000
    B: int = 100
    m: int = 100
    base_seed: int = settings.DEFAULT_SEED
    policies: tuple[PolicyKind, ...] = tuple(PolicyKind)
    workers: Optional[int] = 1

    def __post_init__(self):
        object.__setattr__(self, 'policies', tuple(PolicyKind(p) for p in self.policies))

    def problems(self) -> list[str]:
        problems = []
        for name in ('d', 'n', 'mu', 'T', 'B', 'm'):
            if getattr(self, name) < 1:
                problems.append(f"{name} must be at least 1, got {getattr(self, name)}")
        if self.mu > self.T:
            problems.append(f"mu ({self.mu}) must not exceed T ({self.T})")
        if not self.policies:
            problems.append("at least one policy is required")
        return problems

    def validate(self):
        problems = self.problems()
        if problems:
            raise UsageError("Invalid experiment configuration: " + "; ".join(problems))


@dataclass(frozen=True)
class ExperimentGrid:
    template: ExperimentConfig
    dimensions: tuple[int, ...]
    mus: tuple[int, ...]

    def configs(self) -> list[ExperimentConfig]:
        return [replace(self.template, d=d, mu=mu) for d in self.dimensions for mu in self.mus]


@dataclass(frozen=True)
class RunResult:
    seed: int
    policy: PolicyKind
    cost: Fraction
    lb_height: Fraction
    ratio: Fraction


@dataclass(frozen=True)
class PolicySummary:
    policy: PolicyKind
    count: int
    mean: float
    stddev: float
    minimum: float
    maximum: float


@dataclass
class BatchResult:
    config: ExperimentConfig
    results: list[RunResult]
    summary: list[PolicySummary] = field(default_factory=list)

    def summary_for(self, policy: PolicyKind) -> PolicySummary:
        policy = PolicyKind(policy)
        return next(s for s in self.summary if s.policy == policy)


def gen_random_instance(cfg: ExperimentConfig, seed: int) -> Instance:
    cfg.validate()
    rng = SplitMix64(seed)
    items = []
    for item_id in range(1, cfg.n + 1):
        size = tuple(Fraction(rng.randint(1, cfg.B), cfg.B) for _ in range(cfg.d))
        arrival = rng.randint(0, cfg.T - cfg.mu)
        duration = rng.randint(1, cfg.mu)
        items.append(Item(item_id, Fraction(arrival), Fraction(arrival + duration), size))
    return Instance(cfg.d, tuple(items), metadata={'seed': seed})


def instance_seed(cfg: ExperimentConfig, index: int) -> int:
    return (cfg.base_seed + index) & MASK64


def _run_instance(cfg: ExperimentConfig, index: int) -> list[RunResult]:
    seed = instance_seed(cfg, index)
    instance = gen_random_instance(cfg, seed)
    height = lb_height(instance)
    results = []
    for policy in cfg.policies:
        cost = cost_of(simulate(instance, policy, seed))
        results.append(RunResult(seed, policy, cost, height, cost / height))
    return results


def _worker_count(cfg: ExperimentConfig) -> int:
    if cfg.workers:
        return cfg.workers
    return psutil.cpu_count(logical=False) or 1


def run_batch(cfg: ExperimentConfig) -> BatchResult:
    cfg.validate()
    workers = min(_worker_count(cfg), cfg.m)
    logging.info(f"Running {cfg.m} instances (d={cfg.d}, mu={cfg.mu}, n={cfg.n}) on {workers} worker(s)")
    started = time.monotonic()
    run = partial(_run_instance, cfg)
    if workers == 1:
        batches = [run(index) for index in range(cfg.m)]
    else:
        with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as executor:
            # map yields in submission order, so output is independent of scheduling
            batches = list(executor.map(run, range(cfg.m), chunksize=max(1, cfg.m // (4 * workers))))
    results = [result for batch in batches for result in batch]
    batch = BatchResult(cfg, results, summarize(results, cfg.policies))
    logging.info(f"Finished d={cfg.d}, mu={cfg.mu} in {humanize.naturaldelta(time.monotonic() - started)}")
    return batch


def summarize(results: Sequence[RunResult], policies: Sequence[PolicyKind]) -> list[PolicySummary]:
    """Mean of per-instance ratios (not ratio of means) with population standard deviation."""
    summary = []
    for policy in policies:
        ratios = np.array([float(r.ratio) for r in results if r.policy == policy], dtype=float)
        if not ratios.size:
            continue
        summary.append(PolicySummary(
            policy=policy,
            count=int(ratios.size),
            mean=float(ratios.mean()),
            stddev=float(ratios.std()),
            minimum=float(ratios.min()),
            maximum=float(ratios.max())
        ))
    return summary


def render_results(results: Sequence[RunResult]) -> str:
    lines = [RESULTS_CSV_HEADER]
    for r in results:
        lines.append(f"{r.seed},{r.policy},{render_scalar(r.cost)},{render_scalar(r.lb_height)},{render_scalar(r.ratio)}")
    return "\n".join(lines) + "\n"


def emit_csv(results: Sequence[RunResult], path: PathLike):
    write_text(path, render_results(results))


def parse_results(text: str, path: Optional[str] = None) -> list[RunResult]:
    lines = text.splitlines()
    if not lines or lines[0].strip() != RESULTS_CSV_HEADER:
        raise ParseError(f"expected header '{RESULTS_CSV_HEADER}'", 1, path)
    results = []
    for number, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        fields = line.strip().split(',')
        if len(fields) != 5 or fields[1] not in PolicyKind:
            raise ParseError(f"malformed result row '{line}'", number, path)
        try:
            seed = int(fields[0])
            cost, height, ratio = (parse_scalar(f) for f in fields[2:])
        except (ValueError, UsageError):
            raise ParseError(f"malformed result row '{line}'", number, path) from None
        results.append(RunResult(seed, PolicyKind(fields[1]), cost, height, ratio))
    return results


def read_results_csv(path: PathLike) -> list[RunResult]:
    return parse_results(read_text(path), str(path))


def render_plotdata(batches: Sequence[BatchResult]) -> str:
    lines = [PLOTDATA_CSV_HEADER]
    for batch in batches:
        for s in batch.summary:
            lines.append(f"{batch.config.d},{batch.config.mu},{s.policy},{s.mean:.6f},{s.stddev:.6f}")
    return "\n".join(lines) + "\n"


def emit_plotdata(batches: Sequence[BatchResult], path: PathLike):
    write_text(path, render_plotdata(batches))


def run_sweep(grid: ExperimentGrid, out_dir: PathLike) -> list[BatchResult]:
    """Run every (d, mu) cell of the grid and write one results file each plus the plot data."""
    out_dir = Path(out_dir)
    batches = []
    for cfg in grid.configs():
        batch = run_batch(cfg)
        emit_csv(batch.results, out_dir / settings.DEFAULT_RESULTS_FILENAME.format(d=cfg.d, mu=cfg.mu))
        batches.append(batch)
    emit_plotdata(batches, out_dir / settings.DEFAULT_PLOTDATA_FILENAME)
    return batches
