"""Exhaustive per-class surveys of reorientation counts.

A survey walks every chessboard class index at a given rank and element
count, evaluates the k-neighborly reorientation count of the canonical
representative with the selected engine, and aggregates a histogram plus
maximizer statistics.  Results are deterministic: independent of worker
count, chunk size, and checkpoint/resume history.  Long runs checkpoint
after every completed chunk (atomic write, refuse to resume on metadata
mismatch).

``verify_case`` wraps the survey presets whose expected maximizer counts are
known, reporting one pass/fail line per assertion.  ``engine_crosscheck``
and ``minor_recursion_check`` are sampled consistency sweeps: the former
compares the circuits and travels engines class by class, the latter checks
that a class count never exceeds the sum of its contraction and deletion
counts at any element.
"""

from __future__ import annotations

import json
import multiprocessing
import os
import random
import time
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

from . import _fast, formulas, sign_core, travels
from .chessboard import (
    ENCODING_VERSION,
    _representative_entries,
    class_count,
    representative_of_index,
)
from .formulas import CValue

__all__ = [
    "DEFAULT_CHUNK_SIZE",
    "SurveyConfig",
    "SurveyResult",
    "Checkpoint",
    "CheckpointMismatchError",
    "EngineMismatchError",
    "run_survey",
    "PRESETS",
    "verify_case",
    "engine_crosscheck",
    "minor_recursion_check",
]

DEFAULT_CHUNK_SIZE = 4096
ENGINES = ("circuits", "travels")


class CheckpointMismatchError(RuntimeError):
    """Raised when a checkpoint was written for a different survey setup."""


class EngineMismatchError(RuntimeError):
    """Raised when the circuits and travels engines disagree on a class."""


# ---------------------------------------------------------------------------
# configuration and results
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SurveyConfig:
    rank: int
    elements: int
    k: int
    engine: str = "circuits"
    threads: int = 1
    chunk_size: int = DEFAULT_CHUNK_SIZE
    checkpoint_path: str | Path | None = None
    index_range: tuple[int, int] | None = None
    crosscheck_samples: int = 0
    crosscheck_seed: int = 0

    def __post_init__(self):
        if self.elements < self.rank + 1:
            raise ValueError(
                f"survey needs n >= r+1, got r={self.rank}, n={self.elements}"
            )
        if self.k < 0:
            raise ValueError("k must be non-negative")
        if self.engine not in ENGINES:
            raise ValueError(f"unknown engine {self.engine!r}, expected one of {ENGINES}")
        if self.threads < 1:
            raise ValueError("threads must be >= 1")
        if self.chunk_size < 1:
            raise ValueError("chunk size must be >= 1")
        if self.index_range is not None:
            lo, hi = self.index_range
            total = class_count(self.rank, self.elements)
            if not (0 <= lo <= hi <= total):
                raise ValueError(
                    f"index range [{lo},{hi}) outside 0..{total}"
                )
        if self.crosscheck_samples < 0:
            raise ValueError("crosscheck sample count must be >= 0")

    def bounds(self) -> tuple[int, int]:
        if self.index_range is not None:
            return self.index_range
        return 0, class_count(self.rank, self.elements)


@dataclass
class SurveyResult:
    rank: int
    elements: int
    k: int
    engine: str
    class_count: int
    surveyed: int
    c: CValue
    max_f: int
    maximizer_count_total: int
    maximizer_count_excluding_alternating: int
    alternating_class_f: int | None
    histogram: dict[int, int]
    elapsed_seconds: float
    encoding_version: str = ENCODING_VERSION
    index_range: tuple[int, int] | None = None

    def to_json_dict(self) -> dict:
        out = {
            "rank": self.rank,
            "elements": self.elements,
            "k": self.k,
            "engine": self.engine,
            "class_count": self.class_count,
            "c_value": self.c.value,
            "c_source": self.c.source,
            "max_f": self.max_f,
            "maximizer_count_total": self.maximizer_count_total,
            "maximizer_count_excluding_alternating": self.maximizer_count_excluding_alternating,
            "alternating_class_f": self.alternating_class_f,
            "histogram": [
                {"f": f, "classes": c} for f, c in sorted(self.histogram.items())
            ],
            "elapsed_seconds": self.elapsed_seconds,
            "encoding_version": self.encoding_version,
        }
        if self.index_range is not None:
            out["range"] = list(self.index_range)
        return out


# ---------------------------------------------------------------------------
# checkpointing
# ---------------------------------------------------------------------------

@dataclass
class Checkpoint:
    meta: dict
    completed_chunks: set[int]
    partial_histogram: Counter
    alternating_class_f: int | None

    def to_json_dict(self) -> dict:
        return {
            "meta": self.meta,
            "completed_chunks": sorted(self.completed_chunks),
            "partial_histogram": {
                str(f): c for f, c in sorted(self.partial_histogram.items())
            },
            "partial_max": {"alternating_class_f": self.alternating_class_f},
        }


def _checkpoint_meta(cfg: SurveyConfig) -> dict:
    lo, hi = cfg.bounds()
    return {
        "rank": cfg.rank,
        "elements": cfg.elements,
        "k": cfg.k,
        "engine": cfg.engine,
        "chunk_size": cfg.chunk_size,
        "encoding_version": ENCODING_VERSION,
        "range": [lo, hi],
    }


def save_checkpoint(path: str | Path, cp: Checkpoint) -> None:
    """Write atomically: temp file in the same directory, then rename."""
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(json.dumps(cp.to_json_dict(), indent=2) + "\n")
    os.replace(tmp, path)


def load_checkpoint(path: str | Path) -> Checkpoint:
    data = json.loads(Path(path).read_text())
    return Checkpoint(
        meta=data["meta"],
        completed_chunks=set(data["completed_chunks"]),
        partial_histogram=Counter(
            {int(f): int(c) for f, c in data["partial_histogram"].items()}
        ),
        alternating_class_f=data["partial_max"]["alternating_class_f"],
    )


# ---------------------------------------------------------------------------
# chunk evaluation (also run inside worker processes)
# ---------------------------------------------------------------------------

@dataclass
class _Runtime:
    rank: int
    elements: int
    k: int
    engine: str
    use_jit: bool = True
    ctx: object = field(default=None)
    jit: object = field(default=None)

    def __post_init__(self):
        if self.engine == "circuits":
            if self.use_jit and _fast.HAVE_JIT:
                self.jit = _fast.JitSurveyContext(self.rank, self.elements, self.k)
            else:
                self.ctx = sign_core._mask_context(self.rank, self.elements)


def _evaluate_class(rt: _Runtime, index: int) -> int:
    if rt.engine == "circuits":
        entries = _representative_entries(rt.rank, rt.elements, index)
        pos = sign_core._circuit_masks_from_entries(entries, rt.ctx)
        return sign_core._count_from_masks(
            pos, rt.ctx.support_masks, rt.elements, rt.rank, rt.k
        )
    A = representative_of_index(rt.rank, rt.elements, index)
    return travels.f_via_travels(A, rt.k)


def _run_chunk(rt: _Runtime, lo: int, hi: int) -> tuple[Counter, int | None]:
    if rt.jit is not None:
        counts, alternating_f = rt.jit.run(lo, hi)
        return Counter(counts), alternating_f
    hist = Counter()
    alternating_f = None
    for index in range(lo, hi):
        f = _evaluate_class(rt, index)
        hist[f] += 1
        if index == 0:
            alternating_f = f
    return hist, alternating_f


_WORKER_RT: _Runtime | None = None


def _init_worker(rank: int, elements: int, k: int, engine: str) -> None:
    global _WORKER_RT
    _WORKER_RT = _Runtime(rank, elements, k, engine)


def _worker_chunk(job: tuple[int, int, int]) -> tuple[int, dict, int | None]:
    chunk_id, lo, hi = job
    hist, alt = _run_chunk(_WORKER_RT, lo, hi)
    return chunk_id, dict(hist), alt


# ---------------------------------------------------------------------------
# the survey driver
# ---------------------------------------------------------------------------

def _chunk_jobs(cfg: SurveyConfig, skip: set[int]) -> list[tuple[int, int, int]]:
    lo, hi = cfg.bounds()
    if hi == lo:
        return []
    size = cfg.chunk_size
    first, last = lo // size, (hi - 1) // size
    jobs = []
    for cid in range(first, last + 1):
        if cid in skip:
            continue
        jobs.append((cid, max(lo, cid * size), min(hi, (cid + 1) * size)))
    return jobs


def _survey_c_value(cfg: SurveyConfig) -> CValue:
    if cfg.rank < 2 * cfg.k + 1:
        return CValue(None, formulas.SOURCE_UNKNOWN)
    return formulas.c_value(cfg.rank, cfg.elements, cfg.k, engine="circuits")


def run_survey(cfg: SurveyConfig) -> SurveyResult:
    """Evaluate f for every class index in range and aggregate the statistics."""
    start = time.perf_counter()
    lo, hi = cfg.bounds()

    if cfg.crosscheck_samples:
        report = engine_crosscheck(
            cfg.rank, cfg.elements, cfg.k, cfg.crosscheck_samples, cfg.crosscheck_seed
        )
        if not report.passed:
            raise EngineMismatchError(
                f"engines disagree at class indices "
                f"{[m['index'] for m in report.mismatches]}"
            )

    meta = _checkpoint_meta(cfg)
    checkpoint = None
    if cfg.checkpoint_path is not None and Path(cfg.checkpoint_path).exists():
        checkpoint = load_checkpoint(cfg.checkpoint_path)
        if checkpoint.meta != meta:
            raise CheckpointMismatchError(
                f"checkpoint at {cfg.checkpoint_path} was written for {checkpoint.meta}, "
                f"refusing to resume a survey with {meta}"
            )
    if checkpoint is None:
        checkpoint = Checkpoint(meta, set(), Counter(), None)

    jobs = _chunk_jobs(cfg, checkpoint.completed_chunks)

    def absorb(chunk_id: int, hist: dict, alt: int | None) -> None:
        checkpoint.partial_histogram.update(hist)
        checkpoint.completed_chunks.add(chunk_id)
        if alt is not None:
            checkpoint.alternating_class_f = alt
        if cfg.checkpoint_path is not None:
            save_checkpoint(cfg.checkpoint_path, checkpoint)

    if cfg.threads == 1 or len(jobs) <= 1:
        rt = _Runtime(cfg.rank, cfg.elements, cfg.k, cfg.engine)
        for chunk_id, a, b in jobs:
            hist, alt = _run_chunk(rt, a, b)
            absorb(chunk_id, dict(hist), alt)
    else:
        with multiprocessing.Pool(
            processes=cfg.threads,
            initializer=_init_worker,
            initargs=(cfg.rank, cfg.elements, cfg.k, cfg.engine),
        ) as pool:
            for chunk_id, hist, alt in pool.imap_unordered(_worker_chunk, jobs):
                absorb(chunk_id, hist, alt)

    hist = checkpoint.partial_histogram
    alternating_f = checkpoint.alternating_class_f
    max_f = max(hist) if hist else 0
    maximizers = hist.get(max_f, 0)
    exclude_alt = 1 if (alternating_f is not None and alternating_f == max_f) else 0
    return SurveyResult(
        rank=cfg.rank,
        elements=cfg.elements,
        k=cfg.k,
        engine=cfg.engine,
        class_count=class_count(cfg.rank, cfg.elements),
        surveyed=hi - lo,
        c=_survey_c_value(cfg),
        max_f=max_f,
        maximizer_count_total=maximizers,
        maximizer_count_excluding_alternating=maximizers - exclude_alt,
        alternating_class_f=alternating_f,
        histogram=dict(hist),
        elapsed_seconds=time.perf_counter() - start,
        index_range=cfg.index_range,
    )


# ---------------------------------------------------------------------------
# verification presets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SurveyPreset:
    rank: int
    elements: int
    k: int
    expected_max_f: int | None = None
    expected_maximizers_excluding_alternating: int | None = None
    long_running: bool = False


PRESETS: dict[str, SurveyPreset] = {
    "r3n5k1": SurveyPreset(3, 5, 1, expected_max_f=2),
    "r4n8k1": SurveyPreset(4, 8, 1, expected_max_f=16),
    "r7n11k2": SurveyPreset(7, 11, 2, expected_maximizers_excluding_alternating=255),
    "r8n11k2": SurveyPreset(8, 11, 2, expected_maximizers_excluding_alternating=255),
    "r8n11k3": SurveyPreset(8, 11, 3, expected_maximizers_excluding_alternating=251),
    "r9n12k2": SurveyPreset(9, 12, 2, expected_maximizers_excluding_alternating=511),
    "r9n12k3": SurveyPreset(9, 12, 3, expected_maximizers_excluding_alternating=511),
    "r8n12k2": SurveyPreset(
        8, 12, 2, expected_maximizers_excluding_alternating=511, long_running=True
    ),
    "r8n12k3": SurveyPreset(
        8, 12, 3, expected_maximizers_excluding_alternating=511, long_running=True
    ),
    "r9n13k3": SurveyPreset(
        9, 13, 3, expected_maximizers_excluding_alternating=1023, long_running=True
    ),
}


@dataclass
class VerifyReport:
    case: str
    result: SurveyResult
    checks: list[tuple[str, bool, str]]

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def lines(self) -> list[str]:
        return [
            f"{'PASS' if ok else 'FAIL'} {label}: {detail}"
            for label, ok, detail in self.checks
        ]

    def to_json_dict(self) -> dict:
        return {
            "case": self.case,
            "passed": self.passed,
            "checks": [
                {"label": label, "passed": ok, "detail": detail}
                for label, ok, detail in self.checks
            ],
            "result": self.result.to_json_dict(),
        }


def verify_case(
    case: str,
    threads: int = 1,
    chunk_size: int = DEFAULT_CHUNK_SIZE,
    checkpoint_path: str | Path | None = None,
) -> VerifyReport:
    """Run a preset survey and assert its expected statistics."""
    try:
        preset = PRESETS[case]
    except KeyError:
        raise ValueError(
            f"unknown case {case!r}; available: {', '.join(sorted(PRESETS))}"
        ) from None
    cfg = SurveyConfig(
        rank=preset.rank,
        elements=preset.elements,
        k=preset.k,
        threads=threads,
        chunk_size=chunk_size,
        checkpoint_path=checkpoint_path,
    )
    result = run_survey(cfg)
    c = result.c.value

    checks: list[tuple[str, bool, str]] = []
    surveyed = sum(result.histogram.values())
    checks.append(
        (
            "histogram-total",
            surveyed == result.class_count,
            f"{surveyed} classes surveyed of {result.class_count}",
        )
    )
    odd = [f for f in result.histogram if f % 2]
    checks.append(
        (
            "histogram-parity",
            not odd,
            "all f values even" if not odd else f"odd f values {odd}",
        )
    )
    if c is not None:
        checks.append(
            (
                "alternating-class-f",
                result.alternating_class_f == c,
                f"f(class 0) = {result.alternating_class_f}, c = {c} ({result.c.source})",
            )
        )
        ok = result.max_f <= c
        checks.append(
            (
                "max-f-at-most-c",
                ok,
                f"max_f = {result.max_f} <= c = {c}"
                if ok
                else f"FALSIFICATION: max_f = {result.max_f} exceeds c = {c}",
            )
        )
    if preset.expected_max_f is not None:
        checks.append(
            (
                "max-f-expected",
                result.max_f == preset.expected_max_f,
                f"max_f = {result.max_f}, expected {preset.expected_max_f}",
            )
        )
    expected_excl = preset.expected_maximizers_excluding_alternating
    if expected_excl is not None:
        got = result.maximizer_count_excluding_alternating
        checks.append(
            (
                "maximizers-excluding-alternating",
                got == expected_excl,
                f"{got} non-alternating classes attain max_f, expected {expected_excl}",
            )
        )
    return VerifyReport(case, result, checks)


# ---------------------------------------------------------------------------
# consistency sweeps
# ---------------------------------------------------------------------------

def _sample_indices(r: int, n: int, sample_size: int, seed: int) -> list[int]:
    total = class_count(r, n)
    if sample_size >= total:
        return list(range(total))
    rng = random.Random(seed)
    return sorted(rng.sample(range(total), sample_size))


@dataclass
class CrosscheckReport:
    rank: int
    elements: int
    k: int
    seed: int
    indices: list[int]
    mismatches: list[dict]

    @property
    def passed(self) -> bool:
        return not self.mismatches

    def to_json_dict(self) -> dict:
        return {
            "rank": self.rank,
            "elements": self.elements,
            "k": self.k,
            "seed": self.seed,
            "classes_checked": len(self.indices),
            "passed": self.passed,
            "mismatches": self.mismatches,
        }


def engine_crosscheck(
    r: int, n: int, k: int, sample_size: int, seed: int
) -> CrosscheckReport:
    """Compare the circuits and travels engines on sampled class indices."""
    indices = _sample_indices(r, n, sample_size, seed)
    mismatches = []
    for index in indices:
        A = representative_of_index(r, n, index)
        by_circuits = sign_core.count_k_neighborly_reorientations(A, k)
        by_travels = travels.f_via_travels(A, k)
        if by_circuits != by_travels:
            mismatches.append(
                {"index": index, "circuits": by_circuits, "travels": by_travels}
            )
    return CrosscheckReport(r, n, k, seed, indices, mismatches)


@dataclass
class MinorRecursionReport:
    rank: int
    elements: int
    k: int
    seed: int
    indices: list[int]
    violations: list[dict]

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json_dict(self) -> dict:
        return {
            "rank": self.rank,
            "elements": self.elements,
            "k": self.k,
            "seed": self.seed,
            "classes_checked": len(self.indices),
            "passed": self.passed,
            "violations": self.violations,
        }


def minor_recursion_check(
    r: int, n: int, k: int, sample_size: int, seed: int
) -> MinorRecursionReport:
    """Check f(M) <= f(M/e) + f(M\\e) for sampled classes and every element e."""
    if r < 3:
        raise ValueError("minor recursion check needs rank >= 3")
    if n < r + 2:
        raise ValueError("minor recursion check needs n >= r+2")
    indices = _sample_indices(r, n, sample_size, seed)
    violations = []
    for index in indices:
        A = representative_of_index(r, n, index)
        table = sign_core.chirotope_from_matrix(A)
        f = sign_core.count_k_neighborly_reorientations_chirotope(table, k)
        for e in range(1, n + 1):
            f_contract = sign_core.count_k_neighborly_reorientations_chirotope(
                sign_core.contract_element(table, e), k
            )
            f_delete = sign_core.count_k_neighborly_reorientations_chirotope(
                sign_core.delete_element(table, e), k
            )
            if f > f_contract + f_delete:
                violations.append(
                    {
                        "index": index,
                        "element": e,
                        "f": f,
                        "f_contract": f_contract,
                        "f_delete": f_delete,
                    }
                )
    return MinorRecursionReport(r, n, k, seed, indices, violations)
