"""Exact computation of C_k(n) by enumerating minimal representatives.

The engine grows minimal representatives one letter at a time. Generation
``G_0`` is ``{ε}``; the candidates of length ``l + 1`` are ``u a`` for ``u`` in
``G_l``, kept only when their length-``l`` suffix is itself in ``G_l`` (factors
of minimal words are minimal). Candidates are visited in lexicographic order and
the first one to reach an unseen congruence key becomes the class's minimal
representative. The run stops at the first empty generation, since a longer
minimal word would have a minimal prefix of every shorter length.

Keys are the bitset of length-``n`` subwords (see
:func:`simcon.congruence.subword_layers`) in exact mode, or a 128-bit digest of
their canonical text serialization in fingerprint mode. Words shorter than
``n`` are each alone in their class and never touch the key store.
"""

from __future__ import annotations

import itertools
import json
import logging
import multiprocessing
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterator, List, Optional, Tuple

from simcon.congruence import (
    EXACT,
    FINGERPRINT,
    FINGERPRINT_BYTES,
    MODES,
    extend_layers,
    fingerprint,
    initial_layers,
    serialize_layer,
)
from simcon.words import Word, format_word, words_of_length

log = logging.getLogger(__name__)

EXHAUSTED = "exhausted"
BUDGET_EXCEEDED = "budget_exceeded"
LENGTH_CAP_HIT = "length_cap_hit"



def _default_memory_budget() -> int:
    try:
        physical = os.sysconf("SC_PAGE_SIZE") * os.sysconf("SC_PHYS_PAGES")
    except (ValueError, OSError, AttributeError):
        return 4 * 2**30
    return min(4 * 2**30, int(physical * 0.6))


DEFAULT_MEMORY_BUDGET = _default_memory_budget()
# generations with fewer parents than this are processed in-process
PARALLEL_MIN_PARENTS = 512
_CHECK_EVERY = 4096
# rough per-entry overhead of a set slot plus the int/bytes object header
_ENTRY_OVERHEAD = 90


class EnumerationError(RuntimeError):
    pass


class FingerprintCollisionError(EnumerationError):
    """Two inequivalent words produced the same fingerprint."""


class EnumerationBudgetError(EnumerationError):
    """Raised by :func:`enumerate_minimal` when the run cannot be completed."""

    def __init__(self, message: str, report: "EnumerationReport"):
        super().__init__(message)
        self.report = report


@dataclass(frozen=True)
class EnumerationConfig:
    k: int
    n: int
    mode: str = EXACT
    max_length: Optional[int] = None
    worker_count: int = 1
    memory_budget: int = DEFAULT_MEMORY_BUDGET
    time_budget: Optional[float] = None
    # keep exact keys next to fingerprints to detect collisions (small runs only)
    cross_check: bool = False

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.k > 255:
            raise ValueError("the engine supports at most 255 letters")
        if self.n < 0:
            raise ValueError("n must be >= 0")
        if self.worker_count < 1:
            raise ValueError("worker_count must be >= 1")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        if self.max_length is not None and self.max_length < 0:
            raise ValueError("max_length must be >= 0")

    @property
    def length_cap(self) -> int:
        if self.max_length is not None:
            return self.max_length
        return max(4 * self.n * self.k, 1)


@dataclass(frozen=True)
class EnumerationReport:
    k: int
    n: int
    total_classes: int
    per_length: Tuple[int, ...]
    max_rep_length: int
    termination: str
    mode: str
    duration: float
    peak_key_store: int
    worker_count: int = 1
    collision_bound: float = 0.0

    @property
    def exact(self) -> bool:
        return self.termination == EXHAUSTED

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "n": self.n,
            "total_classes": str(self.total_classes),
            "exact": self.exact,
            "per_length": list(self.per_length),
            "max_rep_length": self.max_rep_length,
            "termination": self.termination,
            "mode": self.mode,
            "duration": round(self.duration, 6),
            "peak_key_store": self.peak_key_store,
            "worker_count": self.worker_count,
            "collision_bound": self.collision_bound,
        }

    def dumps(self, timings: bool = True) -> str:
        data = self.to_json()
        if not timings:
            data.pop("duration")
        return json.dumps(data, sort_keys=True)


# Fork-inherited state for worker processes; set just before each pool starts.
_SHARED: dict = {}


def _expand(words, layers, lo, hi, prev, seen, k, n, mode, exact_of=None):
    """Local survivors among the children of ``words[lo:hi]``, in lex order.

    ``exact_of`` (fingerprint mode only) maps stored fingerprints to their
    exact bitsets; when given, every fingerprint hit is confirmed exactly.
    """
    out = []
    local: dict = {}
    check_suffix = bool(words) and len(words[0]) > 0
    letters = [bytes((a,)) for a in range(1, k + 1)]
    short = len(words[0]) + 1 < n if words else True
    for i in range(lo, hi):
        u = words[i]
        lay = layers[i]
        for a, ab in enumerate(letters, start=1):
            w = u + ab
            if check_suffix and w[1:] not in prev:
                continue
            child = extend_layers(lay, a, k)
            if short:
                out.append((w, child, None))
                continue
            key = _layer_key(child[n], n, k, mode)
            if mode == FINGERPRINT:
                if exact_of is not None:
                    _confirm(w, key, child[n], exact_of, local)
            if key in seen or key in local:
                continue
            local[key] = child[n]
            out.append((w, child, key))
    return out


def _layer_key(top: int, n: int, k: int, mode: str):
    if mode == FINGERPRINT:
        return fingerprint(serialize_layer(top, n, k))
    return top


def _confirm(w, key, exact, *stores) -> None:
    for store in stores:
        other = store.get(key)
        if other is not None and other != exact:
            raise FingerprintCollisionError(
                f"fingerprint collision at {format_word(w)!r}"
            )


def _worker(bounds):
    s = _SHARED
    return _expand(s["words"], s["layers"], bounds[0], bounds[1], s["prev"],
                   s["seen"], s["k"], s["n"], s["mode"], s["exact_of"])


class _Engine:
    def __init__(self, config: EnumerationConfig):
        self.config = config
        self.seen: set = set()
        # exact bitset per fingerprint, kept only when cross-checking
        self.exact_of: Optional[dict] = (
            {} if config.cross_check and config.mode == FINGERPRINT else None
        )
        self.per_length: List[int] = []
        self.termination = EXHAUSTED
        self.peak = 0
        self.started = time.monotonic()
        self.duration = 0.0

    def _over_budget(self, generation_size: int) -> Optional[str]:
        cfg = self.config
        if cfg.time_budget is not None and time.monotonic() - self.started > cfg.time_budget:
            return "time budget exhausted"
        key_bytes = (
            FINGERPRINT_BYTES if cfg.mode == FINGERPRINT
            else (cfg.k**cfg.n + 7) // 8
        )
        layer_bytes = sum((cfg.k**j + 7) // 8 for j in range(cfg.n + 1))
        stored = len(self.seen) + len(self.exact_of or ())
        estimate = stored * (key_bytes + _ENTRY_OVERHEAD)
        # per live word: layer ints and their headers, the tuple, the bytes word
        per_word = layer_bytes + 36 * (cfg.n + 1) + 56 + 40 + 2 * _ENTRY_OVERHEAD
        estimate += generation_size * per_word
        estimate = int(estimate * 1.25)
        if estimate > cfg.memory_budget:
            return f"memory budget exhausted (~{estimate} bytes estimated)"
        return None

    def _admit(self, w: bytes, child, key) -> bool:
        if key is None:
            return True
        if key in self.seen:
            if self.exact_of is not None:
                _confirm(w, key, child[self.config.n], self.exact_of)
            return False
        if self.exact_of is not None:
            self.exact_of[key] = child[self.config.n]
        self.seen.add(key)
        return True

    def _next_generation(self, words, layers, prev) -> Tuple[list, list]:
        cfg = self.config
        new_words: list = []
        new_layers: list = []
        workers = cfg.worker_count
        if workers > 1 and len(words) >= PARALLEL_MIN_PARENTS:
            step = -(-len(words) // workers)
            chunks = [(lo, min(lo + step, len(words))) for lo in range(0, len(words), step)]
            _SHARED.update(words=words, layers=layers, prev=prev, seen=self.seen,
                           k=cfg.k, n=cfg.n, mode=cfg.mode, exact_of=self.exact_of)
            try:
                ctx = multiprocessing.get_context("fork")
                with ProcessPoolExecutor(max_workers=workers, mp_context=ctx) as pool:
                    parts = list(pool.map(_worker, chunks))
            finally:
                _SHARED.clear()
            # chunks are in lex order, so the first admission per key is the least word
            for part in parts:
                for w, child, key in part:
                    if self._admit(w, child, key):
                        new_words.append(w)
                        new_layers.append(child)
            reason = self._over_budget(len(new_words) + len(words))
            if reason:
                raise _Stop(reason)
            return new_words, new_layers
        step = _CHECK_EVERY
        for lo in range(0, len(words), step):
            for w, child, key in _expand(words, layers, lo, min(lo + step, len(words)),
                                         prev, self.seen, cfg.k, cfg.n, cfg.mode,
                                         self.exact_of):
                if self._admit(w, child, key):
                    new_words.append(w)
                    new_layers.append(child)
            reason = self._over_budget(len(new_words) + len(words))
            if reason:
                raise _Stop(reason)
        return new_words, new_layers

    def generations(self) -> Iterator[List[bytes]]:
        cfg = self.config
        words = [b""]
        layers = [initial_layers(cfg.n)]
        if cfg.n == 0:
            # ε is the only word not shorter than n = 0 that is never a child
            self._admit(b"", layers[0], _layer_key(layers[0][0], 0, cfg.k, cfg.mode))
        try:
            length = 0
            while words:
                self.per_length.append(len(words))
                yield words
                if length >= cfg.length_cap:
                    self.termination = LENGTH_CAP_HIT
                    log.warning("length cap %d reached with %d live representatives",
                                cfg.length_cap, len(words))
                    break
                prev = set(words) if length > 0 else set()
                words, layers = self._next_generation(words, layers, prev)
                self.peak = max(self.peak, len(self.seen))
                length += 1
                log.debug("length %d: %d representatives, %d keys",
                          length, len(words), len(self.seen))
        except _Stop as stop:
            self.termination = BUDGET_EXCEEDED
            log.warning("enumeration stopped: %s", stop)
        finally:
            self.peak = max(self.peak, len(self.seen))
            self.duration = time.monotonic() - self.started

    def report(self) -> EnumerationReport:
        cfg = self.config
        bound = 0.0
        if cfg.mode == FINGERPRINT:
            # birthday bound over the keys ever stored
            bound = min(1.0, self.peak * self.peak / 2.0 ** (8 * FINGERPRINT_BYTES + 1))
        return EnumerationReport(
            k=cfg.k,
            n=cfg.n,
            total_classes=sum(self.per_length),
            per_length=tuple(self.per_length),
            max_rep_length=len(self.per_length) - 1,
            termination=self.termination,
            mode=cfg.mode,
            duration=self.duration,
            peak_key_store=self.peak,
            worker_count=cfg.worker_count,
            collision_bound=bound,
        )


class _Stop(Exception):
    pass


def count_classes(
    config: EnumerationConfig,
    on_generation: Optional[Callable[[int, List[Word]], None]] = None,
) -> EnumerationReport:
    """Count the ~n classes over k letters.

    ``total_classes`` is exact only when ``report.termination == "exhausted"``;
    otherwise it is the number of classes found so far, a lower bound.
    """
    engine = _Engine(config)
    for length, words in enumerate(engine.generations()):
        if on_generation is not None and words:
            on_generation(length, [tuple(w) for w in words])
    return engine.report()


def enumerate_minimal(config: EnumerationConfig) -> Iterator[Word]:
    """Yield the minimal representatives in shortlex order."""
    engine = _Engine(config)
    for words in engine.generations():
        for w in words:
            yield tuple(w)
    report = engine.report()
    if not report.exact:
        raise EnumerationBudgetError(
            f"enumeration for k={config.k}, n={config.n} ended with {report.termination}",
            report,
        )


def default_workers() -> int:
    env = os.environ.get("SIMCON_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


# -- brute-force cross-check ----------------------------------------------------


@dataclass
class OracleVerdict:
    k: int
    n: int
    ok: bool
    oracle_count: int
    engine_count: int
    words_examined: int
    problems: List[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def brute_force_subwords(x: Word, n: int) -> frozenset:
    return frozenset(
        tuple(x[i] for i in idx)
        for j in range(min(n, len(x)) + 1)
        for idx in itertools.combinations(range(len(x)), j)
    )


def verify_against_oracle(k: int, n: int, max_words: int = 2_000_000) -> OracleVerdict:
    """Recount C_k(n) by partitioning all short words by their full subword sets.

    Words are scanned by increasing length until a length contributes no new
    class; one further length is scanned as a margin. The first word seen in
    each class is its shortlex-least member. The engine must emit exactly those
    words, one per class.
    """
    classes: dict = {}
    examined = 0
    length = 0
    empty_lengths = 0
    while empty_lengths < 2:
        fresh = 0
        for x in words_of_length(k, length):
            examined += 1
            if examined > max_words:
                raise EnumerationError(
                    f"oracle for k={k}, n={n} exceeds {max_words} words"
                )
            s = brute_force_subwords(x, n)
            if s not in classes:
                classes[s] = x
                fresh += 1
        empty_lengths = empty_lengths + 1 if fresh == 0 else 0
        length += 1

    reps = list(enumerate_minimal(EnumerationConfig(k, n)))
    problems = []
    oracle_reps = set(classes.values())
    if len(set(reps)) != len(reps):
        problems.append("engine emitted a representative twice")
    hit: dict = {}
    for r in reps:
        s = brute_force_subwords(r, n)
        if s in hit:
            problems.append(
                f"{format_word(r)!r} and {format_word(hit[s])!r} are equivalent"
            )
        hit[s] = r
        if classes.get(s) != r:
            problems.append(f"{format_word(r)!r} is not shortlex-least in its class")
    missing = oracle_reps - set(reps)
    if missing:
        problems.append(f"{len(missing)} classes have no engine representative")
    if len(classes) != len(reps):
        problems.append(f"oracle counts {len(classes)}, engine {len(reps)}")
    return OracleVerdict(k, n, not problems, len(classes), len(reps), examined, problems)


def dump_representatives(reps_by_length, stream=None) -> None:
    """One word per line, lengths separated by a blank line."""
    stream = stream or sys.stdout
    first = True
    for _, words in reps_by_length:
        if not first:
            stream.write("\n")
        first = False
        for w in words:
            stream.write(format_word(w) + "\n")
