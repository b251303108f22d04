"""Distance engines: exhaustive oracle, linked cluster, bipartition, random window.

All engines accept a :class:`StabilizerCode` or a :class:`CssCode`.  CSS
codes are searched sector by sector (X-type vectors against the Z checks
and vice versa) unless ``generic=True``; the reported distance is the
minimum over sectors.  Internally every search runs over a
:class:`SearchSpace`, a packed-binary view that covers both the
quaternary (2 bits per qubit) and the binary sector case.
"""

from __future__ import annotations

import itertools
import math
import random
import time
from collections.abc import Callable, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from lcdist.algebra import Echelon, PauliVector, bits_of, kernel_words, parity, rref, span, weight
from lcdist.clusters import iter_cluster_masks
from lcdist.codes import CssCode, StabilizerCode, from_css, is_logical, require_valid
from lcdist.graph import ConnectivityGraph, build_connectivity_graph


class KernelOverflowError(RuntimeError):
    """A cluster's local solution space is larger than ``kernel_cap`` allows."""

    def __init__(self, cluster: tuple[int, ...], dimension: int, cap: int):
        self.cluster = cluster
        self.dimension = dimension
        self.cap = cap
        super().__init__(
            f"cluster {list(cluster)} has kernel dimension {dimension} > kernel_cap={cap}; "
            "raise kernel_cap to keep the search exact"
        )


@dataclass
class SearchBudget:
    w_max: int | None = None
    kernel_cap: int = 20
    trial_factor: float = 4.0
    seed: int = 0
    wall_clock_limit: float | None = None
    max_table: int = 4_000_000

    def __post_init__(self) -> None:
        if self.w_max is not None and self.w_max < 1:
            raise ValueError("w_max must be positive")
        if self.kernel_cap < 1 or self.trial_factor <= 0 or self.max_table < 1:
            raise ValueError("budget fields must be positive")
        if self.wall_clock_limit is not None and self.wall_clock_limit <= 0:
            raise ValueError("wall_clock_limit must be positive")


@dataclass
class DistanceResult:
    """Outcome of a distance search.

    ``exact``: ``d`` is the distance.  ``upper_bound``: a logical of weight
    ``d`` exists.  ``lower_bound``: every weight up to ``w_exhausted`` was
    excluded.
    """

    kind: str
    engine: str
    d: int | None = None
    w_exhausted: int | None = None
    witness: PauliVector | None = None
    note: str | None = None
    stats: dict = field(default_factory=dict)

    def to_text(self) -> str:
        parts = [f"engine={self.engine}", f"kind={self.kind}"]
        if self.d is not None:
            parts.append(f"d={self.d}")
        if self.w_exhausted is not None:
            parts.append(f"w_exhausted={self.w_exhausted}")
        if self.witness is not None:
            parts.append(f"witness={self.witness.label()}")
        if self.note:
            parts.append(f"note={self.note}")
        for key in sorted(self.stats):
            value = self.stats[key]
            if isinstance(value, float):
                value = f"{value:.4g}"
            elif isinstance(value, dict):
                value = ";".join(f"{k}:{v}" for k, v in sorted(value.items()))
            parts.append(f"{key}={value}")
        return " ".join(parts)


@dataclass(frozen=True)
class SearchSpace:
    """Packed binary view of one distance search.

    A vector is a ``width``-bit int.  ``symbols[q]`` lists the non-zero
    single-qubit values on qubit ``q``; ``checks`` are masks whose parity
    against a vector gives the syndrome bits; ``degeneracy`` spans the
    vectors that act trivially.
    """

    n: int
    width: int
    checks: tuple[int, ...]
    degeneracy: Echelon
    symbols: tuple[tuple[int, ...], ...]
    graph: ConnectivityGraph
    to_pauli: Callable[[int], PauliVector]
    label: str = "generic"

    @property
    def bits_per_qubit(self) -> int:
        return self.width // self.n if self.n else 1

    def qubit_bits(self, q: int) -> int:
        return 1 << q if self.bits_per_qubit == 1 else (1 << q) | (1 << (q + self.n))

    def syndrome(self, x: int) -> int:
        out = 0
        for i, c in enumerate(self.checks):
            out |= parity(c & x) << i
        return out

    def is_candidate(self, x: int) -> bool:
        return x != 0 and not any(parity(c & x) for c in self.checks) and x not in self.degeneracy


class _Converter:
    # picklable replacement for the lambdas above (needed by worker processes)
    def __init__(self, n: int, mode: str):
        self.n, self.mode = n, mode

    def __call__(self, x: int) -> PauliVector:
        if self.mode == "packed":
            return PauliVector.from_packed(self.n, x)
        if self.mode == "x":
            return PauliVector(self.n, 0, x)
        return PauliVector(self.n, x, 0)


def generic_space(code: StabilizerCode) -> SearchSpace:
    n = code.n
    symbols = tuple(((1 << q), (1 << (q + n)), (1 << q) | (1 << (q + n))) for q in range(n))
    return SearchSpace(
        n=n,
        width=2 * n,
        checks=code.check_words,
        degeneracy=code.stabilizer_echelon,
        symbols=symbols,
        graph=build_connectivity_graph(code.supports(), n),
        to_pauli=_Converter(n, "packed"),
        label="generic",
    )


def sector_spaces(css: CssCode) -> list[SearchSpace]:
    """X sector (checked by ``gz``, degenerate modulo ``gx``) and Z sector."""
    n = css.n
    symbols = tuple(((1 << q),) for q in range(n))
    spaces = []
    for label, checks, stabs in (("x", css.gz, css.gx), ("z", css.gx, css.gz)):
        spaces.append(
            SearchSpace(
                n=n,
                width=n,
                checks=tuple(r for r in checks.rows if r),
                degeneracy=Echelon(stabs.rows),
                symbols=symbols,
                graph=build_connectivity_graph(checks.rows, n),
                to_pauli=_Converter(n, label),
                label=label,
            )
        )
    return spaces


def _prepare(code, generic: bool) -> tuple[StabilizerCode, list[SearchSpace]]:
    if isinstance(code, CssCode):
        stab = from_css(code)
        require_valid(stab)
        if generic:
            return stab, [generic_space(stab)]
        return stab, sector_spaces(code)
    require_valid(code)
    return code, [generic_space(code)]


def _w_limit(budget: SearchBudget, n: int) -> int:
    return n if budget.w_max is None else min(budget.w_max, n)


def _no_logicals(engine: str, n: int) -> DistanceResult:
    return DistanceResult("lower_bound", engine, w_exhausted=n, note="no logical operators")


def _better(a: PauliVector | None, b: PauliVector | None) -> PauliVector | None:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b, key=lambda e: (weight(e), e.sort_key()))


def _finish(stab: StabilizerCode, result: DistanceResult) -> DistanceResult:
    """Check the witness against the full code before handing the result out."""
    e = result.witness
    if e is not None:
        if not is_logical(stab, e):
            raise AssertionError(f"{result.engine}: witness {e.label()} is not a logical operator")
        if weight(e) != result.d:
            raise AssertionError(f"{result.engine}: witness weight {weight(e)} != reported d={result.d}")
    return result


# --------------------------------------------------------------------------
# exhaustive oracle


def brute_force_distance(code: StabilizerCode | CssCode, budget: SearchBudget | None = None) -> DistanceResult:
    """Minimum-weight logical by enumerating every Pauli vector in order of weight.

    Always works on the generic embedding and uses only :func:`is_logical`,
    so it stays independent of the other engines.
    """
    budget = budget or SearchBudget()
    stab = from_css(code) if isinstance(code, CssCode) else code
    require_valid(stab)
    n = stab.n
    if stab.k == 0:
        return _no_logicals("oracle", n)
    start = time.monotonic()
    w_max = _w_limit(budget, n)
    examined = 0
    for w in range(1, w_max + 1):
        best = None
        for supp in itertools.combinations(range(n), w):
            for syms in itertools.product("XYZ", repeat=w):
                u = v = 0
                for q, s in zip(supp, syms):
                    if s != "X":
                        u |= 1 << q
                    if s != "Z":
                        v |= 1 << q
                e = PauliVector(n, u, v)
                examined += 1
                if is_logical(stab, e):
                    best = _better(best, e)
        if best is not None:
            stats = {"vectors": examined, "elapsed": time.monotonic() - start}
            return _finish(stab, DistanceResult("exact", "oracle", d=w, witness=best, stats=stats))
        if budget.wall_clock_limit is not None and time.monotonic() - start > budget.wall_clock_limit:
            return DistanceResult("lower_bound", "oracle", w_exhausted=w, note="wall clock",
                                  stats={"vectors": examined})
    stats = {"vectors": examined, "elapsed": time.monotonic() - start}
    return DistanceResult("lower_bound", "oracle", w_exhausted=w_max, stats=stats)


# --------------------------------------------------------------------------
# linked clusters


def cluster_candidates(space: SearchSpace, cluster_mask: int, kernel_cap: int = 20) -> list[int]:
    """All non-degenerate zero-syndrome vectors whose support is exactly the cluster."""
    qubits = list(bits_of(cluster_mask))
    if space.bits_per_qubit == 1:
        x = cluster_mask
        return [x] if space.is_candidate(x) else []
    n = space.n
    var_bits = []
    for q in qubits:
        var_bits += [q, q + n]
    local = []
    for c in space.checks:
        if not c & ((cluster_mask << n) | cluster_mask):
            continue
        word = 0
        for i, gb in enumerate(var_bits):
            if (c >> gb) & 1:
                word |= 1 << i
        local.append(word)
    basis = kernel_words(local, len(var_bits))
    if len(basis) > kernel_cap:
        raise KernelOverflowError(tuple(qubits), len(basis), kernel_cap)
    full = [3 << (2 * i) for i in range(len(qubits))]
    found = []
    for y in span(basis):
        if not all(y & m for m in full):
            continue
        x = 0
        for i, gb in enumerate(var_bits):
            if (y >> i) & 1:
                x |= 1 << gb
        if x not in space.degeneracy:
            found.append(x)
    return found


def cluster_logical_check(
    code: StabilizerCode, cluster, kernel_cap: int = 20
) -> PauliVector | None:
    """Logical operator supported exactly on ``cluster`` (smallest in the tie-break order), if any."""
    space = generic_space(code)
    mask = cluster if isinstance(cluster, int) else sum(1 << v for v in set(getattr(cluster, "vertices", cluster)))
    best = None
    for x in cluster_candidates(space, mask, kernel_cap):
        best = _better(best, space.to_pauli(x))
    return best


def _lc_batch(space: SearchSpace, w: int, anchors: Sequence[int], kernel_cap: int, deadline):
    best = None
    examined = 0
    for a in anchors:
        if deadline is not None and time.monotonic() > deadline:
            return best, examined, False
        for mask in iter_cluster_masks(space.graph, w, a):
            examined += 1
            for x in cluster_candidates(space, mask, kernel_cap):
                best = _better(best, space.to_pauli(x))
    return best, examined, True


def linked_cluster_distance(
    code: StabilizerCode | CssCode,
    budget: SearchBudget | None = None,
    workers: int = 1,
    generic: bool = False,
) -> DistanceResult:
    """Exact distance by scanning connected clusters of increasing size.

    A minimum-weight logical is supported on a connected cluster of the
    connectivity graph, so exhausting all clusters of size ``< w`` excludes
    every logical of weight ``< w``.
    """
    budget = budget or SearchBudget()
    stab, spaces = _prepare(code, generic)
    n = stab.n
    if stab.k == 0:
        return _no_logicals("lc", n)
    start = time.monotonic()
    deadline = None if budget.wall_clock_limit is None else start + budget.wall_clock_limit
    w_max = _w_limit(budget, n)
    examined: dict[int, int] = {}
    pool = ProcessPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        for w in range(1, w_max + 1):
            best = None
            count = 0
            finished = True
            for space in spaces:
                if pool is None:
                    parts = [_lc_batch(space, w, range(n), budget.kernel_cap, deadline)]
                else:
                    futures = [
                        pool.submit(_lc_batch, space, w, range(i, n, workers), budget.kernel_cap, deadline)
                        for i in range(workers)
                    ]
                    parts = [f.result() for f in futures]
                for cand, c, ok in parts:
                    best = _better(best, cand)
                    count += c
                    finished = finished and ok
            examined[w] = count
            stats = {"clusters": examined, "elapsed": time.monotonic() - start}
            if not finished:
                # a witness found in a partial sweep is still a valid upper bound
                if best is not None:
                    return _finish(stab, DistanceResult("upper_bound", "lc", d=w, witness=best,
                                                        w_exhausted=w - 1, note="wall clock", stats=stats))
                return DistanceResult("lower_bound", "lc", w_exhausted=w - 1, note="wall clock", stats=stats)
            if best is not None:
                return _finish(stab, DistanceResult("exact", "lc", d=w, witness=best, stats=stats))
    finally:
        if pool is not None:
            pool.shutdown()
    stats = {"clusters": examined, "elapsed": time.monotonic() - start}
    return DistanceResult("lower_bound", "lc", w_exhausted=w_max, stats=stats)


# --------------------------------------------------------------------------
# bipartition (meet in the middle on syndromes)


def _side_vectors(space: SearchSpace, table, positions: Sequence[int], v: int):
    """Yield ``(syndrome, vector)`` for every vector of weight ``v`` supported on ``positions``."""
    if v == 0:
        yield 0, 0
        return
    for supp in itertools.combinations(positions, v):
        for choice in itertools.product(*(table[q] for q in supp)):
            syn = vec = 0
            for s, x in choice:
                syn ^= s
                vec |= x
            yield syn, vec


def _side_size(space: SearchSpace, positions: Sequence[int], v: int) -> int:
    a = len(space.symbols[0]) if space.n else 1
    return a**v * math.comb(len(positions), v)


def bipartition_distance(
    code: StabilizerCode | CssCode,
    budget: SearchBudget | None = None,
    generic: bool = False,
) -> DistanceResult:
    """Exact distance by matching syndromes of left/right half-window vectors.

    For weight ``w`` and each cyclic offset, the left window holds
    ``floor(n/2)`` consecutive qubits with weight ``floor(w/2)`` and the rest
    holds ``ceil(w/2)``; some offset splits any weight-``w`` support this
    way.  Equal syndromes give a zero-syndrome sum, kept if non-degenerate.
    """
    budget = budget or SearchBudget()
    stab, spaces = _prepare(code, generic)
    n = stab.n
    if stab.k == 0:
        return _no_logicals("bip", n)
    start = time.monotonic()
    w_max = _w_limit(budget, n)
    tables = [
        [tuple((space.syndrome(x), x) for x in space.symbols[q]) for q in range(n)] for space in spaces
    ]
    matched = 0
    probes = 0
    half = n // 2
    for w in range(1, w_max + 1):
        vl, vr = w // 2, w - w // 2
        best = None
        for space, table in zip(spaces, tables):
            for i in range(n):
                left = [(i + t) % n for t in range(half)]
                right = [(i + t) % n for t in range(half, n)]
                if vl > len(left) or vr > len(right):
                    continue
                store, probe = (left, vl), (right, vr)
                if _side_size(space, *probe) < _side_size(space, *store):
                    store, probe = probe, store
                if _side_size(space, *store) > budget.max_table:
                    stats = {"matched": matched, "probes": probes, "elapsed": time.monotonic() - start}
                    return DistanceResult("lower_bound", "bip", w_exhausted=w - 1, note="memory budget",
                                          stats=stats)
                index: dict[int, list[int]] = {}
                for syn, vec in _side_vectors(space, table, *store):
                    index.setdefault(syn, []).append(vec)
                for syn, vec in _side_vectors(space, table, *probe):
                    probes += 1
                    hits = index.get(syn)
                    if not hits:
                        continue
                    for other in hits:
                        matched += 1
                        x = vec | other
                        if x not in space.degeneracy:
                            best = _better(best, space.to_pauli(x))
        if best is not None:
            stats = {"matched": matched, "probes": probes, "elapsed": time.monotonic() - start}
            return _finish(stab, DistanceResult("exact", "bip", d=w, witness=best, stats=stats))
        if budget.wall_clock_limit is not None and time.monotonic() - start > budget.wall_clock_limit:
            return DistanceResult("lower_bound", "bip", w_exhausted=w, note="wall clock",
                                  stats={"matched": matched, "probes": probes})
    stats = {"matched": matched, "probes": probes, "elapsed": time.monotonic() - start}
    return DistanceResult("lower_bound", "bip", w_exhausted=w_max, stats=stats)


# --------------------------------------------------------------------------
# random window (information sets)


def trial_count(n: int, s: int, w: int) -> Fraction:
    """``C(n, w) / C(n - s, w)``: expected trials until a random ``s``-window misses a weight-``w`` support."""
    if not 0 <= s < n or w > n - s:
        raise ValueError(f"a window of size {s} cannot avoid a weight-{w} support in length {n}")
    return Fraction(math.comb(n, w), math.comb(n - s, w))


def default_oversampling(n: int) -> int:
    return 2 * int(math.log2(n)) if n > 1 else 0


def _window_trial(space: SearchSpace, gens: Sequence[int], positions: Sequence[int]) -> list[int] | None:
    """Normalizer elements whose restriction to the window is a single symbol.

    Returns None when the window does not determine the normalizer element
    (rank deficiency).
    """
    order = []
    window = 0
    for q in positions:
        qb = space.qubit_bits(q)
        window |= qb
        order.extend(bits_of(qb))
    rows, pivots = rref(gens, space.width, order)
    if len(pivots) < len(gens):
        return None
    by_pivot = dict(zip(pivots, rows))
    out = []
    for q in positions:
        for sym in space.symbols[q]:
            x = 0
            for b in bits_of(sym):
                r = by_pivot.get(b)
                if r is not None:
                    x ^= r
            if x and (x & window) == sym:
                out.append(x)
    return out


def random_window_distance(
    code: StabilizerCode | CssCode,
    budget: SearchBudget | None = None,
    generic: bool = False,
    oversampling: int | None = None,
) -> DistanceResult:
    """Probabilistic upper bound from random information-set windows.

    Each trial picks ``s`` random qubits; when the normalizer restricted to
    them has full rank, every single-symbol window pattern is re-encoded to
    its unique normalizer element.  Weight ``w`` is abandoned after
    ``ceil(trial_factor * n * C(n,w)/C(n-s,w))`` trials.  Trial ``t`` draws
    its window from ``Random(seed + t)``.
    """
    budget = budget or SearchBudget()
    stab, spaces = _prepare(code, generic)
    n = stab.n
    if stab.k == 0:
        return _no_logicals("rw", n)
    start = time.monotonic()
    w_max = _w_limit(budget, n)
    tau = default_oversampling(n) if oversampling is None else oversampling
    plan = []
    for space in spaces:
        gens = kernel_words(space.checks, space.width)
        s_min = -(-len(gens) // space.bits_per_qubit)
        plan.append((space, gens, s_min))
    best = None
    trials = 0
    deficient = 0
    stats: dict = {"trial_factor": budget.trial_factor, "oversampling": tau}
    for w in range(1, w_max + 1):
        ran_any = False
        for space, gens, s_min in plan:
            if best is not None and weight(best) <= w:
                break
            s = min(s_min + tau, n - w)
            if s < s_min or s < 1:
                continue
            ran_any = True
            count = math.ceil(budget.trial_factor * n * trial_count(n, s, w))
            for _ in range(count):
                rng = random.Random(budget.seed + trials)
                trials += 1
                found = _window_trial(space, gens, rng.sample(range(n), s))
                if found is None:
                    deficient += 1
                    continue
                for x in found:
                    if x not in space.degeneracy:
                        best = _better(best, space.to_pauli(x))
                if best is not None and weight(best) <= w:
                    break
        stats.update(trials=trials, rank_deficient=deficient, elapsed=time.monotonic() - start)
        if best is not None and weight(best) <= w:
            break
        if not ran_any:
            break
        if budget.wall_clock_limit is not None and time.monotonic() - start > budget.wall_clock_limit:
            stats["note"] = "wall clock"
            break
    if trials and deficient == trials:
        stats["warning"] = "every window was rank deficient"
    if best is None:
        return DistanceResult("upper_bound", "rw", d=None, note="no witness found", stats=stats)
    return _finish(stab, DistanceResult("upper_bound", "rw", d=weight(best), witness=best, stats=stats))


ENGINES = {
    "oracle": brute_force_distance,
    "lc": linked_cluster_distance,
    "bip": bipartition_distance,
    "rw": random_window_distance,
}
