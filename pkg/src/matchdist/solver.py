"""Branch-and-bound driver approximating the matching distance.

The matching distance of two bi-filtrations is the supremum over all
slices of the bottleneck distance between the weighted restrictions. The
driver covers the slice space with four parameter boxes, evaluates the
bottleneck distance at each box center, bounds the distance over the box,
and subdivides boxes whose bound exceeds the current pruning threshold:
rho + eps in absolute mode, (1 + eps) * rho in relative mode, where rho is
the largest evaluated distance so far.

Every queue entry carries the tightest bound certified for its region by
any ancestor ("inherited"); a box's certified bound is the minimum of its
own bound and the inherited one. This keeps the reported global upper
bound monotone non-increasing and lets fully certified subtrees retire
without rescanning critical values.
"""

from __future__ import annotations

import heapq
import math
import threading
import time
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from .bottleneck import bottleneck_distance
from .bounds import BoundKind, box_bound
from .complexes import BiFiltration
from .errors import InvalidConfig
from .persistence import diagram
from .slices import ParamBox, Slice, center, initial_boxes, restrict, subdivide

INF = float("inf")


def eval_slice(F1: BiFiltration, F2: BiFiltration, L: Slice, dim: int = 0) -> float:
    """Bottleneck distance between the weighted restrictions onto L."""
    d1 = diagram(restrict(F1, L), dim)
    d2 = diagram(restrict(F2, L), dim)
    return bottleneck_distance(d1, d2)


@dataclass
class SolverConfig:
    """Knobs for :func:`approximate`.

    epsilon is the absolute error in absolute mode and the relative error
    in relative mode. max_level caps the subdivision depth; the relative
    variant cannot terminate when the matching distance is zero, so runs
    whose lower bound is still exactly zero stop once boxes reach
    zero_stall_level and report an honest residual instead.
    """

    epsilon: float = 0.1
    mode: str = "absolute"  # or "relative"
    bound_kind: BoundKind = BoundKind.LOCAL_LINEAR
    homology_dim: int = 0
    traversal: str = "bfs"  # or "dfs", "priority"
    budget_ms: Optional[float] = None
    max_level: int = 40
    zero_stall_level: int = 6
    trace: bool = False
    early_exit: bool = True
    threads: int = 1

    def validate(self) -> None:
        if not (self.epsilon > 0.0):
            raise InvalidConfig("epsilon must be positive")
        if self.mode not in ("absolute", "relative"):
            raise InvalidConfig(f"unknown mode {self.mode!r}")
        if self.traversal not in ("bfs", "dfs", "priority"):
            raise InvalidConfig(f"unknown traversal {self.traversal!r}")
        if self.budget_ms is not None:
            if self.traversal != "priority":
                raise InvalidConfig("a budget requires priority traversal")
            if self.budget_ms < 0:
                raise InvalidConfig("budget must be non-negative")
        if self.homology_dim < 0:
            raise InvalidConfig("homology dimension must be non-negative")
        if self.max_level < 0 or self.zero_stall_level < 0:
            raise InvalidConfig("level caps must be non-negative")
        if self.threads < 1:
            raise InvalidConfig("threads must be >= 1")
        if self.threads > 1 and self.traversal != "bfs":
            raise InvalidConfig("worker pool only supports bfs traversal")


@dataclass(frozen=True)
class TraceRow:
    call: int
    elapsed_ms: float
    rho: float
    upper: float
    rel_error: float
    box: ParamBox


@dataclass
class ApproxResult:
    """Outcome of a solver run.

    delta is the returned approximation: rho in absolute mode,
    (1 + eps) * rho in relative mode, or the honest residual upper bound
    when the run did not converge. residual_upper always upper-bounds the
    true matching distance.
    """

    delta: float
    rho: float
    residual_upper: float
    calls: int
    deepest_level: int
    deepest_evaluated_level: int
    not_converged: bool
    epsilon: float
    mode: str
    bound_kind: BoundKind
    elapsed_ms: float
    trace: Optional[list[TraceRow]] = None
    retired_boxes: list[tuple[ParamBox, float]] = field(default_factory=list)
    unresolved_boxes: list[tuple[ParamBox, float]] = field(default_factory=list)

    @property
    def rel_error(self) -> float:
        """Guaranteed relative error (residual_upper - rho) / rho."""
        if self.rho == 0.0:
            return INF
        return (self.residual_upper - self.rho) / self.rho


class _MaxTracker:
    """Maximum of a float multiset with lazy deletion."""

    def __init__(self):
        self._heap: list[float] = []
        self._counts: dict[float, int] = {}

    def add(self, v: float) -> None:
        heapq.heappush(self._heap, -v)
        self._counts[v] = self._counts.get(v, 0) + 1

    def remove(self, v: float) -> None:
        self._counts[v] -= 1

    def max(self) -> float:
        while self._heap and self._counts.get(-self._heap[0], 0) == 0:
            v = -heapq.heappop(self._heap)
            self._counts.pop(v, None)
        return -self._heap[0] if self._heap else -INF


class _RunState:
    def __init__(self, F1, F2, cfg: SolverConfig):
        self.F1, self.F2, self.cfg = F1, F2, cfg
        self.rho = 0.0
        self.calls = 0
        self.deepest_level = 0
        self.deepest_evaluated_level = 0
        self.not_converged = False
        self.trace: Optional[list[TraceRow]] = [] if cfg.trace else None
        self.retired: list[tuple[ParamBox, float]] = []
        self.unresolved: list[tuple[ParamBox, float]] = []
        self.t0 = time.perf_counter()
        self.cover = _MaxTracker()

    def elapsed_ms(self) -> float:
        return (time.perf_counter() - self.t0) * 1000.0

    def threshold(self) -> float:
        if self.cfg.mode == "absolute":
            return self.rho + self.cfg.epsilon
        return (1.0 + self.cfg.epsilon) * self.rho

    def do_eval(self, box: ParamBox, in_flight_cover: float) -> float:
        d = eval_slice(self.F1, self.F2, center(box), self.cfg.homology_dim)
        self.calls += 1
        if d > self.rho:
            self.rho = d
        self.deepest_evaluated_level = max(self.deepest_evaluated_level, box.level)
        if self.trace is not None:
            upper = max(self.threshold(), self.cover.max(), in_flight_cover)
            rel = INF if self.rho == 0.0 else (upper - self.rho) / self.rho
            self.trace.append(
                TraceRow(self.calls, self.elapsed_ms(), self.rho, upper, rel, box)
            )
        return d

    def own_bound(self, box: ParamBox, d: float, thr: float) -> float:
        threshold = thr if (self.cfg.early_exit and self.cfg.bound_kind is BoundKind.LOCAL_LINEAR) else None
        return box_bound(self.cfg.bound_kind, self.F1, self.F2, box, d, threshold=threshold)

    def finish(self) -> ApproxResult:
        cfg = self.cfg
        thr_final = self.threshold()
        if self.not_converged:
            worst_open = max((e for _, e in self.unresolved), default=-INF)
            residual = max(thr_final, worst_open)
            delta = residual
        else:
            residual = thr_final
            delta = self.rho if cfg.mode == "absolute" else (1.0 + cfg.epsilon) * self.rho
        return ApproxResult(
            delta=delta,
            rho=self.rho,
            residual_upper=residual,
            calls=self.calls,
            deepest_level=self.deepest_level,
            deepest_evaluated_level=self.deepest_evaluated_level,
            not_converged=self.not_converged,
            epsilon=cfg.epsilon,
            mode=cfg.mode,
            bound_kind=cfg.bound_kind,
            elapsed_ms=self.elapsed_ms(),
            trace=self.trace,
            retired_boxes=self.retired,
            unresolved_boxes=self.unresolved,
        )

    def stalled(self, box: ParamBox) -> bool:
        # the relative rule compares against (1 + eps) * rho = 0 while rho
        # is exactly zero, so no box would ever be pruned
        return (
            self.cfg.mode == "relative"
            and self.rho == 0.0
            and box.level >= self.cfg.zero_stall_level
        )


def _require_quadrant(F: BiFiltration) -> None:
    if F.n and (float(F.px.min()) < 0.0 or float(F.py.min()) < 0.0):
        raise ValueError("filtration has negative coordinates; normalize first")


def approximate(
    F1: BiFiltration, F2: BiFiltration, cfg: SolverConfig | None = None
) -> ApproxResult:
    """Approximate the matching distance of two normalized bi-filtrations.

    Absolute mode returns delta with dmatch - eps <= delta <= dmatch;
    relative mode returns delta with dmatch <= delta <= (1 + eps) * dmatch
    whenever it converges. Non-convergence (budget or level caps, or a
    relative run whose lower bound stays zero) is reported on the result,
    which then carries the honest residual upper bound as delta.
    """
    cfg = cfg or SolverConfig()
    cfg.validate()
    _require_quadrant(F1)
    _require_quadrant(F2)
    if cfg.threads > 1:
        return _run_parallel(F1, F2, cfg)
    if cfg.traversal == "priority":
        return _run_priority(F1, F2, cfg)
    return _run_fifo_lifo(F1, F2, cfg)


def _run_fifo_lifo(F1, F2, cfg) -> ApproxResult:
    st = _RunState(F1, F2, cfg)
    queue: deque[tuple[ParamBox, float]] = deque()
    for b in initial_boxes(F1, F2):
        queue.append((b, INF))
        st.cover.add(INF)

    while queue:
        box, inherited = queue.popleft() if cfg.traversal == "bfs" else queue.pop()
        st.cover.remove(inherited)
        d = st.do_eval(box, inherited)
        thr = st.threshold()
        if inherited <= thr:
            st.retired.append((box, inherited))
            continue
        eff = min(st.own_bound(box, d, thr), inherited)
        if eff <= thr:
            st.retired.append((box, eff))
            continue
        if st.stalled(box):
            st.not_converged = True
            st.unresolved.append((box, eff))
            for b, inh in queue:
                if inh == INF:
                    # never covered by any ancestor bound (possible under
                    # dfs); evaluate once so the residual stays finite
                    d2 = st.do_eval(b, inh)
                    inh = st.own_bound(b, d2, st.threshold())
                st.unresolved.append((b, inh))
            break
        if box.level >= cfg.max_level:
            st.not_converged = True
            st.unresolved.append((box, eff))
            continue
        for child in subdivide(box):
            st.deepest_level = max(st.deepest_level, child.level)
            queue.append((child, eff))
            st.cover.add(eff)
    return st.finish()


def _run_priority(F1, F2, cfg) -> ApproxResult:
    st = _RunState(F1, F2, cfg)
    heap: list[tuple[float, int, ParamBox, float]] = []
    seq = 0

    def enqueue(box: ParamBox, parent_eff: float) -> None:
        nonlocal seq
        d = st.do_eval(box, parent_eff)
        eff = min(st.own_bound(box, d, st.threshold()), parent_eff)
        heapq.heappush(heap, (-eff, seq, box, eff))
        st.cover.add(eff)
        seq += 1

    for b in initial_boxes(F1, F2):
        enqueue(b, INF)

    while heap:
        if cfg.budget_ms is not None and st.elapsed_ms() >= cfg.budget_ms:
            st.not_converged = True
            for _, _, b, e in heap:
                st.unresolved.append((b, e))
            break
        _, _, box, eff = heapq.heappop(heap)
        st.cover.remove(eff)
        if eff <= st.threshold():
            st.retired.append((box, eff))
            continue
        if st.stalled(box):
            st.not_converged = True
            st.unresolved.append((box, eff))
            for _, _, b, e in heap:
                st.unresolved.append((b, e))
            break
        if box.level >= cfg.max_level:
            st.not_converged = True
            st.unresolved.append((box, eff))
            continue
        for child in subdivide(box):
            st.deepest_level = max(st.deepest_level, child.level)
            enqueue(child, eff)
    return st.finish()


def _run_parallel(F1, F2, cfg) -> ApproxResult:
    """Batched breadth-first variant with a thread pool.

    Eval calls are pure; the shared lower bound is merged under a lock and
    pruning uses the snapshot at decision time, which never prunes a box
    the sequential run would have kept. Call counts and traces are
    non-deterministic.
    """
    st = _RunState(F1, F2, cfg)
    lock = threading.Lock()

    def process(entry: tuple[ParamBox, float]):
        box, inherited = entry
        d = eval_slice(F1, F2, center(box), cfg.homology_dim)
        with lock:
            st.calls += 1
            if d > st.rho:
                st.rho = d
            st.deepest_evaluated_level = max(st.deepest_evaluated_level, box.level)
            thr = st.threshold()
            call_no = st.calls
            elapsed = st.elapsed_ms()
        if inherited <= thr:
            return ("retired", box, inherited, call_no, elapsed)
        eff = min(st.own_bound(box, d, thr), inherited)
        if eff <= thr:
            return ("retired", box, eff, call_no, elapsed)
        if box.level >= cfg.max_level:
            return ("unresolved", box, eff, call_no, elapsed)
        return ("split", box, eff, call_no, elapsed)

    frontier: list[tuple[ParamBox, float]] = [(b, INF) for b in initial_boxes(F1, F2)]
    with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
        while frontier:
            # the inherited bounds cover every region still in flight
            batch_cover = max(inh for _, inh in frontier)
            results = list(pool.map(process, frontier))
            next_frontier: list[tuple[ParamBox, float]] = []
            for verdict, box, eff, call_no, elapsed in results:
                if st.trace is not None:
                    upper = max(st.threshold(), batch_cover)
                    rel = INF if st.rho == 0.0 else (upper - st.rho) / st.rho
                    st.trace.append(TraceRow(call_no, elapsed, st.rho, upper, rel, box))
                if verdict == "retired":
                    st.retired.append((box, eff))
                elif verdict == "unresolved":
                    st.not_converged = True
                    st.unresolved.append((box, eff))
                else:
                    if st.stalled(box):
                        st.not_converged = True
                        st.unresolved.append((box, eff))
                        continue
                    for child in subdivide(box):
                        st.deepest_level = max(st.deepest_level, child.level)
                        next_frontier.append((child, eff))
            frontier = next_frontier
    return st.finish()


def budgeted_approximate(
    F1: BiFiltration,
    F2: BiFiltration,
    epsilon: float,
    budget_ms: float,
    *,
    bound_kind: BoundKind = BoundKind.LOCAL_LINEAR,
    homology_dim: int = 0,
) -> ApproxResult:
    """Best-effort run under a wall-clock budget.

    Runs the relative variant with priority traversal (largest certified
    bound first) and tracing enabled. epsilon only retires boxes that are
    already certified; the meaningful output is the pair (rho,
    residual_upper) and the guaranteed relative error, whatever they are
    when the budget runs out. A large enough budget drains the queue and
    reproduces the plain relative result.
    """
    cfg = SolverConfig(
        epsilon=epsilon,
        mode="relative",
        bound_kind=bound_kind,
        homology_dim=homology_dim,
        traversal="priority",
        budget_ms=budget_ms,
        trace=True,
    )
    return approximate(F1, F2, cfg)


def reduction_rate(result: ApproxResult) -> float:
    """Fraction of the level-k brute force avoided: 1 - calls / 4**k with
    k the deepest level actually evaluated."""
    return 1.0 - result.calls / math.pow(4.0, result.deepest_evaluated_level)
