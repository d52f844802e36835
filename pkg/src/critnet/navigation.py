"""Walk from any start node to a score-1 node using only per-node state.

At each hop: if the current node points at another node as lowest-kappa,
follow the pointer; if it points at itself and has score 1, stop; otherwise
jump to a random neighborhood member that indicated someone else (such a
member always exists while the score is below 1).
"""

from __future__ import annotations

import csv
import enum
import io
import logging
from dataclasses import dataclass
from pathlib import Path

from .criticality import CriticalityReport, round_significant
from .graph import Graph, h_neighborhood

logger = logging.getLogger(__name__)

_MASK64 = (1 << 64) - 1


class SplitMix64:
    """Tiny deterministic 64-bit generator (splitmix recurrence)."""

    def __init__(self, seed: int) -> None:
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Uniform integer in [0, n), bias-free via rejection."""
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % n


class NavigationError(RuntimeError):
    """Navigation contract violated (revisit, or misuse of a case-(ii) helper)."""


class StepKind(enum.Enum):
    FOLLOW_POINTER = "follow_pointer"
    JUMP_TO_KNOWER = "jump_to_knower"


@dataclass(frozen=True)
class NavigationTrace:
    path: tuple[int, ...]
    steps: tuple[StepKind, ...]
    terminal: int
    rng_seed: int


def knowers_of_lower_kappa(g: Graph, report: CriticalityReport, v: int) -> set[int]:
    """Members of v's neighborhood whose own pointer is not v.

    Only meaningful when v points at itself (a local kappa minimum); those
    members saw a lower kappa elsewhere, so the set is non-empty exactly
    when v's score is below 1.
    """
    assessment = report.assessments[v]
    if assessment.lowest_k_pointer != v:
        raise NavigationError(
            f"knowers_of_lower_kappa requires a self-pointing node, but {v} points at "
            f"{assessment.lowest_k_pointer}"
        )
    members = h_neighborhood(g, v, report.h).graph.node_ids
    return {int(u) for u in members if report.assessments[int(u)].lowest_k_pointer != v}


def navigate(
    g: Graph,
    report: CriticalityReport,
    start: int,
    rng_seed: int,
    *,
    strict: bool = True,
) -> NavigationTrace:
    """Navigate from `start` to a node with score 1.

    Pointer-following steps must make strict progress in the
    (rounded kappa, node id) order; with strict=True a violation raises,
    otherwise it is logged and the walk continues. A revisited node always
    raises, since it would mean the walk can loop.
    """
    g.index_of(start)
    assessments = report.assessments
    rng = SplitMix64(rng_seed)

    def order_key(node: int) -> tuple[float, int]:
        return (round_significant(assessments[node].kappa), node)

    current = start
    path = [start]
    steps: list[StepKind] = []
    visited = {start}
    while True:
        assessment = assessments[current]
        pointer = assessment.lowest_k_pointer
        if pointer != current:
            nxt, kind = pointer, StepKind.FOLLOW_POINTER
            if not order_key(nxt) < order_key(current):
                msg = (
                    f"pointer step {current} -> {nxt} does not decrease "
                    f"(kappa, id): {order_key(current)} -> {order_key(nxt)}"
                )
                if strict:
                    raise NavigationError(msg)
                logger.warning(msg)
        else:
            if assessment.indications == assessment.neighborhood_size:
                break
            knowers = sorted(knowers_of_lower_kappa(g, report, current))
            nxt, kind = knowers[rng.below(len(knowers))], StepKind.JUMP_TO_KNOWER
        if nxt in visited:
            raise NavigationError(
                f"node {nxt} would be visited twice (path so far: {path}); "
                f"the walk should never loop"
            )
        path.append(nxt)
        steps.append(kind)
        visited.add(nxt)
        current = nxt
    return NavigationTrace(
        path=tuple(path), steps=tuple(steps), terminal=current, rng_seed=rng_seed
    )


def trace_to_csv(trace: NavigationTrace, report: CriticalityReport) -> str:
    """Render a trace as CSV rows: step index, node id, step kind, kappa."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["step", "node_id", "step_kind", "kappa"])
    for i, node in enumerate(trace.path):
        kind = "start" if i == 0 else trace.steps[i - 1].value
        writer.writerow([i, node, kind, repr(report.assessments[node].kappa)])
    return buf.getvalue()


def write_trace_csv(trace: NavigationTrace, report: CriticalityReport, path: str | Path) -> None:
    Path(path).write_text(trace_to_csv(trace, report), encoding="utf-8")
