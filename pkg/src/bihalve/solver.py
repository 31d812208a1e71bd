"""Optimal halving scenarios built from repeated sorting block interchanges.

The loop works on the reduced genome: pick a sorting pair of intervals,
perform the induced block interchange, reduce again.  Each round the cycle
count of the adjacency graph rises by exactly two, so the remaining distance
drops by one; when two or three markers remain a single exhaustive search
finds the closing move.  Steps are emitted in the coordinates of the
original, unreduced genome.

The loop body is vectorized with numpy so the quadratic total stays cheap
at tens of thousands of markers; the scalar reference implementation of the
pair search lives in the intervals module and the two are kept in lockstep
by tests.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .genome import (
    Chromosome,
    Genome,
    InvalidGenomeError,
    LINEAR,
    MarkerOccurrence,
    validate_duplicated,
)
from .graph import halving_summary
from .intervals import SortingPairError, _compose_step
from .rearrange import BIStep, Scenario


@dataclass(frozen=True)
class TraceEntry:
    """One solver round: the reduced genome it saw and the step it chose."""

    reduced: Genome
    reduced_step: BIStep
    step: BIStep


@dataclass(frozen=True)
class SolveResult:
    scenario: Scenario
    distance: int
    trace: tuple[TraceEntry, ...] | None

    @property
    def steps(self) -> tuple[BIStep, ...]:
        return self.scenario.steps


def solve_distance_only(g: Genome) -> int:
    """floor((n - C) / 2) without constructing a scenario."""
    summary = halving_summary(g)
    if summary.bi_halving is None:
        raise InvalidGenomeError("distance needs a single linear chromosome")
    return summary.bi_halving


def _is_tandem_ints(seq) -> bool:
    m = len(seq)
    if m % 2:
        return False
    half = m // 2
    first = [o >> 1 for o in seq[:half]]
    return first == [o >> 1 for o in seq[half:]] and len(set(first)) == half


def _apply_bi_ints(seq: list[int], step: BIStep) -> list[int]:
    g1, g2, g3, g4 = step
    return seq[:g1] + seq[g3:g4] + seq[g2:g3] + seq[g1:g2] + seq[g4:]


def _final_bi_ints(seq: list[int]) -> BIStep:
    m = len(seq)
    for g2 in range(1, m + 1):
        for g1 in range(g2):
            for g3 in range(g2, m):
                for g4 in range(g3 + 1, m + 1):
                    step = BIStep(g1, g2, g3, g4)
                    if _is_tandem_ints(_apply_bi_ints(seq, step)):
                        return step
    raise SortingPairError("no single block interchange reaches a tandem genome")


def _check_reduced(seq: list[int]) -> None:
    pairs = {(seq[i], seq[i + 1]) for i in range(len(seq) - 1)}
    for left, right in pairs:
        if (left ^ 1, right ^ 1) in pairs:
            raise InvalidGenomeError("genome is not reduced")


def final_bi(g: Genome) -> BIStep:
    """Closing move for a reduced genome with two or three markers.

    Found by exhaustive search over the at most 70 gap quadruples; the
    distance formula guarantees one of them lands on a tandem genome.
    """
    validate_duplicated(g)
    if len(g.chromosomes) != 1 or not g.chromosomes[0].is_linear():
        raise InvalidGenomeError("closing move needs a single linear chromosome")
    seq = [o.id * 2 + o.copy for o in g.chromosomes[0].sequence]
    _check_reduced(seq)
    if len(seq) // 2 not in (2, 3):
        raise InvalidGenomeError("closing move applies to 2 or 3 markers only")
    return _final_bi_ints(seq)


class _Solver:
    """Mutable state of one halving run, on densely relabeled markers."""

    def __init__(self, g: Genome):
        raw = g.chromosomes[0].sequence
        ids = np.array([o.id for o in raw], dtype=np.int64)
        copies = np.array([o.copy for o in raw], dtype=np.int64)
        self.uniq, inverse = np.unique(ids, return_inverse=True)
        self.n = len(self.uniq)
        self.max_orig = int(self.uniq[-1])
        self.work = (inverse + 1) * 2 + copies
        # composites merge at least two markers each, so ids stay below 2n + 1
        self.pos = np.zeros(2 * (2 * self.n + 2), dtype=np.int64)
        self.width = np.ones(2 * self.n + 2, dtype=np.int64)
        self.fresh = self.n + 1
        self.red = self.work.copy()

    def _refill_pos(self) -> None:
        self.pos[self.red] = np.arange(len(self.red))

    def reduce(self) -> None:
        """Collapse runs of double-adjacencies in the working reduced genome."""
        red = self.red
        m = len(red)
        self._refill_pos()
        pos = self.pos
        doubled = pos[red[:-1] ^ 1] + 1 == pos[red[1:] ^ 1]
        if not doubled.any():
            return
        idx = np.flatnonzero(doubled)
        breaks = np.flatnonzero(np.diff(idx) > 1)
        starts = np.concatenate(([0], breaks + 1))
        ends = np.concatenate((breaks, [len(idx) - 1]))
        runs = [(int(idx[s]), int(idx[e]) + 1) for s, e in zip(starts, ends)]
        run_starts = np.array([a for a, _ in runs])
        run_ends = np.array([b for _, b in runs])

        def run_containing(p: int) -> int:
            k = int(np.searchsorted(run_starts, p, side="right")) - 1
            assert k >= 0 and p <= run_ends[k]
            return k

        occ_of_run: list[int | None] = [None] * len(runs)
        for ri, (a, b) in enumerate(runs):
            if occ_of_run[ri] is not None:
                continue
            partner = run_containing(int(pos[red[a] ^ 1]))
            assert partner != ri
            flag = int(red[a]) & 1
            occ_of_run[ri] = self.fresh * 2 + flag
            occ_of_run[partner] = self.fresh * 2 + (flag ^ 1)
            self.width[self.fresh] = int(self.width[red[a : b + 1] >> 1].sum())
            self.fresh += 1

        keep = np.ones(m, dtype=bool)
        out = red.copy()
        for ri, (a, b) in enumerate(runs):
            keep[a + 1 : b + 1] = False
            out[a] = occ_of_run[ri]
        self.red = out[keep]

    def pick_step(self) -> BIStep:
        """Reduced-coordinate block interchange of the next sorting pair.

        Mirrors the scalar search in intervals._find_pair_core: narrowest
        interval that is not self-contained (ties by smaller lo), then the
        first adjacency in genome order whose sorting move reintegrates the
        excised circle, preferring gap-range-crossing partners, with the
        junction adjacency of the excision as last resort.
        """
        red = self.red
        m = len(red)
        self._refill_pos()
        pos = self.pos
        left = red[:-1]
        right = red[1:]
        after_left_twin = pos[left ^ 1] + 1
        before_right_twin = pos[right ^ 1]
        lo = np.minimum(after_left_twin, before_right_twin)
        hi = np.maximum(after_left_twin, before_right_twin)

        chosen = -1
        for k in np.lexsort((lo, hi - lo)):
            twins = pos[red[int(lo[k]) : int(hi[k])] ^ 1]
            if not ((twins >= lo[k]) & (twins < hi[k])).all():
                chosen = int(k)
                break
        if chosen < 0:
            raise SortingPairError("every interval is self-contained")
        jlo, jhi = int(lo[chosen]), int(hi[chosen])
        a_twin = int(red[chosen]) ^ 1
        b_twin = int(red[chosen + 1]) ^ 1

        px = after_left_twin - 1
        py = before_right_twin
        in_x = (px >= jlo) & (px < jhi)
        in_y = (py >= jlo) & (py < jhi)
        genuine = (left != a_twin) & (right != b_twin) & (in_x ^ in_y)
        genuine[chosen] = False
        crossing = ((jlo < lo) & (lo <= jhi) & (jhi < hi)) | (
            (lo < jlo) & (jlo <= hi) & (hi < jhi)
        )

        for pool in (genuine & crossing, genuine & ~crossing):
            for cand in np.flatnonzero(pool):
                cut_x, cut_y = int(px[cand]) + 1, int(py[cand])
                cut_in, cut_out = (
                    (cut_x, cut_y) if in_x[cand] else (cut_y, cut_x)
                )
                step = _compose_step(jlo, jhi, cut_in, cut_out)
                if step is not None:
                    return step

        # junction adjacency created by the excision itself
        if int(px[chosen]) < int(py[chosen]):
            junction = (int(red[jhi - 1]), int(red[jlo]))
        elif jlo > 0 and jhi < m:
            junction = (int(red[jlo - 1]), int(red[jhi]))
        else:
            junction = None
        if junction is not None:
            x, y = junction
            if x != a_twin and y != b_twin:
                jx, jy = int(pos[x ^ 1]), int(pos[y ^ 1])
                inside_x = jlo <= jx < jhi
                inside_y = jlo <= jy < jhi
                if inside_x != inside_y:
                    cut_in, cut_out = (
                        (jx + 1, jy) if inside_x else (jy, jx + 1)
                    )
                    step = _compose_step(jlo, jhi, cut_in, cut_out)
                    if step is not None:
                        return step
        raise SortingPairError("no reintegrating partner exists")

    def lift(self, step: BIStep) -> BIStep:
        spans = self.width[self.red >> 1]
        prefix = np.concatenate(([0], np.cumsum(spans)))
        return BIStep(*(int(prefix[gap]) for gap in step))

    def apply(self, step: BIStep, lifted: BIStep) -> None:
        self.red = _np_bi(self.red, step)
        self.work = _np_bi(self.work, lifted)

    def decode_reduced(self) -> Genome:
        seq = []
        for occ in map(int, self.red):
            mid, flag = occ >> 1, occ & 1
            if mid <= self.n:
                mid = int(self.uniq[mid - 1])
            else:
                mid = self.max_orig + (mid - self.n)
            seq.append(MarkerOccurrence(mid, flag))
        return Genome((Chromosome(LINEAR, tuple(seq)),))


def _np_bi(arr: np.ndarray, s: BIStep) -> np.ndarray:
    return np.concatenate(
        (arr[: s.g1], arr[s.g3 : s.g4], arr[s.g2 : s.g3], arr[s.g1 : s.g2], arr[s.g4 :])
    )


def halve(g: Genome, trace: bool = False) -> SolveResult:
    """Shortest block-interchange scenario to a tandem-duplicated genome.

    The scenario length always equals floor((n - C) / 2) for the input and
    the final genome is tandem-duplicated; steps use gap coordinates of the
    genome they are applied to, starting from the unreduced input.
    """
    validate_duplicated(g)
    if len(g.chromosomes) != 1 or not g.chromosomes[0].is_linear():
        raise InvalidGenomeError("halving needs a single linear chromosome")
    expected = solve_distance_only(g)

    state = _Solver(g)
    state.reduce()
    steps: list[BIStep] = []
    entries: list[TraceEntry] = []

    while len(state.red) > 6:
        step = state.pick_step()
        lifted = state.lift(step)
        if trace:
            entries.append(TraceEntry(state.decode_reduced(), step, lifted))
        steps.append(lifted)
        before = len(state.red)
        state.apply(step, lifted)
        state.reduce()
        assert len(state.red) <= before - 4, "interchange created no double-adjacencies"

    if len(state.red) in (4, 6):
        step = _final_bi_ints([int(x) for x in state.red])
        lifted = state.lift(step)
        if trace:
            entries.append(TraceEntry(state.decode_reduced(), step, lifted))
        steps.append(lifted)
        state.apply(step, lifted)

    ids = state.work >> 1
    half = len(ids) // 2
    assert len(ids) % 2 == 0 and np.array_equal(ids[:half], ids[half:]), (
        "scenario did not reach a tandem genome"
    )
    assert len(steps) == expected, "scenario length misses the distance bound"
    return SolveResult(
        Scenario(g, tuple(steps)),
        expected,
        tuple(entries) if trace else None,
    )
