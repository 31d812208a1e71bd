"""Excision intervals of adjacencies and the search for a sorting pair.

The sorting move of an adjacency (u v) cuts the gap after the twin of u and
the gap before the twin of v, excising everything in between.  An interval
records those two cut gaps as a closed range [lo, hi]; its content is the
sequence positions lo..hi-1.  Two intervals whose ranges cross induce one
block interchange equal to their two sorting moves run back to back, and
picking the pair well makes every such interchange shorten the remaining
distance by exactly one.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .genome import (
    Adjacency,
    Genome,
    InvalidGenomeError,
    MarkerOccurrence,
    _as_pair,
    _encode,
    adjacencies,
    validate_duplicated,
)
from .rearrange import BIStep, apply_dcj_make_double

# Content classifications.  "split" intervals hold exactly one copy of every
# marker of the genome; "self-contained" intervals hold both copies of every
# marker they touch.  Excising either kind leaves no sorting integration, so
# the partner search must avoid them.
INTERVAL_SPLIT = "split"
INTERVAL_SELF_CONTAINED = "self-contained"
INTERVAL_MIXED = "mixed"


class SortingPairError(RuntimeError):
    """No usable partner interval was found; breaks the solvability guarantee."""


@dataclass(frozen=True)
class AdjacencyInterval:
    """Cut-gap range [lo, hi] excised by the sorting move of ``owner``.

    ``closed`` distinguishes the case where the content includes the two
    defining twin markers (twin of the right marker sits before the twin of
    the left one) from the open case where it lies strictly between them.
    """

    owner: Adjacency
    lo: int
    hi: int
    closed: bool
    seq: tuple[MarkerOccurrence, ...] = field(repr=False, compare=False)

    @property
    def width(self) -> int:
        return self.hi - self.lo

    @property
    def content(self) -> tuple[MarkerOccurrence, ...]:
        return self.seq[self.lo : self.hi]

    def is_empty(self) -> bool:
        return self.lo == self.hi

    def describe(self) -> str:
        return f"adj={self.owner.label()} range=[{self.lo},{self.hi}]"


def _interval_bounds(pos: dict, seq, u, v) -> tuple[int, int, bool]:
    after_u_twin = pos[u.paralog()] + 1
    before_v_twin = pos[v.paralog()]
    closed = before_v_twin <= pos[u.paralog()]
    lo, hi = min(after_u_twin, before_v_twin), max(after_u_twin, before_v_twin)
    return lo, hi, closed


def interval_of(g: Genome, adj) -> AdjacencyInterval:
    """Interval of a non-telomeric adjacency of a single linear chromosome."""
    _, chrom = g.single_linear()
    u, v = _as_pair(adj)
    if u is None or v is None:
        raise ValueError("telomeric adjacencies define no interval")
    seq = chrom.sequence
    pos = {o: i for i, o in enumerate(seq)}
    if u not in pos or v not in pos or pos[v] != pos[u] + 1:
        raise ValueError(f"({u.token()} {v.token()}) is not an adjacency")
    lo, hi, closed = _interval_bounds(pos, seq, u, v)
    owner = Adjacency(u, v, 0, pos[v])
    return AdjacencyInterval(owner, lo, hi, closed, seq)


def interval_set(g: Genome) -> list[AdjacencyInterval]:
    """Intervals of all non-telomeric adjacencies, in genome order.

    A genome with n distinct markers defines exactly 2n - 1 of them.  Kept
    as a list: distinct adjacencies may define equal ranges.
    """
    validate_duplicated(g)
    _, chrom = g.single_linear()
    seq = chrom.sequence
    pos = {o: i for i, o in enumerate(seq)}
    out = []
    for gp in range(1, len(seq)):
        u, v = seq[gp - 1], seq[gp]
        lo, hi, closed = _interval_bounds(pos, seq, u, v)
        out.append(AdjacencyInterval(Adjacency(u, v, 0, gp), lo, hi, closed, seq))
    return out


def overlapping(i: AdjacencyInterval, j: AdjacencyInterval) -> bool:
    """True iff the closed gap ranges cross.

    Crossing means neither range contains the other and they meet; sharing a
    single cut gap counts, which is what lets two size-one intervals induce
    the adjacent-block interchange.
    """
    return (i.lo < j.lo <= i.hi < j.hi) or (j.lo < i.lo <= j.hi < i.hi)


def compatible(i: AdjacencyInterval, j: AdjacencyInterval) -> bool:
    """Overlap plus the two marker conditions keeping the moves independent.

    For i owning (a b) and j owning (x y): x must differ from the twin of a
    and y from the twin of b, which is exactly what keeps (x y) intact after
    the sorting move of (a b).
    """
    a, b = i.owner.left, i.owner.right
    x, y = j.owner.left, j.owner.right
    return overlapping(i, j) and x != a.paralog() and y != b.paralog()


def induced_bi(i: AdjacencyInterval, j: AdjacencyInterval) -> BIStep:
    """Cut gaps of the block interchange induced by two crossing intervals."""
    if not overlapping(i, j):
        raise ValueError("intervals do not overlap")
    if i.lo > j.lo:
        i, j = j, i
    return BIStep(i.lo, j.lo, i.hi, j.hi)


def classify_interval(g: Genome, interval: AdjacencyInterval) -> str:
    """Classify a non-empty interval by its content.

    Split: exactly one copy of every marker of the genome lies inside, so
    the excision separates every pair.  Self-contained: every marker touched
    has both copies inside.  Mixed: anything else.  Agrees with
    classify_by_excision, which simulates the move.
    """
    if interval.is_empty():
        raise ValueError("empty interval has no classification")
    counts: dict[int, int] = {}
    for o in interval.content:
        counts[o.id] = counts.get(o.id, 0) + 1
    n = g.marker_count()
    if len(counts) == n and all(c == 1 for c in counts.values()):
        return INTERVAL_SPLIT
    if all(c == 2 for c in counts.values()):
        return INTERVAL_SELF_CONTAINED
    return INTERVAL_MIXED


def interval_table(g: Genome) -> list[dict]:
    """Interval listing with classifications, for inspection and JSON output."""
    rows = []
    for iv in interval_set(g):
        kind = "empty" if iv.is_empty() else classify_interval(g, iv)
        rows.append(
            {
                "adjacency": iv.owner.label(),
                "lo": iv.lo,
                "hi": iv.hi,
                "closed": iv.closed,
                "kind": kind,
            }
        )
    return rows


def format_interval_table(g: Genome) -> str:
    """One line per interval: ``adj=(u v) range=[lo,hi] kind=...``."""
    return "".join(
        f"adj={r['adjacency']} range=[{r['lo']},{r['hi']}] kind={r['kind']}\n"
        for r in interval_table(g)
    )


def classify_by_excision(g: Genome, interval: AdjacencyInterval) -> str:
    """Simulation oracle for classify_interval.

    Performs the sorting move, then inspects every non-telomeric adjacency
    of both resulting chromosomes: split means the twins of its two markers
    always land on the opposite chromosome, self-contained means they always
    stay on the same one.
    """
    if interval.is_empty():
        raise ValueError("empty interval has no classification")
    after = apply_dcj_make_double(g, interval.owner)
    sides: dict[MarkerOccurrence, int] = {}
    for ci, c in enumerate(after.chromosomes):
        for o in c.sequence:
            sides[o] = ci
    all_opposite = True
    all_same = True
    for a in adjacencies(after):
        if a.is_telomeric():
            continue
        here = sides[a.left]
        lt, rt = sides[a.left.paralog()], sides[a.right.paralog()]
        if lt == here and rt == here:
            all_opposite = False
        elif lt != here and rt != here:
            all_same = False
        else:
            all_opposite = all_same = False
    if all_opposite:
        return INTERVAL_SPLIT
    if all_same:
        return INTERVAL_SELF_CONTAINED
    return INTERVAL_MIXED


# ---------------------------------------------------------------------------
# Sorting-pair search.  Integer core shared with the solver: occurrences are
# encoded as 2 * id + copy so the twin of x is x ^ 1.
# ---------------------------------------------------------------------------


def _compose_step(jlo: int, jhi: int, cut_in: int, cut_out: int) -> BIStep | None:
    """Block interchange equal to: excise [jlo, jhi), then integrate with the
    circle cut at cut_in and the remainder cut at cut_out.

    cut_in lies in [jlo, jhi], where both ends denote the circle junction;
    cut_out lies outside (jlo, jhi).  Returns None for the degenerate
    combination that would undo the excision.
    """
    junction = cut_in == jlo or cut_in == jhi
    if cut_out >= jhi:
        if junction:
            return None if cut_out == jhi else BIStep(jlo, jhi, jhi, cut_out)
        if cut_out == jhi:
            return BIStep(jlo, cut_in, cut_in, jhi)
        return BIStep(jlo, cut_in, jhi, cut_out)
    if junction:
        return None if cut_out == jlo else BIStep(cut_out, jlo, jlo, jhi)
    if cut_out == jlo:
        return BIStep(jlo, cut_in, cut_in, jhi)
    return BIStep(cut_out, jlo, cut_in, jhi)


def _self_contained(seq: list[int], pos: dict[int, int], lo: int, hi: int) -> bool:
    for p in range(lo, hi):
        if not lo <= pos[seq[p] ^ 1] < hi:
            return False
    return True


def _find_pair_core(seq: list[int], require_large: bool = True):
    """Pick the sorting pair on an integer-encoded reduced chromosome.

    Returns (owner gap of the first interval, owner gap of the partner or
    None when the partner is the junction adjacency created by the first
    move, induced BIStep).  The first interval is the narrowest one that is
    not self-contained, ties broken by smaller lo; the partner is the first
    adjacency in genome order whose sorting move reintegrates the excised
    circle, preferring partners whose gap range crosses the first one's.
    """
    m = len(seq)
    if require_large and m // 2 <= 3:
        raise InvalidGenomeError("sorting pair needs more than 3 markers")
    pos = {o: i for i, o in enumerate(seq)}

    los = [0] * m
    his = [0] * m
    order = []
    for gp in range(1, m):
        a = pos[seq[gp - 1] ^ 1] + 1
        b = pos[seq[gp] ^ 1]
        lo, hi = (a, b) if a < b else (b, a)
        if lo == hi:
            raise InvalidGenomeError("genome is not reduced")
        los[gp], his[gp] = lo, hi
        order.append((hi - lo, lo, gp))
    order.sort()

    chosen = 0
    for _, lo, gp in order:
        if not _self_contained(seq, pos, lo, his[gp]):
            chosen = gp
            break
    else:
        raise SortingPairError("every interval is self-contained")
    jlo, jhi = los[chosen], his[chosen]
    a_twin = seq[chosen - 1] ^ 1
    b_twin = seq[chosen] ^ 1

    def candidate_cuts(x: int, y: int):
        # cut sites of the partner move, or None if it does not reintegrate
        if x == a_twin or y == b_twin:
            return None
        px, py = pos[x ^ 1], pos[y ^ 1]
        inside_x = jlo <= px < jhi
        inside_y = jlo <= py < jhi
        if inside_x == inside_y:
            return None
        if inside_x:
            return px + 1, py
        return py, px + 1

    fallback = None
    for gp in range(1, m):
        if gp == chosen:
            continue
        cuts = candidate_cuts(seq[gp - 1], seq[gp])
        if cuts is None:
            continue
        step = _compose_step(jlo, jhi, *cuts)
        if step is None:
            continue
        klo, khi = los[gp], his[gp]
        if (jlo < klo <= jhi < khi) or (klo < jlo <= khi < jhi):
            return chosen, gp, step
        if fallback is None:
            fallback = gp, step
    if fallback is not None:
        return chosen, fallback[0], fallback[1]

    # Last resort: the junction adjacency that the excision itself creates.
    open_case = pos[seq[chosen - 1] ^ 1] < pos[seq[chosen] ^ 1]
    if open_case:
        junction = (seq[jhi - 1], seq[jlo])  # circle wrap join
    else:
        junction = (
            seq[jlo - 1] if jlo > 0 else None,  # linear join
            seq[jhi] if jhi < m else None,
        )
    if junction[0] is not None and junction[1] is not None:
        cuts = candidate_cuts(*junction)
        if cuts is not None:
            step = _compose_step(jlo, jhi, *cuts)
            if step is not None:
                return chosen, None, step
    raise SortingPairError("no reintegrating partner exists")


def find_sorting_pair(g: Genome) -> tuple[AdjacencyInterval, AdjacencyInterval]:
    """The pair of intervals whose induced block interchange is sorting.

    Requires a reduced genome with more than 3 markers.  The returned pair
    is checked: running the two sorting moves back to back must raise the
    cycle count of the adjacency graph by exactly 2.
    """
    from .graph import build_adjacency_graph

    validate_duplicated(g)
    _, chrom = g.single_linear()
    seq = _encode(chrom.sequence)
    chosen, partner, _ = _find_pair_core(seq)
    if partner is None:
        raise SortingPairError(
            "only the junction adjacency reintegrates; no interval partner"
        )
    ivs = interval_set(g)
    first = ivs[chosen - 1]
    second = ivs[partner - 1]

    before = build_adjacency_graph(g).cycles
    mid = apply_dcj_make_double(g, first.owner)
    after = apply_dcj_make_double(mid, second.owner)
    gained = build_adjacency_graph(after).cycles - before
    if gained != 2:
        raise SortingPairError(f"pair gains {gained} cycles instead of 2")
    return first, second
