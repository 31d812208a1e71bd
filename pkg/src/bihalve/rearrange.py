"""Block interchanges, cut-and-join moves, and rearrangement scenarios.

A block interchange swaps two non-overlapping blocks of a linear chromosome
and is identified by its four cut gaps.  It decomposes into two cut-and-join
moves: an excision that circularizes a segment, followed by an integration
that absorbs the circle back.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .genome import (
    CIRCULAR,
    LINEAR,
    Chromosome,
    Genome,
    InvalidGenomeError,
    MarkerOccurrence,
    adjacency_pairs,
    is_tandem_duplicated,
    _as_pair,
)


class InvalidStepError(ValueError):
    """A rearrangement step that cannot be applied to the current genome."""


class BIStep(NamedTuple):
    """Block interchange given by cut gaps g1 < g2 <= g3 < g4.

    Swaps block [g1, g2) with block [g3, g4); g2 == g3 is the adjacent-block
    case, a transposition.
    """

    g1: int
    g2: int
    g3: int
    g4: int

    def check(self, length: int) -> None:
        g1, g2, g3, g4 = self
        if not (0 <= g1 < g2 <= g3 < g4 <= length):
            raise InvalidStepError(
                f"cut gaps must satisfy 0 <= g1 < g2 <= g3 < g4 <= {length}, "
                f"got {tuple(self)}"
            )


def apply_bi(g: Genome, step: BIStep) -> Genome:
    """Swap the two blocks of the unique linear chromosome."""
    ci, chrom = g.single_linear()
    step = BIStep(*step)
    step.check(len(chrom.sequence))
    g1, g2, g3, g4 = step
    s = chrom.sequence
    new = s[:g1] + s[g3:g4] + s[g2:g3] + s[g1:g2] + s[g4:]
    chroms = list(g.chromosomes)
    chroms[ci] = Chromosome(LINEAR, new)
    return Genome(tuple(chroms))


@dataclass(frozen=True)
class DCJStep:
    """One cut-and-join move: two cut sites plus the adjacencies it forms.

    A cut site is (chromosome index, gap).  Orientation is preserved: the
    four exposed ends rejoin the only other way that keeps every marker
    facing the same direction.
    """

    kind: str  # "excision" | "integration" | "general"
    cuts: tuple[tuple[int, int], tuple[int, int]]
    joins: tuple[tuple, ...] = ()


def apply_dcj(g: Genome, cut1: tuple[int, int], cut2: tuple[int, int]) -> Genome:
    """Cut two gaps and rejoin the exposed ends the non-trivial way.

    Both cuts on one linear chromosome excise the middle as a circle; a
    linear and a circular cut integrate the opened circle at the linear gap;
    two cuts on one circle split it; cuts on two circles merge them.  An
    excision that empties the linear chromosome drops the empty remainder.
    """
    (c1, p), (c2, q) = cut1, cut2
    chroms = list(g.chromosomes)
    for ci, gap in ((c1, p), (c2, q)):
        if not 0 <= ci < len(chroms):
            raise InvalidStepError(f"no chromosome {ci}")
        limit = len(chroms[ci].sequence)
        top = limit if chroms[ci].is_linear() else limit - 1
        if not 0 <= gap <= top:
            raise InvalidStepError(f"gap {gap} out of range for chromosome {ci}")

    if c1 == c2:
        c = chroms[c1]
        if p == q:
            raise InvalidStepError("the two cuts must differ")
        p, q = min(p, q), max(p, q)
        if c.is_linear():
            rest = c.sequence[:p] + c.sequence[q:]
            circle = Chromosome(CIRCULAR, c.sequence[p:q])
            new = chroms[:c1] + chroms[c1 + 1 :]
            if rest:
                new.insert(c1, Chromosome(LINEAR, rest))
            new.append(circle)
        else:
            first = Chromosome(CIRCULAR, c.sequence[p:q])
            second = Chromosome(CIRCULAR, c.sequence[q:] + c.sequence[:p])
            new = chroms[:c1] + [first] + chroms[c1 + 1 :] + [second]
        return Genome(tuple(new))

    a, b = chroms[c1], chroms[c2]
    if a.is_linear() and b.is_linear():
        raise InvalidStepError("cannot rejoin across two linear chromosomes")
    if b.is_linear():
        c1, c2, p, q, a, b = c2, c1, q, p, b, a
    if a.is_linear():
        # integration of circle b at gap p of the linear chromosome
        opened = b.sequence[q:] + b.sequence[:q]
        merged = Chromosome(LINEAR, a.sequence[:p] + opened + a.sequence[p:])
    else:
        opened_a = a.sequence[p:] + a.sequence[:p]
        opened_b = b.sequence[q:] + b.sequence[:q]
        merged = Chromosome(CIRCULAR, opened_a + opened_b)
    new = [ch for i, ch in enumerate(chroms) if i not in (c1, c2)]
    new.insert(min(c1, c2), merged)
    return Genome(tuple(new))


def apply_dcj_step(g: Genome, step: DCJStep) -> Genome:
    return apply_dcj(g, *step.cuts)


def _locate(g: Genome) -> dict[MarkerOccurrence, tuple[int, int]]:
    where = {}
    for ci, c in enumerate(g.chromosomes):
        for i, o in enumerate(c.sequence):
            where[o] = (ci, i)
    return where


def apply_dcj_make_double(g: Genome, adj) -> Genome:
    """The sorting move for an adjacency (u v): cut after the twin of u and
    before the twin of v, forming (u-twin v-twin) and making (u v) double.

    On a single linear chromosome this excises the adjacency's interval as a
    circle; when the twins sit on different chromosomes it is the
    integration gluing them back into one.
    """
    u, v = _as_pair(adj)
    if u is None or v is None:
        raise InvalidStepError("telomeric adjacencies have no sorting move")
    pairs = adjacency_pairs(g)
    if (u, v) not in pairs:
        raise InvalidStepError(f"({u.token()} {v.token()}) is not an adjacency")
    if (u.paralog(), v.paralog()) in pairs:
        raise InvalidStepError(
            f"({u.token()} {v.token()}) is already a double-adjacency"
        )
    where = _locate(g)
    cu, pu = where[u.paralog()]
    cv, pv = where[v.paralog()]
    mu = len(g.chromosomes[cu].sequence)
    after_u = pu + 1 if g.chromosomes[cu].is_linear() else (pu + 1) % mu
    return apply_dcj(g, (cu, after_u), (cv, pv))


def bi_to_dcj_pair(g: Genome, step: BIStep) -> tuple[DCJStep, DCJStep]:
    """Decompose a block interchange into excision plus integration.

    The excision cuts gaps (g1, g3), circularizing [g1, g3); the integration
    cuts the circle at the old g2 boundary and the linear remainder at the
    old g4.  Applying both in order equals apply_bi.
    """
    ci, chrom = g.single_linear()
    step = BIStep(*step)
    s = chrom.sequence
    m = len(s)
    step.check(m)
    g1, g2, g3, g4 = step

    excision = DCJStep(
        "excision",
        ((ci, g1), (ci, g3)),
        (
            (s[g1 - 1] if g1 > 0 else None, s[g3]),
            (s[g3 - 1], s[g1]),
        ),
    )
    circle_index = len(g.chromosomes)
    circle_cut = (g2 - g1) % (g3 - g1)
    linear_cut = g4 - (g3 - g1)
    opened_first = s[g2] if g2 < g3 else s[g1]
    integration = DCJStep(
        "integration",
        ((circle_index, circle_cut), (ci, linear_cut)),
        (
            (s[g4 - 1], opened_first),
            (s[g2 - 1], s[g4] if g4 < m else None),
        ),
    )
    return excision, integration


# ---------------------------------------------------------------------------
# Scenarios
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Scenario:
    """An ordered list of block interchanges applied to an initial genome."""

    initial: Genome
    steps: tuple[BIStep, ...]

    def __len__(self):
        return len(self.steps)


def apply_scenario(sc: Scenario) -> Genome:
    g = sc.initial
    for i, step in enumerate(sc.steps):
        try:
            g = apply_bi(g, step)
        except (InvalidStepError, InvalidGenomeError) as e:
            raise InvalidStepError(f"step {i}: {e}") from e
    return g


def replay_scenario(sc: Scenario) -> list[Genome]:
    """All intermediate genomes: initial first, final last."""
    out = [sc.initial]
    for i, step in enumerate(sc.steps):
        try:
            out.append(apply_bi(out[-1], step))
        except (InvalidStepError, InvalidGenomeError) as e:
            raise InvalidStepError(f"step {i}: {e}") from e
    return out


@dataclass(frozen=True)
class VerifyReport:
    valid: bool
    failed_step: int | None
    failure: str | None
    tandem: bool
    length: int
    lower_bound: int | None
    optimal: bool
    claimed_ok: bool | None

    def summary(self) -> str:
        if not self.valid:
            return f"invalid step {self.failed_step}: {self.failure}"
        if not self.tandem:
            return "valid steps, not tandem"
        if self.optimal:
            return "valid optimal tandem"
        return f"valid tandem suboptimal (length {self.length} > bound {self.lower_bound})"


def verify_scenario(sc: Scenario, claimed_length: int | None = None) -> VerifyReport:
    """Replay a scenario and certify it.

    A scenario is optimal when it applies cleanly, ends tandem-duplicated,
    and its length meets the floor((n - C) / 2) lower bound of the initial
    genome; no exhaustive search is needed for the certificate.
    """
    from .graph import halving_summary

    try:
        bound = halving_summary(sc.initial).bi_halving
    except InvalidGenomeError:
        bound = None

    g = sc.initial
    for i, step in enumerate(sc.steps):
        try:
            g = apply_bi(g, step)
        except (InvalidStepError, InvalidGenomeError) as e:
            return VerifyReport(
                False, i, str(e), False, len(sc.steps), bound, False,
                claimed_length == len(sc.steps) if claimed_length is not None else None,
            )
    tandem = is_tandem_duplicated(g)
    optimal = tandem and bound is not None and len(sc.steps) == bound
    return VerifyReport(
        True,
        None,
        None,
        tandem,
        len(sc.steps),
        bound,
        optimal,
        claimed_length == len(sc.steps) if claimed_length is not None else None,
    )


# ---------------------------------------------------------------------------
# Scenario text format: one step per line, `bi <g1> <g2> <g3> <g4>`
# ---------------------------------------------------------------------------


def parse_scenario_steps(text: str) -> tuple[BIStep, ...]:
    steps = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] != "bi" or len(parts) != 5:
            raise InvalidStepError(f"line {lineno}: expected 'bi g1 g2 g3 g4'")
        try:
            gaps = [int(p) for p in parts[1:]]
        except ValueError:
            raise InvalidStepError(f"line {lineno}: non-integer gap") from None
        steps.append(BIStep(*gaps))
    return tuple(steps)


def format_steps(steps, comments: dict[int, str] | None = None) -> str:
    lines = []
    for i, s in enumerate(steps):
        if comments and i in comments:
            lines.append(f"# {comments[i]}")
        lines.append(f"bi {s.g1} {s.g2} {s.g3} {s.g4}")
    return "\n".join(lines) + ("\n" if lines else "")


def scenario_json(sc: Scenario) -> dict:
    genomes = replay_scenario(sc)
    return {
        "initial": str(sc.initial),
        "steps": [
            {"gaps": list(step), "genome_after": str(genomes[i + 1])}
            for i, step in enumerate(sc.steps)
        ],
        "final": str(genomes[-1]),
        "length": len(sc.steps),
    }
