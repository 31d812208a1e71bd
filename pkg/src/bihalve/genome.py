"""Marker-level model of duplicated genomes.

A genome is a collection of chromosomes over unsigned markers, each marker
present in exactly two interchangeable copies.  Linear chromosomes carry an
implicit telomere at each end; circular chromosomes wrap around.  Everything
here is an immutable value: operations return fresh genomes, so sharing
across threads is safe.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator, NamedTuple

LINEAR = "linear"
CIRCULAR = "circular"


class GenomeFormatError(ValueError):
    """Genome text that cannot be parsed."""


class InvalidGenomeError(ValueError):
    """A genome violating the two-copies-per-marker contract."""


class MarkerOccurrence(NamedTuple):
    """One copy of a marker: token ``7`` is ``(7, 0)``, token ``7'`` is ``(7, 1)``."""

    id: int
    copy: int

    def paralog(self) -> "MarkerOccurrence":
        """The other copy of the same marker; applying twice is the identity."""
        return MarkerOccurrence(self.id, 1 - self.copy)

    def token(self) -> str:
        return f"{self.id}'" if self.copy else str(self.id)


def _rotations(seq: tuple) -> Iterator[tuple]:
    for i in range(len(seq)):
        yield seq[i:] + seq[:i]


@dataclass(frozen=True, eq=False)
class Chromosome:
    """An ordered marker sequence, linear (implicit telomeres) or circular.

    Circular chromosomes compare equal under rotation.  Marker order stays
    directed, so a reversed circle is a different chromosome.
    """

    shape: str
    sequence: tuple[MarkerOccurrence, ...]

    def __post_init__(self):
        if self.shape not in (LINEAR, CIRCULAR):
            raise ValueError(f"unknown chromosome shape: {self.shape!r}")
        if not self.sequence:
            raise ValueError("empty chromosome")

    def is_linear(self) -> bool:
        return self.shape == LINEAR

    def _key(self) -> tuple:
        if self.shape == CIRCULAR:
            return self.shape, min(_rotations(self.sequence))
        return self.shape, self.sequence

    def __eq__(self, other):
        if not isinstance(other, Chromosome):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __str__(self):
        return f"{self.shape}: " + " ".join(o.token() for o in self.sequence)


@dataclass(frozen=True)
class Genome:
    chromosomes: tuple[Chromosome, ...]

    def occurrences(self) -> Iterator[MarkerOccurrence]:
        for c in self.chromosomes:
            yield from c.sequence

    def marker_ids(self) -> list[int]:
        return sorted({o.id for o in self.occurrences()})

    def marker_count(self) -> int:
        """Number of distinct markers (each present twice in a valid genome)."""
        return len({o.id for o in self.occurrences()})

    def single_linear(self) -> tuple[int, Chromosome]:
        """Index and chromosome of the unique linear chromosome."""
        found = [(i, c) for i, c in enumerate(self.chromosomes) if c.is_linear()]
        if len(found) != 1:
            raise InvalidGenomeError(
                f"expected exactly one linear chromosome, found {len(found)}"
            )
        return found[0]

    def __str__(self):
        return "\n".join(str(c) for c in self.chromosomes)


class Adjacency(NamedTuple):
    """A consecutive pair in a chromosome; ``None`` stands for a telomere.

    ``gap`` is the cut position of the adjacency: gap g of a linear
    chromosome sits before sequence position g, so a chromosome with m
    markers has gaps 0..m.  Circular gaps run 0..m-1 the same way.
    """

    left: MarkerOccurrence | None
    right: MarkerOccurrence | None
    chrom: int
    gap: int

    @property
    def pair(self) -> tuple[MarkerOccurrence | None, MarkerOccurrence | None]:
        return (self.left, self.right)

    def is_telomeric(self) -> bool:
        return self.left is None or self.right is None

    def label(self) -> str:
        lt = self.left.token() if self.left else "o"
        rt = self.right.token() if self.right else "o"
        return f"({lt} {rt})"


def pair_paralog(pair):
    """Paralog of an adjacency pair; a telomere is its own paralog."""
    left, right = pair
    return (
        left.paralog() if left is not None else None,
        right.paralog() if right is not None else None,
    )


_TOKEN = re.compile(r"^([0-9]+)('?)$")


def parse_genome(text: str) -> Genome:
    """Parse the genome text format.

    One chromosome per line: ``linear: 1 2' 3 ...`` or ``circular: ...``.
    ``#`` starts a comment; blank lines are skipped.  A trailing apostrophe
    marks the second copy of a marker.  The parsed genome is validated:
    every marker must appear exactly twice, once per copy flag.
    """
    chroms: list[Chromosome] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, sep, body = line.partition(":")
        shape = head.strip()
        if not sep or shape not in (LINEAR, CIRCULAR):
            raise GenomeFormatError(
                f"line {lineno}: expected 'linear:' or 'circular:' prefix"
            )
        tokens = body.split()
        if not tokens:
            raise GenomeFormatError(f"line {lineno}: empty chromosome")
        seq = []
        for tok in tokens:
            m = _TOKEN.match(tok)
            if not m or int(m.group(1)) < 1:
                raise GenomeFormatError(f"line {lineno}: malformed token {tok!r}")
            seq.append(MarkerOccurrence(int(m.group(1)), 1 if m.group(2) else 0))
        chroms.append(Chromosome(shape, tuple(seq)))
    if not chroms:
        raise GenomeFormatError("no chromosomes in input")
    genome = Genome(tuple(chroms))
    validate_duplicated(genome)
    return genome


def format_genome(g: Genome) -> str:
    return str(g) + "\n"


def validate_duplicated(g: Genome) -> None:
    """Check the duplicated-genome contract; raise InvalidGenomeError if broken."""
    copies: dict[int, list[int]] = {}
    for o in g.occurrences():
        if o.id < 1 or o.copy not in (0, 1):
            raise InvalidGenomeError(f"bad marker occurrence {o!r}")
        copies.setdefault(o.id, []).append(o.copy)
    if not copies:
        raise InvalidGenomeError("genome has no markers")
    for mid in sorted(copies):
        flags = copies[mid]
        if len(flags) != 2:
            raise InvalidGenomeError(
                f"marker {mid} appears {len(flags)} times, expected 2"
            )
        if flags[0] == flags[1]:
            raise InvalidGenomeError(
                f"both occurrences of marker {mid} carry the same copy flag"
            )


def canonicalize_copies(g: Genome) -> Genome:
    """Relabel copy flags so the first occurrence of each marker reads copy 0.

    Copy flags carry no meaning beyond telling the two copies apart, so this
    is the normal form used for hashing and state deduplication.
    """
    flip: dict[int, int] = {}
    chroms = []
    for c in g.chromosomes:
        seq = []
        for o in c.sequence:
            if o.id not in flip:
                flip[o.id] = o.copy
            seq.append(MarkerOccurrence(o.id, o.copy ^ flip[o.id]))
        chroms.append(Chromosome(c.shape, tuple(seq)))
    return Genome(tuple(chroms))


def adjacencies(g: Genome) -> list[Adjacency]:
    """All adjacencies in chromosome order.

    A linear chromosome with m markers yields m+1 adjacencies including the
    two telomeric ones; a circular chromosome with m markers yields m.
    """
    out: list[Adjacency] = []
    for ci, c in enumerate(g.chromosomes):
        seq = c.sequence
        m = len(seq)
        if c.is_linear():
            for gp in range(m + 1):
                out.append(
                    Adjacency(
                        seq[gp - 1] if gp > 0 else None,
                        seq[gp] if gp < m else None,
                        ci,
                        gp,
                    )
                )
        else:
            for i in range(m):
                out.append(Adjacency(seq[i], seq[(i + 1) % m], ci, (i + 1) % m))
    return out


def adjacency_pairs(g: Genome, include_telomeric: bool = False) -> set:
    return {
        a.pair
        for a in adjacencies(g)
        if include_telomeric or not a.is_telomeric()
    }


def _as_pair(adj) -> tuple:
    if isinstance(adj, Adjacency):
        return adj.pair
    left, right = adj
    return (left, right)


def is_double_adjacency(g: Genome, adj) -> bool:
    """True iff the paralog pair of this adjacency, in the same order, is
    also an adjacency of the genome."""
    pair = _as_pair(adj)
    if pair[0] is None or pair[1] is None:
        raise ValueError("double-adjacency test needs a non-telomeric adjacency")
    pairs = adjacency_pairs(g)
    if pair not in pairs:
        raise ValueError(f"({pair[0].token()} {pair[1].token()}) is not an adjacency")
    return pair_paralog(pair) in pairs


def is_perfectly_duplicated(g: Genome) -> bool:
    """Every adjacency, telomeric ones included, is a double-adjacency."""
    pairs = adjacency_pairs(g, include_telomeric=True)
    return all(pair_paralog(p) in pairs for p in pairs)


def is_tandem_duplicated(g: Genome) -> bool:
    """One linear chromosome whose two halves carry the same marker sequence.

    Equivalently: the genome reduces to a single marker followed by its copy.
    """
    if len(g.chromosomes) != 1:
        return False
    c = g.chromosomes[0]
    if not c.is_linear():
        return False
    m = len(c.sequence)
    if m == 0 or m % 2:
        return False
    half = m // 2
    first = [o.id for o in c.sequence[:half]]
    second = [o.id for o in c.sequence[half:]]
    return first == second and len(set(first)) == half


# ---------------------------------------------------------------------------
# Reduction: collapse maximal runs of double-adjacencies into fresh markers.
#
# The integer encoding (occ = 2 * id + copy, paralog = occ ^ 1) is shared
# with the solver, which runs the same core on large genomes.
# ---------------------------------------------------------------------------


def _encode(seq) -> list[int]:
    return [o.id * 2 + o.copy for o in seq]


def _decode_occ(x: int) -> MarkerOccurrence:
    return MarkerOccurrence(x >> 1, x & 1)


def _reduce_ints(seq: list[int], fresh: int):
    """Collapse runs of double-adjacencies in an integer-encoded sequence.

    Returns (reduced sequence, {fresh id: copy-0 expansion}, gap map, next
    fresh id).  gap_map[k] is the input gap matching reduced gap k.
    """
    m = len(seq)
    pairs = set()
    for i in range(m - 1):
        pairs.add((seq[i], seq[i + 1]))
    double_after = [
        (seq[i] ^ 1, seq[i + 1] ^ 1) in pairs for i in range(m - 1)
    ]

    runs: list[tuple[int, int]] = []
    start = 0
    for i in range(m):
        if i == m - 1 or not double_after[i]:
            if i > start:
                runs.append((start, i))
            start = i + 1
    if not runs:
        return list(seq), {}, list(range(m + 1)), fresh

    run_of = [-1] * m
    for ri, (a, b) in enumerate(runs):
        for p in range(a, b + 1):
            run_of[p] = ri
    pos = {o: i for i, o in enumerate(seq)}

    occ_of_run: list[int | None] = [None] * len(runs)
    expansions: dict[int, list[int]] = {}
    for ri, (a, b) in enumerate(runs):
        if occ_of_run[ri] is not None:
            continue
        partner = run_of[pos[seq[a] ^ 1]]
        assert partner >= 0 and partner != ri
        fid = fresh
        fresh += 1
        flag = seq[a] & 1
        occ_of_run[ri] = fid * 2 + flag
        occ_of_run[partner] = fid * 2 + (flag ^ 1)
        content = seq[a : b + 1]
        expansions[fid] = content if flag == 0 else [x ^ 1 for x in content]

    out: list[int] = []
    gap_map = [0]
    i = 0
    while i < m:
        ri = run_of[i]
        if ri >= 0:
            out.append(occ_of_run[ri])  # type: ignore[arg-type]
            i = runs[ri][1] + 1
        else:
            out.append(seq[i])
            i += 1
        gap_map.append(i)
    return out, expansions, gap_map, fresh


@dataclass(frozen=True)
class ReductionMap:
    """Expansion data for the composite markers created by one reduction.

    ``composites`` holds the copy-0 expansion of each fresh marker; the
    copy-1 expansion is its elementwise paralog.  ``gap_map`` sends each gap
    of the reduced chromosome to the unique gap of the unreduced one that
    separates the same original markers.
    """

    composites: dict[int, tuple[MarkerOccurrence, ...]]
    gap_map: tuple[int, ...] = field(repr=False)

    def is_identity(self) -> bool:
        return not self.composites

    def expansion(self, mid: int, copy: int = 0) -> tuple[MarkerOccurrence, ...]:
        exp = self.composites[mid]
        if copy == 0:
            return exp
        return tuple(o.paralog() for o in exp)

    def expand(self, g: Genome) -> Genome:
        """Replace composite markers by their expansions."""
        chroms = []
        for c in g.chromosomes:
            seq: list[MarkerOccurrence] = []
            for o in c.sequence:
                if o.id in self.composites:
                    seq.extend(self.expansion(o.id, o.copy))
                else:
                    seq.append(o)
            chroms.append(Chromosome(c.shape, tuple(seq)))
        return Genome(tuple(chroms))


def reduce_genome(g: Genome) -> tuple[Genome, ReductionMap]:
    """Collapse every maximal run of double-adjacencies into a fresh marker.

    Fresh marker ids start just above the largest existing id and are
    assigned left to right; the copy flag of a composite matches the flag of
    the first original occurrence it covers.  The result has no
    double-adjacencies, and expanding through the returned map restores the
    input exactly.
    """
    validate_duplicated(g)
    if len(g.chromosomes) != 1 or not g.chromosomes[0].is_linear():
        raise InvalidGenomeError("reduction requires a single linear chromosome")
    seq = _encode(g.chromosomes[0].sequence)
    out, exps, gap_map, _ = _reduce_ints(seq, max(seq) // 2 + 1)
    reduced = Genome((Chromosome(LINEAR, tuple(_decode_occ(x) for x in out)),))
    rmap = ReductionMap(
        {fid: tuple(_decode_occ(x) for x in exp) for fid, exp in exps.items()},
        tuple(gap_map),
    )
    return reduced, rmap


def expand_gap(rmap: ReductionMap, gap: int) -> int:
    """Unreduced gap separating the same markers as the given reduced gap.

    Composite boundaries map to their outermost original gaps, which
    coincide for the two sides, so the mapping needs no side argument.
    """
    if not 0 <= gap < len(rmap.gap_map):
        raise ValueError(f"reduced gap {gap} out of range")
    return rmap.gap_map[gap]
