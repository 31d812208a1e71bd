"""Ground truth by brute force: exhaustive searches and genome generators.

The searches work on copy-label-free states: since the two copies of a
marker are interchangeable, a state is fully determined by the arrangement
of marker ids, which divides the search space by up to 2^n.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .genome import (
    Chromosome,
    Genome,
    InvalidGenomeError,
    LINEAR,
    MarkerOccurrence,
    validate_duplicated,
)


@dataclass(frozen=True)
class OracleConfig:
    max_depth: int | None = None
    node_budget: int = 10_000_000
    canonicalize: bool = True


class SearchBudgetExceeded(RuntimeError):
    """The search hit its node budget or depth cap before finding a target."""

    def __init__(self, message: str, expanded: int):
        super().__init__(message)
        self.expanded = expanded


def _ids_tandem(ids: tuple[int, ...]) -> bool:
    m = len(ids)
    if m % 2:
        return False
    half = m // 2
    return ids[:half] == ids[half:] and len(set(ids[:half])) == half


def _single_linear_ids(g: Genome) -> tuple[int, ...]:
    validate_duplicated(g)
    if len(g.chromosomes) != 1 or not g.chromosomes[0].is_linear():
        raise InvalidGenomeError("search needs a single linear chromosome")
    return tuple(o.id for o in g.chromosomes[0].sequence)


def _bi_children(t: tuple):
    m = len(t)
    for g2 in range(1, m + 1):
        for g1 in range(g2):
            for g3 in range(g2, m):
                for g4 in range(g3 + 1, m + 1):
                    yield t[:g1] + t[g3:g4] + t[g2:g3] + t[g1:g2] + t[g4:]


def bfs_bi_distance(g: Genome, config: OracleConfig | None = None) -> int:
    """Minimal number of block interchanges to any tandem-duplicated genome.

    Breadth-first over all gap quadruples; meant for small genomes (n <= 5).
    With canonicalize off, states keep their copy labels, which only grows
    the search space; the distance is the same either way.
    """
    cfg = config or OracleConfig()
    if cfg.canonicalize:
        start = _single_linear_ids(g)

        def tandem(t):
            return _ids_tandem(t)

    else:
        validate_duplicated(g)
        if len(g.chromosomes) != 1 or not g.chromosomes[0].is_linear():
            raise InvalidGenomeError("search needs a single linear chromosome")
        start = tuple((o.id, o.copy) for o in g.chromosomes[0].sequence)

        def tandem(t):
            return _ids_tandem(tuple(x[0] for x in t))

    if tandem(start):
        return 0
    seen = {start}
    frontier = [start]
    expanded = 0
    depth = 0
    while frontier:
        depth += 1
        if cfg.max_depth is not None and depth > cfg.max_depth:
            raise SearchBudgetExceeded(
                f"no tandem genome within depth {cfg.max_depth}", expanded
            )
        nxt = []
        for state in frontier:
            expanded += 1
            if expanded > cfg.node_budget:
                raise SearchBudgetExceeded(
                    f"node budget {cfg.node_budget} exhausted", expanded
                )
            for child in _bi_children(state):
                if tandem(child):
                    return depth
                if child not in seen:
                    seen.add(child)
                    nxt.append(child)
        frontier = nxt
    raise SearchBudgetExceeded("search space exhausted without a tandem genome", expanded)


# ---------------------------------------------------------------------------
# Cut-and-join search.  States are one linear chromosome plus circles, as
# (linear ids, sorted tuple of rotation-canonical circle id tuples).
# ---------------------------------------------------------------------------


def _circle_key(c: tuple[int, ...]) -> tuple[int, ...]:
    return min(c[i:] + c[:i] for i in range(len(c)))


def _dcj_children(lin: tuple, circles: tuple):
    m = len(lin)
    # excision: two cuts inside the linear chromosome (keep it non-empty)
    for p in range(m + 1):
        for q in range(p + 1, m + 1):
            if p == 0 and q == m:
                continue
            yield lin[:p] + lin[q:], circles + (lin[p:q],)
    for ci, c in enumerate(circles):
        k = len(c)
        rest = circles[:ci] + circles[ci + 1 :]
        # integration: open the circle anywhere, splice into any linear gap
        for cut in range(k):
            opened = c[cut:] + c[:cut]
            for p in range(m + 1):
                yield lin[:p] + opened + lin[p:], rest
        # fission: split the circle in two
        for a in range(k):
            for b in range(a + 1, k):
                yield lin, rest + (c[a:b], c[b:] + c[:a])
        # fusion with a later circle
        for cj in range(ci + 1, len(circles)):
            other = circles[cj]
            rest2 = tuple(
                cc for i, cc in enumerate(circles) if i not in (ci, cj)
            )
            for a in range(k):
                for b in range(len(other)):
                    merged = c[a:] + c[:a] + other[b:] + other[:b]
                    yield lin, rest2 + (merged,)


def _dcj_key(lin: tuple, circles: tuple) -> tuple:
    return lin, tuple(sorted(_circle_key(c) for c in circles))


def bfs_dcj_tandem_distance(g: Genome, config: OracleConfig | None = None) -> int:
    """Minimal number of cut-and-join moves to a tandem-duplicated genome.

    Intermediate states keep one linear chromosome plus any number of
    circles; moves are every pair of cut gaps with the orientation-keeping
    rejoin.  Meant for n <= 4.
    """
    cfg = config or OracleConfig()
    start = (_single_linear_ids(g), ())
    if _ids_tandem(start[0]):
        return 0
    seen = {_dcj_key(*start)}
    frontier = [start]
    expanded = 0
    depth = 0
    while frontier:
        depth += 1
        if cfg.max_depth is not None and depth > cfg.max_depth:
            raise SearchBudgetExceeded(
                f"no tandem genome within depth {cfg.max_depth}", expanded
            )
        nxt = []
        for lin, circles in frontier:
            expanded += 1
            if expanded > cfg.node_budget:
                raise SearchBudgetExceeded(
                    f"node budget {cfg.node_budget} exhausted", expanded
                )
            for child in _dcj_children(lin, circles):
                if not child[1] and _ids_tandem(child[0]):
                    return depth
                key = _dcj_key(*child)
                if key not in seen:
                    seen.add(key)
                    nxt.append(child)
        frontier = nxt
    raise SearchBudgetExceeded("search space exhausted without a tandem genome", expanded)


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------


def _genome_from_ids(ids) -> Genome:
    seen: set[int] = set()
    seq = []
    for mid in ids:
        seq.append(MarkerOccurrence(mid, 1 if mid in seen else 0))
        seen.add(mid)
    return Genome((Chromosome(LINEAR, tuple(seq)),))


def enumerate_genomes(n: int):
    """Every single-linear duplicated genome on markers 1..n, copy-canonical.

    Yields (2n)! / 2^n genomes; refuses n > 4 (n = 4 is already 2520).
    """
    if not 1 <= n <= 4:
        raise ValueError("exhaustive enumeration supports 1 <= n <= 4")
    pool = sorted(list(range(1, n + 1)) * 2)
    for ids in sorted(set(itertools.permutations(pool))):
        yield _genome_from_ids(ids)


def random_duplicated(n: int, seed: int) -> Genome:
    """Uniformly random single-linear duplicated genome, copy-canonical."""
    if n < 1:
        raise ValueError("need at least one marker")
    rng = random.Random(seed)
    ids = list(range(1, n + 1)) * 2
    rng.shuffle(ids)
    return _genome_from_ids(ids)


def random_scrambled_tandem(n: int, k: int, seed: int) -> Genome:
    """A tandem genome hit by k random block interchanges.

    By construction the halving distance of the result is at most k.
    """
    if n < 1 or k < 0:
        raise ValueError("need n >= 1 and k >= 0")
    rng = random.Random(seed)
    ids = list(range(1, n + 1)) * 2
    m = len(ids)
    for _ in range(k):
        g1, g2, g3, g4 = sorted(rng.sample(range(m + 1), 4))
        ids = ids[:g1] + ids[g3:g4] + ids[g2:g3] + ids[g1:g2] + ids[g4:]
    return _genome_from_ids(ids)
