import pytest
from hypothesis import strategies as st

from bihalve import Chromosome, Genome, LINEAR, MarkerOccurrence, parse_genome


@pytest.fixture
def path_two_cycles():
    # adjacency graph: one 2-edge path, a 2-cycle and a 4-cycle; distance 1
    return parse_genome("linear: 1 2' 1' 4' 3 4 3' 2")


@pytest.fixture
def chain_genome():
    # adjacency graph is a single 6-edge path; distance 1
    return parse_genome("linear: 2 1 2' 3 1' 3'")


@pytest.fixture
def split_example():
    # classic classification genome: one split and one self-contained interval
    return parse_genome("linear: 2 1 1' 3 2' 3'")


@pytest.fixture
def reducible_genome():
    # one run of double-adjacencies (2 4 5 twice) collapses to composite 10
    return parse_genome("linear: 1 1' 3 2 4 5 6 6' 7 3' 8 2' 4' 5' 9 8' 7' 9'")


@pytest.fixture
def tandem_genome():
    return parse_genome("linear: 1 2 3 4 1' 2' 3' 4'")


def occ(token: str) -> MarkerOccurrence:
    if token.endswith("'"):
        return MarkerOccurrence(int(token[:-1]), 1)
    return MarkerOccurrence(int(token), 0)


def linear(tokens: str) -> Genome:
    return Genome((Chromosome(LINEAR, tuple(occ(t) for t in tokens.split())),))


@st.composite
def duplicated_genomes(draw, min_n=1, max_n=8):
    """Single-linear duplicated genomes with arbitrary copy-flag patterns."""
    n = draw(st.integers(min_n, max_n))
    ids = [i for i in range(1, n + 1) for _ in range(2)]
    perm = draw(st.permutations(ids))
    flipped = draw(st.sets(st.integers(1, n)))
    seen: set[int] = set()
    seq = []
    for mid in perm:
        copy = 1 if mid in seen else 0
        seen.add(mid)
        if mid in flipped:
            copy ^= 1
        seq.append(MarkerOccurrence(mid, copy))
    return Genome((Chromosome(LINEAR, tuple(seq)),))
