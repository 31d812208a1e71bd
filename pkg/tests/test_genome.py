import pytest
from hypothesis import given, settings

from bihalve import (
    CIRCULAR,
    Chromosome,
    Genome,
    GenomeFormatError,
    InvalidGenomeError,
    adjacencies,
    canonicalize_copies,
    expand_gap,
    format_genome,
    is_double_adjacency,
    is_perfectly_duplicated,
    is_tandem_duplicated,
    parse_genome,
    reduce_genome,
)
from bihalve.graph import halving_summary

from conftest import duplicated_genomes, linear, occ


class TestParse:
    def test_basic(self):
        g = parse_genome("linear: 1 2' 1' 4' 3 4 3' 2")
        assert len(g.chromosomes) == 1
        assert len(g.chromosomes[0].sequence) == 8
        assert g.marker_count() == 4

    def test_smallest(self):
        g = parse_genome("linear: 1 1'")
        assert g.marker_count() == 1

    def test_same_flag_rejected(self):
        with pytest.raises(InvalidGenomeError, match="same copy flag"):
            parse_genome("linear: 1 1 2 2'")

    def test_multiplicity_rejected(self):
        with pytest.raises(InvalidGenomeError, match="marker 2 appears 1"):
            parse_genome("linear: 1 1' 2")

    def test_malformed_token(self):
        with pytest.raises(GenomeFormatError, match="malformed token"):
            parse_genome("linear: 1 x' 1'")

    def test_missing_prefix(self):
        with pytest.raises(GenomeFormatError, match="prefix"):
            parse_genome("1 1'")

    def test_comments_and_blanks(self):
        g = parse_genome("# a comment\n\nlinear: 1 1'  # trailing\n")
        assert g == parse_genome("linear: 1 1'")

    def test_round_trip(self):
        text = "linear: 1 2' 1' 4' 3 4 3' 2\ncircular: 5 5'\n"
        assert format_genome(parse_genome(text)) == text


class TestCanonicalize:
    def test_relabels(self):
        assert canonicalize_copies(linear("1' 2 1 2'")) == linear("1 2 1' 2'")
        assert canonicalize_copies(linear("2' 1 2 1'")) == linear("2 1 2' 1'")

    def test_idempotent(self):
        g = linear("1 2 1' 2'")
        assert canonicalize_copies(g) == g

    @given(duplicated_genomes())
    def test_idempotent_everywhere(self, g):
        once = canonicalize_copies(g)
        assert canonicalize_copies(once) == once


class TestAdjacencies:
    def test_mixed_shapes(self):
        # adjacency listing does not require duplication validity
        g = Genome(
            (
                Chromosome("linear", (occ("1"), occ("2"))),
                Chromosome(CIRCULAR, (occ("3"), occ("4"), occ("5"))),
            )
        )
        pairs = [a.pair for a in adjacencies(g)]
        assert pairs == [
            (None, occ("1")),
            (occ("1"), occ("2")),
            (occ("2"), None),
            (occ("3"), occ("4")),
            (occ("4"), occ("5")),
            (occ("5"), occ("3")),
        ]

    def test_single_marker(self):
        assert [a.pair for a in adjacencies(linear("1 1'"))] == [
            (None, occ("1")),
            (occ("1"), occ("1'")),
            (occ("1'"), None),
        ]

    def test_one_marker_circle_self_adjacency(self):
        g = Genome((Chromosome(CIRCULAR, (occ("1"),)),))
        assert [a.pair for a in adjacencies(g)] == [(occ("1"), occ("1"))]

    @given(duplicated_genomes())
    def test_counts(self, g):
        n = g.marker_count()
        adj = adjacencies(g)
        assert len(adj) == 2 * n + 1
        assert sum(1 for a in adj if a.is_telomeric()) == 2


class TestDoubleAdjacency:
    def test_known_doubles(self, reducible_genome):
        doubles = [
            a.pair
            for a in adjacencies(reducible_genome)
            if not a.is_telomeric() and is_double_adjacency(reducible_genome, a)
        ]
        assert doubles == [
            (occ("2"), occ("4")),
            (occ("4"), occ("5")),
            (occ("2'"), occ("4'")),
            (occ("4'"), occ("5'")),
        ]

    def test_linear_pair_not_double(self):
        g = linear("1 1'")
        assert not is_double_adjacency(g, (occ("1"), occ("1'")))

    def test_two_marker_circle_both_double(self):
        g = Genome((Chromosome(CIRCULAR, (occ("1"), occ("1'"))),))
        for a in adjacencies(g):
            assert is_double_adjacency(g, a)

    def test_telomeric_rejected(self, chain_genome):
        with pytest.raises(ValueError):
            is_double_adjacency(chain_genome, (None, occ("2")))


class TestReduce:
    def test_run_collapse(self, reducible_genome):
        reduced, rmap = reduce_genome(reducible_genome)
        assert reduced == linear("1 1' 3 10 6 6' 7 3' 8 10' 9 8' 7' 9'")
        assert rmap.composites == {10: (occ("2"), occ("4"), occ("5"))}
        assert rmap.expansion(10, 1) == (occ("2'"), occ("4'"), occ("5'"))

    def test_tandem_collapse(self, tandem_genome):
        reduced, rmap = reduce_genome(tandem_genome)
        assert reduced == linear("5 5'")
        assert rmap.composites[5] == tuple(occ(t) for t in "1 2 3 4".split())

    def test_fixpoint(self, chain_genome):
        reduced, rmap = reduce_genome(chain_genome)
        assert reduced == chain_genome
        assert rmap.is_identity()

    def test_composite_flag_follows_first_occurrence(self, path_two_cycles):
        # the 4' 3 run comes first, so its composite keeps the primed flag
        reduced, _ = reduce_genome(path_two_cycles)
        assert reduced == linear("1 2' 1' 5' 5 2")

    @given(duplicated_genomes())
    @settings(max_examples=60)
    def test_expand_round_trip(self, g):
        reduced, rmap = reduce_genome(g)
        assert rmap.expand(reduced) == g

    @given(duplicated_genomes())
    @settings(max_examples=60)
    def test_idempotent(self, g):
        reduced, _ = reduce_genome(g)
        again, rmap = reduce_genome(reduced)
        assert again == reduced and rmap.is_identity()

    @given(duplicated_genomes())
    @settings(max_examples=60)
    def test_preserves_n_minus_c(self, g):
        before = halving_summary(g)
        reduced, _ = reduce_genome(g)
        after = halving_summary(reduced)
        assert before.n - before.cycles == after.n - after.cycles


class TestExpandGap:
    def test_identity_reduction(self):
        g = linear("1 1' 2 2'")
        _, rmap = reduce_genome(g)
        for k in range(5):
            assert expand_gap(rmap, k) == k

    def test_composite_boundary(self, reducible_genome):
        # gap right of the composite lands right of original marker 5
        _, rmap = reduce_genome(reducible_genome)
        assert expand_gap(rmap, 4) == 6

    def test_out_of_range(self, reducible_genome):
        _, rmap = reduce_genome(reducible_genome)
        with pytest.raises(ValueError):
            expand_gap(rmap, 99)

    @given(duplicated_genomes())
    @settings(max_examples=60)
    def test_strictly_increasing(self, g):
        reduced, rmap = reduce_genome(g)
        gaps = [expand_gap(rmap, k) for k in range(len(reduced.chromosomes[0].sequence) + 1)]
        assert all(a < b for a, b in zip(gaps, gaps[1:]))
        assert gaps[0] == 0 and gaps[-1] == len(g.chromosomes[0].sequence)


class TestTandemAndPerfect:
    def test_tandem_examples(self):
        assert is_tandem_duplicated(linear("1 2 3 4 1' 2' 3' 4'"))
        assert not is_tandem_duplicated(linear("1 1' 2 2'"))
        assert is_tandem_duplicated(linear("3' 1 2' 3 1' 2"))

    def test_perfect_examples(self):
        circ = Genome(
            (Chromosome(CIRCULAR, tuple(occ(t) for t in "1 2 3 4 1' 2' 3' 4'".split())),)
        )
        assert is_perfectly_duplicated(circ)
        assert not is_perfectly_duplicated(linear("1 2 1' 2'"))
        two = Genome(
            (
                Chromosome("linear", (occ("1"), occ("2"))),
                Chromosome("linear", (occ("1'"), occ("2'"))),
            )
        )
        assert is_perfectly_duplicated(two)

    @given(duplicated_genomes())
    @settings(max_examples=80)
    def test_tandem_iff_reduces_to_pair(self, g):
        reduced, _ = reduce_genome(g)
        canon = canonicalize_copies(reduced)
        shape = (
            len(canon.chromosomes[0].sequence) == 2
            and canon.chromosomes[0].sequence[0].id == canon.chromosomes[0].sequence[1].id
        )
        assert is_tandem_duplicated(g) == shape
