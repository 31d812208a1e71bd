import pytest

from bihalve import (
    OracleConfig,
    SearchBudgetExceeded,
    bfs_bi_distance,
    bfs_dcj_tandem_distance,
    canonicalize_copies,
    enumerate_genomes,
    halving_summary,
    is_tandem_duplicated,
    random_duplicated,
    random_scrambled_tandem,
    solve_distance_only,
    validate_duplicated,
)

from conftest import linear


class TestBfsBi:
    def test_pinned_values(self, path_two_cycles, chain_genome):
        assert bfs_bi_distance(path_two_cycles) == 1
        assert bfs_bi_distance(chain_genome) == 1
        assert bfs_bi_distance(linear("1 2 1' 2'")) == 0

    def test_matches_formula_small(self):
        for n in (1, 2, 3):
            for g in enumerate_genomes(n):
                assert bfs_bi_distance(g) == solve_distance_only(g), str(g)

    def test_canonicalization_is_distance_preserving(self):
        cfg = OracleConfig(canonicalize=False)
        for seed in range(12):
            g = random_duplicated(3, seed)
            assert bfs_bi_distance(g) == bfs_bi_distance(g, cfg)

    def test_budget_exhaustion_reported(self, path_two_cycles):
        with pytest.raises(SearchBudgetExceeded):
            bfs_bi_distance(path_two_cycles, OracleConfig(node_budget=0))

    def test_depth_cap_reported(self):
        g = random_duplicated(4, 11)
        if solve_distance_only(g) > 0:
            with pytest.raises(SearchBudgetExceeded):
                bfs_bi_distance(g, OracleConfig(max_depth=0))


class TestBfsDcj:
    def test_tandem_is_zero(self):
        assert bfs_dcj_tandem_distance(linear("1 2 1' 2'")) == 0

    def test_pinned_adjacent_pairs_value(self):
        # one excision plus one integration; a single move cannot do it
        # because any first move on a lone linear chromosome leaves a circle
        assert bfs_dcj_tandem_distance(linear("1 1' 2 2'")) == 2

    def test_lower_bound_small(self):
        for n in (1, 2, 3):
            for g in enumerate_genomes(n):
                s = halving_summary(g)
                assert bfs_dcj_tandem_distance(g) >= s.n - s.cycles - 1

    def test_at_most_twice_the_interchange_distance(self):
        for seed in range(15):
            g = random_duplicated(3, seed)
            assert bfs_dcj_tandem_distance(g) <= 2 * solve_distance_only(g)


class TestEnumerate:
    def test_counts(self):
        assert sum(1 for _ in enumerate_genomes(1)) == 1
        assert sum(1 for _ in enumerate_genomes(2)) == 6
        assert sum(1 for _ in enumerate_genomes(3)) == 90

    def test_refuses_large(self):
        with pytest.raises(ValueError):
            list(enumerate_genomes(5))

    def test_all_valid_and_distinct(self):
        seen = set()
        for g in enumerate_genomes(3):
            validate_duplicated(g)
            assert canonicalize_copies(g) == g
            seen.add(str(g))
        assert len(seen) == 90


class TestRandomGenomes:
    def test_deterministic(self):
        assert random_duplicated(5, 7) == random_duplicated(5, 7)
        assert random_scrambled_tandem(6, 3, 1) == random_scrambled_tandem(6, 3, 1)

    def test_valid_and_canonical(self):
        for seed in range(50):
            g = random_duplicated(6, seed)
            validate_duplicated(g)
            assert canonicalize_copies(g) == g

    def test_covers_every_class(self):
        classes = {str(g) for g in enumerate_genomes(3)}
        seen = {str(random_duplicated(3, seed)) for seed in range(10_000)}
        assert seen == classes

    def test_scrambled_zero_is_tandem(self):
        assert is_tandem_duplicated(random_scrambled_tandem(8, 0, 3))

    def test_scrambled_one_within_one(self):
        for seed in range(30):
            g = random_scrambled_tandem(10, 1, seed)
            assert solve_distance_only(g) <= 1

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            random_duplicated(0, 1)
        with pytest.raises(ValueError):
            random_scrambled_tandem(3, -1, 1)
