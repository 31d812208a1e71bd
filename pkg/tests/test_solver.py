import random

import pytest
from hypothesis import given, settings

from bihalve import (
    InvalidGenomeError,
    apply_scenario,
    final_bi,
    halve,
    is_tandem_duplicated,
    parse_genome,
    random_duplicated,
    random_scrambled_tandem,
    reduce_genome,
    solve_distance_only,
    verify_scenario,
)
from bihalve.genome import _encode
from bihalve.intervals import _find_pair_core
from bihalve.solver import _Solver

from conftest import duplicated_genomes, linear


class TestDistanceOnly:
    def test_examples(self, path_two_cycles, chain_genome, tandem_genome):
        assert solve_distance_only(path_two_cycles) == 1
        assert solve_distance_only(chain_genome) == 1
        assert solve_distance_only(tandem_genome) == 0

    def test_rejects_circular(self):
        with pytest.raises(InvalidGenomeError):
            solve_distance_only(parse_genome("circular: 1 1'"))


class TestFinalBI:
    def test_two_marker_shapes(self):
        for text in ("1 2 2' 1'", "1 1' 2 2'"):
            g = linear(text)
            step = final_bi(g)
            assert is_tandem_duplicated(apply_scenario_step(g, step))

    def test_reduced_three_marker(self):
        g = linear("1 2' 1' 5' 5 2")
        step = final_bi(g)
        assert tuple(step) == (0, 1, 2, 4)
        assert apply_scenario_step(g, step) == linear("1' 5' 2' 1 5 2")

    def test_preconditions(self, tandem_genome, reducible_genome):
        with pytest.raises(InvalidGenomeError, match="not reduced"):
            final_bi(tandem_genome)
        with pytest.raises(InvalidGenomeError, match="2 or 3"):
            final_bi(linear("1 1'"))
        with pytest.raises(InvalidGenomeError, match="not reduced"):
            final_bi(reducible_genome)


def apply_scenario_step(g, step):
    from bihalve import apply_bi

    return apply_bi(g, step)


class TestHalve:
    def test_chain(self, chain_genome):
        res = halve(chain_genome)
        assert res.distance == 1 and len(res.steps) == 1
        assert is_tandem_duplicated(apply_scenario(res.scenario))

    def test_two_cycles(self, path_two_cycles):
        res = halve(path_two_cycles)
        assert [tuple(s) for s in res.steps] == [(0, 1, 2, 5)]
        assert apply_scenario(res.scenario) == linear("1' 4' 3 2' 1 4 3' 2")

    def test_tandem_input(self, tandem_genome):
        res = halve(tandem_genome)
        assert res.steps == () and res.distance == 0

    def test_single_marker(self):
        assert halve(linear("1 1'")).distance == 0

    def test_rejects_bad_input(self):
        with pytest.raises(InvalidGenomeError):
            halve(parse_genome("circular: 1 1'"))

    def test_trace(self, path_two_cycles):
        res = halve(path_two_cycles, trace=True)
        assert len(res.trace) == 1
        entry = res.trace[0]
        assert entry.reduced == linear("1 2' 1' 5' 5 2")
        assert tuple(entry.reduced_step) == (0, 1, 2, 4)
        assert tuple(entry.step) == (0, 1, 2, 5)

    def test_junction_fixture_solves(self):
        g = linear("1 2 2' 3 1' 3' 4 5 5' 4'")
        res = halve(g)
        assert res.distance == len(res.steps)
        assert is_tandem_duplicated(apply_scenario(res.scenario))

    def test_sparse_marker_ids(self):
        g = linear("70 9000 70' 41 9000' 41'")
        res = halve(g)
        assert is_tandem_duplicated(apply_scenario(res.scenario))
        assert res.distance == solve_distance_only(g)

    @given(duplicated_genomes(min_n=1, max_n=14))
    @settings(max_examples=150, deadline=None)
    def test_always_optimal(self, g):
        res = halve(g)
        report = verify_scenario(res.scenario)
        assert report.valid and report.tandem and report.optimal
        assert res.distance == solve_distance_only(g)

    def test_scrambled_upper_bound(self):
        for seed in range(60):
            k = seed % 8
            g = random_scrambled_tandem(25, k, seed)
            assert solve_distance_only(g) <= k
            res = halve(g)
            assert len(res.steps) <= k

    def test_random_batch(self):
        rng = random.Random(99)
        for _ in range(150):
            g = random_duplicated(rng.randint(2, 60), rng.randint(0, 10**9))
            res = halve(g)
            assert is_tandem_duplicated(apply_scenario(res.scenario))
            assert len(res.steps) == solve_distance_only(g)


class TestSolverMatchesReference:
    def test_first_step_lockstep(self):
        # the vectorized pair search must pick exactly what the scalar one picks
        for seed in range(300):
            g, _ = reduce_genome(random_duplicated(4 + seed % 20, seed))
            if g.marker_count() <= 3:
                continue
            _, _, ref = _find_pair_core(_encode(g.chromosomes[0].sequence))
            state = _Solver(g)
            state.reduce()
            assert tuple(state.pick_step()) == tuple(ref), str(g)

    def test_first_reduction_matches_public(self):
        for seed in range(100):
            g = random_duplicated(3 + seed % 12, seed)
            reduced, _ = reduce_genome(g)
            state = _Solver(g)
            state.reduce()
            assert state.decode_reduced() == reduced, str(g)

    @given(duplicated_genomes(min_n=2, max_n=12))
    @settings(max_examples=80, deadline=None)
    def test_replay_reaches_solver_final(self, g):
        # replaying the emitted original-coordinate steps reproduces a tandem
        # genome with the same marker multiset
        res = halve(g)
        final = apply_scenario(res.scenario)
        assert is_tandem_duplicated(final)
        assert sorted(final.occurrences()) == sorted(g.occurrences())
