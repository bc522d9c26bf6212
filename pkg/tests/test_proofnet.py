import numpy as np
import pytest

import oracles
from pnmatch.errors import CyclicStructure, DegreeViolation, EmptyStructure, InvalidStructure, NotCorrect, TooManyPairs
from pnmatch.gallery import (
    mixed_pars_net,
    par_of_axiom,
    single_axiom,
    tensor_of_axiom,
    tensor_of_axioms,
    tensor_par_net,
)
from pnmatch.graph import connected_components
from pnmatch.proofnet import (
    Kind,
    ProofStructure,
    add_conclusions,
    correctness_graph,
    dr_check,
    from_json,
    mix_count,
    random_net,
    rewire,
    sample_switching,
    strip_conclusions,
    switching_cycles,
    switching_graphs,
    to_dot,
    to_json,
    validate,
)
from samplers import random_structure

AX, TENSOR, PAR = Kind.AX, Kind.TENSOR, Kind.PAR


class TestValidation:
    def test_empty(self):
        with pytest.raises(EmptyStructure):
            ProofStructure({}, ())

    def test_cycle(self):
        with pytest.raises(CyclicStructure):
            ProofStructure({0: AX, 1: PAR, 2: PAR}, ((0, 1), (2, 1), (1, 2), (0, 2)))

    def test_degrees(self):
        with pytest.raises(DegreeViolation) as info:
            ProofStructure({0: TENSOR}, ())
        assert info.value.link == 0 and info.value.actual == 0
        with pytest.raises(DegreeViolation):
            ProofStructure({0: AX, 1: AX}, ((0, 1),))
        with pytest.raises(DegreeViolation):
            # an axiom has at most two outputs
            ProofStructure({0: AX, 1: PAR, 2: PAR}, ((0, 1), (0, 1), (0, 2), (0, 2)))

    def test_unknown_endpoint(self):
        with pytest.raises(InvalidStructure):
            ProofStructure({0: AX}, ((0, 5),))

    def test_validate_accepts_several_forms(self):
        ps = tensor_of_axioms()
        assert validate(ps) == ps
        assert validate(to_json(ps)) == ps
        assert validate(({0: "ax", 1: "ax", 2: "tensor"}, [(0, 2), (1, 2)])) == ps

    def test_json_and_dot(self):
        ps = tensor_par_net()
        assert from_json(to_json(ps)) == ps
        dot = to_dot(ps)
        assert dot.startswith("digraph") and dot.count("->") == len(ps.edges)
        with pytest.raises(InvalidStructure):
            from_json({"links": [{"id": 0, "kind": "nope"}], "edges": []})

    def test_accessors(self):
        ps = tensor_par_net()
        assert ps.predecessors(2) == (0, 1)
        assert ps.successor(3) == 4 and ps.successor(4) is None
        assert ps.terminal_links == [4]
        assert ps.pars == [3, 4]
        assert ps.relabel(3, TENSOR).kinds[3] is TENSOR
        assert ps.restrict([0, 1, 2]) == tensor_of_axioms()


class TestConclusions:
    def test_add_and_strip(self):
        ps = tensor_of_axioms()
        wc = add_conclusions(ps)
        # two spare axiom outputs and the tensor's output
        assert len(wc.conclusions) == 3
        assert strip_conclusions(wc) == ps


class TestCorrectnessGraph:
    def test_pairs_of_mixed_pars_net(self):
        ps = mixed_pars_net()
        pg = correctness_graph(ps)
        assert len(pg.pairs) == 2
        tensor_in = set(ps.in_edges[3])
        assert not tensor_in & set(pg.pair_of)

    def test_switching_graphs_are_two_component_forests(self):
        pg = correctness_graph(mixed_pars_net())
        graphs = list(switching_graphs(pg))
        assert len(graphs) == 4
        for sg in graphs:
            assert sg.graph.m == sg.graph.n - 2
            assert len(set(connected_components(sg.graph))) == 2

    def test_too_many_pairs(self):
        rng = np.random.default_rng(0)
        ps = random_net(80, rng, weights={"par": 0.6, "mix": 0.0})
        if len(ps.pars) > 3:
            with pytest.raises(TooManyPairs):
                dr_check(ps, max_pairs=3)


class TestDrCheck:
    def test_figures(self):
        assert dr_check(single_axiom(), "mll")
        assert dr_check(tensor_par_net(), "mll")
        assert dr_check(mixed_pars_net(), "mix")
        res = dr_check(mixed_pars_net(), "mll")
        assert not res and res.reason == "disconnected"
        assert dr_check(par_of_axiom(), "mll")
        bad = dr_check(tensor_of_axiom())
        assert not bad and len(bad.witness.edges) == 2

    def test_nomix_is_mll(self):
        ps = mixed_pars_net()
        assert dr_check(ps, "nomix").correct == dr_check(ps, "mll").correct
        with pytest.raises(ValueError):
            dr_check(ps, "nonsense")

    def test_against_switching_oracle(self):
        rng = np.random.default_rng(21)
        seen = {True: 0, False: 0}
        for _ in range(300):
            ps = random_structure(rng, max_size=14, max_pars=8)
            for mode, mll in (("mix", False), ("mll", True)):
                res = dr_check(ps, mode)
                assert res.correct == oracles.dr_correct(ps, mll)
            res = dr_check(ps)
            seen[res.correct] += 1
            if not res.correct:
                w = res.witness
                pg = correctness_graph(ps)
                used = [pg.pair_of.get(e) for e in w.edges]
                used = [p for p in used if p is not None]
                assert len(used) == len(set(used))
                assert w in switching_cycles(ps)
        assert min(seen.values()) > 30

    def test_switching_cycles_empty_iff_correct(self):
        rng = np.random.default_rng(22)
        for _ in range(100):
            ps = random_structure(rng, max_size=10, max_pars=5)
            assert (not switching_cycles(ps)) == dr_check(ps).correct


class TestMixCount:
    def test_figures(self):
        assert mix_count(tensor_par_net()) == 1
        assert mix_count(mixed_pars_net()) == 2
        assert mix_count(single_axiom()) == 1
        with pytest.raises(NotCorrect) as info:
            mix_count(tensor_of_axiom())
        assert info.value.witness is not None

    def test_equals_switching_components(self):
        rng = np.random.default_rng(23)
        for _ in range(150):
            ps = random_net(int(rng.integers(1, 14)), rng, max_pars=8)
            assert oracles.switching_component_counts(ps) == {mix_count(ps)}

    def test_sampled_switchings_agree(self):
        rng = np.random.default_rng(24)
        ps = random_net(60, rng)
        pg = correctness_graph(ps)
        k = mix_count(ps)
        for _ in range(16):
            sg = sample_switching(pg, rng)
            assert len(set(connected_components(sg.graph))) == k


class TestGenerators:
    def test_random_net_is_correct_and_sized(self):
        rng = np.random.default_rng(25)
        for _ in range(100):
            size = int(rng.integers(1, 16))
            ps = random_net(size, rng, max_pars=6)
            assert len(ps) == size and len(ps.pars) <= 6
            assert dr_check(ps).correct

    def test_seed_reproducible(self):
        a = random_net(40, np.random.default_rng(7))
        b = random_net(40, np.random.default_rng(7))
        assert a == b and to_json(a) == to_json(b)

    def test_rewire_keeps_structure_valid(self):
        rng = np.random.default_rng(26)
        broken = 0
        for _ in range(100):
            ps = rewire(random_net(12, rng), rng, moves=2)
            assert len(ps) == 12
            broken += not dr_check(ps).correct
        assert broken > 10
