import numpy as np
import pytest

import oracles
from pnmatch.errors import CapExceeded, Incorrect, InvalidDerivation
from pnmatch.gallery import (
    mixed_pars_net,
    par_of_axiom,
    single_axiom,
    tensor_of_axiom,
    tensor_of_axioms,
    tensor_par_net,
    two_triangles_bridge,
)
from pnmatch.proofnet import dr_check, random_net, switching_cycles
from pnmatch.sequentialization import (
    AxRule,
    MixRule,
    ParRule,
    TensorRule,
    derivation_from_json,
    derivation_links,
    derivation_to_json,
    derivation_to_upm,
    enumerate_sequentializations,
    mix_sequentialize,
    pretty,
    upm_to_derivation,
    validate_derivation,
)
from pnmatch.translations import graphification, proofification
from pnmatch.matching import enumerate_upm_derivations
from samplers import random_structure


class TestMixSequentialize:
    def test_tensor_par_net(self):
        d = mix_sequentialize(tensor_par_net())
        assert d == ParRule(4, ParRule(3, TensorRule(2, AxRule(0), AxRule(1))))

    def test_small_cases(self):
        assert mix_sequentialize(single_axiom()) == AxRule(0)
        assert mix_sequentialize(par_of_axiom()) == ParRule(1, AxRule(0))
        d = mix_sequentialize(mixed_pars_net())
        assert validate_derivation(mixed_pars_net(), d)

    def test_incorrect_raises_switching_cycle(self):
        with pytest.raises(Incorrect) as info:
            mix_sequentialize(tensor_of_axiom())
        assert info.value.witness in switching_cycles(tensor_of_axiom())

    def test_random_structures(self):
        rng = np.random.default_rng(51)
        for _ in range(200):
            ps = random_structure(rng, max_size=14, max_pars=8)
            try:
                d = mix_sequentialize(ps)
            except Incorrect as exc:
                assert not dr_check(ps).correct
                assert exc.witness in switching_cycles(ps)
                continue
            assert dr_check(ps).correct
            assert validate_derivation(ps, d)
            assert sorted(derivation_links(d)) == ps.links

    def test_trace_sees_a_bridge_every_time(self):
        rng = np.random.default_rng(52)
        for _ in range(50):
            ps = random_net(int(rng.integers(1, 60)), rng)
            steps = []
            mix_sequentialize(ps, trace=lambda comp, mb: steps.append(len(mb)))
            assert steps and min(steps) >= 1


class TestValidateDerivation:
    def test_rejects_wrong_shapes(self):
        ps = tensor_of_axioms()
        assert validate_derivation(ps, TensorRule(2, AxRule(0), AxRule(1)))
        # the left premise must hold the source of the first in-edge
        assert not validate_derivation(ps, TensorRule(2, AxRule(1), AxRule(0)))
        assert not validate_derivation(ps, ParRule(2, MixRule(AxRule(0), AxRule(1))))
        assert not validate_derivation(ps, TensorRule(2, AxRule(0), AxRule(0)))
        assert not validate_derivation(ps, MixRule(AxRule(0), AxRule(1)))

    def test_par_must_close_over_its_premises(self):
        ps = par_of_axiom()
        assert not validate_derivation(ps, MixRule(AxRule(0), ParRule(1, AxRule(0))))


class TestUpmCorrespondence:
    def test_roundtrip_random(self):
        rng = np.random.default_rng(53)
        for _ in range(100):
            ps = random_net(int(rng.integers(1, 40)), rng)
            mg = graphification(ps)
            d = mix_sequentialize(ps)
            u = derivation_to_upm(ps, d, mg)
            assert upm_to_derivation(ps, u, mg) == d

    def test_bijection_on_small_nets(self):
        rng = np.random.default_rng(54)
        for _ in range(60):
            ps = random_net(int(rng.integers(1, 7)), rng)
            mg = graphification(ps)
            ders = enumerate_sequentializations(ps)
            upms = enumerate_upm_derivations(mg.graph, mg.matching)
            assert {derivation_to_upm(ps, d, mg) for d in ders} == set(upms)
            assert {upm_to_derivation(ps, u, mg) for u in upms} == set(ders)

    def test_invalid_derivation_is_rejected(self):
        with pytest.raises(InvalidDerivation):
            derivation_to_upm(tensor_of_axioms(), AxRule(0))


class TestEnumeration:
    def test_counts(self):
        assert enumerate_sequentializations(tensor_par_net()) == [mix_sequentialize(tensor_par_net())]
        # two pars over a tensor, with one free mix: 8 derivations
        assert len(enumerate_sequentializations(mixed_pars_net())) == 8
        assert enumerate_sequentializations(tensor_of_axiom()) == []

    def test_proofification_of_two_triangles_is_rigid(self):
        g, m = two_triangles_bridge()
        assert len(enumerate_sequentializations(proofification(g, m).ps)) == 1

    def test_agrees_with_direct_search(self):
        rng = np.random.default_rng(55)
        for _ in range(150):
            ps = random_structure(rng, max_size=8, max_pars=5)
            ders = enumerate_sequentializations(ps, cap=10**6)
            assert bool(ders) == oracles.is_sequentializable(ps) == dr_check(ps).correct
            assert all(validate_derivation(ps, d) for d in ders)
            assert len(set(ders)) == len(ders)

    def test_cap(self):
        ps = random_net(12, np.random.default_rng(1), weights={"mix": 0.9, "par": 0.0})
        with pytest.raises(CapExceeded):
            enumerate_sequentializations(ps, cap=2)


class TestSerialization:
    def test_json_roundtrip(self):
        d = mix_sequentialize(mixed_pars_net())
        assert derivation_from_json(derivation_to_json(d)) == d
        with pytest.raises(ValueError):
            derivation_from_json({"kind": "cut"})

    def test_pretty(self):
        text = pretty(mix_sequentialize(tensor_par_net()))
        assert text.splitlines()[0] == "⅋ 4"
        assert text.splitlines()[-1].strip() == "ax 1"
