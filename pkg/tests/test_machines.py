"""State observer, observer-form encoder, syndrome-former."""

import itertools
import random
from math import prod

import numpy as np
import pytest

from groupcodes import dynamics as dyn
from groupcodes import machines as mc
from groupcodes.codes import GroupCode, dual, restriction
from groupcodes.spaces import SymbolLayout


def random_code(rng, modulus, axis, width=1):
    lay = SymbolLayout.uniform(modulus, axis, width)
    r = rng.randint(0, lay.total_dim)
    return GroupCode.from_generators(
        lay, [[rng.randrange(modulus) for _ in range(lay.total_dim)] for _ in range(r)])


# --- state observer -----------------------------------------------------------

def test_observer_repetition(repetition6):
    code = repetition6.code
    obs = mc.StateObserver(code)
    assert obs.memory == 1
    labels = set()
    for g in range(4):
        w = [g] * 6
        lab = obs.observe_codeword(w, 3)
        assert lab == obs.observe([w[2]], 3)
        labels.add(lab)
    assert len(labels) == 4 == obs.state_count(3)


def test_observer_zero_codeword(rate13):
    obs = mc.StateObserver(rate13.code)
    zero = [0] * rate13.code.layout.total_dim
    for k in range(0, 13):
        assert not any(obs.observe_codeword(zero, k))


def test_observer_label_counts(rate13):
    code = rate13.code
    obs = mc.StateObserver(code)
    assert obs.state_count(6) == 8
    rng = random.Random(2)
    labels = set()
    enc = mc.ObserverEncoder(code)
    for _ in range(200):
        w, _ = enc.encode(enc.random_inputs(rng))
        labels.add(obs.observe_codeword(w, 6))
    assert len(labels) == 8


def test_observer_window_matches_full_word(rate13):
    code = rate13.code
    obs = mc.StateObserver(code)
    enc = mc.ObserverEncoder(code)
    rng = random.Random(3)
    lay = code.layout
    for _ in range(20):
        w, _ = enc.encode(enc.random_inputs(rng))
        for k in range(lay.axis_len + 1):
            lo = max(0, k - obs.memory)
            window = [int(w[i]) for t in range(lo, k) for i in lay.block(t)]
            assert obs.observe(window, k) == obs.observe_codeword(w, k)


def test_observer_rejects_garbage(repetition6):
    obs = mc.StateObserver(repetition6.code)
    with pytest.raises(mc.WindowNotInRestriction):
        obs.observe_codeword([1, 2, 1, 1, 1, 1], 3)


# --- encoder -------------------------------------------------------------------

def test_encoder_zero_inputs_give_zero_codeword(rate13):
    enc = mc.ObserverEncoder(rate13.code)
    zeros = [tuple([0] * w) for w in rate13.code.layout.widths]
    word, trace = enc.encode(zeros)
    assert not word.any()
    assert all(not any(s.state) for s in trace.steps)


def test_encoder_bijective_onto_code(pairs8, repetition6):
    for wc in (pairs8, repetition6):
        code = wc.code
        enc = mc.ObserverEncoder(code)
        words = set()
        for combo in itertools.product(*[list(g.enumerate()) for g in enc.input_groups]):
            w, _ = enc.encode([tuple(map(int, g)) for g in combo])
            words.add(tuple(map(int, w)))
        assert len(words) == code.order()


def test_encoder_input_validation(rate13):
    enc = mc.ObserverEncoder(rate13.code)
    bad = [tuple([0, 0, 0])] * 12
    bad[5] = (0, 1, 0)  # not in F_5 = multiples of (1, 0, 0)
    with pytest.raises(mc.InputNotInInputGroup):
        enc.encode(bad)


def test_encoder_input_group_orders(rate13):
    # one free Z4 symbol per interior time; the product accounts for the code
    orders = mc.input_group_orders(rate13.code)
    assert orders == [4] * 10 + [1, 1]
    assert prod(orders) == rate13.code.order()


def test_pairs_encoder_is_autonomous(pairs8):
    enc = mc.ObserverEncoder(pairs8.code)
    orders = mc.input_group_orders(pairs8.code)
    assert orders == [4, 2, 1, 1, 1, 1, 1, 1]
    assert prod(orders) == 8


# --- syndrome former -------------------------------------------------------------

def test_syndrome_kernel_and_cosets(repetition6):
    code = repetition6.code
    sf = mc.SyndromeFormer(code)
    lay = code.layout
    # kernel is exactly the code, and cosets map to distinct syndromes
    seen = {}
    for w in itertools.product(range(4), repeat=6):
        syn = tuple(sf.form(list(w))[0][k] for k in range(6))
        label = tuple(map(int, code.carrier.reduce(list(w))))
        if label in seen:
            assert seen[label] == syn
        else:
            assert syn not in set(seen.values())
            seen[label] = syn
    zero = tuple(sf.form([0] * 6)[0][k] for k in range(6))
    members = [lbl for lbl, syn in seen.items() if syn == zero]
    assert members == [tuple([0] * 6)]


def test_syndrome_repetition_tracks_symbol_changes(repetition6):
    sf = mc.SyndromeFormer(repetition6.code)
    assert sf.is_member([3] * 6)
    assert not sf.is_member([1, 1, 1, 2, 1, 1])
    syn, trace = sf.form([2] * 6)
    assert all(not any(c) for c in syn)
    assert len(trace.steps) == 6


def test_syndrome_former_memory_matches_observer_memory(rate13, repetition6, pairs8):
    # every check row spans at most observer-memory + 1 time blocks, i.e. the
    # window memory of the former equals the observer memory of the code
    for wc, expect in ((rate13, 1), (repetition6, 1), (pairs8, 2)):
        sf = mc.SyndromeFormer(wc.code)
        assert sf.memory == expect == dyn.observability_index(wc.code, wc.margin)
    # and the same holds for interior-restricted windows
    code = rate13.code
    interior = code.layout.interval(3, 8)
    sf = mc.SyndromeFormer(restriction(code, interior))
    assert sf.memory <= dyn.observability_index(code, 3)
    syn_widths = [sf.syndrome_width(k) for k in range(6)]
    assert sum(syn_widths) == dual(restriction(code, interior)).carrier.num_generators


def test_syndrome_former_flags_perturbations(rate13):
    code = rate13.code
    sf = mc.SyndromeFormer(code)
    rng = random.Random(9)
    enc = mc.ObserverEncoder(code)
    for _ in range(20):
        w, _ = enc.encode(enc.random_inputs(rng))
        assert sf.is_member(w)
        while True:
            e = [rng.randrange(4) for _ in range(code.layout.total_dim)]
            if not code.contains(e):
                break
        assert not sf.is_member((w + np.array(e)) % 4)


# --- roundtrip -----------------------------------------------------------------

def test_roundtrip_fixtures(rate13, repetition6, pairs8):
    for wc in (rate13, repetition6, pairs8):
        assert mc.roundtrip_check(wc.code, trials=10, rng=random.Random(1))


def test_roundtrip_random_codes():
    rng = random.Random(55)
    for _ in range(10):
        code = random_code(rng, rng.choice([2, 3, 4]), rng.randint(2, 6),
                           width=rng.choice([1, 2]))
        assert mc.roundtrip_check(code, trials=3, rng=rng)
