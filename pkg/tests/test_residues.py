"""Howell-form subgroup algebra over Z_M."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from groupcodes import residues as R
from groupcodes.residues import OrderExceedsCap, Subgroup
from groupcodes import oracle


def S(modulus, rows, ambient=None):
    if ambient is None:
        ambient = len(rows[0]) if rows else 0
    return Subgroup.span(modulus, rows, ambient)


# --- strategies --------------------------------------------------------------

small_groups = st.integers(2, 6).flatmap(
    lambda m: st.integers(1, 4).flatmap(
        lambda n: st.lists(
            st.lists(st.integers(0, m - 1), min_size=n, max_size=n),
            min_size=0, max_size=n + 1,
        ).map(lambda rows: Subgroup.span(m, rows, n))))


# --- howell canonical form ---------------------------------------------------

def test_howell_spec_examples():
    h = S(4, [(2, 2), (0, 2)])
    assert h.basis.tolist() == [[2, 0], [0, 2]]

    assert Subgroup.span(4, [], 2) == Subgroup.trivial(4, 2)

    pairs = S(4, [(1, 1), (0, 2)])
    assert pairs.order() == 8
    got = {tuple(map(int, e)) for e in pairs.enumerate()}
    assert got == {(0, 0), (1, 1), (2, 2), (3, 3), (0, 2), (1, 3), (2, 0), (3, 1)}


@settings(max_examples=150, deadline=None)
@given(small_groups, st.randoms(use_true_random=False))
def test_howell_is_canonical_under_row_operations(h, rng):
    """The output depends on the span only, not on its presentation."""
    rows = [list(map(int, r)) for r in h.basis]
    if not rows:
        rows = [[0] * h.ambient]
    # random invertible-ish presentation: shuffles, row sums, scalings kept in span
    for _ in range(6):
        op = rng.randrange(3)
        i = rng.randrange(len(rows))
        j = rng.randrange(len(rows))
        if op == 0:
            rows[i], rows[j] = rows[j], rows[i]
        elif op == 1 and i != j:
            rows[i] = [(a + b) % h.modulus for a, b in zip(rows[i], rows[j])]
        else:
            scale = rng.randrange(h.modulus)
            rows.append([(a * scale) % h.modulus for a in rows[i]])
    assert Subgroup.span(h.modulus, rows, h.ambient) == h


@settings(max_examples=100, deadline=None)
@given(small_groups)
def test_howell_pivots_divide_modulus(h):
    for row in h.basis:
        p = int(row[np.argmax(row != 0)])
        assert h.modulus % p == 0


@settings(max_examples=60, deadline=None)
@given(small_groups, st.randoms(use_true_random=False))
def test_howell_from_independent_generating_set(h, rng):
    """Random elements of the span that together regenerate it give the same
    basis (stronger than row operations on one presentation)."""
    if h.modulus ** h.ambient > 2048:
        return
    elems = list(h.enumerate())
    gens = [elems[rng.randrange(len(elems))] for _ in range(len(elems))]
    regenerated = Subgroup.span(h.modulus, gens, h.ambient)
    if regenerated.order() == h.order():
        assert regenerated == h
    else:
        assert h.contains_subgroup(regenerated)


# --- membership / reduction --------------------------------------------------

def test_membership_spec_examples():
    h = S(4, [(2, 0), (0, 2)])
    assert h.contains((2, 2))
    assert not h.contains((1, 0))
    assert S(4, [(1, 1), (0, 2)]).contains((3, 1))


def test_membership_dimension_mismatch():
    with pytest.raises(ValueError):
        S(4, [(1, 1)]).contains((1, 0, 0))


def test_coset_reduce_spec_examples():
    h = S(4, [(2, 0), (0, 2)])
    assert tuple(h.reduce((3, 1))) == (1, 1)
    assert h.contains(np.array([3, 1]) - np.array([1, 1]))
    assert not h.reduce((2, 2)).any()
    t = Subgroup.trivial(4, 2)
    assert tuple(t.reduce((3, 1))) == (3, 1)


@settings(max_examples=100, deadline=None)
@given(small_groups, st.data())
def test_coset_reduce_is_constant_on_cosets(h, data):
    v = data.draw(st.lists(st.integers(0, h.modulus - 1),
                           min_size=h.ambient, max_size=h.ambient))
    shift = data.draw(st.sampled_from(list(h.enumerate()))
                      if h.num_generators else st.just(np.zeros(h.ambient, int)))
    assert tuple(h.reduce(v)) == tuple(h.reduce((np.array(v) + shift) % h.modulus))


@settings(max_examples=60, deadline=None)
@given(small_groups)
def test_coset_reduce_partitions_ambient(h):
    """Exactly M^n / order(H) distinct labels over the whole ambient space."""
    M, n = h.modulus, h.ambient
    if M ** n > 2048:
        return
    labels = {tuple(h.reduce(w)) for w in oracle._all_words(M, n)}
    assert len(labels) == M ** n // h.order()


# --- sum / orthogonal / intersection ------------------------------------------

def test_sum_spec_examples():
    assert R.add(S(4, [(2, 0)]), S(4, [(0, 2)])) == S(4, [(2, 0), (0, 2)])
    h = S(4, [(1, 2)])
    assert R.add(h, Subgroup.trivial(4, 2)) == h
    assert R.add(S(4, [(1, 1)]), S(4, [(0, 2)])) == S(4, [(1, 1), (0, 2)])


def test_orthogonal_spec_examples():
    assert R.orthogonal(S(4, [(1, 1)])) == S(4, [(1, 3)])
    assert R.orthogonal(Subgroup.full(4, 2)) == Subgroup.trivial(4, 2)
    assert R.orthogonal(Subgroup.trivial(4, 2)) == Subgroup.full(4, 2)


def test_orthogonal_brute_force():
    h = S(4, [(1, 1)])
    brute = {w for w in oracle._all_words(4, 2) if sum(w) % 4 == 0}
    assert {tuple(map(int, e)) for e in R.orthogonal(h).enumerate()} == brute


@settings(max_examples=120, deadline=None)
@given(small_groups)
def test_orthogonal_involution_and_order_duality(h):
    o = R.orthogonal(h)
    assert R.orthogonal(o) == h
    assert h.order() * o.order() == h.modulus ** h.ambient


@settings(max_examples=80, deadline=None)
@given(small_groups, small_groups)
def test_sum_intersection_duality(h1, h2):
    if h1.modulus != h2.modulus or h1.ambient != h2.ambient:
        return
    lhs = R.orthogonal(R.add(h1, h2))
    rhs = R.intersect(R.orthogonal(h1), R.orthogonal(h2))
    assert lhs == rhs


def test_intersect_spec_examples():
    assert R.intersect(S(4, [(1, 0)]), S(4, [(0, 1)])) == Subgroup.trivial(4, 2)
    h = S(4, [(1, 1), (0, 2)])
    assert R.intersect(h, h) == h
    assert R.intersect(h, S(4, [(1, 3)])) == S(4, [(1, 3)])


def test_intersect_matches_element_sets():
    h1 = S(6, [(2, 3), (0, 3)])
    h2 = S(6, [(1, 4)])
    got = {tuple(map(int, e)) for e in R.intersect(h1, h2).enumerate()}
    want = oracle.subgroup_elements(h1) & oracle.subgroup_elements(h2)
    assert got == want


# --- order / enumerate ---------------------------------------------------------

def test_order_spec_examples():
    assert Subgroup.trivial(4, 2).order() == 1
    assert Subgroup.full(4, 3).order() == 64
    assert S(4, [(1, 0, 0), (0, 1, 0), (0, 0, 2)]).order() == 32


@settings(max_examples=100, deadline=None)
@given(small_groups)
def test_order_matches_enumeration(h):
    elems = {tuple(map(int, e)) for e in h.enumerate()}
    assert len(elems) == h.order()
    assert elems == oracle.subgroup_elements(h)


def test_enumerate_spec_examples():
    assert {tuple(map(int, e)) for e in Subgroup.trivial(4, 2).enumerate()} == {(0, 0)}
    got = {tuple(map(int, e)) for e in S(4, [(1, 3)]).enumerate()}
    assert got == {(0, 0), (1, 3), (2, 2), (3, 1)}


def test_enumerate_cap():
    with pytest.raises(OrderExceedsCap):
        list(Subgroup.full(4, 4).enumerate(cap=10))


# --- quotient invariants --------------------------------------------------------

def test_quotient_invariants_spec_examples():
    full = Subgroup.full(4, 2)
    assert R.quotient_invariants(full, S(4, [(2, 0), (0, 2)])) == (2, 2)
    h = S(4, [(1, 1), (0, 2)])
    assert R.quotient_invariants(h, h) == ()
    assert R.quotient_invariants(h, Subgroup.trivial(4, 2)) == (2, 4)


def test_quotient_requires_containment():
    with pytest.raises(ValueError):
        R.quotient_invariants(S(4, [(2, 0)]), S(4, [(0, 1)]))


@settings(max_examples=80, deadline=None)
@given(small_groups, small_groups)
def test_quotient_duality(h1, h2):
    """invariants(A/B) == invariants(orth(B)/orth(A)) whenever B <= A."""
    if h1.modulus != h2.modulus or h1.ambient != h2.ambient:
        return
    a = R.add(h1, h2)  # force containment: B = h1 <= A
    left = R.quotient_invariants(a, h1)
    right = R.quotient_invariants(R.orthogonal(h1), R.orthogonal(a))
    assert left == right


@settings(max_examples=60, deadline=None)
@given(small_groups, small_groups)
def test_quotient_invariants_match_element_orders(h1, h2):
    if h1.modulus != h2.modulus or h1.ambient != h2.ambient:
        return
    if h1.modulus ** h1.ambient > 4096:
        return
    a = R.add(h1, h2)
    fast = R.quotient_invariants(a, h1)
    brute = oracle.quotient_invariants_by_orders(
        oracle.subgroup_elements(a), oracle.subgroup_elements(h1), h1.modulus)
    assert fast == brute
    assert a.order() // h1.order() == R.group_order(fast)


def test_format_group():
    assert R.format_group(()) == "trivial"
    assert R.format_group((2, 4)) == "Z2 x Z4"


def test_large_modulus_stays_exact():
    # beyond the int64-safe product range the entries switch to exact ints
    M = 1 << 40
    h = S(M, [(1 << 13, 3)])
    o = R.orthogonal(h)
    assert h.order() * o.order() == M ** 2
    assert R.orthogonal(o) == h
    assert R.quotient_invariants(Subgroup.full(M, 1),
                                 S(M, [(1 << 20,)])) == (1 << 20,)
