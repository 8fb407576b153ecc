import itertools
import math

import pytest
from hypothesis import given, strategies as st

from conjprod.perm_core import (CycleType, Perm, alt_half, canonical_element, class_size,
                                class_splits, compose, compose_all, conjugate, conjugator,
                                cycle_count_threshold, cycle_structure, format_cycle_type,
                                format_cycles, inverse, is_large_class, log_class_size, nu,
                                parity, parse_cycle_type, parse_cycles)


def perms(max_n=12, min_n=1):
    return st.integers(min_n, max_n).flatmap(
        lambda n: st.permutations(list(range(1, n + 1))).map(Perm))


def same_degree(k, max_n=12):
    return st.integers(1, max_n).flatmap(
        lambda n: st.tuples(*[st.permutations(list(range(1, n + 1))).map(Perm)] * k))


def ct(d, n=None):
    return CycleType.from_counts(d, n)


# ---------------------------------------------------------------- examples

def test_square_of_three_cycle():
    p = parse_cycles("(1 2 3)")
    assert p * p == parse_cycles("(1 3 2)")


def test_left_factor_acts_first():
    p, q = parse_cycles("(1 2)", 3), parse_cycles("(2 3)", 3)
    assert (p * q)(1) == q(p(1)) == 3
    assert compose(p, q) == p * q


def test_glue_two_cycles_with_transposition():
    b2 = parse_cycles("(10 4 1 2)(8 9 3 5 6 7)")
    assert b2 * parse_cycles("(2 8)", 10) == parse_cycles("(10 4 1 8 9 3 5 6 7 2)")


def test_inverse_examples():
    assert inverse(parse_cycles("(1 2 3)")) == parse_cycles("(1 3 2)")
    assert inverse(Perm.identity(4)) == Perm.identity(4)
    assert inverse(parse_cycles("(1 2)(3 4 5)")) == parse_cycles("(1 2)(3 5 4)")


def test_conjugation_relabels_cycles():
    p, g = parse_cycles("(1 2 3)"), parse_cycles("(1 3)", 3)
    q = conjugate(p, g)
    assert q == p ** g == ~g * p * g
    assert (q(3), q(2), q(1)) == (2, 1, 3)


def test_cycle_structure_examples():
    assert cycle_structure(parse_cycles("(5 2 3)(7 6 1 4)")) == ct({3: 1, 4: 1})
    assert cycle_structure(Perm.identity(4)) == ct({1: 4})
    assert cycle_structure(parse_cycles("(1 2)(3 4)(5)")) == ct({1: 1, 2: 2})


def test_parity_examples():
    assert parity(ct({3: 1, 4: 1})) == "odd"
    assert parity(ct({1: 9})) == "even"
    assert parity(ct({2: 2, 1: 1})) == "even"


def test_class_splits_examples():
    assert class_splits(ct({5: 1}))
    assert not class_splits(ct({1: 2, 3: 1}))
    assert class_splits(ct({3: 1, 5: 1}))
    assert not class_splits(ct({1: 1}))
    with pytest.raises(ValueError):
        class_splits(ct({2: 1}))


def test_log_class_size_examples():
    assert log_class_size(ct({1: 6})) == 0
    assert math.isclose(log_class_size(ct({5: 1})), math.log(24))
    assert math.isclose(log_class_size(ct({3: 1, 4: 1})), math.log(420))
    assert class_size(ct({3: 1, 4: 1})) == 420


def test_cycle_count_threshold_examples():
    assert cycle_count_threshold(ct({10: 1}), 0.1)
    assert not cycle_count_threshold(ct({1: 10}), 0.5)
    assert not cycle_count_threshold(ct({31: 1, 1: 69}), 0.01)


def test_large_class_needs_few_cycles():
    assert is_large_class(ct({100: 1}), 0.05)
    assert not is_large_class(ct({1: 100}), 0.05)


def test_nu_examples():
    even = ct({3: 1})
    assert nu(even, even, even) == 3
    assert nu(ct({2: 1, 1: 1}), ct({2: 1, 1: 1}), even) == 1
    assert nu(ct({3: 1, 4: 1}), ct({7: 1}), ct({7: 1})) == 2


def test_parse_examples():
    p = parse_cycles("(1 2 3)(4)", 4)
    assert p.images == (2, 3, 1, 4)
    assert parse_cycles("(5 2 3)(7 6 1 4)", 7).cycle_type() == ct({3: 1, 4: 1})
    with pytest.raises(ValueError):
        parse_cycles("(1 1 2)")
    with pytest.raises(ValueError):
        parse_cycles("(1 2", 3)


def test_parse_cycle_type_forms():
    assert parse_cycle_type("4+6") == ct({4: 1, 6: 1})
    assert parse_cycle_type("5", 8) == ct({5: 1, 1: 3})
    assert parse_cycle_type(format_cycle_type(ct({3: 2, 1: 1}))) == ct({3: 2, 1: 1})


def test_cycle_type_degree_must_add_up():
    with pytest.raises(ValueError):
        CycleType.from_counts({3: 1}, 2)


def test_canonical_element_puts_short_cycles_first():
    assert canonical_element(ct({3: 1, 5: 1})) == parse_cycles("(1 2 3)(4 5 6 7 8)")


def test_conjugator_examples():
    p = parse_cycles("(1 2 3)")
    assert p ** conjugator(p, p) == p
    g = conjugator(p, parse_cycles("(1 3 2)"))
    assert p ** g == parse_cycles("(1 3 2)")
    assert conjugator(p, parse_cycles("(1 2)", 3)) is None


def test_plus_half_holds_lexicographically_least_element():
    for n in range(2, 8):
        for lam in _partitions(n):
            c = CycleType.from_lengths(lam)
            if parity(c) != "even" or not class_splits(c):
                continue
            least = min(itertools.permutations(range(1, n + 1)),
                        key=lambda img: img if Perm(img).cycle_type() == c else (n + 1,))
            assert alt_half(Perm(least)) == "plus"


def _partitions(n, top=None):
    top = n if top is None else top
    if n == 0:
        yield ()
        return
    for k in range(min(n, top), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest


# ---------------------------------------------------------------- properties

@given(same_degree(3))
def test_composition_is_associative(t):
    p, q, r = t
    assert (p * q) * r == p * (q * r)
    assert compose_all([p, q, r]) == p * q * r


@given(perms())
def test_identity_and_inverse(p):
    e = Perm.identity(p.n)
    assert p * e == p == e * p
    assert p * ~p == e == ~p * p


@given(same_degree(2))
def test_conjugation_preserves_cycle_type(t):
    p, g = t
    assert cycle_structure(p ** g) == cycle_structure(p)


@given(perms())
def test_format_parse_roundtrip(p):
    assert parse_cycles(format_cycles(p), p.n) == p


@given(perms(max_n=9))
def test_parity_matches_transposition_count(p):
    # sort the image sequence by transpositions and count them
    img = list(p.images)
    swaps = 0
    for i in range(len(img)):
        while img[i] != i + 1:
            j = img[i] - 1
            img[i], img[j] = img[j], img[i]
            swaps += 1
    assert (parity(p.cycle_type()) == "even") == (swaps % 2 == 0) == p.is_even()


@given(same_degree(2, max_n=9))
def test_conjugator_exists_iff_same_type(t):
    p, q = t
    g = conjugator(p, q)
    if p.cycle_type() == q.cycle_type():
        assert g is not None and p ** g == q
    else:
        assert g is None


def test_conjugator_exhaustive_small_degrees():
    for n in range(1, 6):
        els = [Perm(img) for img in itertools.permutations(range(1, n + 1))]
        for p in els:
            for q in els:
                g = conjugator(p, q)
                assert (g is not None) == (p.cycle_type() == q.cycle_type())
                if g is not None:
                    assert p ** g == q
    reps = [canonical_element(CycleType.from_lengths(lam)) for lam in _partitions(6)]
    for img in itertools.permutations(range(1, 7)):
        p = Perm(img)
        for q in reps:
            g = conjugator(p, q)
            assert (g is not None) == (p.cycle_type() == q.cycle_type())


@given(perms(max_n=9))
def test_alt_half_is_preserved_by_even_conjugation(p):
    c = p.cycle_type()
    if parity(c) != "even" or not class_splits(c):
        return
    t = Perm.from_cycles([(1, 2)], p.n)
    s = Perm.from_cycles([(1, 2, 3)], p.n) if p.n >= 3 else Perm.identity(p.n)
    assert alt_half(p ** s) == alt_half(p)
    assert alt_half(p ** t) != alt_half(p)
