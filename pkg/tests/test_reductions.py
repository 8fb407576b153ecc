import random

import pytest
from hypothesis import given, settings, strategies as st

from conjprod.class_model import (PARITY, TRAP, ClassString, Ledge, Nest, Shutter, StringTriple,
                                  check_stage)
from conjprod.corpus import forward_from_x3, random_classes, random_stage_chain, random_x3
from conjprod.perm_core import CycleType, nu
from conjprod.reductions import (RELAXED, STRICT, UNTHETA, PreconditionError, ReductionConfig,
                                 StageInstance, X2, choose_T, find_ledges, run_forward,
                                 stage_classes, sym_instance, theta1, theta2, theta3, theta4,
                                 theta5, theta6, theta7, untheta3)


def C(*lengths):
    return CycleType.from_lengths(list(lengths))


def T(n, *interior, labels=None):
    return StringTriple(tuple(ClassString(n, tuple(sorted({0, n} | set(b)))) for b in interior),
                        labels or {})


def breaks(t):
    return [p.breaks for p in t.phis]


# ---------------------------------------------------------------- stages 1 and 2

def test_theta1_keeps_types_and_records_split():
    x = theta1(C(5, 1, 1), C(7), C(3, 3, 1))
    assert x.payload == (C(5, 1, 1), C(7), C(3, 3, 1))
    assert nu(*x.payload) == 3
    # the repeated fixed point keeps the first class whole
    assert x.meta["split"] == (False, True, False)


def test_theta1_errors():
    with pytest.raises(PreconditionError) as e:
        theta1(C(2, 1), C(3), C(3))
    assert e.value.name == "theta1.even"
    with pytest.raises(PreconditionError):
        theta1(C(3), C(3, 1), C(3))
    with pytest.raises(PreconditionError) as e:
        theta1(C(*([3] * 10 + [1] * 70)), C(99, 1), C(99, 1), config=STRICT)
    assert e.value.name == "theta1.class_size"
    with pytest.raises(PreconditionError):
        theta1(C(3), C(3), C(3), config=ReductionConfig(min_n=10))


def test_sym_instance_needs_odd_nu():
    with pytest.raises(PreconditionError) as e:
        sym_instance(C(3), C(3), C(2, 1))
    assert e.value.name == "stage1.nu_odd"
    assert sym_instance(C(2, 1), C(2, 1), C(3)).stage == 1


def test_theta2_without_short_even_cycles_removes_eight():
    x = theta2(theta1(C(193, 4, 4), C(201), C(199, 1, 1)))
    assert x.meta["J"] == [] and x.meta["R"] == 8
    assert x.payload.ts == (185, 193, 191)
    assert x.n == 201 - 8


def test_theta2_odd_short_even_count():
    x = theta2(theta1(C(196, 4), C(199, 1), C(197, 3)))
    assert x.meta["J"] == [1] and x.meta["R"] == 13
    assert x.payload.classes[0] == C(187)
    assert x.payload.ts == (196 - 9, 199 - 13, 197 - 13)
    assert nu(*x.payload.classes) % 2 == 1


def test_theta2_needs_a_long_cycle():
    with pytest.raises(PreconditionError) as e:
        theta2(theta1(C(21, 19, 1), C(41), C(41)))
    assert e.value.name == "theta2.long_cycle"
    with pytest.raises(PreconditionError):
        theta2(theta1(C(201), C(201), C(201)), STRICT)


@given(st.integers(0, 10 ** 6))
def test_theta2_degree_range(seed):
    rng = random.Random(seed)
    n = rng.randint(150, 400)
    try:
        x = theta2(theta1(*random_classes(rng, n)))
    except PreconditionError:
        return
    assert n - 104 <= x.n <= n - 8


# ---------------------------------------------------------------- stage 3

def test_choose_T_order():
    assert choose_T([4, 4]) == (4, 4)
    assert choose_T([5, 4, 3, 2]) == (3,)
    assert choose_T([31, 31, 30]) == (31,)
    assert choose_T([2]) is None


def test_theta3_without_short_cycles_is_plain():
    x2 = StageInstance(2, X2((C(100), C(60, 40), C(100)), (100, 60, 100)))
    x3 = theta3(x2)
    assert x3.payload.labels == ()
    assert breaks(x3.payload) == [(0, 100), (0, 60, 100), (0, 100)]


def test_theta3_drains_a_pair_of_fours():
    x3 = theta3(theta2(theta1(C(193, 4, 4), C(201), C(199, 1, 1))))
    t = x3.payload
    labs = t.label_map()
    assert Nest(1, (4, 4)) in labs.values()
    assert Nest(3, (1, 1)) in labs.values()
    assert t.n == 201 - 8 - 8 - 2
    assert untheta3(x3).payload == theta2(theta1(C(193, 4, 4), C(201), C(199, 1, 1))).payload


# ---------------------------------------------------------------- stages 4..7

def test_theta4_without_ledges_is_identity():
    t = T(101, [40, 70], [40, 70], [40, 70])
    assert theta4(StageInstance(3, t)).payload == t


def test_theta4_single_ledge():
    y = theta4(StageInstance(3, T(100, [51], [50], [50]))).payload
    assert y.labels == ((49, Ledge(1, 1)),)
    assert y.n == 98
    assert breaks(y) == [(0, 49, 98)] * 3


def test_theta4_two_ledges():
    t = T(101, [31, 71], [30, 70], [30, 70])
    assert find_ledges(t) == [(30, 1, 1), (70, 1, 1)]
    y = theta4(StageInstance(3, t)).payload
    assert y.n == 97
    assert y.labels == ((29, Ledge(1, 1)), (67, Ledge(1, 1)))


def test_theta5_single_pair():
    y = theta5(StageInstance(4, T(99, [50], [50], []))).payload
    assert y.labels == ((55, TRAP), (56, TRAP))
    assert breaks(y) == [(0, 50, 55, 56, 99), (0, 50, 55, 56, 99), (0, 55, 56, 99)]


def test_theta5_without_pairs_is_identity():
    t = T(99, [], [], [])
    assert theta5(StageInstance(4, t)).payload == t


def test_theta6_patterns():
    y = theta6(StageInstance(5, T(100, [50], [], []))).payload
    assert y.labels == ((50, Shutter(1)),)
    y = theta6(StageInstance(5, T(101, [50], [51], [])))
    assert y.payload.labels == ((50, Shutter(1)), (51, Shutter(2)))
    assert y.meta["groups"] == [{"case": 2, "start": 48}]
    t = T(99, [], [], [])
    assert theta6(StageInstance(5, t)).payload == t


def test_theta7_parity_column_sides():
    t = T(99, [], [], [])
    assert theta7(StageInstance(6, t)).payload == t
    y = theta7(StageInstance(6, T(100, [], [], []))).payload
    assert y.labels == ((99, PARITY),)
    y = theta7(StageInstance(6, T(100, [30], [30], []))).payload
    assert y.labels == ((99, PARITY),)
    y = theta7(StageInstance(6, T(100, [70], [70], []))).payload
    assert y.labels == ((1, PARITY),)


# ---------------------------------------------------------------- roundtrips

@settings(max_examples=40)
@given(st.integers(0, 10 ** 6))
def test_inverses_undo_each_string_stage(seed):
    chain = random_stage_chain(random.Random(seed))
    for prev, cur in zip(chain, chain[1:]):
        back = UNTHETA[cur.stage](cur)
        assert back.stage == prev.stage
        assert back.payload == prev.payload


@settings(max_examples=30)
@given(st.integers(0, 10 ** 6))
def test_every_stage_passes_its_battery_and_keeps_nu_odd(seed):
    for x in random_stage_chain(random.Random(seed)):
        assert all(r.ok for r in check_stage(x.payload, x.stage))
        assert x.payload.nu() % 2 == 1


def test_class_pipeline_roundtrips_stage_three():
    rng = random.Random(11)
    done = 0
    while done < 20:
        try:
            xs = run_forward(theta1(*random_classes(rng, rng.randint(150, 400))))
        except PreconditionError:
            continue
        assert untheta3(xs[2]).payload == xs[1].payload
        assert all(nu(*stage_classes(x)) % 2 == 1 for x in xs)
        done += 1


def test_forward_from_x3_degrees():
    rng = random.Random(5)
    t3 = random_x3(rng)
    xs = forward_from_x3(t3)
    assert [x.stage for x in xs] == [3, 4, 5, 6, 7]
    assert xs[1].n == t3.n - 2 * len(find_ledges(t3))
    assert xs[2].n == xs[3].n == xs[4].n == xs[1].n
