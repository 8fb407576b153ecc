import random

import pytest

from conjprod.alignment import is_aligned
from conjprod.base_solutions import (baby_single, baby_split, classify_restriction, concat,
                                     restrictions, solve_x7)
from conjprod.class_model import ClassString, StringTriple, mu_class, triple_from_lengths
from conjprod.corpus import random_stage_chain
from conjprod.perm_core import CycleType


def cycles(sol):
    return [[list(c) for c in sol.cycles(i)] for i in range(3)]


def test_single_one_point():
    sol = baby_single(1)
    assert cycles(sol) == [[[1]], [[1]], [[1]]]
    assert sol.product_holds()


def test_single_three_cycle_squares():
    sol = baby_single(3)
    assert cycles(sol) == [[[1, 2, 3]], [[1, 2, 3]], [[1, 3, 2]]]
    assert sol.product_holds()


def test_single_seven():
    sol = baby_single(7)
    assert cycles(sol)[2] == [[1, 3, 5, 7, 2, 4, 6]]
    assert sol.product_holds()


def test_single_rejects_even_length():
    with pytest.raises(ValueError):
        baby_single(4)


def test_split_first_two_strings():
    sol = baby_split("12", 3, 2)
    assert cycles(sol) == [[[1, 2, 3], [4, 5]], [[4, 2, 3], [1, 5]], [[1, 3, 5, 2, 4]]]
    assert sol.product_holds()


def test_split_first_and_third_strings():
    sol = baby_split("13", 3, 4)
    assert cycles(sol) == [[[1, 2, 3], [4, 5, 6, 7]], [[2, 3, 5, 1, 4, 6, 7]],
                           [[1, 3, 4], [2, 5, 7, 6]]]
    assert sol.product_holds()


def test_split_last_two_strings():
    sol = baby_split("23", 5, 2)
    assert cycles(sol) == [[[1, 2, 3, 4, 5, 6, 7]], [[6, 1, 2, 4, 5], [7, 3]],
                           [[1, 4, 6, 3, 5], [2, 7]]]
    assert sol.product_holds()


def test_split_order_swaps_the_two_cycles():
    a, b = baby_split("12", 5, 4), baby_split("12", 5, 4, "e-first")
    assert cycles(b)[0] == cycles(a)[0][::-1]
    assert cycles(b)[2] == cycles(a)[2]
    assert b.product_holds()


def test_split_argument_errors():
    for args in (("12", 4, 2), ("12", 3, 3), ("12", 1, 2), ("21", 3, 2)):
        with pytest.raises(ValueError):
            baby_split(*args)
    with pytest.raises(ValueError):
        baby_split("12", 3, 2, order="middle")


def test_parameter_grid_products():
    for m in range(1, 200, 2):
        assert baby_single(m).product_holds()
    for case in ("12", "13", "23"):
        for d in range(3, 50, 2):
            for e in range(2, 51, 2):
                for order in ("d-first", "e-first"):
                    sol = baby_split(case, d, e, order)
                    assert sol.product_holds(), (case, d, e, order)
                    big = "123".replace(case[0], "").replace(case[1], "")
                    want_big = CycleType.from_lengths([d + e])
                    assert mu_class(sol.triple.phis[int(big) - 1]) == want_big


def test_concat_single_part_is_unchanged():
    sol = baby_split("13", 5, 4)
    assert concat([sol]) == sol


def test_concat_three_and_five():
    sol = concat([baby_single(3), baby_single(5)])
    assert sol.n == 8
    assert sol.product_holds()
    assert cycles(sol)[0] == [[1, 2, 3], [4, 5, 6, 7, 8]]


def test_concat_of_aligned_parts_stays_aligned():
    parts = [baby_split("12", 19, 20), baby_single(21), baby_split("23", 21, 20, "e-first")]
    for p in parts:
        assert is_aligned(p).aligned
    assert is_aligned(concat(parts)).aligned


def test_concat_needs_parts():
    with pytest.raises(ValueError):
        concat([])


def test_classify_restriction():
    assert classify_restriction(triple_from_lengths([7], [7], [7])) == ("single", 7, 0, "d-first")
    assert classify_restriction(triple_from_lengths([5, 4], [5, 4], [9])) == ("12", 5, 4, "d-first")
    assert classify_restriction(triple_from_lengths([4, 5], [9], [4, 5])) == ("13", 5, 4, "e-first")
    with pytest.raises(ValueError):
        classify_restriction(triple_from_lengths([8], [8], [8]))
    with pytest.raises(ValueError):
        classify_restriction(triple_from_lengths([3, 3, 3], [9], [9]))
    with pytest.raises(ValueError):
        classify_restriction(triple_from_lengths([3, 6], [3, 6], [3, 6]))


def test_all_single_restrictions_give_single_pieces():
    t = StringTriple(tuple(ClassString(30, (0, 9, 30)) for _ in range(3)))
    sol, rep = solve_x7(t)
    assert cycles(sol) == cycles(concat([baby_single(9), baby_single(21)]))
    assert rep.aligned


def test_stage_seven_instances_get_aligned_solutions():
    rng = random.Random(17)
    for _ in range(15):
        t7 = random_stage_chain(rng)[-1].payload
        sol, rep = solve_x7(t7)
        assert sol.triple == t7
        assert rep.aligned and rep.disjoint
        for piece, sub in zip(restrictions(sol.triple), restrictions(t7)):
            assert piece.classes() == sub.classes()
