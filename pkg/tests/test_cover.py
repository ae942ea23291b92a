"""Quotient levels, connecting maps, fibers, isolated classes."""

import pytest

from shiftcover import (
    ConstructionError,
    HorizonExceededError,
    LevelIndex,
    Ray,
    StabilizationError,
    connecting_map,
    default_chain,
    default_refinements,
    extract_chain,
    growing_chain,
    iota_level,
    isolated_classes,
    pi_fiber,
    poset_leq,
    quotient_level,
    shift_on_level,
)


def test_level_index_validation():
    with pytest.raises(ConstructionError):
        LevelIndex(0, 3)
    with pytest.raises(ConstructionError):
        LevelIndex(4, 3)
    assert LevelIndex(2, 6).defect == 4


def test_poset_order():
    assert poset_leq(LevelIndex(1, 2), LevelIndex(2, 3))
    assert poset_leq(LevelIndex(1, 2), LevelIndex(1, 5))
    assert not poset_leq(LevelIndex(2, 3), LevelIndex(1, 5))  # k shrinks
    assert not poset_leq(LevelIndex(1, 5), LevelIndex(2, 3))  # defect shrinks


def test_extract_chain():
    levels = [LevelIndex(1, 2), LevelIndex(2, 3), LevelIndex(1, 5), LevelIndex(3, 4)]
    chain, longest = extract_chain(levels)
    assert chain == [LevelIndex(1, 2), LevelIndex(2, 3), LevelIndex(3, 4)]
    assert longest == 3
    with pytest.raises(ValueError):
        extract_chain([])


def test_full_shift_small_levels(full_table):
    q22 = quotient_level(full_table, LevelIndex(2, 2), 8)
    q11 = quotient_level(full_table, LevelIndex(1, 1), 8)
    assert len(q22.classes) == 4
    assert len(q11.classes) == 2
    mapping = connecting_map(q22, q11)
    assert set(mapping.values()) == set(q11.classes)  # surjective
    preimages = {c: 0 for c in q11.classes}
    for dst in mapping.values():
        preimages[dst] += 1
    assert all(v == 2 for v in preimages.values())


def test_quotient_level_horizon_guards(fib_table_small):
    with pytest.raises(HorizonExceededError):
        quotient_level(fib_table_small, LevelIndex(3, 3), 2)
    with pytest.raises(HorizonExceededError):
        quotient_level(fib_table_small, LevelIndex(2, 8), 38)


def test_quotient_stabilized_flag(fib_table_small):
    q = quotient_level(fib_table_small, LevelIndex(2, 3), 20)
    assert q.stabilized
    assert all(c.witness == min(q.witnesses[c.key]) for c in q.classes)


def test_class_of_word_and_iota(fib, fib_ws):
    level = LevelIndex(2, 3)
    q = fib_ws.level(2, 3)
    for n in range(6):
        ray = Ray(fib).shift(n)
        c = iota_level(ray, level, fib_ws.table)
        assert q.by_key[c.key] is q.class_of_word(ray.prefix(q.horizon_used))


def test_class_of_word_unrealized_raises(fib_ws):
    q = fib_ws.level(2, 3)
    # an empty tail has every length-3 word as past: that pair is not a class
    with pytest.raises(StabilizationError):
        q.class_of_word("01")


def test_connecting_map_requires_order(fib_ws):
    with pytest.raises(ConstructionError):
        connecting_map(fib_ws.level(1, 2), fib_ws.level(2, 3))


def test_shift_on_level_requires_adjacent_levels(fib_ws):
    with pytest.raises(ConstructionError):
        shift_on_level(fib_ws.level(2, 3), fib_ws.level(2, 3))
    mapping = shift_on_level(fib_ws.level(3, 4), fib_ws.level(2, 4))
    assert set(mapping.values()) <= set(fib_ws.level(2, 4).classes)


def test_chain_builders():
    assert default_chain(3) == [LevelIndex(1, 5), LevelIndex(2, 6), LevelIndex(3, 7)]
    grow = growing_chain(5, defect_cap=3)
    assert [li.defect for li in grow] == [1, 2, 3, 3, 3]


def test_default_refinements_jump():
    refs = default_refinements(LevelIndex(2, 3), depth=2)
    assert refs == [LevelIndex(5, 7), LevelIndex(8, 11)]
    refs = default_refinements(LevelIndex(2, 3), depth=2, jump=1)
    assert refs == [LevelIndex(3, 5), LevelIndex(4, 7)]


def test_pi_fiber_rejects_bad_chain(fib_ws, fib):
    with pytest.raises(ConstructionError):
        pi_fiber(Ray(fib), [LevelIndex(1, 5)], fib_ws.builder)
    with pytest.raises(ConstructionError):
        pi_fiber(Ray(fib), [LevelIndex(2, 6), LevelIndex(1, 5)], fib_ws.builder)


def test_pi_fiber_triple(fib, fib_ws, mech_ray):
    chain = default_chain(10, 4)
    expected = {"omega": 3, "zero_omega": 2, "mech": 1}
    rays = {"omega": Ray(fib), "zero_omega": Ray(fib, 0, "0"), "mech": mech_ray}
    for name, ray in rays.items():
        report = pi_fiber(ray, chain, fib_ws.builder, horizon=fib_ws.horizon)
        assert report.stabilized
        assert report.thread_count == expected[name]
        assert report.stable_from_k == 1
        assert all(report.certificate["levels_stabilized"])


def test_pi_fiber_orbit_constancy(fib, fib_ws):
    chain = growing_chain(10, defect_cap=8)
    for s in range(1, 6):
        report = pi_fiber(Ray(fib).shift(s), chain, fib_ws.builder, horizon=fib_ws.horizon)
        assert report.stabilized and report.thread_count == 3


def test_isolated_classes_fibonacci(fib_ws):
    level = LevelIndex(2, 3)
    q = fib_ws.level(2, 3)
    refs = [fib_ws.builder.level(li, fib_ws.horizon) for li in default_refinements(level)]
    iso = isolated_classes(q, refs)
    assert len(iso) == 5
    with pytest.raises(ValueError):
        isolated_classes(q, [])


def test_isolated_classes_full_shift_empty(full_table):
    q = quotient_level(full_table, LevelIndex(2, 3), 8)
    refs = [
        quotient_level(full_table, li, 8)
        for li in (LevelIndex(3, 4), LevelIndex(4, 6))
    ]
    assert isolated_classes(q, refs) == set()
