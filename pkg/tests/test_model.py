"""Instance and matching model: parsing, generation, comparisons."""

from __future__ import annotations

import itertools
import random

import pytest

from conftest import TWO_STABLE_TEXT, UNIQUE_CYCLIC_TEXT, make_instance
from stable_core import (
    FormatError,
    Matching,
    NotAPermutationError,
    SizeMismatchError,
    SizeTooLargeError,
    IdOutOfRangeError,
    all_instances,
    parse_instance,
    parse_matching,
    random_instance,
    random_instances,
    serialize_instance,
    serialize_matching,
)

# Critical value of the chi-square distribution, df=15, upper tail 1%.
CHI2_15_AT_1PCT = 30.577914166892494


def test_parse_two_stable_market():
    inst = parse_instance(TWO_STABLE_TEXT)
    assert inst.n == 3
    assert inst.worker_prefs[0] == (1, 0, 2)
    assert inst.firm_prefs[2] == (0, 2, 1)
    assert inst.worker_rank[0] == (1, 0, 2)


def test_parse_smallest_market():
    inst = parse_instance("1\nw1: f1\nf1: w1\n")
    assert inst.n == 1
    assert inst.worker_prefs == ((0,),)


def test_parse_ignores_comments_and_blanks():
    text = "# a comment\n\n3\n" + "\n".join(TWO_STABLE_TEXT.splitlines()[1:]) + "\n\n"
    assert parse_instance(text) == parse_instance(TWO_STABLE_TEXT)


def test_parse_rejects_duplicate_entry():
    with pytest.raises(NotAPermutationError):
        parse_instance("2\nw1: f1 f1\nw2: f1 f2\nf1: w1 w2\nf2: w1 w2\n")


def test_parse_rejects_out_of_range_id():
    with pytest.raises(NotAPermutationError):
        parse_instance("2\nw1: f1 f3\nw2: f1 f2\nf1: w1 w2\nf2: w1 w2\n")


def test_parse_rejects_short_list():
    with pytest.raises(SizeMismatchError):
        parse_instance("2\nw1: f1\nw2: f1 f2\nf1: w1 w2\nf2: w1 w2\n")


def test_parse_rejects_wrong_line_count():
    with pytest.raises(SizeMismatchError):
        parse_instance("2\nw1: f1 f2\nw2: f2 f1\nf1: w1 w2\n")


@pytest.mark.parametrize(
    "text",
    [
        "",
        "x\n",
        "2\nw1 f1 f2\nw2: f2 f1\nf1: w1 w2\nf2: w1 w2\n",
        "2\nw2: f1 f2\nw1: f2 f1\nf1: w1 w2\nf2: w1 w2\n",
        "2\nw1: f1 g2\nw2: f2 f1\nf1: w1 w2\nf2: w1 w2\n",
    ],
)
def test_parse_rejects_malformed_text(text):
    with pytest.raises(FormatError):
        parse_instance(text)


def test_serialize_unique_cyclic_market():
    inst = parse_instance(UNIQUE_CYCLIC_TEXT)
    assert serialize_instance(inst).splitlines()[1] == "w1: f3 f1 f2"


def test_serialize_smallest_market():
    inst = parse_instance("1\nw1: f1\nf1: w1\n")
    assert serialize_instance(inst) == "1\nw1: f1\nf1: w1\n"


def test_round_trip_random_instances():
    for i in range(100):
        inst = random_instance(5, i)
        assert parse_instance(serialize_instance(inst)) == inst


def test_round_trip_canonical_text():
    assert serialize_instance(parse_instance(TWO_STABLE_TEXT)) == TWO_STABLE_TEXT


def test_matching_round_trip_and_order():
    m = Matching.from_worker_assignment((2, 0, 1))
    text = serialize_matching(m)
    assert text == "w1 f3\nw2 f1\nw3 f2\n"
    assert parse_matching(text) == m
    assert m.firm_to_worker == (1, 2, 0)


def test_matching_rejects_non_permutation():
    with pytest.raises(NotAPermutationError):
        Matching.from_worker_assignment((0, 0, 2))
    with pytest.raises(NotAPermutationError):
        parse_matching("w1 f1\nw1 f2\n")
    with pytest.raises(SizeMismatchError):
        parse_matching("w1 f1\nw3 f2\n")


def test_random_instance_deterministic_per_seed():
    assert random_instance(6, 42) == random_instance(6, 42)
    assert random_instance(6, 42) != random_instance(6, 43)
    stream = list(random_instances(4, 5, seed=9))
    assert stream == list(random_instances(4, 5, seed=9))


def test_random_instance_smallest_market():
    only = make_instance([(0,)], [(0,)])
    assert random_instance(1, 0) == only
    assert random_instance(1, 12345) == only


def test_random_instance_uniform_over_size_two():
    # 16 equally likely profiles; chi-square test at the 1% level.
    counts: dict = {}
    rng = random.Random(2024)
    draws = 16000
    for _ in range(draws):
        inst = random_instance(2, rng)
        key = (inst.worker_prefs, inst.firm_prefs)
        counts[key] = counts.get(key, 0) + 1
    assert len(counts) == 16
    expected = draws / 16
    statistic = sum((c - expected) ** 2 / expected for c in counts.values())
    assert statistic < CHI2_15_AT_1PCT


@pytest.mark.parametrize("n,count", [(1, 1), (2, 16), (3, 46656)])
def test_all_instances_counts(n, count):
    seen = 0
    for _ in all_instances(n):
        seen += 1
    assert seen == count


def test_all_instances_distinct_size_two():
    seen = set()
    for inst in all_instances(2):
        seen.add((inst.worker_prefs, inst.firm_prefs))
    assert len(seen) == 16


def test_all_instances_guard():
    with pytest.raises(SizeTooLargeError):
        next(all_instances(4))


def test_prefers_on_worked_examples():
    two_stable = parse_instance(TWO_STABLE_TEXT)
    assert two_stable.worker_prefers(0, 1, 0)  # w1: f2 over f1
    unique = parse_instance(UNIQUE_CYCLIC_TEXT)
    assert unique.firm_prefers(1, 2, 0)  # f2: w3 over w1


def test_prefers_strict_total_order():
    for seed in range(5):
        inst = random_instance(6, seed)
        for who in range(6):
            for a, b in itertools.permutations(range(6), 2):
                assert inst.worker_prefers(who, a, b) != inst.worker_prefers(who, b, a)
                assert inst.firm_prefers(who, a, b) != inst.firm_prefers(who, b, a)
            for a, b, c in itertools.permutations(range(6), 3):
                if inst.worker_prefers(who, a, b) and inst.worker_prefers(who, b, c):
                    assert inst.worker_prefers(who, a, c)


def test_prefers_id_out_of_range():
    inst = parse_instance(TWO_STABLE_TEXT)
    with pytest.raises(IdOutOfRangeError):
        inst.worker_prefers(3, 0, 1)
    with pytest.raises(IdOutOfRangeError):
        inst.firm_prefers(0, 0, 3)
