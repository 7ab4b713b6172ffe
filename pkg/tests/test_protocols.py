"""Protocol trees, guess protocols, the gap algebra, and cost accounting."""

import random

import pytest

from cclab.protocols import (
    ALICE,
    BOB,
    DeterministicProtocol,
    DomainMismatchError,
    EnumerationGuardError,
    Leaf,
    MemberProtocols,
    Node,
    OutputLeaf,
    ProtocolTooLargeError,
    always_accept,
    always_reject,
    ceil_log2,
    dumps_protocol,
    enumerate_protocols,
    grid_protocol,
    loads_protocol,
    normalize_nonzero,
    pp_cost,
    pp_cost_closed,
    pp_eval,
    pp_matrix,
    pp_to_threshold,
    threshold_to_pp,
    wrap_deterministic,
)
from cclab.suites import random_guess, random_members


def test_ceil_log2():
    assert [ceil_log2(n) for n in (1, 2, 3, 4, 5, 8, 9)] == [0, 1, 2, 2, 3, 3, 4]


def test_tree_validation():
    with pytest.raises(ValueError):
        DeterministicProtocol(2, 2, Node(ALICE, (0, 1, 0), Leaf(0), Leaf(1)))
    with pytest.raises(ValueError):
        DeterministicProtocol(2, 2, Leaf(2))
    with pytest.raises(ValueError):
        DeterministicProtocol(2, 2, OutputLeaf("carol", (0, 1)))


def test_deterministic_protocol_semantics():
    # Alice announces her bit; on 1 Bob answers from his table.
    tree = Node(ALICE, (0, 1), Leaf(0), OutputLeaf(BOB, (1, 0)))
    p = DeterministicProtocol(2, 2, tree)
    assert p.output_grid() == ((0, 0), (1, 0))
    assert p.depth == 1
    assert p.closed_depth == 2


def test_grid_protocol_matches_grid():
    rng = random.Random(3)
    for _ in range(20):
        rows = rng.randrange(1, 5)
        cols = rng.randrange(1, 5)
        grid = tuple(
            tuple(rng.randrange(2) for _ in range(cols)) for _ in range(rows)
        )
        p = grid_protocol(rows, cols, grid)
        assert p.output_grid() == grid
        assert p.depth == (ceil_log2(rows) if rows > 1 else 0)
    with pytest.raises(ValueError):
        grid_protocol(2, 2, ((0, 1),))


def test_gap_counts_members():
    g = MemberProtocols(
        (
            DeterministicProtocol(2, 2, Leaf(1)),
            DeterministicProtocol(2, 2, Leaf(1)),
            DeterministicProtocol(2, 2, Leaf(0)),
        )
    )
    assert g.guess_count == 3
    assert g.gap == ((1, 1), (1, 1))  # 2 accepts - 1 reject


def test_gap_algebra_identities():
    rng = random.Random(17)
    for _ in range(80):
        g1 = random_guess(rng, 3, 3)
        g2 = random_guess(rng, 3, 3)
        comp = g1.complement()
        total = g1 + g2
        prod = g1 * g2
        rep = g1.repeat(3)
        for x in range(3):
            for y in range(3):
                assert comp.gap[x][y] == -g1.gap[x][y]
                assert total.gap[x][y] == g1.gap[x][y] + g2.gap[x][y]
                assert prod.gap[x][y] == g1.gap[x][y] * g2.gap[x][y]
                assert rep.gap[x][y] == 3 * g1.gap[x][y]
        # the algebra nodes must agree with a recount over materialized members
        for g in (comp, total, prod, rep):
            assert g.flatten().gap == g.gap


def test_guess_count_algebra():
    rng = random.Random(23)
    g1 = random_members(rng, 2, 2)
    g2 = random_members(rng, 2, 2)
    assert g1.complement().guess_count == g1.guess_count
    assert (g1 + g2).guess_count == g1.guess_count + g2.guess_count
    assert (g1 * g2).guess_count == g1.guess_count * g2.guess_count
    assert g1.repeat(4).guess_count == 4 * g1.guess_count


def test_domain_mismatch_rejected():
    g1 = always_accept(2, 2)
    g2 = always_accept(2, 3)
    with pytest.raises(DomainMismatchError):
        g1 + g2
    with pytest.raises(DomainMismatchError):
        g1 * g2


def test_pp_semantics_and_cost():
    g = always_accept(2, 2)
    assert pp_matrix(g).entries == ((1, 1), (1, 1))
    assert pp_matrix(always_reject(2, 2)).entries == ((0, 0), (0, 0))
    assert pp_eval(g, 0, 1) == 1
    assert pp_cost(g) == 0

    member = DeterministicProtocol(
        2, 2, Node(ALICE, (0, 1), Leaf(0), OutputLeaf(BOB, (1, 0)))
    )
    five = MemberProtocols((member,) * 5)
    assert pp_cost(five) == ceil_log2(5) + 1  # 3 + depth 1
    assert pp_cost_closed(five) == ceil_log2(5) + 2  # output leaf charged


def test_flatten_guard():
    g = random_members(random.Random(0), 2, 2, max_members=3)
    big = g.repeat(2)
    with pytest.raises(ProtocolTooLargeError):
        big.flatten(limit=1)


def test_threshold_round_trip():
    rng = random.Random(29)
    for _ in range(60):
        g = random_members(rng, rng.randrange(2, 4), rng.randrange(2, 4), max_members=4)
        acc, threshold = pp_to_threshold(g)
        assert threshold == g.guess_count // 2
        rebuilt = threshold_to_pp(g, threshold)
        assert pp_matrix(rebuilt) == pp_matrix(g)
        for x in range(g.rows):
            for y in range(g.cols):
                assert (acc[x][y] > threshold) == bool(
                    pp_matrix(g).entries[x][y]
                )


def test_threshold_to_pp_strictness():
    # acc = threshold must reject; only strict excess accepts
    g = MemberProtocols(
        (
            DeterministicProtocol(1, 1, Leaf(1)),
            DeterministicProtocol(1, 1, Leaf(0)),
        )
    )
    assert pp_matrix(threshold_to_pp(g, 1)).entries == ((0,),)
    assert pp_matrix(threshold_to_pp(g, 0)).entries == ((1,),)


def test_normalize_nonzero():
    rng = random.Random(31)
    for _ in range(30):
        g = random_members(rng, 2, 2, max_members=3)
        n = normalize_nonzero(g)
        for x in range(2):
            for y in range(2):
                assert n.gap[x][y] != 0
                assert (n.gap[x][y] > 0) == (g.gap[x][y] > 0)


def test_enumerate_protocols_depth_one():
    protos = list(enumerate_protocols(2, 2, 1))
    # 2 leaves + 2 speakers * 4 tables * 4 leaf pairs
    assert len(protos) == 34
    assert len({p.root for p in protos}) == 34
    with pytest.raises(EnumerationGuardError):
        list(enumerate_protocols(5, 2, 1))
    with pytest.raises(EnumerationGuardError):
        list(enumerate_protocols(2, 2, 4))


def test_serialization_round_trip():
    rng = random.Random(37)
    for _ in range(40):
        g = random_guess(rng, 3, 2)
        flat = g.flatten()
        assert loads_protocol(dumps_protocol(g)).member_tuple == flat.member_tuple
    with pytest.raises(ValueError):
        loads_protocol('{"rows": 2, "cols": 2, "guesses": [{"nonsense": 1}]}')


def test_wrap_deterministic():
    p = grid_protocol(2, 2, ((1, 0), (0, 1)))
    g = wrap_deterministic(p)
    assert g.guess_count == 1
    assert pp_matrix(g).entries == ((1, 0), (0, 1))
