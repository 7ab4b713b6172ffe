"""Deterministic protocol trees and the guess-protocol gap algebra.

A deterministic protocol is a binary tree.  Internal nodes belong to one of
the two players; the owner looks up their input in the node's table and sends
the resulting bit, which selects the subtree.  Cost is the number of bits
sent on the worst path.  A terminal position is either a fixed output bit or
an output computed privately by one player from their own input; neither kind
of terminal is charged, since the output bit is never communicated.

A guess protocol is a finite sequence of deterministic protocols run
notionally in parallel.  Writing acc and rej for the numbers of accepting and
rejecting members at an input, the gap is acc - rej, and the protocol accepts
in the counting (PP) sense when acc > rej, i.e. when the gap is positive.

The algebra below (complement, concatenation, pairwise product, repetition)
tracks guess counts, member costs, and gap grids through the combinators
without expanding the member list.  Compiled protocols can have guess counts
far beyond anything materializable, yet their gap grids stay exact because
each combinator transforms the gap in a simple arithmetic way.  `flatten`
produces the explicit member list whenever the count fits under a limit, and
the test suites check the algebraic grids against brute-force member counting
on everything small enough to expand.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from itertools import product as iter_product
from typing import Iterator, Optional, Sequence, Union

from .matrices import BooleanMatrix

ALICE = "alice"
BOB = "bob"

MATERIALIZE_LIMIT = 1 << 20

ENUM_MAX_SIDE = 4
ENUM_MAX_DEPTH = 3


class DomainMismatchError(ValueError):
    """Protocols over different input domains cannot be combined."""


class ProtocolTooLargeError(ValueError):
    """The guess count exceeds the materialization or compilation guard."""


class EnumerationGuardError(ValueError):
    """Enumeration request exceeds the exhaustive-search guard."""


def ceil_log2(n: int) -> int:
    """Smallest t with 2^t >= n, for n >= 1."""
    if n < 1:
        raise ValueError(f"ceil_log2 needs a positive integer, got {n}")
    return (n - 1).bit_length()


# ---------------------------------------------------------------------------
# protocol trees


@dataclass(frozen=True)
class Leaf:
    bit: int


@dataclass(frozen=True)
class OutputLeaf:
    """Terminal whose output bit is computed privately by one player.

    The owner evaluates their table at their own input.  Nothing is sent, so
    an OutputLeaf adds no cost.
    """

    speaker: str
    table: tuple[int, ...]


@dataclass(frozen=True)
class Node:
    speaker: str
    table: tuple[int, ...]
    zero: "Tree"
    one: "Tree"


Tree = Union[Leaf, OutputLeaf, Node]


def _validate_tree(tree: Tree, rows: int, cols: int) -> None:
    if isinstance(tree, Leaf):
        if tree.bit not in (0, 1):
            raise ValueError(f"leaf bit must be 0 or 1, got {tree.bit!r}")
        return
    if isinstance(tree, (OutputLeaf, Node)):
        if tree.speaker not in (ALICE, BOB):
            raise ValueError(f"unknown speaker {tree.speaker!r}")
        expected = rows if tree.speaker == ALICE else cols
        if len(tree.table) != expected:
            raise ValueError(
                f"{tree.speaker} table has {len(tree.table)} entries, expected {expected}"
            )
        if any(b not in (0, 1) for b in tree.table):
            raise ValueError("table entries must be bits")
        if isinstance(tree, Node):
            _validate_tree(tree.zero, rows, cols)
            _validate_tree(tree.one, rows, cols)
        return
    raise TypeError(f"not a protocol tree: {tree!r}")


def _tree_eval(tree: Tree, x: int, y: int) -> int:
    while isinstance(tree, Node):
        inp = x if tree.speaker == ALICE else y
        tree = tree.one if tree.table[inp] else tree.zero
    if isinstance(tree, Leaf):
        return tree.bit
    return tree.table[x if tree.speaker == ALICE else y]


def _tree_complement(tree: Tree) -> Tree:
    if isinstance(tree, Leaf):
        return Leaf(1 - tree.bit)
    if isinstance(tree, OutputLeaf):
        return OutputLeaf(tree.speaker, tuple(1 - b for b in tree.table))
    return Node(tree.speaker, tree.table, _tree_complement(tree.zero), _tree_complement(tree.one))


def _none_max(*values: Optional[int]) -> Optional[int]:
    best: Optional[int] = None
    for v in values:
        if v is not None and (best is None or v > best):
            best = v
    return best


def _tree_end_depths(tree: Tree) -> tuple[Optional[int], Optional[int]]:
    """(deepest path ending in a Leaf, deepest path ending in an OutputLeaf)."""
    if isinstance(tree, Leaf):
        return (0, None)
    if isinstance(tree, OutputLeaf):
        return (None, 0)
    l0, o0 = _tree_end_depths(tree.zero)
    l1, o1 = _tree_end_depths(tree.one)
    lf = _none_max(l0, l1)
    of = _none_max(o0, o1)
    return (None if lf is None else lf + 1, None if of is None else of + 1)


@dataclass(frozen=True)
class DeterministicProtocol:
    """A single protocol tree over a fixed rows x cols input domain."""

    rows: int
    cols: int
    root: Tree

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ValueError("domain sides must be positive")
        _validate_tree(self.root, self.rows, self.cols)

    def _check_input(self, x: int, y: int) -> None:
        if not (0 <= x < self.rows and 0 <= y < self.cols):
            raise ValueError(
                f"input ({x}, {y}) outside the {self.rows}x{self.cols} domain"
            )

    def evaluate(self, x: int, y: int) -> int:
        self._check_input(x, y)
        return _tree_eval(self.root, x, y)

    @cached_property
    def _end_depths(self) -> tuple[Optional[int], Optional[int]]:
        return _tree_end_depths(self.root)

    @property
    def depth(self) -> int:
        """Worst-case number of bits sent; terminal outputs are free."""
        d = _none_max(*self._end_depths)
        assert d is not None
        return d

    @property
    def closed_depth(self) -> int:
        """Depth if every private output were sent as one extra bit.

        This is what the tree costs as the first factor of a product, where
        the continuation has to branch on the output.
        """
        leaf_d, out_d = self._end_depths
        d = _none_max(leaf_d, None if out_d is None else out_d + 1)
        assert d is not None
        return d

    def complemented(self) -> "DeterministicProtocol":
        return DeterministicProtocol(self.rows, self.cols, _tree_complement(self.root))

    def output_grid(self) -> tuple[tuple[int, ...], ...]:
        return tuple(
            tuple(_tree_eval(self.root, x, y) for y in range(self.cols))
            for x in range(self.rows)
        )


def cost_deterministic(protocol: DeterministicProtocol) -> int:
    return protocol.depth


def product_trees(first: Tree, second: Tree) -> Tree:
    """Compose: run `first`; on acceptance continue with `second`, otherwise
    with its complement.  The result computes the parity-of-agreement, so its
    accept indicator is 1 exactly when the two component outputs agree."""
    second_c = _tree_complement(second)

    def splice(tree: Tree) -> Tree:
        if isinstance(tree, Leaf):
            return second if tree.bit else second_c
        if isinstance(tree, OutputLeaf):
            # The private output becomes a real message so the continuation
            # can branch on it; this is the one place it gets charged.
            return Node(tree.speaker, tree.table, second_c, second)
        return Node(tree.speaker, tree.table, splice(tree.zero), splice(tree.one))

    return splice(first)


def product_protocols(
    first: DeterministicProtocol, second: DeterministicProtocol
) -> DeterministicProtocol:
    if (first.rows, first.cols) != (second.rows, second.cols):
        raise DomainMismatchError("protocol product needs a shared domain")
    return DeterministicProtocol(
        first.rows, first.cols, product_trees(first.root, second.root)
    )


# ---------------------------------------------------------------------------
# guess protocols


@dataclass(frozen=True)
class GapProfile:
    """Accept/reject counts and their difference, per input."""

    guess_count: int
    acc: tuple[tuple[int, ...], ...]
    rej: tuple[tuple[int, ...], ...]
    gap: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        for arow, rrow, grow in zip(self.acc, self.rej, self.gap):
            for a, r, g in zip(arow, rrow, grow):
                if a + r != self.guess_count or a - r != g:
                    raise ValueError("inconsistent gap profile")


class GuessProtocol:
    """Base class of the guess-protocol algebra.

    Subclasses are immutable nodes of an expression DAG.  `guess_count`,
    `gap`, and the cost bookkeeping are exact for every node; `members()`
    lazily generates the explicit member protocols and `flatten` materializes
    them when the count is small enough.
    """

    rows: int
    cols: int

    def __init__(self, rows: int, cols: int):
        self.rows = rows
        self.cols = cols

    # -- structure ---------------------------------------------------------

    @property
    def guess_count(self) -> int:
        raise NotImplementedError

    @cached_property
    def gap(self) -> tuple[tuple[int, ...], ...]:
        raise NotImplementedError

    @property
    def end_depths(self) -> tuple[Optional[int], Optional[int]]:
        raise NotImplementedError

    def members(self) -> Iterator[DeterministicProtocol]:
        raise NotImplementedError

    # -- derived quantities ------------------------------------------------

    @property
    def max_depth(self) -> int:
        """Largest member cost."""
        d = _none_max(*self.end_depths)
        assert d is not None
        return d

    @property
    def closed_depth(self) -> int:
        leaf_d, out_d = self.end_depths
        d = _none_max(leaf_d, None if out_d is None else out_d + 1)
        assert d is not None
        return d

    def gap_at(self, x: int, y: int) -> int:
        return self.gap[x][y]

    def flatten(self, limit: int = MATERIALIZE_LIMIT) -> "MemberProtocols":
        if self.guess_count > limit:
            raise ProtocolTooLargeError(
                f"cannot materialize {self.guess_count} guesses (limit {limit})"
            )
        return MemberProtocols(tuple(self.members()))

    # -- algebra -----------------------------------------------------------

    def _check_domain(self, other: "GuessProtocol") -> None:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DomainMismatchError(
                f"domain mismatch: {self.rows}x{self.cols} vs {other.rows}x{other.cols}"
            )

    def complement(self) -> "GuessProtocol":
        return ComplementProtocol(self)

    def __add__(self, other: "GuessProtocol") -> "GuessProtocol":
        if not isinstance(other, GuessProtocol):
            return NotImplemented
        self._check_domain(other)
        return SumProtocol((self, other))

    def __mul__(self, other: "GuessProtocol") -> "GuessProtocol":
        if not isinstance(other, GuessProtocol):
            return NotImplemented
        self._check_domain(other)
        return ProductProtocol(self, other)

    def repeat(self, count: int) -> "GuessProtocol":
        if count < 1:
            raise ValueError("repeat count must be at least 1")
        if count == 1:
            return self
        return RepeatProtocol(self, count)


class MemberProtocols(GuessProtocol):
    """A guess protocol given by an explicit member tuple."""

    def __init__(self, members: Sequence[DeterministicProtocol]):
        members = tuple(members)
        if not members:
            raise ValueError("a guess protocol needs at least one member")
        first = members[0]
        for m in members[1:]:
            if (m.rows, m.cols) != (first.rows, first.cols):
                raise DomainMismatchError("members must share one domain")
        super().__init__(first.rows, first.cols)
        self._members = members

    @property
    def member_tuple(self) -> tuple[DeterministicProtocol, ...]:
        return self._members

    @property
    def guess_count(self) -> int:
        return len(self._members)

    @cached_property
    def gap(self) -> tuple[tuple[int, ...], ...]:
        # Ground truth: count accepting members at every input.
        grids = [m.output_grid() for m in self._members]
        return tuple(
            tuple(
                sum(2 * grid[x][y] - 1 for grid in grids) for y in range(self.cols)
            )
            for x in range(self.rows)
        )

    @cached_property
    def end_depths(self) -> tuple[Optional[int], Optional[int]]:
        pairs = [m._end_depths for m in self._members]
        return (_none_max(*(p[0] for p in pairs)), _none_max(*(p[1] for p in pairs)))

    def members(self) -> Iterator[DeterministicProtocol]:
        return iter(self._members)


class ComplementProtocol(GuessProtocol):
    def __init__(self, base: GuessProtocol):
        super().__init__(base.rows, base.cols)
        self.base = base

    @property
    def guess_count(self) -> int:
        return self.base.guess_count

    @cached_property
    def gap(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(-g for g in row) for row in self.base.gap)

    @property
    def end_depths(self) -> tuple[Optional[int], Optional[int]]:
        return self.base.end_depths

    def members(self) -> Iterator[DeterministicProtocol]:
        return (m.complemented() for m in self.base.members())

    def complement(self) -> GuessProtocol:
        return self.base


class SumProtocol(GuessProtocol):
    """Concatenation of member lists; gaps add."""

    def __init__(self, parts: Sequence[GuessProtocol]):
        parts = tuple(parts)
        if not parts:
            raise ValueError("sum needs at least one part")
        super().__init__(parts[0].rows, parts[0].cols)
        for p in parts[1:]:
            parts[0]._check_domain(p)
        self.parts = parts

    @cached_property
    def guess_count(self) -> int:
        return sum(p.guess_count for p in self.parts)

    @cached_property
    def gap(self) -> tuple[tuple[int, ...], ...]:
        return tuple(
            tuple(
                sum(p.gap[x][y] for p in self.parts) for y in range(self.cols)
            )
            for x in range(self.rows)
        )

    @cached_property
    def end_depths(self) -> tuple[Optional[int], Optional[int]]:
        pairs = [p.end_depths for p in self.parts]
        return (_none_max(*(p[0] for p in pairs)), _none_max(*(p[1] for p in pairs)))

    def members(self) -> Iterator[DeterministicProtocol]:
        for p in self.parts:
            yield from p.members()


class ProductProtocol(GuessProtocol):
    """All pairwise compositions, left member outermost; gaps multiply."""

    def __init__(self, left: GuessProtocol, right: GuessProtocol):
        left._check_domain(right)
        super().__init__(left.rows, left.cols)
        self.left = left
        self.right = right

    @cached_property
    def guess_count(self) -> int:
        return self.left.guess_count * self.right.guess_count

    @cached_property
    def gap(self) -> tuple[tuple[int, ...], ...]:
        lg, rg = self.left.gap, self.right.gap
        return tuple(
            tuple(lg[x][y] * rg[x][y] for y in range(self.cols))
            for x in range(self.rows)
        )

    @cached_property
    def end_depths(self) -> tuple[Optional[int], Optional[int]]:
        closed = self.left.closed_depth
        rl, ro = self.right.end_depths
        return (
            None if rl is None else closed + rl,
            None if ro is None else closed + ro,
        )

    def members(self) -> Iterator[DeterministicProtocol]:
        rights = None
        for a in self.left.members():
            if rights is None:
                rights = list(self.right.members())
            for b in rights:
                yield product_protocols(a, b)


class RepeatProtocol(GuessProtocol):
    """`count` back-to-back copies of the base member list."""

    def __init__(self, base: GuessProtocol, count: int):
        if count < 1:
            raise ValueError("repeat count must be at least 1")
        super().__init__(base.rows, base.cols)
        self.base = base
        self.count = count

    @property
    def guess_count(self) -> int:
        return self.base.guess_count * self.count

    @cached_property
    def gap(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(self.count * g for g in row) for row in self.base.gap)

    @property
    def end_depths(self) -> tuple[Optional[int], Optional[int]]:
        return self.base.end_depths

    def members(self) -> Iterator[DeterministicProtocol]:
        for _ in range(self.count):
            yield from self.base.members()


# ---------------------------------------------------------------------------
# constructors and counting-mode operations


def leaf_protocol(rows: int, cols: int, bit: int) -> MemberProtocols:
    return MemberProtocols((DeterministicProtocol(rows, cols, Leaf(bit)),))


def always_accept(rows: int, cols: int) -> MemberProtocols:
    """The single-guess protocol that accepts every input; gap is +1."""
    return leaf_protocol(rows, cols, 1)


def always_reject(rows: int, cols: int) -> MemberProtocols:
    return leaf_protocol(rows, cols, 0)


def wrap_deterministic(protocol: DeterministicProtocol) -> MemberProtocols:
    return MemberProtocols((protocol,))


def grid_protocol(
    rows: int, cols: int, grid: Sequence[Sequence[int]]
) -> DeterministicProtocol:
    """A protocol computing an arbitrary Boolean grid.

    One player spells out their input index bit by bit; the other then reads
    off the entry privately.  Costs ceil(log2(rows)) bits, which is as good
    as generic protocols get for unstructured grids.
    """
    if len(grid) != rows or any(len(row) != cols for row in grid):
        raise ValueError(f"grid shape does not match {rows}x{cols}")
    bits = ceil_log2(rows) if rows > 1 else 0

    def build(level: int, prefix: int) -> Tree:
        if level == bits:
            if prefix >= rows:
                return Leaf(0)  # unreachable padding branch
            return OutputLeaf(BOB, tuple(grid[prefix]))
        shift = bits - 1 - level
        table = tuple((x >> shift) & 1 for x in range(rows))
        return Node(
            ALICE,
            table,
            build(level + 1, prefix << 1),
            build(level + 1, (prefix << 1) | 1),
        )

    return DeterministicProtocol(rows, cols, build(0, 0))


def gap_profile(g: GuessProtocol) -> GapProfile:
    """Accept/reject counts per input.  acc = (l + gap) / 2 by definition."""
    l = g.guess_count
    gap = g.gap
    acc = tuple(tuple((l + v) // 2 for v in row) for row in gap)
    rej = tuple(tuple((l - v) // 2 for v in row) for row in gap)
    return GapProfile(l, acc, rej, gap)


def pp_eval(g: GuessProtocol, x: int, y: int) -> int:
    """Counting-mode acceptance: 1 iff strictly more members accept than reject."""
    return 1 if g.gap[x][y] > 0 else 0


def pp_matrix(g: GuessProtocol) -> BooleanMatrix:
    grid = tuple(tuple(1 if v > 0 else 0 for v in row) for row in g.gap)
    return BooleanMatrix(g.rows, g.cols, grid)


def pp_cost(g: GuessProtocol) -> int:
    """ceil(log2 of the guess count) plus the worst member cost."""
    return ceil_log2(g.guess_count) + g.max_depth


def pp_cost_closed(g: GuessProtocol) -> int:
    """pp_cost with terminal private outputs charged as one bit each.

    Members ending in an output leaf induce rectangles on which the answer
    still varies with one player's input; closing them restores the usual
    cost model where a transcript determines the outcome, which is what
    rectangle-based lower bounds count.  For protocols whose members end
    in fixed leaves the two costs coincide.
    """
    return ceil_log2(g.guess_count) + g.closed_depth


def normalize_nonzero(g: GuessProtocol) -> GuessProtocol:
    """Double every guess and append one rejecting guess.

    The new gap is 2 * gap - 1: always odd, never zero, and positive exactly
    when the old gap was, so counting-mode acceptance is preserved while ties
    (gap 0) resolve to rejection.
    """
    return g.repeat(2) + always_reject(g.rows, g.cols)


def pp_to_threshold(g: GuessProtocol) -> tuple[tuple[tuple[int, ...], ...], int]:
    """Read a counting-mode protocol as a threshold protocol.

    Returns the acc grid together with the threshold floor(l / 2); acc
    exceeds that threshold exactly on the counting-accepted inputs.
    """
    return gap_profile(g).acc, g.guess_count // 2


def threshold_to_pp(g: GuessProtocol, threshold: int) -> GuessProtocol:
    """Turn 'acc > threshold' acceptance into counting-mode acceptance.

    Pads with rejecting guesses until the count reaches 2 * threshold, then
    appends one accepting guess per count above 2 * threshold.  The result
    counting-accepts exactly where the original acc exceeded the threshold.
    """
    if threshold < 0:
        raise ValueError("threshold must be nonnegative")
    l = g.guess_count
    pad_rejects = max(0, 2 * threshold - l)
    extra_accepts = (l + pad_rejects) - 2 * threshold
    result = g
    if pad_rejects:
        result = result + always_reject(g.rows, g.cols).repeat(pad_rejects)
    if extra_accepts:
        result = result + always_accept(g.rows, g.cols).repeat(extra_accepts)
    return result


# ---------------------------------------------------------------------------
# exhaustive enumeration


def enumerate_protocols(
    rows: int, cols: int, max_depth: int
) -> Iterator[DeterministicProtocol]:
    """All protocol trees of depth at most max_depth, each exactly once.

    Trees use fixed-bit leaves only.  Every tree is either a leaf or a node
    whose children have strictly smaller depth bound, so the recursion yields
    each structure once.  The output is a generator; the full set grows
    doubly exponentially with depth, and callers are expected to take what
    they need.
    """
    if rows > ENUM_MAX_SIDE or cols > ENUM_MAX_SIDE:
        raise EnumerationGuardError(
            f"enumeration domain capped at {ENUM_MAX_SIDE} per side, got {rows}x{cols}"
        )
    if max_depth > ENUM_MAX_DEPTH:
        raise EnumerationGuardError(
            f"enumeration depth capped at {ENUM_MAX_DEPTH}, got {max_depth}"
        )
    if rows < 1 or cols < 1 or max_depth < 0:
        raise ValueError("bad enumeration parameters")

    def trees(depth: int) -> Iterator[Tree]:
        yield Leaf(0)
        yield Leaf(1)
        if depth >= 1:
            children = list(trees(depth - 1))
            for speaker in (ALICE, BOB):
                n = rows if speaker == ALICE else cols
                for table in iter_product((0, 1), repeat=n):
                    for zero in children:
                        for one in children:
                            yield Node(speaker, table, zero, one)

    for t in trees(max_depth):
        yield DeterministicProtocol(rows, cols, t)


# ---------------------------------------------------------------------------
# serialization


def tree_to_obj(tree: Tree) -> dict:
    if isinstance(tree, Leaf):
        return {"leaf": tree.bit}
    if isinstance(tree, OutputLeaf):
        return {"output": {"speaker": tree.speaker, "table": list(tree.table)}}
    return {
        "speaker": tree.speaker,
        "table": list(tree.table),
        "children": [tree_to_obj(tree.zero), tree_to_obj(tree.one)],
    }


def tree_from_obj(obj: dict) -> Tree:
    if not isinstance(obj, dict):
        raise ValueError(f"bad tree object: {obj!r}")
    if "leaf" in obj:
        return Leaf(int(obj["leaf"]))
    if "output" in obj:
        payload = obj["output"]
        return OutputLeaf(payload["speaker"], tuple(int(b) for b in payload["table"]))
    if "speaker" in obj:
        zero, one = obj["children"]
        return Node(
            obj["speaker"],
            tuple(int(b) for b in obj["table"]),
            tree_from_obj(zero),
            tree_from_obj(one),
        )
    raise ValueError(f"bad tree object: {obj!r}")


def protocol_to_obj(g: GuessProtocol, limit: int = MATERIALIZE_LIMIT) -> dict:
    flat = g.flatten(limit)
    return {
        "rows": g.rows,
        "cols": g.cols,
        "guesses": [tree_to_obj(m.root) for m in flat.member_tuple],
    }


def protocol_from_obj(obj: dict) -> MemberProtocols:
    rows, cols = int(obj["rows"]), int(obj["cols"])
    members = tuple(
        DeterministicProtocol(rows, cols, tree_from_obj(t)) for t in obj["guesses"]
    )
    return MemberProtocols(members)


def dumps_protocol(g: GuessProtocol, limit: int = MATERIALIZE_LIMIT) -> str:
    return json.dumps(protocol_to_obj(g, limit), sort_keys=True) + "\n"


def loads_protocol(text: str) -> MemberProtocols:
    return protocol_from_obj(json.loads(text))
