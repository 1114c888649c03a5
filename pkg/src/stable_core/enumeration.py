"""Rebuild every instance for which a given matching is the unique stable one.

Two routes: brute force filters the exhaustive instance stream through the
uniqueness report, and the expansion generator runs the reduction backwards.
The generator starts from the matching viewed as a market of singleton
preference lists and repeatedly re-inserts one deleted cell, placed in its row
and column orders so that a single forward reduction of the expanded state
would delete it again.  Emitting states whose 2n lists are complete yields
exactly the brute-force set on every desk-scale market we can cross-check
(n <= 3); beyond that the generator is unbounded but verified only empirically.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .errors import SizeMismatchError
from .model import Instance, Matching, all_instances
from .reduction import uniqueness_report


@dataclass(frozen=True)
class ExpansionState:
    """A partially rebuilt market: surviving cells plus their line orders.

    ``row_orders[w]`` lists the firms currently on worker w's list, most
    preferred first; ``col_orders[f]`` mirrors it.  Cell (w, f) is present
    exactly when f appears in row w and w appears in column f, and the two
    views always agree.
    """

    row_orders: tuple[tuple[int, ...], ...]
    col_orders: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.row_orders)

    @classmethod
    def from_matching(cls, matching: Matching) -> ExpansionState:
        rows = tuple((f,) for f in matching.worker_to_firm)
        cols = tuple((w,) for w in matching.firm_to_worker)
        return cls(rows, cols)

    def is_complete(self) -> bool:
        return all(len(row) == self.n for row in self.row_orders) and all(
            len(col) == self.n for col in self.col_orders
        )

    def to_instance(self) -> Instance:
        if not self.is_complete():
            raise ValueError("state still has incomplete preference lists")
        return Instance.from_prefs(self.row_orders, self.col_orders)

    def missing_cells(self) -> Iterator[tuple[int, int]]:
        for w, row in enumerate(self.row_orders):
            present = set(row)
            for f in range(self.n):
                if f not in present:
                    yield w, f

    def insert(self, w: int, f: int, row_pos: int, col_pos: int) -> ExpansionState:
        """A new state with cell (w, f) placed at the given line positions."""
        row = self.row_orders[w]
        col = self.col_orders[f]
        new_row = row[:row_pos] + (f,) + row[row_pos:]
        new_col = col[:col_pos] + (w,) + col[col_pos:]
        return ExpansionState(
            self.row_orders[:w] + (new_row,) + self.row_orders[w + 1 :],
            self.col_orders[:f] + (new_col,) + self.col_orders[f + 1 :],
        )

    def is_deletable(self, w: int, f: int) -> bool:
        """Would one forward reduction delete cell (w, f) from this state?

        True iff some firm ahead of f on w's list has w at the head of its
        column, or some worker ahead of w on f's list has f at the head of its
        row; either pivot's reduction sweeps (w, f) away.
        """
        row = self.row_orders[w]
        col = self.col_orders[f]
        for better in row[: row.index(f)]:
            if self.col_orders[better][0] == w:
                return True
        for better in col[: col.index(w)]:
            if self.row_orders[better][0] == f:
                return True
        return False


def expand_reinsertions(state: ExpansionState) -> set[ExpansionState]:
    """All one-cell expansions that a forward reduction would undo.

    For each absent cell and each placement in its row and column orders, keep
    the expanded state exactly when the new cell is immediately deletable
    there.  Re-deleting it restores ``state``'s survivor set, so the set of
    stable matchings is unchanged; the full closure therefore stays anchored
    to the original matching.  This is a correspondence: the whole set of
    admissible expansions is returned.
    """
    result = set()
    for w, f in state.missing_cells():
        for row_pos in range(len(state.row_orders[w]) + 1):
            for col_pos in range(len(state.col_orders[f]) + 1):
                candidate = state.insert(w, f, row_pos, col_pos)
                if candidate.is_deletable(w, f):
                    result.add(candidate)
    return result


def generate_equivalent_instances(matching: Matching) -> set[Instance]:
    """Every complete instance whose unique stable matching is ``matching``.

    Breadth-first closure of :func:`expand_reinsertions` starting from the
    singleton-list state, deduplicating states level by level and emitting the
    complete ones.  Verified set-equal to brute force for n <= 3; larger
    markets run unbounded and should be treated as desk-scale only.
    """
    start = ExpansionState.from_matching(matching)
    frontier = {start}
    complete: set[Instance] = set()
    cells_missing = matching.n * matching.n - matching.n
    for _ in range(cells_missing):
        next_frontier: set[ExpansionState] = set()
        for state in frontier:
            next_frontier |= expand_reinsertions(state)
        frontier = next_frontier
    complete.update(state.to_instance() for state in frontier)
    return complete


def equivalent_instances_bruteforce(matching: Matching, n: int | None = None) -> set[Instance]:
    """Filter the exhaustive instance stream by the uniqueness report.

    The independent route against which the generator is checked.  Follows the
    same n <= 3 bound as exhaustive enumeration.
    """
    if n is not None and n != matching.n:
        raise SizeMismatchError(f"matching has size {matching.n}, not {n}")
    result = set()
    for inst in all_instances(matching.n):
        report = uniqueness_report(inst)
        if report.unique and report.matching == matching:
            result.add(inst)
    return result
