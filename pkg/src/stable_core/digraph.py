"""The grid digraph encoding of a market and its cycle structure.

Every worker-firm pair is a vertex of an n-by-n grid.  Within a row, an arc
points from a less-preferred firm's cell to a more-preferred firm's cell
(the row's worker doing the comparing); within a column, from a less-preferred
worker's cell to a more-preferred worker's cell.  Arcs are never materialised:
a boolean survival mask plus the instance's rank tables define them, so
deleting a vertex atomically deletes its incident arcs.
"""

from __future__ import annotations

from typing import Iterable, NamedTuple, Optional

from .errors import VertexDeletedError
from .model import Instance


class Vertex(NamedTuple):
    worker: int
    firm: int

    @property
    def label(self) -> str:
        return f"w{self.worker + 1}_f{self.firm + 1}"


class PreferenceCycle(NamedTuple):
    """An alternating cycle through k workers and k firms.

    The participants satisfy, for every j modulo k:
      * worker ``workers[j]`` prefers ``firms[j+1]`` to ``firms[j]``;
      * firm ``firms[j]`` prefers ``workers[j]`` to ``workers[j-1]``.
    """

    workers: tuple[int, ...]
    firms: tuple[int, ...]

    def holds_in(self, inst: Instance) -> bool:
        k = len(self.workers)
        if k < 2 or len(self.firms) != k:
            return False
        for j in range(k):
            if not inst.worker_prefers(self.workers[j], self.firms[(j + 1) % k], self.firms[j]):
                return False
            if not inst.firm_prefers(self.firms[j], self.workers[j], self.workers[(j - 1) % k]):
                return False
        return True


class MatchingDigraph:
    """Survival mask over the n-by-n pair grid of one instance.

    Reads are cheap and pure; mutation is limited to :meth:`delete`, which the
    reduction procedures drive.  Clone before mutating a digraph someone else
    may still read.
    """

    __slots__ = ("instance", "_alive")

    def __init__(self, instance: Instance, alive: list[bool] | None = None):
        self.instance = instance
        n = instance.n
        self._alive = [True] * (n * n) if alive is None else alive

    @property
    def n(self) -> int:
        return self.instance.n

    def clone(self) -> MatchingDigraph:
        return MatchingDigraph(self.instance, self._alive[:])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MatchingDigraph):
            return NotImplemented
        return self.instance == other.instance and self._alive == other._alive

    def is_alive(self, w: int, f: int) -> bool:
        return self._alive[w * self.instance.n + f]

    def require_alive(self, v: Vertex) -> None:
        if not self.is_alive(v.worker, v.firm):
            raise VertexDeletedError(f"{v.label} has been deleted")

    def delete(self, vertices: Iterable[Vertex]) -> None:
        n = self.instance.n
        for w, f in vertices:
            self._alive[w * n + f] = False

    def alive_count(self) -> int:
        return sum(self._alive)

    def alive_vertices(self) -> list[Vertex]:
        """All surviving vertices in row-major order."""
        n = self.instance.n
        return [Vertex(i // n, i % n) for i, a in enumerate(self._alive) if a]

    def row_alive_prefs(self, w: int) -> list[int]:
        """Surviving firms of row ``w`` in the worker's preference order."""
        return [f for f in self.instance.worker_prefs[w] if self.is_alive(w, f)]

    def col_alive_prefs(self, f: int) -> list[int]:
        """Surviving workers of column ``f`` in the firm's preference order."""
        return [w for w in self.instance.firm_prefs[f] if self.is_alive(w, f)]

    def row_top(self, w: int) -> Optional[Vertex]:
        """The row's unique surviving vertex with zero row out-degree, if any."""
        for f in self.instance.worker_prefs[w]:
            if self.is_alive(w, f):
                return Vertex(w, f)
        return None

    def col_top(self, f: int) -> Optional[Vertex]:
        """The column's unique surviving vertex with zero column out-degree, if any."""
        for w in self.instance.firm_prefs[f]:
            if self.is_alive(w, f):
                return Vertex(w, f)
        return None

    def has_arc(self, u: Vertex, v: Vertex) -> bool:
        """True iff the arc u -> v exists between surviving vertices."""
        if u == v or not self.is_alive(*u) or not self.is_alive(*v):
            return False
        inst = self.instance
        if u.worker == v.worker:
            return inst.worker_rank[u.worker][v.firm] < inst.worker_rank[u.worker][u.firm]
        if u.firm == v.firm:
            return inst.firm_rank[u.firm][v.worker] < inst.firm_rank[u.firm][u.worker]
        return False

    def out_neighbors(self, v: Vertex) -> list[Vertex]:
        """Surviving out-neighbours of ``v`` in row-major order."""
        self.require_alive(v)
        inst = self.instance
        w, f = v
        better_f = inst.worker_rank[w][f]
        better_w = inst.firm_rank[f][w]
        result = [Vertex(w, g) for g in range(inst.n) if inst.worker_rank[w][g] < better_f and self.is_alive(w, g)]
        result += [Vertex(u, f) for u in range(inst.n) if inst.firm_rank[f][u] < better_w and self.is_alive(u, f)]
        result.sort()
        return result

    def row_in_neighbors(self, v: Vertex) -> list[Vertex]:
        """Surviving row cells whose arc enters ``v``: firms ranked below v's firm."""
        inst = self.instance
        w, f = v
        pivot_rank = inst.worker_rank[w][f]
        return [Vertex(w, g) for g in inst.worker_prefs[w][pivot_rank + 1 :] if self.is_alive(w, g)]

    def col_in_neighbors(self, v: Vertex) -> list[Vertex]:
        """Surviving column cells whose arc enters ``v``: workers ranked below v's worker."""
        inst = self.instance
        w, f = v
        pivot_rank = inst.firm_rank[f][w]
        return [Vertex(u, f) for u in inst.firm_prefs[f][pivot_rank + 1 :] if self.is_alive(u, f)]

    def out_degree_split(self, v: Vertex) -> tuple[int, int]:
        """(row out-degree, column out-degree) of a surviving vertex.

        The row out-degree counts surviving firms the row's worker strictly
        prefers to ``v``'s firm; the column out-degree counts surviving workers
        the column's firm strictly prefers to ``v``'s worker.
        """
        self.require_alive(v)
        inst = self.instance
        w, f = v
        dw = sum(1 for g in inst.worker_prefs[w][: inst.worker_rank[w][f]] if self.is_alive(w, g))
        df = sum(1 for u in inst.firm_prefs[f][: inst.firm_rank[f][w]] if self.is_alive(u, f))
        return dw, df

    def arc_count(self) -> int:
        """Number of arcs among surviving vertices.

        Any two surviving cells sharing a row or a column are joined by exactly
        one arc, so the count is a sum of binomial terms per line.
        """
        total = 0
        n = self.instance.n
        for w in range(n):
            k = sum(1 for f in range(n) if self.is_alive(w, f))
            total += k * (k - 1) // 2
        for f in range(n):
            k = sum(1 for w in range(n) if self.is_alive(w, f))
            total += k * (k - 1) // 2
        return total


def build_digraph(inst: Instance) -> MatchingDigraph:
    """The full grid digraph of an instance, all n*n vertices surviving."""
    return MatchingDigraph(inst)


def has_directed_cycle(dg: MatchingDigraph) -> Optional[tuple[Vertex, ...]]:
    """Find a directed cycle among surviving vertices, or None if acyclic.

    Depth-first search with vertices and neighbours visited in row-major
    order, so the witness is deterministic for a fixed instance and mask.
    """
    WHITE, GRAY, BLACK = 0, 1, 2
    color: dict[Vertex, int] = {}
    for start in dg.alive_vertices():
        if color.get(start, WHITE) != WHITE:
            continue
        path = [start]
        iters = [iter(dg.out_neighbors(start))]
        color[start] = GRAY
        while path:
            try:
                nxt = next(iters[-1])
            except StopIteration:
                color[path.pop()] = BLACK
                iters.pop()
                continue
            c = color.get(nxt, WHITE)
            if c == GRAY:
                return tuple(path[path.index(nxt) :])
            if c == WHITE:
                color[nxt] = GRAY
                path.append(nxt)
                iters.append(iter(dg.out_neighbors(nxt)))
    return None


def _contract_runs(cycle: tuple[Vertex, ...]) -> list[Vertex]:
    """Collapse maximal same-row and same-column runs of a directed cycle.

    Valid because each participant's preference order is transitive: the arc
    from a run's first vertex to its last exists whenever the run does.  The
    result alternates row steps and column steps.
    """

    def step_kind(a: Vertex, b: Vertex) -> str:
        return "row" if a.worker == b.worker else "col"

    m = len(cycle)
    # Rotate so the cycle starts where the incoming step kind changes.
    for offset in range(m):
        before = step_kind(cycle[offset - 1], cycle[offset])
        after = step_kind(cycle[offset], cycle[(offset + 1) % m])
        if before != after:
            cycle = cycle[offset:] + cycle[:offset]
            break
    corners = [cycle[0]]
    for i in range(1, m):
        kind_in = step_kind(cycle[i - 1], cycle[i])
        kind_out = step_kind(cycle[i], cycle[(i + 1) % m])
        if kind_in != kind_out:
            corners.append(cycle[i])
    return corners


def _first_duplicate(values: tuple[int, ...]) -> Optional[tuple[int, int]]:
    seen: dict[int, int] = {}
    for idx, value in enumerate(values):
        if value in seen:
            return seen[value], idx
        seen[value] = idx
    return None


def _dedupe_participants(
    workers: tuple[int, ...], firms: tuple[int, ...], inst: Instance
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Shorten an alternating cycle until every worker and firm is distinct.

    A directed cycle of the grid may pass through a row or column twice.  When
    a participant repeats, one of the two splices around the repeat is always
    an alternating cycle again: transitivity carries the defining relation
    across the removed stretch, and totality guarantees one direction works.
    Every splice strictly shortens the cycle, so this terminates.
    """
    while True:
        k = len(workers)
        dup = _first_duplicate(workers)
        if dup is not None:
            i, j = dup
            workers = workers[i:] + workers[:i]
            firms = firms[i:] + firms[:i]
            d = j - i
            w = workers[0]
            if inst.worker_prefers(w, firms[(d + 1) % k], firms[0]):
                workers = (workers[0],) + workers[d + 1 :]
                firms = (firms[0],) + firms[d + 1 :]
            else:
                workers = workers[1 : d + 1]
                firms = firms[1 : d + 1]
            continue
        dup = _first_duplicate(firms)
        if dup is not None:
            i, j = dup
            workers = workers[i:] + workers[:i]
            firms = firms[i:] + firms[:i]
            d = j - i
            f = firms[0]
            if inst.firm_prefers(f, workers[d], workers[-1]):
                workers = workers[d:]
                firms = firms[d:]
            else:
                workers = workers[:d]
                firms = firms[:d]
            continue
        return workers, firms


def find_preference_cycle(dg: MatchingDigraph) -> Optional[PreferenceCycle]:
    """Extract an alternating worker/firm preference cycle, or None if acyclic.

    Runs the directed-cycle search, contracts same-row and same-column runs,
    reads the alternating enumeration off the corner vertices, and splices out
    repeated participants.
    """
    cycle = has_directed_cycle(dg)
    if cycle is None:
        return None
    corners = _contract_runs(cycle)
    # Start at a corner whose outgoing step stays in its row.
    if corners[0].worker != corners[1].worker:
        corners = corners[1:] + corners[:1]
    workers = tuple(v.worker for v in corners[0::2])
    firms = tuple(v.firm for v in corners[0::2])
    workers, firms = _dedupe_participants(workers, firms, dg.instance)
    found = PreferenceCycle(workers, firms)
    assert found.holds_in(dg.instance), "contracted cycle lost the preference relations"
    return found


def export_dot(dg: MatchingDigraph, suppress_transitive: bool = False) -> str:
    """Render the surviving digraph as Graphviz DOT text.

    Row arcs are solid, column arcs dashed.  With ``suppress_transitive`` only
    arcs between preference-adjacent survivors are kept, one chain per line of
    the grid, which is the readable rendering of the same ordering.
    """
    lines = ["digraph matching_market {"]
    for v in dg.alive_vertices():
        lines.append(f'  "{v.label}";')
    n = dg.instance.n
    for w in range(n):
        row = dg.row_alive_prefs(w)
        pairs = (
            zip(row[1:], row)
            if suppress_transitive
            else ((row[i], row[j]) for i in range(len(row)) for j in range(i))
        )
        for worse, better in pairs:
            lines.append(f'  "{Vertex(w, worse).label}" -> "{Vertex(w, better).label}";')
    for f in range(n):
        col = dg.col_alive_prefs(f)
        pairs = (
            zip(col[1:], col)
            if suppress_transitive
            else ((col[i], col[j]) for i in range(len(col)) for j in range(i))
        )
        for worse, better in pairs:
            lines.append(f'  "{Vertex(worse, f).label}" -> "{Vertex(better, f).label}" [style=dashed];')
    lines.append("}")
    return "\n".join(lines) + "\n"
