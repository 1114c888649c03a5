"""Reduction of a market to its normal form, and the uniqueness verdict.

A pair is *unattractive* when one side is guaranteed to do strictly better in
every stable matching: worker w finds firm f unattractive if some surviving
firm that w prefers to f has w as its top surviving choice (and symmetrically
with the sides swapped); unattractiveness is mutual, so the pair's grid cell
can be deleted without changing the set of stable matchings.  Deleting such
cells exposes new ones, and the fixpoint of the process is the *normal form*.

Two procedures reach it: simultaneous rounds deleting every currently
unattractive cell at once (:func:`normal_form`), and single-pivot reductions
applied one at a time (:func:`normal_form_by_pivots`).  Both provably end at
the same survivor set regardless of order, which the test suite exercises.

The normal form decides uniqueness three independent ways: deferred acceptance
from both sides, acyclicity of the surviving digraph, and the survivor set
collapsing to a single matching.  :func:`uniqueness_report` evaluates all
three and reports witnesses.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from typing import Literal, NamedTuple, Optional, Union

from .digraph import (
    MatchingDigraph,
    PreferenceCycle,
    Vertex,
    build_digraph,
    find_preference_cycle,
    has_directed_cycle,
)
from .errors import InvalidPivotError, UnclassifiableVertexError
from .model import Instance, Matching
from .stability import deferred_acceptance, enumerate_stable_matchings, matching_vertices


class ReductionStep(NamedTuple):
    """One deletion event: the pivot pinned the floor, ``deleted`` fell below it.

    ``pivot`` is None for a simultaneous round, where every unattractive cell
    is deleted at once without a single responsible pivot.
    """

    pivot: Optional[Vertex]
    deleted: frozenset[Vertex]


@dataclass(frozen=True)
class NormalForm:
    """A fixpoint digraph plus how it was reached.

    ``rounds`` counts productive simultaneous rounds when produced by
    :func:`normal_form`, and productive pivot steps when produced by
    :func:`normal_form_by_pivots`.  ``trace`` holds one record per deletion
    event in order.
    """

    digraph: MatchingDigraph
    rounds: int
    trace: tuple[ReductionStep, ...]

    def survivors(self) -> frozenset[Vertex]:
        return frozenset(self.digraph.alive_vertices())

    def is_singleton(self) -> bool:
        """True iff exactly n isolated vertices survive: one matching, no arcs."""
        return self.digraph.alive_count() == self.digraph.n and self.digraph.arc_count() == 0

    def survivor_rows(self) -> tuple[tuple[int, ...], ...]:
        """Per worker, the surviving firms in preference order."""
        return tuple(tuple(self.digraph.row_alive_prefs(w)) for w in range(self.digraph.n))

    def survivor_cols(self) -> tuple[tuple[int, ...], ...]:
        """Per firm, the surviving workers in preference order."""
        return tuple(tuple(self.digraph.col_alive_prefs(f)) for f in range(self.digraph.n))


def unattractive_pairs(dg: MatchingDigraph) -> set[Vertex]:
    """All currently deletable cells of the survival state.

    A surviving cell (w, f) qualifies if the row holds a surviving firm that w
    prefers to f whose column top is w, or the column holds a surviving worker
    that f prefers to w whose row top is f.  Mutuality needs no extra work: a
    cell is one mutual pair.
    """
    n = dg.instance.n
    worker_rank = dg.instance.worker_rank
    firm_rank = dg.instance.firm_rank
    row_tops = [dg.row_top(w) for w in range(n)]
    col_tops = [dg.col_top(f) for f in range(n)]

    # floor_row[w]: best rank among w's surviving firms whose column top is w.
    floor_row = [n] * n
    for f, top in enumerate(col_tops):
        if top is not None:
            w = top.worker
            floor_row[w] = min(floor_row[w], worker_rank[w][f])
    # floor_col[f]: best rank among f's surviving workers whose row top is f.
    floor_col = [n] * n
    for w, top in enumerate(row_tops):
        if top is not None:
            f = top.firm
            floor_col[f] = min(floor_col[f], firm_rank[f][w])

    result = set()
    for v in dg.alive_vertices():
        w, f = v
        if worker_rank[w][f] > floor_row[w] or firm_rank[f][w] > floor_col[f]:
            result.add(v)
    return result


def prune_round(dg: MatchingDigraph) -> MatchingDigraph:
    """Delete every currently unattractive cell simultaneously; pure."""
    doomed = unattractive_pairs(dg)
    result = dg.clone()
    result.delete(doomed)
    return result


def pivot_reduction(
    dg: MatchingDigraph,
    pivot: Vertex,
    side: Literal["row", "column"] | None = None,
) -> MatchingDigraph:
    """Delete the cells strictly below one pivot; pure.

    The pivot must be surviving with a zero out-degree on one side.  With zero
    column out-degree (its worker is the column's top choice) the surviving
    row cells below it are deleted; with zero row out-degree (its firm is the
    worker's top choice) the surviving column cells below it are deleted.  The
    pivot itself survives.

    A pivot can qualify both ways; ``side`` picks the deletion line then
    ("row" needs zero column out-degree, "column" zero row out-degree).  By
    default the row deletion is tried first.
    """
    dw, df = dg.out_degree_split(pivot)
    if side is None:
        side = "row" if df == 0 else "column"
    if side == "row" and df == 0:
        doomed = dg.row_in_neighbors(pivot)
    elif side == "column" and dw == 0:
        doomed = dg.col_in_neighbors(pivot)
    else:
        raise InvalidPivotError(
            f"{pivot.label} has out-degrees ({dw}, {df}); cannot reduce its {side}"
        )
    result = dg.clone()
    result.delete(doomed)
    return result


PivotStrategy = Literal["scan", "random"]


def _scan_options(dg: MatchingDigraph):
    """Productive (pivot, doomed) choices in scan order: rows first, then columns.

    Scanning a row pivots on the worker's top surviving choice, which pins a
    floor under that firm's column; scanning a column pivots on the firm's top
    surviving choice, pinning a floor under that worker's row.
    """
    n = dg.instance.n
    for w in range(n):
        pivot = dg.row_top(w)
        if pivot is not None:
            doomed = dg.col_in_neighbors(pivot)
            if doomed:
                yield pivot, doomed
    for f in range(n):
        pivot = dg.col_top(f)
        if pivot is not None:
            doomed = dg.row_in_neighbors(pivot)
            if doomed:
                yield pivot, doomed


def normal_form_by_pivots(
    source: Union[Instance, MatchingDigraph],
    strategy: PivotStrategy = "scan",
    rng: random.Random | int | None = None,
) -> NormalForm:
    """Reduce to the normal form one pivot at a time, recording each step.

    The default ``scan`` strategy restarts a row-major scan (all rows, then
    all columns) after every productive step and applies the first productive
    reduction it meets, so traces are canonical and reproducible.  The
    ``random`` strategy picks uniformly among all productive reductions; any
    strategy ends at the same survivor set.
    """
    dg = build_digraph(source) if isinstance(source, Instance) else source.clone()
    if strategy == "random" and not isinstance(rng, random.Random):
        rng = random.Random(rng)
    trace: list[ReductionStep] = []
    while True:
        options = list(_scan_options(dg))
        if not options:
            break
        if strategy == "scan":
            pivot, doomed = options[0]
        elif strategy == "random":
            assert isinstance(rng, random.Random)
            pivot, doomed = options[rng.randrange(len(options))]
        else:
            raise ValueError(f"unknown strategy {strategy!r}")
        dg.delete(doomed)
        trace.append(ReductionStep(pivot, frozenset(doomed)))
    return NormalForm(dg, len(trace), tuple(trace))


def normal_form(inst: Instance) -> NormalForm:
    """Reduce to the normal form by simultaneous rounds.

    Each round deletes every currently unattractive cell at once; a round that
    deletes nothing ends the loop, and ``rounds`` counts only the productive
    ones.  The survivor set always matches :func:`normal_form_by_pivots`.
    """
    dg = build_digraph(inst)
    trace: list[ReductionStep] = []
    while True:
        doomed = unattractive_pairs(dg)
        if not doomed:
            break
        dg.delete(doomed)
        trace.append(ReductionStep(None, frozenset(doomed)))
    return NormalForm(dg, len(trace), tuple(trace))


def extremal_matchings(nf: NormalForm) -> tuple[Matching, Matching]:
    """The worker-optimal and firm-optimal stable matchings, read off the fixpoint.

    Cells with zero row out-degree (each worker's favourite survivor) form the
    worker-optimal stable matching; cells with zero column out-degree the
    firm-optimal one.  They coincide with the two deferred-acceptance outcomes.
    """
    dg = nf.digraph
    worker_best = []
    for w in range(dg.n):
        top = dg.row_top(w)
        assert top is not None, "a fixpoint row cannot be empty"
        worker_best.append(top.firm)
    firm_best = [0] * dg.n
    for f in range(dg.n):
        top = dg.col_top(f)
        assert top is not None, "a fixpoint column cannot be empty"
        firm_best[top.worker] = f
    return (
        Matching.from_worker_assignment(worker_best),
        Matching.from_worker_assignment(firm_best),
    )


class SurvivorTag(Enum):
    IN_STABLE = "in_some_stable_matching"
    SURROUNDED = "surrounded_by_stable_pairs"


def classify_survivors(nf: NormalForm, inst: Instance) -> dict[Vertex, SurvivorTag]:
    """Tag each survivor: in some stable matching, or strictly surrounded.

    A survivor outside every stable matching must have stable-matching cells
    strictly above and below it in its row and in its column; anything else
    would be deletable, so finding one raises
    :class:`~stable_core.errors.UnclassifiableVertexError` to flag a bug.
    """
    stable_cells = frozenset().union(
        *(matching_vertices(m) for m in enumerate_stable_matchings(inst))
    )
    tags: dict[Vertex, SurvivorTag] = {}
    for v in nf.survivors():
        if v in stable_cells:
            tags[v] = SurvivorTag.IN_STABLE
            continue
        w, f = v
        row_rank = inst.worker_rank[w]
        col_rank = inst.firm_rank[f]
        row_mates = [g for g in range(inst.n) if Vertex(w, g) in stable_cells]
        col_mates = [u for u in range(inst.n) if Vertex(u, f) in stable_cells]
        surrounded = (
            any(row_rank[g] < row_rank[f] for g in row_mates)
            and any(row_rank[g] > row_rank[f] for g in row_mates)
            and any(col_rank[u] < col_rank[w] for u in col_mates)
            and any(col_rank[u] > col_rank[w] for u in col_mates)
        )
        if not surrounded:
            raise UnclassifiableVertexError(
                f"survivor {v.label} is neither in a stable matching nor surrounded"
            )
        tags[v] = SurvivorTag.SURROUNDED
    return tags


@dataclass(frozen=True)
class UniquenessReport:
    """The three uniqueness criteria, evaluated independently, plus witnesses.

    ``consistent`` must always be true: the three criteria are provably
    equivalent, so disagreement is reported (never raised) and fails the
    acceptance suite.
    """

    n: int
    unique_by_da: bool
    acyclic_normal_form: bool
    singleton_normal_form: bool
    consistent: bool
    normal_form: NormalForm
    matching: Optional[Matching] = None
    directed_cycle: Optional[tuple[Vertex, ...]] = None
    preference_cycle: Optional[PreferenceCycle] = None
    stable_pair: Optional[tuple[Matching, Matching]] = None

    @property
    def unique(self) -> bool:
        return self.unique_by_da and self.consistent


def uniqueness_report(inst: Instance) -> UniquenessReport:
    """Decide uniqueness of the stable matching three ways and report witnesses.

    The deferred-acceptance check never looks at the normal form, so the three
    booleans are genuinely independent computations.  A unique market carries
    its matching as witness; otherwise the report holds a directed cycle of
    the normal form, its alternating form, and two distinct stable matchings.
    """
    worker_best = deferred_acceptance(inst, "workers")
    firm_best = deferred_acceptance(inst, "firms")
    by_da = worker_best == firm_best

    nf = normal_form(inst)
    cycle = has_directed_cycle(nf.digraph)
    acyclic = cycle is None
    singleton = nf.is_singleton()
    consistent = by_da == acyclic == singleton

    if by_da and consistent:
        return UniquenessReport(
            inst.n, by_da, acyclic, singleton, consistent, nf, matching=worker_best
        )
    return UniquenessReport(
        inst.n,
        by_da,
        acyclic,
        singleton,
        consistent,
        nf,
        directed_cycle=cycle,
        preference_cycle=find_preference_cycle(nf.digraph) if cycle is not None else None,
        stable_pair=None if worker_best == firm_best else (worker_best, firm_best),
    )
