"""Blocking pairs, deferred acceptance, and brute-force stable-matching oracles."""

from __future__ import annotations

import itertools
from typing import Iterable, Literal

from .digraph import MatchingDigraph, Vertex
from .errors import SizeTooLargeError
from .model import Instance, Matching

#: Largest n for which brute-force enumeration over all n! matchings is allowed.
MAX_ENUMERATION_N = 8

Side = Literal["workers", "firms"]


def blocking_pairs(inst: Instance, matching: Matching) -> set[tuple[int, int]]:
    """All (worker, firm) pairs that would both rather have each other."""
    result = set()
    for w, assigned in enumerate(matching.worker_to_firm):
        for f in inst.worker_prefs[w][: inst.worker_rank[w][assigned]]:
            if inst.firm_rank[f][w] < inst.firm_rank[f][matching.firm_to_worker[f]]:
                result.add((w, f))
    return result


def is_stable(inst: Instance, matching: Matching) -> bool:
    """True iff the matching admits no blocking pair."""
    for w, assigned in enumerate(matching.worker_to_firm):
        for f in inst.worker_prefs[w][: inst.worker_rank[w][assigned]]:
            if inst.firm_rank[f][w] < inst.firm_rank[f][matching.firm_to_worker[f]]:
                return False
    return True


def deferred_acceptance_lists(
    proposer_prefs: list[list[int]] | tuple[tuple[int, ...], ...],
    responder_prefs: list[list[int]] | tuple[tuple[int, ...], ...],
    proposal_order: Literal["ascending", "descending"] = "ascending",
) -> list[int]:
    """Deferred acceptance on raw preference lists, proposers courting responders.

    Works for unbalanced markets with complete lists; a proposer that exhausts
    its list stays unmatched (possible only when proposers outnumber
    responders).  Returns the responder matched to each proposer, -1 if none.
    The outcome is the proposer-optimal stable matching and does not depend on
    ``proposal_order``; the parameter exists so tests can demonstrate that.
    """
    n_resp = len(responder_prefs)
    rank = [[0] * len(proposer_prefs) for _ in range(n_resp)]
    for r, row in enumerate(responder_prefs):
        for position, p in enumerate(row):
            rank[r][p] = position

    engaged_to: list[int] = [-1] * n_resp  # responder -> proposer
    matched: list[int] = [-1] * len(proposer_prefs)
    next_choice = [0] * len(proposer_prefs)
    free = sorted(range(len(proposer_prefs)), reverse=(proposal_order == "ascending"))

    while free:
        p = free.pop()
        if next_choice[p] >= len(proposer_prefs[p]):
            continue  # exhausted every responder; stays unmatched
        r = proposer_prefs[p][next_choice[p]]
        next_choice[p] += 1
        holder = engaged_to[r]
        if holder == -1:
            engaged_to[r] = p
            matched[p] = r
        elif rank[r][p] < rank[r][holder]:
            engaged_to[r] = p
            matched[p] = r
            matched[holder] = -1
            _reinsert(free, holder, proposal_order)
        else:
            _reinsert(free, p, proposal_order)
    return matched


def _reinsert(free: list[int], p: int, proposal_order: str) -> None:
    # Keep the stack sorted so the lowest (or highest) id proposes next.
    free.append(p)
    free.sort(reverse=(proposal_order == "ascending"))


def deferred_acceptance(
    inst: Instance,
    proposing: Side = "workers",
    proposal_order: Literal["ascending", "descending"] = "ascending",
) -> Matching:
    """The proposing-side-optimal stable matching of a balanced instance.

    Terminates within n*n proposals; the result is always stable.
    """
    if proposing == "workers":
        matched = deferred_acceptance_lists(inst.worker_prefs, inst.firm_prefs, proposal_order)
        return Matching.from_worker_assignment(matched)
    matched = deferred_acceptance_lists(inst.firm_prefs, inst.worker_prefs, proposal_order)
    w2f = [0] * inst.n
    for f, w in enumerate(matched):
        w2f[w] = f
    return Matching.from_worker_assignment(w2f)


def is_unique_via_da(inst: Instance) -> bool:
    """Run deferred acceptance once per side and compare.

    The two runs bound the lattice of stable matchings from both ends, so they
    agree exactly when the stable matching is unique.
    """
    workers_best = deferred_acceptance_lists(inst.worker_prefs, inst.firm_prefs)
    firms_best = deferred_acceptance_lists(inst.firm_prefs, inst.worker_prefs)
    return all(firms_best[f] == w for w, f in enumerate(workers_best))


def enumerate_stable_matchings(inst: Instance) -> tuple[Matching, ...]:
    """Every stable matching, by filtering all n! assignments.

    Returned in lexicographic order of the worker assignment so golden tests
    are reproducible.  Guarded to n <= MAX_ENUMERATION_N.
    """
    if inst.n > MAX_ENUMERATION_N:
        raise SizeTooLargeError(f"enumeration is limited to n <= {MAX_ENUMERATION_N}")
    found = []
    for assignment in itertools.permutations(range(inst.n)):
        f2w = [0] * inst.n
        for w, f in enumerate(assignment):
            f2w[f] = w
        candidate = Matching(assignment, tuple(f2w))
        if is_stable(inst, candidate):
            found.append(candidate)
    return tuple(found)


def matching_vertices(matching: Matching) -> frozenset[Vertex]:
    """The grid cells a matching occupies."""
    return frozenset(Vertex(w, f) for w, f in matching.pairs())


def is_kernel(dg: MatchingDigraph, cells: Iterable[Vertex | tuple[int, int]]) -> bool:
    """Kernel test on the surviving digraph.

    ``cells`` must be surviving vertices.  True iff they hit every row and
    every column exactly once and every surviving vertex is either in the set
    or has an out-neighbour in it.  On the full digraph this is exactly
    stability of the corresponding matching.
    """
    chosen = {Vertex(*c) for c in cells}
    n = dg.instance.n
    if len(chosen) != n:
        return False
    if any(not dg.is_alive(*v) for v in chosen):
        return False
    if len({v.worker for v in chosen}) != n or len({v.firm for v in chosen}) != n:
        return False
    row_pick = {v.worker: v for v in chosen}
    col_pick = {v.firm: v for v in chosen}
    inst = dg.instance
    for v in dg.alive_vertices():
        if v in chosen:
            continue
        w, f = v
        mine = row_pick[w]
        theirs = col_pick[f]
        # Out-neighbour in the set: a better firm in the row, or a better worker
        # in the column.
        if inst.worker_rank[w][mine.firm] < inst.worker_rank[w][f]:
            continue
        if inst.firm_rank[f][theirs.worker] < inst.firm_rank[f][w]:
            continue
        return False
    return True


def stable_matchings_in(dg: MatchingDigraph) -> tuple[Matching, ...]:
    """Stable matchings of a survival state: kernels over surviving cells.

    Used to compare a reduced market against the original; brute force over
    permutations, so guarded like :func:`enumerate_stable_matchings`.
    """
    n = dg.instance.n
    if n > MAX_ENUMERATION_N:
        raise SizeTooLargeError(f"enumeration is limited to n <= {MAX_ENUMERATION_N}")
    found = []
    for assignment in itertools.permutations(range(n)):
        if not all(dg.is_alive(w, f) for w, f in enumerate(assignment)):
            continue
        if is_kernel(dg, (Vertex(w, f) for w, f in enumerate(assignment))):
            found.append(Matching.from_worker_assignment(assignment))
    return tuple(found)
