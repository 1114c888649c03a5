"""Markets and matchings: the data model everything else operates on.

A market instance has ``n`` workers and ``n`` firms, each with a strict,
complete preference list over the whole opposite side.  Workers and firms are
indexed ``0 .. n-1`` internally; the text format and all human-facing output
use the 1-based labels ``w1 .. wn`` and ``f1 .. fn``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import (
    FormatError,
    IdOutOfRangeError,
    NotAPermutationError,
    SizeMismatchError,
    SizeTooLargeError,
)

#: Largest n for which exhaustive enumeration of all (n!)^(2n) instances is allowed.
MAX_EXHAUSTIVE_N = 3

Prefs = tuple[tuple[int, ...], ...]


def _rank_table(prefs: Prefs) -> Prefs:
    """Invert each preference row: result[i][x] is the rank of x in row i."""
    tables = []
    for row in prefs:
        rank = [0] * len(row)
        for position, member in enumerate(row):
            rank[member] = position
        tables.append(tuple(rank))
    return tuple(tables)


def _check_prefs(prefs: Prefs, n: int, side: str) -> None:
    if len(prefs) != n:
        raise SizeMismatchError(f"expected {n} {side} preference lists, got {len(prefs)}")
    full = tuple(range(n))
    for i, row in enumerate(prefs):
        if len(row) != n:
            raise SizeMismatchError(f"{side} list {i + 1} has {len(row)} entries, expected {n}")
        if tuple(sorted(row)) != full:
            raise NotAPermutationError(f"{side} list {i + 1} is not a permutation of the opposite side")


@dataclass(frozen=True)
class Instance:
    """An immutable market instance with precomputed rank tables.

    ``worker_prefs[w]`` lists firm ids most preferred first; ``worker_rank[w][f]``
    is the position of firm ``f`` in that list (0 = favourite).  ``firm_prefs``
    and ``firm_rank`` are the mirror images.  Ranks make every pairwise
    comparison O(1), which the reduction and cycle-detection loops rely on.
    """

    n: int
    worker_prefs: Prefs
    firm_prefs: Prefs
    worker_rank: Prefs
    firm_rank: Prefs

    @classmethod
    def from_prefs(
        cls,
        worker_prefs: Iterable[Iterable[int]],
        firm_prefs: Iterable[Iterable[int]],
    ) -> Instance:
        """Validate preference lists and build an instance from them."""
        wp = tuple(tuple(row) for row in worker_prefs)
        fp = tuple(tuple(row) for row in firm_prefs)
        n = len(wp)
        if n < 1:
            raise SizeMismatchError("a market needs at least one worker and one firm")
        _check_prefs(wp, n, "worker")
        _check_prefs(fp, n, "firm")
        return cls(n, wp, fp, _rank_table(wp), _rank_table(fp))

    def check_worker(self, w: int) -> None:
        if not 0 <= w < self.n:
            raise IdOutOfRangeError(f"worker index {w} outside [0, {self.n})")

    def check_firm(self, f: int) -> None:
        if not 0 <= f < self.n:
            raise IdOutOfRangeError(f"firm index {f} outside [0, {self.n})")

    def worker_prefers(self, w: int, a: int, b: int) -> bool:
        """True iff worker ``w`` strictly prefers firm ``a`` to firm ``b``."""
        self.check_worker(w)
        self.check_firm(a)
        self.check_firm(b)
        return self.worker_rank[w][a] < self.worker_rank[w][b]

    def firm_prefers(self, f: int, a: int, b: int) -> bool:
        """True iff firm ``f`` strictly prefers worker ``a`` to worker ``b``."""
        self.check_firm(f)
        self.check_worker(a)
        self.check_worker(b)
        return self.firm_rank[f][a] < self.firm_rank[f][b]


@dataclass(frozen=True)
class Matching:
    """A one-to-one assignment between workers and firms.

    ``worker_to_firm`` is a permutation and ``firm_to_worker`` its inverse, so
    partner lookups are O(1) from either side.
    """

    worker_to_firm: tuple[int, ...]
    firm_to_worker: tuple[int, ...]

    @classmethod
    def from_worker_assignment(cls, assignment: Iterable[int]) -> Matching:
        w2f = tuple(assignment)
        n = len(w2f)
        if tuple(sorted(w2f)) != tuple(range(n)):
            raise NotAPermutationError("matching does not assign each firm exactly once")
        f2w = [0] * n
        for w, f in enumerate(w2f):
            f2w[f] = w
        return cls(w2f, tuple(f2w))

    @property
    def n(self) -> int:
        return len(self.worker_to_firm)

    def pairs(self) -> tuple[tuple[int, int], ...]:
        """(worker, firm) pairs sorted by worker id."""
        return tuple(enumerate(self.worker_to_firm))


def parse_instance(text: str) -> Instance:
    """Parse the instance text format.

    The format is one integer ``n`` on the first meaningful line, then the
    ``n`` worker lists ``w<i>: f<a1> ... f<an>`` in order, then the ``n`` firm
    lists ``f<j>: w<b1> ... w<bn>``.  Blank lines and lines starting with ``#``
    are ignored; ids are 1-based.
    """
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise FormatError("empty instance text")
    try:
        n = int(lines[0])
    except ValueError:
        raise FormatError(f"first line must be the market size, got {lines[0]!r}") from None
    if n < 1:
        raise FormatError("market size must be at least 1")
    if len(lines) != 1 + 2 * n:
        raise SizeMismatchError(f"expected {2 * n} preference lines for n={n}, got {len(lines) - 1}")

    def parse_line(line: str, owner: str, members: str) -> tuple[int, ...]:
        head, sep, tail = line.partition(":")
        if not sep:
            raise FormatError(f"missing ':' in line {line!r}")
        if not head.strip().startswith(owner) or not head.strip()[1:].isdigit():
            raise FormatError(f"expected a '{owner}<i>:' line, got {line!r}")
        entries = []
        for token in tail.split():
            if not token.startswith(members) or not token[1:].isdigit():
                raise FormatError(f"bad id {token!r} in line {line!r}")
            entries.append(int(token[1:]) - 1)
        if len(entries) != n:
            raise SizeMismatchError(f"line {line!r} lists {len(entries)} ids, expected {n}")
        if any(not 0 <= e < n for e in entries):
            raise NotAPermutationError(f"line {line!r} mentions an id outside 1..{n}")
        return int(head.strip()[1:]) - 1, tuple(entries)

    worker_prefs: list[tuple[int, ...] | None] = [None] * n
    firm_prefs: list[tuple[int, ...] | None] = [None] * n
    for i, line in enumerate(lines[1 : n + 1]):
        owner, row = parse_line(line, "w", "f")
        if owner != i:
            raise FormatError(f"expected list for w{i + 1}, got {line!r}")
        worker_prefs[i] = row
    for j, line in enumerate(lines[n + 1 :]):
        owner, row = parse_line(line, "f", "w")
        if owner != j:
            raise FormatError(f"expected list for f{j + 1}, got {line!r}")
        firm_prefs[j] = row
    return Instance.from_prefs(worker_prefs, firm_prefs)  # type: ignore[arg-type]


def serialize_instance(inst: Instance) -> str:
    """Render an instance in the text format; inverse of :func:`parse_instance`."""
    lines = [str(inst.n)]
    for w, row in enumerate(inst.worker_prefs):
        lines.append(f"w{w + 1}: " + " ".join(f"f{f + 1}" for f in row))
    for f, row in enumerate(inst.firm_prefs):
        lines.append(f"f{f + 1}: " + " ".join(f"w{w + 1}" for w in row))
    return "\n".join(lines) + "\n"


def parse_matching(text: str, n: int | None = None) -> Matching:
    """Parse ``w<i> f<j>`` lines (one pair per line, 1-based ids)."""
    pairs: dict[int, int] = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if (
            len(tokens) != 2
            or not tokens[0].startswith("w")
            or not tokens[1].startswith("f")
            or not tokens[0][1:].isdigit()
            or not tokens[1][1:].isdigit()
        ):
            raise FormatError(f"bad matching line {line!r}, expected 'w<i> f<j>'")
        w, f = int(tokens[0][1:]) - 1, int(tokens[1][1:]) - 1
        if w in pairs:
            raise NotAPermutationError(f"worker w{w + 1} matched more than once")
        pairs[w] = f
    size = len(pairs) if n is None else n
    if sorted(pairs) != list(range(size)):
        raise SizeMismatchError(f"matching lines do not cover workers 1..{size}")
    return Matching.from_worker_assignment(pairs[w] for w in range(size))


def serialize_matching(matching: Matching) -> str:
    """Render a matching as ``w<i> f<j>`` lines sorted by worker id."""
    return "\n".join(f"w{w + 1} f{f + 1}" for w, f in matching.pairs()) + "\n"


def random_instance(n: int, seed: int | str | random.Random) -> Instance:
    """Draw an instance uniformly from the (n!)^(2n) complete strict profiles.

    Deterministic for a given seed.  Pass a ``random.Random`` to draw several
    instances from one stream.
    """
    if n < 1:
        raise SizeMismatchError("market size must be at least 1")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    base = list(range(n))

    def shuffled() -> tuple[int, ...]:
        row = base[:]
        rng.shuffle(row)
        return tuple(row)

    worker_prefs = tuple(shuffled() for _ in range(n))
    firm_prefs = tuple(shuffled() for _ in range(n))
    return Instance(n, worker_prefs, firm_prefs, _rank_table(worker_prefs), _rank_table(firm_prefs))


def random_instances(n: int, count: int, seed: int) -> Iterator[Instance]:
    """Yield ``count`` instances with one independent stream per index.

    Instance ``i`` depends only on ``(seed, i)``, so parallel and sequential
    consumers see identical draws.
    """
    for i in range(count):
        yield random_instance(n, f"{seed}:{i}")


def all_instances(n: int) -> Iterator[Instance]:
    """Enumerate every instance of size ``n`` exactly once, without duplicates.

    Ordering is lexicographic over the concatenated tuple of the 2n preference
    rows (worker rows first), with later rows varying fastest.  Guarded to
    ``n <= MAX_EXHAUSTIVE_N`` because the count grows as (n!)^(2n).
    """
    if n < 1:
        raise SizeMismatchError("market size must be at least 1")
    if n > MAX_EXHAUSTIVE_N:
        raise SizeTooLargeError(f"exhaustive enumeration is limited to n <= {MAX_EXHAUSTIVE_N}")
    rows = list(itertools.permutations(range(n)))
    for combo in itertools.product(rows, repeat=2 * n):
        worker_prefs = combo[:n]
        firm_prefs = combo[n:]
        yield Instance(n, worker_prefs, firm_prefs, _rank_table(worker_prefs), _rank_table(firm_prefs))
