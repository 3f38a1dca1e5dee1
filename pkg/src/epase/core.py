"""Shared search state: state registry, ordered open list, BE/CLOSED sets.

Every planner in the package builds on :class:`SharedSearchState`.  States
are interned on first sight and addressed by a dense integer index; edges
are ``(source_index, action)`` pairs, with :data:`DUMMY` standing in for all
not-yet-generated real edges of a state.
"""
from __future__ import annotations

import enum
import itertools
import math
import threading
from dataclasses import dataclass
from typing import Any, Hashable, Iterator, NamedTuple, Optional

from sortedcontainers import SortedList

INF = math.inf

#: Reserved action id for the placeholder edge of a state.  Domain action
#: ids are ``0 .. num_actions - 1`` so this never collides.
DUMMY = -1


class SearchConsistencyError(RuntimeError):
    """Internal bookkeeping was violated (a bug, never a user error)."""


class Status(enum.IntEnum):
    UNDISCOVERED = 0
    OPEN_DUMMY = 1
    PARTIALLY_EXPANDED = 2
    CLOSED = 3


class Edge(NamedTuple):
    source: int
    action: int

    @property
    def is_dummy(self) -> bool:
        return self.action == DUMMY


class PriorityKey(NamedTuple):
    f: float
    neg_g: float
    seq: int

    @property
    def g(self) -> float:
        return -self.neg_g


@dataclass(slots=True)
class StateRecord:
    key: Hashable
    index: int
    h: float
    g: float = INF
    # (parent index, action, edge cost) of the best known incoming edge
    parent: Optional[tuple[int, int, float]] = None
    n_successors_generated: int = 0
    n_actions: int = -1
    status: Status = Status.UNDISCOVERED


class StateRegistry:
    """Interns domain states into an indexable arena of records."""

    def __init__(self) -> None:
        self._index: dict[Hashable, int] = {}
        self.records: list[StateRecord] = []

    def __len__(self) -> int:
        return len(self.records)

    def __contains__(self, key: Hashable) -> bool:
        return key in self._index

    def __getitem__(self, index: int) -> StateRecord:
        return self.records[index]

    def lookup(self, key: Hashable) -> Optional[StateRecord]:
        i = self._index.get(key)
        return None if i is None else self.records[i]

    def get_or_insert(self, key: Hashable, h: float) -> StateRecord:
        i = self._index.get(key)
        if i is not None:
            return self.records[i]
        rec = StateRecord(key=key, index=len(self.records), h=h)
        self._index[key] = rec.index
        self.records.append(rec)
        return rec


class OpenList:
    """Ordered priority queue with decrease-key and in-order traversal.

    Entries are ordered by ``(f, -g, seq)``: smallest f first, ties broken
    towards the larger g and then insertion order.  Items can be edges or
    state indices; the list only requires them to be hashable.
    """

    def __init__(self) -> None:
        self._sorted: SortedList = SortedList()
        self._keys: dict[Any, PriorityKey] = {}
        self._seq = itertools.count()

    def __len__(self) -> int:
        return len(self._keys)

    def __bool__(self) -> bool:
        return bool(self._keys)

    def __contains__(self, item: Any) -> bool:
        return item in self._keys

    def key_of(self, item: Any) -> PriorityKey:
        return self._keys[item]

    def insert_or_reposition(self, item: Any, f: float, g: float) -> PriorityKey:
        old = self._keys.get(item)
        if old is not None:
            if f > old.f:
                raise SearchConsistencyError(
                    f"reposition of {item!r} would raise f from {old.f} to {f}"
                )
            self._sorted.remove((*old, item))
        key = PriorityKey(f, -g, next(self._seq))
        self._keys[item] = key
        self._sorted.add((*key, item))
        return key

    def remove(self, item: Any) -> None:
        key = self._keys.pop(item, None)
        if key is None:
            raise SearchConsistencyError(f"{item!r} is not in OPEN")
        self._sorted.remove((*key, item))

    def peek(self) -> Any:
        if not self._keys:
            raise SearchConsistencyError("peek on empty OPEN")
        return self._sorted[0][3]

    def pop(self) -> Any:
        if not self._keys:
            raise SearchConsistencyError("pop from empty OPEN")
        entry = self._sorted.pop(0)
        del self._keys[entry[3]]
        return entry[3]

    def scan(self) -> Iterator[tuple[Any, PriorityKey]]:
        """Yield ``(item, key)`` in ascending key order without mutating."""
        for f, neg_g, seq, item in self._sorted:
            yield item, PriorityKey(f, neg_g, seq)

    def __iter__(self) -> Iterator[Any]:
        for entry in self._sorted:
            yield entry[3]


class SharedSearchState:
    """OPEN, BE, CLOSED and the registry behind one global lock.

    ``changed`` is a condition variable on ``lock``; :meth:`notify_change`
    must be called (with the lock held) after every mutation of OPEN or BE
    so that a coordinator waiting for new work wakes up.
    """

    def __init__(self) -> None:
        self.registry = StateRegistry()
        self.open = OpenList()
        self.be: set[int] = set()
        self.closed: set[int] = set()
        self.lock = threading.Lock()
        self.changed = threading.Condition(self.lock)
        self.version = 0
        self.terminate = False
        self.max_open_size = 0

    def record(self, index: int) -> StateRecord:
        return self.registry.records[index]

    def track_open_size(self) -> None:
        n = len(self.open)
        if n > self.max_open_size:
            self.max_open_size = n

    def notify_change(self) -> None:
        self.version += 1
        self.track_open_size()
        self.changed.notify_all()

    def push(self, item: Any, f: float, g: float) -> None:
        self.open.insert_or_reposition(item, f, g)

    def mark_partially_expanded(self, index: int) -> None:
        rec = self.registry.records[index]
        if rec.status is not Status.OPEN_DUMMY:
            raise SearchConsistencyError(
                f"state {rec.key!r} cannot enter BE from status {rec.status.name}"
            )
        rec.status = Status.PARTIALLY_EXPANDED
        self.be.add(index)

    def mark_closed(self, index: int) -> None:
        rec = self.registry.records[index]
        if index not in self.be or rec.status is not Status.PARTIALLY_EXPANDED:
            raise SearchConsistencyError(
                f"state {rec.key!r} closed while not in BE (status {rec.status.name})"
            )
        if 0 <= rec.n_actions != rec.n_successors_generated:
            raise SearchConsistencyError(
                f"state {rec.key!r} closed after {rec.n_successors_generated}"
                f" of {rec.n_actions} successors"
            )
        self.be.discard(index)
        self.closed.add(index)
        rec.status = Status.CLOSED

    def is_exhausted(self) -> bool:
        return not self.open and not self.be
