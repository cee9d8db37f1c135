"""
Object identity tracking across time steps.

The registry is the single-writer record of which objects a stream has
seen and which are active at the current step. Active objects, in
registration order, define the row/column order at that step.
"""

from dataclasses import dataclass
from typing import List, Sequence, Tuple


@dataclass
class RegistryEntry:
    object_id: str
    active: bool


class ObjectRegistry:
    """
    Ordered registry of object ids with an active flag.

    ``generation`` increases by one on every observation that adds or
    removes an object. An object that leaves and later returns is treated
    as a new arrival.
    """

    def __init__(self) -> None:
        self._entries: List[RegistryEntry] = []
        self._index = {}
        self.generation = 0

    @property
    def entries(self) -> List[Tuple[str, bool]]:
        return [(e.object_id, e.active) for e in self._entries]

    def active_ids(self) -> Tuple[str, ...]:
        return tuple(e.object_id for e in self._entries if e.active)

    def observe(self, ids: Sequence[str]) -> Tuple[List[str], List[str]]:
        """
        Record the ids present at a new time step.

        Parameters
        ----------
        ids : sequence of str
            Object ids observed at this step. Must be unique.

        Returns
        -------
        tuple of (list, list)
            Ids that arrived and ids that left, in registry order.
        """

        present = [str(i) for i in ids]
        if len(set(present)) != len(present):
            raise ValueError("Object ids must be unique within a time step")

        present_set = set(present)
        added: List[str] = []
        removed: List[str] = []

        for entry in self._entries:
            if entry.active and entry.object_id not in present_set:
                entry.active = False
                removed.append(entry.object_id)

        for obj in present:
            pos = self._index.get(obj)
            if pos is None:
                self._index[obj] = len(self._entries)
                self._entries.append(RegistryEntry(obj, True))
                added.append(obj)
            elif not self._entries[pos].active:
                # returning objects carry no history
                self._entries[pos].active = True
                added.append(obj)

        if added or removed:
            self.generation += 1

        return added, removed

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, object_id: str) -> bool:
        return object_id in self._index
