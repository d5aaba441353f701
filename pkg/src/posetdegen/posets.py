"""Finite posets, order enumeration and relative-structure validation.

Elements are canonically indexed by input order; every subset that appears
downstream (ideals, antichains, marked sets) is an int bitmask over that
indexing.  The strict order itself is stored as one bitmask per element:
``above[i]`` is the set of j with i < j.
"""

from __future__ import annotations

import os
from functools import cached_property

from .errors import (
    ConditionViolated,
    CycleDetected,
    DuplicateLabel,
    SizeBoundExceeded,
    UnknownLabel,
)

DEFAULT_SIZE_BOUND = 7


def size_bound():
    """Guard for exhaustive enumerations; POSETDEGEN_SIZE_BOUND overrides it."""
    return int(os.environ.get("POSETDEGEN_SIZE_BOUND", DEFAULT_SIZE_BOUND))


def transitive_closure(above, n):
    """Close a strict relation given as per-element 'above' bitmasks."""
    rows = list(above)
    for k in range(n):
        bit = 1 << k
        for i in range(n):
            if rows[i] & bit:
                rows[i] |= rows[k]
    return tuple(rows)


def mask_bits(mask):
    """Indices of the set bits of a mask, ascending."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


class Poset:
    """An immutable finite poset with a transitively closed strict order.

    Instances are cheap value objects; do not mutate `elements` or `above`
    after construction.  `above[i]` holds the strictly greater elements,
    `below[i]` the strictly smaller ones.
    """

    def __init__(self, elements, above):
        self.elements = tuple(elements)
        self.above = tuple(above)
        self.n = len(self.elements)
        self.full = (1 << self.n) - 1
        self._index = {e: i for i, e in enumerate(self.elements)}

    def index(self, label):
        try:
            return self._index[label]
        except KeyError:
            raise UnknownLabel(f"unknown element {label!r}") from None

    def less(self, i, j):
        return bool(self.above[i] >> j & 1)

    @cached_property
    def below(self):
        rows = [0] * self.n
        for i in range(self.n):
            for j in mask_bits(self.above[i]):
                rows[j] |= 1 << i
        return tuple(rows)

    @cached_property
    def minimals(self):
        return sum(1 << i for i in range(self.n) if self.below[i] == 0)

    @cached_property
    def maximals(self):
        return sum(1 << i for i in range(self.n) if self.above[i] == 0)

    def covers(self):
        """Cover pairs (i, j) with i < j and nothing strictly between."""
        out = []
        for i in range(self.n):
            for j in mask_bits(self.above[i]):
                if not any(self.less(i, k) and self.less(k, j) for k in range(self.n)):
                    out.append((i, j))
        return out

    def cover_labels(self):
        return [(self.elements[i], self.elements[j]) for i, j in self.covers()]

    def down_closure(self, mask):
        """The order ideal generated by `mask`."""
        out = mask
        for i in mask_bits(mask):
            out |= self.below[i]
        return out

    def is_ideal(self, mask):
        for i in mask_bits(mask):
            if self.below[i] & ~mask:
                return False
        return True

    def is_weaker_than(self, other):
        """True when every relation of self holds in `other` (same elements)."""
        return self.elements == other.elements and all(
            a & ~b == 0 for a, b in zip(self.above, other.above)
        )

    def key(self):
        return (self.elements, self.above)

    def __eq__(self, other):
        return isinstance(other, Poset) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        pairs = ",".join(f"{a}<{b}" for a, b in self.cover_labels())
        return f"Poset({list(self.elements)}; {pairs})"


def _find_cycle(n, edges, start):
    # BFS over the raw cover edges, tracking one path back to `start`.
    parent = {start: None}
    queue = [start]
    while queue:
        u = queue.pop(0)
        for a, b in edges:
            if a != u:
                continue
            if b == start:
                path = [start]
                v = u
                while v is not None and v != start:
                    path.append(v)
                    v = parent[v]
                path.reverse()
                return path
            if b not in parent:
                parent[b] = u
                queue.append(b)
    return [start]


def build_poset(elements, covers):
    """Build a poset from labels and covering pairs; rejects cycles by name."""
    elements = list(elements)
    seen = set()
    for e in elements:
        if e in seen:
            raise DuplicateLabel(f"duplicate element {e!r}")
        seen.add(e)
    index = {e: i for i, e in enumerate(elements)}
    n = len(elements)
    above = [0] * n
    edge_list = []
    for a, b in covers:
        if a not in index:
            raise UnknownLabel(f"unknown element {a!r} in cover ({a!r}, {b!r})")
        if b not in index:
            raise UnknownLabel(f"unknown element {b!r} in cover ({a!r}, {b!r})")
        if a == b:
            raise CycleDetected([a])
        above[index[a]] |= 1 << index[b]
        edge_list.append((index[a], index[b]))
    closed = transitive_closure(above, n)
    for i in range(n):
        if closed[i] >> i & 1:
            cycle = _find_cycle(n, edge_list, i)
            raise CycleDetected([elements[v] for v in cycle])
    return Poset(elements, closed)


def antichain_poset(elements):
    return Poset(elements, (0,) * len(elements))


def chain_poset(elements):
    elements = list(elements)
    n = len(elements)
    above = [0] * n
    for i in range(n - 1):
        above[i] = 1 << (i + 1)
    return Poset(elements, transitive_closure(above, n))


def linear_extensions(poset):
    """All linearizations of the order, as tuples of element labels."""
    return [tuple(poset.elements[i] for i in ext) for ext in linear_extension_indices(poset)]


def linear_extension_indices(poset):
    """All linearizations as index tuples, built by peeling minimal elements."""
    n = poset.n
    below = poset.below
    out = []
    current = []

    def peel(placed):
        if len(current) == n:
            out.append(tuple(current))
            return
        for i in range(n):
            if not placed >> i & 1 and below[i] & ~placed == 0:
                current.append(i)
                peel(placed | 1 << i)
                current.pop()

    peel(0)
    return out


def stronger_orders(poset, bound=None):
    """All partial orders on the same elements whose relation contains the given one.

    Exhaustive BFS adding one pair at a time and closing; memoized by the
    closed relation, guarded by the size bound (exponential blow-up beyond).
    """
    limit = size_bound() if bound is None else bound
    if poset.n > limit:
        raise SizeBoundExceeded(
            f"stronger_orders on {poset.n} elements exceeds bound {limit}"
        )
    n = poset.n
    seen = {poset.above}
    queue = [poset.above]
    while queue:
        above = queue.pop()
        for i in range(n):
            for j in range(n):
                if i == j or above[i] >> j & 1 or above[j] >> i & 1:
                    continue
                rows = list(above)
                rows[i] |= 1 << j
                closed = transitive_closure(rows, n)
                if closed not in seen:
                    seen.add(closed)
                    queue.append(closed)
    return [Poset(poset.elements, above) for above in sorted(seen)]


class RelativeStructure:
    """A validated triple (P, <, <') with an optional marking.

    ``weak_above`` stores <' in the same bitmask format as the poset order.
    ``marked`` is a bitmask (0 when absent) and ``marking`` maps marked
    element indices to integers.
    """

    def __init__(self, poset, weak_above, marked=0, marking=None):
        self.poset = poset
        self.weak_above = tuple(weak_above)
        self.marked = marked
        self.marking = dict(marking or {})

    @cached_property
    def weak_below(self):
        rows = [0] * self.poset.n
        for i in range(self.poset.n):
            for j in mask_bits(self.weak_above[i]):
                rows[j] |= 1 << i
        return tuple(rows)

    @cached_property
    def lattice(self):
        from .lattice import enumerate_ideals

        return enumerate_ideals(self.poset)

    def weak_down_closure(self, mask):
        out = mask
        for i in mask_bits(mask):
            out |= self.weak_below[i]
        return out

    def max_weak(self, mask):
        """<'-maximal elements of a subset."""
        out = 0
        for i in mask_bits(mask):
            if self.weak_above[i] & mask == 0:
                out |= 1 << i
        return out

    def marking_vector(self):
        return tuple(self.marking[i] for i in mask_bits(self.marked))

    def with_order(self, poset):
        """Same weak order and marking over a stronger base order."""
        return RelativeStructure(poset, self.weak_above, self.marked, self.marking)

    def unmarked(self):
        return RelativeStructure(self.poset, self.weak_above)

    def key(self):
        return (self.poset.key(), self.weak_above, self.marked,
                tuple(sorted(self.marking.items())))

    def __repr__(self):
        weak = ",".join(
            f"{self.poset.elements[i]}<'{self.poset.elements[j]}"
            for i in range(self.poset.n)
            for j in mask_bits(self.weak_above[i])
        )
        return f"RelativeStructure({self.poset!r}; {weak or 'trivial'})"


def order_structure(poset):
    """<' trivial: the relative polytope becomes the order polytope."""
    return validate_relative_structure(poset, [])


def chain_structure(poset):
    """<' equal to <: the relative polytope becomes the chain polytope."""
    weak = [
        (poset.elements[i], poset.elements[j])
        for i in range(poset.n)
        for j in mask_bits(poset.above[i])
    ]
    return validate_relative_structure(poset, weak)


def validate_relative_structure(poset, weak_covers, marked=None):
    """Check conditions (i)-(iii) plus marking sanity and return the structure.

    `weak_covers` is a list of label pairs generating <'; `marked` is an
    optional mapping from labels to integer marking values.  Raises
    ConditionViolated naming the failed condition with a witness.
    """
    n = poset.n
    rows = [0] * n
    for a, b in weak_covers:
        rows[poset.index(a)] |= 1 << poset.index(b)
    weak_above = transitive_closure(rows, n)
    for i in range(n):
        if weak_above[i] >> i & 1:
            raise ConditionViolated("i", poset.elements[i], "weak relation is cyclic")
        extra = weak_above[i] & ~poset.above[i]
        if extra:
            j = mask_bits(extra)[0]
            raise ConditionViolated(
                "i",
                (poset.elements[i], poset.elements[j]),
                f"{poset.elements[i]} <' {poset.elements[j]} does not hold in <",
            )

    structure = RelativeStructure(poset, weak_above)

    from .lattice import star_mask

    lat = structure.lattice
    for a in range(len(lat.masks)):
        for b in range(a + 1, len(lat.masks)):
            m1, m2 = lat.masks[a], lat.masks[b]
            if m1 & ~m2 and m2 & ~m1:
                s = star_mask(m1, m2, structure)
                if s not in lat.position:
                    raise ConditionViolated(
                        "ii",
                        (lat.label_key(a), lat.label_key(b)),
                        "ideal lattice is not closed under the star operation",
                    )

    if marked is not None:
        marked_mask = 0
        marking = {}
        for label, value in marked.items():
            i = poset.index(label)
            marked_mask |= 1 << i
            marking[i] = int(value)
        for i in mask_bits(marked_mask):
            if weak_above[i]:
                j = mask_bits(weak_above[i])[0]
                raise ConditionViolated(
                    "iii",
                    (poset.elements[i], poset.elements[j]),
                    f"marked element {poset.elements[i]} has {poset.elements[j]} above it in <'",
                )
        missing = (poset.minimals | poset.maximals) & ~marked_mask
        if missing:
            i = mask_bits(missing)[0]
            raise ConditionViolated(
                "minmax", poset.elements[i],
                f"extremal element {poset.elements[i]} is not marked",
            )
        for i in mask_bits(marked_mask):
            for j in mask_bits(poset.above[i] & marked_mask):
                if marking[i] < marking[j]:
                    raise ConditionViolated(
                        "dominance",
                        (poset.elements[i], poset.elements[j]),
                        f"marking increases along {poset.elements[i]} < {poset.elements[j]}",
                    )
        structure = RelativeStructure(poset, weak_above, marked_mask, marking)
    return structure
