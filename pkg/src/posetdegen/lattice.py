"""The distributive lattice of order ideals and its operations.

Ideals are bitmasks over the poset's element indexing; the lattice stores
them sorted by (cardinality, bit pattern), and that sorted position is the
canonical key used by weight vectors downstream.
"""

from functools import cached_property

from .errors import HeightDeficient, InternalClosureFailure, NotASublattice
from .posets import Poset, mask_bits, transitive_closure


class IdealLattice:
    """J(P,<) as a sorted list of ideal bitmasks with position lookup."""

    def __init__(self, poset, masks):
        self.poset = poset
        self.masks = tuple(masks)
        self.position = {m: i for i, m in enumerate(self.masks)}

    def __len__(self):
        return len(self.masks)

    def __iter__(self):
        return iter(self.masks)

    def label_key(self, pos):
        """Comma-joined sorted labels of an ideal; the empty ideal is ''."""
        labels = sorted(self.poset.elements[i] for i in mask_bits(self.masks[pos]))
        return ",".join(labels)

    @cached_property
    def key_to_position(self):
        return {self.label_key(i): i for i in range(len(self.masks))}

    @cached_property
    def superset_lists(self):
        """For each position, the positions of all ideals containing it (incl. itself)."""
        out = []
        for i, m in enumerate(self.masks):
            out.append([j for j, mm in enumerate(self.masks) if mm & m == m])
        return out

    @cached_property
    def incomparable_pairs(self):
        out = []
        for a in range(len(self.masks)):
            for b in range(a + 1, len(self.masks)):
                m1, m2 = self.masks[a], self.masks[b]
                if m1 & ~m2 and m2 & ~m1:
                    out.append((a, b))
        return out

    def multichain_count(self, m):
        """Number of weakly increasing m-tuples of ideals."""
        if m == 0:
            return 1
        counts = [1] * len(self.masks)
        for _ in range(m - 1):
            nxt = [0] * len(self.masks)
            for i in range(len(self.masks)):
                ci = counts[i]
                for j in self.superset_lists[i]:
                    nxt[j] += ci
            counts = nxt
        return sum(counts)

    def maximal_chain_count(self):
        """Number of maximal chains (equals the number of linearizations of <)."""
        counts = {0: 1}
        for m in self.masks:  # sorted by cardinality, so predecessors come first
            if m == 0:
                continue
            counts[m] = sum(
                counts[m & ~(1 << i)]
                for i in mask_bits(m)
                if (m & ~(1 << i)) in self.position
            )
        return counts[self.poset.full]


def enumerate_ideals(poset):
    """All order ideals of (P,<), complete and duplicate-free."""
    seen = {0}
    queue = [0]
    below = poset.below
    n = poset.n
    while queue:
        cur = queue.pop()
        for i in range(n):
            if not cur >> i & 1 and below[i] & ~cur == 0:
                nxt = cur | 1 << i
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
    masks = sorted(seen, key=lambda m: (bin(m).count("1"), m))
    return IdealLattice(poset, masks)


def max_antichain(mask, above_rows):
    """Elements of `mask` with no larger element of `mask` under the given order."""
    out = 0
    for i in mask_bits(mask):
        if above_rows[i] & mask == 0:
            out |= 1 << i
    return out


def star_mask(m1, m2, structure):
    """The <'-ideal generated by (J1 ∩ J2) ∩ (max' J1 ∪ max' J2), as a mask."""
    gens = (m1 & m2) & (structure.max_weak(m1) | structure.max_weak(m2))
    return structure.weak_down_closure(gens)


def star(pos1, pos2, structure):
    """Lattice position of J1 * J2; raises if closure fails (validated structures never do)."""
    lat = structure.lattice
    s = star_mask(lat.masks[pos1], lat.masks[pos2], structure)
    try:
        return lat.position[s]
    except KeyError:
        raise InternalClosureFailure(
            f"star of {lat.label_key(pos1)!r} and {lat.label_key(pos2)!r} left the lattice"
        ) from None


def sublattice_to_order(masks, poset):
    """Recover the unique order stronger than < whose ideal lattice is `masks`.

    Defined by p ≺ q iff every member containing q also contains p; the input
    must be union/intersection closed and contain a maximal chain.
    """
    members = set(masks)
    for a in members:
        for b in members:
            if a | b not in members or a & b not in members:
                raise NotASublattice("set is not closed under union/intersection")
    sizes = {bin(m).count("1") for m in members}
    if sizes != set(range(poset.n + 1)):
        raise HeightDeficient(
            f"sublattice has height {len(sizes)}, expected {poset.n + 1}"
        )
    n = poset.n
    above = [0] * n
    for q in range(n):
        containing = [m for m in members if m >> q & 1]
        meet = poset.full
        for m in containing:
            meet &= m
        for p in mask_bits(meet & ~(1 << q)):
            above[p] |= 1 << q
    closed = transitive_closure(above, n)
    if closed != tuple(above):
        raise NotASublattice("recovered relation failed to be transitive")
    stronger = Poset(poset.elements, closed)
    if not poset.is_weaker_than(stronger):
        raise NotASublattice("recovered order is not stronger than the base order")
    if set(enumerate_ideals(stronger).masks) != members:
        raise NotASublattice("recovered order does not reproduce the sublattice")
    return stronger
