"""Markings, fundamental decompositions, marked relative poset polytopes,
standardization to quotient structures, MRPP subdivisions and the
chain-order polytope comparison."""

from fractions import Fraction
from functools import cached_property

from . import linalg
from .degeneration import subdivide
from .errors import (
    InternalClosureFailure,
    InvalidStructure,
    NotAPartition,
    NotDominant,
    TheoremViolation,
)
from .posets import (
    Poset,
    RelativeStructure,
    mask_bits,
    validate_relative_structure,
)
from .polytopes import indicator


class Marking:
    """A marked subset with integer values, given by labels."""

    def __init__(self, values):
        self.values = dict(values)

    def items(self):
        return self.values.items()


class FundamentalDecomposition:
    """The unique expression of a dominant marking as sum of fundamental ones.

    `terms` is the strictly increasing chain of ideals of (P*,<) with their
    positive multiplicities; `shift` is the translation making the marking
    nonnegative (0 when it already is).
    """

    def __init__(self, terms, shift, marked_mask):
        self.terms = tuple(terms)
        self.shift = shift
        self.marked_mask = marked_mask

    @property
    def total(self):
        return sum(alpha for _, alpha in self.terms)

    def chain_masks(self):
        """D(lambda): the term ideals together with the empty set and all of P*."""
        masks = {0, self.marked_mask}
        masks.update(k for k, _ in self.terms)
        return tuple(sorted(masks, key=lambda m: bin(m).count("1")))


def fundamental_decomposition(structure, scale=1):
    """Layer decomposition of the (scaled) marking of a marked structure."""
    if structure.marked == 0:
        raise InvalidStructure("structure carries no marking")
    marked = structure.marked
    values = {i: scale * structure.marking[i] for i in mask_bits(marked)}
    shift = -min(0, min(values.values()))
    shifted = {i: v + shift for i, v in values.items()}
    peak = max(shifted.values())
    terms = []
    for level in range(peak, 0, -1):
        layer = sum(1 << i for i, v in shifted.items() if v >= level)
        if terms and terms[-1][0] == layer:
            terms[-1][1] += 1
        else:
            terms.append([layer, 1])
    return FundamentalDecomposition(
        [(k, a) for k, a in terms], shift, marked
    )


class MarkedPolytope:
    """An MRPP presented by its full integer point set (vertices on demand)."""

    def __init__(self, structure, points):
        self.structure = structure
        self.points = tuple(sorted(points))

    def __len__(self):
        return len(self.points)

    @cached_property
    def vertices(self):
        return tuple(sorted(linalg.extreme_points(self.points)))

    @cached_property
    def dimension(self):
        return linalg.affine_dimension(self.points)


def mrpp_points(structure, scale=1):
    """Integer points of R_{scale*lambda}: sums over prescribed-intersection multichains."""
    fd = fundamental_decomposition(structure, scale)
    lat = structure.lattice
    marked = structure.marked
    n = structure.poset.n
    reqs = [k for k, alpha in fd.terms for _ in range(alpha)]
    top_vertex = indicator(structure.max_weak(structure.poset.full), n)
    offset = tuple(-fd.shift * t for t in top_vertex)
    if not reqs:
        return [offset]
    sups = lat.superset_lists
    vertex_vectors = [indicator(structure.max_weak(m), n) for m in lat.masks]
    points = set()
    chains = 0

    def rec(last, depth, acc):
        nonlocal chains
        if depth == len(reqs):
            points.add(tuple(acc))
            chains += 1
            return
        base = sups[last] if last is not None else range(len(lat.masks))
        for j in base:
            if lat.masks[j] & marked == reqs[depth]:
                v = vertex_vectors[j]
                rec(j, depth + 1, [a + b for a, b in zip(acc, v)])

    rec(None, 0, list(offset))
    assert chains == len(points), "prescribed multichains produced a repeated point"
    return sorted(points)


def build_mrpp(structure, scale=1):
    """The marked relative poset polytope of the structure's marking."""
    return MarkedPolytope(structure, mrpp_points(structure, scale))


def fundamental_mrpp(structure, k_mask):
    """Face of R(P,<,<') cut by the fundamental marking of the ideal K of (P*,<)."""
    if structure.marked == 0:
        raise InvalidStructure("structure carries no marking")
    if k_mask & ~structure.marked:
        raise InvalidStructure("K is not a subset of the marked set")
    lat = structure.lattice
    n = structure.poset.n
    pts = [
        indicator(structure.max_weak(m), n)
        for m in lat.masks
        if m & structure.marked == k_mask
    ]
    if not pts:
        raise InternalClosureFailure("fundamental MRPP is empty; K is not an ideal of (P*,<)")
    return MarkedPolytope(structure, pts)


class StandardizedStructure:
    """Quotient data of Theorem-style standardization.

    `quotient` is the standard marked structure over Q = P/~ with orders
    (<<, <<'); `theta_src` lists, per Q coordinate, the P coordinate that the
    unimodular projection copies; `jlambda` holds the base-lattice positions
    of J_lambda in ascending order and `lattice_map` their images in the
    quotient lattice.
    """

    def __init__(self, base, quotient, class_masks, theta_src, jlambda, lattice_map):
        self.base = base
        self.quotient = quotient
        self.class_masks = tuple(class_masks)
        self.theta_src = tuple(theta_src)
        self.jlambda = tuple(jlambda)
        self.lattice_map = tuple(lattice_map)

    @property
    def is_identity(self):
        return all(bin(m).count("1") == 1 for m in self.class_masks) and (
            len(self.jlambda) == len(self.base.lattice)
        )

    def theta(self, point):
        return tuple(point[i] for i in self.theta_src)


def standardize(structure):
    """Collapse elements indistinguishable by J_lambda; returns the quotient data."""
    if structure.marked == 0:
        raise InvalidStructure("structure carries no marking")
    poset = structure.poset
    lat = structure.lattice
    n = poset.n
    fd = fundamental_decomposition(structure)
    chain = set(fd.chain_masks())
    jlambda = [i for i, m in enumerate(lat.masks) if m & structure.marked in chain]

    signatures = [0] * n
    for k, pos in enumerate(jlambda):
        m = lat.masks[pos]
        for p in mask_bits(m):
            signatures[p] |= 1 << k

    by_sig = {}
    for p in range(n):
        by_sig.setdefault(signatures[p], []).append(p)
    classes = sorted(by_sig.values(), key=lambda members: members[0])
    class_masks = [sum(1 << p for p in members) for members in classes]
    class_of = {}
    for c, members in enumerate(classes):
        for p in members:
            class_of[p] = c

    labels = ["|".join(poset.elements[p] for p in members) for members in classes]
    q = len(classes)
    above = [0] * q
    for a in range(q):
        for b in range(q):
            if a != b and signatures[classes[b][0]] & ~signatures[classes[a][0]] == 0:
                above[a] |= 1 << b
    qposet = Poset(labels, tuple(above))

    weak_pairs = set()
    for p1 in range(n):
        for p2 in mask_bits(structure.weak_above[p1]):
            c1, c2 = class_of[p1], class_of[p2]
            if c1 != c2 and not class_masks[c1] & structure.marked:
                weak_pairs.add((labels[c1], labels[c2]))

    mu = {}
    for c, members in enumerate(classes):
        marked_members = class_masks[c] & structure.marked
        if marked_members:
            mu[labels[c]] = structure.marking[mask_bits(marked_members)[0]]
    quotient = validate_relative_structure(qposet, sorted(weak_pairs), mu)

    # theta copies a marked representative for marked classes, the single
    # member otherwise (non-marked classes are singletons for valid input)
    theta_src = []
    for c in range(q):
        marked_members = class_masks[c] & structure.marked
        if marked_members:
            theta_src.append(mask_bits(marked_members)[0])
        else:
            members = mask_bits(class_masks[c])
            if len(members) != 1:
                raise InternalClosureFailure("unmarked equivalence class is not a singleton")
            theta_src.append(members[0])

    qlat = quotient.lattice
    lattice_map = []
    for pos in jlambda:
        m = lat.masks[pos]
        qmask = 0
        for c in range(q):
            inside = class_masks[c] & m
            if inside == class_masks[c]:
                qmask |= 1 << c
            elif inside:
                raise InternalClosureFailure("ideal of J_lambda is not a union of classes")
        lattice_map.append(qlat.position[qmask])
    if len(set(lattice_map)) != len(qlat):
        raise InternalClosureFailure("projection is not a lattice bijection")

    marked_classes = mask_bits(quotient.marked)
    for a in marked_classes:
        for b in marked_classes:
            if a != b and not (quotient.poset.less(a, b) or quotient.poset.less(b, a)):
                raise InternalClosureFailure("quotient marked set is not a chain")
    qfd = fundamental_decomposition(quotient)
    if len(qfd.chain_masks()) != bin(quotient.marked).count("1") + 1:
        raise InternalClosureFailure("standardized structure is not standard")
    return StandardizedStructure(
        structure, quotient, class_masks, theta_src, jlambda, lattice_map
    )


class MarkedPart:
    """A part of the MRPP subdivision at the standardized level."""

    def __init__(self, order, big_sublattice, affine, restricted_affine, points,
                 linearization_count):
        self.order = order
        self.big_sublattice = tuple(big_sublattice)
        self.affine = affine
        self.restricted_affine = restricted_affine
        self.points = tuple(sorted(points))
        self.linearization_count = linearization_count

    @cached_property
    def vertices(self):
        return tuple(sorted(linalg.extreme_points(self.points)))

    def added_covers(self, base_poset):
        return [
            (self.order.elements[i], self.order.elements[j])
            for i, j in self.order.covers()
            if not base_poset.less(i, j)
        ]


class MarkedSubdivision:
    def __init__(self, standardized, parts, dropped):
        self.standardized = standardized
        self.parts = tuple(parts)
        self.dropped = dropped  # big parts whose section is lower-dimensional

    def __len__(self):
        return len(self.parts)


def restricted_affine(structure, affine):
    """Affine function modulo the fixed marked coordinates: the canonical key
    on the section subspace x_p = lambda_p."""
    a, b = affine
    free = tuple(
        a[i] for i in range(structure.poset.n) if not structure.marked >> i & 1
    )
    const = b + sum(
        a[i] * structure.marking[i] for i in mask_bits(structure.marked)
    )
    return free, const


def mrpp_subdivide(structure, w):
    """Subdivide the standardized MRPP under a weight over J_lambda.

    The non-marked relative polytope of the quotient is subdivided with the
    transported weights; each part is intersected with the marked section and
    kept when the section is full-dimensional.
    """
    std = standardize(structure)
    quotient = std.quotient
    values = list(w.values) if hasattr(w, "values") else [Fraction(v) for v in w]
    if len(values) != len(std.jlambda):
        raise ValueError(
            f"weight has {len(values)} entries, J_lambda has {len(std.jlambda)}"
        )
    wq = [Fraction(0)] * len(quotient.lattice)
    for k, qpos in enumerate(std.lattice_map):
        wq[qpos] = Fraction(values[k])
    big = subdivide(quotient, wq)

    whole = MarkedPolytope(quotient, mrpp_points(quotient))
    keep = []
    dropped = 0
    seen_affines = set()
    covered = set()
    for part in big.parts:
        section_structure = quotient.with_order(part.order)
        pts = mrpp_points(section_structure)
        if linalg.affine_dimension(pts) != whole.dimension:
            dropped += 1
            continue
        raff = restricted_affine(quotient, part.affine)
        if raff in seen_affines:
            raise InternalClosureFailure("two section parts share an affine lift")
        seen_affines.add(raff)
        covered.update(pts)
        keep.append(
            MarkedPart(part.order, part.sublattice, part.affine, raff, pts,
                       part.linearization_count)
        )
    if covered != set(whole.points):
        raise InternalClosureFailure("section parts do not cover the marked polytope")
    return MarkedSubdivision(std, keep, dropped)


def _mcop_chains(poset, anchors, middle):
    """All chains a < p_1 < ... < p_r < b with a,b anchors and p_i in `middle` (r >= 0)."""
    n = poset.n
    out = []
    anchor_list = mask_bits(anchors)

    def extend(start, current, last):
        for b in anchor_list:
            if poset.less(last, b):
                out.append((start, tuple(current), b))
        for p in mask_bits(middle):
            if poset.less(last, p):
                current.append(p)
                extend(start, current, p)
                current.pop()

    for a in anchor_list:
        extend(a, [], a)
    return out


def mcop_build(poset, marking, chain_part, order_part):
    """Marked chain-order polytope via two constructions that must agree.

    (1) bounding-box enumeration against the defining inequalities and
    (2) the MRPP with p <' q iff p < q and p not in P* u O.
    Their disagreement raises TheoremViolation.
    """
    marking = dict(marking.items() if isinstance(marking, Marking) else marking)
    marked_mask = 0
    for label in marking:
        marked_mask |= 1 << poset.index(label)
    c_mask = sum(1 << poset.index(x) for x in chain_part)
    o_mask = sum(1 << poset.index(x) for x in order_part)
    free = poset.full & ~marked_mask
    if c_mask & o_mask or (c_mask | o_mask) != free:
        raise NotAPartition("C and O must partition the unmarked elements")
    values = {poset.index(k): int(v) for k, v in marking.items()}
    for i in values:
        for j in mask_bits(poset.above[i] & marked_mask):
            if values[i] < values[j]:
                raise NotDominant(
                    f"marking increases along {poset.elements[i]} < {poset.elements[j]}"
                )

    # construction (2): the MRPP of the order weakened away from P* u O
    weak_pairs = [
        (poset.elements[i], poset.elements[j])
        for i in mask_bits(free & ~o_mask)
        for j in mask_bits(poset.above[i])
    ]
    structure = validate_relative_structure(poset, weak_pairs, marking)
    mrpp = mrpp_points(structure)

    # construction (1): box enumeration against the chain-order inequalities
    lam_min = min(values.values())
    lam_max = max(values.values())
    n = poset.n
    ranges = []
    for i in range(n):
        if marked_mask >> i & 1:
            ranges.append((values[i], values[i]))
        elif o_mask >> i & 1:
            ranges.append((lam_min, lam_max))
        else:
            ranges.append((0, lam_max - lam_min))
    constraints = _mcop_chains(poset, marked_mask | o_mask, c_mask)

    box_points = []
    point = [0] * n

    def enumerate_box(i):
        if i == n:
            for a, mids, b in constraints:
                if sum(point[p] for p in mids) > point[a] - point[b]:
                    return
            box_points.append(tuple(point))
            return
        lo, hi = ranges[i]
        for v in range(lo, hi + 1):
            point[i] = v
            enumerate_box(i + 1)

    enumerate_box(0)

    if set(box_points) != set(mrpp):
        raise TheoremViolation(
            "chain-order inequalities and the MRPP construction disagree"
        )
    return MarkedPolytope(structure, box_points)


def preimage_mrpp_candidates(subdivision, part, bound=None):
    """Experimental: search stronger orders presenting a part's theta-preimage.

    The preimage of a section part under the standardization projection is
    not known to be an MRPP; this scan over stronger orders of the base poset
    makes no correctness claim and is guarded by the enumeration size bound.
    """
    from .posets import stronger_orders

    std = subdivision.standardized
    base = std.base
    section = set(part.points)
    preimage = {p for p in mrpp_points(base) if std.theta(p) in section}
    matches = []
    for order in stronger_orders(base.poset, bound):
        candidate = base.with_order(order)
        try:
            if set(mrpp_points(candidate)) == preimage:
                matches.append(order)
        except InvalidStructure:
            continue
    return matches


def mcop_recognize(structure, target):
    """Search all chain/order partitions for one whose MCOP equals `target`.

    Point-set equality is used: for lattice polytopes presented by their full
    integer point sets it is equivalent to vertex-set equality.
    """
    poset = structure.poset
    marking = {poset.elements[i]: structure.marking[i] for i in mask_bits(structure.marked)}
    free = mask_bits(poset.full & ~structure.marked)
    target_points = set(target.points if isinstance(target, MarkedPolytope) else target)
    for bits in range(1 << len(free)):
        o_part = [poset.elements[free[k]] for k in range(len(free)) if bits >> k & 1]
        c_part = [poset.elements[free[k]] for k in range(len(free)) if not bits >> k & 1]
        candidate = mcop_build(poset, marking, c_part, o_part)
        if set(candidate.points) == target_points:
            return tuple(sorted(c_part)), tuple(sorted(o_part))
    return None
