"""Order, chain and relative poset polytopes: vertices, triangulation,
dilation lattice points, Ehrhart counts, normality, transfer map.

Dilation point sets are held in a packed integer encoding (a fixed number of
bits per coordinate) so that set arithmetic on them stays cheap; public
functions decode to coordinate tuples.
"""

from fractions import Fraction

from . import linalg
from .errors import InvalidStructure, NotALatticePoint, NotInOrderPolytope
from .posets import RelativeStructure, linear_extension_indices, mask_bits

PACK_BITS = 6  # coordinates of m-dilations stay below 2**PACK_BITS for m <= 63
_PACK_FULL = (1 << PACK_BITS) - 1


def pack_mask(mask, n):
    """Packed encoding of a 0/1 vector given as a bitmask."""
    code = 0
    for i in mask_bits(mask):
        code |= 1 << (PACK_BITS * i)
    return code


def unpack(code, n):
    return tuple((code >> (PACK_BITS * i)) & _PACK_FULL for i in range(n))


def indicator(mask, n):
    return tuple(1 if mask >> i & 1 else 0 for i in range(n))


def weak_rows_for_kind(structure, kind):
    if kind == "order":
        return (0,) * structure.poset.n
    if kind == "chain":
        return structure.poset.above
    if kind == "relative":
        return structure.weak_above
    raise InvalidStructure(f"unknown polytope kind {kind!r}")


def structure_for_kind(structure, kind):
    rows = weak_rows_for_kind(structure, kind)
    if rows == structure.weak_above:
        return structure
    return RelativeStructure(structure.poset, rows)


class Simplex:
    """The simplex of one linearization: vertices 1_{max' J} along its chain."""

    def __init__(self, linearization, vertices, chain_positions):
        self.linearization = tuple(linearization)
        self.vertices = tuple(vertices)
        self.chain_positions = tuple(chain_positions)

    def edge_matrix(self):
        base = self.vertices[0]
        return [[v[i] - base[i] for i in range(len(base))] for v in self.vertices[1:]]

    def is_unimodular(self):
        return abs(linalg.determinant(self.edge_matrix())) == 1

    def barycentric(self, point, m=1):
        """Coefficients c >= 0 with sum m expressing `point` over the vertices, or None."""
        n = len(self.vertices[0])
        cols = [[Fraction(v[i]) for v in self.vertices] for i in range(n)]
        cols.append([Fraction(1)] * len(self.vertices))
        rhs = [Fraction(x) for x in point] + [Fraction(m)]
        try:
            coeffs = linalg.solve(cols, rhs)
        except ValueError:
            return None
        if any(c < 0 for c in coeffs):
            return None
        return coeffs


class LatticePolytope:
    """Vertex presentation of an order/chain/relative poset polytope."""

    def __init__(self, structure, kind, vertices, vertex_labels):
        self.structure = structure
        self.kind = kind
        self.ambient_dim = structure.poset.n
        self.vertices = tuple(vertices)
        self.vertex_labels = tuple(vertex_labels)
        self._dilations = {}

    def lattice_points(self, m):
        return dilation_points(self.structure, m, cache=self._dilations)


def build_polytope(structure, kind="relative"):
    """Vertices {1_{max_<' J}} over the ideal lattice, for the requested kind."""
    s = structure_for_kind(structure, kind)
    n = s.poset.n
    lat = s.lattice
    vertices = [indicator(s.max_weak(m), n) for m in lat.masks]
    if len(set(vertices)) != len(vertices):
        raise InvalidStructure("vertex map J -> 1_{max' J} is not injective")
    return LatticePolytope(s, kind, vertices, lat.masks)


def canonical_triangulation(structure):
    """One unimodular simplex per linearization of <; their union is the polytope."""
    n = structure.poset.n
    lat = structure.lattice
    simplices = []
    for ext in linear_extension_indices(structure.poset):
        chain_masks = [0]
        cur = 0
        for i in ext:
            cur |= 1 << i
            chain_masks.append(cur)
        vertices = [indicator(structure.max_weak(m), n) for m in chain_masks]
        positions = [lat.position[m] for m in chain_masks]
        simplex = Simplex(ext, vertices, positions)
        assert simplex.is_unimodular(), "linearization simplex must be unimodular"
        simplices.append(simplex)
    return simplices


def packed_vertex_codes(structure):
    lat = structure.lattice
    n = structure.poset.n
    return [pack_mask(structure.max_weak(m), n) for m in lat.masks]


def packed_dilation(structure, m):
    """Packed point codes of the m-th dilation, via weakly increasing ideal tuples."""
    lat = structure.lattice
    if m == 0:
        return {0}
    if m > _PACK_FULL:
        raise ValueError(f"dilation {m} overflows the packed encoding")
    codes = packed_vertex_codes(structure)
    sups = lat.superset_lists
    points = set()
    add = points.add
    count = 0

    def rec(idx, depth, acc):
        nonlocal count
        if depth == m:
            add(acc)
            count += 1
            return
        for j in sups[idx]:
            rec(j, depth + 1, acc + codes[j])

    for i in range(len(lat.masks)):
        rec(i, 1, codes[i])
    assert count == len(points), "distinct multichains produced a repeated point"
    return points


def dilation_points(structure, m, cache=None):
    """Integer points of m * R(P,<,<') as coordinate tuples."""
    if cache is not None and m in cache:
        return cache[m]
    n = structure.poset.n
    pts = frozenset(unpack(code, n) for code in packed_dilation(structure, m))
    if cache is not None:
        cache[m] = pts
    return pts


def lattice_points(structure, m):
    return dilation_points(structure, m)


def ehrhart_values(structure, m_max):
    """Counts of lattice points of the dilations m = 0..m_max."""
    return [len(packed_dilation(structure, m)) for m in range(m_max + 1)]


def decompose_point(point, m, structure):
    """The unique weakly increasing ideal tuple summing to `point`.

    Greedy peeling: the top ideal is the <-ideal generated by the support,
    because max_<' of it generates it both as a <'-ideal and a <-ideal.
    """
    n = structure.poset.n
    lat = structure.lattice
    x = list(point)
    if len(x) != n or any(v < 0 for v in x):
        raise NotALatticePoint(f"{point} is not in dilation {m}")
    chain = []
    for _ in range(m):
        support = sum(1 << i for i in range(n) if x[i] > 0)
        ideal = structure.poset.down_closure(support)
        if ideal not in lat.position:
            raise NotALatticePoint(f"{point} is not in dilation {m}")
        chain.append(ideal)
        for i in mask_bits(structure.max_weak(ideal)):
            x[i] -= 1
            if x[i] < 0:
                raise NotALatticePoint(f"{point} is not in dilation {m}")
    if any(x):
        raise NotALatticePoint(f"{point} is not in dilation {m}")
    chain.reverse()
    if any(a & ~b for a, b in zip(chain, chain[1:])):
        raise NotALatticePoint(f"{point} is not in dilation {m}")
    return chain


def recompose(chain, structure):
    n = structure.poset.n
    total = [0] * n
    for mask in chain:
        for i in mask_bits(structure.max_weak(mask)):
            total[i] += 1
    return tuple(total)


def check_normality(structure, k_max):
    """Verify each dilation k <= k_max equals the k-fold Minkowski sum of dilation 1.

    Returns (True, None) or (False, (k, failing_point)).
    """
    n = structure.poset.n
    base = packed_dilation(structure, 1)
    current = set(base)
    for k in range(2, k_max + 1):
        sums = {a + b for a in current for b in base}
        target = packed_dilation(structure, k)
        if sums != target:
            bad = sorted(target.symmetric_difference(sums))[0]
            return False, (k, unpack(bad, n))
        current = sums
    return True, None


def transfer_map(point, poset):
    """The piecewise-linear transfer x_p -> x_p - max_{q > p} x_q on the order polytope."""
    n = poset.n
    x = [Fraction(v) for v in point]
    for i in range(n):
        if x[i] < 0 or x[i] > 1:
            raise NotInOrderPolytope(f"coordinate {poset.elements[i]} out of [0,1]")
        for j in mask_bits(poset.above[i]):
            if x[i] < x[j]:
                raise NotInOrderPolytope(
                    f"x[{poset.elements[i]}] < x[{poset.elements[j]}] violates the order polytope"
                )
    out = []
    for i in range(n):
        over = [x[j] for j in mask_bits(poset.above[i])]
        out.append(x[i] - (max(over) if over else Fraction(0)))
    return tuple(out)


def normalized_volume(structure):
    """Normalized volume via the canonical triangulation (each simplex counts 1)."""
    return len(canonical_triangulation(structure))


def point_in_dilation(point, m, structure, simplices=None):
    """Membership oracle: x lies in m*R iff some m*Delta contains it (exact barycentric)."""
    if simplices is None:
        simplices = canonical_triangulation(structure)
    return any(s.barycentric(point, m) is not None for s in simplices)
