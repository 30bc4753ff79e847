"""Stratification combinatorics of the semistable special fiber.

Index embeddings by residues in Z/2d with the shift sigma: i -> i+1 and the
two-to-one reduction pi: Z/2d -> Z/d.  Subsets are bitmasks over Z/2d
(d <= 16), so every property here is checked by exhaustion.

A subset is ample when it meets {tau, tau+d} for every residue class; a type
is an ample subset of size d; a type is sparse when it contains no two
sigma-consecutive elements (possible only for odd d, since the signed
indicator locus of a type always has odd size and equals the type exactly in
the sparse case).
"""

from __future__ import annotations

import json
from dataclasses import dataclass


def _mask(items, d):
    m = 0
    for i in items:
        m |= 1 << (i % (2 * d))
    return m


def _items(mask, d):
    return tuple(i for i in range(2 * d) if mask >> i & 1)


def shift_set(mask, d, k=1):
    """Apply sigma^k to a subset (sigma: i -> i+1 on Z/2d)."""
    n = 2 * d
    k %= n
    full = (1 << n) - 1
    return ((mask << k) | (mask >> (n - k))) & full


def is_ample(mask, d):
    for tau in range(d):
        if not (mask >> tau & 1 or mask >> (tau + d) & 1):
            return False
    return True


def is_type(mask, d):
    return bin(mask).count("1") == d and is_ample(mask, d)


def is_sparse(mask, d):
    if not is_type(mask, d):
        return False
    return (mask & shift_set(mask, d, 1)) == 0


@dataclass(frozen=True)
class TypeSubset:
    mask: int
    d: int

    @property
    def members(self):
        return _items(self.mask, self.d)

    @property
    def sparse(self):
        return is_sparse(self.mask, self.d)

    def r(self, tau):
        """Signed indicator r(tau) = 1_S(tau+1) - 1_S(tau), values in {-1,0,1}."""
        n = 2 * self.d
        return (self.mask >> ((tau + 1) % n) & 1) - (self.mask >> (tau % n) & 1)


@dataclass(frozen=True)
class AmpleSubset:
    mask: int
    d: int

    @property
    def members(self):
        return _items(self.mask, self.d)

    @property
    def size(self):
        return bin(self.mask).count("1")


def enumerate_types(d):
    """All 2^d types, in increasing bitmask order, with sparse flags."""
    if d < 1:
        raise ValueError("degree must be positive")
    out = []
    for mask in range(1 << (2 * d)):
        if is_type(mask, d):
            out.append(TypeSubset(mask, d))
    return out


def enumerate_ample(d, size=None):
    out = []
    for mask in range(1 << (2 * d)):
        if is_ample(mask, d) and (size is None or bin(mask).count("1") == size):
            out.append(AmpleSubset(mask, d))
    return out


def phi_s(s: TypeSubset):
    """The -1 locus of the signed indicator, its projection, and injectivity.

    Returns (phi, delta, injective) where phi is the set of tau with
    r(tau) = -1, delta its image under pi, and injective records that pi
    restricted to phi is one-to-one (always true; asserted here).
    """
    d = s.d
    phi = tuple(tau for tau in range(2 * d) if s.r(tau) == -1)
    delta = tuple(sorted({tau % d for tau in phi}))
    injective = len(delta) == len(phi)
    return phi, delta, injective


def s_dagger(s: AmpleSubset):
    """The canonical type inside a proper ample subset, and its direction set.

    Returns (dagger, phi) where dagger is the unique type T <= S such that
    tau in S - T implies tau+1 in T, and phi is the subset of dagger's
    signed-indicator locus consisting of tau with tau + d not in S.
    """
    d = s.d
    n = 2 * d
    if s.mask == (1 << n) - 1:
        raise ValueError("the full set has no canonical contained type")
    if not is_ample(s.mask, d):
        raise ValueError("subset is not ample")
    candidates = []
    for t in enumerate_types(d):
        if t.mask & ~s.mask:
            continue
        rest = s.mask & ~t.mask
        if shift_set(rest, d, 1) & ~t.mask:
            continue
        candidates.append(t)
    if len(candidates) != 1:
        raise ArithmeticError("canonical type not unique for %s" % (s.members,))
    dag = candidates[0]
    phi_dag, _, _ = phi_s(dag)
    phi = tuple(tau for tau in phi_dag if not (s.mask >> ((tau + d) % n) & 1))
    return dag, phi


def depth_order(s: TypeSubset):
    """Depth strata of phi_S under tau < tau' iff tau' = sigma^{d+1} tau.

    Only defined (a partial order) when s is not sparse.
    """
    if s.sparse:
        raise ValueError("depth order undefined for sparse types")
    d = s.d
    n = 2 * d
    phi, _, _ = phi_s(s)
    phiset = set(phi)
    depth = {}

    def depth_of(tau):
        if tau in depth:
            return depth[tau]
        prev = (tau - (d + 1)) % n
        depth[tau] = depth_of(prev) + 1 if prev in phiset else 1
        return depth[tau]

    strata = {}
    for tau in phi:
        strata.setdefault(depth_of(tau), []).append(tau)
    return {k: tuple(sorted(v)) for k, v in strata.items()}


def frobenius_factor_degree(s: TypeSubset, steps: int) -> int:
    """Exponent of ell in the degree of the n-step shifted-type comparison map.

    The single-step map exists only for non-sparse types; its degree exponent
    is |phi_S|, and iterating over the shifted types adds the exponents.
    """
    if steps < 0:
        raise ValueError("steps must be nonnegative")
    if steps > 0 and s.sparse:
        raise ValueError("single-step comparison undefined for sparse types")
    total = 0
    cur = s.mask
    for _ in range(steps):
        phi, _, _ = phi_s(TypeSubset(cur, s.d))
        total += len(phi)
        cur = shift_set(cur, s.d, 1)
    return total


# ---------------------------------------------------------------------------
# the d = 3 resolution lattice


#: fixed component order for sign conventions: the six face types in cyclic
#: order, then the two sparse types
COMPONENT_ORDER_D3 = (
    (0, 1, 2), (1, 2, 3), (2, 3, 4), (3, 4, 5), (4, 5, 0), (5, 0, 1),
    (0, 2, 4), (1, 3, 5),
)


@dataclass(frozen=True)
class StratumNode:
    label: tuple        # sorted members of the ample subset
    kind: str           # "component" | "double" | "core"
    dim: int            # 6 - |S|
    cycle_family: str | None = None   # which featuring family it realizes


@dataclass(frozen=True)
class DualBuilding:
    vertices: tuple          # the eight type labels, in component order
    cube_edges: tuple        # 12 unordered pairs (indices into vertices)
    dashed_edges: tuple      # 6 sparse-to-opposite-face pairs
    core_pair: tuple         # the sparse-sparse pair, meeting in the core

    def degree(self, v):
        deg = 0
        for e in self.cube_edges + self.dashed_edges:
            if v in e:
                deg += 1
        return deg

    def adjacency(self):
        n = len(self.vertices)
        adj = [[0] * n for _ in range(n)]
        for a, b in self.cube_edges + self.dashed_edges:
            adj[a][b] = adj[b][a] = 1
        return adj


@dataclass(frozen=True)
class ResolutionLattice:
    d: int
    building: DualBuilding
    nodes: tuple                 # all StratumNode, components first
    intersections: dict          # frozenset of component indices -> node label
    quadruples: tuple            # nonempty 4-fold component index sets
    frobenius_action: dict       # component label -> image label under sigma

    def component_index(self, label):
        return COMPONENT_ORDER_D3.index(tuple(label))

    def pair_intersection(self, i, j):
        return self.intersections.get(frozenset((i, j)))

    def quadruple_nonempty(self, labels):
        idx = frozenset(self.component_index(l) for l in labels)
        return idx in set(self.quadruples)


def _face_positions():
    return list(range(6))


def build_resolution_lattice(d=3) -> ResolutionLattice:
    """Strata lattice of the resolved special fiber (cubic case only)."""
    if d != 3:
        raise ValueError("resolution lattice implemented only for degree 3")
    comps = COMPONENT_ORDER_D3
    masks = [_mask(c, 3) for c in comps]
    sparse_idx = (6, 7)

    # pairwise intersections: Y^S cap Y^S' = Y^{S u S'} whenever admissible
    cube_edges = []
    dashed_edges = []
    intersections = {}
    nodes = []
    for c in comps:
        nodes.append(StratumNode(tuple(sorted(c)), "component", 3,
                                 "FFE" if len({x % 3 for x in c}) == 3 and not is_sparse(_mask(c, 3), 3) else None))
    for i in range(8):
        for j in range(i + 1, 8):
            union = masks[i] | masks[j]
            size = bin(union).count("1")
            label = tuple(sorted(_items(union, 3)))
            if size == 4:
                cube_edges.append((i, j))
                intersections[frozenset((i, j))] = label
            elif size == 5:
                # nonempty only when one side is sparse
                if i in sparse_idx or j in sparse_idx:
                    dashed_edges.append((i, j))
                    intersections[frozenset((i, j))] = label
            elif size == 6 and i in sparse_idx and j in sparse_idx:
                intersections[frozenset((i, j))] = label

    # double-point strata nodes: 12 four-element, 6 five-element, one core
    for size, kind in ((4, "double"), (5, "double")):
        for key, label in sorted(intersections.items(), key=lambda kv: kv[1]):
            if len(label) == size:
                fam = None
                if size == 4 and any(k in sparse_idx for k in key):
                    fam = "F"       # hosts the plane-family realizations
                elif size == 5:
                    fam = "E"       # hosts the exceptional-family realizations
                if not any(n.label == label for n in nodes):
                    nodes.append(StratumNode(label, kind, 6 - size, fam))
    nodes.append(StratumNode((0, 1, 2, 3, 4, 5), "core", 0, "H"))

    # nonempty quadruple intersections: both sparse + two consecutive faces
    quadruples = []
    for i in range(6):
        quadruples.append(frozenset({6, 7, i, (i + 1) % 6}))

    frob = {}
    for c in comps:
        img = tuple(sorted((x - 1) % 6 for x in c))
        frob[tuple(sorted(c))] = img

    building = DualBuilding(tuple(tuple(sorted(c)) for c in comps),
                            tuple(cube_edges), tuple(dashed_edges), (6, 7))
    return ResolutionLattice(3, building, tuple(nodes), intersections,
                             tuple(quadruples), frob)


# ---------------------------------------------------------------------------
# emission


def lattice_to_dot(lat: ResolutionLattice) -> str:
    lines = ["graph dual_building {"]
    for i, v in enumerate(lat.building.vertices):
        shape = "doublecircle" if i in lat.building.core_pair else "circle"
        lines.append('  v%d [label="%s", shape=%s];'
                     % (i, "".join(map(str, v)), shape))
    for a, b in lat.building.cube_edges:
        lines.append("  v%d -- v%d;" % (a, b))
    for a, b in lat.building.dashed_edges:
        lines.append("  v%d -- v%d [style=dashed];" % (a, b))
    a, b = lat.building.core_pair
    lines.append('  v%d -- v%d [style=dotted, label="core"];' % (a, b))
    lines.append("}")
    return "\n".join(lines)


def lattice_to_json(lat: ResolutionLattice) -> str:
    return json.dumps({
        "d": lat.d,
        "vertices": [list(v) for v in lat.building.vertices],
        "cube_edges": [list(e) for e in lat.building.cube_edges],
        "dashed_edges": [list(e) for e in lat.building.dashed_edges],
        "core_pair": list(lat.building.core_pair),
        "nodes": [{"label": list(n.label), "kind": n.kind, "dim": n.dim,
                   "cycle_family": n.cycle_family} for n in lat.nodes],
        "intersections": sorted([sorted(k), list(v)]
                                for k, v in lat.intersections.items()),
        "nonempty_quadruples": sorted(sorted(q) for q in lat.quadruples),
        "frobenius_action": {"".join(map(str, k)): list(v)
                             for k, v in lat.frobenius_action.items()},
    }, indent=2, sort_keys=True)
