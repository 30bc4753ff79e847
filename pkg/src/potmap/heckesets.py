"""Finite leveled index sets with degeneracy maps and Hecke operators.

Ideals are abstract factored labels: only norms and divisibility enter any
formula here, so no number-field arithmetic is performed.  Levels drop along
surjective degeneracy maps whose fibers divide the degree constant mu, and
functions on the sets push forward with the normalization mu/|fiber|.

Convention note: the degree constant mu(n, m) for nested levels n inside m
multiplies Nm(n/m) by (1 + 1/Nm q) over the primes dividing n/m that do not
divide m.  The variant reading "primes dividing m but not n" always yields an
empty product for nested levels and is incompatible with pushforward-pullback
being multiplication by mu; it is rejected here by design.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from random import Random


class ContainmentError(ValueError):
    pass


class BaseSetMismatch(ValueError):
    pass


@dataclass(frozen=True)
class IdealLabel:
    """Factored ideal: mapping prime label -> (norm, exponent)."""

    primes: tuple  # sorted tuple of (label, norm, exponent)

    @classmethod
    def make(cls, factors=()):
        items = []
        for label, norm, exp in factors:
            if norm < 2:
                raise ValueError("prime norm must be >= 2")
            if exp < 1:
                raise ValueError("exponents must be >= 1")
            items.append((str(label), int(norm), int(exp)))
        items.sort()
        labels = [it[0] for it in items]
        if len(set(labels)) != len(labels):
            raise ValueError("repeated prime label")
        return cls(tuple(items))

    @classmethod
    def unit(cls):
        return cls(())

    def exponent(self, label):
        for lab, _, e in self.primes:
            if lab == label:
                return e
        return 0

    def norm_of(self, label):
        for lab, nm, _ in self.primes:
            if lab == label:
                return nm
        raise KeyError(label)

    def norm(self):
        n = 1
        for _, nm, e in self.primes:
            n *= nm ** e
        return n

    def contains(self, other: "IdealLabel") -> bool:
        """self <= other as ideals means exponents of self >= other primewise.

        `n.is_inside(m)` reads "n is contained in m"."""
        return other.is_inside(self)

    def is_inside(self, other: "IdealLabel") -> bool:
        mine = {lab: e for lab, _, e in self.primes}
        for lab, _, e in other.primes:
            if mine.get(lab, 0) < e:
                return False
        return True

    def __mul__(self, other):
        acc = {}
        for lab, nm, e in self.primes + other.primes:
            if lab in acc:
                if acc[lab][0] != nm:
                    raise ValueError("inconsistent norms for prime %r" % lab)
                acc[lab] = (nm, acc[lab][1] + e)
            else:
                acc[lab] = (nm, e)
        return IdealLabel.make([(lab, nm, e) for lab, (nm, e) in acc.items()])

    def divide_by(self, other: "IdealLabel") -> "IdealLabel":
        if not self.is_inside(other):
            raise ContainmentError("division not exact")
        acc = {lab: [nm, e] for lab, nm, e in self.primes}
        for lab, _, e in other.primes:
            acc[lab][1] -= e
        return IdealLabel.make([(lab, nm, e) for lab, (nm, e) in acc.items() if e])


def mu(n: IdealLabel, m: IdealLabel) -> int:
    """Degree constant for the level drop from n to m (n inside m)."""
    if not n.is_inside(m):
        raise ContainmentError("mu(n, m) requires n contained in m")
    quot = n.divide_by(m)
    value = Fraction(quot.norm())
    for lab, nm, _ in quot.primes:
        if m.exponent(lab) == 0:
            value *= Fraction(nm + 1, nm)
    if value.denominator != 1:
        raise ArithmeticError("mu is not integral; inconsistent ideal data")
    return int(value)


def divisors_between(n: IdealLabel, m: IdealLabel):
    """All ideals containing n/m, enumerated by exponent vectors."""
    if not n.is_inside(m):
        raise ContainmentError("divisors_between(n, m) requires n contained in m")
    quot = n.divide_by(m)
    out = [IdealLabel.unit()]
    for lab, nm, e in quot.primes:
        nxt = []
        for d in out:
            for k in range(e + 1):
                nxt.append(d if k == 0 else d * IdealLabel.make([(lab, nm, k)]))
        out = nxt
    return sorted(set(out), key=lambda d: d.primes)


@dataclass(frozen=True)
class HeckeSet:
    """Finite ordered index set at a level, with an optional group action."""

    level: IdealLabel
    elements: tuple
    group_action: tuple | None = None  # tuple of permutations (tuples), a group

    def __post_init__(self):
        if len(set(self.elements)) != len(self.elements):
            raise ValueError("element identifiers must be unique")
        if self.group_action is not None:
            n = len(self.elements)
            perms = set(self.group_action)
            ident = tuple(range(n))
            if ident not in perms:
                raise ValueError("group action must contain the identity")
            for a in perms:
                if sorted(a) != list(range(n)):
                    raise ValueError("group action entries must be permutations")
                for b in perms:
                    comp = tuple(a[b[i]] for i in range(n))
                    if comp not in perms:
                        raise ValueError("group action not closed under composition")

    @property
    def size(self):
        return len(self.elements)

    def index(self, x):
        return self.elements.index(x)


@dataclass(frozen=True)
class GammaVector:
    """Function on a HeckeSet with values in Z (reduce mod p^nu externally)."""

    base: HeckeSet
    values: tuple

    def __post_init__(self):
        if len(self.values) != self.base.size:
            raise ValueError("value list does not cover the base set")

    @classmethod
    def constant(cls, base, c=1):
        return cls(base, (c,) * base.size)

    @classmethod
    def indicator(cls, base, x):
        i = base.index(x)
        return cls(base, tuple(1 if j == i else 0 for j in range(base.size)))

    def __add__(self, other):
        if other.base is not self.base and other.base != self.base:
            raise BaseSetMismatch("vectors on different sets")
        return GammaVector(self.base, tuple(a + b for a, b in zip(self.values, other.values)))

    def scale(self, s):
        return GammaVector(self.base, tuple(s * v for v in self.values))

    def dot(self, other):
        if other.base != self.base:
            raise BaseSetMismatch("pairing of vectors on different sets")
        return sum(a * b for a, b in zip(self.values, other.values))


@dataclass(frozen=True)
class DegeneracyMap:
    """Surjective level-lowering map with a pushforward normalization.

    The normalization constant defaults to mu(source.level, target.level) and
    may be overridden (e.g. by a class-group order); every fiber size must
    divide it so normalized pushforwards stay integral.
    """

    source: HeckeSet
    target: HeckeSet
    assignment: tuple  # assignment[i] = index in target of image of source[i]
    divisor: IdealLabel = field(default_factory=IdealLabel.unit)
    normalization: int | None = None

    def __post_init__(self):
        if len(self.assignment) != self.source.size:
            raise ValueError("assignment must be total on the source")
        if set(self.assignment) != set(range(self.target.size)):
            raise ValueError("degeneracy map must be surjective")
        c = self.constant
        for t in range(self.target.size):
            size = self.fiber_size(t)
            if c % size:
                raise ValueError(
                    "fiber size %d does not divide the normalization %d" % (size, c))

    @property
    def constant(self) -> int:
        if self.normalization is not None:
            return self.normalization
        return mu(self.source.level, self.target.level)

    def fiber(self, t_index):
        return tuple(i for i, t in enumerate(self.assignment) if t == t_index)

    def fiber_size(self, t_index):
        return sum(1 for t in self.assignment if t == t_index)


def pullback(f: GammaVector, d: DegeneracyMap) -> GammaVector:
    if f.base != d.target:
        raise BaseSetMismatch("pullback needs a function on the target set")
    return GammaVector(d.source, tuple(f.values[d.assignment[i]]
                                       for i in range(d.source.size)))


def pushforward(f: GammaVector, d: DegeneracyMap) -> GammaVector:
    if f.base != d.source:
        raise BaseSetMismatch("pushforward needs a function on the source set")
    c = d.constant
    out = []
    for t in range(d.target.size):
        fib = d.fiber(t)
        s = sum(f.values[i] for i in fib)
        out.append(c // len(fib) * s)
    return GammaVector(d.target, tuple(out))


def hecke_operator(symbol: str, level: HeckeSet, correspondence=None,
                   group_element=None):
    """Matrix of a Hecke operator on functions on `level`.

    symbol "T": needs `correspondence` = (down, shifted), two degeneracy maps
    from a common auxiliary set onto `level`; acts as pushforward along the
    first after pullback along the second.  symbol "S": permutation matrix of
    `group_element` from the level's group action (identity if omitted).
    """
    n = level.size
    if symbol == "S":
        if group_element is None:
            return [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        perm = group_element
        return [[1 if perm[j] == i else 0 for j in range(n)] for i in range(n)]
    if symbol != "T":
        raise ValueError("unknown Hecke symbol %r" % symbol)
    if correspondence is None:
        raise ValueError("the T operator needs an auxiliary correspondence")
    down, shifted = correspondence
    if down.target != level or shifted.target != level:
        raise ValueError("correspondence legs must land on the given level set")
    if down.source != shifted.source:
        raise ValueError("correspondence legs must share the auxiliary set")
    cols = []
    for j in range(n):
        f = GammaVector(level, tuple(1 if k == j else 0 for k in range(n)))
        img = pushforward(pullback(f, shifted), down)
        cols.append(img.values)
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def reciprocity_rhs(theta_image: GammaVector, vartheta, phi: GammaVector,
                    ell: int, unit_count: int) -> int:
    """Scalar (ell+1) * unit_count * sum_x theta_image(x) phi(vartheta(x)).

    `vartheta` maps the flat set into phi's base set (a DegeneracyMap or a
    plain index assignment).  The value is computed along two routes (direct
    sum, and pairing phi against the plain pushforward of theta_image) and
    cross-checked.
    """
    if isinstance(vartheta, DegeneracyMap):
        if vartheta.source != theta_image.base or vartheta.target != phi.base:
            raise BaseSetMismatch("vartheta must map the flat set into phi's set")
        assignment = vartheta.assignment
    else:
        assignment = tuple(vartheta)
        if len(assignment) != theta_image.base.size:
            raise BaseSetMismatch("assignment must be total on the flat set")
    scale = (ell + 1) * unit_count
    direct = scale * sum(theta_image.values[i] * phi.values[assignment[i]]
                         for i in range(theta_image.base.size))
    counts = [0] * phi.base.size
    for i, t in enumerate(assignment):
        counts[t] += theta_image.values[i]
    via_push = scale * sum(c * v for c, v in zip(counts, phi.values))
    if direct != via_push:
        raise ArithmeticError("reciprocity evaluation routes disagree")
    return direct


# ---------------------------------------------------------------------------
# synthetic instances


def random_tower(seed: int, max_primes: int = 2, max_size: int = 6):
    """Seeded random degeneracy map S_{Nq} -> S_N with fibers dividing mu."""
    rng = Random(seed)
    norms = [2, 3, 5, 7, 11, 13]
    base_factors = []
    for k in range(rng.randrange(0, max_primes)):
        base_factors.append(("p%d" % k, rng.choice(norms), rng.randrange(1, 3)))
    m_level = IdealLabel.make(base_factors)
    qnorm = rng.choice(norms)
    q = IdealLabel.make([("q", qnorm, 1)])
    n_level = m_level * q
    deg = mu(n_level, m_level)  # = qnorm + 1
    target_size = rng.randrange(1, max_size)
    target = HeckeSet(m_level, tuple("t%d" % i for i in range(target_size)))
    divs = [d for d in range(1, deg + 1) if deg % d == 0]
    assignment = []
    elements = []
    for t in range(target_size):
        fib = rng.choice(divs)
        for k in range(fib):
            assignment.append(t)
            elements.append("s%d_%d" % (t, k))
    source = HeckeSet(n_level, tuple(elements))
    return DegeneracyMap(source, target, tuple(assignment), divisor=q)


def product_tower(level: IdealLabel, drop: IdealLabel, n: int):
    """Tower S_N -> S_M with S_N = S_M x [mu] and the projection map.

    This is the unique in-scope shape forcing pushforward-pullback to act as
    the exact scalar mu on every function.
    """
    m_level = level
    n_level = level * drop
    deg = mu(n_level, m_level)
    target = HeckeSet(m_level, tuple("g%d" % i for i in range(n)))
    elements = tuple("g%d_%d" % (i, k) for i in range(n) for k in range(deg))
    assignment = tuple(i for i in range(n) for _ in range(deg))
    source = HeckeSet(n_level, elements)
    return DegeneracyMap(source, target, assignment, divisor=drop)


@dataclass(frozen=True)
class CubicIncidence:
    """Index data behind the 19-group intersection matrix.

    z_plus and z_minus index the two sparse-component cycle families, x6 the
    deepest stratum; delta_plus/delta_minus assign each x6 element its image
    index in z_plus/z_minus.  The Hecke incidence matrix T[g, g'] counts
    common preimages and must be symmetric.
    """

    ell: int
    z_plus: HeckeSet
    z_minus: HeckeSet
    x6: HeckeSet
    delta_plus: tuple
    delta_minus: tuple

    def __post_init__(self):
        m = self.x6.size
        if len(self.delta_plus) != m or len(self.delta_minus) != m:
            raise ValueError("delta assignments must be total on x6")
        if self.z_plus.size != self.z_minus.size:
            raise ValueError("the two sparse index sets must have equal size")
        T = self.t_matrix()
        for i in range(len(T)):
            for j in range(len(T)):
                if T[i][j] != T[j][i]:
                    raise ValueError("asymmetric Hecke incidence: T(g)/T(g') mismatch")

    @property
    def n(self):
        return self.z_plus.size

    @property
    def m(self):
        return self.x6.size

    def t_matrix(self):
        """T[g, g'] = #{h : delta_plus(h) = g, delta_minus(h) = g'}."""
        n = self.n
        T = [[0] * n for _ in range(n)]
        for h in range(self.m):
            T[self.delta_plus[h]][self.delta_minus[h]] += 1
        return T

    def pull_matrix(self, sign):
        """Matrix of the pullback along delta^{sign}: rows x6, cols z."""
        delta = self.delta_plus if sign == "+" else self.delta_minus
        return [[1 if delta[h] == g else 0 for g in range(self.n)]
                for h in range(self.m)]

    def t_size(self, sign, g):
        """|T(g)| with multiplicity: number of x6 points over g."""
        delta = self.delta_plus if sign == "+" else self.delta_minus
        return sum(1 for h in range(self.m) if delta[h] == g)


def cubic_product_incidence(ell: int, n: int,
                            level: IdealLabel | None = None) -> CubicIncidence:
    """The product incidence: x6 = z x [ell^3+1], both deltas the projection."""
    u = ell ** 3 + 1
    if level is None:
        level = IdealLabel.make([("r", 2, 1)])
    lam = IdealLabel.make([("l", ell ** 3, 1)])
    zp = HeckeSet(level, tuple("g%d" % i for i in range(n)))
    zm = HeckeSet(level, tuple("g%d'" % i for i in range(n)))
    x6 = HeckeSet(level * lam, tuple("h%d_%d" % (i, k)
                                     for i in range(n) for k in range(u)))
    proj = tuple(i for i in range(n) for _ in range(u))
    return CubicIncidence(ell, zp, zm, x6, proj, proj)


# ---------------------------------------------------------------------------
# JSON tower description


def tower_to_json(d: DegeneracyMap) -> str:
    def level_obj(lv):
        return [[lab, nm, e] for lab, nm, e in lv.primes]

    def set_obj(s):
        obj = {"level": level_obj(s.level), "elements": list(s.elements)}
        if s.group_action is not None:
            obj["group_action"] = [list(p) for p in s.group_action]
        return obj

    return json.dumps({
        "source": set_obj(d.source),
        "target": set_obj(d.target),
        "assignment": list(d.assignment),
        "divisor": level_obj(d.divisor),
        "normalization": d.normalization,
    }, indent=2, sort_keys=True)


def tower_from_json(text: str) -> DegeneracyMap:
    obj = json.loads(text)

    def parse_set(o):
        action = o.get("group_action")
        return HeckeSet(IdealLabel.make([tuple(x) for x in o["level"]]),
                        tuple(o["elements"]),
                        tuple(tuple(p) for p in action) if action else None)

    return DegeneracyMap(parse_set(obj["source"]), parse_set(obj["target"]),
                         tuple(obj["assignment"]),
                         IdealLabel.make([tuple(x) for x in obj["divisor"]]),
                         obj.get("normalization"))
