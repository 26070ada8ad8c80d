"""Finite permutation groups with enumerable elements and class machinery.

Groups come in four kinds: symmetric, alternating, generated (closure of
an explicit generator list), and direct products realized faithfully as
permutations on the disjoint union of the component domains.  Everything
is cached once and frozen; desk-scale exhaustive enumeration is the whole
point, so there is no Schreier-Sims machinery here.

The consequence-set engine computes the exact-depth product sets

    C_n(X, G) = { b_1 b_2 ... b_n : each b_i a conjugate of some x or
                  x^-1 with x in X }

working at conjugacy-class granularity: every layer is a union of classes,
and the product of a class K with a class-closed set L is the union of the
classes of rep(K) * l over l in L.  That keeps sweeps over A_6 in the
seconds range instead of minutes.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations as iter_permutations
from itertools import product as iter_product

from .errors import CapExceeded
from .perm import Permutation, conjugate, direct_sum, identity, is_even

DEFAULT_ELEMENT_CAP = 10**6


class FiniteGroup:
    """Immutable reference to a finite permutation group.

    Element order is canonical (identity first, then by support size,
    support, images), so first-found witnesses are reproducible.
    """

    def __init__(self, kind, degree, generators, name=None, components=None):
        self.kind = kind  # "symmetric" | "alternating" | "generated" | "product"
        self.degree = degree
        self.generators = tuple(generators)
        self.components = tuple(components) if components is not None else None
        self.name = name or self._default_name()
        self._elements = None
        self._element_set = None
        self._classes = None
        self._class_index = None

    # -- constructors ---------------------------------------------------

    @classmethod
    def symmetric(cls, m: int, name=None) -> "FiniteGroup":
        if m < 1:
            raise ValueError("symmetric degree must be >= 1")
        gens = []
        if m >= 2:
            gens.append(_transposition(m, 0, 1))
        if m >= 3:
            gens.append(Permutation(tuple(range(1, m)) + (0,)))
        return cls("symmetric", m, gens, name=name)

    @classmethod
    def alternating(cls, m: int, name=None) -> "FiniteGroup":
        if m < 1:
            raise ValueError("alternating degree must be >= 1")
        gens = []
        if m >= 3:
            gens.append(_cycle(m, (0, 1, 2)))
        if m >= 4:
            full = Permutation(tuple(range(1, m)) + (0,))  # (1 2 ... m)
            if m % 2 == 1:
                gens.append(full)
            else:
                gens.append(_cycle(m, tuple(range(1, m))))  # (2 3 ... m)
        return cls("alternating", m, gens, name=name)

    @classmethod
    def generated(cls, degree: int, generators, name=None) -> "FiniteGroup":
        gens = []
        for g in generators:
            g = Permutation(g)
            if len(g) != degree:
                raise ValueError(
                    f"generator degree {len(g)} does not match group degree {degree}"
                )
            gens.append(g)
        return cls("generated", degree, gens, name=name)

    @classmethod
    def direct_product(cls, groups, name=None) -> "FiniteGroup":
        groups = tuple(groups)
        if not groups:
            raise ValueError("direct product needs at least one component")
        degree = sum(g.degree for g in groups)
        gens = []
        for i, g in enumerate(groups):
            before = sum(h.degree for h in groups[:i])
            after = degree - before - g.degree
            for gen in g.generators:
                embedded = direct_sum(direct_sum(identity(before), gen), identity(after))
                gens.append(embedded)
        return cls("product", degree, gens, name=name, components=groups)

    def _default_name(self):
        if self.kind == "symmetric":
            return f"S{self.degree}"
        if self.kind == "alternating":
            return f"A{self.degree}"
        if self.kind == "product":
            return "x".join(c.name for c in self.components)
        return f"G{self.degree}<{len(self.generators)} gens>"

    def __repr__(self):
        return f"FiniteGroup({self.name}, kind={self.kind}, degree={self.degree})"

    # -- enumeration ------------------------------------------------------

    def identity(self) -> Permutation:
        return identity(self.degree)

    def order(self, cap: int = DEFAULT_ELEMENT_CAP) -> int:
        return len(self.elements(cap))

    def elements(self, cap: int = DEFAULT_ELEMENT_CAP) -> tuple[Permutation, ...]:
        """All elements in canonical order; raises CapExceeded past the cap."""
        if self._elements is None:
            els = self._enumerate(cap)
            self._elements = tuple(sorted(els, key=lambda p: p.sort_key()))
            self._element_set = frozenset(self._elements)
        elif len(self._elements) > cap:
            raise CapExceeded(
                f"{self.name} has {len(self._elements)} elements, past cap {cap}"
            )
        return self._elements

    def element_set(self, cap: int = DEFAULT_ELEMENT_CAP) -> frozenset:
        self.elements(cap)
        return self._element_set

    def _enumerate(self, cap):
        m = self.degree
        if self.kind == "symmetric":
            _check_factorial_cap(m, 1, cap, self.name)
            return [Permutation(p) for p in iter_permutations(range(m))]
        if self.kind == "alternating":
            _check_factorial_cap(m, 2, cap, self.name)
            return [
                Permutation(p)
                for p in iter_permutations(range(m))
                if is_even(Permutation(p))
            ]
        if self.kind == "product":
            out = []
            for combo in iter_product(*(c.elements(cap) for c in self.components)):
                x = combo[0]
                for part in combo[1:]:
                    x = direct_sum(x, part)
                out.append(x)
                if len(out) > cap:
                    raise CapExceeded(f"{self.name} enumeration passed cap {cap}")
            return out
        return _closure(self.generators, m, cap, self.name)

    def __contains__(self, x) -> bool:
        if not isinstance(x, Permutation) or len(x) != self.degree:
            return False
        return x in self.element_set()

    # -- conjugacy classes -------------------------------------------------

    def conjugacy_classes(self, cap: int = DEFAULT_ELEMENT_CAP):
        """Partition into classes; each is a frozenset, ordered by least rep."""
        if self._classes is None:
            els = self.elements(cap)
            gens = self.generators or (self.identity(),)
            index = {}
            classes = []
            for x in els:  # canonical order, so reps are canonical minima
                if x in index:
                    continue
                orbit = {x}
                frontier = [x]
                while frontier:
                    nxt = []
                    for y in frontier:
                        for g in gens:
                            z = conjugate(y, g)
                            if z not in orbit:
                                orbit.add(z)
                                nxt.append(z)
                    frontier = nxt
                ci = len(classes)
                classes.append(frozenset(orbit))
                for y in orbit:
                    index[y] = ci
            self._classes = tuple(classes)
            self._class_index = index
        return self._classes

    def class_of(self, x: Permutation, cap: int = DEFAULT_ELEMENT_CAP) -> frozenset:
        """Full conjugacy class {g^-1 x g : g in G}; raises if x outside G."""
        if x not in self:
            raise ValueError(f"{x!r} is not an element of {self.name}")
        classes = self.conjugacy_classes(cap)
        return classes[self._class_index[x]]

    def class_index_of(self, x: Permutation) -> int:
        self.conjugacy_classes()
        return self._class_index[x]

    def class_representative(self, index: int) -> Permutation:
        cls = self.conjugacy_classes()[index]
        return min(cls, key=lambda p: p.sort_key())

    # -- direct-product projections -----------------------------------------

    def component_offsets(self):
        if self.kind != "product":
            raise ValueError(f"{self.name} is not a direct product")
        offs = []
        pos = 0
        for c in self.components:
            offs.append(pos)
            pos += c.degree
        return offs

    def project(self, x: Permutation, block: int) -> Permutation:
        """Restriction of a product element to one component block."""
        offs = self.component_offsets()
        comp = self.components[block]
        off = offs[block]
        return Permutation(x[off + i] - off for i in range(comp.degree))


def _transposition(m, i, j):
    images = list(range(m))
    images[i], images[j] = images[j], images[i]
    return Permutation(images)


def _cycle(m, points):
    images = list(range(m))
    for k, p in enumerate(points):
        images[p] = points[(k + 1) % len(points)]
    return Permutation(images)


def _check_factorial_cap(m, divisor, cap, name):
    size = 1
    for k in range(2, m + 1):
        size *= k
        if size // divisor > cap:
            raise CapExceeded(f"{name} has more than {cap} elements")


def _closure(generators, degree, cap, name):
    start = identity(degree)
    seen = {start}
    frontier = [start]
    gens = [Permutation(g) for g in generators]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x * g
                if y not in seen:
                    seen.add(y)
                    if len(seen) > cap:
                        raise CapExceeded(
                            f"closure of {name} passed the element cap {cap}"
                        )
                    nxt.append(y)
        frontier = nxt
    return list(seen)


def cyclic(k: int, name=None) -> FiniteGroup:
    """Z/k realized as the rotation closure on k points."""
    if k < 1:
        raise ValueError("cyclic order must be >= 1")
    if k == 1:
        return FiniteGroup.generated(1, [], name=name or "Z1")
    gen = Permutation(tuple(range(1, k)) + (0,))
    return FiniteGroup.generated(k, [gen], name=name or f"Z{k}")


# --- consequence sets --------------------------------------------------------


@dataclass(frozen=True)
class ConsequenceSet:
    """Exact-depth n-fold product of conjugates of a base set (or inverses).

    ``layers[j-1]`` is the depth-j set; ``elements`` is the depth-n set.
    The cumulative union over depths 1..n is reported separately because
    exact depth surfaces parity artifacts that the union would hide.
    """

    group: FiniteGroup
    base: frozenset
    depth: int
    layers: tuple[frozenset, ...]

    @property
    def elements(self) -> frozenset:
        return self.layers[-1] if self.layers else frozenset()

    @property
    def layer_sizes(self) -> tuple[int, ...]:
        return tuple(len(l) for l in self.layers)

    @property
    def cumulative(self) -> frozenset:
        out = set()
        for l in self.layers:
            out |= l
        return frozenset(out)


def _letter_class_indices(G: FiniteGroup, X) -> tuple[int, ...]:
    """Class indices of the letter alphabet: conjugates of x or x^-1, x in X."""
    idx = set()
    for x in X:
        x = Permutation(x)
        if x not in G:
            raise ValueError(f"{x!r} is not an element of {G.name}")
        idx.add(G.class_index_of(x))
        idx.add(G.class_index_of(x.inverse()))
    return tuple(sorted(idx))


def iter_consequence_class_layers(G: FiniteGroup, X, cap: int = DEFAULT_ELEMENT_CAP):
    """Yield (depth, frozenset of class indices) for depths 1, 2, ...

    Stops once consecutive layers repeat with period two, after which no
    new class can ever appear (depth-n sets grow monotonically in steps
    of two and are bounded by the group).
    """
    letters = _letter_class_indices(G, X)
    if not letters:
        return
    classes = G.conjugacy_classes(cap)
    index = G._class_index
    reps = [G.class_representative(i) for i in letters]
    layer = frozenset(letters)
    prev = None  # layer two steps back
    depth = 0
    while True:
        depth += 1
        yield depth, layer
        nxt = set()
        for rep in reps:
            for ci in layer:
                for y in classes[ci]:
                    nxt.add(index[rep * y])
        nxt = frozenset(nxt)
        if sum(len(classes[ci]) for ci in nxt) > cap:
            raise CapExceeded(
                f"consequence layer at depth {depth + 1} passed the cap {cap}"
            )
        if prev is not None and nxt == prev:
            # period-two fixed point: layers now alternate forever
            yield depth + 1, nxt
            return
        prev = layer
        layer = nxt


def consequences(G: FiniteGroup, X, n: int, cap: int = DEFAULT_ELEMENT_CAP) -> ConsequenceSet:
    """Exact-depth consequence set C_n(X, G); C_n(empty, G) is empty.

    If the identity is a member of X the layers are cumulative (the
    identity letter pads shorter products up to depth n).
    """
    if n < 1:
        raise ValueError("depth must be >= 1")
    base = frozenset(Permutation(x) for x in X)
    classes = G.conjugacy_classes(cap)
    class_layers = []
    for depth, layer in iter_consequence_class_layers(G, base, cap):
        if depth > n:
            break
        # layers may stabilize before n: the generator stops early, so pad
        while len(class_layers) + 1 < depth:
            class_layers.append(class_layers[-2])
        class_layers.append(layer)
        if depth == n:
            break
    while base and len(class_layers) < n:
        # generator stopped early at a period-two fixed point
        class_layers.append(class_layers[-2])
    layers = tuple(
        frozenset().union(*(classes[ci] for ci in layer)) if layer else frozenset()
        for layer in class_layers
    )
    if not base:
        layers = tuple(frozenset() for _ in range(n))
    return ConsequenceSet(group=G, base=base, depth=n, layers=layers)


@dataclass(frozen=True)
class SeparationReport:
    """Verdict of the query "is Y disjoint from C_n(X, G)?".

    ``separated`` refers to the exact depth n; ``violated_depths`` lists
    every depth j <= n whose layer meets Y, so the cumulative verdict is
    ``not violated_depths``.  The witness is the canonically least element
    of the depth-n intersection when there is one.
    """

    separated: bool
    depth: int
    witness: Permutation | None
    violated_depths: tuple[int, ...]

    @property
    def verdict(self) -> str:
        return "separated" if self.separated else "violated"

    @property
    def cumulative_separated(self) -> bool:
        return not self.violated_depths


def is_n_separated(G: FiniteGroup, Y, X, n: int, cap: int = DEFAULT_ELEMENT_CAP) -> SeparationReport:
    """Check Y against the depth-n consequence set of X in G."""
    if n < 1:
        raise ValueError("depth must be >= 1")
    y_set = frozenset(Permutation(y) for y in Y)
    for y in y_set:
        if y not in G:
            raise ValueError(f"{y!r} is not an element of {G.name}")
    cons = consequences(G, X, n, cap)
    violated = tuple(
        j for j, layer in enumerate(cons.layers, start=1) if y_set & layer
    )
    hits = y_set & cons.elements
    witness = min(hits, key=lambda p: p.sort_key()) if hits else None
    return SeparationReport(
        separated=not hits,
        depth=n,
        witness=witness,
        violated_depths=violated,
    )


# --- quotients ---------------------------------------------------------------


def quotient(G: FiniteGroup, N, cap: int = DEFAULT_ELEMENT_CAP):
    """Quotient G/N realized by the right coset action, plus the quotient map.

    N must be a normal subgroup given as an element set.  The returned
    group is a generated permutation group on the coset space, and the map
    is a dict sending each element of G to its image permutation.
    """
    n_set = frozenset(Permutation(x) for x in N)
    els = G.elements(cap)
    if G.identity() not in n_set or not n_set <= G.element_set():
        raise ValueError("N is not a subgroup of G containing the identity")
    for x in n_set:
        if x.inverse() not in n_set:
            raise ValueError("N is not closed under inverses")
        for y in n_set:
            if x * y not in n_set:
                raise ValueError("N is not closed under products")
        for g in G.generators:
            if conjugate(x, g) not in n_set:
                raise ValueError("N is not normal in G")
    cosets = []
    coset_of = {}
    for x in els:
        if x in coset_of:
            continue
        coset = frozenset(y * x for y in n_set)
        ci = len(cosets)
        cosets.append(coset)
        for y in coset:
            coset_of[y] = ci
    k = len(cosets)
    reps = [min(c, key=lambda p: p.sort_key()) for c in cosets]
    qmap = {}
    for x in els:
        images = tuple(coset_of[reps[i] * x] for i in range(k))
        qmap[x] = Permutation(images)
    gens = [qmap[g] for g in G.generators]
    Q = FiniteGroup.generated(k, gens, name=f"{G.name}/N")
    return Q, qmap
