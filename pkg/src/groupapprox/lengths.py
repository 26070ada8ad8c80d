"""Invariant length functions as first-class objects.

A length function on a finite group assigns each element an exact
rational in [0, 1] such that the identity gets 0, products are
subadditive, and conjugate elements get equal values.  Three kinds are
supported: normalized Hamming, the conjugation-closed Cayley-graph
construction (distance from the identity over the alphabet of conjugates
of a base set, scaled by 1/n and clamped at 1), and explicit tables.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .groups import DEFAULT_ELEMENT_CAP, FiniteGroup, _letter_class_indices
from .perm import Permutation, hamming_length


class LengthFunction:
    def __init__(self, group: FiniteGroup, kind: str, values=None, params=None):
        self.group = group
        self.kind = kind  # "hamming" | "cayley-conjugation" | "table"
        self._values = dict(values) if values is not None else None
        self.params = params or {}

    def __call__(self, h: Permutation) -> Fraction:
        h = Permutation(h)
        if self._values is not None:
            try:
                return self._values[h]
            except KeyError:
                raise ValueError(f"{h!r} is not in the domain of this length function")
        if len(h) != self.group.degree:
            raise ValueError(f"{h!r} does not live on {self.group.name}")
        return hamming_length(h)

    def table(self) -> dict:
        """Element -> value map over the whole carrier."""
        if self._values is not None:
            return dict(self._values)
        return {x: hamming_length(x) for x in self.group.elements()}

    def __repr__(self):
        return f"LengthFunction({self.kind} on {self.group.name})"


def hamming(group: FiniteGroup) -> LengthFunction:
    return LengthFunction(group, "hamming")


def from_table(group: FiniteGroup, values, cap: int = DEFAULT_ELEMENT_CAP) -> LengthFunction:
    """Explicit table; must cover the whole carrier with rationals >= 0."""
    table = {}
    for x, v in dict(values).items():
        table[Permutation(x)] = Fraction(v)
    missing = group.element_set(cap) - table.keys()
    if missing:
        raise ValueError(f"table misses {len(missing)} elements of {group.name}")
    return LengthFunction(group, "table", values=table)


def cayley_conjugation_length(
    G: FiniteGroup, X, n: int, cap: int = DEFAULT_ELEMENT_CAP
) -> LengthFunction:
    """Distance-based length: min(d(1, h)/n, 1) over the conjugate alphabet.

    The alphabet is every conjugate of an element of X or of an inverse,
    so it is closed under conjugation and the resulting function is
    invariant by construction.  Unreachable elements sit at the clamp
    value 1.  Elements of X themselves get 1/n (they are single letters),
    and anything n-separated from X gets 1.
    """
    if n < 1:
        raise ValueError("scale must be >= 1")
    base = frozenset(Permutation(x) for x in X)
    letter_classes = _letter_class_indices(G, base)
    classes = G.conjugacy_classes(cap)
    alphabet = []
    for ci in letter_classes:
        alphabet.extend(classes[ci])
    start = G.identity()
    dist = {start: 0}
    frontier = [start]
    d = 0
    while frontier:
        d += 1
        nxt = []
        for h in frontier:
            for a in alphabet:
                t = h * a
                if t not in dist:
                    dist[t] = d
                    nxt.append(t)
        frontier = nxt
    values = {}
    for h in G.elements(cap):
        if h in dist:
            values[h] = min(Fraction(dist[h], n), Fraction(1))
        else:
            values[h] = Fraction(1)
    return LengthFunction(
        G, "cayley-conjugation", values=values, params={"base": base, "scale": n}
    )


@dataclass(frozen=True)
class AxiomViolation:
    axiom: str  # "identity" | "nonnegative" | "subadditive" | "invariant"
    witness: tuple
    detail: str


@dataclass(frozen=True)
class AxiomReport:
    valid: bool
    violations: tuple[AxiomViolation, ...]
    pairs_checked: int


def verify_axioms(
    ell: LengthFunction, cap: int = DEFAULT_ELEMENT_CAP, max_violations: int = 20
) -> AxiomReport:
    """Exhaustively check the three length-function axioms on the carrier.

    Checks ||1|| == 0, values >= 0, subadditivity over all ordered pairs,
    and conjugation invariance over all ordered pairs.  Collects at most
    max_violations witnesses per axiom but counts every failure toward
    the verdict.
    """
    G = ell.group
    els = G.elements(cap)
    values = {x: ell(x) for x in els}
    violations = []
    total = 0
    per_axiom = {}

    def add(axiom, witness, detail):
        nonlocal total
        total += 1
        seen = per_axiom.get(axiom, 0)
        if seen < max_violations:
            per_axiom[axiom] = seen + 1
            violations.append(AxiomViolation(axiom, witness, detail))

    e = G.identity()
    if values[e] != 0:
        add("identity", (e,), f"||1|| = {values[e]} != 0")
    for x, v in values.items():
        if v < 0:
            add("nonnegative", (x,), f"||{x!r}|| = {v} < 0")
    pairs = 0
    for g in els:
        vg = values[g]
        for h in els:
            pairs += 1
            if values[g * h] > vg + values[h]:
                add(
                    "subadditive",
                    (g, h),
                    f"||gh|| = {values[g * h]} > {vg} + {values[h]}",
                )
    for g in els:
        vg = values[g]
        for h in els:
            pairs += 1
            c = (h.inverse() * g) * h
            if values[c] != vg:
                add(
                    "invariant",
                    (g, h),
                    f"||h^-1 g h|| = {values[c]} != {vg}",
                )
    return AxiomReport(valid=total == 0, violations=tuple(violations), pairs_checked=pairs)


def ball(ell: LengthFunction, radius, cap: int = DEFAULT_ELEMENT_CAP) -> frozenset:
    """Open ball {h : ||h|| < radius} in the carrier."""
    r = Fraction(radius)
    return frozenset(h for h in ell.group.elements(cap) if ell(h) < r)
