"""Almost-homomorphism windows, their certificates, and instance searches.

A window is a finite set of reduced free words containing the identity,
together with its partial multiplication table (the triples g, h, gh that
all lie in the window).  A certificate pins a map from the window into a
finite permutation group and one of two acceptance modes:

* consequence mode: the images of the nontrivial words must be
  n-separated from the defect set {phi(g) phi(h) phi(gh)^-1};
* metric mode: image lengths must clear a floor alpha while every defect
  stays strictly below epsilon, for a chosen invariant length function.

Searches enumerate generator assignments into catalog groups in canonical
order (so "first found" is reproducible), with the budget counted in
candidate assignments, never wall time.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iter_product

from .errors import BudgetExceeded, ParseError
from .groups import FiniteGroup, SeparationReport, is_n_separated
from .lengths import LengthFunction
from .perm import (
    Permutation,
    cycle_string,
    direct_sum,
    embed_sym_in_alt,
    hamming_length,
    is_even,
)
from .words import (
    Word,
    concat,
    conjugate_word,
    evaluate_word,
    invert_word,
    max_symbol,
    parse_word,
    reduce_word,
)

DEFAULT_SEARCH_BUDGET = 10**6


@dataclass(frozen=True)
class Window:
    """Finite word set with its partial multiplication table."""

    names: tuple[str, ...]
    words: tuple[Word, ...]

    def __post_init__(self):
        if () not in self.words:
            raise ValueError("a window must contain the identity word")
        if len(set(self.words)) != len(self.words):
            raise ValueError("window words must be distinct")
        for w in self.words:
            if w != reduce_word(w):
                raise ValueError(f"window word {w} is not freely reduced")
            if max_symbol(w) > len(self.names):
                raise ValueError(f"word {w} uses symbols beyond the generator list")

    @property
    def identity_index(self) -> int:
        return self.words.index(())

    def products(self) -> tuple[tuple[int, int, int], ...]:
        """Triples (i, j, k) with words[i] * words[j] reducing to words[k]."""
        index = {w: i for i, w in enumerate(self.words)}
        out = []
        for i, a in enumerate(self.words):
            for j, b in enumerate(self.words):
                k = index.get(concat(a, b))
                if k is not None:
                    out.append((i, j, k))
        return tuple(out)


def window_from_texts(names, texts) -> Window:
    names = tuple(names)
    return Window(names, tuple(parse_word(t, names) for t in texts))


@dataclass(frozen=True)
class ConsequenceMode:
    depth: int


@dataclass(frozen=True)
class MetricMode:
    length: LengthFunction
    alpha: tuple  # Fractions aligned with window.words
    epsilon: Fraction


@dataclass(frozen=True)
class Certificate:
    """A window map plus everything needed to re-verify the verdict."""

    window: Window
    target: FiniteGroup
    images: tuple  # Permutations aligned with window.words
    mode: object  # ConsequenceMode | MetricMode

    def __post_init__(self):
        if len(self.images) != len(self.window.words):
            raise ValueError("one image per window word is required")
        for x in self.images:
            if Permutation(x) not in self.target:
                raise ValueError(f"image {x!r} lies outside {self.target.name}")

    def defects(self) -> frozenset:
        """Multiplicativity failures phi(g) phi(h) phi(gh)^-1 over the table."""
        out = set()
        for i, j, k in self.window.products():
            out.add(self.images[i] * self.images[j] * self.images[k].inverse())
        return frozenset(out)


@dataclass(frozen=True)
class CheckResult:
    holds: bool
    reason: str
    separation: SeparationReport | None = None
    violations: tuple = ()


def check_consequence_instance(cert: Certificate) -> CheckResult:
    """Images of nontrivial words must avoid C_n of the defect set.

    Defect elements equal to the identity are kept in the base set; the
    consequence engine treats the identity letter as padding, which makes
    the depth-n set cumulative in that case.
    """
    if not isinstance(cert.mode, ConsequenceMode):
        raise ValueError("certificate is not in consequence mode")
    e = cert.images[cert.window.identity_index]
    if not e.is_identity():
        return CheckResult(holds=False, reason="identity word does not map to 1")
    targets = frozenset(
        img
        for w, img in zip(cert.window.words, cert.images)
        if w != ()
    )
    sep = is_n_separated(cert.target, targets, cert.defects(), cert.mode.depth)
    reason = "separated from defect consequences" if sep.separated else (
        f"image {cycle_string(sep.witness)} is a depth-{cert.mode.depth} defect consequence"
    )
    return CheckResult(holds=sep.separated, reason=reason, separation=sep)


def check_metric_instance(cert: Certificate) -> CheckResult:
    """Image lengths must clear alpha; defect lengths must stay below epsilon."""
    mode = cert.mode
    if not isinstance(mode, MetricMode):
        raise ValueError("certificate is not in metric mode")
    if len(mode.alpha) != len(cert.window.words):
        raise ValueError("alpha must assign a floor to every window word")
    ell = mode.length
    if ell.group is not cert.target and ell.group.element_set() != cert.target.element_set():
        raise ValueError("length function lives on a different group")
    idx = cert.window.identity_index
    if Fraction(mode.alpha[idx]) != 0:
        raise ValueError("alpha must vanish on the identity word")
    for i, a in enumerate(mode.alpha):
        if i != idx and Fraction(a) <= 0:
            raise ValueError("alpha must be positive on nontrivial words")
    e = cert.images[idx]
    if not e.is_identity():
        return CheckResult(holds=False, reason="identity word does not map to 1")
    violations = []
    for w, img, a in zip(cert.window.words, cert.images, mode.alpha):
        if ell(img) < Fraction(a):
            violations.append(("floor", w, img))
    for d in sorted(cert.defects(), key=lambda p: p.sort_key()):
        if not ell(d) < mode.epsilon:
            violations.append(("defect", None, d))
    if violations:
        return CheckResult(
            holds=False,
            reason="floor or defect constraint failed",
            violations=tuple(violations),
        )
    return CheckResult(holds=True, reason="floors met, defects small")


# --- presentations -----------------------------------------------------------


@dataclass(frozen=True)
class Presentation:
    """Free generators, relators, and the declared test word sets.

    ``inside`` words are asserted by the caller to be consequences of the
    relators (products of their conjugates); ``outside`` words are
    asserted not to be.  ``verify_inside_declarations`` offers a bounded
    best-effort check of the first assertion.
    """

    generators: tuple[str, ...]
    relators: tuple[Word, ...]
    inside: tuple[Word, ...]
    outside: tuple[Word, ...]


def parse_presentation(text: str, source=None) -> Presentation:
    generators = None
    relators, inside, outside = [], [], []
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        keyword, _, rest = line.partition(" ")
        if keyword == "generators":
            if generators is not None:
                raise ParseError("duplicate generators line", line=ln, source=source)
            generators = tuple(rest.split())
            if not generators:
                raise ParseError("empty generator list", line=ln, source=source)
            if len(set(generators)) != len(generators):
                raise ParseError("repeated generator name", line=ln, source=source)
        elif keyword in ("relator", "inside", "outside"):
            if generators is None:
                raise ParseError(
                    "generators must be declared before words", line=ln, source=source
                )
            word = parse_word(rest, generators, line=ln, source=source)
            {"relator": relators, "inside": inside, "outside": outside}[keyword].append(word)
        else:
            raise ParseError(f"unknown keyword {keyword!r}", line=ln, source=source)
    if generators is None:
        raise ParseError("missing generators line", line=1, source=source)
    return Presentation(
        generators=generators,
        relators=tuple(relators),
        inside=tuple(inside),
        outside=tuple(outside),
    )


def verify_inside_declarations(
    p: Presentation, max_factors: int = 3, conjugator_length: int = 2
) -> dict:
    """Bounded rewriting check that inside words are relator consequences.

    Returns word -> True when the word appears as a product of at most
    max_factors conjugates of relators (conjugators up to the given
    length), word -> None when the bounded search is inconclusive.
    """
    rank = len(p.generators)
    conjugators = [()]
    frontier = [()]
    for _ in range(conjugator_length):
        nxt = []
        for w in frontier:
            for s in range(1, rank + 1):
                for signed in (s, -s):
                    ext = reduce_word(w + (signed,))
                    if len(ext) == len(w) + 1:
                        conjugators.append(ext)
                        nxt.append(ext)
        frontier = nxt
    letters = set()
    for r in p.relators:
        for w in conjugators:
            letters.add(conjugate_word(r, w))
            letters.add(conjugate_word(invert_word(r), w))
    reachable = {()}
    layer = {()}
    for _ in range(max_factors):
        nxt = set()
        for u in layer:
            for v in letters:
                nxt.add(concat(u, v))
        layer = nxt - reachable
        reachable |= nxt
    return {w: (True if w in reachable else None) for w in p.inside}


# --- searches ----------------------------------------------------------------


@dataclass(frozen=True)
class SearchStats:
    assignments: int
    per_group: tuple[tuple[str, int], ...]


@dataclass(frozen=True)
class FoundHomomorphism:
    group: FiniteGroup
    images: tuple  # generator images, aligned with presentation generators
    separation: SeparationReport
    stats: SearchStats


@dataclass(frozen=True)
class Exhausted:
    stats: SearchStats


def _tuple_is_conjugacy_canonical(images, H) -> bool:
    for g in H.elements():
        conj = tuple(
            (g.inverse() * x) * g for x in images
        )
        if tuple(p.sort_key() for p in conj) < tuple(p.sort_key() for p in images):
            return False
    return True


def search_separating_hom(
    p: Presentation,
    n: int,
    catalog,
    budget: int = DEFAULT_SEARCH_BUDGET,
    prune_conjugates: bool = False,
):
    """Scan generator assignments for a map separating outside from inside.

    Assignments enumerate lexicographically over canonical element order,
    group by group in catalog order; every assignment extends to a
    homomorphism of the free group, so only the separation verdict is
    checked.  Raises BudgetExceeded when the assignment budget runs out
    before the space is exhausted.
    """
    rank = len(p.generators)
    count = 0
    per_group = []
    for H in catalog:
        group_count = 0
        els = H.elements()
        for assignment in iter_product(els, repeat=rank):
            count += 1
            group_count += 1
            if count > budget:
                raise BudgetExceeded(
                    f"assignment budget {budget} exhausted",
                    stats={"assignments": count - 1, "group": H.name},
                )
            if prune_conjugates and not _tuple_is_conjugacy_canonical(assignment, H):
                continue
            y_images = frozenset(
                evaluate_word(w, assignment, H.degree) for w in p.outside
            )
            phi_images = frozenset(
                evaluate_word(w, assignment, H.degree) for w in p.inside
            )
            sep = is_n_separated(H, y_images, phi_images, n)
            if sep.separated:
                per_group.append((H.name, group_count))
                return FoundHomomorphism(
                    group=H,
                    images=tuple(assignment),
                    separation=sep,
                    stats=SearchStats(assignments=count, per_group=tuple(per_group)),
                )
        per_group.append((H.name, group_count))
    return Exhausted(stats=SearchStats(assignments=count, per_group=tuple(per_group)))


@dataclass(frozen=True)
class SoficCertificate:
    """Witness that one outside word can be made long while inside words stay short.

    ``images`` are even permutations of the stated degree (symmetric-group
    candidates are doubled into the alternating group first).  The
    amplification exponent never needs materializing: coordinatewise
    powers scale lengths by 1 - (1-L)^r exactly.
    """

    group_degree: int
    images: tuple  # generator images, even permutations
    amplification: int
    epsilon: Fraction
    outside_word: Word
    inside_words: tuple
    raw_outside_length: Fraction
    amplified_outside_length: Fraction
    amplified_inside_lengths: tuple
    stats: SearchStats
    embedded: bool


def amplification_exponent(raw_length: Fraction) -> int:
    """Smallest r with (1 - raw)^r <= 1/2; r = 1 when raw is already >= 1/2."""
    raw = Fraction(raw_length)
    if not 0 < raw <= 1:
        raise ValueError("raw length must be in (0, 1]")
    if raw >= Fraction(1, 2):
        return 1
    r = 1
    rest = 1 - raw
    acc = rest
    while acc > Fraction(1, 2):
        acc *= rest
        r += 1
    return r


def search_sofic_instance(
    p: Presentation,
    epsilon,
    catalog,
    budget: int = DEFAULT_SEARCH_BUDGET,
):
    """Find a map into an alternating group with the outside word long.

    Requires exactly one outside word.  Candidates whose raw outside
    length is at least 1/2 are taken as they stand; shorter nonzero ones
    are amplified coordinatewise until they clear 1/2, provided every
    inside word still lands strictly below epsilon after the same
    amplification.
    """
    epsilon = Fraction(epsilon)
    if len(p.outside) != 1:
        raise ValueError("sofic search needs exactly one outside word")
    y_word = p.outside[0]
    rank = len(p.generators)
    count = 0
    per_group = []
    for H in catalog:
        if H.kind not in ("symmetric", "alternating"):
            raise ValueError(
                f"sofic search catalogs hold symmetric or alternating groups, not {H.kind}"
            )
        group_count = 0
        els = H.elements()
        embed = H.kind == "symmetric"
        for assignment in iter_product(els, repeat=rank):
            count += 1
            group_count += 1
            if count > budget:
                raise BudgetExceeded(
                    f"assignment budget {budget} exhausted",
                    stats={"assignments": count - 1, "group": H.name},
                )
            if embed:
                images = tuple(embed_sym_in_alt(x) for x in assignment)
                degree = 2 * H.degree
            else:
                images = tuple(assignment)
                degree = H.degree
            raw = hamming_length(evaluate_word(y_word, images, degree))
            if raw == 0:
                continue
            r = amplification_exponent(raw)
            inside_raw = [
                hamming_length(evaluate_word(w, images, degree)) for w in p.inside
            ]
            inside_amp = [1 - (1 - L) ** r for L in inside_raw]
            if all(L < epsilon for L in inside_amp):
                per_group.append((H.name, group_count))
                return SoficCertificate(
                    group_degree=degree,
                    images=images,
                    amplification=r,
                    epsilon=epsilon,
                    outside_word=y_word,
                    inside_words=p.inside,
                    raw_outside_length=raw,
                    amplified_outside_length=1 - (1 - raw) ** r,
                    amplified_inside_lengths=tuple(inside_amp),
                    stats=SearchStats(assignments=count, per_group=tuple(per_group)),
                    embedded=embed,
                )
        per_group.append((H.name, group_count))
    return Exhausted(stats=SearchStats(assignments=count, per_group=tuple(per_group)))


def verify_sofic_certificate(cert: SoficCertificate) -> bool:
    """Recompute every stored quantity of a sofic certificate."""
    degree = cert.group_degree
    for x in cert.images:
        if len(x) != degree or not is_even(x):
            return False
    raw = hamming_length(evaluate_word(cert.outside_word, cert.images, degree))
    if raw != cert.raw_outside_length or raw == 0:
        return False
    r = cert.amplification
    if r != amplification_exponent(raw):
        return False
    amp = 1 - (1 - raw) ** r
    if amp != cert.amplified_outside_length or amp < Fraction(1, 2):
        return False
    for w, stored in zip(cert.inside_words, cert.amplified_inside_lengths):
        L = hamming_length(evaluate_word(w, cert.images, degree))
        if 1 - (1 - L) ** r != stored or not stored < cert.epsilon:
            return False
    return True


def merge_homomorphisms(homs):
    """Combine per-target maps into one by replication and direct sums.

    Each entry is (degree, images); all image tuples must have the same
    length.  Degrees are replicated up to their least common multiple so
    the blocks match, then summed.  Lengths average with block weights,
    so a word of length at least 1/2 under one input keeps length at
    least 1/(2 * number of inputs) under the result.
    """
    homs = list(homs)
    if not homs:
        raise ValueError("need at least one homomorphism")
    rank = len(homs[0][1])
    for _, images in homs:
        if len(images) != rank:
            raise ValueError("all homomorphisms must share the generator count")
    common = 1
    for degree, _ in homs:
        common = math.lcm(common, degree)
    blocks = []
    for degree, images in homs:
        copies = common // degree
        replicated = []
        for x in images:
            acc = x
            for _ in range(copies - 1):
                acc = direct_sum(acc, x)
            replicated.append(acc)
        blocks.append(replicated)
    merged = blocks[0]
    for block in blocks[1:]:
        merged = [direct_sum(a, b) for a, b in zip(merged, block)]
    return common * len(homs), tuple(merged)
