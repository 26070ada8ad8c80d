"""Brute-force solvability of word equation systems over finite groups.

A system is a list of freely reduced words over r constant symbols
a1..ar and k variable symbols x1..xk.  "Solvable in G" is the full
universal-existential check: every constant tuple admits a variable tuple
killing all words.  "Solvable over G" is only ever answered positively
(via explicitly supplied overgroup embeddings) or left unknown: a finite
scan cannot refute an existential over all overgroups.

Text systems use the DSL::

    constants 1; variables 1;
    x1 x1 a1^-1

one word per line after the header.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import product as iter_product

from .errors import ParseError
from .groups import DEFAULT_ELEMENT_CAP, FiniteGroup
from .perm import Permutation, direct_sum
from .words import Word, evaluate_word, max_symbol, parse_word, reduce_word

DEFAULT_EQ_BUDGET = 10**7


@dataclass(frozen=True)
class EquationSystem:
    """Words over constants 1..r and variables r+1..r+k (signed symbols)."""

    constants: int
    variables: int
    words: tuple[Word, ...]

    def __post_init__(self):
        if self.constants < 0 or self.variables < 0:
            raise ValueError("arities must be nonnegative")
        if not self.words:
            raise ValueError("a system needs at least one word")
        for w in self.words:
            if w != reduce_word(w):
                raise ValueError(f"system word {w} is not freely reduced")
            if max_symbol(w) > self.constants + self.variables:
                raise ValueError(f"word {w} uses symbols beyond the declared arities")

    def symbol_names(self) -> tuple[str, ...]:
        return tuple(
            [f"a{i + 1}" for i in range(self.constants)]
            + [f"x{j + 1}" for j in range(self.variables)]
        )


_HEADER_RE = re.compile(r"^constants\s+(\d+)\s*;\s*variables\s+(\d+)\s*;\s*$")


def parse_equation_system(text: str, source=None) -> EquationSystem:
    lines = text.splitlines()
    header = None
    words = []
    names = None
    for ln, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if header is None:
            match = _HEADER_RE.match(line)
            if not match:
                raise ParseError(
                    'expected header "constants r; variables k;"', line=ln, source=source
                )
            header = (int(match.group(1)), int(match.group(2)))
            names = tuple(
                [f"a{i + 1}" for i in range(header[0])]
                + [f"x{j + 1}" for j in range(header[1])]
            )
            continue
        words.append(parse_word(line, names, line=ln, source=source))
    if header is None:
        raise ParseError("missing system header", line=1, source=source)
    if not words:
        raise ParseError("system has no equations", line=len(lines), source=source)
    return EquationSystem(constants=header[0], variables=header[1], words=tuple(words))


def evaluate_system_word(
    word: Word, system: EquationSystem, constants, variables, degree: int
) -> Permutation:
    """Evaluate one word under a constant tuple and a variable tuple."""
    if len(constants) != system.constants or len(variables) != system.variables:
        raise ValueError("assignment arities do not match the system")
    return evaluate_word(word, tuple(constants) + tuple(variables), degree)


@dataclass(frozen=True)
class SolvabilityReport:
    verdict: str  # "solvable" | "unsolvable" | "unknown"
    counterexample: tuple | None = None
    witnesses: tuple = ()  # (constants, variables) pairs, sparse
    reason: str = ""
    constants_domain: int = 0
    variables_domain: int = 0
    budget: int = 0

    @property
    def solvable(self):
        return self.verdict == "solvable"


def _satisfies(system, constants, variables, degree) -> bool:
    assignment = tuple(constants) + tuple(variables)
    for w in system.words:
        if not evaluate_word(w, assignment, degree).is_identity():
            return False
    return True


def solvable_in(
    G: FiniteGroup,
    system: EquationSystem,
    budget: int = DEFAULT_EQ_BUDGET,
    want_witnesses: bool = False,
    cap: int = DEFAULT_ELEMENT_CAP,
    jobs: int = 1,
    constants_up_to_conjugacy: bool = False,
) -> SolvabilityReport:
    """Exact universal-existential verdict by exhaustion.

    Constants iterate outermost in canonical order with an early exit per
    tuple, so an unsolvable system surfaces its canonically least failing
    constant tuple.  When the worst-case scan size |G|^r * |G|^k exceeds
    the budget the verdict is unknown.

    constants_up_to_conjugacy is an opt-in accelerator: solvability of a
    constant tuple is invariant under conjugating the whole tuple, so only
    the canonically least tuple of each conjugation orbit is scanned.  The
    verdict and the counterexample are unchanged (the least failing tuple
    overall is always orbit-canonical); witnesses are recorded for the
    orbit representatives only.
    """
    els = G.elements(cap)
    size = len(els)
    worst = size ** system.constants * size ** system.variables
    if worst > budget:
        return SolvabilityReport(
            verdict="unknown",
            reason=f"worst-case scan {worst} exceeds budget {budget}",
            constants_domain=size ** system.constants,
            variables_domain=size ** system.variables,
            budget=budget,
        )
    degree = G.degree
    constant_tuples = list(iter_product(els, repeat=system.constants))
    reason = ""
    if constants_up_to_conjugacy:
        constant_tuples = [
            t for t in constant_tuples if _tuple_is_conjugation_canonical(t, els)
        ]
        reason = f"constants reduced to {len(constant_tuples)} orbit representatives"
    if jobs > 1 and len(constant_tuples) > 1:
        failing, witnesses = _scan_parallel(G, system, constant_tuples, want_witnesses, jobs)
    else:
        failing, witnesses = _scan_constants(
            system, constant_tuples, els, degree, want_witnesses
        )
    if failing is not None:
        return SolvabilityReport(
            verdict="unsolvable",
            counterexample=failing,
            reason=reason,
            constants_domain=size ** system.constants,
            variables_domain=size ** system.variables,
            budget=budget,
        )
    return SolvabilityReport(
        verdict="solvable",
        witnesses=tuple(witnesses) if want_witnesses else (),
        reason=reason,
        constants_domain=size ** system.constants,
        variables_domain=size ** system.variables,
        budget=budget,
    )


def _tuple_is_conjugation_canonical(constants, els) -> bool:
    keys = tuple(c.sort_key() for c in constants)
    for g in els:
        gi = g.inverse()
        conj = tuple(((gi * c) * g).sort_key() for c in constants)
        if conj < keys:
            return False
    return True


def _scan_constants(system, constant_tuples, els, degree, want_witnesses):
    witnesses = []
    for constants in constant_tuples:
        found = None
        for variables in iter_product(els, repeat=system.variables):
            if _satisfies(system, constants, variables, degree):
                found = variables
                break
        if found is None:
            return constants, []
        if want_witnesses:
            witnesses.append((constants, found))
    return None, witnesses


def _scan_parallel(G, system, constant_tuples, want_witnesses, jobs):
    """Partition the constant tuples; least failing index wins deterministically."""
    from concurrent.futures import ProcessPoolExecutor

    chunks = [constant_tuples[i::jobs] for i in range(jobs)]
    tasks = [
        (G.kind, G.degree, tuple(tuple(g) for g in G.generators), system, chunk, want_witnesses)
        for chunk in chunks
        if chunk
    ]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        results = list(pool.map(_scan_task, tasks))
    failing = [r[0] for r in results if r[0] is not None]
    if failing:
        least = min(failing, key=lambda t: tuple(p.sort_key() for p in t))
        return least, []
    witnesses = []
    if want_witnesses:
        for r in results:
            witnesses.extend(r[1])
        witnesses.sort(key=lambda cw: tuple(p.sort_key() for p in cw[0]))
    return None, witnesses


def _scan_task(task):
    kind, degree, gen_images, system, chunk, want_witnesses = task
    G = _rebuild_group(kind, degree, gen_images)
    els = G.elements()
    return _scan_constants(system, chunk, els, degree, want_witnesses)


def _rebuild_group(kind, degree, gen_images):
    if kind == "symmetric":
        return FiniteGroup.symmetric(degree)
    if kind == "alternating":
        return FiniteGroup.alternating(degree)
    return FiniteGroup.generated(degree, [Permutation(g) for g in gen_images])


@dataclass(frozen=True)
class MembershipTable:
    """Per-group verdict table for one system across a catalog."""

    entries: tuple  # (group name, SolvabilityReport)
    overall: str  # "member" | "non-member" | "unknown"


def sys_membership(
    catalog, system: EquationSystem, budget: int = DEFAULT_EQ_BUDGET
) -> MembershipTable:
    """Solvable in every catalog group = candidate member for that catalog."""
    entries = []
    any_unknown = False
    any_unsolvable = False
    for G in catalog:
        report = solvable_in(G, system, budget=budget)
        entries.append((G.name, report))
        if report.verdict == "unknown":
            any_unknown = True
        elif report.verdict == "unsolvable":
            any_unsolvable = True
    if any_unsolvable:
        overall = "non-member"
    elif any_unknown:
        overall = "unknown"
    else:
        overall = "member"
    return MembershipTable(entries=tuple(entries), overall=overall)


# --- overgroup embeddings -----------------------------------------------------


@dataclass(frozen=True)
class Embedding:
    """A verified injective homomorphism between enumerated groups."""

    source: FiniteGroup
    target: FiniteGroup
    pairs: tuple  # (element of source, element of target)

    def mapping(self) -> dict:
        return dict(self.pairs)

    def check(self, cap: int = DEFAULT_ELEMENT_CAP) -> None:
        mapping = self.mapping()
        els = self.source.elements(cap)
        if set(mapping) != set(els):
            raise ValueError("embedding must be defined on every source element")
        images = list(mapping.values())
        if len(set(images)) != len(images):
            raise ValueError("embedding is not injective")
        target_set = self.target.element_set(cap)
        for img in images:
            if img not in target_set:
                raise ValueError("embedding image leaves the target group")
        for g in els:
            for h in els:
                if mapping[g] * mapping[h] != mapping[g * h]:
                    raise ValueError("embedding is not a homomorphism")


def diagonal_embedding(G: FiniteGroup, copies: int, cap: int = DEFAULT_ELEMENT_CAP) -> Embedding:
    """g -> g (+) g (+) ... (+) g inside the symmetric group of copies * degree."""
    if copies < 1:
        raise ValueError("need at least one copy")
    target = FiniteGroup.symmetric(G.degree * copies)
    pairs = []
    for g in G.elements(cap):
        img = g
        for _ in range(copies - 1):
            img = direct_sum(img, g)
        pairs.append((g, img))
    return Embedding(source=G, target=target, pairs=tuple(pairs))


def solvable_over_bounded(
    G: FiniteGroup,
    system: EquationSystem,
    embeddings,
    budget: int = DEFAULT_EQ_BUDGET,
    want_witnesses: bool = False,
    cap: int = DEFAULT_ELEMENT_CAP,
) -> SolvabilityReport:
    """Positive-only check: constants from the embedded copy of G, variables
    from the overgroup.

    A failure here never proves unsolvability over G (some larger
    overgroup could still work), so the fallback verdict is unknown.
    """
    skipped = []
    for emb in embeddings:
        emb.check(cap)
        H = emb.target
        mapping = emb.mapping()
        h_els = H.elements(cap)
        source_els = G.elements(cap)
        worst = len(source_els) ** system.constants * len(h_els) ** system.variables
        if worst > budget:
            skipped.append((H.name, worst))
            continue
        witnesses = []
        all_ok = True
        for source_constants in iter_product(source_els, repeat=system.constants):
            constants = tuple(mapping[c] for c in source_constants)
            found = None
            for variables in iter_product(h_els, repeat=system.variables):
                if _satisfies(system, constants, variables, H.degree):
                    found = variables
                    break
            if found is None:
                all_ok = False
                break
            if want_witnesses:
                witnesses.append((constants, found))
        if all_ok:
            return SolvabilityReport(
                verdict="solvable",
                witnesses=tuple(witnesses) if want_witnesses else (),
                reason=f"witnessed inside {H.name}",
                constants_domain=len(source_els) ** system.constants,
                variables_domain=len(h_els) ** system.variables,
                budget=budget,
            )
    reason = "no supplied overgroup witnessed solvability"
    if skipped:
        detail = ", ".join(f"{name} (scan {worst})" for name, worst in skipped)
        reason += f"; skipped over budget: {detail}"
    return SolvabilityReport(verdict="unknown", reason=reason, budget=budget)


# --- catalog bridge report ------------------------------------------------------


@dataclass(frozen=True)
class BridgeReport:
    """Cross-check: systems solvable across an alternating catalog should be
    solvable over the supplied test groups; misses flag catalog shortfall,
    never a refutation."""

    system_solvable_in_catalog: bool
    entries: tuple  # (group name, verdict str)
    insufficiencies: tuple  # group names whose check came back unknown


def bridge_report(
    alternating_catalog,
    system: EquationSystem,
    test_groups_with_embeddings,
    budget: int = DEFAULT_EQ_BUDGET,
) -> BridgeReport:
    table = sys_membership(alternating_catalog, system, budget=budget)
    if table.overall != "member":
        return BridgeReport(
            system_solvable_in_catalog=False, entries=(), insufficiencies=()
        )
    entries = []
    misses = []
    for G, embeddings in test_groups_with_embeddings:
        report = solvable_over_bounded(G, system, embeddings, budget=budget)
        entries.append((G.name, report.verdict))
        if report.verdict != "solvable":
            misses.append(G.name)
    return BridgeReport(
        system_solvable_in_catalog=True,
        entries=tuple(entries),
        insufficiencies=tuple(misses),
    )
