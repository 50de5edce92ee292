"""Exhaustive enumeration, random generation, and machine checks of the
projection results.

Every claim is a named check ``(family, Qp) -> (holds, detail)``.  Reports
keep the failing instance, so any counterexample can be replayed with
:meth:`Counterexample.replay`.
"""

from __future__ import annotations

import random
import string
from collections.abc import Callable, Iterable, Iterator
from dataclasses import dataclass, field

from learnspace import core
from learnspace.core import ItemDomain, SetFamily, StateSet
from learnspace.projection import (
    children,
    is_yielding,
    plus_child,
    project,
    yielding_violations,
)

MAX_ENUMERATION_ITEMS = 4

# {a} ⊂ {a,b} ⊂ Q and {c} ⊂ {b,c} ⊂ Q: satisfies L1 and L2 but {a,c} is missing.
TWO_CHAINS = SetFamily.of("abc", ["a", "ab", "c", "bc", "abc"])


def default_domain(n: int) -> ItemDomain:
    if n <= 26:
        return ItemDomain(tuple(string.ascii_lowercase[:n]))
    return ItemDomain(tuple(f"q{i}" for i in range(n)))


def _check_n(n: int, high: int = MAX_ENUMERATION_ITEMS) -> None:
    if not 2 <= n <= high:
        raise ValueError(f"item count must be between 2 and {high}, got {n}")


def _families_containing(domain: ItemDomain, required: tuple[int, ...], optional: list[int]) -> Iterator[SetFamily]:
    for pick in range(1 << len(optional)):
        masks = list(required)
        for i, m in enumerate(optional):
            if pick >> i & 1:
                masks.append(m)
        yield SetFamily(domain, tuple(masks))


def enumerate_knowledge_structures(n: int) -> Iterator[SetFamily]:
    """All 2^(2^n - 2) families on n items that contain ∅ and the full set."""
    _check_n(n)
    domain = default_domain(n)
    full = domain.full_mask
    return _families_containing(domain, (0, full), list(range(1, full)))


def enumerate_partial_structures(n: int) -> Iterator[SetFamily]:
    """All families on n items that contain the full set (∅ optional)."""
    _check_n(n)
    domain = default_domain(n)
    full = domain.full_mask
    return _families_containing(domain, (full,), list(range(full)))


def enumerate_learning_spaces(n: int) -> Iterator[SetFamily]:
    return (F for F in enumerate_knowledge_structures(n) if core.is_learning_space(F))


def proper_subdomains(F: SetFamily) -> Iterator[StateSet]:
    """Every proper non-empty subset of the family's union, as a state."""
    union = F.union_mask
    sub = union
    while sub:
        sub = (sub - 1) & union
        if sub:
            yield StateSet(F.domain, sub)


# -- random generation -------------------------------------------------------


@dataclass(frozen=True)
class GeneratorConfig:
    item_count: int
    growth_steps: int = 0
    seed: int = 0

    def __post_init__(self) -> None:
        if not 2 <= self.item_count <= core.MAX_ITEMS:
            raise ValueError(f"item_count must be in 2..{core.MAX_ITEMS}")
        if self.growth_steps < 0:
            raise ValueError("growth_steps must be non-negative")


def random_learning_space(cfg: GeneratorConfig) -> SetFamily:
    """Grow a learning space from a random maximal chain.

    Each step adds ``K ∪ {q}`` for a random state ``K`` and a random item
    ``q`` outside it, then closes under union.  Both steps keep the family
    accessible and union-closed.
    """
    rng = random.Random(cfg.seed)
    domain = default_domain(cfg.item_count)
    full = domain.full_mask
    order = list(range(cfg.item_count))
    rng.shuffle(order)
    states = {0}
    chain = 0
    for i in order:
        chain |= 1 << i
        states.add(chain)
    for _ in range(cfg.growth_steps):
        base = rng.choice(sorted(m for m in states if m != full))
        missing = [b for b in core._bits(full & ~base)]
        new = base | rng.choice(missing)
        if new not in states:
            states |= {new | m for m in states}
    family = SetFamily(domain, tuple(states))
    assert core.is_learning_space(family), f"generator produced a non-learning space for {cfg}"
    return family


def random_subdomains(F: SetFamily, count: int, seed: int) -> list[StateSet]:
    rng = random.Random(f"qp-{seed}")
    full = F.union_mask
    picks = []
    for _ in range(count):
        while True:
            m = rng.randrange(1, full) & full
            if m and m != full:
                break
        picks.append(StateSet(F.domain, m))
    return picks


# -- claims ------------------------------------------------------------------


def _wg_union_closed(F: SetFamily) -> bool:
    return core.is_union_closed(F) and core.is_well_graded(F)


def _claim_projection(F: SetFamily, Qp: StateSet) -> tuple[bool, str]:
    proj = project(F, Qp)
    if core.is_learning_space(F):
        return core.is_learning_space(proj), "projection is a learning space"
    return _wg_union_closed(proj), "projection is well-graded and union-closed"


def _claim_children(F: SetFamily, Qp: StateSet) -> tuple[bool, str]:
    for child in children(F, Qp):
        if not _wg_union_closed(child.family):
            return False, f"child of class with trace {child.origin_trace} fails: {child.family}"
    return True, ""


def _claim_nontrivial_child(F: SetFamily, Qp: StateSet) -> tuple[bool, str]:
    n = sum(not c.is_trivial for c in children(F, Qp))
    return n > 0, f"{n} non-trivial children"


def _claim_yielding(F: SetFamily, Qp: StateSet) -> tuple[bool, str]:
    yielding = is_yielding(F, Qp)
    bad_plus = [
        c for c in children(F, Qp)
        if not c.is_trivial and not core.is_learning_space(plus_child(c).family)
    ]
    detail = f"yielding={yielding} plus_children_learning_spaces={not bad_plus}"
    if not yielding:
        cls, low = yielding_violations(F, Qp)[0]
        detail += f" minimal={low} core={cls.core}"
    return yielding == (not bad_plus), detail


def _claim_axioms_route(F: SetFamily, Qp=None) -> tuple[bool, str]:
    axioms = core.is_learning_space(F, route="axioms")
    closure = core.is_learning_space(F, route="closure")
    return axioms == closure, f"L1∧L2={axioms} union-closed∧well-graded={closure}"


def _claim_partial_forward(F: SetFamily, Qp=None) -> tuple[bool, str]:
    if not (core.is_partial_knowledge_structure(F) and _wg_union_closed(F)):
        return True, "not applicable"
    return core.is_partial_learning_space(F), ""


def _claim_nested_pairs(F: SetFamily, Qp=None) -> tuple[bool, str]:
    # Between nested states a tight path is exactly a chain of additions.
    if not core.is_union_closed(F):
        return True, "not applicable"
    return core.is_well_graded(F) == core.satisfies_L1(F), ""


def _claim_partial_witness(F: SetFamily, Qp=None) -> tuple[bool, str]:
    """Holds when F witnesses that a partial learning space need not be union-closed."""
    holds = core.is_partial_learning_space(F) and not core.is_union_closed(F)
    return holds, "" if holds else "not a witness"


CLAIMS: dict[str, Callable[[SetFamily, StateSet | None], tuple[bool, str]]] = {
    "projection.learning_space": _claim_projection,
    "children.wellgraded_union_closed": _claim_children,
    "children.nontrivial_exists": _claim_nontrivial_child,
    "yielding.iff_plus_children": _claim_yielding,
    "wellgraded.nested_pairs_suffice": _claim_nested_pairs,
    "axioms.iff_wellgraded_space": _claim_axioms_route,
    "partial.wellgraded_union_closed_has_axioms": _claim_partial_forward,
    "partial.axioms_without_union_closure": _claim_partial_witness,
}


@dataclass(frozen=True)
class Counterexample:
    claim: str
    family: SetFamily
    subdomain: StateSet | None
    detail: str = ""

    def replay(self) -> bool:
        """Re-run the claim; True when the failure is reproduced."""
        holds, _ = CLAIMS[self.claim](self.family, self.subdomain)
        return not holds


@dataclass(frozen=True)
class ClaimResult:
    name: str
    holds: bool
    detail: str = ""
    counterexample: Counterexample | None = None


@dataclass
class VerificationReport:
    instance: str
    claims: list[ClaimResult] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return all(c.holds for c in self.claims)

    def __getitem__(self, name: str) -> ClaimResult:
        for c in self.claims:
            if c.name == name:
                return c
        raise KeyError(name)

    def run(self, name: str, F: SetFamily, Qp: StateSet | None) -> ClaimResult:
        holds, detail = CLAIMS[name](F, Qp)
        cx = None if holds else Counterexample(name, F, Qp, detail)
        result = ClaimResult(name, holds, detail, cx)
        self.claims.append(result)
        return result


def _describe(F: SetFamily, Qp: StateSet | None) -> str:
    text = f"{len(F)} states on {len(F.domain)} items"
    return text if Qp is None else f"{text}, Qp={Qp}"


def verify_projection_theorem_1(F: SetFamily, Qp: StateSet) -> VerificationReport:
    is_space = core.is_learning_space(F)
    if not (is_space or _wg_union_closed(F)):
        raise ValueError("family is neither a learning space nor well-graded and union-closed")
    report = VerificationReport(_describe(F, Qp))
    report.run("projection.learning_space", F, Qp)
    report.run("children.wellgraded_union_closed", F, Qp)
    if is_space:
        report.run("children.nontrivial_exists", F, Qp)
    return report


def verify_projection_theorem_2(F: SetFamily, Qp: StateSet) -> VerificationReport:
    if not core.is_learning_space(F):
        raise ValueError("family is not a learning space")
    report = VerificationReport(_describe(F, Qp))
    report.run("yielding.iff_plus_children", F, Qp)
    return report


def verify_lemma_suite(n: int) -> VerificationReport:
    """Axiom-level checks over every family on ``n`` items containing the full set.

    * the L1/L2 route and the union-closed/well-graded route agree on every
      knowledge structure;
    * for union-closed families, tight paths between nested states suffice;
    * well-graded union-closed families satisfy L1 and L2;
    * some partial learning space is not union-closed.  The first enumerated
      one is used, or :data:`TWO_CHAINS` when ``n`` is too small to have one.
    """
    _check_n(n)
    report = VerificationReport(f"all families on {n} items")
    witness: SetFamily | None = None
    for F in enumerate_partial_structures(n):
        if 0 in F.mask_set:
            _keep_failure(report, "axioms.iff_wellgraded_space", F)
        _keep_failure(report, "partial.wellgraded_union_closed_has_axioms", F)
        _keep_failure(report, "wellgraded.nested_pairs_suffice", F)
        if witness is None and _claim_partial_witness(F)[0]:
            witness = F
    for name in ("wellgraded.nested_pairs_suffice", "axioms.iff_wellgraded_space", "partial.wellgraded_union_closed_has_axioms"):
        if not any(c.name == name for c in report.claims):
            report.claims.append(ClaimResult(name, True))
    if witness is None:
        witness = TWO_CHAINS
    name = "partial.axioms_without_union_closure"
    holds, _ = CLAIMS[name](witness, None)
    cx = None if holds else Counterexample(name, witness, None, "not a witness")
    report.claims.append(ClaimResult(name, holds, f"witness {witness}", cx))
    report.claims.sort(key=lambda c: c.name)
    return report


def _keep_failure(report: VerificationReport, name: str, F: SetFamily) -> None:
    # Record only the first failure per claim.
    if any(c.name == name for c in report.claims):
        return
    holds, detail = CLAIMS[name](F, None)
    if not holds:
        report.claims.append(ClaimResult(name, False, detail, Counterexample(name, F, None, detail)))


# -- sweeps ------------------------------------------------------------------


@dataclass
class ClaimTally:
    name: str
    checked: int = 0
    failures: int = 0
    counterexamples: list[Counterexample] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return self.failures == 0


@dataclass
class SweepSummary:
    description: str
    tallies: dict[str, ClaimTally] = field(default_factory=dict)
    instances: int = 0
    keep: int = 5

    def add(self, report: VerificationReport) -> None:
        for c in report.claims:
            tally = self.tallies.setdefault(c.name, ClaimTally(c.name))
            tally.checked += 1
            if not c.holds:
                tally.failures += 1
                if c.counterexample is not None and len(tally.counterexamples) < self.keep:
                    tally.counterexamples.append(c.counterexample)

    @property
    def holds(self) -> bool:
        return all(t.holds for t in self.tallies.values())

    def rows(self) -> list[ClaimTally]:
        return [self.tallies[k] for k in sorted(self.tallies)]


def _run_suite(suite: str, F: SetFamily, Qp: StateSet) -> VerificationReport:
    if suite == "pt1":
        return verify_projection_theorem_1(F, Qp)
    if suite == "pt2":
        return verify_projection_theorem_2(F, Qp)
    raise ValueError(f"unknown suite {suite!r}")


def sweep_instances(suite: str, instances: Iterable[tuple[SetFamily, StateSet]], description: str) -> SweepSummary:
    summary = SweepSummary(description)
    for F, Qp in instances:
        summary.instances += 1
        summary.add(_run_suite(suite, F, Qp))
    return summary


def exhaustive_instances(n_max: int) -> Iterator[tuple[SetFamily, StateSet]]:
    """Every learning space on 2..n_max items with every proper non-empty Qp."""
    _check_n(n_max)
    for n in range(2, n_max + 1):
        for F in enumerate_learning_spaces(n):
            for Qp in proper_subdomains(F):
                yield F, Qp


def random_instances(
    n: int, spaces: int, growth_steps: int, subdomains_per_space: int, first_seed: int = 0
) -> Iterator[tuple[SetFamily, StateSet]]:
    for seed in range(first_seed, first_seed + spaces):
        F = random_learning_space(GeneratorConfig(n, growth_steps, seed))
        for Qp in random_subdomains(F, subdomains_per_space, seed):
            yield F, Qp


def sweep_exhaustive(suite: str, n_max: int) -> SweepSummary:
    return sweep_instances(suite, exhaustive_instances(n_max), f"{suite}: all learning spaces on 2..{n_max} items")


def sweep_random(
    suite: str, n: int = 6, spaces: int = 1000, growth_steps: int = 40, subdomains_per_space: int = 20, first_seed: int = 0
) -> SweepSummary:
    return sweep_instances(
        suite,
        random_instances(n, spaces, growth_steps, subdomains_per_space, first_seed),
        f"{suite}: {spaces} random learning spaces on {n} items x {subdomains_per_space} subsets",
    )


def count_learning_spaces(n: int) -> int:
    return sum(1 for _ in enumerate_learning_spaces(n))


def route_discrepancies(n: int) -> list[SetFamily]:
    return [F for F in enumerate_knowledge_structures(n) if not _claim_axioms_route(F)[0]]
