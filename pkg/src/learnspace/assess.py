"""Recursive assessment through projections.

Each level picks a subset ``Qp`` of the current family's items, questions
the responder on ``Qp`` only until a single projection state survives,
takes the class with that trace, strips the class core and carries on with
the resulting child.  The recovered state is the union of the cores removed
along the way and whatever the last child pins down.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import ceil

from learnspace.core import SetFamily, StateSet, _bits, is_learning_space
from learnspace.projection import EquivClass, child_of_class, partition_by, project


class InconsistentResponseError(RuntimeError):
    """No projection state matches the answers given so far."""


class ReconstructionError(RuntimeError):
    pass


@dataclass(frozen=True)
class LatentResponder:
    """Answers "is item ``q`` mastered?" from a fixed true state."""

    true_state: StateSet

    def answer(self, item: str) -> bool:
        return item in self.true_state


@dataclass(frozen=True)
class AssessConfig:
    """``split_size`` defaults to half the current level's items, rounded up.

    ``subsets`` pins ``Qp`` for the first levels (item names per level);
    later levels fall back to the balanced-split rule.
    """

    split_size: int | None = None
    subsets: tuple[tuple[str, ...], ...] = ()
    max_depth: int = 64

    def __post_init__(self) -> None:
        if self.split_size is not None and self.split_size < 1:
            raise ValueError("split_size must be at least 1")
        if self.max_depth < 1:
            raise ValueError("max_depth must be at least 1")


@dataclass(frozen=True)
class Query:
    item: str
    answer: bool
    remaining: int


@dataclass
class Level:
    family: SetFamily
    subdomain: StateSet
    queries: list[Query] = field(default_factory=list)
    trace: StateSet | None = None
    core: StateSet | None = None


@dataclass
class AssessmentSession:
    family: SetFamily
    levels: list[Level] = field(default_factory=list)
    result: StateSet | None = None
    candidates: SetFamily | None = None

    @property
    def complete(self) -> bool:
        return self.result is not None

    @property
    def query_count(self) -> int:
        return sum(len(level.queries) for level in self.levels)

    def transcript(self) -> list[str]:
        lines = []
        for depth, level in enumerate(self.levels, 1):
            lines.append(f"level {depth}: {len(level.family)} states, Qp={level.subdomain}")
            for q in level.queries:
                lines.append(f"{depth}\t{q.item}\t{'yes' if q.answer else 'no'}\t{q.remaining}")
            lines.append(f"level {depth}: trace={level.trace} core={level.core}")
        return lines


def _narrow(candidates: list[int], items: int, family: SetFamily, r: LatentResponder) -> tuple[int, list[Query]]:
    """Question on ``items`` until one candidate mask is left.

    The next item splits the surviving candidates as evenly as possible;
    ties go to the earliest item in domain order.
    """
    queries: list[Query] = []
    asked = 0
    while len(candidates) > 1:
        best, best_balance = 0, -1
        for b in _bits(items & ~asked):
            hits = sum(1 for m in candidates if m & b)
            balance = min(hits, len(candidates) - hits)
            if balance > best_balance:
                best, best_balance = b, balance
        if best_balance <= 0:
            # distinct masks always differ on some unasked item of ``items``
            raise AssertionError("no item separates the remaining candidates")
        asked |= best
        item = family.domain.names_of(best)[0]
        answer = r.answer(item)
        candidates = [m for m in candidates if bool(m & best) == answer]
        queries.append(Query(item, answer, len(candidates)))
    if not candidates:
        raise InconsistentResponseError("answers match no candidate state")
    return candidates[0], queries


def _identify(F: SetFamily, Qp: StateSet, r: LatentResponder) -> tuple[EquivClass, list[Query]]:
    proj = project(F, Qp)
    sub = proj.domain
    survivor, queries = _narrow(list(proj.masks), sub.full_mask, proj, r)
    trace = StateSet(F.domain, sub.translate(survivor, F.domain))
    return partition_by(F, Qp).class_of(trace), queries


def assess_on_projection(F: SetFamily, Qp: StateSet, r: LatentResponder) -> EquivClass:
    """Question ``r`` on items of ``Qp`` and return the matching class."""
    return _identify(F, Qp, r)[0]


def choose_subdomain(F: SetFamily, size: int) -> StateSet:
    """Greedy balanced split: grow ``Qp`` one item at a time.

    Each pick maximizes the number of distinct traces, then prefers items
    held by about half of the states, then domain order.
    """
    union = F.union_mask
    size = max(1, min(size, union.bit_count() - 1))
    chosen = 0
    half = len(F) / 2
    for _ in range(size):
        def score(b: int) -> tuple[int, float]:
            traces = {m & (chosen | b) for m in F.masks}
            held = sum(1 for m in F.masks if m & b)
            return len(traces), -abs(held - half)

        best = max(_bits(union & ~chosen), key=score)  # max keeps the first on ties
        chosen |= best
    return StateSet(F.domain, chosen)


def _level_subdomain(F: SetFamily, cfg: AssessConfig, depth: int) -> StateSet:
    if depth < len(cfg.subsets):
        return F.domain.state(cfg.subsets[depth])
    n = F.union_mask.bit_count()
    size = cfg.split_size if cfg.split_size is not None else ceil(n / 2)
    return choose_subdomain(F, size)


def reconstruct_state(child_result: StateSet, cores: list[StateSet], family: SetFamily | None = None) -> StateSet:
    """Put the removed cores back: ``child_result ∪ core_1 ∪ ... ∪ core_k``.

    The result lives on ``family``'s domain (default: the first core's) and
    must be a state of ``family`` when one is given.
    """
    domain = family.domain if family is not None else (cores[0].domain if cores else child_result.domain)
    names = set(child_result.names)
    for c in cores:
        names.update(c.names)
    result = domain.state(names)
    if family is not None and result not in family:
        raise ReconstructionError(f"reconstructed {result} is not a state of the family")
    return result


def assess_recursive(F: SetFamily, cfg: AssessConfig, r: LatentResponder) -> AssessmentSession:
    if not is_learning_space(F):
        raise ValueError("family is not a learning space")
    if r.true_state not in F:
        raise ValueError(f"true state {r.true_state} is not a state of the family")
    session = AssessmentSession(F)
    cores: list[StateSet] = []
    current = F
    while len(current) > 1:
        depth = len(session.levels)
        if depth == cfg.max_depth:
            session.candidates = F.with_masks(
                reconstruct_state(s, cores, F).mask for s in current.states
            )
            return session
        if current.union_mask.bit_count() < 2:
            # one item left: ask it directly, every class is a single state
            Qp = current.union
            survivor, queries = _narrow(list(current.masks), current.union_mask, current, r)
            state = StateSet(current.domain, survivor)
            session.levels.append(Level(current, Qp, queries, trace=state, core=state))
            cores.append(state)
            current = current.with_masks([0])
            break
        Qp = _level_subdomain(current, cfg, depth)
        cls, queries = _identify(current, Qp, r)
        session.levels.append(Level(current, Qp, queries, trace=cls.trace, core=cls.core))
        cores.append(cls.core)
        current = child_of_class(cls).family
    last = current.states[0]
    session.result = reconstruct_state(last, cores, F)
    return session
