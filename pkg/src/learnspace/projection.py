"""Projections of a family on a subset of its items, and the induced children.

Two states are equivalent under ``Qp`` when they agree on ``Qp``.  Each
equivalence class has a *trace* (the common intersection with ``Qp``), and
a *core* (the intersection of all its members).  Removing the core from
every member gives the class's child.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from learnspace.core import (
    DomainError,
    ItemDomain,
    SetFamily,
    StateSet,
    canonical_key,
    is_learning_space,
    is_partial_knowledge_structure,
)


class SubdomainError(ValueError):
    """``Qp`` is not a proper non-empty subset of the family's union."""


@dataclass(frozen=True)
class EquivClass:
    trace: StateSet
    members: SetFamily
    core: StateSet

    @cached_property
    def minimal_members(self) -> tuple[StateSet, ...]:
        masks = self.members.masks
        return tuple(
            StateSet(self.members.domain, m)
            for m in masks
            if not any(o != m and o & ~m == 0 for o in masks)
        )


@dataclass(frozen=True)
class ClassPartition:
    family: SetFamily
    subdomain: StateSet
    classes: tuple[EquivClass, ...]

    def __len__(self) -> int:
        return len(self.classes)

    def class_of(self, state: StateSet) -> EquivClass:
        """The class containing ``state``, looked up by its trace."""
        trace = state.mask & self.subdomain.mask
        for cls in self.classes:
            if cls.trace.mask == trace:
                return cls
        raise KeyError(f"no class with trace {StateSet(state.domain, trace)}")


@dataclass(frozen=True)
class Child:
    """A class with its core removed, re-homed on the items it still uses."""

    origin_trace: StateSet
    family: SetFamily

    @property
    def is_trivial(self) -> bool:
        return self.family.masks == (0,)


def equivalent_under(K: StateSet, L: StateSet, Qp: StateSet) -> bool:
    if not (K.domain == L.domain == Qp.domain):
        raise DomainError("states live on different domains")
    return K.mask & Qp.mask == L.mask & Qp.mask


def _check_subdomain(F: SetFamily, Qp: StateSet) -> None:
    if Qp.domain != F.domain:
        raise DomainError("Qp lives on a different domain than the family")
    if not is_partial_knowledge_structure(F):
        raise ValueError("family does not contain its own union")
    union = F.union_mask
    if union.bit_count() < 2:
        raise SubdomainError("projection needs at least two items in the family's union")
    if Qp.mask == 0:
        raise SubdomainError("Qp is empty")
    if Qp.mask & ~union:
        raise SubdomainError(f"Qp {Qp} has items outside the family's union")
    if Qp.mask == union:
        raise SubdomainError("Qp must be a proper subset of the family's union")


def partition_by(F: SetFamily, Qp: StateSet) -> ClassPartition:
    _check_subdomain(F, Qp)
    groups: dict[int, list[int]] = {}
    for m in F.masks:
        groups.setdefault(m & Qp.mask, []).append(m)
    classes = []
    for trace in sorted(groups, key=canonical_key):
        members = groups[trace]
        core = members[0]
        for m in members[1:]:
            core &= m
        classes.append(
            EquivClass(
                trace=StateSet(F.domain, trace),
                members=F.with_masks(members),
                core=StateSet(F.domain, core),
            )
        )
    return ClassPartition(F, Qp, tuple(classes))


def project(F: SetFamily, Qp: StateSet) -> SetFamily:
    """The family of traces ``K ∩ Qp``, over the domain ``Qp``."""
    _check_subdomain(F, Qp)
    sub = F.domain.restrict(Qp.mask)
    return SetFamily(sub, tuple(F.domain.translate(m & Qp.mask, sub) for m in F.masks))


def child_of_class(c: EquivClass) -> Child:
    parent = c.members.domain
    residues = [m & ~c.core.mask for m in c.members.masks]
    union = 0
    for r in residues:
        union |= r
    home = parent.restrict(union)
    family = SetFamily(home, tuple(parent.translate(r, home) for r in residues))
    return Child(origin_trace=c.trace, family=family)


def children(F: SetFamily, Qp: StateSet) -> list[Child]:
    """One child per class, keeping the first class that produces each family."""
    seen = set()
    out = []
    for cls in partition_by(F, Qp).classes:
        child = child_of_class(cls)
        if child.family not in seen:
            seen.add(child.family)
            out.append(child)
    return out


def is_trivial_child(c: Child) -> bool:
    return c.is_trivial


def plus_child(c: Child) -> Child:
    if c.is_trivial:
        raise ValueError("the trivial child has no plus child")
    return Child(c.origin_trace, c.family.with_masks(c.family.masks + (0,)))


def yielding_violations(F: SetFamily, Qp: StateSet) -> list[tuple[EquivClass, StateSet]]:
    """Minimal class members exceeding their class core by two or more items."""
    bad = []
    for cls in partition_by(F, Qp).classes:
        for low in cls.minimal_members:
            if (low.mask & ~cls.core.mask).bit_count() > 1:
                bad.append((cls, low))
    return bad


def is_yielding(F: SetFamily, Qp: StateSet) -> bool:
    return not yielding_violations(F, Qp)


def plus_children_are_learning_spaces(F: SetFamily, Qp: StateSet) -> bool:
    return all(
        is_learning_space(plus_child(c).family)
        for c in children(F, Qp)
        if not c.is_trivial
    )


def subdomain(F: SetFamily | ItemDomain, names) -> StateSet:
    """Convenience: ``Qp`` as a state of ``F``'s domain from item names."""
    domain = F if isinstance(F, ItemDomain) else F.domain
    return domain.state(names)
