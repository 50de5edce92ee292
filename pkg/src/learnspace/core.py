"""Set families over a small item domain and the learning-space axioms.

States are stored as integer bit masks over an ordered :class:`ItemDomain`;
bit ``i`` stands for ``domain.items[i]``.  :class:`StateSet` and
:class:`SetFamily` are thin immutable wrappers that carry the domain along so
item names survive every construction.

The ``*_masks`` helpers work on raw masks and are what the sweeps in
:mod:`learnspace.oracle` call in their inner loops.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field
from functools import cached_property

MAX_ITEMS = 64


class DomainError(ValueError):
    """Raised for malformed domains or operands living on different domains."""


class NotInFamilyError(ValueError):
    pass


def _bits(mask: int) -> Iterator[int]:
    """Yield the single-bit masks set in ``mask``, lowest first."""
    while mask:
        low = mask & -mask
        yield low
        mask ^= low


@dataclass(frozen=True)
class ItemDomain:
    """Ordered, duplicate-free tuple of item names (at most 64)."""

    items: tuple[str, ...]
    index: dict[str, int] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        items = tuple(self.items)
        object.__setattr__(self, "items", items)
        if len(items) > MAX_ITEMS:
            raise DomainError(f"domain has {len(items)} items; at most {MAX_ITEMS} supported")
        index = {}
        for pos, name in enumerate(items):
            if not isinstance(name, str) or not name:
                raise DomainError(f"item names must be non-empty strings, got {name!r}")
            if name in index:
                raise DomainError(f"duplicate item {name!r}")
            index[name] = pos
        object.__setattr__(self, "index", index)

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self) -> Iterator[str]:
        return iter(self.items)

    def __contains__(self, name: object) -> bool:
        return name in self.index

    @property
    def full_mask(self) -> int:
        return (1 << len(self.items)) - 1

    def mask_of(self, names: Iterable[str]) -> int:
        mask = 0
        for name in names:
            try:
                mask |= 1 << self.index[name]
            except KeyError:
                raise DomainError(f"unknown item {name!r}") from None
        return mask

    def names_of(self, mask: int) -> tuple[str, ...]:
        if mask >> len(self.items):
            raise DomainError(f"mask {mask:#x} uses positions outside the domain")
        return tuple(self.items[i] for i in range(len(self.items)) if mask >> i & 1)

    def state(self, names: Iterable[str] = ()) -> StateSet:
        return StateSet(self, self.mask_of(names))

    def restrict(self, mask: int) -> ItemDomain:
        """Sub-domain made of the items in ``mask``, keeping this domain's order."""
        return ItemDomain(self.names_of(mask))

    def translate(self, mask: int, target: ItemDomain) -> int:
        """Re-encode ``mask`` (over this domain) as a mask over ``target``."""
        if target is self or target.items == self.items:
            return mask
        return target.mask_of(self.names_of(mask))


@dataclass(frozen=True)
class StateSet:
    """One subset of a domain.  Compares by domain and mask."""

    domain: ItemDomain
    mask: int

    def __post_init__(self) -> None:
        if self.mask < 0 or self.mask >> len(self.domain):
            raise DomainError(f"mask {self.mask:#x} does not fit a {len(self.domain)}-item domain")

    def _check(self, other: StateSet) -> None:
        if self.domain != other.domain:
            raise DomainError("states live on different domains")

    def __or__(self, other: StateSet) -> StateSet:
        self._check(other)
        return StateSet(self.domain, self.mask | other.mask)

    def __and__(self, other: StateSet) -> StateSet:
        self._check(other)
        return StateSet(self.domain, self.mask & other.mask)

    def __sub__(self, other: StateSet) -> StateSet:
        self._check(other)
        return StateSet(self.domain, self.mask & ~other.mask)

    def __xor__(self, other: StateSet) -> StateSet:
        self._check(other)
        return StateSet(self.domain, self.mask ^ other.mask)

    def __le__(self, other: StateSet) -> bool:
        self._check(other)
        return self.mask & ~other.mask == 0

    def __lt__(self, other: StateSet) -> bool:
        return self <= other and self.mask != other.mask

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __iter__(self) -> Iterator[str]:
        return iter(self.domain.names_of(self.mask))

    def __contains__(self, name: object) -> bool:
        pos = self.domain.index.get(name)  # type: ignore[arg-type]
        return pos is not None and bool(self.mask >> pos & 1)

    @property
    def names(self) -> tuple[str, ...]:
        return self.domain.names_of(self.mask)

    def __str__(self) -> str:
        return "{" + ",".join(self.names) + "}"


def canonical_key(mask: int) -> tuple[int, int]:
    return mask.bit_count(), mask


@dataclass(frozen=True)
class SetFamily:
    """Deduplicated family of states, kept in canonical (size, mask) order."""

    domain: ItemDomain
    masks: tuple[int, ...]

    def __post_init__(self) -> None:
        limit = len(self.domain)
        unique = set(self.masks)
        for mask in unique:
            if mask < 0 or mask >> limit:
                raise DomainError(f"state {mask:#x} is not a subset of the domain")
        object.__setattr__(self, "masks", tuple(sorted(unique, key=canonical_key)))

    @classmethod
    def of(cls, domain: ItemDomain | Iterable[str], states: Iterable[Iterable[str]]) -> SetFamily:
        """Build a family from item names, e.g. ``SetFamily.of("abc", [[], ["a"]])``."""
        if not isinstance(domain, ItemDomain):
            domain = ItemDomain(tuple(domain))
        return cls(domain, tuple(domain.mask_of(s) for s in states))

    @cached_property
    def mask_set(self) -> frozenset[int]:
        return frozenset(self.masks)

    @cached_property
    def union_mask(self) -> int:
        total = 0
        for mask in self.masks:
            total |= mask
        return total

    @property
    def union(self) -> StateSet:
        return StateSet(self.domain, self.union_mask)

    @property
    def states(self) -> tuple[StateSet, ...]:
        return tuple(StateSet(self.domain, m) for m in self.masks)

    def __len__(self) -> int:
        return len(self.masks)

    def __iter__(self) -> Iterator[StateSet]:
        return iter(self.states)

    def __contains__(self, state: object) -> bool:
        if isinstance(state, StateSet):
            return state.domain == self.domain and state.mask in self.mask_set
        return False

    def state(self, names: Iterable[str] = ()) -> StateSet:
        return self.domain.state(names)

    def with_masks(self, masks: Iterable[int]) -> SetFamily:
        return SetFamily(self.domain, tuple(masks))

    def rehome(self, domain: ItemDomain) -> SetFamily:
        """Same states, re-encoded over ``domain`` (which must cover the union)."""
        return SetFamily(domain, tuple(self.domain.translate(m, domain) for m in self.masks))

    def as_names(self) -> list[tuple[str, ...]]:
        return [self.domain.names_of(m) for m in self.masks]

    def __str__(self) -> str:
        return "{" + ", ".join(str(s) for s in self.states) + "}"


@dataclass(frozen=True)
class TightPath:
    steps: tuple[StateSet, ...]

    def __len__(self) -> int:
        """Number of unit steps (one less than the number of states)."""
        return len(self.steps) - 1


def _same_domain(*states: StateSet) -> None:
    domain = states[0].domain
    for s in states[1:]:
        if s.domain != domain:
            raise DomainError("states live on different domains")


def sym_diff_distance(K: StateSet, L: StateSet) -> int:
    _same_domain(K, L)
    return (K.mask ^ L.mask).bit_count()


# -- predicates on raw masks -------------------------------------------------


def union_closed_masks(masks: frozenset[int]) -> bool:
    ordered = list(masks)
    for i, k in enumerate(ordered):
        for l in ordered[i + 1:]:
            if k | l not in masks:
                return False
    return True


def accessible_masks(masks: frozenset[int]) -> bool:
    for k in masks:
        if k and not any(k ^ b in masks for b in _bits(k)):
            return False
    return True


def well_graded_masks(masks: frozenset[int]) -> bool:
    """Every pair of states is joined by a tight path.

    For each target ``L`` the states that reach ``L`` tightly are found in
    order of increasing distance: ``M`` qualifies iff some member one step
    closer to ``L`` already qualifies.
    """
    ordered = list(masks)
    for target in ordered:
        by_distance = sorted(ordered, key=lambda m: (m ^ target).bit_count())
        reach = {target}
        for m in by_distance[1:]:
            if not any(m ^ b in reach for b in _bits(m ^ target)):
                return False
            reach.add(m)
    return True


def smooth_masks(masks: frozenset[int]) -> bool:
    """Axiom L1: every nested pair ``K ⊂ L`` is linked by single-item additions."""
    for top in masks:
        below = sorted((k for k in masks if k & ~top == 0 and k != top), key=lambda k: -k.bit_count())
        reach = {top}
        for k in below:
            if not any(k | b in reach for b in _bits(top & ~k)):
                return False
            reach.add(k)
    return True


def consistent_masks(masks: frozenset[int], full: int) -> bool:
    """Axiom L2: ``K ⊂ L`` and ``K + {q}`` a state imply ``L ∪ {q}`` a state."""
    for k in masks:
        ups = [b for b in _bits(full & ~k) if k | b in masks]
        if not ups:
            continue
        for l in masks:
            if l != k and k & ~l == 0:
                for b in ups:
                    if l | b not in masks:
                        return False
    return True


def knowledge_structure_masks(masks: frozenset[int], full: int) -> bool:
    return 0 in masks and full in masks and _union(masks) == full


def _union(masks: Iterable[int]) -> int:
    total = 0
    for m in masks:
        total |= m
    return total


def learning_space_masks(masks: frozenset[int], full: int, route: str = "axioms") -> bool:
    if not knowledge_structure_masks(masks, full):
        return False
    if route == "axioms":
        return smooth_masks(masks) and consistent_masks(masks, full)
    if route == "closure":
        return union_closed_masks(masks) and well_graded_masks(masks)
    raise ValueError(f"unknown route {route!r}")


def union_close_masks(masks: Iterable[int]) -> set[int]:
    closure: set[int] = set()
    for m in masks:
        closure |= {m | c for c in closure}
        closure.add(m)
    return closure


# -- public predicates -------------------------------------------------------


def is_knowledge_structure(F: SetFamily) -> bool:
    """∅ and the union are states, and the union is the whole domain."""
    return knowledge_structure_masks(F.mask_set, F.domain.full_mask)


def is_partial_knowledge_structure(F: SetFamily) -> bool:
    return bool(F.masks) and F.union_mask in F.mask_set


def is_union_closed(F: SetFamily) -> bool:
    return union_closed_masks(F.mask_set)


def is_accessible(F: SetFamily) -> bool:
    return accessible_masks(F.mask_set)


def is_well_graded(F: SetFamily) -> bool:
    return well_graded_masks(F.mask_set)


def satisfies_L1(F: SetFamily) -> bool:
    return smooth_masks(F.mask_set)


def satisfies_L2(F: SetFamily) -> bool:
    return consistent_masks(F.mask_set, F.domain.full_mask)


def is_learning_space(F: SetFamily, route: str = "axioms") -> bool:
    """Knowledge structure satisfying L1 and L2.

    ``route="closure"`` instead tests union-closure plus wellgradedness; the two
    routes agree on every knowledge structure.
    """
    return learning_space_masks(F.mask_set, F.domain.full_mask, route)


def is_partial_learning_space(F: SetFamily) -> bool:
    return is_partial_knowledge_structure(F) and satisfies_L1(F) and satisfies_L2(F)


def union_close(F: SetFamily) -> SetFamily:
    return F.with_masks(union_close_masks(F.masks))


def tight_path(F: SetFamily, K: StateSet, L: StateSet) -> TightPath | None:
    """Shortest unit-step path from K to L inside F, if it is tight.

    The search never leaves the interval ``[K∩L, K∪L]``: every state on a
    tight path lies there.
    """
    _same_domain(K, L)
    for s in (K, L):
        if s not in F:
            raise NotInFamilyError(f"{s} is not a state of the family")
    lo, hi = K.mask & L.mask, K.mask | L.mask
    span = hi & ~lo
    members = F.mask_set
    parent = {K.mask: None}
    queue = deque([K.mask])
    while queue:
        m = queue.popleft()
        if m == L.mask:
            break
        for b in _bits(span):
            nxt = m ^ b
            if nxt in members and nxt not in parent:
                parent[nxt] = m
                queue.append(nxt)
    if L.mask not in parent:
        return None
    chain = []
    m = L.mask
    while m is not None:
        chain.append(m)
        m = parent[m]
    if len(chain) - 1 != (K.mask ^ L.mask).bit_count():
        return None
    return TightPath(tuple(StateSet(F.domain, m) for m in reversed(chain)))
