"""Siphon/trap analysis: engine dispatch, trap enumeration through the dual
net, containment filtering, maximal-trap extraction, marking reports, and
small brute-force oracles used to cross-check the engines."""

from collections.abc import Iterable
from dataclasses import dataclass, field

from .branch_bound import Strategy, enumerate_minimal_bb
from .net import PetriNet, PlaceSet
from .sat import enumerate_minimal_sat
from .search import Budget, BudgetClock, EnumerationResult, SearchStats

ENGINES = ("sat", "bb", "oracle")


def canonical_order(net: PetriNet, sets: Iterable[PlaceSet]) -> list[PlaceSet]:
    """Sort place sets by size, then by their sorted place names."""
    return sorted(sets, key=lambda s: (len(s), net.set_names(s)))


def enumerate_minimal_siphons(net: PetriNet, engine: str = "sat",
                              budget: Budget | None = None,
                              strategy: Strategy | None = None,
                              restart: bool = False, trace=None) -> EnumerationResult:
    """All minimal siphons, through the chosen engine."""
    if trace is not None and engine != "bb":
        raise ValueError("search traces are only produced by the bb engine")
    if engine == "sat":
        return enumerate_minimal_sat(net, budget=budget)
    if engine == "bb":
        return enumerate_minimal_bb(net, strategy=strategy, budget=budget,
                                    restart=restart, trace=trace)
    if engine == "oracle":
        clock = BudgetClock(budget)
        sets = brute_force_minimal_siphons(net)
        stats = SearchStats(solve_calls=1, elapsed_ms=clock.elapsed_ms)
        return EnumerationResult(sets=sets, stats=stats)
    raise ValueError(f"unknown engine {engine!r}; expected one of {ENGINES}")


def enumerate_minimal_traps(net: PetriNet, engine: str = "sat",
                            budget: Budget | None = None,
                            strategy: Strategy | None = None,
                            restart: bool = False, trace=None) -> EnumerationResult:
    """All minimal traps: the minimal siphons of the arc-reversed net."""
    return enumerate_minimal_siphons(net.dual(), engine=engine, budget=budget,
                                     strategy=strategy, restart=restart, trace=trace)


def filter_containing(sets: Iterable[PlaceSet], required: Iterable[int]) -> list[PlaceSet]:
    """Keep the sets that contain every required place.

    Minimal siphons containing given places are found by enumerating all
    minimal siphons first and filtering after; requiring the places inside
    the search would surface sets that are only minimal among the
    constrained ones.
    """
    required = frozenset(required)
    return [s for s in sets if required <= s]


def max_trap_within(net: PetriNet, s: Iterable[int]) -> PlaceSet:
    """The unique maximal trap inside s (possibly empty).

    Greatest fixpoint: repeatedly drop any place with a consumer that does
    not produce into the remaining set.
    """
    current = set(net._check_set(s))
    while True:
        producers = frozenset().union(*(net.pre_transitions(p) for p in current)) \
            if current else frozenset()
        dropped = [p for p in current if not net.post_transitions(p) <= producers]
        if not dropped:
            return frozenset(current)
        current.difference_update(dropped)


def _subset_masks(net: PetriNet, predicate_pre, predicate_post, max_places: int):
    """Inclusion-minimal nonempty subsets passing pre<=post over bitmasks."""
    n = len(net.places)
    if n == 0:
        return []
    if n > max_places:
        raise ValueError(f"net has {n} places; brute force is capped at {max_places}")
    pre = [0] * n
    post = [0] * n
    for p in range(n):
        for t in predicate_pre(p):
            pre[p] |= 1 << t
        for t in predicate_post(p):
            post[p] |= 1 << t
    hits = []
    for mask in range(1, 1 << n):
        pre_u = 0
        post_u = 0
        m = mask
        while m:
            low = m & -m
            p = low.bit_length() - 1
            pre_u |= pre[p]
            post_u |= post[p]
            m ^= low
        if pre_u & ~post_u == 0:
            hits.append(mask)
    hits.sort(key=lambda m: bin(m).count("1"))
    minimal: list[int] = []
    for mask in hits:
        if not any(kept & mask == kept for kept in minimal):
            minimal.append(mask)
    return minimal


def brute_force_minimal_siphons(net: PetriNet, max_places: int = 20) -> list[PlaceSet]:
    """Oracle: scan all nonempty place subsets; practical up to ~15 places."""
    masks = _subset_masks(net, net.pre_transitions, net.post_transitions, max_places)
    sets = [frozenset(p for p in range(len(net.places)) if mask >> p & 1) for mask in masks]
    return canonical_order(net, sets)


def brute_force_minimal_traps(net: PetriNet, max_places: int = 20) -> list[PlaceSet]:
    """Trap oracle built directly on the trap condition, no dualization."""
    masks = _subset_masks(net, net.post_transitions, net.pre_transitions, max_places)
    sets = [frozenset(p for p in range(len(net.places)) if mask >> p & 1) for mask in masks]
    return canonical_order(net, sets)


@dataclass
class SiphonReportRow:
    """One minimal siphon with its maximal inner trap and marking status."""

    siphon: tuple[str, ...]
    proper: bool
    trap: tuple[str, ...]
    trap_marked: bool


@dataclass
class SiphonTrapReport:
    """Per-siphon rows plus the deadlock-freedom style summary.

    `all_marked` is True when every minimal siphon contains an initially
    marked trap (vacuously true when there are no siphons); with
    `timed_out` set the rows cover only the siphons found in budget.
    """

    rows: list[SiphonReportRow] = field(default_factory=list)
    all_marked: bool = True
    timed_out: bool = False

    def to_dict(self) -> dict:
        return {
            "siphons": [
                {
                    "siphon": list(row.siphon),
                    "proper": row.proper,
                    "max_trap": list(row.trap),
                    "trap_marked": row.trap_marked,
                }
                for row in self.rows
            ],
            "every_siphon_has_marked_trap": self.all_marked,
            "timed_out": self.timed_out,
        }

    def to_text(self) -> str:
        lines = []
        for row in self.rows:
            flags = "proper" if row.proper else "not proper"
            trap = "{" + ", ".join(row.trap) + "}"
            marked = "marked" if row.trap_marked else "unmarked"
            lines.append("siphon {" + ", ".join(row.siphon) + f"}} ({flags}): "
                         f"max trap {trap} ({marked})")
        verdict = "yes" if self.all_marked else "no"
        lines.append(f"every minimal siphon contains a marked trap: {verdict}"
                     + (" (partial: timed out)" if self.timed_out else ""))
        return "\n".join(lines)


def siphon_trap_report(net: PetriNet, marking, engine: str = "sat",
                       budget: Budget | None = None) -> SiphonTrapReport:
    """For each minimal siphon: its maximal inner trap and whether that trap
    is marked under the given marking."""
    net._check_marking(marking)
    result = enumerate_minimal_siphons(net, engine=engine, budget=budget)
    report = SiphonTrapReport(timed_out=result.stats.timed_out)
    for siphon in canonical_order(net, result.sets):
        trap = max_trap_within(net, siphon)
        marked = any(marking[p] > 0 for p in trap)
        report.rows.append(SiphonReportRow(
            siphon=net.set_names(siphon),
            proper=net.is_proper_siphon(siphon),
            trap=net.set_names(trap),
            trap_marked=marked,
        ))
        if not marked:
            report.all_marked = False
    return report
