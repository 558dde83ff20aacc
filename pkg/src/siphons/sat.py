"""Iterated SAT enumeration of minimal siphons.

The solver is a small CDCL: two watched literals per clause, first-UIP
conflict learning with backjumping, no restarts, no clause deletion.
Decisions assign False before True so discovered models are biased small;
with the default "fixed" heuristic variables are picked lowest index
first, with "activity" a bump/decay score picks them (ties by index).

Enumeration solves, shrinks the model to an inclusion-minimal one by
re-solving under assumptions, posts a clause that excludes the found set
and all its supersets, and repeats until UNSAT or the budget runs out.
"""

import heapq
import time
from enum import Enum

from .encoding import Assignment, CnfFormula, VarMap, blocking_clause, encode_siphon, evaluate
from .net import PetriNet
from .search import Budget, BudgetClock, EnumerationResult, SearchStats

_RESCALE = 1e100
_DECAY = 1 / 0.95


class SolveStatus(Enum):
    SAT = "sat"
    UNSAT = "unsat"
    UNKNOWN = "unknown"


class SatSolver:
    """Incremental CDCL solver over a CnfFormula; clauses may be added between calls."""

    def __init__(self, formula: CnfFormula, heuristic: str = "fixed"):
        if heuristic not in ("fixed", "activity"):
            raise ValueError(f"unknown heuristic {heuristic!r}")
        self.num_vars = formula.num_vars
        self._use_activity = heuristic == "activity"
        n = self.num_vars
        self.assign = [0] * (n + 1)          # 0 unassigned, 1 true, -1 false
        self.level = [0] * (n + 1)
        self.reason: list[int | None] = [None] * (n + 1)
        self.trail: list[int] = []
        self.trail_lim: list[int] = []
        self.qhead = 0
        self.clauses: list[list[int]] = []   # positions 0 and 1 are watched
        self.watches: dict[int, list[int]] = {}
        for v in range(1, n + 1):
            self.watches[v] = []
            self.watches[-v] = []
        self.activity = [0.0] * (n + 1)
        self.var_inc = 1.0
        self._heap = [(0.0, v) for v in range(1, n + 1)]
        self._seen = [False] * (n + 1)
        self._unsat = False
        self.model: Assignment | None = None
        self.conflicts = 0
        self.decisions = 0
        self.propagations = 0
        for clause in formula.clauses:
            self.add_clause(clause)

    # -- assignment bookkeeping -------------------------------------------

    def _enqueue(self, lit: int, reason: int | None) -> None:
        v = lit if lit > 0 else -lit
        self.assign[v] = 1 if lit > 0 else -1
        self.level[v] = len(self.trail_lim)
        self.reason[v] = reason
        self.trail.append(lit)

    def _lit_value(self, lit: int):
        a = self.assign[lit if lit > 0 else -lit]
        if a == 0:
            return None
        return (a > 0) == (lit > 0)

    def _cancel_until(self, target: int) -> None:
        if len(self.trail_lim) <= target:
            return
        head = self.trail_lim[target]
        for lit in reversed(self.trail[head:]):
            v = lit if lit > 0 else -lit
            self.assign[v] = 0
            self.reason[v] = None
            heapq.heappush(self._heap, (-self.activity[v], v))
        del self.trail[head:]
        del self.trail_lim[target:]
        self.qhead = len(self.trail)

    # -- clause management ---------------------------------------------------

    def add_clause(self, literals) -> None:
        """Add a clause at the root level (any search state is unwound first)."""
        self._cancel_until(0)
        if self._unsat:
            return
        out, seen = [], set()
        for lit in literals:
            if not isinstance(lit, int) or lit == 0 or abs(lit) > self.num_vars:
                raise ValueError(f"bad literal {lit!r}")
            if -lit in seen:
                return  # tautology
            if lit not in seen:
                seen.add(lit)
                out.append(lit)
        live = []
        for lit in out:
            value = self._lit_value(lit)
            if value is True:
                return  # satisfied at root
            if value is None:
                live.append(lit)
        if not live:
            self._unsat = True
        elif len(live) == 1:
            self._enqueue(live[0], None)
            if self._propagate() is not None:
                self._unsat = True
        else:
            ci = len(self.clauses)
            self.clauses.append(live)
            self.watches[live[0]].append(ci)
            self.watches[live[1]].append(ci)

    # -- unit propagation ---------------------------------------------------

    def _propagate(self) -> int | None:
        """Propagate to fixpoint; returns a falsified clause index or None."""
        assign = self.assign
        clauses = self.clauses
        while self.qhead < len(self.trail):
            p = self.trail[self.qhead]
            self.qhead += 1
            false_lit = -p
            watchers = self.watches[false_lit]
            i = j = 0
            n_watch = len(watchers)
            while i < n_watch:
                ci = watchers[i]
                i += 1
                clause = clauses[ci]
                if clause[0] == false_lit:
                    clause[0], clause[1] = clause[1], clause[0]
                first = clause[0]
                a = assign[first if first > 0 else -first]
                if a != 0 and (a > 0) == (first > 0):
                    watchers[j] = ci
                    j += 1
                    continue
                for k in range(2, len(clause)):
                    other = clause[k]
                    a2 = assign[other if other > 0 else -other]
                    if a2 == 0 or (a2 > 0) == (other > 0):
                        clause[1], clause[k] = clause[k], clause[1]
                        self.watches[other].append(ci)
                        break
                else:
                    watchers[j] = ci
                    j += 1
                    if a == 0:
                        self.propagations += 1
                        self._enqueue(first, ci)
                    else:
                        while i < n_watch:
                            watchers[j] = watchers[i]
                            j += 1
                            i += 1
                        del watchers[j:]
                        self.qhead = len(self.trail)
                        return ci
            del watchers[j:]
        return None

    # -- conflict analysis ----------------------------------------------------

    def _bump(self, v: int) -> None:
        self.activity[v] += self.var_inc
        if self.activity[v] > _RESCALE:
            for u in range(1, self.num_vars + 1):
                self.activity[u] *= 1 / _RESCALE
            self.var_inc *= 1 / _RESCALE
            self._heap = [(-self.activity[u], u) for u in range(1, self.num_vars + 1)
                          if self.assign[u] == 0]
            heapq.heapify(self._heap)
            return
        if self.assign[v] == 0:
            heapq.heappush(self._heap, (-self.activity[v], v))

    def _analyze(self, confl: int) -> tuple[list[int], int]:
        """First-UIP learned clause and the level to jump back to."""
        seen = self._seen
        cur_level = len(self.trail_lim)
        learned: list[int] = []
        touched: list[int] = []
        counter = 0
        p = 0
        idx = len(self.trail) - 1
        clause = self.clauses[confl]
        while True:
            for q in clause:
                if q == p:
                    continue
                v = q if q > 0 else -q
                if not seen[v] and self.level[v] > 0:
                    seen[v] = True
                    touched.append(v)
                    if self._use_activity:
                        self._bump(v)
                    if self.level[v] >= cur_level:
                        counter += 1
                    else:
                        learned.append(q)
            while not seen[self.trail[idx] if self.trail[idx] > 0 else -self.trail[idx]]:
                idx -= 1
            p = self.trail[idx]
            idx -= 1
            counter -= 1
            if counter == 0:
                break
            clause = self.clauses[self.reason[p if p > 0 else -p]]
        for v in touched:
            seen[v] = False
        result = [-p] + learned
        if len(result) == 1:
            return result, 0
        best = 1
        for k in range(2, len(result)):
            v = result[k] if result[k] > 0 else -result[k]
            u = result[best] if result[best] > 0 else -result[best]
            if self.level[v] > self.level[u]:
                best = k
        result[1], result[best] = result[best], result[1]
        v = result[1] if result[1] > 0 else -result[1]
        return result, self.level[v]

    def _pick_branch(self) -> int:
        while True:
            while self._heap:
                negact, v = heapq.heappop(self._heap)
                if self.assign[v] == 0 and self.activity[v] == -negact:
                    return v
            self._heap = [(-self.activity[v], v) for v in range(1, self.num_vars + 1)
                          if self.assign[v] == 0]
            heapq.heapify(self._heap)

    # -- main search ----------------------------------------------------------

    def solve(self, assumptions=(), budget: Budget | None = None) -> SolveStatus:
        """SAT with self.model set, UNSAT (under the assumptions), or UNKNOWN on budget."""
        self._cancel_until(0)
        self.model = None
        if self._unsat:
            return SolveStatus.UNSAT
        assumptions = tuple(assumptions)
        for lit in assumptions:
            if not isinstance(lit, int) or lit == 0 or abs(lit) > self.num_vars:
                raise ValueError(f"bad assumption {lit!r}")
        budget = budget or Budget()
        deadline = None
        if budget.max_ms is not None:
            deadline = time.perf_counter() + budget.max_ms / 1000.0
        conflicts_here = 0

        if self._propagate() is not None:
            self._unsat = True
            return SolveStatus.UNSAT
        while True:
            confl = self._propagate()
            if confl is not None:
                self.conflicts += 1
                conflicts_here += 1
                if not self.trail_lim:
                    self._unsat = True
                    return SolveStatus.UNSAT
                learned, back = self._analyze(confl)
                self._cancel_until(back)
                if len(learned) == 1:
                    self._enqueue(learned[0], None)
                else:
                    ci = len(self.clauses)
                    self.clauses.append(learned)
                    self.watches[learned[0]].append(ci)
                    self.watches[learned[1]].append(ci)
                    self._enqueue(learned[0], ci)
                if self._use_activity:
                    self.var_inc *= _DECAY
                if budget.max_conflicts is not None and conflicts_here >= budget.max_conflicts:
                    self._cancel_until(0)
                    return SolveStatus.UNKNOWN
                if deadline is not None and conflicts_here % 64 == 0 \
                        and time.perf_counter() >= deadline:
                    self._cancel_until(0)
                    return SolveStatus.UNKNOWN
                continue
            advanced = False
            while len(self.trail_lim) < len(assumptions):
                lit = assumptions[len(self.trail_lim)]
                value = self._lit_value(lit)
                if value is False:
                    self._cancel_until(0)
                    return SolveStatus.UNSAT
                self.trail_lim.append(len(self.trail))
                if value is None:
                    self._enqueue(lit, None)
                    advanced = True
                    break
            if advanced:
                continue
            if len(self.trail) == self.num_vars:
                self.model = tuple(self.assign[v] == 1 for v in range(1, self.num_vars + 1))
                return SolveStatus.SAT
            var = self._pick_branch()
            self.decisions += 1
            self.trail_lim.append(len(self.trail))
            self._enqueue(-var, None)


def minimize_model(formula: CnfFormula, model: Assignment) -> Assignment:
    """Shrink a satisfying assignment to one whose true-set is inclusion-minimal.

    Repeatedly requires a strict subset of the current true-set (everything
    outside it assumed false, at least one inside it false) until UNSAT.
    """
    if not evaluate(formula, model):
        raise ValueError("assignment does not satisfy the formula")
    solver = SatSolver(formula)
    current = tuple(model)
    while True:
        trues = [v for v in range(1, formula.num_vars + 1) if current[v - 1]]
        solver.add_clause([-v for v in trues])
        status = solver.solve(assumptions=[-v for v in range(1, formula.num_vars + 1)
                                           if not current[v - 1]])
        if status is SolveStatus.UNSAT:
            return current
        current = solver.model


def enumerate_minimal_sat(net: PetriNet, budget: Budget | None = None,
                          heuristic: str = "fixed") -> EnumerationResult:
    """All minimal siphons by iterated SAT with non-superset blocking clauses.

    Every shrink clause posted during minimization is itself a blocking
    clause for a (possibly non-minimal) siphon and is subsumed by the final
    one, so a single incremental solver serves the whole run. On budget
    exhaustion the result is returned as found so far, flagged timed out.
    """
    formula, varmap = encode_siphon(net)
    solver = SatSolver(formula, heuristic=heuristic)
    clock = BudgetClock(budget)
    stats = SearchStats()
    result = EnumerationResult(stats=stats)

    def step_budget() -> Budget | None:
        left_conf = clock.conflicts_left()
        left_ms = None
        if clock.deadline is not None:
            left_ms = max(0.0, (clock.deadline - time.perf_counter()) * 1000.0)
        if left_conf is None and left_ms is None:
            return None
        return Budget(max_conflicts=left_conf, max_ms=left_ms)

    def run_solve(assumptions=()):
        before = solver.conflicts
        status = solver.solve(assumptions=assumptions, budget=step_budget())
        clock.conflicts += solver.conflicts - before
        stats.solve_calls += 1
        return status

    while True:
        if clock.exhausted():
            stats.timed_out = True
            break
        status = run_solve()
        if status is SolveStatus.UNKNOWN:
            stats.timed_out = True
            break
        if status is SolveStatus.UNSAT:
            break
        current = varmap.true_places(solver.model)
        minimal = None
        while True:
            solver.add_clause(blocking_clause(current, varmap))
            status = run_solve(assumptions=[-varmap.var(p) for p in range(len(net.places))
                                            if p not in current])
            stats.minimize_steps += 1
            if status is SolveStatus.UNKNOWN:
                stats.timed_out = True
                break
            if status is SolveStatus.UNSAT:
                minimal = current
                break
            current = varmap.true_places(solver.model)
        if minimal is None:
            break
        if not net.is_siphon(minimal):
            raise RuntimeError("enumerated set fails the siphon predicate")
        if any(prev <= minimal or minimal <= prev for prev in result.sets):
            raise RuntimeError("enumerated sets are not an antichain")
        result.sets.append(minimal)

    stats.conflicts = solver.conflicts
    stats.decisions = solver.decisions
    stats.elapsed_ms = clock.elapsed_ms
    return result
