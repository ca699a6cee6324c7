"""Deciding exactly-one 0/1 assignments over a context cover.

search_assignment is the complete decision procedure: depth-first over
elements with zero-propagation (a 1 forces 0 on every co-context element;
a context forced all-0 is a conflict).  exhaustive_oracle is the
independent brute-force check over all 2^E assignments for E <= 25.
criticality_report deletes one element at a time and reports whether the
noncolorability collapses.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

from .covers import Context, CoverStructure
from .kernels import MAX_SCAN_BITS, scan_exactly_one

SAT = "SAT"
UNSAT = "UNSAT"

DROP_CONTEXT = "drop"
SHRINK_CONTEXT = "shrink"


@dataclass(frozen=True)
class SearchResult:
    status: str
    witness: dict[int, int] | None
    nodes_visited: int
    elapsed: float
    solutions: int | None = None  # total count, exhaustive oracle only


@dataclass(frozen=True)
class DeletionOutcome:
    collapses: bool  # deletion made the instance satisfiable
    witness: dict[int, int] | None


@dataclass(frozen=True)
class CriticalityReport:
    semantics: str
    per_element: dict[int, DeletionOutcome]
    critical: bool  # every single deletion collapses the proof


def verify_exactly_one(contexts: Sequence[Context], values: dict[int, int]) -> bool:
    """Independent witness check: each context holds exactly one value-1
    element and every referenced element is assigned 0 or 1."""
    for ctx in contexts:
        ones = 0
        for e in ctx.element_ids:
            v = values.get(e)
            if v not in (0, 1):
                return False
            ones += v
        if ones != 1:
            return False
    return True


class _Propagator:
    """Backtracking state: per-context unassigned/one counters plus an
    undo trail.  A decision 1 forces 0 on its co-context elements; a
    conflict is a second 1 in a context or a context gone all-0."""

    __slots__ = ("ctx_elems", "elem_ctxs", "values", "unassigned", "ones", "trail")

    def __init__(self, contexts: Sequence[Context], elements: Sequence[int]):
        self.ctx_elems = [tuple(c.element_ids) for c in contexts]
        self.elem_ctxs: dict[int, list[int]] = {e: [] for e in elements}
        for k, elems in enumerate(self.ctx_elems):
            for e in elems:
                self.elem_ctxs[e].append(k)
        self.values: dict[int, int] = {}
        self.unassigned = [len(elems) for elems in self.ctx_elems]
        self.ones = [0] * len(self.ctx_elems)
        self.trail: list[int] = []

    def _set(self, e: int, v: int) -> bool:
        """Record e := v; False on conflict."""
        self.values[e] = v
        self.trail.append(e)
        ok = True
        for k in self.elem_ctxs[e]:
            self.unassigned[k] -= 1
            if v == 1:
                self.ones[k] += 1
                if self.ones[k] > 1:
                    ok = False
            elif self.ones[k] == 0 and self.unassigned[k] == 0:
                ok = False  # context forced all-0
        return ok

    def assign(self, e: int, v: int) -> bool:
        """Assign a decision value and propagate; False on conflict."""
        if not self._set(e, v):
            return False
        if v == 0:
            return True
        for k in self.elem_ctxs[e]:
            for other in self.ctx_elems[k]:
                if other not in self.values and not self._set(other, 0):
                    return False
        return True

    def mark(self) -> int:
        return len(self.trail)

    def undo(self, mark: int) -> None:
        while len(self.trail) > mark:
            e = self.trail.pop()
            v = self.values.pop(e)
            for k in self.elem_ctxs[e]:
                self.unassigned[k] += 1
                if v == 1:
                    self.ones[k] -= 1


def _decision_order(contexts: Sequence[Context], elements: Sequence[int]) -> list[int]:
    # most-constrained first: highest incidence, ties by ascending id
    inc = {e: 0 for e in elements}
    for c in contexts:
        for e in c.element_ids:
            inc[e] += 1
    return sorted(elements, key=lambda e: (-inc[e], e))


def _search_branch(
    contexts: Sequence[Context],
    elements: Sequence[int],
    order: Sequence[int],
    preassign: Sequence[tuple[int, int]],
) -> tuple[bool, dict[int, int] | None, int]:
    """Backtracking core with some decisions fixed up front.

    Returns (sat, witness over `elements`, nodes).  nodes counts every
    decision assignment tried, the preassigned ones included.
    """
    prop = _Propagator(contexts, elements)
    if any(n == 0 for n in prop.unassigned):
        return False, None, 0  # an empty context can never hold a 1
    nodes = 0
    for e, v in preassign:
        nodes += 1
        if not prop.assign(e, v):
            return False, None, nodes

    def descend() -> bool:
        nonlocal nodes
        nxt = next((e for e in order if e not in prop.values), None)
        if nxt is None:
            return True
        for v in (1, 0):
            nodes += 1
            m = prop.mark()
            if prop.assign(nxt, v) and descend():
                return True
            prop.undo(m)
        return False

    if descend():
        return True, dict(prop.values), nodes
    return False, None, nodes


def search_assignment(cs: CoverStructure, jobs: int = 1) -> SearchResult:
    """Complete backtracking decision of exactly-one satisfiability.

    Deterministic in serial mode: the decision order is fixed (highest
    incidence first, ascending id on ties) and value 1 is tried before 0,
    so nodes_visited and the witness are reproducible run to run.  With
    jobs > 1 the two branches of the first decision run concurrently and
    the value-1 branch is preferred on SAT, so status and witness still
    match the serial result.

    A cover with no contexts is vacuously satisfiable (all-zero witness).
    SAT witnesses are re-verified independently before being returned.
    """
    t0 = time.perf_counter()
    elements = cs.element_ids()
    contexts = cs.contexts
    order = _decision_order(contexts, elements)

    if jobs > 1 and order:
        root = order[0]
        with ThreadPoolExecutor(max_workers=2) as pool:
            futs = [
                pool.submit(_search_branch, contexts, elements, order, [(root, v)])
                for v in (1, 0)
            ]
            results = [f.result() for f in futs]
        nodes = sum(r[2] for r in results)
        sat, witness = False, None
        for s, w, _ in results:
            if s:
                sat, witness = True, w
                break
    else:
        sat, witness, nodes = _search_branch(contexts, elements, order, [])

    elapsed = time.perf_counter() - t0
    if sat:
        witness = {e: witness.get(e, 0) for e in elements}
        if not verify_exactly_one(contexts, witness):
            raise RuntimeError("internal error: witness failed independent re-verification")
        return SearchResult(SAT, witness, nodes, elapsed)
    return SearchResult(UNSAT, None, nodes, elapsed)


def exhaustive_oracle(cs: CoverStructure, backend: str | None = None) -> SearchResult:
    """Brute-force scan of all 2^E assignments (E <= 25).

    Independent of search_assignment: contexts become bitmasks and every
    assignment is tested for exactly-one per context.  The full space is
    always scanned; `solutions` carries the total count and the witness
    is the lowest satisfying assignment.
    """
    t0 = time.perf_counter()
    elements = cs.element_ids()
    if len(elements) > MAX_SCAN_BITS:
        raise ValueError(
            f"exhaustive oracle supports at most {MAX_SCAN_BITS} elements, "
            f"got {len(elements)}"
        )
    pos = {e: i for i, e in enumerate(elements)}
    masks = [sum(1 << pos[e] for e in c.element_ids) for c in cs.contexts]
    count, first = scan_exactly_one(masks, len(elements), backend=backend)
    elapsed = time.perf_counter() - t0
    if count == 0:
        return SearchResult(UNSAT, None, 1 << len(elements), elapsed, solutions=0)
    witness = {e: (first >> pos[e]) & 1 for e in elements}
    if not verify_exactly_one(cs.contexts, witness):
        raise RuntimeError("internal error: oracle witness failed re-verification")
    return SearchResult(SAT, witness, 1 << len(elements), elapsed, solutions=count)


def delete_element(cs: CoverStructure, element: int, semantics: str = DROP_CONTEXT) -> CoverStructure:
    """The cover after removing one element.

    drop semantics discards every context containing the element (an
    incomplete measurement imposes no constraint); shrink semantics keeps
    those contexts minus the element, still demanding exactly one 1.  The
    result is a bare combinatorial cover (no ray set bound).
    """
    if semantics not in (DROP_CONTEXT, SHRINK_CONTEXT):
        raise ValueError(f"unknown deletion semantics {semantics!r}")
    new_contexts = []
    for c in cs.contexts:
        if element not in c.element_ids:
            new_contexts.append(c)
        elif semantics == SHRINK_CONTEXT:
            kept = tuple(e for e in c.element_ids if e != element)
            new_contexts.append(Context(name=c.name, element_ids=kept, weight=c.weight))
    return CoverStructure(contexts=tuple(new_contexts), kind=cs.kind, rayset=None)


def criticality_report(
    cs: CoverStructure, semantics: str = DROP_CONTEXT, jobs: int = 1
) -> CriticalityReport:
    """Single-deletion analysis: for every element, remove it and decide
    the reduced instance.  collapses=True means the reduced instance is
    satisfiable, i.e. that element was essential to the noncolorability.
    The cover is critical iff every deletion collapses it."""
    per: dict[int, DeletionOutcome] = {}
    for e in cs.element_ids():
        reduced = delete_element(cs, e, semantics)
        res = search_assignment(reduced, jobs=jobs)
        per[e] = DeletionOutcome(collapses=(res.status == SAT), witness=res.witness)
    critical = all(o.collapses for o in per.values()) and bool(per)
    return CriticalityReport(semantics=semantics, per_element=per, critical=critical)


def format_criticality(report: CriticalityReport) -> str:
    """Plain-text table: `<id> <SAT|UNSAT> [witness ids valued 1]`."""
    lines = []
    for e in sorted(report.per_element):
        out = report.per_element[e]
        if out.collapses:
            ones = " ".join(
                str(i) for i in sorted(k for k, v in (out.witness or {}).items() if v == 1)
            )
            lines.append(f"{e} SAT {ones}".rstrip())
        else:
            lines.append(f"{e} UNSAT")
    return "\n".join(lines) + "\n"
