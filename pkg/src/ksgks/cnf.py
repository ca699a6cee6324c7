"""DIMACS CNF bridge for exactly-one covers.

The encoding is the standard pairwise one: per context, one at-least-one
clause over its variables plus an at-most-one clause for every pair.
Variable k maps to the k-th element id in ascending order; the mapping is
recorded in comment lines so external solver models can be pulled back to
element ids.  A small deterministic DPLL decides exported formulas
in-process for cross-checking.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .covers import CoverStructure

Clause = tuple[int, ...]


class DimacsError(ValueError):
    def __init__(self, lineno: int | None, message: str):
        self.lineno = lineno
        prefix = f"line {lineno}: " if lineno is not None else ""
        super().__init__(prefix + message)


@dataclass(frozen=True)
class CnfFormula:
    num_vars: int
    clauses: tuple[Clause, ...]
    # var k (1-based) -> element id, when known
    var_elements: tuple[int, ...] | None = None


def _element_order(cs: CoverStructure) -> list[int]:
    return sorted(cs.element_ids())


def build_cnf(cs: CoverStructure) -> CnfFormula:
    """Encode the cover's exactly-one constraints."""
    elements = _element_order(cs)
    var_of = {e: k for k, e in enumerate(elements, start=1)}
    clauses: list[Clause] = []
    for ctx in cs.contexts:
        members = sorted(var_of[e] for e in ctx.element_ids)
        clauses.append(tuple(members))
        for a, b in combinations(members, 2):
            clauses.append((-a, -b))
    return CnfFormula(
        num_vars=len(elements),
        clauses=tuple(clauses),
        var_elements=tuple(elements),
    )


def export_cnf(cs: CoverStructure) -> str:
    """DIMACS text: comment lines with the variable/element map, the
    problem line, then one clause per line ending in 0 (LF endings)."""
    f = build_cnf(cs)
    lines = []
    for k, e in enumerate(f.var_elements or (), start=1):
        lines.append(f"c var {k} = element {e}")
    lines.append(f"p cnf {f.num_vars} {len(f.clauses)}")
    for cl in f.clauses:
        lines.append(" ".join(str(x) for x in cl) + " 0")
    return "\n".join(lines) + "\n"


def parse_dimacs(text: str) -> CnfFormula:
    """Parse DIMACS CNF; clauses may span lines.  Errors carry the line
    number: malformed header, literal out of range, unterminated clause."""
    num_vars = None
    num_clauses = None
    clauses: list[Clause] = []
    pending: list[int] = []
    var_map: dict[int, int] = {}
    last_lineno = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        last_lineno = lineno
        line = raw.strip()
        if not line:
            continue
        if line.startswith("c"):
            fields = line.split()
            # pick up "c var <k> = element <id>" mapping comments
            if len(fields) == 6 and fields[1] == "var" and fields[3] == "=" and fields[4] == "element":
                try:
                    var_map[int(fields[2])] = int(fields[5])
                except ValueError:
                    pass
            continue
        if line.startswith("p"):
            fields = line.split()
            if len(fields) != 4 or fields[1] != "cnf":
                raise DimacsError(lineno, f"malformed header {line!r}")
            try:
                num_vars = int(fields[2])
                num_clauses = int(fields[3])
            except ValueError:
                raise DimacsError(lineno, f"malformed header {line!r}") from None
            if num_vars < 0 or num_clauses < 0:
                raise DimacsError(lineno, f"malformed header {line!r}")
            continue
        if num_vars is None:
            raise DimacsError(lineno, "clause before 'p cnf' header")
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise DimacsError(lineno, f"bad literal {tok!r}") from None
            if lit == 0:
                clauses.append(tuple(pending))
                pending = []
            else:
                if abs(lit) > num_vars:
                    raise DimacsError(lineno, f"literal {lit} out of range (1..{num_vars})")
                pending.append(lit)
    if pending:
        raise DimacsError(last_lineno, "unterminated clause at end of input")
    if num_vars is None:
        raise DimacsError(None, "missing 'p cnf' header")
    if num_clauses is not None and num_clauses != len(clauses):
        raise DimacsError(None, f"header declares {num_clauses} clauses, found {len(clauses)}")
    var_elements = None
    if var_map and sorted(var_map) == list(range(1, num_vars + 1)):
        var_elements = tuple(var_map[k] for k in range(1, num_vars + 1))
    return CnfFormula(num_vars=num_vars, clauses=tuple(clauses), var_elements=var_elements)


def verify_model(cs: CoverStructure, model: Iterable[int]) -> bool:
    """Check a DIMACS-style model (signed literals; unlisted variables
    count as false) against the cover's exactly-one constraints."""
    elements = _element_order(cs)
    true_vars = set()
    for lit in model:
        if lit > 0:
            true_vars.add(lit)
        elif lit < 0:
            true_vars.discard(-lit)
    if any(v > len(elements) for v in true_vars):
        return False
    values = {e: (1 if k in true_vars else 0) for k, e in enumerate(elements, start=1)}
    from .coloring import verify_exactly_one

    return verify_exactly_one(cs.contexts, values)


def solve_cnf(f: CnfFormula) -> tuple[bool, list[int] | None]:
    """Deterministic DPLL with unit propagation.

    Branches on the smallest unassigned variable, true first.  Returns
    (sat, model as sorted signed literals) -- complete over all
    num_vars variables when satisfiable.
    """
    if any(len(cl) == 0 for cl in f.clauses):
        return False, None

    def propagate(assign: dict[int, bool]) -> dict[int, bool] | None:
        assign = dict(assign)
        changed = True
        while changed:
            changed = False
            for cl in f.clauses:
                unassigned = []
                satisfied = False
                for lit in cl:
                    val = assign.get(abs(lit))
                    if val is None:
                        unassigned.append(lit)
                    elif (lit > 0) == val:
                        satisfied = True
                        break
                if satisfied:
                    continue
                if not unassigned:
                    return None
                if len(unassigned) == 1:
                    lit = unassigned[0]
                    assign[abs(lit)] = lit > 0
                    changed = True
        return assign

    def dpll(assign: dict[int, bool]) -> dict[int, bool] | None:
        assign = propagate(assign)
        if assign is None:
            return None
        var = next((v for v in range(1, f.num_vars + 1) if v not in assign), None)
        if var is None:
            return assign
        for val in (True, False):
            result = dpll({**assign, var: val})
            if result is not None:
                return result
        return None

    result = dpll({})
    if result is None:
        return False, None
    model = [v if result.get(v, False) else -v for v in range(1, f.num_vars + 1)]
    return True, model
