"""Context covers over ray sets.

A context is a named element set with a rational weight: an orthogonal
basis (weight 1) or a weighted POVM grouping.  A cover is the full
hypergraph of contexts; the exactly-one-value-1 constraint per context is
what the coloring module decides.  This module builds KS covers (all
complete orthogonal bases) and GKS covers (verified weighted POVM
groupings), and computes parity certificates of noncolorability.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from . import algebra
from .algebra import TOL_ORTHO, rational
from .rays import BACKEND_EXACT, Ray, RaySet

KIND_BASIS = "basis"
KIND_POVM = "povm"


class CoverError(ValueError):
    pass


class CompletenessError(CoverError):
    """A claimed POVM grouping does not resolve the identity."""

    def __init__(self, context_name: str, residual):
        self.context_name = context_name
        self.residual = residual
        super().__init__(
            f"context {context_name!r} is not a POVM: weight*sum(projectors) != identity; "
            f"residual {_render_residual(residual)}"
        )


def _render_residual(residual) -> str:
    if isinstance(residual, float):
        return f"max-entry deviation {residual:.3e}"
    rows = ["[" + ", ".join(str(x) for x in row) + "]" for row in residual]
    return "[" + "; ".join(rows) + "]"


@dataclass(frozen=True)
class Context:
    """A named measurement: element ids plus the projector multiplier."""

    name: str
    element_ids: tuple[int, ...]
    weight: Fraction = Fraction(1)

    def __post_init__(self):
        if len(set(self.element_ids)) != len(self.element_ids):
            raise CoverError(f"context {self.name!r} repeats an element id")
        if self.weight <= 0:
            raise CoverError(f"context {self.name!r} has non-positive weight")

    def __len__(self) -> int:
        return len(self.element_ids)


@dataclass(frozen=True)
class CoverStructure:
    """A hypergraph of contexts, optionally bound to its ray set."""

    contexts: tuple[Context, ...]
    kind: str
    rayset: RaySet | None = None
    _incidence: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.kind not in (KIND_BASIS, KIND_POVM):
            raise CoverError(f"unknown cover kind {self.kind!r}")
        names = [c.name for c in self.contexts]
        if len(set(names)) != len(names):
            raise CoverError("duplicate context names")
        if self.rayset is not None:
            known = set(self.rayset.ids())
            for c in self.contexts:
                missing = set(c.element_ids) - known
                if missing:
                    raise CoverError(
                        f"context {c.name!r} references unknown element ids {sorted(missing)}"
                    )
        incidence = {e: 0 for e in self.element_ids()}
        for c in self.contexts:
            for e in c.element_ids:
                incidence[e] += 1
        object.__setattr__(self, "_incidence", incidence)

    def element_ids(self) -> tuple[int, ...]:
        """All element ids: the ray set's ids when bound, else the union
        of the contexts."""
        if self.rayset is not None:
            return tuple(sorted(self.rayset.ids()))
        return tuple(sorted({e for c in self.contexts for e in c.element_ids}))

    def incidence(self) -> dict[int, int]:
        return dict(self._incidence)

    def context(self, name: str) -> Context:
        for c in self.contexts:
            if c.name == name:
                return c
        raise KeyError(f"no context named {name!r}")


@dataclass(frozen=True)
class ParityCertificate:
    """Noncolorability witness: an odd number of contexts in which every
    element occurs an even (and nonzero) number of times.

    When valid, counting value-1 occurrences over all contexts is odd
    (one per context) yet even (each value-1 element counted an even
    number of times), so no exactly-one assignment can exist.
    """

    context_count: int
    incidence_counts: dict[int, int]
    valid: bool


def parity_certificate(cs: CoverStructure) -> ParityCertificate:
    inc = cs.incidence()
    n = len(cs.contexts)
    valid = (
        n % 2 == 1
        and len(inc) > 0
        and all(k > 0 and k % 2 == 0 for k in inc.values())
    )
    return ParityCertificate(context_count=n, incidence_counts=inc, valid=valid)


# ---------------------------------------------------------------------------
# Orthogonality structure


def _orthogonal(rs: RaySet, a: Ray, b: Ray, tol: float) -> bool:
    if rs.backend == BACKEND_EXACT:
        return algebra.dot(a.coords, b.coords) == 0
    return abs(algebra.cdot(a.coords, b.coords)) < tol


def orthogonality_graph(rs: RaySet, tol: float = TOL_ORTHO) -> dict[int, frozenset[int]]:
    """Adjacency over ray ids: an edge iff the rays are orthogonal
    (exactly, or within tol on the floating backend)."""
    adj: dict[int, set[int]] = {r.id: set() for r in rs.rays}
    for a, b in combinations(rs.rays, 2):
        if _orthogonal(rs, a, b, tol):
            adj[a.id].add(b.id)
            adj[b.id].add(a.id)
    return {i: frozenset(s) for i, s in adj.items()}


def enumerate_bases(rs: RaySet, tol: float = TOL_ORTHO) -> list[Context]:
    """All complete orthogonal bases (size-dim cliques of the
    orthogonality graph), as weight-1 contexts named T1, T2, ... in
    lexicographic order of their sorted id tuples.

    Ordered extension over ascending ids; every returned clique is
    re-verified pairwise before being emitted.  Fine for n <= 60 rays.
    """
    if rs.dim < 2:
        raise CoverError("basis enumeration needs dim >= 2")
    adj = orthogonality_graph(rs, tol)
    ids = sorted(adj)
    found: list[tuple[int, ...]] = []

    def extend(clique: list[int], candidates: list[int]) -> None:
        if len(clique) == rs.dim:
            found.append(tuple(clique))
            return
        # not enough candidates left to complete a basis
        if len(clique) + len(candidates) < rs.dim:
            return
        for idx, c in enumerate(candidates):
            clique.append(c)
            extend(clique, [x for x in candidates[idx + 1 :] if x in adj[c]])
            clique.pop()

    extend([], ids)
    for t in found:
        assert all(
            _orthogonal(rs, rs.ray(a), rs.ray(b), tol) for a, b in combinations(t, 2)
        ), f"clique {t} failed orthogonality re-verification"
    return [
        Context(name=f"T{k}", element_ids=t, weight=Fraction(1))
        for k, t in enumerate(sorted(found), start=1)
    ]


def build_ks_cover(rs: RaySet, tol: float = TOL_ORTHO) -> CoverStructure:
    """Basis cover: every complete orthogonal basis, weight 1."""
    return CoverStructure(contexts=tuple(enumerate_bases(rs, tol)), kind=KIND_BASIS, rayset=rs)


def _context_projector_sum(rs: RaySet, ctx: Context):
    """weight * sum of element projectors; exact or floating per backend."""
    if rs.backend == BACKEND_EXACT:
        mats = [algebra.projector(rs.ray(e).coords) for e in ctx.element_ids]
        return algebra.weighted_sum(mats, ctx.weight, dim=rs.dim)
    mats = [algebra.cprojector(rs.ray(e).coords) for e in ctx.element_ids]
    return algebra.weighted_sum_c(mats, ctx.weight)


def context_identity_residual(rs: RaySet, ctx: Context):
    """None if weight * sum(projectors) is the identity (exactly, or the
    float deviation when within reach); otherwise the residual."""
    total = _context_projector_sum(rs, ctx)
    if rs.backend == BACKEND_EXACT:
        if algebra.is_identity(total):
            return None
        return algebra.mat_add(total, algebra.mat_scale(-1, algebra.identity_matrix(rs.dim)))
    return algebra.identity_residual_c(total)


def _resolve_group(
    group, bases_by_name: dict[str, Context] | None
) -> tuple[tuple[int, ...], str]:
    items = list(group)
    if not items:
        raise CoverError("empty POVM group")
    if all(isinstance(x, str) for x in items):
        if bases_by_name is None:
            raise CoverError("named groups need a ray set to enumerate bases from")
        ids: list[int] = []
        for name in items:
            if name not in bases_by_name:
                raise CoverError(f"unknown basis name {name!r} in POVM group")
            ids.extend(bases_by_name[name].element_ids)
        return tuple(sorted(set(ids))), "+".join(items)
    if all(isinstance(x, int) for x in items):
        return tuple(sorted(set(items))), ""
    raise CoverError("a POVM group must be all basis names or all ray ids")


def build_gks_cover(
    rs: RaySet,
    groups: Sequence[Iterable],
    weight,
    tol: float = algebra.TOL_ID,
) -> CoverStructure:
    """POVM cover: one context per group, all carrying `weight`.

    Each group is either a list of basis names (resolved against
    enumerate_bases of rs) or a collection of ray ids.  Every context is
    verified to resolve the identity -- exactly on the exact backend,
    within tol on the floating one -- and a failure raises
    CompletenessError naming the offending group.
    """
    weight = rational(weight)
    if weight <= 0:
        raise CoverError("POVM weight must be positive")
    bases_by_name = None
    if any(isinstance(x, str) for g in groups for x in g):
        bases_by_name = {c.name: c for c in enumerate_bases(rs)}
    contexts = []
    for k, group in enumerate(groups, start=1):
        ids, name = _resolve_group(group, bases_by_name)
        ctx = Context(name=name or f"P{k}", element_ids=ids, weight=weight)
        contexts.append(ctx)
    cover = CoverStructure(contexts=tuple(contexts), kind=KIND_POVM, rayset=rs)
    for ctx in cover.contexts:
        residual = context_identity_residual(rs, ctx)
        failed = residual is not None and (
            rs.backend == BACKEND_EXACT or residual > tol
        )
        if failed:
            raise CompletenessError(ctx.name, residual)
    return cover


def verify_cover(cs: CoverStructure, tol: float = algebra.TOL_ID) -> list[str]:
    """Re-verify every context from scratch; returns problem descriptions
    (empty means the cover checks out).

    Basis contexts must have dim pairwise-orthogonal elements; POVM
    contexts must resolve the identity under their weight.
    """
    problems = []
    rs = cs.rayset
    if rs is None:
        return ["cover has no ray set bound; nothing to verify geometrically"]
    for ctx in cs.contexts:
        if cs.kind == KIND_BASIS:
            if len(ctx) != rs.dim:
                problems.append(f"context {ctx.name}: {len(ctx)} elements, expected {rs.dim}")
                continue
            for a, b in combinations(ctx.element_ids, 2):
                if not _orthogonal(rs, rs.ray(a), rs.ray(b), TOL_ORTHO):
                    problems.append(f"context {ctx.name}: rays {a} and {b} not orthogonal")
        else:
            residual = context_identity_residual(rs, ctx)
            if residual is not None and (rs.backend == BACKEND_EXACT or residual > tol):
                problems.append(
                    f"context {ctx.name}: not a POVM; residual {_render_residual(residual)}"
                )
    return problems


# ---------------------------------------------------------------------------
# Cover text format: `kind basis|povm`, `weight p/q`, one
# `ctx <name> <id> <id> ...` line per context; `#` comments.


class CoverFormatError(ValueError):
    pass


def format_cover(cs: CoverStructure) -> str:
    weights = {c.weight for c in cs.contexts}
    if len(weights) > 1:
        raise CoverFormatError("cover text format requires a uniform context weight")
    weight = weights.pop() if weights else Fraction(1)
    lines = [f"kind {cs.kind}", f"weight {weight}"]
    for c in cs.contexts:
        lines.append(f"ctx {c.name} " + " ".join(str(e) for e in c.element_ids))
    return "\n".join(lines) + "\n"


def parse_cover(text: str, rayset: RaySet | None = None) -> CoverStructure:
    kind = None
    weight = Fraction(1)
    contexts: list[Context] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if fields[0] == "kind":
            if len(fields) != 2 or fields[1] not in (KIND_BASIS, KIND_POVM):
                raise CoverFormatError(f"line {lineno}: expected 'kind basis' or 'kind povm'")
            kind = fields[1]
        elif fields[0] == "weight":
            try:
                weight = Fraction(fields[1])
            except (IndexError, ValueError):
                raise CoverFormatError(f"line {lineno}: bad weight") from None
        elif fields[0] == "ctx":
            if len(fields) < 3:
                raise CoverFormatError(f"line {lineno}: context needs a name and element ids")
            try:
                ids = tuple(int(t) for t in fields[2:])
            except ValueError:
                raise CoverFormatError(f"line {lineno}: element ids must be integers") from None
            try:
                contexts.append(Context(name=fields[1], element_ids=ids, weight=weight))
            except CoverError as e:
                raise CoverFormatError(f"line {lineno}: {e}") from None
        else:
            raise CoverFormatError(f"line {lineno}: unknown directive {fields[0]!r}")
    if kind is None:
        raise CoverFormatError("missing 'kind' line")
    try:
        return CoverStructure(contexts=tuple(contexts), kind=kind, rayset=rayset)
    except CoverError as e:
        raise CoverFormatError(str(e)) from None


def load_cover(path, rayset: RaySet | None = None) -> CoverStructure:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_cover(fh.read(), rayset=rayset)


def save_cover(cs: CoverStructure, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_cover(cs))
