"""The context language and the extraction of informativity tasks.

A context formula is a box, a conjunction, a disjunction, or ``in(K, f)``,
which asserts that the context box K entails f.  Nested ``in`` wrappers
accumulate: ``in(K1, f & in(K2, g))`` requires K1 to entail f and K1+K2 to
entail g, so material shared between several entailment questions is
stated exactly once.

``extract`` turns a box containing anaphoric material into one such
formula: each accommodation site contributes a nesting level carrying only
the context material that level adds, and each admissible way of binding
the inner anaphors becomes a disjunct at its site, tagged so prover
verdicts map back to readings.
"""

from __future__ import annotations

import itertools
from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Optional, Union

from .drs import (
    ALPHA_BODY,
    DRS,
    DrsPath,
    Referent,
    condition_contains_alpha,
    is_simple_anaphor,
    merge,
    path_str,
    presupposed_referents,
    sub_drs_at,
    substitute_condition,
    validate,
)
from .projection import (
    EMPTY_BACKGROUND,
    BackgroundTheory,
    NotAccommodatable,
    ProjectionError,
    Reading,
    _alpha_body_at,
    _split_body,
    _task_content,
    accommodation_sites,
    candidate_readings,
    eligible_alpha_paths,
)

__all__ = [
    "DrsLit",
    "In",
    "Conj",
    "Disj",
    "Formula",
    "conj",
    "formula_at",
    "TaggedTask",
    "Extraction",
    "extract",
    "SharingStats",
    "context_sharing_depth",
]


@dataclass(frozen=True)
class DrsLit:
    drs: DRS


@dataclass(frozen=True)
class In:
    context: DRS
    body: "Formula"

    def __post_init__(self) -> None:
        if self.context.is_empty():
            raise ValueError("empty context boxes are represented by omitting the wrapper")


@dataclass(frozen=True)
class Conj:
    items: tuple["Formula", ...]

    def __post_init__(self) -> None:
        if len(self.items) < 2:
            raise ValueError("conjunctions need at least two members")


@dataclass(frozen=True)
class Disj:
    items: tuple["Formula", ...]

    def __post_init__(self) -> None:
        if len(self.items) < 2:
            raise ValueError("disjunctions need at least two members")


Formula = Union[DrsLit, In, Conj, Disj]


def conj(items: list[Formula]) -> Optional[Formula]:
    if not items:
        return None
    if len(items) == 1:
        return items[0]
    return Conj(tuple(items))


def formula_at(formula: Formula, position: tuple[int, ...]) -> Formula:
    """Navigate by child index; an ``in`` wrapper's body is child 0."""
    cur = formula
    for idx in position:
        if isinstance(cur, In):
            if idx != 0:
                raise IndexError("in-wrappers have a single child")
            cur = cur.body
        elif isinstance(cur, (Conj, Disj)):
            cur = cur.items[idx]
        else:
            raise IndexError("no children at %r" % (cur,))
    return cur


@dataclass(frozen=True)
class TaggedTask:
    """One accommodation check in the extracted formula.

    ``readings`` lists every projection reading the check decides; sites
    whose context level collapsed share a single check.
    """

    tag: str
    position: tuple[int, ...]
    conclusion: DRS
    readings: tuple[Reading, ...]


@dataclass(frozen=True)
class Extraction:
    formula: Optional[Formula]
    tasks: tuple[TaggedTask, ...]

    def by_tag(self) -> dict[str, TaggedTask]:
        return {t.tag: t for t in self.tasks}

    def tag_positions(self) -> dict[tuple[int, ...], str]:
        return {t.position: t.tag for t in self.tasks}


_ReadingKey = tuple[str, DrsPath, tuple[tuple[Referent, Referent], ...]]


class _Check:
    """A disjunction of substituted alpha bodies checked at one level."""

    def __init__(self, disjuncts: tuple[DRS, ...], keys: list[list[_ReadingKey]]) -> None:
        self.disjuncts = disjuncts
        self.keys = keys  # parallel to disjuncts

    def merge_keys(self, other: "_Check") -> None:
        for mine, theirs in zip(self.keys, other.keys):
            mine.extend(k for k in theirs if k not in mine)


class _Layer:
    """One context level: the box content a site adds, plus its checks."""

    def __init__(self, site_path: DrsPath, delta: DRS, refs: tuple[Referent, ...]) -> None:
        self.site_path = site_path
        self.delta = delta
        self.refs = refs
        self.checks: list[_Check] = []
        self.children: list[_Layer] = []

    def child(self, site_path: DrsPath, delta: DRS, universe: tuple[Referent, ...]) -> "_Layer":
        for existing in self.children:
            if existing.site_path == site_path:
                return existing
        refs = self.refs + tuple(r for r in universe if r not in self.refs)
        layer = _Layer(site_path, delta, refs)
        self.children.append(layer)
        return layer

    def add_check(self, check: _Check) -> None:
        for existing in self.checks:
            if existing.disjuncts == check.disjuncts:
                existing.merge_keys(check)
                return
        self.checks.append(check)


def extract(root: DRS, bg: BackgroundTheory = EMPTY_BACKGROUND) -> Extraction:
    """Restate every informativity task of ``root`` as one nested formula.

    Alpha-free conditions fold into the context level of the box that
    carries them; each level is emitted once, as one ``in`` wrapper, and a
    level that adds nothing collapses into its parent.  Inner simple
    anaphors are bound against the referents available at each site, which
    also enforces the free-variable constraint: a site offering no
    admissible binding contributes no check.
    """
    report = validate(root)
    if not report.pure:
        raise ValueError("impure input")
    presupposed = presupposed_referents(root)
    alphas = []
    for path in eligible_alpha_paths(root):
        body = _alpha_body_at(path, root)
        if len(body.universe) == 1 and not body.conditions:
            continue  # resolution-only material: nothing to accommodate
        if any(sel == ALPHA_BODY for _, sel in path[:-1]):
            raise ProjectionError(
                "cannot extract anaphoric material nested inside other "
                "anaphoric material at %s" % path_str(path)
            )
        for cond in body.conditions:
            if condition_contains_alpha(cond) and not is_simple_anaphor(cond):
                raise ProjectionError(
                    "alpha body at %s carries nested anaphoric material" % path_str(path)
                )
        alphas.append(path)

    root_delta = merge(bg.merged_for(root), _task_content(root, presupposed))
    root_layer = _Layer((), root_delta, tuple(root.universe))
    reading_index: dict[_ReadingKey, Reading] = {}

    for alpha_path in alphas:
        body = _alpha_body_at(alpha_path, root)
        anaphors, core = _split_body(body)
        if not core:
            raise NotAccommodatable(
                "alpha body at %s has no conditions to accommodate" % path_str(alpha_path)
            )
        for reading in candidate_readings(root, alpha_path)[0]:
            key = (reading.site_kind, reading.site_path, reading.resolution.bindings)
            reading_index[key] = reading
        layer = root_layer
        for kind, site_path in accommodation_sites(alpha_path, root):
            if site_path != ():
                site_box = sub_drs_at(site_path, root)
                layer = layer.child(
                    site_path, _task_content(site_box, presupposed), site_box.universe
                )
            allowed = set(layer.refs) | report.free
            disjuncts: list[DRS] = []
            keys: list[list[_ReadingKey]] = []
            for combo in itertools.product(layer.refs, repeat=len(anaphors)):
                theta = dict(zip(anaphors, combo))
                box = DRS(body.universe, tuple(substitute_condition(c, theta) for c in core))
                if not validate(box).free <= allowed:
                    continue
                disjuncts.append(box)
                keys.append([(kind, site_path, tuple(zip(anaphors, combo)))])
            if disjuncts:
                layer.add_check(_Check(tuple(disjuncts), keys))

    # Assemble: each layer becomes an in-wrapper around its checks and its
    # children; empty-delta layers splice into their parent, merging any
    # check that is already present there.
    _Part = tuple  # ("check", _Check) | ("in", DRS, list[_Part])

    def emit(layer: _Layer) -> list[_Part]:
        parts: list[_Part] = [("check", c) for c in layer.checks]

        def splice(new_parts: list[_Part]) -> None:
            for part in new_parts:
                if part[0] == "check":
                    for existing in parts:
                        if existing[0] == "check" and existing[1].disjuncts == part[1].disjuncts:
                            existing[1].merge_keys(part[1])
                            break
                    else:
                        parts.append(part)
                else:
                    parts.append(part)

        for child in layer.children:
            inner = emit(child)
            if not inner:
                continue
            if child.delta.is_empty():
                splice(inner)
            else:
                parts.append(("in", child.delta, inner))
        return parts

    lit_meta: dict[int, list[_ReadingKey]] = {}

    def realize(parts: list[_Part]) -> Optional[Formula]:
        items: list[Formula] = []
        for part in parts:
            if part[0] == "check":
                check = part[1]
                lits = [DrsLit(d) for d in check.disjuncts]
                for lit, ks in zip(lits, check.keys):
                    lit_meta[id(lit)] = ks
                items.append(lits[0] if len(lits) == 1 else Disj(tuple(lits)))
            else:
                _, delta, inner = part
                body = realize(inner)
                if body is not None:
                    items.append(In(delta, body))
        return conj(items)

    top_parts = emit(root_layer)
    body = realize(top_parts)
    if body is None:
        return Extraction(None, ())
    formula = body if root_layer.delta.is_empty() else In(root_layer.delta, body)

    tasks: list[TaggedTask] = []

    def walk(f: Formula, position: tuple[int, ...]) -> None:
        if isinstance(f, DrsLit):
            keys = lit_meta.get(id(f))
            if keys is not None:
                tag = "t%d" % (len(tasks) + 1)
                readings = tuple(reading_index[k] for k in keys if k in reading_index)
                tasks.append(TaggedTask(tag, position, f.drs, readings))
            return
        if isinstance(f, In):
            walk(f.body, position + (0,))
            return
        if isinstance(f, (Conj, Disj)):
            for i, item in enumerate(f.items):
                walk(item, position + (i,))

    walk(formula, ())
    return Extraction(formula, tuple(tasks))


@dataclass(frozen=True)
class SharingStats:
    in_wrappers: int
    context_conditions: int
    duplicated_conditions: int


def context_sharing_depth(formula: Optional[Formula]) -> SharingStats:
    """How much context material the formula states, and how often twice.

    ``duplicated_conditions`` counts condition occurrences whose value
    shows up under more than one context wrapper; a correctly extracted
    formula scores zero.
    """
    contexts: list[DRS] = []

    def go(f: Formula) -> None:
        if isinstance(f, In):
            contexts.append(f.context)
            go(f.body)
        elif isinstance(f, (Conj, Disj)):
            for item in f.items:
                go(item)

    if formula is not None:
        go(formula)
    occurrences: Counter = Counter()
    containing: defaultdict = defaultdict(set)
    for i, ctx in enumerate(contexts):
        for cond in ctx.conditions:
            occurrences[cond] += 1
            containing[cond].add(i)
    duplicated = sum(n for cond, n in occurrences.items() if len(containing[cond]) > 1)
    return SharingStats(
        in_wrappers=len(contexts),
        context_conditions=sum(len(c.conditions) for c in contexts),
        duplicated_conditions=duplicated,
    )
