"""Generators for property suites: seeded random corpora and hypothesis strategies.

The corpus generator builds pure boxes with one anaphoric condition in a
randomly chosen position (root, implication antecedent or consequent,
negation body, or a disjunct), at most two nesting levels and about three
discourse referents, so the resulting tasks stay inside what the finite
model search can decide.  Atom values are kept distinct across each box:
the non-redundancy statistic counts repeated condition values across
context wrappers, and a duplicated input condition would show up there.
"""

from __future__ import annotations

import random
import string

from hypothesis import strategies as st

from ctxdrt.drs import DRS, Alpha, Atom, Imp, Neg, Or, Referent
from ctxdrt.lcon import Conj, Disj, DrsLit, In

PREDICATES = [("p", 1), ("q", 2), ("r", 1), ("s", 2)]


class _Names:
    def __init__(self) -> None:
        self._iter = iter(string.ascii_lowercase)

    def fresh(self) -> Referent:
        return Referent(next(self._iter))


def _atoms(rng: random.Random, env: list[Referent], count: int, used: set) -> list[Atom]:
    out: list[Atom] = []
    if not env:
        return out
    for _ in range(count):
        for _attempt in range(25):
            pred, arity = PREDICATES[rng.randrange(len(PREDICATES))]
            args = tuple(env[rng.randrange(len(env))] for _ in range(arity))
            atom = Atom(pred, args)
            if atom not in used:
                used.add(atom)
                out.append(atom)
                break
    return out


def _alpha(rng: random.Random, names: _Names, used: set) -> Alpha:
    head = names.fresh()
    body_env = [head]
    inner = None
    if rng.random() < 0.6:
        anaphor = names.fresh()
        body_env.append(anaphor)
        inner = Alpha(DRS((anaphor,), ()))
    conds: list = _atoms(rng, body_env, rng.randrange(1, 3), used)
    while not conds:  # accommodation needs at least one core condition
        conds = _atoms(rng, body_env, 1, used)
    if inner is not None:
        conds.insert(rng.randrange(len(conds) + 1), inner)
    return Alpha(DRS((head,), tuple(conds)))


def corpus_drs(rng: random.Random) -> DRS:
    """One pure box with a single anaphoric condition somewhere inside."""
    names = _Names()
    used: set = set()
    u0 = [names.fresh() for _ in range(rng.randrange(0, 3))]
    root_atoms = _atoms(rng, u0, rng.randrange(0, 3), used)
    alpha = _alpha(rng, names, used)

    shape = rng.randrange(6)
    extra: list = []
    if shape == 0:
        # alpha directly at root level
        conditions = root_atoms + [alpha]
    else:
        u1 = [names.fresh() for _ in range(rng.randrange(0, 2))]
        inner_atoms = _atoms(rng, u0 + u1, rng.randrange(0, 2), used)
        if shape == 1:
            # alpha in an implication consequent
            u2 = [names.fresh() for _ in range(rng.randrange(0, 2))]
            cons_atoms = _atoms(rng, u0 + u1 + u2, rng.randrange(0, 2), used)
            cond = Imp(
                DRS(tuple(u1), tuple(inner_atoms)),
                DRS(tuple(u2), tuple(cons_atoms) + (alpha,)),
            )
        elif shape == 2:
            # alpha in an implication antecedent
            cond = Imp(
                DRS(tuple(u1), tuple(inner_atoms) + (alpha,)),
                DRS((), tuple(_atoms(rng, u0 + u1, 1, used))),
            )
        elif shape == 3:
            # alpha under negation
            cond = Neg(DRS(tuple(u1), tuple(inner_atoms) + (alpha,)))
        elif shape == 4:
            # alpha in a disjunct
            cond = Or(
                DRS(tuple(u1), tuple(inner_atoms) + (alpha,)),
                DRS((), tuple(_atoms(rng, u0, 1, used))),
            )
        else:
            # alpha in a consequent, with a second nesting level beside it
            u2 = [names.fresh() for _ in range(rng.randrange(0, 2))]
            side = Neg(DRS((), tuple(_atoms(rng, u0 + u1 + u2, 1, used))))
            cond = Imp(
                DRS(tuple(u1), tuple(inner_atoms)),
                DRS(tuple(u2), (side, alpha) if rng.random() < 0.5 else (alpha, side)),
            )
        conditions = root_atoms + [cond]
        if rng.random() < 0.3:
            # a universal postulate in the root context exercises the
            # repeatable-instantiation machinery
            m = names.fresh()
            w = names.fresh()
            guard = _atoms(rng, [m], 1, used)
            head = _atoms(rng, [m, w], 1, used)
            if guard and head:
                extra = [Imp(DRS((m,), tuple(guard)), DRS((w,), tuple(head)))]
    return DRS(tuple(u0), tuple(conditions + extra))


# -- hypothesis strategies (round-trip suites) ---------------------------------

_ident = st.from_regex(r"[a-z][a-z0-9_]{0,3}", fullmatch=True).filter(
    lambda s: s not in {"not", "or", "alpha", "in"}
)
_referent = st.builds(Referent, _ident)
_atom = st.builds(
    Atom, _ident, st.lists(_referent, min_size=1, max_size=3).map(tuple)
)


def _drs_strategy() -> st.SearchStrategy[DRS]:
    def universe_and_conditions(conditions):
        return st.builds(
            DRS,
            st.lists(_referent, max_size=3, unique_by=lambda r: r.name).map(tuple),
            st.lists(conditions, max_size=3).map(tuple),
        )

    return st.recursive(
        universe_and_conditions(_atom),
        lambda inner: universe_and_conditions(
            st.one_of(
                _atom,
                st.builds(Neg, inner),
                st.builds(Imp, inner, inner),
                st.builds(Or, inner, inner),
                st.builds(Alpha, inner),
            )
        ),
        max_leaves=6,
    )


drs_boxes = _drs_strategy()


def _lcon_strategy() -> st.SearchStrategy:
    nonempty_box = st.builds(
        DRS,
        st.lists(_referent, min_size=1, max_size=3, unique_by=lambda r: r.name).map(tuple),
        st.lists(_atom, max_size=2).map(tuple),
    )
    base = st.one_of(
        st.builds(DrsLit, drs_boxes),
        st.builds(In, nonempty_box, st.builds(DrsLit, drs_boxes)),
    )
    return st.recursive(
        base,
        lambda inner: st.one_of(
            st.builds(In, nonempty_box, inner),
            st.builds(Conj, st.lists(inner, min_size=2, max_size=3).map(tuple)),
            st.builds(Disj, st.lists(inner, min_size=2, max_size=3).map(tuple)),
        ),
        max_leaves=5,
    )


lcon_formulas = _lcon_strategy()
