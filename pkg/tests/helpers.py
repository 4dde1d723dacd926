"""Shared generators and independent oracles for the test suite.

The oracles here deliberately re-derive results through different
representations than the library uses: classification by top-down
membership predicates, frame properties over frozensets instead of
bitmasks.  Expected values frozen into the golden tests were computed
with these.
"""

from __future__ import annotations

import random
from itertools import chain, combinations

from kripkelewis import (
    And,
    Atom,
    Bel,
    Box,
    Cond,
    Frame,
    Iff,
    Implies,
    Model,
    Not,
    Or,
    SyntacticClass,
    sample_frames,
)

ATOM_NAMES = ("p", "q", "r", "a", "b")
BINARY = (Or, And, Implies, Iff)


# --- random formula generators -------------------------------------------

def gen_phi0(rng: random.Random, depth: int = 3, names=ATOM_NAMES):
    if depth == 0 or rng.random() < 0.3:
        return Atom(rng.choice(names))
    kind = rng.randrange(5)
    if kind == 0:
        return Not(gen_phi0(rng, depth - 1, names))
    ctor = BINARY[kind - 1]
    return ctor(gen_phi0(rng, depth - 1, names), gen_phi0(rng, depth - 1, names))


def gen_cond(rng: random.Random, depth: int = 2, names=ATOM_NAMES):
    return Cond(gen_phi0(rng, depth, names), gen_phi0(rng, depth, names))


def gen_phi1(rng: random.Random, depth: int = 3, names=ATOM_NAMES):
    if depth == 0:
        return gen_cond(rng, 1, names) if rng.random() < 0.5 else Atom(rng.choice(names))
    r = rng.random()
    if r < 0.25:
        return gen_phi0(rng, depth - 1, names)
    if r < 0.5:
        return gen_cond(rng, depth - 1, names)
    if r < 0.65:
        return Not(gen_phi1(rng, depth - 1, names))
    ctor = rng.choice(BINARY)
    return ctor(gen_phi1(rng, depth - 1, names), gen_phi1(rng, depth - 1, names))


def gen_wellformed(rng: random.Random, depth: int = 3, names=ATOM_NAMES):
    """Arbitrary member of the full language (never illformed)."""
    if depth == 0:
        return Atom(rng.choice(names))
    r = rng.random()
    if r < 0.2:
        return gen_phi1(rng, depth, names)
    if r < 0.35:
        return Bel(gen_phi1(rng, depth - 1, names))
    if r < 0.5:
        return Box(gen_phi0(rng, depth - 1, names))
    if r < 0.65:
        return Not(gen_wellformed(rng, depth - 1, names))
    ctor = rng.choice(BINARY)
    return ctor(gen_wellformed(rng, depth - 1, names), gen_wellformed(rng, depth - 1, names))


def gen_any_tree(rng: random.Random, depth: int = 3, names=ATOM_NAMES):
    """Arbitrary operator tree, layering ignored (may be illformed)."""
    if depth == 0:
        return Atom(rng.choice(names))
    kind = rng.randrange(9)
    if kind == 0:
        return Atom(rng.choice(names))
    if kind == 1:
        return Not(gen_any_tree(rng, depth - 1, names))
    if kind <= 5:
        ctor = BINARY[kind - 2]
        return ctor(gen_any_tree(rng, depth - 1, names), gen_any_tree(rng, depth - 1, names))
    if kind == 6:
        return Cond(gen_any_tree(rng, depth - 1, names), gen_any_tree(rng, depth - 1, names))
    if kind == 7:
        return Bel(gen_any_tree(rng, depth - 1, names))
    return Box(gen_any_tree(rng, depth - 1, names))


def random_frame(rng: random.Random, n: int | None = None) -> Frame:
    n = n or rng.choice((1, 2, 3))
    return next(sample_frames(n, 1, seed=rng.randrange(2**30)))


def random_model(rng: random.Random, n: int | None = None, atoms=("p", "q", "r")) -> Model:
    frame = random_frame(rng, n)
    full = frame.full
    valuation = {a: rng.randrange(0, full + 1) for a in atoms}
    return Model(frame, valuation)


# --- classification oracle (top-down membership predicates) ---------------

def oracle_is_phi0(f) -> bool:
    if isinstance(f, Atom):
        return True
    if isinstance(f, Not):
        return oracle_is_phi0(f.body)
    if isinstance(f, BINARY):
        return oracle_is_phi0(f.left) and oracle_is_phi0(f.right)
    return False


def oracle_is_cond(f) -> bool:
    return (
        isinstance(f, Cond)
        and oracle_is_phi0(f.antecedent)
        and oracle_is_phi0(f.consequent)
    )


def oracle_in_phi1(f) -> bool:
    if oracle_is_phi0(f) or oracle_is_cond(f):
        return True
    if isinstance(f, Not):
        return oracle_in_phi1(f.body)
    if isinstance(f, BINARY):
        return oracle_in_phi1(f.left) and oracle_in_phi1(f.right)
    return False


def oracle_is_phib(f) -> bool:
    return isinstance(f, Bel) and oracle_in_phi1(f.body)


def oracle_is_phibox(f) -> bool:
    return isinstance(f, Box) and oracle_is_phi0(f.body)


def oracle_in_phi(f) -> bool:
    if oracle_in_phi1(f) or oracle_is_phib(f) or oracle_is_phibox(f):
        return True
    if isinstance(f, Not):
        return oracle_in_phi(f.body)
    if isinstance(f, BINARY):
        return oracle_in_phi(f.left) and oracle_in_phi(f.right)
    return False


def oracle_classify(f) -> SyntacticClass:
    if oracle_is_phi0(f):
        return SyntacticClass.PHI0
    if oracle_is_cond(f):
        return SyntacticClass.PHI_COND
    if oracle_in_phi1(f):
        return SyntacticClass.PHI1
    if oracle_is_phib(f):
        return SyntacticClass.PHI_B
    if oracle_is_phibox(f):
        return SyntacticClass.PHI_BOX
    if oracle_in_phi(f):
        return SyntacticClass.PHI
    return SyntacticClass.ILLFORMED


# --- frame property oracle over frozensets --------------------------------

def _as_sets(frame: Frame):
    states = frozenset(range(frame.n))
    to_set = lambda mask: frozenset(i for i in range(frame.n) if mask >> i & 1)
    belief = {s: to_set(frame.belief[s]) for s in range(frame.n)}
    sel = {
        (s, to_set(e)): to_set(frame.selection[s][e])
        for s in range(frame.n)
        for e in range(1, frame.full + 1)
    }
    return states, belief, sel


def _subsets(states, include_empty=False):
    items = sorted(states)
    start = 0 if include_empty else 1
    return [
        frozenset(c)
        for size in range(start, len(items) + 1)
        for c in combinations(items, size)
    ]


def oracle_property_holds(frame: Frame, kind: str) -> bool:
    """Literal quantifier translation of each property over frozensets."""
    states, belief, sel = _as_sets(frame)
    events = _subsets(states)
    if kind == "P2":
        return all(
            sel[(sp, e)] <= e for s in states for e in events for sp in belief[s]
        )
    if kind == "P3":
        for s in states:
            for e in events:
                union = frozenset(chain.from_iterable(sel[(x, e)] for x in belief[s]))
                if any(sp in e and sp not in union for sp in belief[s]):
                    return False
        return True
    if kind == "P4":
        for s in states:
            for e in events:
                if belief[s] & e:
                    if any(not sel[(sp, e)] <= (belief[s] & e) for sp in belief[s]):
                        return False
        return True
    if kind == "P5":
        return all(
            any(sel[(sp, e)] for sp in belief[s]) for s in states for e in events
        )
    if kind == "P7":
        all_events = _subsets(states, include_empty=True)
        for s in states:
            for e in events:
                for f in events:
                    if not e & f:
                        continue
                    for g in all_events:
                        if all(sel[(sp, e & f)] <= g for sp in belief[s]) and any(
                            not (sel[(sp, e)] & f) <= g for sp in belief[s]
                        ):
                            return False
        return True
    if kind == "P8":
        for s in states:
            for e in events:
                for f in events:
                    if not e & f:
                        continue
                    if not any(sel[(sp, e)] & f for sp in belief[s]):
                        continue
                    bound = frozenset(
                        chain.from_iterable(sel[(x, e)] & f for x in belief[s])
                    )
                    if any(not sel[(sp, e & f)] <= bound for sp in belief[s]):
                        return False
        return True
    raise ValueError(kind)


# --- hand-built fixture frames --------------------------------------------

def m0_frame() -> Frame:
    return Frame(("s0",), (0b1,), ((0, 0b1),))


def fx2_frame() -> Frame:
    # two states; both believe only s1; selection is the identity except
    # that s1 selects {s1} for the event {s0}
    return Frame(
        ("s0", "s1"),
        (0b10, 0b10),
        (
            (0, 0b01, 0b10, 0b11),
            (0, 0b10, 0b10, 0b11),
        ),
    )


def empty_selection_frame() -> Frame:
    # every selection empty: violates P5 everywhere
    return Frame(
        ("s0", "s1"),
        (0b10, 0b10),
        (
            (0, 0, 0, 0),
            (0, 0, 0, 0),
        ),
    )


def p8_violation_frame() -> Frame:
    # s0 believes both states; selections chosen so the intersection event
    # selects outside the met part: f(s0, {s0,s1}) = {s0}, f(s0, {s0}) = {s1}
    return Frame(
        ("s0", "s1"),
        (0b11, 0b10),
        (
            (0, 0b10, 0, 0b01),
            (0, 0, 0, 0),
        ),
    )
