"""Schema validity of the modal axioms on a frame, and countermodel builders.

An axiom schema is valid on a frame when its instance holds at every state
of every model based on the frame.  Schema letters stand for Boolean
formulas, and every event is the truth set of a fresh atom under some
valuation, so quantifying letters over all events (empty and full
included) is exactly validity over all models.  The evaluator works
directly on events; the tests cross it against the generic model
semantics on instances built from fresh atoms p, q, r.
"""

from __future__ import annotations

from enum import Enum
from itertools import product

from .formula import And, Atom, Bel, Box, Cond, Formula, Iff, Implies, Not
from .model import Frame, Model, Witness, truth_set
from .properties import PropertyId


class AxiomId(Enum):
    A1 = "A1"
    A2 = "A2"
    A3 = "A3"
    A4 = "A4"
    A5 = "A5"
    A7 = "A7"
    A8 = "A8"
    RULE_K5A = "RuleK5a"
    RULE_K6 = "RuleK6"


RULE_IDS = frozenset({AxiomId.RULE_K5A, AxiomId.RULE_K6})
SCHEMA_IDS = tuple(k for k in AxiomId if k not in RULE_IDS)

LETTERS = ("p", "q", "r")

# Letters each schema quantifies over.
_LETTER_COUNT = {
    AxiomId.A1: 3,
    AxiomId.A2: 1,
    AxiomId.A3: 2,
    AxiomId.A4: 2,
    AxiomId.A5: 2,
    AxiomId.A7: 3,
    AxiomId.A8: 3,
}

_P = Atom("p")
_Q = Atom("q")
_R = Atom("r")

# Instance of each schema over fresh atoms, one atom per letter.
_INSTANCES = {
    AxiomId.A1: Implies(
        And(Bel(Cond(_P, _Q)), Bel(Cond(_P, Implies(_Q, _R)))), Bel(Cond(_P, _R))
    ),
    AxiomId.A2: Bel(Cond(_P, _P)),
    AxiomId.A3: Implies(And(Not(Box(Not(_P))), Bel(Cond(_P, _Q))), Bel(Implies(_P, _Q))),
    AxiomId.A4: Implies(And(Not(Bel(Not(_P))), Bel(Implies(_P, _Q))), Bel(Cond(_P, _Q))),
    AxiomId.A5: Implies(
        And(Not(Box(Not(_P))), Bel(Cond(_P, _Q))), Not(Bel(Cond(_P, Not(_Q))))
    ),
    AxiomId.A7: Implies(
        And(Not(Box(Not(And(_P, _Q)))), Bel(Cond(And(_P, _Q), _R))),
        Bel(Cond(_P, Implies(_Q, _R))),
    ),
    AxiomId.A8: Implies(
        And(Not(Bel(Cond(_P, Not(_Q)))), Bel(Cond(_P, Implies(_Q, _R)))),
        Bel(Cond(And(_P, _Q), And(_Q, _R))),
    ),
}


def axiom_instance(k: AxiomId) -> Formula:
    """The schema instantiated with atoms p, q, r standing for its letters."""
    if k in RULE_IDS:
        raise ValueError(f"{k.value} is a rule of inference, not a schema")
    return _INSTANCES[k]


class MismatchedWitnessError(ValueError):
    """Witness does not belong to the property paired with the axiom."""


class SchemaEvaluator:
    """Event-level evaluator for the axiom schemas on one frame.

    Precomputes, for every pair of events (a, b), the set of states where
    the believed conditional with antecedent event a and consequent event
    b holds: everything if a is empty, else the states whose union of
    believed selections for a lies inside b.  Likewise the set of states
    whose belief set lies inside each event.
    """

    __slots__ = ("frame", "full", "bel", "bel_cond")

    def __init__(self, frame: Frame):
        self.frame = frame
        full = frame.full
        self.full = full
        n = frame.n
        belief = frame.belief
        union = frame.union
        self.bel = [0] * (full + 1)
        for x in range(full + 1):
            mask = 0
            for s in range(n):
                if belief[s] & ~x == 0:
                    mask |= 1 << s
            self.bel[x] = mask
        bel_cond = [[full] * (full + 1)]  # empty antecedent: vacuously believed
        for a in range(1, full + 1):
            row = []
            for b in range(full + 1):
                mask = 0
                for s in range(n):
                    if union[s][a] & ~b == 0:
                        mask |= 1 << s
                row.append(mask)
            bel_cond.append(row)
        self.bel_cond = bel_cond

    # Each schema returns the mask of states where it holds under the
    # given letter events; the axiom is valid iff every mask is full.

    def _a1(self, a: int, b: int, c: int) -> int:
        full, bc = self.full, self.bel_cond
        ante = bc[a][b] & bc[a][(full ^ b) | c]
        return (full ^ ante) | bc[a][c]

    def _a2(self, a: int) -> int:
        return self.bel_cond[a][a]

    def _a3(self, a: int, b: int) -> int:
        full = self.full
        possible = full if a else 0
        ante = possible & self.bel_cond[a][b]
        return (full ^ ante) | self.bel[(full ^ a) | b]

    def _a4(self, a: int, b: int) -> int:
        full = self.full
        ante = (full ^ self.bel[full ^ a]) & self.bel[(full ^ a) | b]
        return (full ^ ante) | self.bel_cond[a][b]

    def _a5(self, a: int, b: int) -> int:
        full = self.full
        possible = full if a else 0
        ante = possible & self.bel_cond[a][b]
        return (full ^ ante) | (full ^ self.bel_cond[a][full ^ b])

    def _a7(self, a: int, b: int, c: int) -> int:
        full, bc = self.full, self.bel_cond
        ab = a & b
        ante = (full if ab else 0) & bc[ab][c]
        return (full ^ ante) | bc[a][(full ^ b) | c]

    def _a8(self, a: int, b: int, c: int) -> int:
        full, bc = self.full, self.bel_cond
        ante = (full ^ bc[a][full ^ b]) & bc[a][(full ^ b) | c]
        return (full ^ ante) | bc[a & b][b & c]

    def holds_mask(self, k: AxiomId, assignment: tuple[int, ...]) -> int:
        """Mask of states where the instance of ``k`` under ``assignment`` holds."""
        return getattr(self, "_" + k.value.lower())(*assignment)

    def check_axiom(self, k: AxiomId) -> Witness | None:
        """None if ``k`` is valid on the frame, else the lexicographically
        least falsifying assignment with its lowest falsified state."""
        if k in RULE_IDS:
            raise ValueError(f"{k.value} is a rule of inference; use rule_valid_on_frame")
        schema = getattr(self, "_" + k.value.lower())
        full = self.full
        nletters = _LETTER_COUNT[k]
        for assignment in product(range(full + 1), repeat=nletters):
            mask = schema(*assignment)
            if mask != full:
                state = ((mask ^ full) & -(mask ^ full)).bit_length() - 1
                return Witness(
                    kind=k.value,
                    states={"s": state},
                    events=dict(zip(LETTERS, assignment)),
                )
        return None


def schema_valid_on_frame(frame: Frame, k: AxiomId) -> Witness | None:
    """Check one axiom schema on a frame by exhausting letter assignments."""
    return SchemaEvaluator(frame).check_axiom(k)


def rule_valid_on_frame(frame: Frame, k: AxiomId) -> Witness | None:
    """Check a rule of inference at the event level, through the model semantics.

    RuleK5a: with an impossible antecedent (the event-level image of an
    inconsistent formula), the believed conditional holds at every state,
    whatever the consequent event.  RuleK6: two antecedents with the same
    event yield the same believed conditionals, whatever the consequent
    event.  Both are evaluated on concrete models with fresh atoms.
    """
    full = frame.full
    if k is AxiomId.RULE_K5A:
        template = Bel(Cond(_P, _Q))
        for b in range(full + 1):
            mask = truth_set(Model(frame, {"p": 0, "q": b}), template)
            if mask != full:
                state = ((mask ^ full) & -(mask ^ full)).bit_length() - 1
                return Witness("RuleK5a", {"s": state}, {"p": 0, "q": b})
        return None
    if k is AxiomId.RULE_K6:
        template = Iff(Bel(Cond(_P, _R)), Bel(Cond(_Q, _R)))
        for a in range(full + 1):
            for c in range(full + 1):
                mask = truth_set(Model(frame, {"p": a, "q": a, "r": c}), template)
                if mask != full:
                    state = ((mask ^ full) & -(mask ^ full)).bit_length() - 1
                    return Witness("RuleK6", {"s": state}, {"p": a, "q": a, "r": c})
        return None
    raise ValueError(f"{k.value} is a schema; use schema_valid_on_frame")


def assignment_model(frame: Frame, assignment: dict[str, int]) -> Model:
    """Concrete model realizing a letter assignment with fresh atoms."""
    return Model(frame, dict(assignment))


PAIRED_PROPERTY = {
    AxiomId.A2: PropertyId.P2,
    AxiomId.A3: PropertyId.P3,
    AxiomId.A4: PropertyId.P4,
    AxiomId.A5: PropertyId.P5,
    AxiomId.A7: PropertyId.P7,
    AxiomId.A8: PropertyId.P8,
}


def countermodel_from_witness(
    frame: Frame, k: AxiomId, w: Witness
) -> tuple[Model, int, Formula]:
    """Model, state and axiom instance falsified there, built from a
    property-violation witness of the paired frame property.

    The valuations are the canonical refutation recipes: the violated
    event becomes the truth set of p, and q and r take the derived events
    that make the axiom's antecedent true while its consequent fails.
    """
    paired = PAIRED_PROPERTY.get(k)
    if paired is None or w.kind != paired.value:
        raise MismatchedWitnessError(
            f"witness for {w.kind!r} cannot refute {k.value} (needs {paired.value if paired else 'n/a'})"
        )
    s = w.states["s"]
    e = w.events["E"]
    if k is AxiomId.A2:
        valuation = {"p": e}
    elif k is AxiomId.A3:
        valuation = {"p": e, "q": frame.union[s][e]}
    elif k is AxiomId.A4:
        valuation = {"p": e, "q": frame.belief[s] & e}
    elif k is AxiomId.A5:
        valuation = {"p": e, "q": 0}
    elif k is AxiomId.A7:
        valuation = {"p": e, "q": w.events["F"], "r": w.events["G"]}
    else:  # A8
        valuation = {"p": e, "q": w.events["F"], "r": frame.union[s][e]}
    return Model(frame, valuation), s, _INSTANCES[k]
