"""Finite Kripke-Lewis frames and models.

A frame is a finite state set, a serial belief relation, and a selection
function defined for every (state, nonempty event) pair.  States are
indexed 0..n-1 and events are bitmasks over those indices, so the
2^n-event quantifications elsewhere are plain integer loops.

No structural property beyond seriality and selection totality is imposed
at construction: selection values may fall outside their event, overlap
nothing, or be empty.  The property checkers ask for more only when asked.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Mapping

from .formula import (
    Atom,
    And,
    Bel,
    Box,
    Cond,
    Formula,
    Iff,
    Implies,
    Not,
    Or,
    is_wellformed,
)

_ATOM_NAME_RE = re.compile(r"[a-z][a-z0-9_]*\Z")


class EmptyEventError(ValueError):
    """Raised when an operation requires a nonempty event."""


@dataclass(frozen=True, slots=True)
class FrameIssue:
    """One validation failure found while building a frame."""

    kind: str  # non_serial | missing_selection_entry | unknown_state | empty_event | duplicate_selection_entry | invalid_atom | bad_structure
    detail: str

    def __str__(self) -> str:
        return f"{self.kind}: {self.detail}"


class FrameValidationError(ValueError):
    def __init__(self, issues: list[FrameIssue]):
        self.issues = issues
        super().__init__("; ".join(str(i) for i in issues))


def bit_indices(mask: int) -> Iterator[int]:
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


@lru_cache(maxsize=None)
def canonical_events(n: int, include_empty: bool = False) -> tuple[int, ...]:
    """Nonempty events of an n-state frame ordered by (size, numeric value).

    This is the scan order every checker uses, so reported witnesses are
    minimal in that order.
    """
    start = 0 if include_empty else 1
    return tuple(sorted(range(start, 1 << n), key=lambda e: (e.bit_count(), e)))


class Frame:
    """States, serial belief relation, total selection function.

    ``belief[s]`` is the event of states the agent considers possible at s.
    ``selection[s][e]`` is the selected event for state s and nonempty event
    e; index 0 of each row is a placeholder that is never consulted.
    ``union[s][e]`` caches the union of ``selection[x][e]`` over believed
    ``x``, the event supporting revised beliefs at s.
    """

    __slots__ = ("states", "n", "full", "belief", "selection", "union", "believed")

    def __init__(
        self,
        states: Iterable[str],
        belief: Iterable[int],
        selection: Iterable[Iterable[int]],
    ):
        self.states = tuple(states)
        self.n = len(self.states)
        self.full = (1 << self.n) - 1
        self.belief = tuple(belief)
        self.selection = tuple(tuple(row) for row in selection)
        self.believed = tuple(tuple(bit_indices(b)) for b in self.belief)
        union = []
        for s in range(self.n):
            row = [0] * (self.full + 1)
            for e in range(1, self.full + 1):
                u = 0
                for x in self.believed[s]:
                    u |= self.selection[x][e]
                row[e] = u
            union.append(tuple(row))
        self.union = tuple(union)

    def state_index(self, name: str) -> int:
        try:
            return self.states.index(name)
        except ValueError:
            raise KeyError(f"unknown state {name!r}") from None

    def event_names(self, mask: int) -> list[str]:
        return [self.states[i] for i in bit_indices(mask)]

    def event_mask(self, names: Iterable[str]) -> int:
        mask = 0
        for name in names:
            mask |= 1 << self.state_index(name)
        return mask

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Frame)
            and self.states == other.states
            and self.belief == other.belief
            and self.selection == other.selection
        )

    def __hash__(self) -> int:
        return hash((self.states, self.belief, self.selection))

    def __repr__(self) -> str:
        return f"Frame(n={self.n}, belief={self.belief}, selection={self.selection})"


class Model:
    """A frame plus a valuation; atoms absent from the valuation denote the empty event."""

    __slots__ = ("frame", "valuation")

    def __init__(self, frame: Frame, valuation: Mapping[str, int] | None = None):
        self.frame = frame
        self.valuation = dict(valuation or {})

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Model)
            and self.frame == other.frame
            and self.valuation == other.valuation
        )

    def __repr__(self) -> str:
        return f"Model({self.frame!r}, {self.valuation!r})"


@dataclass
class Witness:
    """Concrete refutation record for a failed check.

    ``states`` and ``events`` map role names from the violated condition
    (for example "s", "s_prime", "E", "F") to state indices and event
    masks; replaying the check on this data reproduces the failure.
    """

    kind: str
    states: dict[str, int] = field(default_factory=dict)
    events: dict[str, int] = field(default_factory=dict)
    valuation: dict[str, int] | None = None
    formula: Formula | None = None

    def to_json(self, frame: Frame) -> dict:
        from .parser import format_formula

        out: dict = {
            "kind": self.kind,
            "states": {role: frame.states[i] for role, i in self.states.items()},
            "events": {role: frame.event_names(m) for role, m in self.events.items()},
        }
        if self.valuation is not None:
            out["valuation"] = {a: frame.event_names(m) for a, m in sorted(self.valuation.items())}
        if self.formula is not None:
            out["formula"] = format_formula(self.formula)
        return out


def _reject_illformed(f: Formula) -> None:
    if not is_wellformed(f):
        raise ValueError(f"illformed formula: {f!r}")


def truth(m: Model, s: int, f: Formula) -> bool:
    """Pointwise truth of ``f`` at state index ``s``.

    Clause by clause: atoms via the valuation; Boolean connectives by
    direct recursion; ``[] a`` holds iff ``a`` holds at every state;
    ``a > b`` holds iff ``a`` is impossible (empty truth set) or every
    state selected for (s, truth set of a) satisfies ``b``; ``B a`` holds
    iff ``a`` holds at every believed state.
    """
    _reject_illformed(f)
    if not 0 <= s < m.frame.n:
        raise IndexError(f"state index {s} out of range")
    return _truth(m, s, f)


def _truth(m: Model, s: int, f: Formula) -> bool:
    if isinstance(f, Atom):
        return bool(m.valuation.get(f.name, 0) >> s & 1)
    if isinstance(f, Not):
        return not _truth(m, s, f.body)
    if isinstance(f, Or):
        return _truth(m, s, f.left) or _truth(m, s, f.right)
    if isinstance(f, And):
        return _truth(m, s, f.left) and _truth(m, s, f.right)
    if isinstance(f, Implies):
        return (not _truth(m, s, f.left)) or _truth(m, s, f.right)
    if isinstance(f, Iff):
        return _truth(m, s, f.left) == _truth(m, s, f.right)
    if isinstance(f, Box):
        return all(_truth(m, x, f.body) for x in range(m.frame.n))
    if isinstance(f, Bel):
        return all(_truth(m, x, f.body) for x in m.frame.believed[s])
    if isinstance(f, Cond):
        antecedent = 0
        for x in range(m.frame.n):
            if _truth(m, x, f.antecedent):
                antecedent |= 1 << x
        if antecedent == 0:
            return True  # impossible antecedent: vacuously true
        return all(
            _truth(m, x, f.consequent)
            for x in bit_indices(m.frame.selection[s][antecedent])
        )
    raise TypeError(f"not a formula node: {f!r}")


def truth_set(m: Model, f: Formula) -> int:
    """Event of states where ``f`` holds, computed set-at-a-time.

    Independent of :func:`truth`: connectives become bitmask operations
    and the modal clauses become per-state subset tests.
    """
    _reject_illformed(f)
    return _truth_set(m, f)


def _truth_set(m: Model, f: Formula) -> int:
    full = m.frame.full
    if isinstance(f, Atom):
        return m.valuation.get(f.name, 0)
    if isinstance(f, Not):
        return full ^ _truth_set(m, f.body)
    if isinstance(f, Or):
        return _truth_set(m, f.left) | _truth_set(m, f.right)
    if isinstance(f, And):
        return _truth_set(m, f.left) & _truth_set(m, f.right)
    if isinstance(f, Implies):
        return (full ^ _truth_set(m, f.left)) | _truth_set(m, f.right)
    if isinstance(f, Iff):
        return full ^ (_truth_set(m, f.left) ^ _truth_set(m, f.right))
    if isinstance(f, Box):
        return full if _truth_set(m, f.body) == full else 0
    if isinstance(f, Bel):
        body = _truth_set(m, f.body)
        mask = 0
        for s in range(m.frame.n):
            if m.frame.belief[s] & ~body == 0:
                mask |= 1 << s
        return mask
    if isinstance(f, Cond):
        antecedent = _truth_set(m, f.antecedent)
        if antecedent == 0:
            return full
        consequent = _truth_set(m, f.consequent)
        mask = 0
        for s in range(m.frame.n):
            if m.frame.selection[s][antecedent] & ~consequent == 0:
                mask |= 1 << s
        return mask
    raise TypeError(f"not a formula node: {f!r}")


def revised_support(frame: Frame, s: int, event: int) -> int:
    """Union of the selections at the believed states of ``s`` for ``event``.

    This is the event that must contain a formula's truth set for the
    formula to survive revision by ``event`` at ``s``.
    """
    if event == 0:
        raise EmptyEventError("selection is undefined on the empty event")
    return frame.union[s][event]


# ---------------------------------------------------------------------------
# JSON interchange.
#
# {"states": ["s0", "s1"],
#  "belief": {"s0": ["s1"], "s1": ["s1"]},
#  "selection": [{"state": "s1", "event": ["s0"], "selected": ["s1"]}, ...],
#  "valuation": {"p": ["s0"]}}
#
# selection must enumerate every (state, nonempty event) pair; valuation is
# optional and only meaningful when loading a model.
# ---------------------------------------------------------------------------


def validate_frame(data: Mapping) -> tuple[Frame | None, list[FrameIssue]]:
    """Build a frame from its JSON form, or report every violation found."""
    issues: list[FrameIssue] = []
    raw_states = data.get("states")
    if not isinstance(raw_states, (list, tuple)) or not raw_states:
        return None, [FrameIssue("bad_structure", "'states' must be a nonempty list")]
    states = tuple(str(s) for s in raw_states)
    if len(set(states)) != len(states):
        return None, [FrameIssue("bad_structure", "duplicate state names")]
    n = len(states)
    index = {name: i for i, name in enumerate(states)}
    full = (1 << n) - 1

    def mask_of(names: Iterable, where: str) -> int | None:
        mask = 0
        ok = True
        for name in names:
            i = index.get(name)
            if i is None:
                issues.append(FrameIssue("unknown_state", f"{name!r} in {where}"))
                ok = False
            else:
                mask |= 1 << i
        return mask if ok else None

    belief = [0] * n
    raw_belief = data.get("belief", {})
    for name, members in raw_belief.items():
        i = index.get(name)
        if i is None:
            issues.append(FrameIssue("unknown_state", f"{name!r} in belief"))
            continue
        mask = mask_of(members, f"belief[{name}]")
        if mask is not None:
            belief[i] = mask
    for i, mask in enumerate(belief):
        if mask == 0:
            issues.append(FrameIssue("non_serial", f"belief set of {states[i]} is empty"))

    selection = [[None] * (full + 1) for _ in range(n)]
    for entry in data.get("selection", []):
        name = entry.get("state")
        i = index.get(name)
        if i is None:
            issues.append(FrameIssue("unknown_state", f"{name!r} in selection"))
            continue
        event = mask_of(entry.get("event", []), f"selection event for {name}")
        selected = mask_of(entry.get("selected", []), f"selection value for {name}")
        if event is None or selected is None:
            continue
        if event == 0:
            issues.append(
                FrameIssue("empty_event", f"selection entry for {name} has an empty event")
            )
            continue
        if selection[i][event] is not None:
            issues.append(
                FrameIssue(
                    "duplicate_selection_entry",
                    f"({name}, {{{', '.join(sorted(set(entry.get('event', []))))}}}) appears twice",
                )
            )
            continue
        selection[i][event] = selected
    for i in range(n):
        for e in range(1, full + 1):
            if selection[i][e] is None:
                names = ", ".join(states[j] for j in bit_indices(e))
                issues.append(
                    FrameIssue(
                        "missing_selection_entry",
                        f"no entry for ({states[i]}, {{{names}}})",
                    )
                )

    if issues:
        return None, issues
    rows = [[0] + [row[e] for e in range(1, full + 1)] for row in selection]
    return Frame(states, belief, rows), []


def load_frame(data: Mapping) -> Frame:
    frame, issues = validate_frame(data)
    if frame is None:
        raise FrameValidationError(issues)
    return frame


def load_model(data: Mapping) -> Model:
    frame, issues = validate_frame(data)
    valuation: dict[str, int] = {}
    if frame is not None:
        for atom, members in (data.get("valuation") or {}).items():
            if not _ATOM_NAME_RE.match(str(atom)):
                issues.append(FrameIssue("invalid_atom", f"{atom!r} is not an atom name"))
                continue
            try:
                valuation[atom] = frame.event_mask(members)
            except KeyError:
                issues.append(FrameIssue("unknown_state", f"in valuation of {atom!r}"))
    if issues:
        raise FrameValidationError(issues)
    assert frame is not None
    return Model(frame, valuation)


def frame_to_json(frame: Frame) -> dict:
    selection = [
        {
            "state": frame.states[s],
            "event": frame.event_names(e),
            "selected": frame.event_names(frame.selection[s][e]),
        }
        for s in range(frame.n)
        for e in canonical_events(frame.n)
    ]
    return {
        "states": list(frame.states),
        "belief": {frame.states[s]: frame.event_names(frame.belief[s]) for s in range(frame.n)},
        "selection": selection,
    }


def model_to_json(m: Model) -> dict:
    out = frame_to_json(m.frame)
    out["valuation"] = {
        atom: m.frame.event_names(mask) for atom, mask in sorted(m.valuation.items())
    }
    return out
