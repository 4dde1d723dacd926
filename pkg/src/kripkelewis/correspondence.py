"""Frame enumeration, sampling, and the three-way correspondence sweep.

For each k in {2, 3, 4, 5, 7, 8} a frame is checked three ways: the frame
property Pk, validity of the modal axiom Ak, and the event-level revision
postulate at every state.  The first two must agree on every frame, the
postulate column must agree with the property for every k except 4, and
for k = 4 the property must imply the postulate (the reverse direction is
recorded as data, never as a failure).  Every property violation also
replays its canonical countermodel, which must falsify the paired axiom.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import FIRST_EXCEPTION, ProcessPoolExecutor, wait
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator

from .axioms import (
    AxiomId,
    SchemaEvaluator,
    countermodel_from_witness,
    rule_valid_on_frame,
)
from .model import Frame, truth
from .properties import PropertyId, check_property
from .revision import AgmPostulateId, agm_event_check

DEFAULT_KS = (2, 3, 4, 5, 7, 8)

_PROP = {2: PropertyId.P2, 3: PropertyId.P3, 4: PropertyId.P4,
         5: PropertyId.P5, 7: PropertyId.P7, 8: PropertyId.P8}
_AXIOM = {2: AxiomId.A2, 3: AxiomId.A3, 4: AxiomId.A4,
          5: AxiomId.A5, 7: AxiomId.A7, 8: AxiomId.A8}
_AGM = {2: AgmPostulateId.K2, 3: AgmPostulateId.K3, 4: AgmPostulateId.K4,
        5: AgmPostulateId.K5B, 7: AgmPostulateId.K7, 8: AgmPostulateId.K8}
_AGM_NAME = {k: _AGM[k].value for k in DEFAULT_KS}

ALWAYS_VALID_NAMES = ("A1", "RuleK5a", "RuleK6", "K1", "K5a", "K6")


class SweepError(RuntimeError):
    """A sweep aborted; carries the report for the part that completed."""

    def __init__(self, message: str, partial_report: "Report"):
        super().__init__(message)
        self.partial_report = partial_report


@lru_cache(maxsize=None)
def _state_names(n: int) -> tuple[str, ...]:
    return tuple(f"s{i}" for i in range(n))


def frame_count(n: int) -> int:
    """Number of distinct frames on n states: every serial belief relation
    combined with every total selection table."""
    full = (1 << n) - 1
    return full**n * (full + 1) ** (n * full)


def frame_code(frame: Frame) -> int:
    """Canonical integer encoding; enumeration order is ascending code."""
    full = frame.full
    code = 0
    for s in range(frame.n):
        code = code * full + (frame.belief[s] - 1)
    base = full + 1
    for s in range(frame.n):
        row = frame.selection[s]
        for e in range(1, full + 1):
            code = code * base + row[e]
    return code


def frame_from_code(n: int, code: int) -> Frame:
    full = (1 << n) - 1
    base = full + 1
    digits = []
    for _ in range(n * full):
        code, d = divmod(code, base)
        digits.append(d)
    digits.reverse()
    belief = []
    for _ in range(n):
        code, d = divmod(code, full)
        belief.append(d + 1)
    belief.reverse()
    if code:
        raise ValueError("code out of range for this state count")
    selection = []
    i = 0
    for _ in range(n):
        selection.append([0] + digits[i : i + full])
        i += full
    return Frame(_state_names(n), belief, selection)


def frame_digest(frame: Frame) -> str:
    return f"{frame.n}:{frame_code(frame)}"


def enumerate_frames(n: int, allow_large: bool = False) -> Iterator[Frame]:
    """All frames on n states, each exactly once, in canonical order.

    Refuses n >= 3 unless ``allow_large`` is set: the count grows as
    (2^n - 1)^n * (2^n)^(n(2^n - 1)) and is already astronomical at n = 3.
    """
    if n < 1:
        raise ValueError("need at least one state")
    if n >= 3 and not allow_large:
        raise ValueError(
            f"exhaustive enumeration of {frame_count(n)} frames on {n} states "
            "requires allow_large=True"
        )
    for code in range(frame_count(n)):
        yield frame_from_code(n, code)


def sample_frames(n: int, count: int, seed: int) -> Iterator[Frame]:
    """Uniform independent draws of belief sets and selection entries,
    deterministic for a fixed seed."""
    if n < 1:
        raise ValueError("need at least one state")
    if count < 1:
        raise ValueError("count must be positive")
    rng = random.Random(seed)
    full = (1 << n) - 1
    names = _state_names(n)
    for _ in range(count):
        belief = tuple(rng.randrange(1, full + 1) for _ in range(n))
        selection = tuple(
            (0,) + tuple(rng.randrange(0, full + 1) for _ in range(full))
            for _ in range(n)
        )
        yield Frame(names, belief, selection)


@dataclass
class FrameRecord:
    """Outcome of the three checks (and the always-valid set) on one frame."""

    digest: str
    property_pass: dict[int, bool]
    axiom_valid: dict[int, bool]
    agm_all_states: dict[int, bool]
    always_valid: dict[str, bool]
    replays: list[tuple[int, bool]]
    discrepancies: list[dict]


def triple_check(frame: Frame, ks: tuple[int, ...] = DEFAULT_KS) -> FrameRecord:
    """Run property, axiom and postulate checks on one frame and flag any
    disagreement the correspondence asserts cannot happen."""
    digest = frame_digest(frame)
    evaluator = SchemaEvaluator(frame)
    property_pass: dict[int, bool] = {}
    axiom_valid: dict[int, bool] = {}
    agm_all: dict[int, bool] = {}
    witnesses = {}
    for k in ks:
        w = check_property(frame, _PROP[k])
        witnesses[k] = w
        property_pass[k] = w is None
        axiom_valid[k] = evaluator.check_axiom(_AXIOM[k]) is None
        agm_all[k] = all(
            agm_event_check(frame, s, _AGM[k]) is None for s in range(frame.n)
        )
    always_valid = {
        "A1": evaluator.check_axiom(AxiomId.A1) is None,
        "RuleK5a": rule_valid_on_frame(frame, AxiomId.RULE_K5A) is None,
        "RuleK6": rule_valid_on_frame(frame, AxiomId.RULE_K6) is None,
    }
    for name, pid in (("K1", AgmPostulateId.K1), ("K5a", AgmPostulateId.K5A),
                      ("K6", AgmPostulateId.K6)):
        always_valid[name] = all(
            agm_event_check(frame, s, pid) is None for s in range(frame.n)
        )

    discrepancies: list[dict] = []
    for k in ks:
        if property_pass[k] != axiom_valid[k]:
            discrepancies.append(
                {"digest": digest, "kind": "property_vs_axiom", "k": k,
                 "property": property_pass[k], "axiom": axiom_valid[k]}
            )
        if k != 4 and property_pass[k] != agm_all[k]:
            discrepancies.append(
                {"digest": digest, "kind": "property_vs_agm", "k": k,
                 "property": property_pass[k], "agm": agm_all[k]}
            )
        if k == 4 and property_pass[k] and not agm_all[k]:
            discrepancies.append(
                {"digest": digest, "kind": "p4_without_k4", "k": k}
            )
    for name, ok in always_valid.items():
        if not ok:
            discrepancies.append(
                {"digest": digest, "kind": "always_valid", "which": name}
            )

    replays: list[tuple[int, bool]] = []
    for k in ks:
        w = witnesses[k]
        if w is None:
            continue
        model, s, instance = countermodel_from_witness(frame, _AXIOM[k], w)
        falsified = not truth(model, s, instance)
        replays.append((k, falsified))
        if not falsified:
            discrepancies.append(
                {"digest": digest, "kind": "countermodel_replay", "k": k}
            )
    return FrameRecord(
        digest, property_pass, axiom_valid, agm_all, always_valid, replays,
        discrepancies,
    )


@dataclass(frozen=True)
class SweepConfig:
    """What to sweep: state count, frame source, and which k to check."""

    size: int
    mode: str = "exhaustive"  # "exhaustive" | "random"
    count: int | None = None
    seed: int | None = None
    ks: tuple[int, ...] = DEFAULT_KS
    allow_large: bool = False

    def validate(self) -> None:
        if self.size < 1:
            raise ValueError("size must be at least 1")
        if self.mode not in ("exhaustive", "random"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.mode == "random":
            if self.count is None or self.count < 1:
                raise ValueError("random mode requires count >= 1")
            if self.seed is None:
                raise ValueError("random mode requires a seed")
        elif self.size >= 3 and not self.allow_large:
            raise ValueError(
                "exhaustive mode for size >= 3 requires allow_large "
                f"({frame_count(self.size)} frames)"
            )
        bad = [k for k in self.ks if k not in DEFAULT_KS]
        if bad or not self.ks:
            raise ValueError(f"ks must be a nonempty subset of {DEFAULT_KS}, got {self.ks}")

    def echo(self) -> dict:
        return {
            "size": self.size,
            "mode": self.mode,
            "count": self.count,
            "seed": self.seed,
            "ks": list(self.ks),
            "allow_large": self.allow_large,
        }


def _empty_counts() -> dict[str, int]:
    return {"pp": 0, "pf": 0, "fp": 0, "ff": 0}


@dataclass
class Report:
    """Aggregated sweep outcome; merging partial reports sums the counts."""

    config: dict
    totals: dict = field(default_factory=lambda: {"frames": 0, "property_violations": 0})
    per_axiom: dict = field(default_factory=dict)
    per_agm: dict = field(default_factory=dict)
    always_valid: dict = field(default_factory=dict)
    replay: dict = field(default_factory=lambda: {"attempted": 0, "falsified": 0})
    discrepancies: list = field(default_factory=list)
    duration_ms: int = 0

    @classmethod
    def empty(cls, config: dict, ks: tuple[int, ...]) -> "Report":
        return cls(
            config=config,
            per_axiom={_PROP[k].value: _empty_counts() for k in ks},
            per_agm={_AGM_NAME[k]: _empty_counts() for k in ks},
            always_valid={name: 0 for name in ALWAYS_VALID_NAMES},
        )

    def add_record(self, record: FrameRecord) -> None:
        self.totals["frames"] += 1
        for k, prop in record.property_pass.items():
            axiom = record.axiom_valid[k]
            cell = ("p" if prop else "f") + ("p" if axiom else "f")
            self.per_axiom[_PROP[k].value][cell] += 1
            agm = record.agm_all_states[k]
            cell = ("p" if prop else "f") + ("p" if agm else "f")
            self.per_agm[_AGM_NAME[k]][cell] += 1
            if not prop:
                self.totals["property_violations"] += 1
        for name, ok in record.always_valid.items():
            self.always_valid[name] += ok
        for _, falsified in record.replays:
            self.replay["attempted"] += 1
            self.replay["falsified"] += falsified
        self.discrepancies.extend(record.discrepancies)

    def to_json(self) -> dict:
        return {
            "config": self.config,
            "totals": self.totals,
            "per_axiom": self.per_axiom,
            "per_agm": self.per_agm,
            "always_valid": self.always_valid,
            "replay": self.replay,
            "discrepancies": self.discrepancies,
            "duration_ms": self.duration_ms,
        }


def merge_reports(parts: list[Report]) -> Report:
    """Combine partial reports over a partition of one frame stream.

    Associative and commutative up to the duration field: counts are
    summed and discrepancies re-sorted into a canonical order.
    """
    if not parts:
        raise ValueError("nothing to merge")
    if any(p.config != parts[0].config for p in parts):
        raise ValueError("cannot merge reports with different configs")
    merged = Report(
        config=parts[0].config,
        totals={key: 0 for key in parts[0].totals},
        per_axiom={name: _empty_counts() for name in parts[0].per_axiom},
        per_agm={name: _empty_counts() for name in parts[0].per_agm},
        always_valid={name: 0 for name in parts[0].always_valid},
    )
    for p in parts:
        for key, v in p.totals.items():
            merged.totals[key] += v
        for name, cells in p.per_axiom.items():
            for cell, v in cells.items():
                merged.per_axiom[name][cell] += v
        for name, cells in p.per_agm.items():
            for cell, v in cells.items():
                merged.per_agm[name][cell] += v
        for name, v in p.always_valid.items():
            merged.always_valid[name] += v
        merged.replay["attempted"] += p.replay["attempted"]
        merged.replay["falsified"] += p.replay["falsified"]
        merged.discrepancies.extend(p.discrepancies)
        merged.duration_ms += p.duration_ms
    merged.discrepancies.sort(
        key=lambda d: (d["digest"], d["kind"], d.get("k", 0), d.get("which", ""))
    )
    return merged


def _run_partition(payload: dict) -> Report:
    report = Report.empty(payload["config"], tuple(payload["ks"]))
    n = payload["size"]
    ks = tuple(payload["ks"])
    if payload["kind"] == "range":
        frames: Iterator[Frame] = (
            frame_from_code(n, code) for code in range(payload["start"], payload["stop"])
        )
    else:
        frames = (
            Frame(_state_names(n), belief, selection)
            for belief, selection in payload["frames"]
        )
    for frame in frames:
        report.add_record(triple_check(frame, ks))
    return report


def _make_payloads(cfg: SweepConfig, workers: int) -> list[dict]:
    base = {"config": cfg.echo(), "size": cfg.size, "ks": list(cfg.ks)}
    if cfg.mode == "exhaustive":
        total = frame_count(cfg.size)
        chunks = max(1, min(workers, total))
        bounds = [total * i // chunks for i in range(chunks + 1)]
        return [
            dict(base, kind="range", start=bounds[i], stop=bounds[i + 1])
            for i in range(chunks)
            if bounds[i] < bounds[i + 1]
        ]
    assert cfg.count is not None and cfg.seed is not None
    parts = [
        (fr.belief, fr.selection) for fr in sample_frames(cfg.size, cfg.count, cfg.seed)
    ]
    chunks = max(1, min(workers, len(parts)))
    bounds = [len(parts) * i // chunks for i in range(chunks + 1)]
    return [
        dict(base, kind="frames", frames=parts[bounds[i] : bounds[i + 1]])
        for i in range(chunks)
        if bounds[i] < bounds[i + 1]
    ]


def sweep(cfg: SweepConfig, workers: int = 1) -> Report:
    """Fold triple_check over the configured frame stream.

    With ``workers > 1`` the stream is partitioned across a process pool
    and the partial reports merged; a worker failure aborts the sweep with
    a SweepError carrying the report for whatever completed.
    """
    cfg.validate()
    started = time.perf_counter()
    payloads = _make_payloads(cfg, workers)
    partials: list[Report] = []
    if workers <= 1 or len(payloads) == 1:
        for payload in payloads:
            try:
                partials.append(_run_partition(payload))
            except Exception as exc:
                partial = merge_reports(partials) if partials else Report.empty(
                    cfg.echo(), cfg.ks
                )
                raise SweepError(f"sweep aborted: {exc}", partial) from exc
    else:
        with ProcessPoolExecutor(max_workers=len(payloads)) as pool:
            futures = [pool.submit(_run_partition, p) for p in payloads]
            wait(futures, return_when=FIRST_EXCEPTION)
            failure = None
            for fut in futures:
                if fut.done() and fut.exception() is None:
                    partials.append(fut.result())
                elif fut.done():
                    failure = fut.exception()
                else:
                    fut.cancel()
            if failure is not None:
                partial = merge_reports(partials) if partials else Report.empty(
                    cfg.echo(), cfg.ks
                )
                raise SweepError(f"sweep aborted: {failure}", partial) from failure
    report = merge_reports(partials)
    report.duration_ms = int((time.perf_counter() - started) * 1000)
    return report
