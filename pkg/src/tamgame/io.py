"""Model documents (JSON with exact decimal strings), number rendering and sweep CSV."""

from __future__ import annotations

import csv
import io
import json
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .equilibrium import DEFAULT_GRID, enumerate_sne, grid_points
from .model import (
    EFFORTS, GRAND_STATES, SINGLETON_STATES, STRATEGIES, TYPES, AgentType, CostModel, Effort,
    GrandState, SingletonState, TamModel,
)
from .thresholds import compute_deltas, sne_interval
from .welfare import welfare_curve

BUNDLED = ("example1",)

_UNSIGNED = re.compile(r"\d+(\.\d+)?|\d+/[1-9]\d*")
_SIGNED = re.compile(r"[-+]?(\d+(\.\d+)?|\d+/[1-9]\d*)")


class ModelDocumentError(ValueError):
    """A model document is malformed; ``location`` names the offending key."""

    def __init__(self, message: str, location: str | None = None):
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)


def singleton_key(s: SingletonState) -> str:
    return f"{s.effort.label}.{s.agent_type.label}"


def grand_key(g: GrandState) -> str:
    return f"{g.effort_1.label}.{g.effort_2.label}.{g.type_1.label}.{g.type_2.label}"


def cost_key(e: Effort, t: AgentType) -> str:
    return f"{e.label}.{t.label}"


def parse_scalar(text, location: str, signed: bool = False) -> Fraction:
    if not isinstance(text, str):
        raise ModelDocumentError(
            f"expected a decimal string, got {type(text).__name__} (floats are not exact)",
            location)
    pattern = _SIGNED if signed else _UNSIGNED
    if not pattern.fullmatch(text.strip()):
        kind = "signed decimal" if signed else "non-negative decimal"
        raise ModelDocumentError(f"malformed {kind} {text!r}", location)
    return Fraction(text.strip())


def _reject_duplicates(pairs):
    seen = {}
    for key, value in pairs:
        if key in seen:
            raise ModelDocumentError("duplicate key", key)
        seen[key] = value
    return seen


def _section(doc: dict, path: tuple[str, ...]) -> dict:
    node = doc
    for i, key in enumerate(path):
        if not isinstance(node, dict) or key not in node:
            raise ModelDocumentError("missing section", ".".join(path[: i + 1]))
        node = node[key]
    if not isinstance(node, dict):
        raise ModelDocumentError("expected an object", ".".join(path))
    return node


def _read_table(section: dict, where: str, keys: list[str], signed: bool = False
                ) -> dict[str, Fraction]:
    extra = sorted(set(section) - set(keys))
    if extra:
        raise ModelDocumentError("unknown key", f"{where}.{extra[0]}")
    out = {}
    for key in keys:
        if key not in section:
            raise ModelDocumentError("missing key", f"{where}.{key}")
        out[key] = parse_scalar(section[key], f"{where}.{key}", signed)
    return out


@dataclass(frozen=True)
class ModelDocument:
    name: str
    machine: TamModel
    cost: CostModel


def parse_document(text: str) -> ModelDocument:
    """Parse a model document; asymmetric grand tables are rejected here."""
    try:
        doc = json.loads(text, object_pairs_hook=_reject_duplicates)
    except json.JSONDecodeError as exc:
        raise ModelDocumentError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ModelDocumentError("top level must be an object")
    name = doc.get("name", "unnamed")
    singles = _read_table(_section(doc, ("machine", "singleton")), "machine.singleton",
                          [singleton_key(s) for s in SINGLETON_STATES])
    grands = _read_table(_section(doc, ("machine", "grand")), "machine.grand",
                         [grand_key(g) for g in GRAND_STATES])
    costs = _read_table(_section(doc, ("cost",)), "cost",
                        [cost_key(e, t) for e in EFFORTS for t in TYPES], signed=True)
    for g in GRAND_STATES:
        h = g.swapped()
        if g < h and grands[grand_key(g)] != grands[grand_key(h)]:
            raise ModelDocumentError(
                f"asymmetric grand table: {grands[grand_key(g)]} vs "
                f"{grand_key(h)} = {grands[grand_key(h)]}", f"machine.grand.{grand_key(g)}")
    m = TamModel.from_maps({s: singles[singleton_key(s)] for s in SINGLETON_STATES},
                           {g: grands[grand_key(g)] for g in GRAND_STATES})
    c = CostModel.from_map({(e, t): costs[cost_key(e, t)] for e in EFFORTS for t in TYPES})
    return ModelDocument(str(name), m, c)


def parse_model(text: str) -> tuple[TamModel, CostModel]:
    doc = parse_document(text)
    return doc.machine, doc.cost


def exact_string(x: Fraction) -> str:
    """Terminating decimals as decimals, anything else as ``a/b``."""
    den = x.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return f"{x.numerator}/{x.denominator}"
    places = max(twos, fives)
    if places == 0:
        return str(x.numerator)
    scaled = abs(x.numerator) * 10 ** places // x.denominator
    sign = "-" if x < 0 else ""
    digits = str(scaled).rjust(places + 1, "0")
    return f"{sign}{digits[:-places]}.{digits[-places:]}".rstrip("0").rstrip(".")


def serialize_model(m: TamModel, c: CostModel, name: str = "model") -> str:
    doc = {
        "name": name,
        "machine": {
            "singleton": {singleton_key(s): exact_string(m[s]) for s in SINGLETON_STATES},
            "grand": {grand_key(g): exact_string(m[g]) for g in GRAND_STATES},
        },
        "cost": {cost_key(e, t): exact_string(c(e, t)) for e in EFFORTS for t in TYPES},
    }
    return json.dumps(doc, indent=2) + "\n"


def load_document(source: str | Path) -> ModelDocument:
    """Load a bundled model by name (``example1``) or a document from disk."""
    if str(source) in BUNDLED:
        text = resources.files("tamgame").joinpath(f"data/{source}.json").read_text("utf-8")
    else:
        try:
            text = Path(source).read_text("utf-8")
        except OSError as exc:
            raise ModelDocumentError(f"cannot read model: {exc.strerror}", str(source)) from exc
    return parse_document(text)


def load_model(source: str | Path) -> tuple[TamModel, CostModel]:
    doc = load_document(source)
    return doc.machine, doc.cost


def round_half_up(x: Fraction, places: int = 6) -> str:
    """Fixed-point rendering, halves rounded away from zero."""
    scale = 10 ** places
    n = math.floor(abs(x) * scale + Fraction(1, 2))
    sign = "-" if x < 0 and n else ""
    whole, frac = divmod(n, scale)
    return f"{sign}{whole}.{str(frac).rjust(places, '0')}" if places else f"{sign}{whole}"


def format_number(x, places: int = 6) -> str:
    """Exact value first, then a rounded decimal when the exact form is a fraction or surd."""
    if isinstance(x, (int, Fraction)):
        text = exact_string(Fraction(x))
        if "/" not in text:
            return text
        return f"{text} ≈ {round_half_up(Fraction(x), places)}"
    return f"{x} ≈ {round_half_up(x.rational_approximation(places + 10), places)}"


SWEEP_HEADER = ("k", "grid_n", "p_high", "sne_ll", "sne_lh", "sne_hl", "sne_hh",
                "int_ll", "int_lh", "int_hl", "int_hh", "ew_ll", "ew_lh", "ew_hh")

_EW_STRATEGIES = tuple(s for s in STRATEGIES if s.name != "s_hl")


@dataclass(frozen=True)
class SweepRow:
    k: int
    grid_n: int
    p_high: Fraction
    sne: tuple[bool, bool, bool, bool]
    interval: tuple[bool, bool, bool, bool]
    welfare: tuple[Fraction, Fraction, Fraction]

    @property
    def consistent(self) -> bool:
        return self.sne == self.interval

    def cells(self, exact: bool = False) -> list[str]:
        def num(x: Fraction) -> str:
            return str(x) if exact else round_half_up(x)
        flags = [str(int(f)) for f in self.sne + self.interval]
        return [str(self.k), str(self.grid_n), num(self.p_high), *flags,
                *(num(w) for w in self.welfare)]


def sweep_rows(m: TamModel, c: CostModel, grid_n: int = DEFAULT_GRID) -> list[SweepRow]:
    d = compute_deltas(m, c)
    intervals = [sne_interval(m, c, s, d) for s in STRATEGIES]
    curves = [welfare_curve(m, c, s) for s in _EW_STRATEGIES]
    rows = []
    for k, p in enumerate(grid_points(grid_n), start=1):
        report = enumerate_sne(m, c, p, include_asymmetric=False)
        rows.append(SweepRow(
            k, grid_n, p.p_high,
            tuple(report.is_sne(s) for s in STRATEGIES),
            tuple(iv.contains(p.p_high) for iv in intervals),
            tuple(curve(p) for curve in curves),
        ))
    return rows


def sweep_csv(rows: list[SweepRow], exact: bool = False) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SWEEP_HEADER)
    for row in rows:
        writer.writerow(row.cells(exact))
    return buf.getvalue()
