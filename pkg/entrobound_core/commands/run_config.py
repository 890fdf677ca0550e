# entrobound_core/commands/run_config.py
import argparse
import logging
import re
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any, Dict, List, Optional, Sequence, TextIO, Tuple

from entrobound_core.bounds.bound_result import FormRequest
from entrobound_core.errors import EqualExponentsError, SpecParseError
from entrobound_core.sequences.exponent_pair import ExponentPair, format_exponent
from entrobound_core.sequences.sequence_spec import SequenceSpec
from entrobound_core.sequences.spec_parser import parse_decimal, parse_exponent, parse_sequence_spec

if TYPE_CHECKING:
    from entrobound_core.app_config import AppConfig
    from entrobound_core.output.report_writer import ReportWriter

logger = logging.getLogger("entrobound.commands.run_config")

COMMAND_NAMES = ("bound", "classify", "tail", "oracle", "verify", "table1")
DISTINCT_EXPONENT_COMMANDS = ("bound", "classify")

DYADIC_RANGE_RE = re.compile(r"^2\^(?P<low>\d+)\.\.2\^(?P<high>\d+)$")
DYADIC_POINT_RE = re.compile(r"^2\^(?P<power>\d+)$")
INT_RANGE_RE = re.compile(r"^(?P<low>\d+)\.\.(?P<high>\d+)$")
INT_RE = re.compile(r"^\d+$")

MAX_GRID_POWER = 62


def _strictly_increasing(values: Tuple, what: str) -> Tuple:
    for before, after in zip(values, values[1:]):
        if after <= before:
            raise SpecParseError(f"{what} must be strictly increasing, got {before} then {after}")
    return values


def _positive_int(text: str, what: str) -> int:
    literal = text.strip()
    if not INT_RE.match(literal) or int(literal) < 1:
        raise SpecParseError(f"{what} must be a positive integer, got '{text}'")
    return int(literal)


def _power(text: str) -> int:
    power = int(text)
    if power > MAX_GRID_POWER:
        raise SpecParseError(f"2^{power} is beyond the supported grid (largest power {MAX_GRID_POWER})")
    return power


def _seed(text: str) -> int:
    literal = text.strip()
    if not INT_RE.match(literal):
        raise SpecParseError(f"seed must be a nonnegative integer, got '{text}'")
    return int(literal)


def parse_n_grid(text: str) -> Tuple[int, ...]:
    """'1,16,256' or the dyadic range '2^a..2^b'; single points may be written '2^a'."""
    source = text.strip()
    match = DYADIC_RANGE_RE.match(source)
    if match:
        low, high = _power(match.group("low")), _power(match.group("high"))
        if high < low:
            raise SpecParseError(f"empty dyadic range '{text}'")
        return tuple(2**j for j in range(low, high + 1))

    values = []
    for item in source.split(","):
        point = DYADIC_POINT_RE.match(item.strip())
        values.append(2 ** _power(point.group("power")) if point else _positive_int(item, "n"))
    return _strictly_increasing(tuple(values), "n grid")


def parse_index_list(text: str, what: str = "k") -> Tuple[int, ...]:
    """'1,2,5' or the inclusive range 'a..b'."""
    source = text.strip()
    match = INT_RANGE_RE.match(source)
    if match:
        low, high = int(match.group("low")), int(match.group("high"))
        if low < 1 or high < low:
            raise SpecParseError(f"invalid {what} range '{text}'")
        return tuple(range(low, high + 1))
    return _strictly_increasing(tuple(_positive_int(item, what) for item in source.split(",")), what)


def parse_eps_list(text: str) -> Tuple[float, ...]:
    values = []
    for item in text.split(","):
        value = parse_decimal(item, "eps")
        if value <= 0:
            raise SpecParseError(f"eps must be positive, got '{item}'")
        values.append(value)
    return tuple(values)


def parse_forms(text: str) -> Tuple[FormRequest, ...]:
    forms = tuple(FormRequest.from_string(item) for item in text.split(",") if item.strip())
    if not forms:
        raise SpecParseError("at least one bound form is required")
    return forms


@dataclass(frozen=True)
class RunConfig:
    """A fully parsed command invocation."""

    command: str
    spec: Optional[str] = None
    p: Optional[float] = None
    q: Optional[float] = None
    n_grid: Tuple[int, ...] = ()
    forms: Tuple[FormRequest, ...] = ()
    output: str = "json"
    rtol: Optional[float] = None
    window: Optional[int] = None
    plateau_rtol: Optional[float] = None
    seed: Optional[int] = None
    k: Tuple[int, ...] = ()
    r: Optional[float] = None
    eps: Tuple[float, ...] = ()
    quick: bool = False
    checks: Tuple[str, ...] = ()
    topic: Optional[str] = None
    _parsed_spec: Optional[SequenceSpec] = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.command not in COMMAND_NAMES + ("help",):
            raise SpecParseError(f"unknown command '{self.command}'")
        _strictly_increasing(self.n_grid, "n grid")
        if self.command in DISTINCT_EXPONENT_COMMANDS and self.p is not None and self.q is not None and self.p == self.q:
            raise EqualExponentsError(f"{self.command} needs p != q (both are {format_exponent(self.p)})")
        if self.spec is not None and self._parsed_spec is None:
            object.__setattr__(self, "_parsed_spec", parse_sequence_spec(self.spec))

    @property
    def sequence(self) -> SequenceSpec:
        if self._parsed_spec is None:
            raise SpecParseError(f"{self.command} needs --sigma")
        return self._parsed_spec

    @property
    def pair(self) -> ExponentPair:
        if self.p is None or self.q is None:
            raise SpecParseError(f"{self.command} needs --p and --q")
        return ExponentPair(self.p, self.q)

    @classmethod
    def from_namespace(cls, args: argparse.Namespace) -> "RunConfig":
        def text(name: str) -> Optional[str]:
            return getattr(args, name, None)

        def optional(name: str, parse):
            value = text(name)
            return None if value is None else parse(value)

        return cls(
            command=args.command,
            spec=text("sigma"),
            p=optional("p", parse_exponent),
            q=optional("q", parse_exponent),
            n_grid=optional("n", parse_n_grid) or (),
            forms=optional("forms", parse_forms) or (),
            output=getattr(args, "output", None) or "json",
            rtol=optional("rtol", lambda value: parse_decimal(value, "rtol")),
            window=optional("window", lambda value: _positive_int(value, "window")),
            plateau_rtol=optional("plateau_rtol", lambda value: parse_decimal(value, "plateau-rtol")),
            seed=optional("seed", _seed),
            k=optional("k", parse_index_list) or (),
            r=optional("r", parse_exponent),
            eps=optional("eps", parse_eps_list) or (),
            quick=bool(getattr(args, "quick", False)),
            checks=tuple(getattr(args, "check", None) or ()),
            topic=text("topic"),
        )

    def to_dict(self) -> Dict[str, Any]:
        """The echo placed under "config" in every report; only fields that were given."""
        data: Dict[str, Any] = {}
        if self.spec is not None:
            data["sigma"] = self.sequence.describe()
        if self.p is not None:
            data["p"] = format_exponent(self.p)
        if self.q is not None:
            data["q"] = format_exponent(self.q)
        if self.n_grid:
            data["n"] = list(self.n_grid)
        if self.forms:
            data["forms"] = [form.value for form in self.forms]
        if self.k:
            data["k"] = list(self.k)
        if self.r is not None:
            data["r"] = format_exponent(self.r)
        if self.eps:
            data["eps"] = list(self.eps)
        if self.command == "verify":
            data["quick"] = self.quick
            if self.checks:
                data["checks"] = list(self.checks)
        return data


@dataclass
class CommandContext:
    """Everything a command handler needs: the invocation, settings, and where to write."""

    run: RunConfig
    config: "AppConfig"
    writer: "ReportWriter"
    stream: TextIO
    registry: Any = None

    @property
    def rtol(self) -> float:
        return self.run.rtol if self.run.rtol is not None else self.config.numerics.rtol

    @property
    def window(self) -> int:
        return self.run.window if self.run.window is not None else self.config.numerics.window

    @property
    def plateau_rtol(self) -> float:
        return self.run.plateau_rtol if self.run.plateau_rtol is not None else self.config.numerics.plateau_rtol

    @property
    def seed(self) -> int:
        return self.run.seed if self.run.seed is not None else self.config.oracle.seed

    def emit(self, rows: List[Dict[str, Any]], columns: Optional[Sequence[str]] = None, **settings: Any) -> None:
        """Writes the report; settings are the effective numeric knobs echoed under "config"."""
        echo = self.run.to_dict()
        echo.update(settings)
        self.writer.write(self.run.command, echo, rows, self.stream, columns)
