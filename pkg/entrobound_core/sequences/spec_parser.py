# entrobound_core/sequences/spec_parser.py
import logging
import math
import os
import re
from typing import Dict, List, Optional, Tuple

from entrobound_core.errors import SpecParseError
from entrobound_core.sequences.sequence_spec import (
    Explicit,
    ExpExp,
    ExpLog,
    ExpPoly,
    Geometric,
    PolyLog,
    Polynomial,
    SequenceSpec,
    TailKind,
    TailModel,
)

logger = logging.getLogger("entrobound.sequences.parser")

DECIMAL_RE = re.compile(r"^[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?$")
FAMILY_SPEC_RE = re.compile(r"^(?P<family>[a-z]+):(?P<params>.*)$")
TAIL_LINE_RE = re.compile(r"^#\s*tail\s+(?P<kind>[a-z]+)(?:\s+(?P<ratio>\S+))?\s*$", re.IGNORECASE)

# family -> (constructor, ordered parameter names as written in the spec string)
FAMILY_GRAMMAR: Dict[str, Tuple[type, Tuple[str, ...]]] = {
    "geom": (Geometric, ("c", "b")),
    "poly": (Polynomial, ("a", "alpha")),
    "polylog": (PolyLog, ("a", "alpha", "beta")),
    "explog": (ExpLog, ("a", "lambda")),
    "exppoly": (ExpPoly, ("a", "lambda")),
    "expexp": (ExpExp, ("a", "lambda")),
}

# optional trailing parameters with their defaults
FAMILY_OPTIONAL: Dict[str, Tuple[Tuple[str, float], ...]] = {
    "explog": (("c", 1.0),),
    "exppoly": (("c", 1.0),),
    "expexp": (("c", 1.0),),
}


def parse_decimal(text: str, what: str = "value") -> float:
    """Locale-independent decimal literal ('.' separator, optional exponent)."""
    literal = text.strip()
    if not DECIMAL_RE.match(literal):
        raise SpecParseError(f"invalid decimal literal for {what}: '{text}'")
    return float(literal)


def parse_exponent(text: str) -> float:
    """An exponent in (0, inf]; infinity is spelled literally as 'inf'."""
    literal = text.strip()
    if literal == "inf":
        return math.inf
    value = parse_decimal(literal, "exponent")
    if value <= 0:
        raise SpecParseError(f"exponent must be positive or 'inf', got '{text}'")
    return value


def _parse_params(
    params: str, expected: Tuple[str, ...], family: str, optional: Tuple[Tuple[str, float], ...] = ()
) -> List[float]:
    known = expected + tuple(name for name, _ in optional)
    seen: Dict[str, float] = {}
    for item in params.split(","):
        if "=" not in item:
            raise SpecParseError(f"{family}: expected key=value, got '{item}'")
        key, value = item.split("=", 1)
        key = key.strip()
        if key not in known:
            raise SpecParseError(f"{family}: unknown parameter '{key}' (expected {', '.join(known)})")
        if key in seen:
            raise SpecParseError(f"{family}: parameter '{key}' given twice")
        seen[key] = parse_decimal(value, f"{family}.{key}")
    missing = [k for k in expected if k not in seen]
    if missing:
        raise SpecParseError(f"{family}: missing parameter(s) {', '.join(missing)}")
    return [seen[k] for k in expected] + [seen.get(name, default) for name, default in optional]


def parse_sequence_file(path: str, display_path: Optional[str] = None) -> Explicit:
    """One positive decimal per line, nonincreasing; optional first line '#tail geometric <ratio>'."""
    try:
        with open(path, "r", encoding="utf-8") as handle:
            lines = handle.read().splitlines()
    except OSError as e:
        raise SpecParseError(f"cannot read sequence file '{path}': {e}")

    tail = TailModel.none()
    values: List[float] = []
    for line_no, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            match = TAIL_LINE_RE.match(line)
            if match and not values and line_no == _first_content_line(lines):
                kind = TailKind.from_string(match.group("kind"))
                ratio_text = match.group("ratio")
                if kind is TailKind.GEOMETRIC:
                    if ratio_text is None:
                        raise SpecParseError(f"{path}:{line_no}: geometric tail needs a ratio")
                    tail = TailModel.geometric_extension(parse_decimal(ratio_text, "tail ratio"))
                elif ratio_text is not None:
                    raise SpecParseError(f"{path}:{line_no}: tail '{kind.value}' takes no ratio")
                else:
                    tail = TailModel(kind)
                continue
            raise SpecParseError(f"{path}:{line_no}: only a leading '#tail ...' line may start with '#'")
        values.append(parse_decimal(line, f"{path}:{line_no}"))

    logger.debug(f"Read {len(values)} values from {path} (tail={tail.describe()})")
    return Explicit(tuple(values), tail, source=display_path or path)


def _first_content_line(lines: List[str]) -> int:
    for line_no, raw in enumerate(lines, start=1):
        if raw.strip():
            return line_no
    return 0


def parse_sequence_spec(text: str, base_dir: Optional[str] = None) -> SequenceSpec:
    """Parse the sequence mini-language, e.g. 'geom:c=1,b=2' or 'file:weights.txt'."""
    source = text.strip()
    if source.startswith("file:"):
        raw_path = source[len("file:"):]
        if not raw_path:
            raise SpecParseError("file: spec needs a path")
        path = raw_path if os.path.isabs(raw_path) or base_dir is None else os.path.join(base_dir, raw_path)
        return parse_sequence_file(path, display_path=raw_path)

    match = FAMILY_SPEC_RE.match(source)
    if not match:
        raise SpecParseError(f"cannot parse sequence spec '{text}'")
    family = match.group("family")
    if family not in FAMILY_GRAMMAR:
        raise SpecParseError(f"unknown sequence family '{family}' (known: {', '.join(FAMILY_GRAMMAR)}, file)")
    constructor, names = FAMILY_GRAMMAR[family]
    args = _parse_params(match.group("params"), names, family, FAMILY_OPTIONAL.get(family, ()))
    return constructor(*args)
