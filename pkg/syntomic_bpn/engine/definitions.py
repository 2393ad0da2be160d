"""Load user-supplied spectral sequences from JSON definition files.

Schema::

    {
      "name": "optional name",
      "p": 2,
      "generators": [
        {"name": "t", "kind": "laurent", "degree": -2, "adams_weight": 0,
         "filtration": 1, "truncation": null, "symbol": null, "label_scale": 1}
      ],
      "rules": [
        {"page": 2, "matcher": {"generator": "t", "power": 1},
         "image": [{"coefficient": 1, "exponents": {"t": 3, "λ1": 1}}]}
      ],
      "shift": "bockstein" | "motivic" |
               {"degree": -1, "weight": 1, "weight_per_page": 0, "filtration_per_page": 1},
      "window": {"degree": [-8, 8], "weight": null, "filtration": [-4, 8]}
    }

Several rule entries on the same page are merged into one rule.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Tuple, Union

from ..algebra.bigraded import AlgebraPresentation, GeneratorKind, GeneratorSpec
from ..config import Window
from ..exceptions import ErrorCode, SyntomicError
from .models import DifferentialRule, DifferentialShift, FactorImage, SpectralSequence

__all__ = ["Definition", "load_definition", "parse_definition"]


@dataclass(frozen=True)
class Definition:
    """A parsed definition file."""

    sequence: SpectralSequence
    window: Optional[Window]


def _fail(path: str, message: str) -> SyntomicError:
    return SyntomicError(f"{path}: {message}", ErrorCode.PARSE_ERROR, {"field": path})


def _require(mapping: Mapping[str, Any], key: str, path: str) -> Any:
    if not isinstance(mapping, Mapping):
        raise _fail(path, "expected an object")
    if key not in mapping:
        raise _fail(f"{path}.{key}" if path else key, "missing field")
    return mapping[key]


def _integer(value: Any, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise _fail(path, f"expected an integer, got {value!r}")
    return value


def _interval(value: Any, path: str) -> Optional[Tuple[int, int]]:
    if value is None:
        return None
    if not isinstance(value, list) or len(value) != 2:
        raise _fail(path, "expected [low, high]")
    return _integer(value[0], f"{path}[0]"), _integer(value[1], f"{path}[1]")


def _generators(raw: Any) -> Tuple[List[GeneratorSpec], Dict[str, int]]:
    if not isinstance(raw, list) or not raw:
        raise _fail("generators", "expected a nonempty list")
    specs: List[GeneratorSpec] = []
    truncations: Dict[str, int] = {}
    for position, item in enumerate(raw):
        path = f"generators[{position}]"
        name = _require(item, "name", path)
        if not isinstance(name, str):
            raise _fail(f"{path}.name", "expected a string")
        kind = _require(item, "kind", path)
        try:
            kind = GeneratorKind(kind)
        except ValueError:
            raise _fail(f"{path}.kind", f"unknown kind {kind!r}") from None
        try:
            specs.append(
                GeneratorSpec(
                    name=name,
                    kind=kind,
                    degree=_integer(_require(item, "degree", path), f"{path}.degree"),
                    adams_weight=_integer(_require(item, "adams_weight", path), f"{path}.adams_weight"),
                    filtration=_integer(item.get("filtration", 0), f"{path}.filtration"),
                    symbol=item.get("symbol"),
                    label_scale=_integer(item.get("label_scale", 1), f"{path}.label_scale"),
                )
            )
        except SyntomicError as exc:
            if exc.code is ErrorCode.PARSE_ERROR:
                raise
            raise _fail(path, exc.message) from None
        if item.get("truncation") is not None:
            truncations[name] = _integer(item["truncation"], f"{path}.truncation")
    return specs, truncations


def _shift(raw: Any) -> DifferentialShift:
    if raw is None or raw == "bockstein":
        return DifferentialShift.bockstein()
    if raw == "motivic":
        return DifferentialShift.motivic()
    if isinstance(raw, Mapping):
        return DifferentialShift(
            degree=_integer(_require(raw, "degree", "shift"), "shift.degree"),
            weight=_integer(_require(raw, "weight", "shift"), "shift.weight"),
            weight_per_page=_integer(raw.get("weight_per_page", 0), "shift.weight_per_page"),
            filtration_per_page=_integer(raw.get("filtration_per_page", 0), "shift.filtration_per_page"),
        )
    raise _fail("shift", f"unknown shift {raw!r}")


def _rules(raw: Any, algebra: AlgebraPresentation) -> List[DifferentialRule]:
    if raw is None:
        return []
    if not isinstance(raw, list):
        raise _fail("rules", "expected a list")
    by_page: Dict[int, List[FactorImage]] = {}
    for position, item in enumerate(raw):
        path = f"rules[{position}]"
        page = _integer(_require(item, "page", path), f"{path}.page")
        matcher = _require(item, "matcher", path)
        generator = _require(matcher, "generator", f"{path}.matcher")
        if generator not in algebra.names:
            raise _fail(f"{path}.matcher.generator", f"unknown generator {generator!r}")
        power = _integer(matcher.get("power", 1), f"{path}.matcher.power")
        terms = _require(item, "image", path)
        if not isinstance(terms, list):
            raise _fail(f"{path}.image", "expected a list of terms")
        parsed = []
        for index, term in enumerate(terms):
            term_path = f"{path}.image[{index}]"
            exponents = _require(term, "exponents", term_path)
            if not isinstance(exponents, Mapping):
                raise _fail(f"{term_path}.exponents", "expected an object")
            for name, value in exponents.items():
                if name not in algebra.names:
                    raise _fail(f"{term_path}.exponents", f"unknown generator {name!r}")
                _integer(value, f"{term_path}.exponents.{name}")
            coefficient = _integer(term.get("coefficient", 1), f"{term_path}.coefficient")
            parsed.append((exponents, coefficient))
        try:
            image = algebra.element(parsed)
        except SyntomicError as exc:
            raise _fail(f"{path}.image", exc.message) from None
        by_page.setdefault(page, []).append(FactorImage(generator, image, power))
    return [DifferentialRule(page, tuple(assignments)) for page, assignments in sorted(by_page.items())]


def parse_definition(data: Any, name: str = "custom") -> Definition:
    """Build a spectral sequence from decoded JSON; rule/shift mismatches raise BIDEGREE_MISMATCH."""
    if not isinstance(data, Mapping):
        raise _fail("", "top level must be an object")
    p = _integer(_require(data, "p", ""), "p")
    specs, truncations = _generators(_require(data, "generators", ""))
    try:
        algebra = AlgebraPresentation(p, tuple(specs), truncations)
    except SyntomicError as exc:
        raise _fail("generators", exc.message) from None
    shift = _shift(data.get("shift"))
    rules = _rules(data.get("rules"), algebra)
    window = None
    raw_window = data.get("window")
    if raw_window is not None:
        degree = _interval(_require(raw_window, "degree", "window"), "window.degree")
        window = Window(
            degree,  # type: ignore[arg-type]
            _interval(raw_window.get("weight"), "window.weight"),
            _interval(raw_window.get("filtration"), "window.filtration"),
        )
    sequence = SpectralSequence(
        name=str(data.get("name", name)), algebra=algebra, shift=shift, rules=tuple(rules)
    )
    return Definition(sequence, window)


def load_definition(source: Union[str, Path]) -> Definition:
    """Read and parse a definition file."""
    path = Path(source)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise SyntomicError(f"cannot read {path}: {exc}", ErrorCode.PARSE_ERROR) from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SyntomicError(
            f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}",
            ErrorCode.PARSE_ERROR,
            {"line": exc.lineno, "column": exc.colno},
        ) from None
    return parse_definition(data, name=path.stem)
