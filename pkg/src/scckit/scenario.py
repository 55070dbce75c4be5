"""Scripted platform resources and the `.scn` scenario driver.

A scenario is a line-per-step script against a sealed runtime:

    # provision the ad text, then capture a frame
    set IP "Ads Inc"
    emit Camera picture(640x480,seed=7)

``set`` updates a source's pull value without publishing; ``emit`` does both.
Literals are true/false, decimal integers, double-quoted strings with \\"
and \\\\ escapes, and picture(WxH,seed=N).
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .decls import DataType, NAME_RE
from .errors import KernelError, ParseError
from .runtime import Runtime
from .values import INT64_MAX, INT64_MIN, PictureData, Value, render_literal


class ScriptedSource:
    """Source provider whose current value is driven by a scenario."""

    def __init__(self, initial: Value | None = None):
        self._current = initial

    def set(self, v: Value) -> None:
        self._current = v

    def current(self) -> Value | None:
        return self._current


class RecordingSink:
    """Action sink that keeps every delivered value, in order."""

    def __init__(self):
        self.deliveries: list[Value] = []

    def __call__(self, v: Value) -> None:
        self.deliveries.append(v)


@dataclass(frozen=True)
class SetStep:
    source: str
    value: Value


@dataclass(frozen=True)
class EmitStep:
    source: str
    value: Value


Step = SetStep | EmitStep


@dataclass(frozen=True)
class Scenario:
    steps: tuple[Step, ...]

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))


_CMD_RE = re.compile(r"(set|emit)\b")
_WORD_RE = re.compile(r"true\b|false\b")
_INT_RE = re.compile(r"-?[0-9]+")
_PICTURE_RE = re.compile(r"picture\(([0-9]+)x([0-9]+),seed=(-?[0-9]+)\)")


def parse_scenario(text: str, origin: str = "<memory>") -> Scenario:
    steps = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        step = _parse_line(line, lineno, origin)
        if step is not None:
            steps.append(step)
    return Scenario(tuple(steps))


def _err(origin, lineno, col, detail):
    return ParseError("SCENARIO_PARSE_ERROR", detail, origin, lineno, col)


def _parse_line(line: str, lineno: int, origin: str):
    i = _skip_spaces(line, 0)
    if i >= len(line) or line[i] == "#":
        return None
    cmd = _CMD_RE.match(line, i)
    if cmd is None:
        raise _err(origin, lineno, i + 1, "expected 'set' or 'emit'")
    i = _skip_spaces(line, cmd.end())
    name = NAME_RE.match(line, i)
    if name is None:
        raise _err(origin, lineno, i + 1, "expected a source name")
    i = _skip_spaces(line, name.end())
    value, i = _parse_literal(line, i, lineno, origin)
    i = _skip_spaces(line, i)
    if i < len(line) and line[i] != "#":
        raise _err(origin, lineno, i + 1, f"unexpected text after step: {line[i:]!r}")
    step_cls = SetStep if cmd.group(1) == "set" else EmitStep
    return step_cls(name.group(0), value)


def _skip_spaces(line: str, i: int) -> int:
    while i < len(line) and line[i].isspace():
        i += 1
    return i


def _parse_literal(line: str, i: int, lineno: int, origin: str) -> tuple[Value, int]:
    if i >= len(line):
        raise _err(origin, lineno, i + 1, "expected a literal")
    c = line[i]
    if c == '"':
        return _parse_string(line, i, lineno, origin)
    word = _WORD_RE.match(line, i)
    if word is not None:
        return Value(DataType.BOOL, word.group(0) == "true"), word.end()
    if line.startswith("picture", i):
        m = _PICTURE_RE.match(line, i)
        if m is None:
            raise _err(origin, lineno, i + 1, "malformed picture literal; expected picture(WxH,seed=N)")
        width, height, seed = int(m.group(1)), int(m.group(2)), int(m.group(3))
        if not INT64_MIN <= seed <= INT64_MAX:
            raise _err(origin, lineno, i + 1, "picture seed out of 64-bit range")
        try:
            return Value(DataType.PICTURE, PictureData(width, height, seed)), m.end()
        except KernelError as exc:
            raise _err(origin, lineno, i + 1, exc.detail)
    num = _INT_RE.match(line, i)
    if num is not None:
        n = int(num.group(0))
        if not INT64_MIN <= n <= INT64_MAX:
            raise _err(origin, lineno, i + 1, "integer literal out of 64-bit range")
        return Value(DataType.INT, n), num.end()
    raise _err(origin, lineno, i + 1, f"expected a literal, found {line[i:]!r}")


def _parse_string(line: str, i: int, lineno: int, origin: str) -> tuple[Value, int]:
    out = []
    j = i + 1
    while j < len(line):
        c = line[j]
        if c == '"':
            return Value(DataType.STRING, "".join(out)), j + 1
        if c == "\\":
            if j + 1 >= len(line) or line[j + 1] not in '"\\':
                raise _err(origin, lineno, j + 1, "unknown escape; only \\\" and \\\\ are supported")
            out.append(line[j + 1])
            j += 2
        else:
            out.append(c)
            j += 1
    raise _err(origin, lineno, i + 1, "unterminated string literal")


def format_scenario(sc: Scenario) -> str:
    """Canonical text whose parse is ``sc`` again."""
    lines = []
    for step in sc.steps:
        cmd = "set" if isinstance(step, SetStep) else "emit"
        lines.append(f"{cmd} {step.source} {render_literal(step.value)}")
    return "".join(line + "\n" for line in lines)


def run_scenario(rt: Runtime, sc: Scenario) -> None:
    """Apply the steps in order; errors carry the failing step index."""
    for index, step in enumerate(sc.steps):
        try:
            if isinstance(step, SetStep):
                rt.set_source(step.source, step.value)
            else:
                rt.emit(step.source, step.value)
        except KernelError as exc:
            exc.step_index = index
            raise
