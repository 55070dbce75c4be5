"""Abstract syntax and well-formedness checks for component declarations.

An application is an ordered list of declarations: sources and actions
(platform resources), contexts (computation triggered by pull or by another
component's publication), and controllers (react to a context by commanding
an action). ``validate`` checks cross-references and structural rules and
returns diagnostics instead of raising.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum

from .errors import KernelError

NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")


class DataType(Enum):
    BOOL = "Bool"
    INT = "Int"
    STRING = "String"
    PICTURE = "Picture"

    def __str__(self) -> str:
        return self.value


class PublishSpec(Enum):
    NO = "no_publish"
    ALWAYS = "always_publish"
    MAYBE = "maybe_publish"


@dataclass(frozen=True)
class InteractionContract:
    """How a context is activated and what it may do when it runs.

    ``trigger is None`` means pull-activated (when-required); in that case
    the context never publishes and hands its value back to the puller.
    A non-None trigger means the context wakes on that component's
    publications and must itself declare always_publish or maybe_publish.
    """

    trigger: str | None
    get_target: str | None = None
    publish: PublishSpec = PublishSpec.NO


def when_required(get: str | None = None) -> InteractionContract:
    return InteractionContract(None, get, PublishSpec.NO)


def when_provided(trigger: str, publish: PublishSpec, get: str | None = None) -> InteractionContract:
    return InteractionContract(trigger, get, publish)


# 'pos' is the (line, col) of the declaration in its source file; it is
# diagnostic metadata only and never takes part in equality.

@dataclass(frozen=True)
class SourceDecl:
    kind = "source"
    name: str
    out_type: DataType
    pos: tuple[int, int] | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class ActionDecl:
    kind = "action"
    name: str
    in_type: DataType
    pos: tuple[int, int] | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class ContextDecl:
    kind = "context"
    name: str
    out_type: DataType
    contract: InteractionContract
    pos: tuple[int, int] | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class ControllerDecl:
    kind = "controller"
    name: str
    trigger: str
    action: str
    pos: tuple[int, int] | None = field(default=None, compare=False, repr=False)


Declaration = SourceDecl | ActionDecl | ContextDecl | ControllerDecl


@dataclass(frozen=True)
class Specification:
    declarations: tuple[Declaration, ...]

    def __post_init__(self):
        object.__setattr__(self, "declarations", tuple(self.declarations))

    def by_name(self) -> dict[str, Declaration]:
        """Name table; on duplicates the first occurrence wins."""
        table: dict[str, Declaration] = {}
        for d in self.declarations:
            table.setdefault(d.name, d)
        return table

    def find(self, name: str) -> Declaration | None:
        return self.by_name().get(name)


@dataclass(frozen=True)
class Diagnostic:
    index: int  # position of the offending declaration
    code: str
    message: str


def output_type_of(spec: Specification, name: str) -> DataType:
    """Declared output type of a source or context."""
    decl = spec.find(name)
    if decl is None:
        raise KernelError("NOT_FOUND", f"'{name}' is not declared", component=name)
    if isinstance(decl, (SourceDecl, ContextDecl)):
        return decl.out_type
    raise KernelError("WRONG_KIND", f"'{name}' is {_article(decl.kind)} and has no output type", component=name)


def _article(kind: str) -> str:
    return ("an " if kind[0] in "aeiou" else "a ") + kind


def _is_required_context(decl: Declaration | None) -> bool:
    return isinstance(decl, ContextDecl) and decl.contract.trigger is None


def validate(spec: Specification) -> list[Diagnostic]:
    """Check every structural rule; empty result means the spec is well-formed.

    Pure and deterministic: diagnostics come out ordered by declaration
    index, with a fixed check order within each declaration.
    """
    diags: list[Diagnostic] = []
    table: dict[str, Declaration] = {}

    for i, decl in enumerate(spec.declarations):
        if not NAME_RE.fullmatch(decl.name):
            diags.append(Diagnostic(i, "BAD_NAME", f"'{decl.name}' is not a valid component name"))
        if decl.name in table:
            diags.append(Diagnostic(i, "DUP_NAME", f"'{decl.name}' is already declared"))
        else:
            table[decl.name] = decl

    for i, decl in enumerate(spec.declarations):
        if isinstance(decl, ContextDecl):
            diags.extend(_check_context(i, decl, table))
        elif isinstance(decl, ControllerDecl):
            diags.extend(_check_controller(i, decl, table))

    members = _get_cycle_members(spec)
    for i, decl in enumerate(spec.declarations):
        if decl.name in members and _is_required_context(decl):
            diags.append(Diagnostic(i, "GET_CYCLE", f"get dependencies of '{decl.name}' form a cycle"))

    diags.sort(key=lambda d: d.index)
    return diags


def _check_context(i: int, decl: ContextDecl, table: dict[str, Declaration]) -> list[Diagnostic]:
    out = []
    c = decl.contract
    if c.trigger is None and c.publish is not PublishSpec.NO:
        out.append(Diagnostic(i, "BAD_PUBLISH_SPEC",
                              "publish specification is not allowed with when-required activation"))
    if c.trigger is not None and c.publish is PublishSpec.NO:
        out.append(Diagnostic(i, "BAD_PUBLISH_SPEC",
                              "when-provided contexts must declare always_publish or maybe_publish"))
    if c.trigger is not None:
        trig = table.get(c.trigger)
        if trig is None:
            out.append(Diagnostic(i, "UNRESOLVED_REF", f"trigger '{c.trigger}' is not declared"))
        elif not isinstance(trig, (SourceDecl, ContextDecl)):
            out.append(Diagnostic(i, "BAD_TRIGGER_KIND",
                                  f"trigger '{c.trigger}' is {_article(trig.kind)}; expected a source or context"))
    if c.get_target is not None:
        target = table.get(c.get_target)
        if target is None:
            out.append(Diagnostic(i, "UNRESOLVED_REF", f"get target '{c.get_target}' is not declared"))
        elif isinstance(target, ContextDecl):
            if target.contract.trigger is not None:
                out.append(Diagnostic(i, "PULL_NOT_REQUIRED",
                                      f"get target '{c.get_target}' is not a when-required context"))
        elif not isinstance(target, SourceDecl):
            out.append(Diagnostic(i, "BAD_TRIGGER_KIND",
                                  f"get target '{c.get_target}' is {_article(target.kind)}; "
                                  "expected a source or when-required context"))
    return out


def _check_controller(i: int, decl: ControllerDecl, table: dict[str, Declaration]) -> list[Diagnostic]:
    out = []
    trig = table.get(decl.trigger)
    if trig is None:
        out.append(Diagnostic(i, "UNRESOLVED_REF", f"trigger '{decl.trigger}' is not declared"))
    elif not isinstance(trig, ContextDecl):
        out.append(Diagnostic(i, "BAD_TRIGGER_KIND",
                              f"trigger '{decl.trigger}' is {_article(trig.kind)}; "
                              "controllers are triggered by contexts"))
    act = table.get(decl.action)
    if act is None:
        out.append(Diagnostic(i, "UNRESOLVED_REF", f"action '{decl.action}' is not declared"))
    elif not isinstance(act, ActionDecl):
        out.append(Diagnostic(i, "BAD_TRIGGER_KIND",
                              f"do target '{decl.action}' is {_article(act.kind)}; expected an action"))
    return out


def _get_cycle_members(spec: Specification) -> set[str]:
    """Names of when-required contexts whose get chains loop back to them."""
    required: dict[str, ContextDecl] = {}
    for decl in spec.declarations:
        if _is_required_context(decl):
            required.setdefault(decl.name, decl)
    adjacency = {
        name: [decl.contract.get_target] if decl.contract.get_target in required else []
        for name, decl in required.items()
    }
    members = set()
    for start in adjacency:
        seen: set[str] = set()
        stack = list(adjacency[start])
        while stack:
            node = stack.pop()
            if node == start:
                members.add(start)
                break
            if node in seen:
                continue
            seen.add(node)
            stack.extend(adjacency.get(node, ()))
    return members
