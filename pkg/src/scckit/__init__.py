"""Declaration-driven sense/compute/control application kernel.

Applications are declared as sources, actions, contexts, and controllers;
the kernel validates the declarations, derives a boundary contract for
every computing component, builds the static information-flow graph, and
runs registered implementations under capability injection with dynamic
taint tracking.
"""

from .contracts import (
    BoundaryContract,
    Capability,
    CapabilityKind,
    ResultKind,
    derive_all,
    derive_contract,
    render_contract,
)
from .decls import (
    ActionDecl,
    ContextDecl,
    ControllerDecl,
    DataType,
    Declaration,
    Diagnostic,
    InteractionContract,
    PublishSpec,
    SourceDecl,
    Specification,
    output_type_of,
    validate,
    when_provided,
    when_required,
)
from .errors import KernelError, ParseError, RuntimeFault
from .flow import FlowEdge, FlowGraph, FlowNode, build_flow_graph, export_graph, source_ancestors
from .parser import SourceText, parse, pretty_print
from .runtime import Runtime, TraceEvent, create_runtime
from .scenario import (
    EmitStep,
    RecordingSink,
    Scenario,
    ScriptedSource,
    SetStep,
    format_scenario,
    parse_scenario,
    run_scenario,
)
from .values import (
    PictureData,
    TaintedValue,
    Value,
    check_value,
    make_picture,
    overlay,
    render_taints,
    render_value,
)
from .webcam import DEFAULT_SCENARIO, WEBCAM_SPEC, WebcamApp, build_webcam_app, webcam_spec

__version__ = "0.1.0"

__all__ = [
    "ActionDecl",
    "BoundaryContract",
    "Capability",
    "CapabilityKind",
    "ContextDecl",
    "ControllerDecl",
    "DEFAULT_SCENARIO",
    "DataType",
    "Declaration",
    "Diagnostic",
    "EmitStep",
    "FlowEdge",
    "FlowGraph",
    "FlowNode",
    "InteractionContract",
    "KernelError",
    "ParseError",
    "PictureData",
    "PublishSpec",
    "RecordingSink",
    "ResultKind",
    "Runtime",
    "RuntimeFault",
    "Scenario",
    "ScriptedSource",
    "SetStep",
    "SourceDecl",
    "SourceText",
    "Specification",
    "TaintedValue",
    "TraceEvent",
    "Value",
    "WEBCAM_SPEC",
    "WebcamApp",
    "build_flow_graph",
    "build_webcam_app",
    "check_value",
    "create_runtime",
    "derive_all",
    "derive_contract",
    "export_graph",
    "format_scenario",
    "make_picture",
    "output_type_of",
    "overlay",
    "parse",
    "parse_scenario",
    "pretty_print",
    "render_contract",
    "render_taints",
    "render_value",
    "run_scenario",
    "source_ancestors",
    "validate",
    "webcam_spec",
    "when_provided",
    "when_required",
]
