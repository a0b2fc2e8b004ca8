"""Authoring engine for timed signal specifications.

Specifications are edited as trees of timing templates, translated to a
bounded temporal-logic fragment, checked against a pattern grammar,
classified, monitored over sampled traces, and illustrated with generated
exemplar signals. See the README for the full tour.
"""

from .errors import (
    BindError,
    CsvError,
    DurationTooShort,
    FormulaSyntaxError,
    GenerationFailed,
    InsufficientHorizon,
    IntervalError,
    InvalidSignalName,
    MalformedOperator,
    NoPredicate,
    NonContiguousGroup,
    NonFiniteThreshold,
    NonMonotoneTime,
    NoTemplates,
    PersistenceError,
    RevisionMismatch,
    SchemaError,
    SpecError,
    StructurallyInvalid,
    ThresholdOutOfRange,
    UnknownNode,
    UnknownParent,
    UnknownSibling,
    UnknownSignal,
    VersionMismatch,
)
from .exemplars import Exemplar, GeneratorConfig, counterexemplar, generate, synthesize
from .fragment import (
    Classification,
    Recognition,
    SpecificationClass,
    classify,
    random_fragment_tree,
    recognize,
)
from .model import (
    Diagnostic,
    Interval,
    OperatorKind,
    Predicate,
    SpecTree,
    TemplateNode,
    TemporalOperator,
    add_template,
    find_node,
    iter_nodes,
    new_spec,
    remove_template,
    set_group,
    set_negated,
    set_operator,
    set_predicate,
    validate_structure,
)
from .monitor import HorizonCheck, Trace, check_horizon, evaluate
from .mtl import (
    Always,
    And,
    Atom,
    Eventually,
    Formula,
    Implies,
    Not,
    format_formula,
    horizon,
    parse_formula,
)
from .persistence import (
    dumps_spec,
    dumps_trace,
    load_spec,
    load_trace,
    loads_spec,
    loads_trace,
    save_spec,
    save_trace,
    tree_to_document,
    document_to_tree,
)
from .translate import canonicalize, reverse, template_formula, translate

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # model
    "Interval",
    "Predicate",
    "OperatorKind",
    "TemporalOperator",
    "TemplateNode",
    "SpecTree",
    "Diagnostic",
    "new_spec",
    "add_template",
    "remove_template",
    "set_operator",
    "set_predicate",
    "set_group",
    "set_negated",
    "validate_structure",
    "find_node",
    "iter_nodes",
    # formulas
    "Formula",
    "Atom",
    "Not",
    "And",
    "Implies",
    "Always",
    "Eventually",
    "parse_formula",
    "format_formula",
    "horizon",
    # translation
    "translate",
    "template_formula",
    "reverse",
    "canonicalize",
    # fragment
    "SpecificationClass",
    "Classification",
    "Recognition",
    "classify",
    "recognize",
    "random_fragment_tree",
    # monitor
    "Trace",
    "HorizonCheck",
    "evaluate",
    "check_horizon",
    # exemplars
    "Exemplar",
    "GeneratorConfig",
    "generate",
    "counterexemplar",
    "synthesize",
    # persistence
    "save_spec",
    "load_spec",
    "dumps_spec",
    "loads_spec",
    "save_trace",
    "load_trace",
    "dumps_trace",
    "loads_trace",
    "tree_to_document",
    "document_to_tree",
    # errors
    "SpecError",
    "UnknownParent",
    "UnknownSibling",
    "UnknownNode",
    "NonContiguousGroup",
    "MalformedOperator",
    "InvalidSignalName",
    "NonFiniteThreshold",
    "NoTemplates",
    "NoPredicate",
    "StructurallyInvalid",
    "FormulaSyntaxError",
    "IntervalError",
    "UnknownSignal",
    "InsufficientHorizon",
    "GenerationFailed",
    "ThresholdOutOfRange",
    "DurationTooShort",
    "SchemaError",
    "VersionMismatch",
    "CsvError",
    "NonMonotoneTime",
    "BindError",
    "RevisionMismatch",
    "PersistenceError",
]
