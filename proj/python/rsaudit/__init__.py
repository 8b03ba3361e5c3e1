"""Rough-set consistency audit for concept-annotated datasets.

The heavy lifting lives in the compiled ``_core`` module; this package adds
a few conveniences that return parsed JSON instead of text.
"""

import json

from ._core import (
    ContractError,
    Dataset,
    Error,
    IoError,
    ParseError,
    SchemaError,
    SpecError,
    __version__,
    analyze,
    audit_json,
    audit_markdown,
    brute_force_ceiling,
    filter,
    filter_split_aware,
    load,
    parse,
    synth,
    wilson_interval,
)


def audit(dataset, **options):
    """Full audit report as a dict; keyword options as for ``audit_json``."""
    return json.loads(audit_json(dataset, **options))


__all__ = [
    "ContractError", "Dataset", "Error", "IoError", "ParseError", "SchemaError", "SpecError",
    "__version__", "analyze", "audit", "audit_json", "audit_markdown", "brute_force_ceiling",
    "filter", "filter_split_aware", "load", "parse", "synth", "wilson_interval",
]
