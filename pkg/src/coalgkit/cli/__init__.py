"""Command-line frontend and the model file format."""

from .commands import build_parser, main, run, run_capture
from .fileformat import (
    KINDS,
    LANGUAGE_OF,
    ParseError,
    Workspace,
    format_model,
    kind_of,
    load_model,
    parse_model,
    save_model,
)
