from .types import (
    AlignmentReport,
    CharacterProfile,
    DIRECTIVE_FIELDS,
    EditEvent,
    FilterState,
    InteriorityFlag,
    NarrativeDirectives,
    Novel,
    Severity,
    StructuredInput,
    SynthesisMode,
    TrainingPair,
    Violation,
    ViolationKind,
)
from .blocks import (
    extract_block,
    novel_from_text,
    parse_directives_body,
    parse_input,
    serialize_directives,
    serialize_input,
    serialize_novel,
    serialize_stage1,
)
from .reverse import (
    SERIES_OPENING,
    Synthesized,
    extract_directives,
    reverse_character_profiles,
    reverse_outline,
    reverse_previous_context,
)
from .forward import (
    default_lexicon,
    forward_novelize,
    lint_interiority,
    load_lexicon,
    reverse_novelize,
)
from .alignment import check_alignment
from .statemachine import (
    AutoCheckConfig,
    AutoCheckResult,
    advance,
    apply_human_verdict,
    run_auto_checks,
    run_multistage_filter,
)
from .export import (
    ExportManifest,
    ParsedExportRow,
    build_export_row,
    export_sft,
    parse_export_row,
)
from .pipeline import author_metadata, synthesize_pair
