from .stage1 import (
    FORMAT_REMINDER,
    Stage1Output,
    parse_stage1_output,
    serialize_stage1_output,
    stage1_generate,
)
from .stage2 import ScreenplayResult, end_to_end_generate, stage2_convert
from .validate import Check, ValidationConfig, ValidationReport, validate_screenplay
from .runs import GenerationRun, persist_run, run_dsr, run_end_to_end
