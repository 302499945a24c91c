from .rubric import MAX_SCORE, MIN_SCORE, TIER_DESCRIPTIONS, TIERS, tier_of
from .metrics import (
    ComparisonRecord,
    ErrorCategory,
    ErrorNote,
    RatingRecord,
    error_frequency,
    improvement_delta,
    ratio_to_human,
    round2,
    scene_score,
    system_stats,
    win_rate,
)
from .sessions import BlindScene, EvalSession, build_blind_session
from .report import EvalReport, SystemReport, build_report
