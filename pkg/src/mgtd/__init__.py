"""Machine-generated text detection over token-statistics records.

Statistical channels (likelihood, entropy, rank, log-rank, two-model
ratio) and external classifier probabilities are thresholded per
language bucket and combined by majority voting.
"""

from .calibration import (
    RocCurve,
    RocPoint,
    ThresholdEntry,
    ThresholdTable,
    auc,
    build_roc,
    calibrate,
    load_table,
    save_table,
    table_from_json,
    table_to_json,
    youden_threshold,
)
from .ensemble import (
    MODE_FIXED_ONE,
    MODE_STAT5,
    MODE_STAT_ONLY,
    MODE_TWO_STEP,
    PipelineConfig,
    Prediction,
    apply_threshold,
    load_config,
    predict,
    read_predictions,
    write_predictions,
)
from .errors import (
    CalibrationError,
    ConfigError,
    DatasetError,
    EvaluationError,
    PipelineError,
    UnknownChannelError,
)
from .evaluation import EvalReport, evaluate, render_text, report_to_json
from .langgate import DEFAULT_KNOWN_LANGUAGES, UNKNOWN, resolve_bucket
from .metrics import (
    BINOCULARS,
    ENTROPY,
    LIKELIHOOD,
    LOG_RANK,
    RANK,
    ChannelScore,
    classifier_channel_spec,
    register_statistical_channel,
    score_all,
    score_channel,
    statistical_channel_spec,
)
from .obfuscation import HOMOGLYPHS, ObfuscationPlan, obfuscate_dataset, strip_zwj
from .records import (
    LABEL_HUMAN,
    LABEL_MACHINE,
    ChannelSpec,
    DocumentRecord,
    TokenRecord,
    iter_dataset,
    load_dataset,
    parse_record,
    read_dataset,
    record_to_json,
    save_dataset,
    write_dataset,
)

__version__ = "0.1.0"

__all__ = [
    "BINOCULARS",
    "CalibrationError",
    "ChannelScore",
    "ChannelSpec",
    "ConfigError",
    "DEFAULT_KNOWN_LANGUAGES",
    "DatasetError",
    "DocumentRecord",
    "ENTROPY",
    "EvalReport",
    "EvaluationError",
    "HOMOGLYPHS",
    "LABEL_HUMAN",
    "LABEL_MACHINE",
    "LIKELIHOOD",
    "LOG_RANK",
    "MODE_FIXED_ONE",
    "MODE_STAT5",
    "MODE_STAT_ONLY",
    "MODE_TWO_STEP",
    "ObfuscationPlan",
    "PipelineConfig",
    "PipelineError",
    "Prediction",
    "RANK",
    "RocCurve",
    "RocPoint",
    "ThresholdEntry",
    "ThresholdTable",
    "TokenRecord",
    "UNKNOWN",
    "UnknownChannelError",
    "apply_threshold",
    "auc",
    "build_roc",
    "calibrate",
    "classifier_channel_spec",
    "evaluate",
    "iter_dataset",
    "load_config",
    "load_dataset",
    "load_table",
    "obfuscate_dataset",
    "parse_record",
    "predict",
    "read_dataset",
    "read_predictions",
    "record_to_json",
    "register_statistical_channel",
    "render_text",
    "report_to_json",
    "resolve_bucket",
    "save_dataset",
    "save_table",
    "score_all",
    "score_channel",
    "statistical_channel_spec",
    "strip_zwj",
    "table_from_json",
    "table_to_json",
    "write_dataset",
    "write_predictions",
    "youden_threshold",
]
