MODEL_FORMAT_VERSION = 1

EXIT_INPUT_ERROR = 2
EXIT_MODEL_ERROR = 3

DEFAULT_TOP_K = 10
DEFAULT_RESOLUTION = 128
DEFAULT_BITS_PER_FEATURE = 4
BOUNDARY_PADDING = 0.05

BENCH_TARGET_ACCURACY = 0.95
BENCH_EPOCH_CAP = 1000

PERCEPTRON_MAX_EPOCHS = 1000
ORACLE_MAX_ARITY = 20

HISTORY_COLUMNS = [
    "epoch",
    "accuracy",
    "mean_clause_len_pos",
    "mean_clause_len_neg",
    "mean_weight",
]
GRID_COLUMNS = ["x", "y", "label", "margin"]
