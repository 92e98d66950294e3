DEFAULT_HTTP_PORT = 8080
DEFAULT_MODEL_NAME = "param_eq_model"

# cyclotomic orders are multiples of BASE_ORDER and never exceed MAX_CYCLOTOMIC_ORDER
BASE_ORDER = 8
MAX_CYCLOTOMIC_ORDER = 240

FLOAT_TOLERANCE = 1e-9
FALSIFY_TOLERANCE = 1e-6
CONSTRAINT_TOLERANCE = 1e-12
VIOLATION_RESIDUAL = 0.1

DEFAULT_SCALE = 9
DEFAULT_SAMPLE_BUDGET = 1000
DEFAULT_SEED = 20230518

EXIT_OK = 0
EXIT_FAILS = 1
EXIT_USAGE = 2
EXIT_EVALUATION = 3
