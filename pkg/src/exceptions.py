EC_ARG_GENERAL = 10
EC_ARG_NOT_RECOGNIZED_COMMAND = 11
EC_ARG_INVALID_CONFIG = 12
EC_ARG_FAILED_TO_READ = 13
EC_ARG_FAILED_TO_WRITE = 14

EC_MODEL_INVALID_INSTANCE = 20
EC_MODEL_INFEASIBLE_SCHEDULE = 21
EC_MODEL_INFEASIBLE_BATCHING = 22
EC_MODEL_SPEC_MISMATCH = 23
EC_MODEL_BATCH_COUNT_OVERFLOW = 24
EC_MODEL_TOO_LARGE = 25
EC_MODEL_EMPTY = 26
EC_MODEL_MALFORMED = 27

EC_SOLVER_ITERATION_LIMIT = 30
EC_SOLVER_NUMERICAL_FAILURE = 31
EC_SOLVER_NO_FEASIBLE_FOUND = 32
EC_SOLVER_NO_FRACTIONAL = 33

EC_SEARCH_ORACLE_TOO_LARGE = 40
EC_SEARCH_BENCH_MANIFEST = 41

MESSAGE_ARG_GENERAL = "Failed to parse arguments. Please check the usage and try again."
MESSAGE_ARG_NOT_RECOGNIZED_COMMAND = "Not recognized command or method. Please see --help."
MESSAGE_ARG_INVALID_CONFIG = "Invalid solver configuration."
MESSAGE_ARG_FAILED_TO_READ = "Failed to read input file."
MESSAGE_ARG_FAILED_TO_WRITE = "Failed to write output file."

MESSAGE_MODEL_INVALID_INSTANCE = "Instance data violates the problem assumptions."
MESSAGE_MODEL_INFEASIBLE_SCHEDULE = "Schedule is infeasible."
MESSAGE_MODEL_INFEASIBLE_BATCHING = "Batches do not form a feasible batching of the instance."
MESSAGE_MODEL_SPEC_MISMATCH = "Generator parameters do not match the instance set settings."
MESSAGE_MODEL_BATCH_COUNT_OVERFLOW = "Number of feasible batches exceeds the enumeration cap."
MESSAGE_MODEL_TOO_LARGE = "Model exceeds the configured variable cap."
MESSAGE_MODEL_EMPTY = "Model has no variables."
MESSAGE_MODEL_MALFORMED = "Linear model is malformed."

MESSAGE_SOLVER_ITERATION_LIMIT = "Simplex reached the pivot limit."
MESSAGE_SOLVER_NUMERICAL_FAILURE = "Simplex hit an irrecoverable numerical failure."
MESSAGE_SOLVER_NO_FEASIBLE_FOUND = "No feasible solution found within the limits."
MESSAGE_SOLVER_NO_FRACTIONAL = "Solution is integral, nothing to branch on."

MESSAGE_SEARCH_ORACLE_TOO_LARGE = "Instance is too large for exhaustive enumeration."
MESSAGE_SEARCH_BENCH_MANIFEST = "Invalid benchmark manifest."


class ExpectedException(BaseException):
    def __init__(self, error_code: int) -> None:
        self.error_code: int = error_code
        self.message: str = ""

    def _add_note(self, note: str) -> None:
        self.message = note

    def __str__(self) -> str:
        return self.message


class ArgumentException(ExpectedException):
    def __init__(self, message: str = MESSAGE_ARG_GENERAL, error_code: int = EC_ARG_GENERAL) -> None:
        super().__init__(error_code)
        self._add_note(message)


class ArgumentUnknownCommandException(ArgumentException):
    def __init__(self, command: str) -> None:
        super().__init__(f"{MESSAGE_ARG_NOT_RECOGNIZED_COMMAND} {command}", EC_ARG_NOT_RECOGNIZED_COMMAND)


class InvalidConfigException(ArgumentException):
    def __init__(self, message: str = "") -> None:
        super().__init__(f"{MESSAGE_ARG_INVALID_CONFIG} {message}", EC_ARG_INVALID_CONFIG)


class FailedToReadException(ArgumentException):
    def __init__(self, path: str, message: str = "") -> None:
        super().__init__(f"{MESSAGE_ARG_FAILED_TO_READ} {path} {message}".rstrip(), EC_ARG_FAILED_TO_READ)


class FailedToWriteException(ArgumentException):
    def __init__(self, path: str, message: str = "") -> None:
        super().__init__(f"{MESSAGE_ARG_FAILED_TO_WRITE} {path} {message}".rstrip(), EC_ARG_FAILED_TO_WRITE)


class ModelException(ExpectedException):
    def __init__(self, error_code: int, message: str) -> None:
        super().__init__(error_code)
        self._add_note(message)


class InvalidInstanceException(ModelException):
    def __init__(self, message: str = "") -> None:
        super().__init__(EC_MODEL_INVALID_INSTANCE, f"{MESSAGE_MODEL_INVALID_INSTANCE} {message}")


class InfeasibleScheduleException(ModelException):
    def __init__(self, violation: str, message: str = "") -> None:
        super().__init__(EC_MODEL_INFEASIBLE_SCHEDULE, f"{MESSAGE_MODEL_INFEASIBLE_SCHEDULE} [{violation}] {message}")
        self.violation: str = violation


class InfeasibleBatchingException(ModelException):
    def __init__(self, violation: str, message: str = "") -> None:
        super().__init__(EC_MODEL_INFEASIBLE_BATCHING, f"{MESSAGE_MODEL_INFEASIBLE_BATCHING} [{violation}] {message}")
        self.violation: str = violation


class SpecMismatchException(ModelException):
    def __init__(self, message: str = "") -> None:
        super().__init__(EC_MODEL_SPEC_MISMATCH, f"{MESSAGE_MODEL_SPEC_MISMATCH} {message}")


class BatchCountOverflowException(ModelException):
    def __init__(self, family: int, predicted: int, cap: int) -> None:
        super().__init__(
            EC_MODEL_BATCH_COUNT_OVERFLOW,
            f"{MESSAGE_MODEL_BATCH_COUNT_OVERFLOW} Family {family + 1}: at least {predicted} batches, cap {cap}.",
        )
        self.predicted: int = predicted


class ModelTooLargeException(ModelException):
    def __init__(self, count: int, cap: int) -> None:
        super().__init__(EC_MODEL_TOO_LARGE, f"{MESSAGE_MODEL_TOO_LARGE} {count} variables, cap {cap}.")


class EmptyModelException(ModelException):
    def __init__(self, message: str = "") -> None:
        super().__init__(EC_MODEL_EMPTY, f"{MESSAGE_MODEL_EMPTY} {message}")


class MalformedModelException(ModelException):
    def __init__(self, message: str = "") -> None:
        super().__init__(EC_MODEL_MALFORMED, f"{MESSAGE_MODEL_MALFORMED} {message}")


class SolverException(ExpectedException):
    def __init__(self, error_code: int, message: str) -> None:
        super().__init__(error_code)
        self._add_note(message)


class IterationLimitException(SolverException):
    def __init__(self, message: str = "") -> None:
        super().__init__(EC_SOLVER_ITERATION_LIMIT, f"{MESSAGE_SOLVER_ITERATION_LIMIT} {message}")


class NumericalFailureException(SolverException):
    def __init__(self, message: str = "") -> None:
        super().__init__(EC_SOLVER_NUMERICAL_FAILURE, f"{MESSAGE_SOLVER_NUMERICAL_FAILURE} {message}")


class NoFeasibleFoundException(SolverException):
    def __init__(self, message: str = "") -> None:
        super().__init__(EC_SOLVER_NO_FEASIBLE_FOUND, f"{MESSAGE_SOLVER_NO_FEASIBLE_FOUND} {message}")


class NoFractionalException(SolverException):
    def __init__(self) -> None:
        super().__init__(EC_SOLVER_NO_FRACTIONAL, MESSAGE_SOLVER_NO_FRACTIONAL)


class OracleTooLargeException(ExpectedException):
    def __init__(self, count: int, cap: int) -> None:
        super().__init__(EC_SEARCH_ORACLE_TOO_LARGE)
        self._add_note(f"{MESSAGE_SEARCH_ORACLE_TOO_LARGE} At least {count} batchings, cap {cap}.")


class BenchManifestException(ExpectedException):
    def __init__(self, message: str = "") -> None:
        super().__init__(EC_SEARCH_BENCH_MANIFEST)
        self._add_note(f"{MESSAGE_SEARCH_BENCH_MANIFEST} {message}")
