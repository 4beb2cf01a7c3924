from typing import Optional, Sequence
from settings import EXIT_AUDIT_VIOLATION, EXIT_USAGE, EXIT_RESOURCE_LIMIT


class DvbpError(Exception):
    exit_code = EXIT_AUDIT_VIOLATION


class UsageError(DvbpError, ValueError):
    exit_code = EXIT_USAGE


class ParseError(UsageError):
    def __init__(self, message: str, line: Optional[int] = None, path: Optional[str] = None):
        location = ""
        if path:
            location = f"{path}:"
        if line is not None:
            location = f"{location}{line}:"
        super().__init__(f"{location} {message}" if location else message)
        self.line = line
        self.path = path


class ItemTooLargeError(UsageError):
    def __init__(self, item_id: int, dimension: int, size, capacity):
        super().__init__(
            f"Item {item_id} does not fit an empty bin: size {size} exceeds capacity {capacity} "
            f"in dimension {dimension}"
        )
        self.item_id = item_id
        self.dimension = dimension


class ConstraintViolationError(UsageError):
    def __init__(self, message: str, violations: Sequence[str]):
        details = "\n".join(f" - {violation}" for violation in violations)
        super().__init__(f"{message}\n{details}" if violations else message)
        self.violations = list(violations)


class OracleLimitError(DvbpError):
    exit_code = EXIT_RESOURCE_LIMIT

    def __init__(self, count: int, limit: int, segment=None):
        where = f" in segment [{segment[0]}, {segment[1]})" if segment else ""
        super().__init__(f"Refusing exact packing of {count} items{where}: oracle limit is {limit}")
        self.count = count
        self.limit = limit
        self.segment = segment


class OutputError(DvbpError):
    exit_code = EXIT_USAGE

    def __init__(self, message: str, path: str):
        super().__init__(f"{message}: '{path}'")
        self.path = path


class ConfigValidationError(UsageError):
    def __init__(self, message: str, errors: str, filetype: str, filepath: str):
        super().__init__(f"{message}\n{errors}" if errors else message)
        self.errors = errors
        self.filetype = filetype
        self.filepath = filepath
