import json
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Optional

from exceptions import FailedToReadException, FailedToWriteException


@dataclass(frozen=True)
class Limits:
    """
    Budget of a solve. Every field is optional, None means unlimited.

    Attributes:
        time_limit (Optional[float]): Wall-clock seconds.
        node_limit (Optional[int]): Number of explored search nodes.
        gap_abs (Optional[float]): Stop once incumbent minus bound is at most this value.
    """

    time_limit: Optional[float] = None
    node_limit: Optional[int] = None
    gap_abs: Optional[float] = None


class Deadline:
    def __init__(self, seconds: Optional[float]) -> None:
        """
        Wall-clock deadline started at construction.

        Args:
            seconds (Optional[float]): Allowed seconds, None for no deadline.
        """
        self.seconds: Optional[float] = seconds
        self.start: float = time.monotonic()

    def elapsed(self) -> float:
        return time.monotonic() - self.start

    def remaining(self) -> Optional[float]:
        if self.seconds is None:
            return None
        return max(0.0, self.seconds - self.elapsed())

    def expired(self) -> bool:
        return self.seconds is not None and self.elapsed() >= self.seconds


def ceil_div(numerator: int, denominator: int) -> int:
    return -(-numerator // denominator)


def read_json_file(path: str) -> Any:
    try:
        with open(path, "r", encoding="utf-8") as file:
            return json.load(file)
    except (OSError, json.JSONDecodeError) as e:
        raise FailedToReadException(path, str(e))


def write_json_file(path: str, data: Any) -> None:
    try:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8") as file:
            json.dump(data, file, indent=2)
            file.write("\n")
    except OSError as e:
        raise FailedToWriteException(path, str(e))


def write_text_file(path: str, content: str) -> None:
    try:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8") as file:
            file.write(content)
    except OSError as e:
        raise FailedToWriteException(path, str(e))
