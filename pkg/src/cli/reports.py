import json
from dataclasses import dataclass, field
from typing import Any, Dict

FORMAT_VERSION = "1.0"

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_CAP = 3
EXIT_INTERNAL = 4

STATUS_PASS = "pass"
STATUS_FAIL = "fail"
STATUS_ERROR = "error"


@dataclass
class StructuredReport:
    """The single record a command prints: status, payload and format version."""
    command: str
    status: str
    payload: Dict[str, Any] = field(default_factory=dict)
    exit_code: int = EXIT_PASS
    version: str = FORMAT_VERSION

    def __post_init__(self):
        if self.status not in (STATUS_PASS, STATUS_FAIL, STATUS_ERROR):
            raise ValueError(f"Invalid status {self.status!r}")

    @classmethod
    def verdict(cls, command: str, passed: bool, payload: Dict[str, Any]) -> "StructuredReport":
        return cls(command, STATUS_PASS if passed else STATUS_FAIL, payload, EXIT_PASS if passed else EXIT_FAIL)

    @classmethod
    def error(cls, command: str, message: str, exit_code: int, kind: str = "") -> "StructuredReport":
        payload = {"error": message}
        if kind:
            payload["type"] = kind
        return cls(command, STATUS_ERROR, payload, exit_code)

    def to_dict(self) -> Dict[str, Any]:
        return {"version": self.version, "command": self.command, "status": self.status, "payload": self.payload}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False, default=str)

    def to_human(self) -> str:
        lines = [f"{self.command}: {self.status}"]
        lines += _human_lines(self.payload, 1)
        return "\n".join(lines)

    def render(self, output_format: str) -> str:
        return self.to_json() if output_format == "structured" else self.to_human()


def _human_lines(value: Any, depth: int) -> list:
    indent = "  " * depth
    lines = []
    if isinstance(value, dict):
        for key, item in value.items():
            if isinstance(item, (dict, list)) and item:
                lines.append(f"{indent}{key}:")
                lines += _human_lines(item, depth + 1)
            else:
                lines.append(f"{indent}{key}: {item}")
    elif isinstance(value, list):
        for item in value:
            if isinstance(item, (dict, list)):
                lines.append(f"{indent}-")
                lines += _human_lines(item, depth + 1)
            else:
                lines.append(f"{indent}- {item}")
    else:
        lines.append(f"{indent}{value}")
    return lines
