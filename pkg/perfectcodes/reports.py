import json
from dataclasses import dataclass, field
from functools import partial
from typing import Any, Dict, List, Optional

from tabulate import tabulate

from .codes import _jsonable
from .informations import REPORT_SCHEMA_VERSION, __version__

EXIT_OK = 0
EXIT_PROPERTY_FAILURE = 1
EXIT_USAGE = 2
EXIT_UNKNOWN = 3
EXIT_INVALID_INSTANCE = 4

# Verdict keys that carry the answer of a command; an Unknown there exits with EXIT_UNKNOWN.
FINAL_VERDICTS = ("decision", "group")

tabulate_rows = partial(tabulate, tablefmt="presto")
tabulate_verdicts = partial(
    tabulate, headers=["Path", "Status", "Reason", "Nodes"], tablefmt="presto"
)
tabulate_claims = partial(tabulate, headers=["Statement", "Result", "Detail"], tablefmt="presto")
tabulate_witnesses = partial(tabulate, headers=["Witness of", "Elements"], tablefmt="presto")
tabulate_cross_check = partial(tabulate, headers=["Cross-check", "Result"], tablefmt="presto")


@dataclass
class RunReport:
    """Everything one CLI command found, in a form that serializes byte-for-byte stably."""

    command: List[str]
    instance: Dict[str, Any] = field(default_factory=dict)
    verdicts: Dict[str, Any] = field(default_factory=dict)
    cross_check: Dict[str, bool] = field(default_factory=dict)
    rows: List[Dict[str, Any]] = field(default_factory=list)
    statistics: Dict[str, Any] = field(default_factory=dict)
    timings: Optional[Dict[str, float]] = None

    @property
    def disagreements(self) -> List[str]:
        return sorted(name for name, agreed in self.cross_check.items() if not agreed)

    @property
    def required_unknown(self) -> bool:
        """An Unknown where a definite answer was needed."""
        if any(r.get("result") == "UNKNOWN" and r.get("definite_required") for r in self.rows):
            return True
        final = [self.verdicts.get(key) or {} for key in FINAL_VERDICTS]
        return any(v.get("status") == "Unknown" for v in final)

    @property
    def failed_rows(self) -> List[str]:
        return [row["statement"] for row in self.rows if row.get("result") == "FAIL"]

    def exit_code(self) -> int:
        if self.disagreements or self.failed_rows:
            return EXIT_PROPERTY_FAILURE
        if self.required_unknown:
            return EXIT_UNKNOWN
        return EXIT_OK

    def to_record(self) -> dict:
        record = {
            "schema_version": REPORT_SCHEMA_VERSION,
            "tool_version": __version__,
            "command": self.command,
            "instance": _jsonable(self.instance),
            "verdicts": _jsonable(self.verdicts),
            "cross_check": dict(self.cross_check),
            "rows": _jsonable(self.rows),
            "statistics": _jsonable(self.statistics),
            "exit_code": self.exit_code(),
        }
        if self.timings is not None:
            record["timings_ms"] = self.timings
        return record

    def to_json(self) -> str:
        return json.dumps(self.to_record(), indent=2, sort_keys=True) + "\n"

    def to_text(self) -> str:
        parts = []
        if self.instance:
            parts.append(tabulate_rows(_flatten(self.instance)))
        if self.verdicts:
            table = [
                (name, v.get("status"), v.get("reason", ""), v.get("search_nodes", ""))
                for name, v in sorted(self.verdicts.items())
                if isinstance(v, dict) and "status" in v
            ]
            if table:
                parts.append(tabulate_verdicts(table))
            witnesses = [
                (name, ", ".join(v["witness"]))
                for name, v in sorted(self.verdicts.items())
                if isinstance(v, dict) and v.get("witness")
            ]
            if witnesses:
                parts.append(tabulate_witnesses(witnesses))
        if self.cross_check:
            checks = sorted(self.cross_check.items())
            table = [(name, "agree" if ok else "DISAGREE") for name, ok in checks]
            parts.append(tabulate_cross_check(table))
        if self.rows:
            parts.append(
                tabulate_claims(
                    [(row["statement"], row["result"], row.get("detail", "")) for row in self.rows]
                )
            )
        if self.timings:
            parts.append(tabulate_rows(sorted(self.timings.items())))
        return "\n\n".join(parts) + "\n"


def _flatten(record: Dict[str, Any], prefix: str = "") -> List[tuple]:
    rows = []
    for key, value in sorted(record.items()):
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            rows += _flatten(value, f"{name}.")
        elif isinstance(value, (list, tuple)):
            rows.append((name, ", ".join(str(v) for v in value)))
        else:
            rows.append((name, value))
    return rows
