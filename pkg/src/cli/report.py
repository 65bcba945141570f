"""
Machine-readable run reports for contractad-lab commands.
"""

import json
import time
from typing import Any, Dict, List, Optional

from core import __version__


class RunReport:
    """
    Result of one CLI command.

    Attributes:
        command: Echo of the command line (subcommand and arguments)
        version: Tool version
        elapsed_seconds: Wall time spent in the command
        items: One dict per checked or computed item
        counterexamples: Failing items, each carrying the graph's edge list
            and both sides' exact values
        passed: False as soon as one item fails
    """

    def __init__(self, command: List[str]):
        """
        Initialize RunReport.

        Args:
            command: Command line echo
        """
        self.command = list(command)
        self.version = __version__
        self.items: List[Dict[str, Any]] = []
        self.counterexamples: List[Dict[str, Any]] = []
        self.passed = True
        self._started = time.time()
        self.elapsed_seconds = 0.0

    def add_item(self, item: Dict[str, Any], passed: Optional[bool] = None) -> None:
        """Record an item; a False verdict also records it as a counterexample."""
        self.items.append(item)
        if passed is False:
            self.passed = False
            self.counterexamples.append(item)

    def finish(self) -> "RunReport":
        self.elapsed_seconds = round(time.time() - self._started, 3)
        return self

    def to_dict(self) -> Dict[str, Any]:
        return {
            "command": self.command,
            "version": self.version,
            "elapsed_seconds": self.elapsed_seconds,
            "passed": self.passed,
            "items": self.items,
            "counterexamples": self.counterexamples,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False)

    def to_text(self) -> str:
        """Human-readable rendering used by --pretty and --format text."""
        lines = [
            f"contractad-lab {self.version}: {' '.join(self.command)}",
            f"{len(self.items)} items, {len(self.counterexamples)} failures, "
            f"{self.elapsed_seconds:.2f}s",
        ]
        for item in self.items:
            fields = ", ".join(f"{key}={_short(value)}" for key, value in item.items())
            lines.append(f"  {fields}")
        if self.counterexamples:
            lines.append("Counterexamples:")
            for item in self.counterexamples:
                lines.append(f"  {json.dumps(item)}")
        lines.append("PASS" if self.passed else "FAIL")
        return "\n".join(lines)

    def __str__(self) -> str:
        return (
            f"RunReport(command={' '.join(self.command)}, items={len(self.items)}, "
            f"passed={self.passed})"
        )


def _short(value: Any) -> str:
    text = json.dumps(value) if isinstance(value, (list, dict)) else str(value)
    return text if len(text) <= 60 else text[:57] + "..."
