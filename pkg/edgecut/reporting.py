import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional


@dataclass
class StepRecord:
    step_name: str
    status: str
    start_time: float
    end_time: float
    details: str
    error: Optional[str] = None

    @property
    def duration(self) -> float:
        return self.end_time - self.start_time


@dataclass
class RunContext:
    command: str = "Unknown"
    input_path: str = ""
    output_format: str = "json"
    seed: Optional[int] = None
    start_time: float = field(default_factory=time.time)

    stats: Dict[str, object] = field(default_factory=dict)
    steps: List[StepRecord] = field(default_factory=list)

    def add_step(self, name: str, start_time: float, details: str, error: str = None):
        status = "Failed" if error else "Success"
        self.steps.append(StepRecord(
            step_name=name,
            status=status,
            start_time=start_time,
            end_time=time.time(),
            details=details,
            error=error
        ))

    @property
    def failed(self) -> bool:
        return any(step.error for step in self.steps)

    def generate_summary(self) -> str:
        """One line per step, for standard error."""
        lines = [f"edgecut {self.command}: {'failed' if self.failed else 'ok'}"]
        for step in self.steps:
            line = f"  {step.step_name}: {step.status} ({step.duration:.2f}s) {step.details}"
            if step.error:
                line += f" [{step.error}]"
            lines.append(line.rstrip())
        return "\n".join(lines)

    def generate_markdown(self) -> str:
        # no wall-clock date here: reports of identical runs differ only in durations
        duration = time.time() - self.start_time

        md = [
            f"# edgecut Run Report: {self.command}",
            f"**Duration**: {duration:.2f}s",
            "",
            "## Configuration",
            f"- **Input**: `{self.input_path}`",
            f"- **Output format**: {self.output_format}",
            f"- **Seed**: {self.seed}",
            "",
        ]

        if self.stats:
            md.append("## Statistics")
            md.append("| Metric | Value |")
            md.append("| :--- | :--- |")
            for key, value in sorted(self.stats.items()):
                md.append(f"| {key} | {value} |")
            md.append("")

        md.append("## Execution Log")
        md.append("| Step | Status | Duration | Details |")
        md.append("| :--- | :--- | :--- | :--- |")

        for step in self.steps:
            duration_str = f"{step.duration:.2f}s"
            # Escape pipes in details to avoid breaking table
            text = step.details if not step.error else f"{step.details} ({step.error})"
            clean_details = text.replace("|", "\\|").replace("\n", "<br>")
            md.append(f"| {step.step_name} | {step.status} | {duration_str} | {clean_details} |")

        return "\n".join(md)
