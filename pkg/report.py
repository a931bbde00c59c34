"""Rich summaries of prmforge results, written to standard error."""

from typing import Optional, Sequence

from rich.console import Console
from rich.markup import escape
from rich.panel import Panel
from rich.table import Table
from rich.text import Text

from bounds import BoundReport
from hweights import SearchResult, WeightHierarchy
from themes import ThemeManager


class Report:
    """Human-facing tables; standard output stays reserved for the emitted document."""

    def __init__(self, theme_manager: ThemeManager, console: Optional[Console] = None):
        self.theme = theme_manager
        self.console = console or Console(theme=theme_manager.rich_theme, stderr=True)

    def _table(self, title: str) -> Table:
        return Table(
            title=title,
            title_style=self.theme.get_title_style(),
            border_style=self.theme.get_border_style(),
            header_style="table.header",
        )

    def bounds_table(self, title: str, reports: Sequence[BoundReport]) -> Table:
        table = self._table(title)
        table.add_column("Bound", style="metric.label")
        table.add_column("Value", justify="right", style="metric.value")
        table.add_column("Status")
        for rep in reports:
            value = "-" if rep.value is None else str(rep.value)
            if rep.name == "tbc_verdict":
                style = "verdict.refuted" if "refuted" in rep.reason else "status.info"
                status = Text(rep.reason, style=style)
            elif rep.applicable:
                status = Text("applicable", style="status.success")
            else:
                status = Text(rep.reason, style="status.warning")
            table.add_row(rep.name, value, status)
        return table

    def search_panel(self, title: str, result: SearchResult, n: int) -> Panel:
        lines = [
            f"[metric.label]e_r[/] [metric.value]{result.value}[/]   "
            f"[metric.label]d_r[/] [metric.value]{n - result.value}[/]",
            f"[metric.label]mode[/] {result.mode}   [metric.label]visited[/] {result.visited:,}   "
            f"[metric.label]time[/] {result.elapsed:.2f}s",
        ]
        lines += [f"[status.warning]• {escape(note)}[/]" for note in result.notes]
        return Panel("\n".join(lines), title=title, border_style=self.theme.get_border_style())

    def hierarchy_table(self, H: WeightHierarchy, dual: Optional[WeightHierarchy] = None) -> Table:
        table = self._table(f"Weight hierarchy of {H.label} (n = {H.n}, {H.mode})")
        table.add_column("r", justify="right")
        table.add_column("d_r", justify="right", style="metric.value")
        table.add_column("e_r", justify="right")
        for r, w in enumerate(H.weights, 1):
            table.add_row(str(r), str(w), str(H.n - w))
        if dual is not None:
            table.caption = f"dual weights: {', '.join(str(w) for w in dual.weights)}"
        return table

    def verify_table(self, results: Sequence[dict]) -> Table:
        table = self._table("Acceptance checks")
        table.add_column("Check")
        table.add_column("Anchor", style="metric.label")
        table.add_column("Result")
        table.add_column("Time", justify="right")
        for item in results:
            if item["status"] == "pass":
                status = Text("✓ pass", style="status.success")
            elif item["status"] == "skipped":
                status = Text("- skipped", style="status.warning")
            else:
                status = Text(f"✗ {item['detail']}", style="status.error")
            table.add_row(item["name"], item["anchor"], status, f"{item['elapsed_sec']:.1f}s")
        return table

    def show(self, renderable):
        self.console.print(renderable)

    def error(self, message: str):
        self.console.print(f"[status.error]Error:[/] {escape(message)}")

    def warning(self, message: str):
        self.console.print(f"[status.warning]⚠ {escape(message)}[/]")
