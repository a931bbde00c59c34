"""Theme system for light/dark mode terminal compatibility."""

from dataclasses import dataclass
from rich.theme import Theme


@dataclass
class ThemeColors:
    """Color definitions for a theme."""
    # Status colors
    success: str
    warning: str
    error: str
    info: str

    # Tables
    title: str
    header: str
    border: str

    # Values
    metric_value: str
    metric_label: str
    refuted: str


# Dark theme (default)
DARK_THEME = ThemeColors(
    success="bright_green",
    warning="bright_yellow",
    error="bright_red",
    info="bright_blue",

    title="bright_cyan",
    header="bold bright_white",
    border="bright_blue",

    metric_value="bright_white",
    metric_label="grey70",
    refuted="bold bright_magenta",
)

# Light theme
LIGHT_THEME = ThemeColors(
    success="dark_green",
    warning="dark_orange",
    error="dark_red",
    info="dark_blue",

    title="dark_blue",
    header="bold black",
    border="blue",

    metric_value="black",
    metric_label="grey30",
    refuted="bold dark_magenta",
)


class ThemeManager:
    """Manages theme switching and provides Rich theme objects."""

    def __init__(self, default_theme: str = "dark"):
        self.set_theme(default_theme)

    def set_theme(self, theme_name: str):
        """Set the theme to light or dark."""
        self.current_theme_name = theme_name
        self.current_theme = LIGHT_THEME if theme_name == "light" else DARK_THEME
        self.rich_theme = self._create_rich_theme()

    def _create_rich_theme(self) -> Theme:
        """Create a Rich theme object from current theme colors."""
        colors = self.current_theme
        return Theme({
            "status.success": colors.success,
            "status.warning": colors.warning,
            "status.error": colors.error,
            "status.info": colors.info,

            "table.title": colors.title,
            "table.header": colors.header,
            "table.border": colors.border,

            "metric.value": colors.metric_value,
            "metric.label": colors.metric_label,
            "verdict.refuted": colors.refuted,
        })

    def get_title_style(self) -> str:
        return self.current_theme.title

    def get_border_style(self) -> str:
        return self.current_theme.border
