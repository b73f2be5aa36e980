"""Utility functions for terminal output."""

import math
from typing import Sequence

from rich.table import Table


def create_table(title: str, headers: Sequence[str]) -> Table:
    """Create a formatted table for display."""
    table = Table(title=title, show_header=True, header_style="bold cyan")
    for header in headers:
        table.add_column(header)
    return table


def format_accuracy(accuracy: float) -> str:
    """Format a recognition rate as a coloured percentage."""
    text = f"{100.0 * accuracy:.2f}%"
    if accuracy >= 0.9:
        return f"[green]{text}[/green]"
    elif accuracy >= 0.5:
        return f"[yellow]{text}[/yellow]"
    else:
        return f"[red]{text}[/red]"


def format_ratio(value: float, best: bool = False) -> str:
    """Format a decision distance; the winning class is highlighted."""
    text = "inf" if math.isinf(value) else f"{value:.6g}"
    return f"[bold green]{text}[/bold green]" if best else text
