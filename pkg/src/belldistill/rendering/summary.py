"""Markdown summaries of analysis reports."""

from __future__ import annotations

import logging
from pathlib import Path

from jinja2 import Environment, PackageLoader, TemplateError

from ..config.models import ReportFile
from ..core.errors import RenderingError

_LOGGER = logging.getLogger(__name__)

SUMMARY_TEMPLATE = "summary.md.j2"


def build_environment(*, auto_reload: bool = False) -> Environment:
    """Create the Jinja2 environment over the packaged templates."""
    env = Environment(
        loader=PackageLoader("belldistill", "rendering/templates"),
        autoescape=False,  # nosec B701 - markdown output, never served as HTML
        enable_async=True,
        auto_reload=auto_reload,
    )
    env.trim_blocks = True
    env.lstrip_blocks = True
    return env


class SummaryRenderer:
    """Render a ReportFile into a short markdown document."""

    def __init__(self, environment: Environment | None = None, template: str = SUMMARY_TEMPLATE) -> None:
        self._environment = environment or build_environment()
        self._template = template

    async def render(self, report: ReportFile) -> str:
        context = {
            "report": report,
            "quantum_maximum": 2 ** ((report.input.n_qubits - 1) / 2),
        }
        try:
            template = self._environment.get_template(self._template)
            return await template.render_async(context)
        except TemplateError as exc:
            raise RenderingError(f"cannot render '{self._template}': {exc}") from exc

    async def write(self, report: ReportFile, path: Path) -> Path:
        text = await self.render(report)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
        _LOGGER.info("Wrote summary %s", path)
        return path
