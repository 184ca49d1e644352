#!/usr/bin/env python3
"""
Módulo de painel - relatório de classificação em tabela alinhada para leitura humana
"""

from typing import List, Optional, Sequence

from ..core.classify import ClassificationReport, HorizonCheck
from ..utils.formatters import format_float, format_margin

from .terminal import Colors, STATUS_COLORS, paint, strip_ansi

TABLE_WIDTH = 78


def _box_line(text: str, width: int, color: bool) -> str:
    padding = max(0, width - 4 - len(strip_ansi(text)))
    edge = paint("║", Colors.BRIGHT_CYAN, color)
    return f"{edge} {text}{' ' * padding} {edge}"


def render_report(
    report: ClassificationReport,
    violations: Sequence[str] = (),
    checks: Optional[List[HorizonCheck]] = None,
    color: bool = False,
    width: int = TABLE_WIDTH,
) -> str:
    """
    Tabela com uma linha por propriedade: status, método, citação e margem.

    Args:
        report: Relatório de classificação
        violations: Resultado da auditoria de implicações
        checks: Comparações exato × horizonte (opcional)
        color: Usa cores ANSI
        width: Largura total da caixa

    Returns:
        Texto pronto para impressão
    """
    top = paint("╔" + "═" * (width - 2) + "╗", Colors.BRIGHT_CYAN, color)
    mid = paint("╠" + "─" * (width - 2) + "╣", Colors.BRIGHT_CYAN, color)
    bottom = paint("╚" + "═" * (width - 2) + "╝", Colors.BRIGHT_CYAN, color)

    g_neg, g_pos = report.side_rates
    lines = [top]
    title = f"📐 {report.label or '(sem rótulo)'}  [{report.kind}, p={format_float(report.p)}]"
    lines.append(_box_line(paint(title, Colors.BOLD + Colors.BRIGHT_GREEN, color), width, color))
    lines.append(_box_line(f"impressão digital {report.fingerprint}   g⁻={format_float(g_neg)}   g⁺={format_float(g_pos)}", width, color))
    lines.append(mid)
    lines.append(_box_line(f"{'propriedade':<22} {'status':<10} {'método':<8} {'citação':<12} {'margem':>12}", width, color))
    for prop, verdict in report.verdicts.items():
        status = paint(f"{verdict.status:<10}", STATUS_COLORS.get(verdict.status, ""), color)
        lines.append(_box_line(
            f"{prop:<22} {status} {verdict.method:<8} {verdict.citation:<12} {format_margin(verdict.margin):>12}",
            width,
            color,
        ))
    if checks:
        lines.append(mid)
        lines.append(_box_line(f"{'condição':<10} {'exata':>14} {'horizonte':>14} {'margem':>12} {'ok':>4}", width, color))
        for check in checks:
            ok = "✅" if check.agree else "❌"
            lines.append(_box_line(
                f"{check.name:<10} {format_float(check.exact):>14} {format_float(check.horizon):>14} {format_float(check.margin):>12} {ok:>3}",
                width,
                color,
            ))
    lines.append(mid)
    if violations:
        for v in violations:
            lines.append(_box_line(paint(f"⚠️  {v}", Colors.BRIGHT_RED, color), width, color))
    else:
        lines.append(_box_line(paint("✅ auditoria de implicações: nenhuma violação", Colors.BRIGHT_GREEN, color), width, color))
    lines.append(bottom)
    return "\n".join(lines)
