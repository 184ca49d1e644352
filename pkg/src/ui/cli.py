#!/usr/bin/env python3
"""
Módulo de linha de comando - classify, simulate, shadow, reduce e audit
"""

import argparse
import logging
import sys
from typing import Any, Dict, List, Optional, Sequence

from .. import __version__
from ..core.classify import (
    ClassificationReport,
    classify_atomic,
    classify_dissipative,
    classify_shift_report,
    horizon_checks,
    implication_audit,
)
from ..core.config import build_system, load_config, to_config
from ..core.shadowing import (
    NoSplittingError,
    build_splitting,
    make_pseudotrajectory,
    shadow,
)
from ..core.simulate import (
    CompositionOperator,
    PreconditionError,
    ShiftOperator,
    orbit_norms,
)
from ..core.sweep import DEFAULT_HORIZON, DEFAULT_KSPAN, audit_sweep
from ..core.systems import (
    AtomicSystem,
    DissipativeSystem,
    InvalidSystemError,
    WeightSequence,
    induced_weights,
    shift_to_measures,
)
from ..utils.formatters import canonical_json, csv_rows, format_float
from ..utils.validators import ConfigError
from .dashboard import render_report
from .terminal import Colors, paint, print_flush, use_color

logger = logging.getLogger(__name__)

TOOL_NAME = "dinamica-linear"

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_VIOLATION = 3
EXIT_NO_SPLITTING = 4

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

DEFAULT_SEED = 0
DEFAULT_DELTA = 1e-3
DEFAULT_LENGTH = 201
DEFAULT_COUNT = 200
DEFAULT_SAMPLES = 64


def _load(path: str) -> Any:
    cfg = load_config(path)
    return cfg, build_system(cfg)


def _verdict_dict(verdict) -> Dict[str, Any]:
    return {
        "status": verdict.status,
        "method": verdict.method,
        "citation": verdict.citation,
        "witness": verdict.witness,
        "margin": verdict.margin,
        "note": verdict.note,
    }


def report_payload(
    report: ClassificationReport,
    violations: Sequence[str],
    checks,
    horizon: int,
    k_span: int,
    seed: int,
) -> Dict[str, Any]:
    """Estrutura serializável do relatório (a ordem das chaves é fixada na serialização)."""
    g_neg, g_pos = report.side_rates
    return {
        "tool": TOOL_NAME,
        "version": __version__,
        "label": report.label,
        "kind": report.kind,
        "fingerprint": report.fingerprint,
        "p": report.p,
        "side_rates": {"g_neg": g_neg, "g_pos": g_pos},
        "verdicts": {prop: _verdict_dict(v) for prop, v in report.verdicts.items()},
        "audit": list(violations),
        "horizon": {
            "n": horizon,
            "k_span": k_span,
            "checks": [
                {"name": c.name, "exact": c.exact, "horizon": c.horizon, "margin": c.margin, "agree": c.agree}
                for c in (checks or [])
            ],
        },
        "seed": seed,
    }


def classify_system(system, horizon: int, k_span: int, seed: int, samples: int = DEFAULT_SAMPLES):
    """
    Classifica qualquer tipo de sistema e reexecuta as condições de taxa no horizonte.

    Returns:
        (relatório, violações da auditoria, comparações de horizonte)
    """
    if isinstance(system, AtomicSystem):
        report = classify_atomic(system, horizon, samples, seed)
        return report, implication_audit(report), []
    if isinstance(system, WeightSequence):
        report = classify_shift_report(system)
        measures = shift_to_measures(system).measures
    else:
        report = classify_dissipative(system)
        measures = system.measures
    checks = horizon_checks(measures, horizon, k_span)
    return report, implication_audit(report), checks


def cmd_classify(args) -> int:
    """Relatório completo de classificação (tabela ou JSON)."""
    _, system = _load(args.config)
    report, violations, checks = classify_system(system, args.horizon, args.kspan, args.seed)
    disagreements = [f"horizonte discorda em {c.name}" for c in checks if not c.agree]
    if args.json:
        payload = report_payload(report, violations + disagreements, checks, args.horizon, args.kspan, args.seed)
        print_flush(canonical_json(payload))
    else:
        print_flush(render_report(report, violations + disagreements, checks, color=use_color()))
    if violations or disagreements:
        logger.error("auditoria de %s com %d violações", report.label, len(violations) + len(disagreements))
        return EXIT_VIOLATION
    return EXIT_OK


def _parse_range(text: str) -> List[int]:
    try:
        lo, hi = (int(part) for part in text.split(":"))
    except ValueError:
        raise ConfigError(f"--range espera 'A:B' com inteiros, recebido {text!r}")
    step = 1 if hi >= lo else -1
    return list(range(lo, hi + step, step))


def _operator_and_vector(system, text: str):
    parts = [int(v) for v in text.split(",")]
    if isinstance(system, WeightSequence):
        operator = ShiftOperator(system)
        return operator, operator.unit(parts[-1])
    operator = CompositionOperator(system)
    if len(parts) == 1:
        site = (0, parts[0], 0)
    elif len(parts) == 2:
        site = (parts[0], parts[1], 0) if isinstance(system, AtomicSystem) else (0, parts[0], parts[1])
    else:
        site = tuple(parts)
    return operator, operator.unit(site)


def cmd_simulate(args) -> int:
    """Tabela CSV (n, norm) de ‖Tⁿx‖ para o vetor da base normalizada escolhido."""
    _, system = _load(args.config)
    try:
        operator, x = _operator_and_vector(system, args.vector)
    except ValueError:
        raise ConfigError(f"--vector espera 'k', 'c,k' ou 'c,k,j', recebido {args.vector!r}")
    ns = _parse_range(args.range)
    norms = orbit_norms(operator, x, ns)
    sys.stdout.write(csv_rows(("n", "norm"), zip(ns, norms)))
    sys.stdout.flush()
    return EXIT_OK


def cmd_shadow(args) -> int:
    """Sombreia uma δ-pseudotrajetória com semente e compara ε com a cota a priori."""
    if not args.delta > 0:
        raise ConfigError(f"--delta deve ser positivo, recebido {args.delta}")
    if args.length < 1 or args.length % 2 == 0:
        raise ConfigError(f"--length deve ser ímpar e positivo, recebido {args.length}")
    _, system = _load(args.config)
    if isinstance(system, DissipativeSystem):
        logger.info("sombreando o shift isométrico dos pesos induzidos")
        system = induced_weights(system)
    if not isinstance(system, WeightSequence):
        raise NoSplittingError("sistemas atômicos não têm decomposição hiperbólica certificada")
    operator = ShiftOperator(system)
    split = build_splitting(operator)
    pt = make_pseudotrajectory(operator, None, args.delta, args.length, args.seed)
    result = shadow(operator, pt, split)
    payload = {
        "label": system.label,
        "splitting": split.kind,
        "delta": args.delta,
        "length": args.length,
        "seed": args.seed,
        "epsilon": result.epsilon,
        "bound": result.bound,
        "residual": result.residual,
        "orbit_ok": result.orbit_ok,
        "pass": result.within_bound,
    }
    if args.json:
        print_flush(canonical_json(payload))
    else:
        color = use_color()
        if result.within_bound:
            status = paint("✅ ε ≤ cota", Colors.BRIGHT_GREEN, color)
        elif not result.orbit_ok:
            status = paint("❌ relação de órbita violada", Colors.BRIGHT_RED, color)
        else:
            status = paint("❌ ε > cota", Colors.BRIGHT_RED, color)
        print_flush(f"🌗 decomposição: {split.kind}")
        print_flush(f"   δ = {format_float(args.delta)}   ε = {format_float(result.epsilon)}   cota = {format_float(result.bound)}")
        print_flush(f"   resíduo da órbita = {format_float(result.residual)}   {status}")
    return EXIT_OK if result.within_bound else EXIT_VIOLATION


def cmd_reduce(args) -> int:
    """Emite a configuração do shift com pesos induzidos w_k = ρ_{k-1}^{-1/p}."""
    cfg, system = _load(args.config)
    if not isinstance(system, DissipativeSystem):
        raise ConfigError("reduce exige configuração dissipativa", cfg.line("kind"))
    print_flush(canonical_json(to_config(induced_weights(system))))
    return EXIT_OK


def cmd_audit(args, corrupt=None) -> int:
    """Varredura de sistemas aleatórios (ou das configurações dadas) com auditoria completa."""
    systems = None
    if args.configs:
        systems = []
        for path in args.configs:
            cfg, system = _load(path)
            if not isinstance(system, DissipativeSystem):
                raise ConfigError("audit aceita apenas configurações dissipativas", cfg.line("kind"))
            systems.append(system)
    summary = audit_sweep(args.count, args.seed, args.horizon, args.kspan, systems, not args.no_oracle, corrupt)
    payload = {
        "count": summary.count,
        "seed": summary.seed,
        "violations": summary.violations,
        "distribution": {prop: dict(sorted(c.items())) for prop, c in summary.distribution.items()},
    }
    if args.json:
        print_flush(canonical_json(payload))
    else:
        color = use_color()
        print_flush(f"🔎 {summary.count} sistemas auditados (semente {summary.seed})")
        for prop, counts in payload["distribution"].items():
            cells = "  ".join(f"{k}={v}" for k, v in counts.items())
            print_flush(f"   {prop:<22} {cells}")
        if summary.violations:
            print_flush(paint(f"❌ {len(summary.violations)} violações", Colors.BRIGHT_RED, color))
            for v in summary.violations:
                print_flush(f"   • {v}")
        else:
            print_flush(paint("✅ 0 violações", Colors.BRIGHT_GREEN, color))
    return EXIT_OK if summary.ok else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    """Analisador de argumentos com os cinco subcomandos."""
    parser = argparse.ArgumentParser(
        prog=TOOL_NAME,
        description="Classificador de dinâmica linear: shifts ponderados e operadores de composição dissipativos",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--verbose", "-v", action="store_true", help="Logs de nível INFO em stderr")
    parser.add_argument("--debug", action="store_true", help="Logs de nível DEBUG em stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="Relatório de classificação de um sistema")
    p.add_argument("config", help="Arquivo JSON do sistema")
    p.add_argument("--json", action="store_true", help="Saída JSON canônica")
    p.add_argument("--horizon", type=int, default=DEFAULT_HORIZON, help="n dos estimadores de horizonte")
    p.add_argument("--kspan", type=int, default=DEFAULT_KSPAN, help="Raio de varredura dos estimadores")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, help="Semente do amostrador atômico")
    p.set_defaults(handler=cmd_classify)

    p = sub.add_parser("simulate", help="Normas da órbita de um vetor da base normalizada (CSV)")
    p.add_argument("config", help="Arquivo JSON do sistema")
    p.add_argument("--vector", default="0", help="Sítio: 'k', 'c,k' (atômico), 'k,j' (célula) ou 'c,k,j'")
    p.add_argument("--range", default="0:10", help="Intervalo de n 'A:B' (inclusivo)")
    p.set_defaults(handler=cmd_simulate)

    p = sub.add_parser("shadow", help="Sombreia uma δ-pseudotrajetória aleatória")
    p.add_argument("config", help="Arquivo JSON do sistema")
    p.add_argument("--delta", type=float, default=DEFAULT_DELTA, help="δ da pseudotrajetória")
    p.add_argument("--length", type=int, default=DEFAULT_LENGTH, help="Quantidade de pontos (ímpar)")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, help="Semente das perturbações")
    p.add_argument("--json", action="store_true", help="Saída JSON canônica")
    p.set_defaults(handler=cmd_shadow)

    p = sub.add_parser("reduce", help="Configuração do shift com pesos induzidos")
    p.add_argument("config", help="Arquivo JSON dissipativo")
    p.set_defaults(handler=cmd_reduce)

    p = sub.add_parser("audit", help="Auditoria em lote de sistemas aleatórios")
    p.add_argument("configs", nargs="*", help="Configurações dissipativas (em vez de sistemas aleatórios)")
    p.add_argument("--count", type=int, default=DEFAULT_COUNT, help="Quantidade de sistemas aleatórios")
    p.add_argument("--seed", type=int, default=7, help="Semente do gerador")
    p.add_argument("--horizon", type=int, default=DEFAULT_HORIZON, help="n dos estimadores de horizonte")
    p.add_argument("--kspan", type=int, default=DEFAULT_KSPAN, help="Raio de varredura dos estimadores")
    p.add_argument("--no-oracle", action="store_true", help="Não executa o oráculo de força bruta")
    p.add_argument("--json", action="store_true", help="Saída JSON canônica")
    p.set_defaults(handler=cmd_audit)
    return parser


def configure_logging(verbose: bool = False, debug: bool = False):
    level = logging.DEBUG if debug else logging.INFO if verbose else logging.WARNING
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr, force=True)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Ponto de entrada da linha de comando.

    Args:
        argv: Argumentos (padrão: sys.argv[1:])

    Returns:
        Código de saída: 0 sucesso, 2 configuração inválida, 3 violação de auditoria, 4 sem decomposição
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose, args.debug)
    try:
        return args.handler(args)
    except (ConfigError, InvalidSystemError, PreconditionError) as exc:
        print_flush(f"❌ {exc}", sys.stderr)
        return EXIT_INVALID
    except NoSplittingError as exc:
        print_flush(f"❌ {exc}", sys.stderr)
        return EXIT_NO_SPLITTING
