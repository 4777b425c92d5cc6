import logging
import re
from typing import Callable, Dict

from src.algebra.degeneration import SpecializationConfig, run_degeneration
from src.algebra.ham_vec import HamElement, h2_bracket, verify_h2
from src.algebra.hecke import run_relation_suite
from src.algebra.lefschetz import lefschetz_verify, load_space, random_suite, weight_filtration_report
from src.algebra.schemas import CaseStatus, SuiteReport
from src.algebra.w_algebra import check_undeformed, f_vanishing_probe, lehn_suite
from src.controller.schemas import Command, OutputFormat, RunConfig
from src.utils import config
from src.utils.utils import load_matrix, save_report

logger = logging.getLogger(__name__)


class SuiteController:
    """Dispatch a validated RunConfig to the suite it names"""

    def __init__(self):
        self._handlers: Dict[Command, Callable[[RunConfig], SuiteReport]] = {
            Command.RELATIONS: self._relations,
            Command.W: self._w_algebra,
            Command.H2: self._h2,
            Command.DEGENERATE: self._degenerate,
            Command.LEFSCHETZ: self._lefschetz,
        }

    def run(self, cfg: RunConfig) -> SuiteReport:
        logger.info(f"Running {cfg.command.value} {cfg.suite} on {cfg.instance or '-'}")
        report = self._handlers[cfg.command](cfg).sorted()
        logger.info(f"{cfg.command.value} {cfg.suite}: {report.summary}")
        return report

    def _relations(self, cfg: RunConfig) -> SuiteReport:
        return run_relation_suite(
            cfg.instance,
            cfg.suite,
            max_degree=cfg.max_degree,
            max_index=cfg.max_index,
            max_length=cfg.max_length,
            order=cfg.order,
            jobs=cfg.jobs,
        )

    def _w_algebra(self, cfg: RunConfig) -> SuiteReport:
        if cfg.suite == "undeformed":
            return check_undeformed(cfg.instance, cfg.max_degree, cfg.max_index, cfg.max_length)
        if cfg.suite == "lehn":
            return lehn_suite(cfg.instance, cfg.max_degree, cfg.max_index, cfg.max_length)
        return f_vanishing_probe(cfg.instance, seed=cfg.seed, max_degree=cfg.max_degree, max_length=cfg.max_length)

    def _h2(self, cfg: RunConfig) -> SuiteReport:
        if cfg.suite == "verify":
            return verify_h2(cfg.index_cap, cfg.degree_cap)
        a, b = (HamElement.parse(text) for text in cfg.operands)
        result = h2_bracket(a, b)
        report = SuiteReport(suite="h2-bracket", instance="plane")
        report.add(f"[{a.text()}, {b.text()}]", CaseStatus.OK)
        report.extra["result"] = result.text()
        return report

    def _degenerate(self, cfg: RunConfig) -> SuiteReport:
        spec = SpecializationConfig(cfg.instance, r=cfg.r, chi=cfg.chi, window=cfg.window)
        return run_degeneration(spec, cfg.suite, cfg.interp_max)

    def _lefschetz(self, cfg: RunConfig) -> SuiteReport:
        if cfg.suite == "random":
            return random_suite(cfg.seed, cfg.count)
        if cfg.suite == "weight-filtration":
            return weight_filtration_report(load_matrix(cfg.path), cfg.path)
        return lefschetz_verify(load_space(cfg.path), cfg.path)


def render(report: SuiteReport, fmt: OutputFormat) -> str:
    if fmt == OutputFormat.JSON:
        return report.to_json()
    if "result" in report.extra:
        return str(report.extra["result"])
    return report.to_text()


def exit_code(report: SuiteReport) -> int:
    """0 when every case is OK or SKIP, 1 on any FAIL or ERROR"""
    return 0 if report.ok else 1


def persist(report: SuiteReport, cfg: RunConfig) -> str:
    """Write the JSON report under HECKE_REPORT_DIR when it is set"""
    directory = config.report_dir()
    if not directory:
        return ""
    tag = re.sub(r"[^A-Za-z0-9=.-]+", "_", cfg.instance or "plane")
    name = f"{cfg.command.value}-{cfg.suite}-{tag}.json"
    return save_report(report.to_json(), name, directory)
