"""Suite runner and the per-command drivers."""

from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Iterable, List, Optional

import numpy as np

from ..exporters import EXPORTERS, CsvExporter, JsonExporter
from ..flow.experiments import run_experiment, trajectory_rows
from ..model.config import SUITE_ORDER, SuiteConfig, SuiteId
from ..model.report import SuiteReport, SuiteResult
from ..utils.logger import get_logger
from .suites import SuiteContext, run_suite

logger = get_logger(__name__)

REPORT_NAME = "report"


class SuiteRunner:
    """Runs verification suites for one configuration and writes their artifacts."""

    def __init__(self, config: SuiteConfig):
        self.config = config
        self.context = SuiteContext.from_config(config)

    @property
    def output_dir(self) -> Path:
        return Path(self.config.output_dir)

    def run(self, suites: Optional[Iterable[SuiteId]] = None) -> SuiteReport:
        """Run the selected suites (default: the configured ones) in report order."""
        chosen = suites if suites is not None else self.config.suites
        selected = sorted(set(chosen), key=lambda suite: SUITE_ORDER[suite])
        workers = min(self.config.workers, max(1, len(selected)))
        logger.info(
            f"Running {len(selected)} suite(s) with seed {self.config.seed} on {workers} worker(s)"
        )
        if workers == 1:
            results = [run_suite(suite, self.context) for suite in selected]
        else:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                futures = [pool.submit(run_suite, suite, self.context) for suite in selected]
                results = [future.result() for future in futures]
        return self._assemble(results)

    def _assemble(self, results: List[SuiteResult]) -> SuiteReport:
        ordered = sorted(results, key=lambda r: SUITE_ORDER[r.suite])
        return SuiteReport(
            seed=self.config.seed,
            config_digest=self.config.digest(),
            results=ordered,
            passed=all(r.passed for r in ordered),
        )

    def save_report(self, report: SuiteReport, name: str = REPORT_NAME) -> Path:
        exporter = EXPORTERS[self.config.report_format](self.output_dir)
        return exporter.export(report.model_dump(mode="json"), name)

    def verify(self) -> SuiteReport:
        report = self.run()
        self.save_report(report)
        return report

    def orbit_demo(self) -> SuiteReport:
        """Orbit suite alone, with the scaling table written as CSV."""
        report = self.run([SuiteId.ORBIT])
        result = report.result(SuiteId.ORBIT)
        if result is not None and result.rows:
            CsvExporter(self.output_dir).export(result.rows, "orbit_scaling")
        self.save_report(report, "orbit_report")
        return report

    def flow(self) -> SuiteReport:
        """Flow suite plus one trajectory CSV per configured start point."""
        report = self.run([SuiteId.FLOW])
        self.export_trajectories()
        self.save_report(report, "flow_report")
        return report

    def export_trajectories(self) -> List[Path]:
        rng = np.random.default_rng([self.config.seed, SUITE_ORDER[SuiteId.FLOW]])
        resolver = self.context.resolver(rng)
        exporter = CsvExporter(self.output_dir)
        paths = []
        for ref in self.config.flows:
            experiment = resolver.flow(ref)
            outcome = run_experiment(experiment, self.context.settings)
            header = (
                ["t"]
                + [f"x{i + 1}" for i in range(experiment.model.space.ambient_dim)]
                + ["residual"]
            )
            for i, run in enumerate(outcome.runs):
                rows = [dict(zip(header, values)) for values in trajectory_rows(run)]
                paths.append(exporter.export(rows, f"{experiment.name}_{i}"))
        return paths

    def cohomology(self) -> SuiteReport:
        """Cech suite with the dimension lists written per cover."""
        report = self.run([SuiteId.CECH])
        result = report.result(SuiteId.CECH)
        if result is not None:
            dims: dict = {}
            for row in result.rows:
                dims.setdefault(row["cover"], []).append(row["dimension"])
            JsonExporter(self.output_dir).export(dims, "cohomology")
        self.save_report(report, "cohomology_report")
        return report
