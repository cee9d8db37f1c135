from pathlib import Path
from typing import Dict

from affect.statistics.summary import MethodSummary


class RunReportGenerator:
    """
    Generates a structured, human-readable text report
    of a replicated tracking run.
    """

    def __init__(self, output_dir: Path):
        self.output_dir = Path(output_dir)
        self.output_dir.mkdir(parents=True, exist_ok=True)

    def generate(self, results: dict) -> Path:
        report_path = self.output_dir / "report.txt"

        with report_path.open("w") as f:
            self._write_header(f, results)
            self._write_summary(f, results["summary"])
            self._write_ranking(f, results["summary"])

        return report_path

    # --------------------------------------------------
    # Sections
    # --------------------------------------------------

    def _write_header(self, f, results: dict):
        f.write("=" * 80 + "\n")
        f.write("EVOLUTIONARY CLUSTERING REPORT\n")
        f.write("Adaptive forgetting factor tracking\n")
        f.write("=" * 80 + "\n\n")
        f.write(f"Scenario:   {results['scenario']}\n")
        f.write(f"Clusterer:  {results['clusterer']}\n")
        f.write(f"Replicates: {results['runs']}\n")
        f.write(f"Base seed:  {results['seed']}\n\n")

    def _write_summary(self, f, summary: Dict[str, MethodSummary]):
        f.write("-" * 80 + "\n")
        f.write("RESULTS (mean over time steps, then over replicates)\n")
        f.write("-" * 80 + "\n")

        f.write(f"{'Method':<20}{'Rand':<12}{'Std. error':<14}{'MSE'}\n")
        f.write("-" * 80 + "\n")

        for s in summary.values():
            rand = "n/a" if s.mean_rand is None else f"{s.mean_rand:.3f}"
            stderr = "n/a" if s.stderr_rand is None else f"{s.stderr_rand:.3f}"
            error = "n/a" if s.mean_mse is None else f"{s.mean_mse:.4g}"
            f.write(f"{s.method:<20}{rand:<12}{stderr:<14}{error}\n")

        f.write("\n")

    def _write_ranking(self, f, summary: Dict[str, MethodSummary]):
        scored = [s for s in summary.values() if s.mean_rand is not None]

        f.write("-" * 80 + "\n")
        f.write("CONCLUSION\n")
        f.write("-" * 80 + "\n")

        if not scored:
            f.write("No ground truth available; Rand indices were not computed.\n")
        else:
            best = max(scored, key=lambda s: s.mean_rand)
            f.write(f"Highest mean Rand index: {best.method} ({best.mean_rand:.3f})\n")

            static = summary.get("static")
            if static is not None and static.mean_rand is not None and best.method != "static":
                f.write(
                    f"Improvement over static clustering: "
                    f"{best.mean_rand - static.mean_rand:+.3f}\n"
                )

        f.write("\n" + "=" * 80 + "\n")
