"""
Text templates for console tables, verification reports, scan anchors, endpoints and spectrum summaries.
"""
import math
from typing import Dict, Sequence


class SequenceReports:
    """Tables describing a synthesized sequence and its self-check"""

    @staticmethod
    def pulse_table(theta_deg: Sequence[float], phi_deg: Sequence[float]):
        head = "pulse   theta (deg)        phi (deg)"
        rows = [
            f"{i + 1:>5}   {t:>14.10f}   {p:>14.10f}"
            for i, (t, p) in enumerate(zip(theta_deg, phi_deg))
        ]
        return "\n".join([head, "-" * len(head)] + rows)

    @staticmethod
    def synth_header(theta_deg: float, phi_deg: float, f_star: float, branch: int):
        sign = "+" if branch > 0 else "-"
        return f"""
ROTTEN sequence for {theta_deg:g}° about phase {phi_deg:g}°
tailored offset f* = ±{f_star:.12g} (branch {sign})
"""

    @staticmethod
    def verify_report(report: Dict):
        status = "✅ passed" if report["passed"] else "⚠️ did not pass"
        return f"""
Analytic check {status}
  distance at +f*   {report["distance_at_plus_f"]:.3e}
  distance at -f*   {report["distance_at_minus_f"]:.3e}
  phase residual    {report["eq3_residual"]:.3e}
"""

    @staticmethod
    def oracle_report(converged: bool, objective: float, iterations: int, agreement: Dict):
        status = "✅ converged" if converged else "⚠️ did not converge"
        return f"""
Numerical search {status} after {iterations} evaluations (J = {objective:.3e})
  propagator distance at +f*   {agreement["distance_at_plus_f"]:.3e}
  propagator distance at -f*   {agreement["distance_at_minus_f"]:.3e}
"""


class ScanReports:
    """Fidelity values at the anchor offsets of a scan"""

    @staticmethod
    def anchors(rows: Sequence[Sequence[float]]):
        head = "f                   lambda simple    lambda ROTTEN"
        body = [f"{f:+.12f}   {s:.12f}   {c:.12f}" for f, s, c in rows]
        return "\n".join([head, "-" * len(head)] + body)


class TrajectoryReports:
    """Bloch vector endpoints"""

    @staticmethod
    def endpoint(label: str, vector: Sequence[float]):
        x, y, z = (0.0 if abs(v) < 5e-13 else float(v) for v in vector)
        return f"{label} endpoint: ({x:+.10f}, {y:+.10f}, {z:+.10f})"


class SpectrumReports:
    """Per-line phase summary"""

    @staticmethod
    def phases(mode: str, offsets_hz: Sequence[float], phases_deg: Sequence[float]):
        lines = [f"{mode} excitation"]
        for i, (offset, phase) in enumerate(zip(offsets_hz, phases_deg)):
            shown = "undefined" if math.isnan(phase) else f"{phase:+8.3f}°"
            lines.append(f"  line {i + 1} at {offset:+10.1f} Hz   phase {shown}")
        return "\n".join(lines)
