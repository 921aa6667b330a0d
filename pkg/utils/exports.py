"""
Result writers - delimited text files with a provenance header
Every file starts with "# " comment lines holding the effective run config, and carries no
timestamps, so re-running the same invocation reproduces the file byte for byte
"""
import json
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence

from rotor.fidelity import FidelityScan
from rotor.spectrum import Spectrum
from rotor.trajectory import Trajectory

SCAN_HEADER = "f,lambda_simple,lambda_composite"
TRAJECTORY_HEADER = "progress,vx,vy,vz"
SPECTRUM_HEADER = "freq_hz,real,imag,magnitude"


def fmt(value: float) -> str:
    """Full double precision"""
    return f"{float(value):.17g}"


def provenance_json(config: Dict) -> str:
    return json.dumps(config, sort_keys=True, separators=(", ", ": "), default=str)


class ResultWriter:
    """Writes scan, trajectory and spectrum files stamped with the run config"""

    def __init__(self, config: Optional[Dict] = None, quiet: bool = False):
        """
        Args:
            config: effective invocation config echoed into every header
            quiet: suppress the console line announcing each file
        """
        self.config = dict(config or {})
        self.quiet = quiet

    def header_lines(self, extra: Sequence[str] = ()) -> List[str]:
        lines = [f"# provenance: {provenance_json(self.config)}"]
        lines.extend(f"# {line}" for line in extra)
        return lines

    def _write(self, path, lines: Iterable[str]) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            for line in lines:
                f.write(line + "\n")
        if not self.quiet:
            print(f"✅ Wrote {path}")
        return path

    def write_scan(self, path, scan: FidelityScan) -> Path:
        theta, phi = scan.target
        extra = [f"target_theta_rad={fmt(theta)} target_phi_rad={fmt(phi)} f_star={fmt(scan.f_star)}"]
        if scan.anchors_inserted:
            # rows at these offsets sit off the uniform grid
            extra.append("anchors inserted: " + " ".join(fmt(f) for f in scan.anchors_inserted))
        lines = self.header_lines(extra) + [SCAN_HEADER]
        lines += [f"{fmt(f)},{fmt(s)},{fmt(c)}" for f, s, c in scan.rows()]
        return self._write(path, lines)

    def write_trajectory(self, path, trajectory: Trajectory) -> Path:
        extra = [
            f"f={fmt(trajectory.off.f)} pulses={len(trajectory.pulses)} "
            f"boundaries={','.join(str(b) for b in trajectory.boundaries)}"
        ]
        lines = self.header_lines(extra) + [TRAJECTORY_HEADER]
        lines += [
            f"{fmt(p)},{fmt(v[0])},{fmt(v[1])},{fmt(v[2])}"
            for p, v in zip(trajectory.progress, trajectory.vectors)
        ]
        return self._write(path, lines)

    def write_spectrum(self, path, spectrum: Spectrum) -> Path:
        summary = [
            f"line {i + 1}: offset_hz={fmt(offset)} phase_deg={fmt(phase)}"
            for i, (offset, phase) in enumerate(zip(spectrum.line_offsets_hz, spectrum.phases_deg))
        ]
        lines = self.header_lines(summary) + [SPECTRUM_HEADER]
        lines += [
            f"{fmt(freq)},{fmt(value.real)},{fmt(value.imag)},{fmt(abs(value))}"
            for freq, value in zip(spectrum.freq_hz, spectrum.values)
        ]
        return self._write(path, lines)


def read_delimited(path) -> Dict:
    """
    Parse a file written by ResultWriter.

    Returns:
        {"comments": [...], "columns": [...], "rows": [[float, ...], ...]}
    """
    comments, columns, rows = [], [], []
    with open(path, "r", encoding="utf-8") as f:
        for raw in f:
            line = raw.rstrip("\n")
            if line.startswith("#"):
                comments.append(line[1:].strip())
            elif not columns:
                columns = line.split(",")
            elif line:
                rows.append([float(v) for v in line.split(",")])
    return {"comments": comments, "columns": columns, "rows": rows}
