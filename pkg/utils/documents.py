"""
Document Store - sequence and spin-system files
Sequences are stored with angles in degrees and converted to radians on load.
Both document kinds carry the run provenance as a leading "provenance" object.
"""
import json
import math
from pathlib import Path
from typing import Any, Dict, List, Optional

from rotor.errors import DocumentError
from rotor.pulse import CompositeSequence, Pulse
from rotor.spectrum import SpectralLine, SpinSystem


def _read_json(path) -> Dict:
    path = Path(path)
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except OSError as e:
        raise DocumentError("file", f"cannot read {path}: {e.strerror or e}") from e
    except json.JSONDecodeError as e:
        raise DocumentError("file", f"{path} is not valid JSON (line {e.lineno}: {e.msg})") from e
    if not isinstance(data, dict):
        raise DocumentError("file", f"{path} must hold a JSON object")
    return data


def _write_json(path, data: Dict, quiet: bool) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        json.dump(data, f, indent=2)
        f.write("\n")
    if not quiet:
        print(f"✅ Wrote {path}")
    return path


def _number(data: Dict, key: str, where: str) -> float:
    field = f"{where}.{key}" if where else key
    if key not in data:
        raise DocumentError(field, "missing")
    value = data[key]
    # bool is an int subclass but never a valid angle or frequency
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise DocumentError(field, f"expected a number, got {value!r}")
    if not math.isfinite(value):
        raise DocumentError(field, f"expected a finite number, got {value!r}")
    return float(value)


def _object(data: Dict, key: str) -> Dict:
    if key not in data:
        raise DocumentError(key, "missing")
    if not isinstance(data[key], dict):
        raise DocumentError(key, f"expected an object, got {data[key]!r}")
    return data[key]


def _list(data: Dict, key: str) -> List:
    if key not in data:
        raise DocumentError(key, "missing")
    if not isinstance(data[key], list):
        raise DocumentError(key, f"expected a list, got {data[key]!r}")
    return data[key]


def sequence_to_document(seq: CompositeSequence, provenance: Optional[Dict] = None) -> Dict:
    theta, phi = seq.target
    doc: Dict[str, Any] = {}
    if provenance is not None:
        doc["provenance"] = provenance
    doc["target"] = {"theta_deg": math.degrees(theta), "phi_deg": math.degrees(phi)}
    doc["f_star"] = seq.f_star
    doc["pulses"] = [{"theta_deg": math.degrees(p.theta), "phi_deg": math.degrees(p.phi)} for p in seq.pulses]
    return doc


def sequence_from_document(doc: Dict) -> CompositeSequence:
    """
    Raises:
        DocumentError: naming the first malformed field, e.g. "pulses[1].phi_deg"
    """
    target = _object(doc, "target")
    theta = math.radians(_number(target, "theta_deg", "target"))
    phi = math.radians(_number(target, "phi_deg", "target"))
    f_star = _number(doc, "f_star", "")

    raw = _list(doc, "pulses")
    if len(raw) != 3:
        raise DocumentError("pulses", f"expected 3 pulses, got {len(raw)}")
    pulses = []
    for i, item in enumerate(raw):
        where = f"pulses[{i}]"
        if not isinstance(item, dict):
            raise DocumentError(where, f"expected an object, got {item!r}")
        pulses.append(Pulse(math.radians(_number(item, "theta_deg", where)),
                            math.radians(_number(item, "phi_deg", where))))
    if not pulses[0].matches(pulses[2]):
        raise DocumentError("pulses[2]", "must repeat pulses[0]")
    return CompositeSequence(pulses=tuple(pulses), f_star=f_star, target=(theta, phi))


def save_sequence(path, seq: CompositeSequence, provenance: Optional[Dict] = None, quiet: bool = False) -> Path:
    return _write_json(path, sequence_to_document(seq, provenance), quiet)


def load_sequence(path) -> CompositeSequence:
    return sequence_from_document(_read_json(path))


def spin_system_to_document(sys: SpinSystem, provenance: Optional[Dict] = None) -> Dict:
    doc: Dict[str, Any] = {}
    if provenance is not None:
        doc["provenance"] = provenance
    doc["lines"] = [{"offset_hz": line.offset_hz, "amplitude": line.amplitude} for line in sys.lines]
    doc["nu1_hz"] = sys.nu1_hz
    doc["t2_s"] = sys.t2_s
    doc["dwell_s"] = sys.dwell_s
    doc["points"] = sys.points
    return doc


def spin_system_from_document(doc: Dict) -> SpinSystem:
    """
    Build a SpinSystem from {"lines": [{"offset_hz", "amplitude"?}, ...], "nu1_hz", "t2_s"?,
    "dwell_s"?, "points"?}. Missing optional fields take the SpinSystem defaults.

    Raises:
        DocumentError: naming the malformed field
    """
    raw = _list(doc, "lines")
    if not raw:
        raise DocumentError("lines", "at least one line is required")
    lines = []
    for i, item in enumerate(raw):
        where = f"lines[{i}]"
        if not isinstance(item, dict):
            raise DocumentError(where, f"expected an object, got {item!r}")
        offset = _number(item, "offset_hz", where)
        amplitude = _number(item, "amplitude", where) if "amplitude" in item else 1.0
        if amplitude <= 0.0:
            raise DocumentError(f"{where}.amplitude", f"must be positive, got {amplitude!r}")
        lines.append(SpectralLine(offset, amplitude))

    nu1 = _number(doc, "nu1_hz", "")
    if nu1 <= 0.0:
        raise DocumentError("nu1_hz", f"must be positive, got {nu1!r}")
    options = {}
    for key in ("t2_s", "dwell_s"):
        if key in doc:
            value = _number(doc, key, "")
            if value <= 0.0:
                raise DocumentError(key, f"must be positive, got {value!r}")
            options[key] = value
    if "points" in doc:
        points = doc["points"]
        if isinstance(points, bool) or not isinstance(points, int) or points < 2:
            raise DocumentError("points", f"expected an integer >= 2, got {points!r}")
        options["points"] = points

    try:
        return SpinSystem(lines=tuple(lines), nu1_hz=nu1, **options)
    except DocumentError:
        raise
    except ValueError as e:
        raise DocumentError("lines", str(e)) from e


def save_spin_system(path, sys: SpinSystem, provenance: Optional[Dict] = None, quiet: bool = False) -> Path:
    return _write_json(path, spin_system_to_document(sys, provenance), quiet)


def load_spin_system(path) -> SpinSystem:
    return spin_system_from_document(_read_json(path))


if __name__ == "__main__":
    import tempfile

    from rotor.synthesis import SynthesisRequest, synthesize

    with tempfile.TemporaryDirectory() as tmp:
        path = save_sequence(Path(tmp) / "rotten.json", synthesize(SynthesisRequest(theta=math.pi / 2)))
        print(load_sequence(path))
