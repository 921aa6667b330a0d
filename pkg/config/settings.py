"""
Runtime settings - defaults overridable from the environment or a .env file
"""
import os
from dataclasses import dataclass

from dotenv import load_dotenv

from rotor.oracle import OracleSettings

load_dotenv()


def _env_int(name: str, default: int, minimum: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {raw!r}")
    if value < minimum:
        raise ValueError(f"{name} must be at least {minimum}, got {value}")
    return value


def _env_float(name: str, default: float) -> float:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return float(raw)
    except ValueError:
        raise ValueError(f"{name} must be a number, got {raw!r}")


@dataclass(frozen=True)
class Settings:
    output_dir: str = "outputs"
    threads: int = 1
    samples_per_pulse: int = 256
    scan_points: int = 601
    scan_f_min: float = -3.0
    scan_f_max: float = 3.0
    oracle_restarts: int = 32
    oracle_budget: int = 40000
    oracle_seed: int = 0
    oracle_batch: int = 4

    @classmethod
    def from_env(cls) -> "Settings":
        """
        Read ROTTEN_* variables. Unset or empty variables keep their defaults.

        Raises:
            ValueError: a variable is set to something unusable; the message names it
        """
        d = cls()
        return cls(
            output_dir=os.getenv("ROTTEN_OUTPUT_DIR") or d.output_dir,
            threads=_env_int("ROTTEN_THREADS", d.threads, 1),
            samples_per_pulse=_env_int("ROTTEN_SAMPLES_PER_PULSE", d.samples_per_pulse, 2),
            scan_points=_env_int("ROTTEN_SCAN_POINTS", d.scan_points, 2),
            scan_f_min=_env_float("ROTTEN_SCAN_F_MIN", d.scan_f_min),
            scan_f_max=_env_float("ROTTEN_SCAN_F_MAX", d.scan_f_max),
            oracle_restarts=_env_int("ROTTEN_ORACLE_RESTARTS", d.oracle_restarts, 1),
            oracle_budget=_env_int("ROTTEN_ORACLE_BUDGET", d.oracle_budget, 1000),
            oracle_seed=_env_int("ROTTEN_ORACLE_SEED", d.oracle_seed, 0),
            oracle_batch=_env_int("ROTTEN_ORACLE_BATCH", d.oracle_batch, 1),
        )

    def oracle_settings(self) -> OracleSettings:
        return OracleSettings(restarts=self.oracle_restarts, restart_batch=self.oracle_batch)
