import logging
import os
from dataclasses import dataclass, field

from prometheus_client import CollectorRegistry, Counter, Gauge, write_to_textfile

from helpers import ensure_path, logged_method

LOGGER = logging.getLogger(__name__)


@dataclass
class VerificationMetrics:
    """Counters for the verify command, kept in a private registry and written as a textfile."""

    registry: CollectorRegistry = field(default_factory=CollectorRegistry)

    def __post_init__(self):
        self.words_checked = Counter(
            "braid_verify_words_checked", "Random words run through the invariant checks.", registry=self.registry
        )
        self.check_failures = Counter(
            "braid_verify_check_failures", "Failed invariant checks by check name.", ["check"], registry=self.registry
        )
        self.battery_runs = Counter(
            "braid_verify_battery_runs", "Closure invariance battery words.", registry=self.registry
        )
        self.memory_bytes = Gauge(
            "braid_verify_memory_used_bytes", "Resident memory of the verify run.", registry=self.registry
        )
        self.run_seconds = Gauge(
            "braid_verify_run_seconds", "Wall time of the last verify run.", registry=self.registry
        )

    def record_failures(self, check: str, count: int) -> None:
        if count:
            self.check_failures.labels(check=check).inc(count)

    @logged_method
    def export(self, path: str) -> None:
        ensure_path(os.path.dirname(path))
        write_to_textfile(path, self.registry)
        LOGGER.info(f"Verification metrics written to {path}")


VERIFY_METRICS = VerificationMetrics()
