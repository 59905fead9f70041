import logging
import threading
from dataclasses import dataclass, field
from time import sleep

import psutil

from prometheus_processing.verification_metrics import VERIFY_METRICS

LOGGER = logging.getLogger(__name__)


@dataclass
class ThreadableRunner:
    sync_runner_status: threading.Event = field(init=False)

    def __post_init__(self):
        self.sync_runner_status = threading.Event()
        self.start_sync()

    def start_sync(self):
        self.sync_runner_status.set()

    def stop_sync(self):
        self.sync_runner_status.clear()

    def get_new_thread(self, target_func, tick_duration_secs: int):
        return threading.Thread(target=target_func, args=(self, tick_duration_secs), daemon=True)


def current_memory_usage(runner: ThreadableRunner, evaluation_interval: int = 5):
    while runner.sync_runner_status.is_set():
        mem_used = psutil.Process().memory_info().rss
        LOGGER.info(f"Current Memory Utilization: {mem_used / (2**20):.1f} MiB")
        VERIFY_METRICS.memory_bytes.set(mem_used)
        for _ in range(max(1, int(evaluation_interval * 10))):
            if not runner.sync_runner_status.is_set():
                return
            sleep(0.1)


class MemoryTicker:
    """Context manager running current_memory_usage on a side thread."""

    def __init__(self, tick_seconds: int = 5):
        self.tick_seconds = tick_seconds
        self.runner = ThreadableRunner()
        self.thread = None

    def __enter__(self):
        self.runner.start_sync()
        self.thread = self.runner.get_new_thread(target_func=current_memory_usage, tick_duration_secs=self.tick_seconds)
        self.thread.start()
        return self

    def __exit__(self, *exc):
        LOGGER.debug("Stopping memory ticker")
        self.runner.stop_sync()
        self.thread.join()
        return False
