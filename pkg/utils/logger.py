"""
weyl-toric - Debug Logger
Colored console logging on stderr, optional log files under logs/
"""

import logging
import sys
import time
from contextlib import contextmanager
from datetime import datetime
from pathlib import Path
from typing import Iterator, Optional
from colorama import Fore, Back, Style, init

init(autoreset=True)

LOG_FORMAT = '%(asctime)s %(levelname)-7s %(module)s.%(funcName)s: %(message)s'


class ColoredFormatter(logging.Formatter):
    """Level name in color, prefixed with an icon"""

    LEVELS = {
        'DEBUG': (Fore.CYAN, '🔍'),
        'INFO': (Fore.BLUE, 'ℹ️'),
        'WARNING': (Fore.YELLOW, '⚠️'),
        'ERROR': (Fore.RED, '❌'),
        'CRITICAL': (Fore.RED + Back.WHITE + Style.BRIGHT, '🔥'),
    }

    def format(self, record):
        style = self.LEVELS.get(record.levelname)
        if style:
            color, icon = style
            record = logging.makeLogRecord(record.__dict__)
            record.levelname = f"{color}{icon} {record.levelname}{Style.RESET_ALL}"
        return super().format(record)


class DebugLogger:
    """
    Console logger on stderr with an optional log file

    stdout carries command results only (JSON or text).
    """

    def __init__(
        self,
        name: str = "WeylToric",
        log_dir: str = "logs",
        console_level: int = logging.INFO,
        debug_mode: bool = False,
        log_to_file: bool = False
    ):
        self.name = name
        self.log_dir = Path(log_dir)
        self.debug_mode = debug_mode
        self.console_level = console_level
        self.log_file: Optional[Path] = None
        self.started = datetime.now()

        self.logger = logging.getLogger(name)
        self.logger.setLevel(logging.DEBUG)
        self.logger.handlers = []
        self.logger.propagate = False

        self.console = logging.StreamHandler(sys.stderr)
        self.console.setLevel(logging.DEBUG if debug_mode else console_level)
        self.console.setFormatter(ColoredFormatter('%(levelname)s %(message)s'))
        self.logger.addHandler(self.console)

        if log_to_file or debug_mode:
            self.enable_file_logging()

    def enable_file_logging(self):
        """Attach logs/weyl_toric_<stamp>.log; a second call is a no-op"""
        if self.log_file is not None:
            return
        self.log_dir.mkdir(parents=True, exist_ok=True)
        self.log_file = self.log_dir / f"weyl_toric_{self.started:%Y%m%d_%H%M%S}.log"
        handler = logging.FileHandler(self.log_file, encoding='utf-8')
        handler.setLevel(logging.DEBUG)
        handler.setFormatter(logging.Formatter(LOG_FORMAT, datefmt='%H:%M:%S'))
        self.logger.addHandler(handler)
        self.logger.debug(f"logging to {self.log_file}")

    def set_debug(self, enabled: bool):
        self.debug_mode = enabled
        self.console.setLevel(logging.DEBUG if enabled else self.console_level)

    def debug(self, message: str, **kwargs):
        self.logger.debug(message, **kwargs)

    def info(self, message: str, **kwargs):
        self.logger.info(message, **kwargs)

    def warning(self, message: str, **kwargs):
        self.logger.warning(message, **kwargs)

    def error(self, message: str, **kwargs):
        self.logger.error(message, **kwargs)

    def success(self, message: str):
        self.logger.info(f"{Fore.GREEN}✓ {message}{Style.RESET_ALL}")

    def section(self, title: str):
        rule = "━" * 60
        self.logger.info(f"{Fore.CYAN}{rule}{Style.RESET_ALL}")
        self.logger.info(f"{Fore.CYAN}{Style.BRIGHT}{title}{Style.RESET_ALL}")
        self.logger.info(f"{Fore.CYAN}{rule}{Style.RESET_ALL}")

    def step(self, index: int, total: int, message: str):
        self.logger.info(f"{Fore.YELLOW}[{index}/{total}]{Style.RESET_ALL} {message}")

    @contextmanager
    def timed(self, label: str) -> Iterator[dict]:
        """
        Time a block; the yielded dict receives 'seconds' on exit

        Example:
            with log.timed("hilbert basis") as t:
                ...
            t['seconds']
        """
        record = {'seconds': 0.0}
        start = time.perf_counter()
        try:
            yield record
        finally:
            record['seconds'] = time.perf_counter() - start
            self.logger.debug(f"{label}: {record['seconds']:.3f}s")

    def separator(self):
        self.logger.info("-" * 60)

    def banner(self, text: str):
        border = "═" * (len(text) + 4)
        self.logger.info(f"{Fore.YELLOW}{border}{Style.RESET_ALL}")
        self.logger.info(f"{Fore.YELLOW}║ {Style.BRIGHT}{text}{Style.RESET_ALL}{Fore.YELLOW} ║{Style.RESET_ALL}")
        self.logger.info(f"{Fore.YELLOW}{border}{Style.RESET_ALL}")

    def close(self):
        elapsed = (datetime.now() - self.started).total_seconds()
        self.logger.debug(f"finished after {elapsed:.2f}s")
        for handler in list(self.logger.handlers):
            handler.close()
            self.logger.removeHandler(handler)


_global_logger: Optional[DebugLogger] = None


def get_logger(name: str = "WeylToric", debug_mode: bool = False, **kwargs) -> DebugLogger:
    """Return the process-wide logger, creating it on first use"""
    global _global_logger
    if _global_logger is None:
        _global_logger = DebugLogger(name=name, debug_mode=debug_mode, **kwargs)
    return _global_logger


def set_debug_mode(enabled: bool):
    get_logger().set_debug(enabled)


def reset_logger():
    """Close and drop the process-wide logger"""
    global _global_logger
    if _global_logger is not None:
        _global_logger.close()
    _global_logger = None
