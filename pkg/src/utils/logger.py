"""
Logging utility for the HN engine
Console output goes to stderr; stdout carries command results only.
"""

import logging
import sys
from datetime import datetime
from pathlib import Path
from typing import Optional


class Logger:
    """Centralized logging configuration"""

    _loggers = {}
    _level = logging.WARNING
    _log_dir: Optional[Path] = None

    @classmethod
    def configure(cls, level: str = "WARNING", log_dir: Optional[Path] = None) -> None:
        """Set the console level and optional log directory for every logger"""
        cls._level = getattr(logging, str(level).upper(), logging.WARNING)
        cls._log_dir = Path(log_dir) if log_dir else None
        for name, logger in cls._loggers.items():
            for handler in list(logger.handlers):
                logger.removeHandler(handler)
                handler.close()
            cls._attach_handlers(logger, name)

    @classmethod
    def get_logger(cls, name: str) -> logging.Logger:
        """Get or create a logger by name"""

        if name not in cls._loggers:
            logger = logging.getLogger(name)
            logger.setLevel(logging.DEBUG)
            logger.propagate = False
            cls._attach_handlers(logger, name)
            cls._loggers[name] = logger

        return cls._loggers[name]

    @classmethod
    def _attach_handlers(cls, logger: logging.Logger, name: str) -> None:
        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setLevel(cls._level)
        console_handler.setFormatter(logging.Formatter(
            '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
        ))
        logger.addHandler(console_handler)

        if cls._log_dir is not None:
            cls._log_dir.mkdir(parents=True, exist_ok=True)
            timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
            file_handler = logging.FileHandler(cls._log_dir / f"hn_{timestamp}.log")
            file_handler.setLevel(logging.DEBUG)
            file_handler.setFormatter(logging.Formatter(
                '%(asctime)s - %(name)s - %(levelname)s - %(funcName)s:%(lineno)d - %(message)s'
            ))
            logger.addHandler(file_handler)
