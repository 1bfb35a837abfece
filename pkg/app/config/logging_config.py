# app/config/logging_config.py
"""
Logging configuration for solver runs and experiment sweeps
"""

import sys
from pathlib import Path
from loguru import logger

from .setting import settings


CONSOLE_FORMAT = "<green>{time:HH:mm:ss}</green> | <level>{level: <8}</level> | <cyan>{name}</cyan> - <level>{message}</level>"
FILE_FORMAT = "{time:YYYY-MM-DD HH:mm:ss.SSS} | {level: <8} | {name}:{function}:{line} - {message}"


def get_logger(name: str = None):
    """
    Get a logger instance for a specific component

    Args:
        name: Logger name (usually the class name)

    Returns:
        Logger instance
    """
    if name:
        return logger.bind(name=name)
    return logger


# Configuration for different environments
class LoggingConfig:
    """Environment-specific logging configurations"""

    DEVELOPMENT = {
        "console_level": "DEBUG",
        "file_level": "DEBUG",
        "retention_days": 7,
        "enable_solver_logs": True
    }

    PRODUCTION = {
        "console_level": "WARNING",
        "file_level": "INFO",
        "retention_days": 30,
        "enable_solver_logs": False
    }

    TESTING = {
        "console_level": "WARNING",
        "file_level": "DEBUG",
        "retention_days": 1,
        "enable_solver_logs": False
    }


def setup_environment_logging(env: str = "DEV", log_dir: str | None = None, console_level: str | None = None):
    """
    Setup logging based on environment

    Args:
        env: Environment value (DEV, TEST, PROD)
        log_dir: Directory for rotating log files; console only when None
        console_level: Overrides the environment's console level
    """
    config_map = {
        "DEV": LoggingConfig.DEVELOPMENT,
        "TEST": LoggingConfig.TESTING,
        "PROD": LoggingConfig.PRODUCTION,
    }

    config = config_map.get(env.upper(), LoggingConfig.DEVELOPMENT)

    # Remove default handler
    logger.remove()

    logger.add(
        sys.stderr,
        format=CONSOLE_FORMAT,
        level=console_level or config["console_level"]
    )

    if log_dir:
        Path(log_dir).mkdir(parents=True, exist_ok=True)

        logger.add(
            f"{log_dir}/run_{env.lower()}_{'{time:YYYY-MM-DD}'}.log",
            format=FILE_FORMAT,
            rotation="1 day",
            retention=f"{config['retention_days']} days",
            level=config["file_level"],
        )

        logger.add(
            f"{log_dir}/errors_{'{time:YYYY-MM-DD}'}.log",
            format=FILE_FORMAT,
            level="ERROR",
            rotation="1 day",
            retention="60 days",
        )

        # Solver pivots and phase changes (noisy)
        if config["enable_solver_logs"]:
            logger.add(
                f"{log_dir}/solver_{env.lower()}_{'{time:YYYY-MM-DD}'}.log",
                format="{time:YYYY-MM-DD HH:mm:ss.SSS} | {message}",
                filter=lambda record: record["message"].startswith(("SOLVER", "AGREEMENT")),
                rotation="1 day",
                retention="7 days"
            )

    logger.debug(f"Logging configured for {env} environment")


def setup_logging():
    """
    Configure loguru from the active settings
    """
    env = getattr(settings, "ENVIRONMENT", None)
    setup_environment_logging(
        env.value if env is not None else "DEV",
        log_dir=settings.LOG_DIR,
        console_level=settings.LOG_LEVEL,
    )
    return logger


# Utility functions for specific logging needs
def log_solver_stats(kind: str, rows: int, cols: int, iterations: int, status: str, duration: float):
    """Log simplex run statistics"""
    logger.debug(f"SOLVER | Kind: {kind} | Size: {rows}x{cols} | Iterations: {iterations} | Status: {status} | Duration: {duration:.3f}s")


def log_sweep_progress(name: str, done: int, total: int):
    """Log experiment sweep progress"""
    logger.info(f"SWEEP | {name} | {done}/{total}")


def log_agreement(label: str, phi_lp: float, phi_exact: float, rel_error: float):
    """Log LP vs closed-form agreement"""
    logger.debug(f"AGREEMENT | {label} | phi_lp={phi_lp:.12g} | phi_exact={phi_exact:.12g} | rel={rel_error:.3e}")


class LoggerMixin:
    """Mixin to add consistent logging to service classes"""

    def __init__(self):
        self.logger = get_logger(self.__class__.__name__)

    def log_service_start(self, method_name: str, **kwargs):
        """Log service method start"""
        self.logger.debug(f"Starting {method_name} with args: {kwargs}")

    def log_service_success(self, method_name: str, result_preview: str = None):
        """Log service method success"""
        if result_preview:
            self.logger.info(f"{method_name} completed successfully. Preview: {result_preview}")
        else:
            self.logger.info(f"{method_name} completed successfully")

    def log_service_error(self, method_name: str, error: Exception):
        """Log service method error"""
        self.logger.error(f"{method_name} failed: {error}")
