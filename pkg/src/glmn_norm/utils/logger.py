import os
from logging import DEBUG, INFO, FileHandler, Formatter, Logger, getLogger
from pathlib import Path


def get_log_dir() -> Path:
    """Log directory, overridable through GLMN_NORM_LOG_DIR."""
    override = os.getenv("GLMN_NORM_LOG_DIR")
    if override:
        return Path(override)
    return Path.home() / ".config" / "glmn-norm" / "logs"


def get_logger() -> Logger:
    """Setup file logging, DEBUG level when the DEBUG env var is set."""
    log_dir = get_log_dir()
    log_dir.mkdir(parents=True, exist_ok=True)

    log_file = log_dir / "glmn-norm.log"

    logger = getLogger("glmn_norm")
    debug_mode_enabled = os.getenv("DEBUG", "").lower() in ["true", "yes", "1"]
    logger.setLevel(DEBUG if debug_mode_enabled else INFO)
    logger.handlers.clear()

    file_handler = FileHandler(log_file)
    file_formatter = Formatter("%(asctime)s - %(name)s - %(levelname)s - %(message)s")
    file_handler.setFormatter(file_formatter)
    logger.addHandler(file_handler)

    return logger
