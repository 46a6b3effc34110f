import logging
import sys
from collections.abc import Collection, Iterable
from logging import FileHandler, Formatter, Handler, Logger, StreamHandler
from pathlib import Path

_Level = int | str

PACKAGE = __name__.split('.')[0]
LOG_FORMAT = '[%(asctime)s %(levelname)s]: %(message)s'
DATE_FORMAT = '%H:%M:%S'
LEVEL_NAMES = {
    logging.DEBUG: 'DBUG',
    logging.INFO: 'INFO',
    logging.WARNING: 'WARN',
    logging.ERROR: ' ERR',
    logging.CRITICAL: 'CRIT',
}

_installed_handlers: list[Handler] = []


class ProtectedLogger(Logger):
    """Logger that ignores level changes unless made through `setLevel(level, force=True)`.

    Libraries that call `logging.getLogger(name).setLevel(...)` on import can then
    not override the levels chosen on the command line."""

    _level: int = logging.NOTSET
    _unlocked: bool = False

    def __init__(self, name: str, level: _Level = logging.NOTSET) -> None:
        self._unlocked = True
        try:
            super().__init__(name, logging.NOTSET)
        finally:
            self._unlocked = False

    @property
    def level(self) -> int:
        return self._level

    @level.setter
    def level(self, value: int) -> None:
        if self._unlocked:
            self._level = value

    def setLevel(self, level: _Level, force: bool = False) -> None:
        if not force:
            return
        self._unlocked = True
        try:
            super().setLevel(level)
        finally:
            self._unlocked = False


def set_level(loggers: Logger | Iterable[Logger], level: _Level) -> None:
    """Sets `level` on one or more loggers, forcing it through on `ProtectedLogger`s."""
    for logger in [loggers] if isinstance(loggers, Logger) else loggers:
        if isinstance(logger, ProtectedLogger):
            logger.setLevel(level, force=True)
        else:
            logger.setLevel(level)


def setup_logging(
    level: int = logging.INFO,
    level_others: int = logging.WARNING,
    loggers: Collection[str | tuple[str, _Level]] | None = None,
    log_file: Path | str | None = None,
) -> None:
    """
    Parameters
    ----------
    level
        Level of the `bgsa` loggers, of `__main__` and of every name-only entry in `loggers`.

    level_others
        Level of the root logger, and so of every logger left at `NOTSET` (numpy, dask, ...).

    loggers
        Logger names, or `(name, level)` pairs for loggers that need their own level.

    log_file
        Records are also appended to this file when given.

    May be called again; the handlers of the previous call are replaced.
    """
    created_before = [
        name for name, obj in logging.root.manager.loggerDict.items()
        if isinstance(obj, Logger) and name.split('.')[0] == PACKAGE and not isinstance(obj, ProtectedLogger)
    ]
    logging.setLoggerClass(ProtectedLogger)

    levels: dict[str, _Level] = {'__main__': level, PACKAGE: level}
    for item in loggers or ():
        name, item_level = (item, level) if isinstance(item, str) else item
        levels[name] = item_level
    for name, item_level in levels.items():
        set_level(logging.getLogger(name), item_level)

    _install_root_handlers(level_others, log_file)

    if created_before:
        logging.getLogger(__name__).debug(
            f"{len(created_before)} package logger(s) were created before setup and are not protected"
        )


def _install_root_handlers(level: int, log_file: Path | str | None) -> None:
    root = logging.getLogger()
    root.setLevel(level)

    while _installed_handlers:
        handler = _installed_handlers.pop()
        root.removeHandler(handler)
        handler.close()

    formatter = Formatter(LOG_FORMAT, DATE_FORMAT)
    handlers: list[Handler] = [StreamHandler()]
    if log_file is not None:
        handlers.append(FileHandler(log_file, encoding='utf-8'))
    for handler in handlers:
        handler.setFormatter(formatter)
        root.addHandler(handler)
    _installed_handlers.extend(handlers)

    for number, name in LEVEL_NAMES.items():
        logging.addLevelName(number, name)

    sys.excepthook = _log_uncaught


def _log_uncaught(exc_type, exc_value, exc_traceback) -> None:
    root = logging.getLogger()
    if issubclass(exc_type, KeyboardInterrupt):
        root.info('Keyboard interrupt')
        sys.__excepthook__(exc_type, exc_value, exc_traceback)
        return
    root.critical('Uncaught exception', exc_info=(exc_type, exc_value, exc_traceback))
