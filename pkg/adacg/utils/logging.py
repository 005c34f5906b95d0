# Authors: Federico Raimondo <f.raimondo@fz-juelich.de>
#          Sami Hamdan <s.hamdan@fz-juelich.de>
# License: AGPL
import logging
import sys
from pathlib import Path
import warnings

from . errors import ConfigError

logger = logging.getLogger('adacg')

# Libraries whose versions decide the floating point results of a run
_lib_names = ['numpy', 'scipy', 'sklearn', 'pandas', 'joblib', 'adacg']

_logging_types = dict(DEBUG=logging.DEBUG, INFO=logging.INFO,
                      WARNING=logging.WARNING, ERROR=logging.ERROR)

_default_format = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def get_versions(names=None):
    """Get the versions of the imported libraries.

    Parameters
    ----------
    names : list(str) | None
        The top-level module names. Defaults to the numerical stack used by
        adacg (numpy, scipy, sklearn, pandas, joblib and adacg itself).

    Returns
    -------
    versions : dict
        Module name to version string. Modules that are not imported are
        left out and modules without a version string map to None.
    """
    if names is None:
        names = _lib_names
    versions = {}
    for name in names:
        module = sys.modules.get(name)
        if module is None:
            continue
        version = getattr(module, '__version__', None)
        versions[name] = version if isinstance(version, str) else None
    return versions


def log_versions():
    """Log the library versions, so runs can be reproduced"""
    logger.info('===== Lib Versions =====')
    for name, version in get_versions().items():
        logger.info(f'{name}: {version}')
    logger.info('========================')


def _get_level(level):
    if isinstance(level, str):
        if level.upper() not in _logging_types:
            raise_error(f'Unknown logging level {level}. Valid options are '
                        f'{list(_logging_types.keys())}', klass=ConfigError)
        level = _logging_types[level.upper()]
    return level


def configure_logging(level='WARNING', fname=None, overwrite=None,
                      output_format=None):
    """Configure the adacg logger.

    Solvers log one line per outer loop at INFO and the harness logs every
    run and written file at INFO. The default level only shows warnings
    (e.g. breakdowns handled by the adaptive solver) and errors.

    Parameters
    ----------
    level : int or str
        The level of the messages to print. Strings are case insensitive.
        Options are: ['DEBUG', 'INFO', 'WARNING', 'ERROR']. Defaults to
        'WARNING'.
    fname : str, Path or None
        File to write the log to. If None, stdout is used.
    overwrite : bool | None
        Overwrite the log file if it exists. Otherwise, messages are
        appended. None is the same as False, but also warns that the
        messages will be appended.
    output_format : str | None
        Format of the messages (see the :mod:`logging` documentation).
        Defaults to "%(asctime)s - %(name)s - %(levelname)s - %(message)s".
    """
    level = _get_level(level)
    _close_handlers(logger)
    if output_format is None:
        output_format = _default_format

    if fname is not None:
        fname = Path(fname)
        if fname.exists() and overwrite is None:
            warnings.warn(
                f'File ({fname.as_posix()}) exists. '
                'Messages will be appended. Use overwrite=True to '
                'overwrite or overwrite=False to avoid this message')
            overwrite = False
        handler = logging.FileHandler(fname, mode='w' if overwrite else 'a')
    else:
        handler = logging.StreamHandler(WrapStdOut())

    handler.setFormatter(logging.Formatter(output_format))
    logger.setLevel(level)
    logger.addHandler(handler)
    log_versions()


def _close_handlers(logger):
    for handler in list(logger.handlers):
        if isinstance(handler, logging.FileHandler):
            handler.close()
        if isinstance(handler, logging.StreamHandler):
            logger.removeHandler(handler)


def raise_error(msg, klass=ValueError, **kwargs):
    """Log an error and raise it.

    Parameters
    ----------
    msg : str
        Error message
    klass : type
        The error class. Defaults to ValueError.
    **kwargs
        Extra keyword arguments for the error class (e.g. the partial
        ``trace`` of a solver run, or the offending ``path``).
    """
    logger.error(msg)
    raise klass(msg, **kwargs)


def warn(msg, category=RuntimeWarning):
    """Log a warning and issue it.

    Parameters
    ----------
    msg : str
        Warning message
    category : type
        The warning class. Defaults to ``RuntimeWarning``.
    """
    logger.warning(msg)
    warnings.warn(msg, category=category, stacklevel=2)


class WrapStdOut(object):
    """Forward to whatever ``sys.stdout`` is at write time.

    pytest's capsys and doctest replace ``sys.stdout`` after the handler is
    created.
    """

    def __getattr__(self, name):  # noqa: D105
        stdout = sys.stdout
        if hasattr(stdout, name):
            return getattr(stdout, name)
        raise AttributeError(f"'file' object has no attribute '{name}'")
