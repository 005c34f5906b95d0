# Authors: Federico Raimondo <f.raimondo@fz-juelich.de>
#          Sami Hamdan <s.hamdan@fz-juelich.de>
# License: AGPL
import io
import os
import tarfile
import urllib.error
import urllib.request
from pathlib import Path

from . presets import list_reference_matrices, get_reference_info
from .. sparse import parse_matrix_market, read_matrix_market
from .. utils import raise_error, logger, warn
from .. utils.errors import AdaCGError, CorruptDownload, FetchError

DEFAULT_COLLECTION_URL = 'https://sparse.tamu.edu'

# Environment variables
COLLECTION_URL_ENV = 'ADACG_COLLECTION_URL'
DATA_DIR_ENV = 'ADACG_DATA_DIR'


def collection_url():
    """Base URL of the matrix collection (``ADACG_COLLECTION_URL`` or the
    public SuiteSparse server)"""
    return os.environ.get(COLLECTION_URL_ENV, DEFAULT_COLLECTION_URL).rstrip(
        '/')


def data_dir(default='.'):
    """Directory holding the matrix files (``ADACG_DATA_DIR`` or default)"""
    return Path(os.environ.get(DATA_DIR_ENV, default))


def _split_name(name):
    """(group, matrix name) of a collection identifier"""
    if '/' in name:
        group, _, short = name.partition('/')
        if group == '' or short == '' or '/' in short:
            raise_error(f'Invalid collection identifier {name}. Use '
                        '"Group/name"', klass=FetchError)
        return group, short
    if name not in list_reference_matrices():
        raise_error(f'Unknown matrix {name}. Use "Group/name" for matrices '
                    f'other than {list_reference_matrices()}',
                    klass=FetchError)
    return get_reference_info(name)['group'], name


def _download(url, timeout, hint):
    logger.info(f'Downloading {url}')
    try:
        with urllib.request.urlopen(url, timeout=timeout) as response:
            return response.read()
    except (urllib.error.URLError, OSError, ValueError) as e:
        raise_error(f'Could not download {url}: {e}. {hint}',
                    klass=FetchError)


def _extract(payload, short, url):
    """Content of ``<short>.mtx`` inside a gzipped tar archive"""
    try:
        with tarfile.open(fileobj=io.BytesIO(payload), mode='r:gz') as tar:
            member = next((m for m in tar.getmembers()
                           if m.isfile() and
                           Path(m.name).name == f'{short}.mtx'), None)
            if member is None:
                raise_error(f'Archive {url} does not contain {short}.mtx',
                            klass=CorruptDownload)
            return tar.extractfile(member).read().decode('ascii')
    except (tarfile.TarError, OSError, EOFError, UnicodeDecodeError) as e:
        raise_error(f'Could not extract archive {url}: {e}',
                    klass=CorruptDownload)


def fetch_matrix(name, dest='.', timeout=60):
    """Download a matrix of the collection in Matrix Market format.

    Parameters
    ----------
    name : str
        A reference matrix name (see :func:`.list_reference_matrices`) or a
        collection identifier "Group/name".
    dest : str or Path
        Directory where ``<name>.mtx`` is written. Defaults to the current
        directory.
    timeout : float
        Network timeout in seconds. Defaults to 60.

    Returns
    -------
    path : Path
        The path of the Matrix Market file. If a parseable file is already
        present, it is returned without network access.
    """
    group, short = _split_name(name)
    dest = Path(dest)
    target = dest / f'{short}.mtx'
    if target.exists():
        try:
            read_matrix_market(target)
            logger.info(f'{target.as_posix()} already present')
            return target
        except AdaCGError:
            warn(f'{target.as_posix()} exists but does not parse. '
                 'Downloading again')

    url = f'{collection_url()}/MM/{group}/{short}.tar.gz'
    payload = _download(
        url, timeout, f'Download it manually and place {short}.mtx in '
        f'{dest.as_posix()}')
    content = _extract(payload, short, url)
    try:
        parse_matrix_market(content)
    except AdaCGError as e:
        raise_error(f'Downloaded matrix {short} does not parse: {e}',
                    klass=CorruptDownload)
    try:
        dest.mkdir(parents=True, exist_ok=True)
        target.write_text(content)
    except OSError as e:
        raise_error(f'Could not write {target.as_posix()}: {e}',
                    klass=FetchError)
    logger.info(f'Matrix {group}/{short} written to {target.as_posix()}')
    return target
