"""
Advisory file locks and atomic writes for the snapshot store.
"""
import fcntl
import os
import tempfile
from contextlib import contextmanager

TEMP_PREFIX = '.tmp-'


@contextmanager
def advisory_lock(lock_path, exclusive=False):
    """
    Hold an advisory lock on a sidecar lock file.

    Many shared holders or one exclusive holder at a time.

    Args:
        lock_path: Path of the lock file (created if missing)
        exclusive: Take LOCK_EX instead of LOCK_SH

    Yields:
        None (lock is held during context)
    """
    f = None
    if not exclusive:
        # Shared locks open an existing lock file read-only
        try:
            f = open(lock_path, 'r')
        except FileNotFoundError:
            pass
    if f is None:
        os.makedirs(os.path.dirname(str(lock_path)), exist_ok=True)
        f = open(lock_path, 'a+')
    try:
        fcntl.flock(f.fileno(), fcntl.LOCK_EX if exclusive else fcntl.LOCK_SH)
        yield
    finally:
        try:
            fcntl.flock(f.fileno(), fcntl.LOCK_UN)
        finally:
            f.close()


def atomic_write(path, data):
    """
    Write text to path atomically via a temp file in the same directory.

    Readers see either the old file or the complete new one, never a
    partial write.
    """
    directory = os.path.dirname(str(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=TEMP_PREFIX, suffix='.json')
    try:
        with os.fdopen(fd, 'w', encoding='utf-8') as f:
            f.write(data)
            f.flush()
            os.fsync(f.fileno())
        os.replace(tmp, str(path))
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise
