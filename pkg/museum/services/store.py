"""
File-backed snapshot store: one directory per URL, one JSON file per snapshot.

Layout:
    <root>/<urlhash>/<captured_at>.json   snapshot documents
    <root>/<urlhash>/index.json           advisory index, rebuilt when stale
    <root>/<urlhash>/.lock                advisory lock (shared read, exclusive write)
"""
import hashlib
import json
import logging
import re
from pathlib import Path

from museum.models.page import PageSnapshot
from museum.models.track import EvolutionTrack
from museum.services.evolution import ingest_snapshot
from museum.utils.errors import ParseError, StoreIoError, UnknownUrl
from museum.utils.locks import TEMP_PREFIX, advisory_lock, atomic_write

logger = logging.getLogger(__name__)

SNAPSHOT_FILE = re.compile(r'^(\d+)\.json$')
INDEX_FILE = 'index.json'
LOCK_FILE = '.lock'


def url_hash(url):
    """Directory name for a URL's track."""
    return hashlib.sha256(url.encode('utf-8')).hexdigest()[:32]


def dump_json(data):
    """Deterministic JSON text used for every file the store writes."""
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + '\n'


class SnapshotStore:
    """Persistent Page Evolution Tracks keyed by URL."""

    def __init__(self, root):
        self.root = Path(root)

    def __repr__(self):
        return f'<SnapshotStore {self.root}>'

    def track_dir(self, url):
        return self.root / url_hash(url)

    def has_track(self, url):
        directory = self.track_dir(url)
        return directory.is_dir() and any(self._snapshot_files(directory))

    @staticmethod
    def _snapshot_files(directory):
        """(captured_at, path) for every complete snapshot file, oldest first."""
        found = []
        for entry in directory.iterdir():
            if entry.name.startswith(TEMP_PREFIX):
                logger.warning(f'Ignoring leftover temporary file {entry}')
                continue
            match = SNAPSHOT_FILE.match(entry.name)
            if match:
                found.append((int(match.group(1)), entry))
        return sorted(found)

    def _read_snapshots(self, url, directory):
        snapshots = []
        for captured_at, path in self._snapshot_files(directory):
            try:
                with open(path, encoding='utf-8') as f:
                    data = json.load(f)
            except json.JSONDecodeError as e:
                raise ParseError(f'Corrupt snapshot file: {e}', path=path)
            snapshot = PageSnapshot.from_dict(data)
            if snapshot.captured_at != captured_at or snapshot.url != url:
                raise ParseError('Snapshot file does not match its name or track', path=path)
            snapshots.append(snapshot)
        return EvolutionTrack(url=url, snapshots=snapshots)

    def _read_index(self, directory):
        path = directory / INDEX_FILE
        try:
            with open(path, encoding='utf-8') as f:
                return json.load(f)
        except FileNotFoundError:
            return None
        except (json.JSONDecodeError, UnicodeDecodeError):
            logger.warning(f'Unreadable index {path}; rebuilding')
            return None

    def _write_index(self, directory, track):
        atomic_write(directory / INDEX_FILE, dump_json(track.index_document()))

    def load_track(self, url):
        """
        Read a URL's track under a shared lock.

        A missing or stale index.json is rebuilt from the snapshot files
        when the store is writable; a failed rebuild is logged and the
        track is still returned.

        Raises:
            UnknownUrl: no snapshot stored for url
            StoreIoError: filesystem failure
        """
        directory = self.track_dir(url)
        if not self.has_track(url):
            raise UnknownUrl(url)

        try:
            with advisory_lock(directory / LOCK_FILE):
                track = self._read_snapshots(url, directory)
                index = self._read_index(directory)
        except OSError as e:
            raise StoreIoError(f'Cannot read track for {url}: {e}')

        if index != track.index_document():
            try:
                with advisory_lock(directory / LOCK_FILE, exclusive=True):
                    # Re-read: a writer may have landed between the two locks
                    track = self._read_snapshots(url, directory)
                    if self._read_index(directory) != track.index_document():
                        logger.warning(f'Rebuilding index for {url}')
                        self._write_index(directory, track)
            except OSError as e:
                logger.warning(f'Cannot rebuild index for {url}: {e}')

        return track

    def ingest(self, snapshot):
        """
        Append a snapshot to its URL's track atomically.

        The snapshot file is written to a temp file and renamed into place,
        then the index is rewritten; a crash in between leaves a stale index
        that the next read rebuilds.

        Returns:
            EvolutionTrack including the new snapshot

        Raises:
            UrlMismatch, NonMonotonicTimestamp, StoreIoError
        """
        directory = self.track_dir(snapshot.url)
        try:
            directory.mkdir(parents=True, exist_ok=True)
            with advisory_lock(directory / LOCK_FILE, exclusive=True):
                current = self._read_snapshots(snapshot.url, directory)
                track = ingest_snapshot(current, snapshot)
                atomic_write(directory / f'{snapshot.captured_at}.json', dump_json(snapshot.to_dict()))
                self._write_index(directory, track)
        except OSError as e:
            raise StoreIoError(f'Cannot write snapshot for {snapshot.url}: {e}')

        logger.info(f'Ingested {snapshot.url} @ {snapshot.captured_at} ({len(track)} snapshots)')
        return track

