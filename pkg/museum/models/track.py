"""
EvolutionTrack model: the time-ordered snapshot history of one URL.
"""
from dataclasses import dataclass
from functools import cached_property

from museum.models.page import SCHEMA_VERSION
from museum.utils.errors import NonMonotonicTimestamp, UrlMismatch


@dataclass(frozen=True)
class PriorMatch:
    """An earlier version of a segment and how it was found."""

    segment: object
    captured_at: int
    matched_by: str  # 'fingerprint' or 'dom_path'


@dataclass(frozen=True)
class EvolutionTrack:
    """
    Snapshot history for one URL, strictly increasing by captured_at.

    The lookup index is derived from the snapshot list on first use and
    is never stored as a source of truth.
    """

    url: str
    snapshots: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, 'snapshots', tuple(self.snapshots))
        for snapshot in self.snapshots:
            if snapshot.url != self.url:
                raise UrlMismatch(f'Snapshot for {snapshot.url} cannot join track of {self.url}')
        for earlier, later in zip(self.snapshots, self.snapshots[1:]):
            if later.captured_at <= earlier.captured_at:
                raise NonMonotonicTimestamp(
                    f'Snapshot at {later.captured_at} is not newer than {earlier.captured_at}'
                )

    def __repr__(self):
        return f'<EvolutionTrack {self.url} ({len(self.snapshots)} snapshots)>'

    def __len__(self):
        return len(self.snapshots)

    @property
    def latest(self):
        return self.snapshots[-1] if self.snapshots else None

    def append(self, snapshot):
        """
        Return a new track with snapshot added at the end.

        Raises:
            UrlMismatch: snapshot belongs to another URL
            NonMonotonicTimestamp: snapshot is not newer than the latest one
        """
        if snapshot.url != self.url:
            raise UrlMismatch(f'Snapshot for {snapshot.url} cannot join track of {self.url}')
        if self.latest is not None and snapshot.captured_at <= self.latest.captured_at:
            raise NonMonotonicTimestamp(
                f'captured_at {snapshot.captured_at} must be greater than '
                f'{self.latest.captured_at} for {self.url}'
            )
        return EvolutionTrack(url=self.url, snapshots=self.snapshots + (snapshot,))

    def before(self, captured_at):
        """Track restricted to snapshots strictly earlier than captured_at."""
        return EvolutionTrack(
            url=self.url,
            snapshots=tuple(s for s in self.snapshots if s.captured_at < captured_at),
        )

    def snapshot_at(self, captured_at=None):
        """Latest snapshot at or before captured_at (the newest when None)."""
        if captured_at is None:
            return self.latest
        eligible = [s for s in self.snapshots if s.captured_at <= captured_at]
        return eligible[-1] if eligible else None

    @cached_property
    def fingerprint_index(self):
        index = {}
        for snapshot in self.snapshots:
            for segment in snapshot.segments:
                index[segment.fingerprint] = PriorMatch(segment, snapshot.captured_at, 'fingerprint')
        return index

    @cached_property
    def dom_path_index(self):
        index = {}
        for snapshot in self.snapshots:
            for segment in snapshot.segments:
                index[segment.dom_path] = PriorMatch(segment, snapshot.captured_at, 'dom_path')
        return index

    def index_document(self):
        """The advisory index.json content; derivable from snapshots alone."""
        return {
            'schema_version': SCHEMA_VERSION,
            'url': self.url,
            'snapshots': [s.captured_at for s in self.snapshots],
            'fingerprints': {
                fp: match.captured_at for fp, match in sorted(self.fingerprint_index.items())
            },
            'dom_paths': {
                path: match.captured_at for path, match in sorted(self.dom_path_index.items())
            },
        }
