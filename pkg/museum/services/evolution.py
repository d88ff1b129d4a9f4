"""
Segment identity across snapshots and the freshness gate.
"""
import logging

from museum.models.track import EvolutionTrack, PriorMatch

logger = logging.getLogger(__name__)


def ingest_snapshot(track, snapshot):
    """
    Append a snapshot to an in-memory track.

    Persisting goes through SnapshotStore.ingest, which calls this under
    the track's exclusive lock.

    Raises:
        UrlMismatch, NonMonotonicTimestamp
    """
    if track is None:
        track = EvolutionTrack(url=snapshot.url)
    return track.append(snapshot)


def lookup_prior(track, segment):
    """
    Most recent earlier version of segment, with provenance.

    Fingerprint match first (moved but identical blocks), then dom_path
    match (blocks edited in place).

    Returns:
        PriorMatch or None when the segment is new
    """
    match = track.fingerprint_index.get(segment.fingerprint)
    if match is None:
        match = track.dom_path_index.get(segment.dom_path)
    return match


def match_prior(track, segment):
    """The matched prior Segment, or None for a new segment."""
    match = lookup_prior(track, segment)
    return match.segment if match is not None else None


def lookup_history(track, segment):
    """
    Every earlier version of segment, newest first.

    Per snapshot the fingerprint match wins over the dom_path match; a
    snapshot with neither contributes nothing.
    """
    matches = []
    for snapshot in reversed(track.snapshots):
        by_path = None
        found = None
        for candidate in snapshot.segments:
            if candidate.fingerprint == segment.fingerprint:
                found = PriorMatch(candidate, snapshot.captured_at, 'fingerprint')
                break
            if by_path is None and candidate.dom_path == segment.dom_path:
                by_path = PriorMatch(candidate, snapshot.captured_at, 'dom_path')
        found = found or by_path
        if found is not None:
            matches.append(found)
    return matches


def is_fresh(segment, prior, query):
    """
    Freshness gate: true iff prior is absent or its text holds none of
    the query terms or their synonyms.
    """
    if prior is None:
        return True
    queried = query.terms | query.synonym_pool
    return not (prior.text_tokens & queried)


def freshness_gate(track, segment, query, full_history=False):
    """
    Decide the gate for segment against a history track.

    Args:
        track: EvolutionTrack of snapshots strictly before the scored one
        segment: Segment being scored
        query: Query
        full_history: Check every earlier version instead of the most
            recent matched one

    Returns:
        tuple: (fresh: bool, blocking PriorMatch or None)
    """
    if full_history:
        candidates = lookup_history(track, segment)
    else:
        match = lookup_prior(track, segment)
        candidates = [match] if match is not None else []

    for match in candidates:
        if not is_fresh(segment, match.segment, query):
            return False, match
    return True, None
