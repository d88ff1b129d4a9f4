"""
Engine facade wiring segmentation, the snapshot store, profiles and scoring.
"""
import logging
from dataclasses import dataclass

from museum.models.page import RawPage
from museum.models.query import Query
from museum.services.profile_store import load_profile
from museum.services.ranking import rank_pages
from museum.services.scorer import evaluate_page, score_page
from museum.services.segmenter import segment_page
from museum.services.lexicon import tokenize
from museum.utils.errors import (
    EmptyQuery,
    NotFoundError,
    UnknownFingerprint,
    UnknownUrl,
    ValidationError,
)
from museum.utils.validators import parse_timestamp, validate_url

logger = logging.getLogger(__name__)


@dataclass
class Engine:
    """One configured engine instance; commands hold exactly one."""

    config: object
    lexicon: object
    stopwords: frozenset
    store: object

    def __repr__(self):
        return f'<Engine store={self.store.root}>'

    @property
    def segmenter_config(self):
        return self.config.segmenter

    def build_query(self, query_text):
        """
        Normalize query text the same way page text is normalized.

        Raises:
            EmptyQuery: nothing is left after normalization
        """
        if not isinstance(query_text, str):
            query_text = ' '.join(query_text)
        terms = tokenize(query_text, self.stopwords)
        if not terms:
            raise EmptyQuery(f'Query {query_text!r} has no terms after normalization')
        return Query.from_terms(terms, self.lexicon)

    def load_profile(self, path_or_id):
        return load_profile(path_or_id, self.config.profiles_root, self.stopwords)

    def segment(self, html, url, captured_at):
        if not validate_url(url):
            raise ValidationError(f'Invalid URL: {url!r}')
        page = RawPage(url=url, fetched_at=parse_timestamp(captured_at), html=html)
        return segment_page(page, self.segmenter_config)

    def ingest(self, html, url, captured_at):
        """
        Segment a page and append it to its URL's track.

        Returns:
            dict report: url, captured_at, segment_count
        """
        snapshot = self.segment(html, url, captured_at)
        self.store.ingest(snapshot)
        return {
            'url': snapshot.url,
            'captured_at': snapshot.captured_at,
            'segment_count': len(snapshot.segments),
        }

    def _snapshot_and_track(self, url, at=None):
        if at is not None:
            at = parse_timestamp(at)
        track = self.store.load_track(url)
        snapshot = track.snapshot_at(at)
        if snapshot is None:
            raise NotFoundError(f'No snapshot of {url} at or before {at}')
        return snapshot, track

    def score(self, url, query_text, profile=None, at=None):
        """Score the latest snapshot (or the one at `at`) of url."""
        query = self.build_query(query_text)
        keywords = self.load_profile(profile).keywords
        snapshot, track = self._snapshot_and_track(url, at)
        return score_page(
            snapshot, query, keywords, track, self.config.visual_weights,
            full_history=self.config.check_full_history,
        )

    def rank(self, query_text, urls, profile=None):
        """
        Re-rank URLs by page score.

        Raises:
            UnknownUrl: listing every URL without snapshots
        """
        query = self.build_query(query_text)
        keywords = self.load_profile(profile).keywords

        urls = list(dict.fromkeys(urls))
        unknown = [url for url in urls if not self.store.has_track(url)]
        if unknown:
            raise UnknownUrl(unknown)

        scores = []
        for url in urls:
            snapshot, track = self._snapshot_and_track(url)
            scores.append(score_page(
                snapshot, query, keywords, track, self.config.visual_weights,
                full_history=self.config.check_full_history,
            ))
        return rank_pages(scores)

    def explain(self, url, query_text, fingerprint, profile=None, at=None):
        """
        Evidence behind one segment's coefficients.

        Returns:
            tuple: (context dict, SegmentEvaluation)
        """
        query = self.build_query(query_text)
        keywords = self.load_profile(profile).keywords
        snapshot, track = self._snapshot_and_track(url, at)

        evaluations = evaluate_page(
            snapshot, query, keywords, track, self.config.visual_weights,
            full_history=self.config.check_full_history,
        )
        for evaluation in evaluations:
            if evaluation.segment.fingerprint == fingerprint:
                context = {'url': url, 'captured_at': snapshot.captured_at, 'query': query.terms}
                return context, evaluation

        raise UnknownFingerprint(
            f'Fingerprint {fingerprint} not in snapshot {snapshot.captured_at} of {url}'
        )

    def history(self, url):
        """Captured_at and segment count of every stored snapshot."""
        track = self.store.load_track(url)
        return [
            {'captured_at': s.captured_at, 'segment_count': len(s.segments)}
            for s in track.snapshots
        ]
