"""
Segment coefficients, segment totals and page scores.

Every coefficient counts distinct matching tokens: an exact match adds 1
and a synonym match adds 1/2. The visual coefficient is exact-match only
and weighted per markup class. Arithmetic is exact (Fraction).
"""
import logging
from dataclasses import dataclass, field, replace
from fractions import Fraction
from types import MappingProxyType

from museum.models.query import EMPTY_LEXICON
from museum.models.scores import PageScore, ScoredSegment, SegmentScore
from museum.models.track import EvolutionTrack, PriorMatch
from museum.services.evolution import freshness_gate, is_fresh
from museum.utils.errors import EmptyQuery, NoSegments
from museum.utils.rationals import HALF

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Evidence:
    """Tokens behind one coefficient value."""

    exact: frozenset = frozenset()
    synonym: frozenset = frozenset()
    synonym_sources: MappingProxyType = field(default_factory=lambda: MappingProxyType({}))
    visual: tuple = ()  # (markup class, weight, matched tokens)
    gated_by: object = None  # PriorMatch that closed the freshness gate

    @property
    def value(self):
        if self.gated_by is not None:
            return Fraction(0)
        if self.visual:
            return sum((weight * len(tokens) for _, weight, tokens in self.visual), Fraction(0))
        return len(self.exact) + HALF * len(self.synonym)

    @property
    def empty(self):
        return not (self.exact or self.synonym or self.visual)


def match_evidence(sources, target, lexicon):
    """
    Exact and synonym matches of sources against target.

    Args:
        sources: tokens being looked for (query terms, title, profile)
        target: tokens of the segment field searched
        lexicon: SynonymLexicon expanding sources
    """
    target = frozenset(target)
    exact = frozenset(sources) & target
    synonym = lexicon.expand(sources) & target
    return Evidence(
        exact=exact,
        synonym=synonym,
        synonym_sources=MappingProxyType({s: tuple(lexicon.sources(s, sources)) for s in sorted(synonym)}),
    )


def _query_evidence(query, target):
    target = frozenset(target)
    synonym = query.synonym_pool & target
    return Evidence(
        exact=query.terms & target,
        synonym=synonym,
        synonym_sources=MappingProxyType({s: tuple(query.synonym_sources(s)) for s in sorted(synonym)}),
    )


def _gated(evidence, blocking):
    return replace(evidence, gated_by=blocking) if blocking is not None else evidence


def _blocking_prior(seg, query, prior):
    """PriorMatch closing the gate for an explicit prior, else None."""
    if prior is None:
        return None
    if isinstance(prior, PriorMatch):
        return None if is_fresh(seg, prior.segment, query) else prior
    return None if is_fresh(seg, prior, query) else PriorMatch(prior, None, 'given')


def freshness_evidence(seg, query, prior=None):
    """Exact and synonym matches in the segment text, behind the gate."""
    return _gated(_query_evidence(query, seg.text_tokens), _blocking_prior(seg, query, prior))


def actual_freshness_evidence(seg, query, prior=None):
    evidence = freshness_evidence(seg, query, prior)
    return replace(evidence, synonym=frozenset(), synonym_sources=MappingProxyType({}))


def synonym_freshness_evidence(seg, query, prior=None):
    return replace(freshness_evidence(seg, query, prior), exact=frozenset())


def actual_freshness(seg, query, prior=None):
    """|Q ∩ segment text| when the freshness gate passes, else 0."""
    return actual_freshness_evidence(seg, query, prior).value


def synonym_freshness(seg, query, prior=None):
    """|syn(Q) ∩ segment text| / 2 when the freshness gate passes, else 0."""
    return synonym_freshness_evidence(seg, query, prior).value


def freshness_weight(seg, query, prior=None):
    """
    actual_freshness + synonym_freshness.

    Equals freshness_evidence(seg, query, prior).value, which is the
    freshness component evaluate_segment reports for the same prior.
    """
    return actual_freshness(seg, query, prior) + synonym_freshness(seg, query, prior)


def theme_evidence(seg, title, query):
    # Title against segment; the query only lends its lexicon
    return match_evidence(title, seg.text_tokens, query.lexicon)


def theme_weight(seg, title, query):
    """|title ∩ text| + |syn(title) ∩ text| / 2."""
    return theme_evidence(seg, title, query).value


def image_evidence(seg, query):
    return _query_evidence(query, seg.image_alt_tokens)


def image_weight(seg, query):
    """|Q ∩ alt tokens| + |syn(Q) ∩ alt tokens| / 2."""
    return image_evidence(seg, query).value


def link_evidence(seg, query):
    return _query_evidence(query, seg.link_tokens)


def link_weight(seg, query):
    """|Q ∩ link tokens| + |syn(Q) ∩ link tokens| / 2."""
    return link_evidence(seg, query).value


def profile_evidence(seg, profile, lexicon=EMPTY_LEXICON):
    return match_evidence(profile, seg.text_tokens, lexicon)


def profile_weight(seg, profile, lexicon=EMPTY_LEXICON):
    """|profile ∩ text| + |syn(profile) ∩ text| / 2."""
    return profile_evidence(seg, profile, lexicon).value


def visual_evidence(seg, query, table):
    matched = []
    for markup, weight in table.entries.items():
        tokens = query.terms & seg.visual_spans.get(markup, frozenset())
        if tokens:
            matched.append((markup, weight, frozenset(tokens)))
    return Evidence(visual=tuple(matched))


def visual_weight(seg, query, table):
    """Σ over markup classes c: weight(c) · |Q ∩ spans[c]|."""
    return visual_evidence(seg, query, table).value


def segment_total(freshness=0, theme=0, link=0, visual=0, profile=0, image=0):
    """SegmentScore whose total is the exact sum of the six components."""
    parts = [Fraction(p) for p in (freshness, theme, link, visual, profile, image)]
    return SegmentScore(*parts, total=sum(parts, Fraction(0)))


def page_score(scores):
    """
    Arithmetic mean of segment totals.

    Raises:
        NoSegments: scores is empty
    """
    scores = list(scores)
    if not scores:
        raise NoSegments()
    return sum((s.total for s in scores), Fraction(0)) / len(scores)


@dataclass(frozen=True)
class SegmentEvaluation:
    """All six coefficients of one segment with their evidence."""

    segment: object
    evidence: MappingProxyType

    @property
    def score(self):
        return segment_total(**{name: ev.value for name, ev in self.evidence.items()})


def evaluate_segment(seg, query, title, profile, history, table, lexicon=None, full_history=False):
    """
    Score one segment against a history track.

    Args:
        seg: Segment
        query: Query
        title: title tokens of the page
        profile: profile keywords
        history: EvolutionTrack holding only snapshots before the scored one
        table: VisualWeightTable
        lexicon: lexicon used for title and profile synonyms; defaults to
            the query's
        full_history: compare against every earlier version for freshness

    Returns:
        SegmentEvaluation
    """
    lexicon = lexicon if lexicon is not None else query.lexicon
    fresh, blocking = freshness_gate(history, seg, query, full_history=full_history)
    freshness = freshness_evidence(seg, query, None if fresh else blocking)

    evidence = {
        'freshness': freshness,
        'theme': match_evidence(title, seg.text_tokens, lexicon),
        'link': link_evidence(seg, query),
        'visual': visual_evidence(seg, query, table),
        'profile': match_evidence(profile, seg.text_tokens, lexicon),
        'image': image_evidence(seg, query),
    }
    return SegmentEvaluation(segment=seg, evidence=MappingProxyType(evidence))


def evaluate_page(snapshot, query, profile, track, table, full_history=False):
    """SegmentEvaluation for every segment of snapshot, in document order."""
    if not query.terms:
        raise EmptyQuery()
    if not snapshot.segments:
        raise NoSegments(f'Snapshot of {snapshot.url} at {snapshot.captured_at} has no segments')

    history = track.before(snapshot.captured_at) if track is not None else EvolutionTrack(url=snapshot.url)
    return [
        evaluate_segment(seg, query, snapshot.title_tokens, profile, history, table,
                         full_history=full_history)
        for seg in snapshot.segments
    ]


def score_page(snapshot, query, profile, track, table, full_history=False):
    """
    Segment weight matrix and page score of one snapshot.

    Freshness compares each segment only with snapshots in track that are
    older than snapshot. The track is never modified.

    Args:
        snapshot: PageSnapshot being scored
        query: Query with at least one term
        profile: profile keyword set (empty for anonymous users)
        track: EvolutionTrack of the URL (may include snapshot itself)
        table: VisualWeightTable
        full_history: see evaluate_segment

    Returns:
        PageScore

    Raises:
        EmptyQuery, NoSegments
    """
    evaluations = evaluate_page(snapshot, query, profile, track, table, full_history)
    scored = tuple(
        ScoredSegment(ev.segment.fingerprint, ev.segment.dom_path, ev.score)
        for ev in evaluations
    )
    result = PageScore(
        url=snapshot.url,
        captured_at=snapshot.captured_at,
        query_terms=query.terms,
        segment_scores=scored,
        page_score=page_score(s.score for s in scored),
    )
    logger.info(f'Scored {snapshot.url} @ {snapshot.captured_at}: {result.page_score}')
    return result
