"""
Models package initialization.
Import all models here for easy access.
"""
from museum.models.page import RawPage, Segment, PageSnapshot, SCHEMA_VERSION
from museum.models.query import (
    Query,
    SynonymLexicon,
    UserProfile,
    EMPTY_LEXICON,
    ANONYMOUS_PROFILE,
)
from museum.models.scores import (
    VisualWeightTable,
    SegmentScore,
    ScoredSegment,
    PageScore,
    COEFFICIENTS,
)
from museum.models.track import EvolutionTrack, PriorMatch

__all__ = [
    'RawPage', 'Segment', 'PageSnapshot', 'SCHEMA_VERSION',
    'Query', 'SynonymLexicon', 'UserProfile', 'EMPTY_LEXICON', 'ANONYMOUS_PROFILE',
    'VisualWeightTable', 'SegmentScore', 'ScoredSegment', 'PageScore', 'COEFFICIENTS',
    'EvolutionTrack', 'PriorMatch',
]
