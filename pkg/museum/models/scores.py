"""
Score models: the visual weight table, per-segment coefficients and page score.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType

from museum.models.mixins import SerializerMixin
from museum.utils.rationals import format_rational, to_fraction

COEFFICIENTS = ('freshness', 'theme', 'link', 'visual', 'profile', 'image')


@dataclass(frozen=True)
class VisualWeightTable:
    """Weight per markup class; classes missing from the table score 0."""

    entries: MappingProxyType = field(default_factory=lambda: MappingProxyType({}))

    def __post_init__(self):
        entries = {}
        for name, weight in dict(self.entries).items():
            weight = to_fraction(weight)
            if weight < 0:
                raise ValueError(f'visual weight for {name!r} must be >= 0, got {weight}')
            entries[str(name)] = weight
        object.__setattr__(self, 'entries', MappingProxyType(dict(sorted(entries.items()))))

    def __hash__(self):
        return hash(tuple(self.entries.items()))

    @classmethod
    def from_mapping(cls, mapping):
        return cls(entries=MappingProxyType(dict(mapping)))

    def weight(self, markup_class):
        return self.entries.get(markup_class, Fraction(0))

    def scaled(self, factor):
        """Every weight multiplied by factor."""
        factor = to_fraction(factor)
        return VisualWeightTable.from_mapping({k: w * factor for k, w in self.entries.items()})

    def to_dict(self):
        return {name: format_rational(weight) for name, weight in self.entries.items()}


@dataclass(frozen=True)
class SegmentScore(SerializerMixin):
    """The six coefficients of one segment and their exact sum."""

    freshness: Fraction = Fraction(0)
    theme: Fraction = Fraction(0)
    link: Fraction = Fraction(0)
    visual: Fraction = Fraction(0)
    profile: Fraction = Fraction(0)
    image: Fraction = Fraction(0)
    total: Fraction = Fraction(0)

    def components(self):
        return {name: getattr(self, name) for name in COEFFICIENTS}


@dataclass(frozen=True)
class ScoredSegment:
    fingerprint: str
    dom_path: str
    score: SegmentScore

    def to_dict(self):
        return {
            'fingerprint': self.fingerprint,
            'dom_path': self.dom_path,
            'coefficients': {
                name: format_rational(value) for name, value in self.score.components().items()
            },
            'total': format_rational(self.score.total),
        }


@dataclass(frozen=True)
class PageScore:
    """Segment weight matrix of one page plus its mean score."""

    url: str
    captured_at: int
    query_terms: frozenset
    segment_scores: tuple
    page_score: Fraction

    def __repr__(self):
        return f'<PageScore {self.url} {format_rational(self.page_score)}>'

    def top_segments(self, limit):
        """Highest totals first; ties keep document order."""
        ranked = sorted(
            enumerate(self.segment_scores),
            key=lambda pair: (-pair[1].score.total, pair[0]),
        )
        return tuple(scored for _, scored in ranked[:limit])

    def to_dict(self, top=None):
        segments = self.segment_scores if top is None else self.top_segments(top)
        return {
            'url': self.url,
            'captured_at': self.captured_at,
            'query': sorted(self.query_terms),
            'page_score': format_rational(self.page_score),
            'segments': [scored.to_dict() for scored in segments],
        }
