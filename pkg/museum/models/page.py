"""
Page, segment and snapshot models.
"""
from dataclasses import dataclass, field
from types import MappingProxyType

from museum.models.mixins import SerializerMixin
from museum.utils.errors import ParseError

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class RawPage:
    """One fetched page: URL, capture time (epoch seconds, UTC) and raw bytes."""

    url: str
    fetched_at: int
    html: bytes

    def __repr__(self):
        return f'<RawPage {self.url} @ {self.fetched_at}>'


def _frozen_spans(spans):
    return MappingProxyType({
        name: frozenset(tokens) for name, tokens in sorted(spans.items()) if tokens
    })


@dataclass(frozen=True)
class Segment(SerializerMixin):
    """
    One non-overlapping block of a page.

    Anchor text appears in both text_tokens and link_tokens. Every
    visual_spans token set is a subset of text_tokens.
    """

    fingerprint: str
    dom_path: str
    text_tokens: frozenset = frozenset()
    link_tokens: frozenset = frozenset()
    image_alt_tokens: frozenset = frozenset()
    visual_spans: MappingProxyType = field(default_factory=lambda: MappingProxyType({}))

    def __post_init__(self):
        object.__setattr__(self, 'text_tokens', frozenset(self.text_tokens))
        object.__setattr__(self, 'link_tokens', frozenset(self.link_tokens))
        object.__setattr__(self, 'image_alt_tokens', frozenset(self.image_alt_tokens))
        object.__setattr__(self, 'visual_spans', _frozen_spans(self.visual_spans))

    def __repr__(self):
        return f'<Segment {self.fingerprint[:8]} {self.dom_path}>'

    def __hash__(self):
        return hash((self.fingerprint, self.dom_path))

    def to_dict(self, exclude=(), extra=None):
        data = super().to_dict(exclude=exclude, extra=extra)
        if 'visual_spans' in data:
            data['visual_spans'] = {
                name: sorted(tokens) for name, tokens in self.visual_spans.items()
            }
        return data

    @classmethod
    def from_dict(cls, data):
        try:
            return cls(
                fingerprint=data['fingerprint'],
                dom_path=data['dom_path'],
                text_tokens=frozenset(data.get('text_tokens', ())),
                link_tokens=frozenset(data.get('link_tokens', ())),
                image_alt_tokens=frozenset(data.get('image_alt_tokens', ())),
                visual_spans={k: frozenset(v) for k, v in data.get('visual_spans', {}).items()},
            )
        except (KeyError, TypeError, AttributeError) as e:
            raise ParseError(f'Malformed segment record: {e}')


@dataclass(frozen=True)
class PageSnapshot(SerializerMixin):
    """One timestamped capture of a URL."""

    url: str
    captured_at: int
    title_tokens: frozenset
    segments: tuple

    def __post_init__(self):
        object.__setattr__(self, 'title_tokens', frozenset(self.title_tokens))
        object.__setattr__(self, 'segments', tuple(self.segments))

    def __repr__(self):
        return f'<PageSnapshot {self.url} @ {self.captured_at} ({len(self.segments)} segments)>'

    def find_segment(self, fingerprint):
        """Return the segment with the given fingerprint, or None."""
        for segment in self.segments:
            if segment.fingerprint == fingerprint:
                return segment
        return None

    def to_dict(self, exclude=(), extra=None):
        data = super().to_dict(exclude=exclude, extra=extra)
        data['schema_version'] = SCHEMA_VERSION
        return data

    @classmethod
    def from_dict(cls, data):
        version = data.get('schema_version')
        if version != SCHEMA_VERSION:
            raise ParseError(f'Unsupported snapshot schema_version: {version!r}')
        try:
            return cls(
                url=data['url'],
                captured_at=int(data['captured_at']),
                title_tokens=frozenset(data.get('title_tokens', ())),
                segments=tuple(Segment.from_dict(s) for s in data['segments']),
            )
        except (KeyError, TypeError, ValueError) as e:
            raise ParseError(f'Malformed snapshot record: {e}')
