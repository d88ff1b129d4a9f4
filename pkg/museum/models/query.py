"""
Query, synonym lexicon and user profile models.
"""
from dataclasses import dataclass, field
from types import MappingProxyType


@dataclass(frozen=True)
class SynonymLexicon:
    """
    Immutable mapping from a token to its synonyms.

    No token maps to a set containing itself; absent tokens have no
    synonyms.
    """

    entries: MappingProxyType = field(default_factory=lambda: MappingProxyType({}))

    def __post_init__(self):
        entries = {term: frozenset(syns) for term, syns in dict(self.entries).items()}
        for term, syns in entries.items():
            if term in syns:
                raise ValueError(f'{term!r} lists itself as a synonym')
        object.__setattr__(self, 'entries', MappingProxyType(entries))

    def __hash__(self):
        return hash(frozenset(self.entries.items()))

    def __len__(self):
        return len(self.entries)

    def lookup(self, term):
        return self.entries.get(term, frozenset())

    def expand(self, terms):
        """Union of the synonyms of every term in terms."""
        pool = set()
        for term in terms:
            pool |= self.lookup(term)
        return frozenset(pool)

    def sources(self, synonym, terms):
        """Members of terms whose synonym set contains synonym."""
        return sorted(term for term in terms if synonym in self.lookup(term))


EMPTY_LEXICON = SynonymLexicon()


@dataclass(frozen=True)
class Query:
    """Normalized query terms with their synonyms precomputed."""

    terms: frozenset
    synonyms: MappingProxyType = field(default_factory=lambda: MappingProxyType({}))
    lexicon: SynonymLexicon = field(default=EMPTY_LEXICON, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, 'terms', frozenset(self.terms))
        synonyms = {t: frozenset(s) for t, s in dict(self.synonyms).items()}
        unknown = set(synonyms) - self.terms
        if unknown:
            raise ValueError(f'synonym keys must be query terms: {sorted(unknown)}')
        object.__setattr__(self, 'synonyms', MappingProxyType(synonyms))

    def __hash__(self):
        return hash(self.terms)

    @classmethod
    def from_terms(cls, terms, lexicon=EMPTY_LEXICON):
        terms = frozenset(terms)
        return cls(
            terms=terms,
            synonyms={t: lexicon.lookup(t) for t in terms if lexicon.lookup(t)},
            lexicon=lexicon,
        )

    @property
    def synonym_pool(self):
        """Union of syn(q) over every query term."""
        pool = set()
        for syns in self.synonyms.values():
            pool |= syns
        return frozenset(pool)

    def synonym_sources(self, synonym):
        return sorted(t for t, syns in self.synonyms.items() if synonym in syns)


@dataclass(frozen=True)
class UserProfile:
    """Keywords supplying the profile coefficient."""

    profile_id: str
    keywords: frozenset = frozenset()

    def __post_init__(self):
        if not self.profile_id:
            raise ValueError('profile_id must be non-empty')
        object.__setattr__(self, 'keywords', frozenset(self.keywords))

    def __repr__(self):
        return f'<UserProfile {self.profile_id} ({len(self.keywords)} keywords)>'


ANONYMOUS_PROFILE = UserProfile(profile_id='anonymous')
