"""
Token normalization and the synonym lexicon.

Every set intersection in the engine runs over tokens produced here.
"""
import logging
import re
from importlib import resources

from museum.models.query import SynonymLexicon, EMPTY_LEXICON
from museum.utils.errors import ParseError, SelfSynonym

logger = logging.getLogger(__name__)

# Leading/trailing characters that are neither letters nor digits
_EDGE_PUNCT = re.compile(r'^[\W_]+|[\W_]+$')


def read_stopwords(path=None):
    """
    Load a stop-word list: one token per line, '#' lines are comments.

    Args:
        path: File path; None loads the packaged default list

    Returns:
        frozenset of case-folded stop words
    """
    if path is None:
        text = resources.files('museum.data').joinpath('stopwords.txt').read_text(encoding='utf-8')
    else:
        try:
            with open(path, encoding='utf-8') as f:
                text = f.read()
        except UnicodeDecodeError as e:
            raise ParseError(f'Stop-word file is not UTF-8: {e}', path=path)

    words = set()
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith('#'):
            continue
        words.add(line.casefold())
    return frozenset(words)


DEFAULT_STOPWORDS = read_stopwords()


def normalize_token(raw, stopwords=DEFAULT_STOPWORDS):
    """Case-fold and strip one whitespace-free chunk; None if nothing is left."""
    token = _EDGE_PUNCT.sub('', raw.casefold())
    if not token or token in stopwords:
        return None
    return token


def tokenize(text, stopwords=DEFAULT_STOPWORDS):
    """
    Split text into normalized tokens.

    Splits on Unicode whitespace, case-folds, strips leading and trailing
    non-alphanumeric characters and drops stop words and empty results.

    Args:
        text: Raw text
        stopwords: Stop-word set to drop

    Returns:
        list of tokens in text order (duplicates kept)
    """
    tokens = []
    for chunk in text.split():
        token = normalize_token(chunk, stopwords)
        if token is not None:
            tokens.append(token)
    return tokens


def syn(term, lexicon):
    """Synonyms of term; the empty set when the lexicon has no entry."""
    return lexicon.lookup(term)


def syn_set(terms, lexicon):
    """Set-valued syn: the union of syn(t) over terms."""
    return lexicon.expand(terms)


def _single_token(raw, stopwords, line, path, what):
    tokens = tokenize(raw, stopwords)
    if len(tokens) != 1:
        raise ParseError(
            f'{what} {raw.strip()!r} must normalize to exactly one token, got {tokens}',
            line=line,
            path=path,
        )
    return tokens[0]


def parse_lexicon(text, stopwords=DEFAULT_STOPWORDS, path=None):
    """
    Parse lexicon TSV text: term<TAB>syn1,syn2,... per line.

    Raises:
        ParseError: malformed line (with line number)
        SelfSynonym: a term listed among its own synonyms
    """
    entries = {}

    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith('#'):
            continue

        if '\t' not in line:
            raise ParseError('expected term<TAB>synonyms', line=line_no, path=path)

        raw_term, raw_syns = line.split('\t', 1)
        term = _single_token(raw_term, stopwords, line_no, path, 'Term')

        parts = [p for p in raw_syns.split(',') if p.strip()]
        if not parts:
            raise ParseError(f'no synonyms listed for {term!r}', line=line_no, path=path)

        synonyms = {_single_token(p, stopwords, line_no, path, 'Synonym') for p in parts}
        if term in synonyms:
            raise SelfSynonym(term, line=line_no)

        entries.setdefault(term, set()).update(synonyms)

    return SynonymLexicon(entries=entries)


def load_lexicon(path, stopwords=DEFAULT_STOPWORDS):
    """
    Load a synonym lexicon file.

    Args:
        path: UTF-8 TSV lexicon file; None gives the empty lexicon
        stopwords: Stop words applied while normalizing entries

    Returns:
        SynonymLexicon
    """
    if path is None:
        return EMPTY_LEXICON

    try:
        with open(path, encoding='utf-8') as f:
            text = f.read()
    except UnicodeDecodeError as e:
        raise ParseError(f'Lexicon is not UTF-8: {e}', path=path)

    lexicon = parse_lexicon(text, stopwords=stopwords, path=path)
    logger.info(f'Loaded lexicon {path} with {len(lexicon)} entries')
    return lexicon


def load_demo_lexicon(stopwords=DEFAULT_STOPWORDS):
    """The small lexicon shipped with the package."""
    text = resources.files('museum.data').joinpath('demo_lexicon.tsv').read_text(encoding='utf-8')
    return parse_lexicon(text, stopwords=stopwords, path='demo_lexicon.tsv')
