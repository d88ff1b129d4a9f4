"""
User profile loading: flat keyword files supplying the profile coefficient.
"""
import logging
from pathlib import Path

from museum.models.query import ANONYMOUS_PROFILE, UserProfile
from museum.services.lexicon import DEFAULT_STOPWORDS, tokenize
from museum.utils.errors import ParseError, ProfileNotFound

logger = logging.getLogger(__name__)

PROFILE_SUFFIX = '.txt'


def parse_profile(profile_id, text, stopwords=DEFAULT_STOPWORDS):
    """Keywords from profile text: one term per line, '#' lines are comments."""
    keywords = set()
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith('#'):
            continue
        keywords.update(tokenize(line, stopwords))
    return UserProfile(profile_id=profile_id, keywords=frozenset(keywords))


def resolve_profile_path(path_or_id, profiles_root=None):
    """
    Find the file for a profile given as a path or as an id.

    An id resolves to <profiles_root>/<id>.txt.

    Raises:
        ProfileNotFound: neither form exists
    """
    candidate = Path(path_or_id)
    if candidate.is_file():
        return candidate

    if profiles_root is not None:
        by_id = Path(profiles_root) / f'{path_or_id}{PROFILE_SUFFIX}'
        if by_id.is_file():
            return by_id

    raise ProfileNotFound(f'Profile not found: {path_or_id}')


def load_profile(path_or_id, profiles_root=None, stopwords=DEFAULT_STOPWORDS):
    """
    Load and normalize a user profile.

    Args:
        path_or_id: Profile file path, or id under profiles_root; None
            gives the anonymous (empty) profile
        profiles_root: Directory holding <id>.txt profile files
        stopwords: Stop words dropped while normalizing

    Returns:
        UserProfile with deduplicated, normalized keywords

    Raises:
        ProfileNotFound, ParseError
    """
    if path_or_id is None:
        return ANONYMOUS_PROFILE

    path = resolve_profile_path(path_or_id, profiles_root)
    try:
        text = path.read_text(encoding='utf-8')
    except UnicodeDecodeError as e:
        raise ParseError(f'Profile is not UTF-8: {e}', path=path)

    profile = parse_profile(path.stem, text, stopwords)
    logger.info(f'Loaded profile {profile.profile_id} with {len(profile.keywords)} keywords')
    return profile
