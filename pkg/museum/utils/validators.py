"""
Input validation utilities for pages, timestamps, config values and snapshots.
"""
from datetime import datetime, timezone
from urllib.parse import urlparse

from museum.utils.errors import ValidationError, ConfigError


def validate_url(url):
    """
    Validate that a string is an absolute URL.

    Args:
        url: URL string to validate

    Returns:
        bool: True if valid, False otherwise
    """
    if not url or not isinstance(url, str):
        return False

    parsed = urlparse(url.strip())
    return bool(parsed.scheme) and bool(parsed.netloc or parsed.path)


def parse_timestamp(value):
    """
    Parse a capture timestamp into integer epoch seconds (UTC).

    Accepts integers, digit strings and ISO-8601 strings. Naive ISO
    values are taken as UTC.

    Args:
        value: Timestamp as int or str

    Returns:
        int: epoch seconds

    Raises:
        ValidationError: if the value cannot be parsed or is negative
    """
    if isinstance(value, bool):
        raise ValidationError(f'Invalid timestamp: {value!r}')

    if isinstance(value, int):
        seconds = value
    elif isinstance(value, str) and value.strip().lstrip('-').isdigit():
        seconds = int(value.strip())
    elif isinstance(value, str):
        try:
            moment = datetime.fromisoformat(value.strip().replace('Z', '+00:00'))
        except ValueError:
            raise ValidationError(
                f'Invalid timestamp: {value!r}. Use epoch seconds or ISO-8601.'
            )
        if moment.tzinfo is None:
            moment = moment.replace(tzinfo=timezone.utc)
        seconds = int(moment.timestamp())
    else:
        raise ValidationError(f'Invalid timestamp: {value!r}')

    if seconds < 0:
        raise ValidationError(f'Timestamp cannot be negative: {seconds}')

    return seconds


def validate_min_tokens(value):
    """Validate segmenter.min_tokens is a non-negative integer."""
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise ConfigError(f'segmenter.min_tokens must be an integer >= 0, got {value!r}')
    return value


def validate_block_elements(value):
    """Validate segmenter.block_elements is a list of lowercase tag names."""
    if not isinstance(value, (list, tuple)) or not value:
        raise ConfigError('segmenter.block_elements must be a non-empty list of tag names')

    for name in value:
        if not isinstance(name, str) or not name.isalnum() or name != name.lower():
            raise ConfigError(f'Invalid block element name: {name!r}')

    return tuple(value)


def validate_existing_file(path, key):
    """
    Check that a configured path points to an existing file.

    Args:
        path: Path or None
        key: Config key, used in the error message

    Returns:
        The path unchanged
    """
    if path is not None and not path.is_file():
        raise ConfigError(f'{key} does not exist: {path}')
    return path


def check_partition_paths(dom_paths):
    """
    Check that segment DOM paths name disjoint subtrees.

    No two paths may be identical and no path may be an ancestor of
    another. Paths are compared component-wise, so "/div[1]" is not an
    ancestor of "/div[10]".

    Args:
        dom_paths: iterable of slash-joined element paths

    Returns:
        tuple: (is_valid: bool, offending_pairs: list)
    """
    seen = set()
    offending = []

    for path in dom_paths:
        if path in seen:
            offending.append((path, path))
        seen.add(path)

    for path in sorted(seen):
        parts = path.split('/')
        for cut in range(2, len(parts)):
            ancestor = '/'.join(parts[:cut])
            if ancestor in seen:
                offending.append((ancestor, path))

    return len(offending) == 0, offending
