"""
Centralized error classes and CLI error handling.
"""
import json
import logging

import click

logger = logging.getLogger(__name__)

EXIT_VALIDATION = 2
EXIT_STORE = 3


class MuseumError(Exception):
    """Base class for every error the engine reports to the caller."""

    error_type = 'error'
    default_exit_code = 1

    def __init__(self, message, exit_code=None):
        super().__init__(message)
        self.message = message
        self.exit_code = exit_code if exit_code is not None else self.default_exit_code

    def to_dict(self):
        return {
            'success': False,
            'error': self.message,
            'error_type': self.error_type
        }


class ValidationError(MuseumError):
    """Raised when input validation fails."""
    error_type = 'validation_error'
    default_exit_code = EXIT_VALIDATION


class ConfigError(ValidationError):
    """Raised when the engine configuration is invalid."""
    error_type = 'config_error'


class EmptyDocument(ValidationError):
    """Raised when a page has no renderable text at all."""
    error_type = 'empty_document'


class DecodeFailure(ValidationError):
    """Raised when page bytes cannot be decoded even lossily."""
    error_type = 'decode_failure'


class ParseError(ValidationError):
    """Raised when a lexicon, profile or snapshot file is malformed."""
    error_type = 'parse_error'

    def __init__(self, message, line=None, path=None):
        location = ''
        if path is not None:
            location = f'{path}'
        if line is not None:
            location = f'{location}:{line}' if location else f'line {line}'
        super().__init__(f'{location}: {message}' if location else message)
        self.line = line
        self.path = path

    def to_dict(self):
        data = super().to_dict()
        data['line'] = self.line
        return data


class SelfSynonym(ValidationError):
    """Raised when a lexicon entry lists a term as its own synonym."""
    error_type = 'self_synonym'

    def __init__(self, token, line=None):
        where = f' (line {line})' if line is not None else ''
        super().__init__(f'Term lists itself as a synonym: {token}{where}')
        self.token = token
        self.line = line

    def to_dict(self):
        data = super().to_dict()
        data['line'] = self.line
        return data


class EmptyQuery(ValidationError):
    """Raised when a query normalizes to no terms."""
    error_type = 'empty_query'

    def __init__(self, message='Query has no terms after normalization'):
        super().__init__(message)


class NoSegments(ValidationError):
    """Raised when a page score is requested over zero segments."""
    error_type = 'no_segments'

    def __init__(self, message='Page has no segments to score'):
        super().__init__(message)


class UrlMismatch(ValidationError):
    """Raised when a snapshot is ingested into another URL's track."""
    error_type = 'url_mismatch'


class NonMonotonicTimestamp(ValidationError):
    """Raised when a snapshot is not newer than the latest one in its track."""
    error_type = 'non_monotonic_timestamp'


class NotFoundError(ValidationError):
    """Raised when a resource is not found."""
    error_type = 'not_found'

    def __init__(self, message='Resource not found'):
        super().__init__(message)


class UnknownUrl(NotFoundError):
    """Raised when no snapshot exists for one or more URLs."""
    error_type = 'unknown_url'

    def __init__(self, urls):
        self.urls = sorted(urls) if not isinstance(urls, str) else [urls]
        super().__init__(f'No snapshots stored for: {", ".join(self.urls)}')

    def to_dict(self):
        data = super().to_dict()
        data['urls'] = self.urls
        return data


class ProfileNotFound(NotFoundError):
    """Raised when a profile file or id cannot be resolved."""
    error_type = 'profile_not_found'


class UnknownFingerprint(NotFoundError):
    """Raised when a fingerprint is absent from the scored snapshot."""
    error_type = 'unknown_fingerprint'


class StoreError(MuseumError):
    """Raised when the snapshot store cannot be read or written."""
    error_type = 'store_error'
    default_exit_code = EXIT_STORE


class StoreIoError(StoreError):
    """Raised when a filesystem operation on the store fails."""
    error_type = 'store_io_error'


def _log_error(error):
    if isinstance(error, StoreError):
        logger.error(f'Store error: {error.message}')
    elif isinstance(error, NotFoundError):
        logger.info(f'Not found: {error.message}')
    else:
        logger.warning(f'Validation error: {error.message}')


def report_error(error):
    """Log an engine error and write its JSON form to standard error."""
    _log_error(error)
    click.echo(json.dumps(error.to_dict(), sort_keys=True), err=True)


def register_error_handlers(group):
    """
    Route engine errors raised by any command of a click group to exit codes.

    Args:
        group: click.Group whose invoke() is wrapped

    Returns:
        The same group
    """
    original_invoke = group.invoke

    def invoke(ctx):
        try:
            return original_invoke(ctx)
        except MuseumError as error:
            report_error(error)
            ctx.exit(error.exit_code)

    group.invoke = invoke
    logger.debug('Error handlers registered')
    return group
