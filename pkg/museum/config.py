"""
Configuration settings for the engine.

Defaults come from the environment (a .env file is loaded first), then a
TOML config file, then explicit overrides from the command line.
"""
import os
try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from dataclasses import dataclass, field, replace
from pathlib import Path

from dotenv import load_dotenv

from museum.models.scores import VisualWeightTable
from museum.services.lexicon import DEFAULT_STOPWORDS
from museum.utils.errors import ConfigError
from museum.utils.validators import (
    validate_block_elements,
    validate_existing_file,
    validate_min_tokens,
)

load_dotenv()

DEFAULT_CONFIG_FILE = 'museum.toml'

DEFAULT_BLOCK_ELEMENTS = (
    'div', 'section', 'article', 'table', 'ul', 'ol', 'nav',
    'header', 'footer', 'aside', 'main', 'p',
)

DEFAULT_VISUAL_WEIGHTS = {
    'h1': '3',
    'h2': '2.5',
    'h3': '2',
    'bold': '2',
    'italic': '1.5',
}


@dataclass(frozen=True)
class SegmenterConfig:
    """Settings for segment_page."""

    min_tokens: int = 10
    block_elements: tuple = DEFAULT_BLOCK_ELEMENTS
    stopwords: frozenset = DEFAULT_STOPWORDS

    def __post_init__(self):
        validate_min_tokens(self.min_tokens)
        object.__setattr__(self, 'block_elements', validate_block_elements(self.block_elements))


def _env_path(name):
    value = os.getenv(name)
    return Path(value) if value else None


@dataclass(frozen=True)
class EngineConfig:
    """Engine-wide settings shared by every command."""

    store_root: Path = field(default_factory=lambda: Path(os.getenv('MUSEUM_STORE', '.museum-store')))
    segmenter: SegmenterConfig = field(default_factory=SegmenterConfig)
    visual_weights: VisualWeightTable = field(
        default_factory=lambda: VisualWeightTable.from_mapping(DEFAULT_VISUAL_WEIGHTS)
    )
    lexicon_path: Path = field(default_factory=lambda: _env_path('MUSEUM_LEXICON'))
    stopwords_path: Path = field(default_factory=lambda: _env_path('MUSEUM_STOPWORDS'))
    profiles_root: Path = field(default_factory=lambda: _env_path('MUSEUM_PROFILES'))
    check_full_history: bool = False
    log_level: str = field(default_factory=lambda: os.getenv('MUSEUM_LOG_LEVEL', 'WARNING'))
    log_file: str = field(default_factory=lambda: os.getenv('MUSEUM_LOG_FILE'))

    @classmethod
    def load(cls, path=None, overrides=None):
        """
        Build a config from defaults, a TOML file and overrides.

        Args:
            path: Explicit config file; when None, MUSEUM_CONFIG or
                ./museum.toml is used if it exists
            overrides: Mapping of EngineConfig field names to values that
                win over everything else (CLI flags)

        Returns:
            EngineConfig instance
        """
        explicit = path is not None or os.getenv('MUSEUM_CONFIG') is not None
        config_path = Path(path or os.getenv('MUSEUM_CONFIG') or DEFAULT_CONFIG_FILE)

        values = {}
        if config_path.is_file():
            values = cls._read_toml(config_path)
        elif explicit:
            raise ConfigError(f'Config file not found: {config_path}')

        # MUSEUM_STORE beats the file for store.root
        if os.getenv('MUSEUM_STORE'):
            values['store_root'] = Path(os.environ['MUSEUM_STORE'])

        for key, value in (overrides or {}).items():
            if value is not None:
                values[key] = value

        return cls(**values)

    @staticmethod
    def _read_toml(config_path):
        try:
            with open(config_path, 'rb') as f:
                raw = tomllib.load(f)
        except (OSError, tomllib.TOMLDecodeError) as e:
            raise ConfigError(f'Cannot read config file {config_path}: {e}')

        base = config_path.resolve().parent

        def resolve(value):
            candidate = Path(value).expanduser()
            return candidate if candidate.is_absolute() else base / candidate

        values = {}
        store = raw.get('store', {})
        if 'root' in store:
            values['store_root'] = resolve(store['root'])

        segmenter = raw.get('segmenter', {})
        seg_kwargs = {}
        if 'min_tokens' in segmenter:
            seg_kwargs['min_tokens'] = segmenter['min_tokens']
        if 'block_elements' in segmenter:
            seg_kwargs['block_elements'] = tuple(segmenter['block_elements'])
        if seg_kwargs:
            values['segmenter'] = SegmenterConfig(**seg_kwargs)

        if 'visual_weights' in raw:
            try:
                values['visual_weights'] = VisualWeightTable.from_mapping(raw['visual_weights'])
            except (TypeError, ValueError) as e:
                raise ConfigError(f'Invalid visual_weights: {e}')

        if 'path' in raw.get('lexicon', {}):
            values['lexicon_path'] = resolve(raw['lexicon']['path'])
        if 'path' in raw.get('stopwords', {}):
            values['stopwords_path'] = resolve(raw['stopwords']['path'])
        if 'root' in raw.get('profiles', {}):
            values['profiles_root'] = resolve(raw['profiles']['root'])

        evolution = raw.get('evolution', {})
        if 'check_full_history' in evolution:
            flag = evolution['check_full_history']
            if not isinstance(flag, bool):
                raise ConfigError('evolution.check_full_history must be true or false')
            values['check_full_history'] = flag

        logging_section = raw.get('logging', {})
        if 'level' in logging_section:
            values['log_level'] = str(logging_section['level'])
        if 'file' in logging_section:
            values['log_file'] = str(resolve(logging_section['file']))

        return values

    def validate(self):
        """Check referenced files exist; run at command start."""
        validate_existing_file(self.lexicon_path, 'lexicon.path')
        validate_existing_file(self.stopwords_path, 'stopwords.path')
        if self.profiles_root is not None and not self.profiles_root.is_dir():
            raise ConfigError(f'profiles.root does not exist: {self.profiles_root}')
        return self

    def with_stopwords(self, stopwords):
        """Return a copy whose segmenter uses the given stop-word set."""
        return replace(self, segmenter=replace(self.segmenter, stopwords=frozenset(stopwords)))
