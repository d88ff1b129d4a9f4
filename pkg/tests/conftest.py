"""Shared fixtures: fixture pages, lexicon, profiles, engines and the CLI runner."""

import json
import logging
from pathlib import Path

import pytest
from click.testing import CliRunner

from museum import create_engine
from museum.config import EngineConfig, SegmenterConfig
from museum.models.page import RawPage, Segment
from museum.services.lexicon import load_lexicon
from museum.services.segmenter import fingerprint_segment, segment_page

FIXTURES = Path(__file__).parent / 'fixtures'
PAGES = FIXTURES / 'pages'
PROFILES = FIXTURES / 'profiles'
LEXICON = FIXTURES / 'lexicon.tsv'

CANONICAL_URL = 'https://example.org/solar-guide'
WIND_URL = 'https://example.org/wind-power'

ENV_VARS = (
    'MUSEUM_STORE', 'MUSEUM_CONFIG', 'MUSEUM_LEXICON', 'MUSEUM_STOPWORDS',
    'MUSEUM_PROFILES', 'MUSEUM_LOG_LEVEL', 'MUSEUM_LOG_FILE',
)


def read_page(name):
    return (PAGES / name).read_bytes()


def fixture_pages():
    return sorted(path.name for path in PAGES.glob('*.html'))


def segment_fixture(name, url='https://example.org/page', captured_at=1000, cfg=None):
    page = RawPage(url=url, fetched_at=captured_at, html=read_page(name))
    return segment_page(page, cfg or SegmenterConfig())


def make_segment(text=(), links=(), alt=(), spans=None, path='/html/body/div[1]'):
    return Segment(
        fingerprint=fingerprint_segment(path, frozenset(text)),
        dom_path=path,
        text_tokens=frozenset(text),
        link_tokens=frozenset(links),
        image_alt_tokens=frozenset(alt),
        visual_spans=spans or {},
    )


def last_json_line(text):
    """The error document is the last line written to standard error."""
    return json.loads(text.strip().splitlines()[-1])


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch):
    for name in ENV_VARS:
        monkeypatch.delenv(name, raising=False)
    yield
    logger = logging.getLogger('museum')
    for handler in list(logger.handlers):
        logger.removeHandler(handler)


@pytest.fixture
def segmenter_config():
    return SegmenterConfig()


@pytest.fixture
def lexicon():
    return load_lexicon(LEXICON)


@pytest.fixture
def store_root(tmp_path):
    return tmp_path / 'store'


@pytest.fixture
def config(store_root):
    return EngineConfig(
        store_root=store_root,
        lexicon_path=LEXICON,
        profiles_root=PROFILES,
    )


@pytest.fixture
def engine(config):
    return create_engine(config)


@pytest.fixture
def config_file(tmp_path, store_root):
    path = tmp_path / 'museum.toml'
    path.write_text(
        '[store]\n'
        f'root = "{store_root}"\n'
        '[lexicon]\n'
        f'path = "{LEXICON}"\n'
        '[profiles]\n'
        f'root = "{PROFILES}"\n'
        '[visual_weights]\n'
        'h1 = 3\n'
        'h2 = "2.5"\n'
        'bold = 2\n'
        'italic = "1.5"\n',
        encoding='utf-8',
    )
    return path


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def invoke(runner, config_file):
    """Run the CLI against the temporary config file."""
    from museum.commands import cli

    def _invoke(*args, input=None):
        return runner.invoke(cli, ['--config', str(config_file), *args], input=input)

    return _invoke
