"""Configuration loading, validation, logging setup and the engine factory."""

import logging
from fractions import Fraction
from pathlib import Path

import pytest

from museum import create_engine
from museum.config import EngineConfig, SegmenterConfig
from museum.utils.errors import ConfigError
from museum.utils.logger import configure_logging

from conftest import LEXICON, PROFILES


def write_config(directory, text):
    path = directory / 'museum.toml'
    path.write_text(text, encoding='utf-8')
    return path


def test_defaults(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    config = EngineConfig.load()
    assert config.store_root == Path('.museum-store')
    assert config.segmenter.min_tokens == 10
    assert config.visual_weights.weight('bold') == 2
    assert config.visual_weights.weight('h2') == Fraction(5, 2)
    assert config.lexicon_path is None
    assert config.check_full_history is False


def test_file_values_and_relative_paths(tmp_path):
    (tmp_path / 'lex.tsv').write_text('solar\tphotovoltaic\n', encoding='utf-8')
    path = write_config(tmp_path, (
        '[store]\nroot = "data/store"\n'
        '[segmenter]\nmin_tokens = 4\nblock_elements = ["div", "p"]\n'
        '[visual_weights]\nbold = 1.25\nh1 = "3"\n'
        '[lexicon]\npath = "lex.tsv"\n'
        '[evolution]\ncheck_full_history = true\n'
    ))
    config = EngineConfig.load(path)

    assert config.store_root == tmp_path.resolve() / 'data' / 'store'
    assert config.lexicon_path == tmp_path.resolve() / 'lex.tsv'
    assert config.segmenter == SegmenterConfig(min_tokens=4, block_elements=('div', 'p'))
    assert config.visual_weights.weight('bold') == Fraction(5, 4)
    assert config.visual_weights.weight('h2') == 0
    assert config.check_full_history is True


def test_precedence_file_then_env_then_overrides(tmp_path, monkeypatch):
    path = write_config(tmp_path, '[store]\nroot = "from-file"\n')
    assert EngineConfig.load(path).store_root.name == 'from-file'

    monkeypatch.setenv('MUSEUM_STORE', str(tmp_path / 'from-env'))
    assert EngineConfig.load(path).store_root.name == 'from-env'

    config = EngineConfig.load(path, overrides={'store_root': tmp_path / 'from-flag'})
    assert config.store_root.name == 'from-flag'


def test_config_path_from_environment(tmp_path, monkeypatch):
    path = write_config(tmp_path, '[segmenter]\nmin_tokens = 3\n')
    monkeypatch.setenv('MUSEUM_CONFIG', str(path))
    assert EngineConfig.load().segmenter.min_tokens == 3


def test_explicit_missing_config_file(tmp_path):
    with pytest.raises(ConfigError):
        EngineConfig.load(tmp_path / 'absent.toml')


@pytest.mark.parametrize('text', [
    '[segmenter]\nmin_tokens = -1\n',
    '[segmenter]\nmin_tokens = "ten"\n',
    '[segmenter]\nmin_tokens = true\n',
    '[segmenter]\nblock_elements = ["Div"]\n',
    '[segmenter]\nblock_elements = []\n',
    '[visual_weights]\nbold = -2\n',
    '[visual_weights]\nbold = "heavy"\n',
    '[evolution]\ncheck_full_history = "yes"\n',
    '[store\nroot = 1\n',
])
def test_invalid_config_values(tmp_path, text):
    with pytest.raises(ConfigError) as excinfo:
        EngineConfig.load(write_config(tmp_path, text))
    assert excinfo.value.exit_code == 2


def test_validate_checks_referenced_paths(tmp_path):
    with pytest.raises(ConfigError):
        EngineConfig(lexicon_path=tmp_path / 'missing.tsv').validate()
    with pytest.raises(ConfigError):
        EngineConfig(stopwords_path=tmp_path / 'missing.txt').validate()
    with pytest.raises(ConfigError):
        EngineConfig(profiles_root=tmp_path / 'missing').validate()
    EngineConfig(lexicon_path=LEXICON, profiles_root=PROFILES).validate()


def test_create_engine_loads_resources(config):
    engine = create_engine(config)
    assert engine.lexicon.lookup('solar') == {'photovoltaic'}
    assert engine.store.root == config.store_root
    assert 'the' in engine.segmenter_config.stopwords


def test_custom_stopwords_reach_the_segmenter(tmp_path, store_root):
    stop = tmp_path / 'stop.txt'
    stop.write_text('panel\n', encoding='utf-8')
    engine = create_engine(EngineConfig(store_root=store_root, stopwords_path=stop))

    assert engine.segmenter_config.stopwords == {'panel'}
    assert engine.build_query('the panel').terms == {'the'}


def test_create_engine_rejects_missing_lexicon(tmp_path):
    with pytest.raises(ConfigError):
        create_engine(EngineConfig(store_root=tmp_path, lexicon_path=tmp_path / 'nope.tsv'))


def test_logging_writes_to_stderr_and_optional_file(tmp_path):
    log_file = tmp_path / 'logs' / 'museum.log'
    configure_logging(EngineConfig(log_level='info', log_file=str(log_file)))
    logger = logging.getLogger('museum')

    assert logger.level == logging.INFO
    assert logger.propagate is False
    assert len(logger.handlers) == 2

    logging.getLogger('museum.test').info('hello from the test')
    for handler in logger.handlers:
        handler.flush()
    assert 'hello from the test' in log_file.read_text(encoding='utf-8')


def test_verbose_logging_and_unknown_level():
    configure_logging(EngineConfig(log_level='chatty'))
    assert logging.getLogger('museum').level == logging.WARNING

    configure_logging(EngineConfig(), verbose=True)
    assert logging.getLogger('museum').level == logging.DEBUG
    assert len(logging.getLogger('museum').handlers) == 1
