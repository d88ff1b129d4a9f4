"""
Engine factory for the museum segment relevance engine.
"""
import logging

__version__ = '1.0.0'

logger = logging.getLogger(__name__)


def create_engine(config=None, verbose=False):
    """
    Engine factory pattern.

    Args:
        config: EngineConfig; loaded from the environment and museum.toml
            when None
        verbose: Log at DEBUG level

    Returns:
        Engine instance
    """
    from museum.config import EngineConfig
    from museum.engine import Engine
    from museum.services.lexicon import load_lexicon, read_stopwords
    from museum.services.store import SnapshotStore
    from museum.utils.errors import ConfigError
    from museum.utils.logger import configure_logging

    if config is None:
        config = EngineConfig.load()

    # Initialize logging (do this early so other modules can use it)
    configure_logging(config, verbose=verbose)

    config.validate()

    try:
        stopwords = read_stopwords(config.stopwords_path)
        config = config.with_stopwords(stopwords)
        lexicon = load_lexicon(config.lexicon_path, stopwords)
    except OSError as e:
        raise ConfigError(f'Cannot read engine resources: {e}')

    engine = Engine(
        config=config,
        lexicon=lexicon,
        stopwords=stopwords,
        store=SnapshotStore(config.store_root),
    )

    logger.debug(f'Engine initialized with store {config.store_root}')

    return engine
