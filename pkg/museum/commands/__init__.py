"""
Commands package initialization.
Builds the click group and registers every command module on it.
"""
from pathlib import Path

import click

from museum import __version__, create_engine
from museum.config import EngineConfig
from museum.services.store import dump_json
from museum.utils.errors import register_error_handlers


class EngineContext:
    """Lazily created engine shared by the command that runs."""

    def __init__(self, config_path=None, store=None, verbose=False):
        self.config_path = config_path
        self.store = store
        self.verbose = verbose
        self._engine = None

    @property
    def engine(self):
        if self._engine is None:
            store_root = Path(self.store) if self.store else None
            config = EngineConfig.load(self.config_path, overrides={'store_root': store_root})
            self._engine = create_engine(config, verbose=self.verbose)
        return self._engine


pass_engine = click.make_pass_decorator(EngineContext)


@click.group()
@click.option('--config', 'config_path', type=click.Path(dir_okay=False),
              help='Config file (default: $MUSEUM_CONFIG or ./museum.toml).')
@click.option('--store', type=click.Path(file_okay=False),
              help='Snapshot store directory; overrides store.root and $MUSEUM_STORE.')
@click.option('-v', '--verbose', is_flag=True, help='Log at DEBUG level to standard error.')
@click.version_option(version=__version__, message='%(version)s')
@click.pass_context
def cli(ctx, config_path, store, verbose):
    """Segment-level relevance scoring for evolving web pages."""
    ctx.obj = EngineContext(config_path, store, verbose)


def echo_json(data):
    """Deterministic JSON on standard output."""
    click.echo(dump_json(data), nl=False)


from museum.commands.pages import history, ingest, segment  # noqa: E402
from museum.commands.scoring import explain, rank, score  # noqa: E402

for command in (ingest, segment, history, score, rank, explain):
    cli.add_command(command)

register_error_handlers(cli)

__all__ = ['cli', 'pass_engine', 'echo_json']
