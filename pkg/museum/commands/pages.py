"""
Page commands - segmenting, ingesting and listing snapshots.
"""
import logging

import click

from museum.commands import echo_json, pass_engine

logger = logging.getLogger(__name__)

html_argument = click.argument('html_file', type=click.File('rb'))
url_option = click.option('--url', required=True, help='URL the page was captured from.')
captured_at_option = click.option(
    '--captured-at', required=True,
    help='Capture time: epoch seconds or ISO-8601 (naive values are UTC).',
)


@click.command()
@html_argument
@url_option
@captured_at_option
@pass_engine
def ingest(state, html_file, url, captured_at):
    """
    Segment HTML_FILE ('-' for standard input) and append it to the URL's track.

    Prints {url, captured_at, segment_count}.
    """
    report = state.engine.ingest(html_file.read(), url, captured_at)
    logger.info(f'Ingest of {url} stored {report["segment_count"]} segments')
    echo_json(report)


@click.command()
@html_argument
@url_option
@click.option('--captured-at', default='0', show_default=True,
              help='Capture time recorded in the printed snapshot.')
@pass_engine
def segment(state, html_file, url, captured_at):
    """Print the segmented snapshot of HTML_FILE without storing it."""
    snapshot = state.engine.segment(html_file.read(), url, captured_at)
    echo_json(snapshot.to_dict())


@click.command()
@click.argument('url')
@pass_engine
def history(state, url):
    """List the stored snapshots of URL, oldest first."""
    echo_json({'url': url, 'snapshots': state.engine.history(url)})
