"""
Scoring commands - page scores, re-ranking and per-segment explanations.
"""
import logging

import click

from museum.commands import echo_json, pass_engine
from museum.services.explain import explanation_dict, render_explanation
from museum.utils.rationals import format_rational

logger = logging.getLogger(__name__)

profile_option = click.option(
    '--profile', default=None,
    help='Profile file path, or profile id under profiles.root.',
)
at_option = click.option(
    '--at', default=None,
    help='Score the snapshot current at this time (epoch seconds or ISO-8601).',
)


@click.command()
@click.argument('url')
@click.argument('query', nargs=-1, required=True)
@profile_option
@at_option
@click.option('--top', type=click.IntRange(min=1), default=None,
              help='Only list the N highest-scoring segments.')
@pass_engine
def score(state, url, query, profile, at, top):
    """
    Score the latest snapshot of URL for QUERY.

    The page score always covers every segment; --top only trims the
    listed segments.
    """
    result = state.engine.score(url, query, profile=profile, at=at)
    logger.info(f'Scored {url} @ {result.captured_at}: {format_rational(result.page_score)}')
    echo_json(result.to_dict(top=top))


@click.command()
@click.argument('urls', nargs=-1, required=True)
@click.option('--query', '-q', required=True, help='Query text.')
@profile_option
@pass_engine
def rank(state, urls, query, profile):
    """
    Re-rank URLS by page score for a query.

    Ties are broken by URL in lexicographic order.
    """
    ranked = state.engine.rank(query, urls, profile=profile)
    echo_json([entry.to_dict() for entry in ranked])


@click.command()
@click.argument('url')
@click.argument('fingerprint')
@click.option('--query', '-q', required=True, help='Query text.')
@profile_option
@at_option
@click.option('--json', 'as_json', is_flag=True, help='Emit the breakdown as JSON.')
@pass_engine
def explain(state, url, fingerprint, query, profile, at, as_json):
    """Show the tokens behind each coefficient of one segment."""
    context, evaluation = state.engine.explain(url, query, fingerprint, profile=profile, at=at)
    if as_json:
        echo_json(explanation_dict(context, evaluation))
    else:
        click.echo(render_explanation(context, evaluation), nl=False)
