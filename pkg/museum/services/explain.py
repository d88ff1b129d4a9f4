"""
Human-readable breakdown of one segment's coefficients.
"""
from museum.models.scores import COEFFICIENTS
from museum.utils.rationals import format_rational

NO_MATCHES = 'no matches'


def _tokens(tokens):
    return ', '.join(sorted(tokens))


def _synonyms(evidence):
    parts = []
    for token in sorted(evidence.synonym):
        sources = evidence.synonym_sources.get(token, ())
        parts.append(f'{token} (syn of {", ".join(sources)})' if sources else token)
    return ', '.join(parts)


def _gate_line(match):
    if match.captured_at is None:
        return 'gated: content pre-existed in the prior version'
    return f'gated: content pre-existed in snapshot {match.captured_at}'


def coefficient_lines(name, evidence):
    """Lines under one coefficient heading."""
    lines = []
    if name == 'freshness' and evidence.gated_by is not None:
        lines.append(_gate_line(evidence.gated_by))
        return lines

    if evidence.empty:
        return [NO_MATCHES]

    if evidence.visual:
        for markup, weight, tokens in evidence.visual:
            lines.append(f'{markup} (x{format_rational(weight)}): {_tokens(tokens)}')
        return lines

    if evidence.exact:
        lines.append(f'exact: {_tokens(evidence.exact)}')
    if evidence.synonym:
        lines.append(f'synonym: {_synonyms(evidence)}')
    return lines


def render_explanation(context, evaluation):
    """
    Render the breakdown of one evaluated segment as plain text.

    Args:
        context: dict with url, captured_at and query terms
        evaluation: SegmentEvaluation

    Returns:
        str: multi-line report ending with a newline
    """
    segment = evaluation.segment
    score = evaluation.score

    body = [
        f'Segment {segment.fingerprint} ({segment.dom_path})',
        f'URL: {context["url"]} @ {context["captured_at"]}',
        f'Query: {" ".join(sorted(context["query"]))}',
        '',
    ]

    for name in COEFFICIENTS:
        body.append(f'{name}: {format_rational(getattr(score, name))}')
        body.extend(f'  {line}' for line in coefficient_lines(name, evaluation.evidence[name]))

    body.append('')
    body.append(f'total: {format_rational(score.total)}')
    return '\n'.join(body) + '\n'


def explanation_dict(context, evaluation):
    """JSON form of the breakdown, with the same values as the text form."""
    segment = evaluation.segment
    score = evaluation.score
    coefficients = {}

    for name in COEFFICIENTS:
        evidence = evaluation.evidence[name]
        entry = {
            'value': format_rational(getattr(score, name)),
            'exact': sorted(evidence.exact),
            'synonym': {
                token: list(evidence.synonym_sources.get(token, ()))
                for token in sorted(evidence.synonym)
            },
        }
        if name == 'visual':
            entry['classes'] = {
                markup: {'weight': format_rational(weight), 'tokens': sorted(tokens)}
                for markup, weight, tokens in evidence.visual
            }
        if evidence.gated_by is not None:
            entry['gated_by'] = evidence.gated_by.captured_at
        coefficients[name] = entry

    return {
        'url': context['url'],
        'captured_at': context['captured_at'],
        'query': sorted(context['query']),
        'fingerprint': segment.fingerprint,
        'dom_path': segment.dom_path,
        'coefficients': coefficients,
        'total': format_rational(score.total),
    }
