"""Coefficient, segment total and page score tests, including oracle and property checks."""

from dataclasses import replace
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from museum.config import EngineConfig
from museum.models.page import PageSnapshot, Segment
from museum.models.query import EMPTY_LEXICON, Query, SynonymLexicon
from museum.models.scores import SegmentScore, VisualWeightTable
from museum.models.track import EvolutionTrack
from museum.services.lexicon import tokenize
from museum.services.profile_store import load_profile
from museum.services.ranking import rank_pages
from museum.services.scorer import (
    actual_freshness,
    evaluate_page,
    evaluate_segment,
    freshness_weight,
    image_weight,
    link_weight,
    page_score,
    profile_weight,
    score_page,
    segment_total,
    synonym_freshness,
    theme_weight,
    visual_weight,
)
from museum.utils.errors import EmptyQuery, NoSegments

import oracle
from conftest import LEXICON, PROFILES, fixture_pages, make_segment, segment_fixture

SOLAR = SynonymLexicon(entries={'solar': {'photovoltaic'}})
POWER = SynonymLexicon(entries={'power': {'energy'}})
CANONICAL_TEXT = {'solar', 'energy', 'panel', 'cost'}

ORACLE_QUERIES = [
    'solar energy', 'wind turbine', 'battery storage', 'price', 'solar panel cost',
    'weather rain', 'power generator', 'energy', 'community funding', 'photovoltaic',
]
ORACLE_PROFILES = [None, 'energy', 'weather']


def query(*terms, lexicon=EMPTY_LEXICON):
    return Query.from_terms(terms, lexicon)


def weights(**entries):
    return VisualWeightTable.from_mapping(entries)


class TestFreshness:

    def test_new_segment_counts_exact_matches(self):
        seg = make_segment(CANONICAL_TEXT)
        assert actual_freshness(seg, query('solar', 'energy')) == 2

    def test_unchanged_segment_is_gated(self):
        seg = make_segment(CANONICAL_TEXT)
        assert actual_freshness(seg, query('solar', 'energy'), prior=make_segment(CANONICAL_TEXT)) == 0

    def test_no_overlap(self):
        assert actual_freshness(make_segment({'solar'}), query('wind')) == 0

    def test_synonym_matches_count_half(self):
        seg = make_segment({'photovoltaic', 'array'})
        assert synonym_freshness(seg, query('solar', 'energy', lexicon=SOLAR)) == Fraction(1, 2)

    def test_no_synonyms_configured(self):
        assert synonym_freshness(make_segment({'photovoltaic'}), query('solar')) == 0

    def test_synonym_freshness_gated(self):
        seg = make_segment({'photovoltaic'})
        q = query('solar', lexicon=SOLAR)
        assert synonym_freshness(seg, q, prior=make_segment({'photovoltaic'})) == 0

    def test_freshness_weight_sums_components(self):
        seg = make_segment(CANONICAL_TEXT | {'photovoltaic', 'array'})
        assert freshness_weight(seg, query('solar', 'energy', lexicon=SOLAR)) == Fraction(5, 2)

    def test_freshness_weight_zero(self):
        assert freshness_weight(make_segment({'panel'}), query('solar')) == 0

    def test_gate_closed_regardless_of_overlap(self):
        seg = make_segment(CANONICAL_TEXT)
        prior = make_segment({'solar', 'weather'})
        assert freshness_weight(seg, query('solar', 'energy'), prior=prior) == 0

    def test_gate_open_when_prior_lacks_query_terms(self):
        seg = make_segment(CANONICAL_TEXT)
        prior = make_segment({'panel', 'cost'})
        assert freshness_weight(seg, query('solar', 'energy'), prior=prior) == 2

    def test_prior_holding_only_a_synonym_closes_gate(self):
        seg = make_segment({'solar'})
        prior = make_segment({'photovoltaic'})
        assert freshness_weight(seg, query('solar', lexicon=SOLAR), prior=prior) == 0


class TestCoefficients:

    def test_theme(self):
        seg = make_segment(CANONICAL_TEXT)
        assert theme_weight(seg, {'solar', 'energy', 'guide'}, query('solar')) == 2

    def test_theme_untitled(self):
        assert theme_weight(make_segment(CANONICAL_TEXT), set(), query('solar')) == 0

    def test_theme_synonym(self):
        seg = make_segment({'energy'})
        assert theme_weight(seg, {'power'}, query('x', lexicon=POWER)) == Fraction(1, 2)

    def test_image(self):
        seg = make_segment(CANONICAL_TEXT, alt={'photovoltaic', 'array'})
        assert image_weight(seg, query('solar', 'energy', lexicon=SOLAR)) == Fraction(1, 2)

    def test_image_absent(self):
        assert image_weight(make_segment(CANONICAL_TEXT), query('solar')) == 0

    def test_image_exact(self):
        assert image_weight(make_segment(alt={'solar'}), query('solar', 'energy')) == 1

    def test_link(self):
        seg = make_segment(CANONICAL_TEXT, links={'solar', 'deals'})
        assert link_weight(seg, query('solar', 'energy')) == 1

    def test_link_absent(self):
        assert link_weight(make_segment(CANONICAL_TEXT), query('solar')) == 0

    def test_link_synonym(self):
        seg = make_segment(links={'photovoltaic'})
        assert link_weight(seg, query('solar', lexicon=SOLAR)) == Fraction(1, 2)

    def test_profile(self):
        assert profile_weight(make_segment(CANONICAL_TEXT), {'energy', 'finance'}) == 1

    def test_profile_anonymous(self):
        assert profile_weight(make_segment(CANONICAL_TEXT), frozenset()) == 0

    def test_profile_synonym(self):
        assert profile_weight(make_segment({'energy'}), {'power'}, POWER) == Fraction(1, 2)

    def test_visual_single_class(self):
        seg = make_segment(CANONICAL_TEXT, spans={'bold': {'solar'}})
        assert visual_weight(seg, query('solar', 'energy'), weights(bold=2)) == 2

    def test_visual_no_markup(self):
        assert visual_weight(make_segment(CANONICAL_TEXT), query('solar'), weights(bold=2)) == 0

    def test_visual_several_classes(self):
        seg = make_segment(CANONICAL_TEXT, spans={'bold': {'solar'}, 'h1': {'energy'}})
        assert visual_weight(seg, query('solar', 'energy'), weights(bold=2, h1=3)) == 5

    def test_visual_unknown_class_scores_zero(self):
        seg = make_segment(CANONICAL_TEXT, spans={'mark': {'solar'}})
        assert visual_weight(seg, query('solar'), weights(bold=2)) == 0

    def test_visual_weight_table_rejects_negative(self):
        with pytest.raises(ValueError):
            weights(bold=-1)

    def test_visual_weight_table_parses_decimals_exactly(self):
        assert weights(h2='2.5').weight('h2') == Fraction(5, 2)


class TestAggregation:

    def test_segment_total_of_merged_canonical_segment(self):
        score = segment_total(Fraction(5, 2), 2, 1, 2, 1, Fraction(1, 2))
        assert score.total == 9

    def test_segment_total_zero(self):
        assert segment_total().total == 0

    def test_segment_total_single_component(self):
        assert segment_total(Fraction(1, 2)).total == Fraction(1, 2)

    def test_page_score_mean(self):
        assert page_score([SegmentScore(total=Fraction(9)), SegmentScore(total=Fraction(1))]) == 5

    def test_page_score_single(self):
        assert page_score([SegmentScore(total=Fraction(7, 3))]) == Fraction(7, 3)

    def test_page_score_zeros(self):
        assert page_score([SegmentScore()] * 3) == 0

    def test_page_score_requires_segments(self):
        with pytest.raises(NoSegments):
            page_score([])


class TestScorePage:

    def test_canonical_fixture(self, lexicon):
        snapshot = segment_fixture('canonical.html')
        q = Query.from_terms(tokenize('solar energy'), lexicon)
        result = score_page(
            snapshot, q, frozenset({'energy', 'finance'}), None, EngineConfig().visual_weights,
        )

        a, b = result.segment_scores
        assert a.score.components() == {
            'freshness': 2, 'theme': 2, 'link': 1, 'visual': 2, 'profile': 1, 'image': Fraction(1, 2),
        }
        assert a.score.total == Fraction(17, 2)
        assert b.score.total == 0
        assert result.page_score == Fraction(17, 4)
        assert result.to_dict()['page_score'] == '4.25'

    def test_no_matching_term_anywhere(self):
        seg = make_segment({'weather', 'rain'})
        snapshot = PageSnapshot('https://example.org/', 10, frozenset(), (seg,))
        result = score_page(snapshot, query('solar'), frozenset(), EvolutionTrack('https://example.org/'), weights())
        assert result.page_score == 0

    def test_scoring_never_mutates_the_track(self, lexicon):
        snapshot = segment_fixture('canonical.html', captured_at=10)
        track = EvolutionTrack(snapshot.url, (snapshot,))
        q = Query.from_terms({'solar'}, lexicon)
        first = score_page(snapshot, q, frozenset(), track, weights(bold=2))
        second = score_page(snapshot, q, frozenset(), track, weights(bold=2))
        assert first == second
        assert track.snapshots == (snapshot,)

    def test_snapshot_is_only_compared_with_earlier_history(self):
        snapshot = segment_fixture('canonical.html', captured_at=10)
        track = EvolutionTrack(snapshot.url, (snapshot,))
        result = score_page(snapshot, query('solar'), frozenset(), track, weights())
        assert result.segment_scores[0].score.freshness == 1

    def test_empty_query_rejected(self):
        snapshot = segment_fixture('canonical.html')
        with pytest.raises(EmptyQuery):
            evaluate_page(snapshot, Query(terms=frozenset()), frozenset(), None, weights())

    def test_snapshot_without_segments_rejected(self):
        snapshot = PageSnapshot('https://example.org/', 10, frozenset(), ())
        with pytest.raises(NoSegments):
            score_page(snapshot, query('solar'), frozenset(), None, weights())

    def test_top_segments_keep_document_order_on_ties(self):
        segments = [
            make_segment({'solar'}, path='/html/body/div[1]'),
            make_segment({'wind'}, path='/html/body/div[2]'),
            make_segment({'solar', 'energy'}, path='/html/body/div[3]'),
            make_segment({'solar'}, path='/html/body/div[4]'),
        ]
        snapshot = PageSnapshot('https://example.org/', 10, frozenset(), segments)
        result = score_page(snapshot, query('solar', 'energy'), frozenset(), None, weights())
        top = result.to_dict(top=3)['segments']
        assert [s['dom_path'] for s in top] == ['/html/body/div[3]', '/html/body/div[1]', '/html/body/div[4]']
        assert result.to_dict(top=3)['page_score'] == result.to_dict()['page_score']


@pytest.mark.parametrize('page', fixture_pages())
def test_engine_matches_oracle_on_fixture_corpus(page, lexicon):
    snapshot = segment_fixture(page)
    table = EngineConfig().visual_weights
    synonyms = oracle.read_lexicon(LEXICON)
    snapshot_doc = snapshot.to_dict()

    for text in ORACLE_QUERIES:
        q = Query.from_terms(tokenize(text), lexicon)
        for profile_id in ORACLE_PROFILES:
            keywords = load_profile(profile_id, PROFILES).keywords
            result = score_page(snapshot, q, keywords, None, table)

            for scored, seg_doc in zip(result.segment_scores, snapshot_doc['segments']):
                expected = oracle.coefficients(
                    seg_doc, snapshot_doc['title_tokens'], q.terms, keywords,
                    dict(table.entries), synonyms,
                )
                assert scored.score.components() == expected, (page, text, profile_id)
                assert scored.score.total == sum(expected.values())

            assert result.page_score == oracle.page_score(
                snapshot_doc, q.terms, keywords, dict(table.entries), synonyms,
            )


# Property checks

VOCAB = ['solar', 'energy', 'panel', 'cost', 'wind', 'power', 'photovoltaic', 'array', 'deals', 'guide']
MARKUP = ['h1', 'h2', 'bold', 'italic', 'mark']

tokens = st.frozensets(st.sampled_from(VOCAB), max_size=6)
rationals = st.fractions(min_value=0, max_value=10, max_denominator=8)


@st.composite
def segments(draw, path='/html/body/div[1]'):
    text = draw(tokens)
    spans = {
        markup: draw(st.frozensets(st.sampled_from(sorted(text)), max_size=3)) if text else frozenset()
        for markup in draw(st.lists(st.sampled_from(MARKUP), unique=True, max_size=3))
    }
    links = draw(st.frozensets(st.sampled_from(sorted(text)), max_size=3)) if text else frozenset()
    return make_segment(text, links=links, alt=draw(tokens), spans=spans, path=path)


@st.composite
def lexicons(draw):
    raw = draw(st.dictionaries(st.sampled_from(VOCAB), tokens, max_size=5))
    return SynonymLexicon(entries={term: syns - {term} for term, syns in raw.items() if syns - {term}})


tables = st.dictionaries(st.sampled_from(MARKUP), rationals, max_size=5).map(VisualWeightTable.from_mapping)
queries = st.frozensets(st.sampled_from(VOCAB), min_size=1, max_size=4)


@settings(max_examples=1000, deadline=None)
@given(segments(), queries, tokens, tokens, tables, lexicons())
def test_total_is_sum_of_components_and_matches_oracle(seg, terms, title, profile, table, lexicon):
    q = Query.from_terms(terms, lexicon)
    history = EvolutionTrack('https://example.org/')
    evaluation = evaluate_segment(seg, q, title, profile, history, table)
    score = evaluation.score

    assert score.total == sum(score.components().values())
    expected = oracle.coefficients(
        seg.to_dict(), title, terms, profile, dict(table.entries),
        {t: set(s) for t, s in lexicon.entries.items()},
    )
    assert score.components() == expected


@settings(max_examples=1000, deadline=None)
@given(st.lists(rationals, min_size=1, max_size=8))
def test_page_score_times_count_is_sum_of_totals(totals):
    scores = [SegmentScore(total=t) for t in totals]
    assert page_score(scores) * len(scores) == sum(totals)


@settings(max_examples=1000, deadline=None)
@given(segments(), queries, tables, st.fractions(min_value=0, max_value=20, max_denominator=10))
def test_visual_weight_scales_linearly(seg, terms, table, factor):
    q = Query.from_terms(terms)
    assert visual_weight(seg, q, table.scaled(factor)) == factor * visual_weight(seg, q, table)


@settings(max_examples=1000, deadline=None)
@given(st.frozensets(st.sampled_from(VOCAB), min_size=1), st.frozensets(st.sampled_from(VOCAB)))
def test_synonym_match_is_half_an_exact_match(matched, extra_terms):
    lexicon = SynonymLexicon(entries={t: {f'{t}-syn'} for t in VOCAB})
    q = Query.from_terms(matched | extra_terms, lexicon)
    renamed = {f'{t}-syn' for t in matched}

    exact = make_segment(matched, links=matched, alt=matched)
    synonym = make_segment(renamed, links=renamed, alt=renamed)

    assert freshness_weight(synonym, q) * 2 == freshness_weight(exact, q)
    assert link_weight(synonym, q) * 2 == link_weight(exact, q)
    assert image_weight(synonym, q) * 2 == image_weight(exact, q)
    assert profile_weight(synonym, matched, lexicon) * 2 == profile_weight(exact, matched, lexicon)


@st.composite
def visual_only_pages(draw):
    pages = []
    for n in range(draw(st.integers(min_value=1, max_value=5))):
        url = f'https://example.org/{n}'
        segs = [draw(segments(path=f'/html/body/div[{i}]')) for i in range(1, draw(st.integers(1, 3)) + 1)]
        segs = [
            Segment(s.fingerprint, s.dom_path, s.text_tokens, frozenset(), frozenset(), s.visual_spans)
            for s in segs
        ]
        earlier = PageSnapshot(url, 1, frozenset(), segs)
        current = PageSnapshot(url, 2, frozenset(), segs)
        pages.append((current, EvolutionTrack(url, (earlier, current))))
    return pages


@settings(max_examples=1000, deadline=None)
@given(visual_only_pages(), queries, tables, st.fractions(min_value=Fraction(1, 10), max_value=10, max_denominator=10))
def test_rank_order_survives_uniform_visual_scaling(pages, terms, table, factor):
    q = Query.from_terms(terms)

    def order(t):
        scored = [score_page(snapshot, q, frozenset(), track, t) for snapshot, track in pages]
        for result in scored:
            for s in result.segment_scores:
                assert s.score.total == s.score.visual
        return [entry.url for entry in rank_pages(scored)]

    assert order(table) == order(table.scaled(factor))


@st.composite
def text_growth(draw):
    """A segment, a query, and a query term absent from the segment text."""
    seg = draw(segments())
    terms = draw(queries)
    missing = sorted(terms - seg.text_tokens)
    assume(missing)
    return seg, terms, draw(st.sampled_from(missing))


@settings(max_examples=1000, deadline=None)
@given(text_growth(), st.one_of(st.none(), segments()), tokens, tokens, tables, lexicons())
def test_adding_a_query_term_to_the_text_never_lowers_text_coefficients(growth, prior, title, profile, table, lexicon):
    seg, terms, term = growth
    q = Query.from_terms(terms, lexicon)
    grown = replace(seg, text_tokens=seg.text_tokens | {term})

    assert freshness_weight(grown, q, prior) >= freshness_weight(seg, q, prior)
    assert profile_weight(grown, profile, lexicon) >= profile_weight(seg, profile, lexicon)
    assert theme_weight(grown, title, q) >= theme_weight(seg, title, q)

    assert link_weight(grown, q) == link_weight(seg, q)
    assert image_weight(grown, q) == image_weight(seg, q)
    assert visual_weight(grown, q, table) == visual_weight(seg, q, table)


@settings(max_examples=1000, deadline=None)
@given(segments(), queries, tokens, lexicons(), st.booleans())
def test_segment_freshness_equals_freshness_weight_against_its_prior(seg, terms, earlier_text, lexicon, full_history):
    q = Query.from_terms(terms, lexicon)
    prior = make_segment(earlier_text)
    history = EvolutionTrack('https://example.org/', (PageSnapshot('https://example.org/', 1, frozenset(), [prior]),))

    evaluation = evaluate_segment(seg, q, frozenset(), frozenset(), history, VisualWeightTable.from_mapping({}),
                                  full_history=full_history)

    assert evaluation.score.freshness == freshness_weight(seg, q, prior)
    assert evaluation.evidence['freshness'].value == freshness_weight(seg, q, prior)
