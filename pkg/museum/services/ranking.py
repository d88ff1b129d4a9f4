"""
Search result re-ranking by page score.
"""
from dataclasses import dataclass

from museum.utils.rationals import format_rational


@dataclass(frozen=True)
class RankedPage:
    rank: int
    url: str
    page_score: object
    captured_at: int

    def to_dict(self):
        return {
            'rank': self.rank,
            'url': self.url,
            'captured_at': self.captured_at,
            'page_score': format_rational(self.page_score),
        }


def rank_pages(page_scores):
    """
    Order PageScores by page_score descending, ties by URL ascending.

    Returns:
        list of RankedPage, rank starting at 1
    """
    ordered = sorted(page_scores, key=lambda ps: (-ps.page_score, ps.url))
    return [
        RankedPage(rank=i, url=ps.url, page_score=ps.page_score, captured_at=ps.captured_at)
        for i, ps in enumerate(ordered, start=1)
    ]
