"""
Seed the snapshot store with a small demo corpus of evolving pages.
"""
import os
import sys

# Add parent directory to path
sys.path.insert(0, os.path.abspath(os.path.dirname(__file__)))

from museum import create_engine  # noqa: E402
from museum.utils.errors import MuseumError, NonMonotonicTimestamp  # noqa: E402


def _page(title, *blocks):
    body = '\n'.join(f'<div>{block}</div>' for block in blocks)
    return f'<html><head><title>{title}</title></head><body>\n{body}\n</body></html>'


def seed_corpus():
    """Ingest every demo snapshot that is not already stored."""

    solar_intro = (
        '<h2>Solar energy at home</h2><p><b>Solar</b> panel cost keeps falling while '
        'panel efficiency rises every single year across most markets</p>'
    )
    solar_deals = (
        '<a href="/deals">Current solar panel deals</a> and battery storage offers '
        'from installers near you this season <img src="/a.png" alt="Photovoltaic roof array">'
    )
    weather = 'Weather report tomorrow brings rain clouds across northern hills and valleys'

    corpus = [
        # Solar guide: intro is stable, deals block appears in the second capture
        {
            "url": "https://example.org/solar-guide",
            "captured_at": 1700000000,
            "html": _page('Solar Energy Guide', solar_intro, weather),
        },
        {
            "url": "https://example.org/solar-guide",
            "captured_at": 1700086400,
            "html": _page('Solar Energy Guide', solar_intro, solar_deals, weather),
        },
        {
            "url": "https://example.org/wind-power",
            "captured_at": 1700000000,
            "html": _page(
                'Wind Power Basics',
                '<h1>Wind turbine basics</h1><p>Every <i>turbine</i> converts breeze into '
                'electrical power through a generator housed high above ground</p>',
                '<p>Energy price comparisons between wind farms and coal plants show steady '
                'cost decline over the past decade</p>',
            ),
        },
        {
            "url": "https://example.org/weather",
            "captured_at": 1700000000,
            "html": _page('Daily Weather', weather, weather.replace('northern', 'southern')),
        },
    ]

    print("Starting corpus seeding...")

    engine = create_engine()
    added = 0

    for entry in corpus:
        try:
            report = engine.ingest(entry['html'], entry['url'], entry['captured_at'])
        except NonMonotonicTimestamp:
            print(f"Snapshot {entry['url']} @ {entry['captured_at']} already stored, skipping...")
            continue
        except MuseumError as e:
            print(f"\n❌ Error seeding corpus: {e.message}")
            return False

        added += 1
        print(f"Added snapshot: {report['url']} @ {report['captured_at']} "
              f"({report['segment_count']} segments)")

    urls = sorted({entry['url'] for entry in corpus})
    print(f"\n✅ Successfully seeded {added} snapshots!")
    print(f"\nStore Summary ({engine.store.root}):")
    for url in urls:
        print(f"- {url}: {len(engine.history(url))} snapshots")

    return True


if __name__ == '__main__':
    sys.exit(0 if seed_corpus() else 1)
