"""
Services package: segmentation, lexicon, scoring, evolution, storage and profiles.
"""
