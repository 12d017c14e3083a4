"""Full-text search engine for Afaan Oromo text collections.

Provides an analyzer chain with query-time synonym expansion, a BM25-ranked
inverted index with persistence, spelling suggestion and autosuggest, hit
highlighting with pagination, an HTTP JSON API, and a precision/recall
evaluation harness for measuring the effect of synonym lists.
"""

__version__ = "0.1.0"
