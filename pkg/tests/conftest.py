from pathlib import Path

import pytest

from air.analysis import AnalyzerConfig, parse_stopword_file, parse_synonym_rules
from air.index import Index, build_index

DATA_DIR = Path(__file__).resolve().parent.parent / "data"


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture(scope="session")
def stopwords() -> frozenset[str]:
    return parse_stopword_file((DATA_DIR / "stopwords_ao.txt").read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def synonym_table():
    return parse_synonym_rules((DATA_DIR / "synonyms_ao.txt").read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def analyzer_config(stopwords, synonym_table) -> AnalyzerConfig:
    """Sample analyzer: stopwords plus the demonstration thesaurus."""
    return AnalyzerConfig(stopwords=stopwords, synonyms=synonym_table)


@pytest.fixture(scope="session")
def plain_config(stopwords) -> AnalyzerConfig:
    """Same stopwords, no synonyms."""
    return AnalyzerConfig(stopwords=stopwords, synonyms=None)


@pytest.fixture(scope="session")
def sample_index(analyzer_config) -> Index:
    """The shipped twenty-document corpus, committed once per session."""
    return build_index(DATA_DIR / "corpus", analyzer_config)
