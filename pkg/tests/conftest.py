from __future__ import annotations

from pathlib import Path

import pytest

from kbdial.kb import KnowledgeBase, SchemaProfile, load_ntriples

DATA_DIR = Path(__file__).resolve().parents[1] / "src" / "kbdial" / "data"
GOLDEN_DIR = Path(__file__).resolve().parent / "golden"
FIXTURE_DIR = Path(__file__).resolve().parent / "fixtures"


@pytest.fixture(scope="session")
def toy_kb() -> KnowledgeBase:
    return load_ntriples(DATA_DIR / "kb" / "toy_freebase.nt", SchemaProfile.FREEBASE_LIKE)


@pytest.fixture(scope="session")
def movies_kb() -> KnowledgeBase:
    return load_ntriples(DATA_DIR / "kb" / "movies_freebase.nt", SchemaProfile.FREEBASE_LIKE)


@pytest.fixture(scope="session")
def wikidata_kb() -> KnowledgeBase:
    return load_ntriples(DATA_DIR / "kb" / "toy_wikidata.nt", SchemaProfile.WIKIDATA_LIKE)
