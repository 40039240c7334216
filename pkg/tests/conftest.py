from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parent.parent
CORPUS = ROOT / "fixtures" / "corpus"
SMALL = ROOT / "fixtures" / "small"
GOLDEN = Path(__file__).parent / "golden"
DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def corpus_catalog():
    from lg2lmf.catalog import load_catalog
    return load_catalog((CORPUS / "verbs.catalog").read_bytes())


@pytest.fixture(scope="session")
def corpus_conversion():
    from lg2lmf.pipeline import convert
    return convert(CORPUS / "tables", CORPUS / "classes.csv", CORPUS / "verbs.catalog")


@pytest.fixture(scope="session")
def small_conversion():
    from lg2lmf.pipeline import convert
    return convert(SMALL / "tables", SMALL / "classes.csv", CORPUS / "verbs.catalog")
