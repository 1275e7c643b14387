import json
from pathlib import Path

import pytest

from mmviz import build_lexicon, load_dataset
from mmviz.nlparser import load_keywords

ROOT = Path(__file__).resolve().parent.parent
DATA = ROOT / "data"


@pytest.fixture(scope="session")
def movies_path() -> Path:
    return DATA / "movies.csv"


@pytest.fixture(scope="session")
def movies_csv(movies_path) -> str:
    return movies_path.read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def movies(movies_csv):
    return load_dataset(movies_csv)


@pytest.fixture(scope="session")
def movies_rows(movies):
    return movies.rows


@pytest.fixture(scope="session")
def lexicon(movies):
    return build_lexicon(movies, load_keywords())


@pytest.fixture(scope="session")
def golden_trace():
    records = []
    with open(DATA / "golden_trace.jsonl", encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                records.append(json.loads(line))
    return records


@pytest.fixture(scope="session")
def golden_expected():
    with open(DATA / "golden_expected.json", encoding="utf-8") as fh:
        return json.load(fh)


@pytest.fixture()
def tiny_csv() -> str:
    return (
        "Year,Genre,Gross,Budget,Rating\n"
        "1998,Action,150,60,PG\n"
        "2001,Drama,40,25,R\n"
        "2005,Action,300,110,PG-13\n"
        "2005,Comedy,90,30,PG\n"
        "2010,Drama,,35,R\n"
        "2012,Comedy,220,80,PG-13\n"
    )


@pytest.fixture()
def tiny(tiny_csv):
    return load_dataset(tiny_csv)
