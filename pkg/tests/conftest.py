from pathlib import Path

import pytest

from src.core.aut_parsers import load_automorphism
from src.core.group_parsers import parse_group_document

FIXTURES = Path(__file__).parent / "fixtures"


def load_document(name: str):
    return parse_group_document((FIXTURES / name).read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def g1_doc():
    return load_document("g1.grp")


@pytest.fixture(scope="session")
def g2_doc():
    return load_document("g2.grp")


@pytest.fixture(scope="session")
def g1(g1_doc):
    return g1_doc.spec


@pytest.fixture(scope="session")
def g2(g2_doc):
    return g2_doc.spec


@pytest.fixture(scope="session")
def phi1(g1_doc):
    return load_automorphism(g1_doc, "phi1")


@pytest.fixture(scope="session")
def conj_ab(g1_doc):
    return load_automorphism(g1_doc, "conj_ab")


@pytest.fixture(scope="session")
def inner_t(g1_doc):
    return load_automorphism(g1_doc, "inner_t")


@pytest.fixture(scope="session")
def inner_t2(g1_doc):
    return load_automorphism(g1_doc, "inner_t2")


@pytest.fixture(scope="session")
def identity_g1(g1_doc):
    return load_automorphism(g1_doc, "identity")


@pytest.fixture(scope="session")
def phi2(g2_doc):
    return load_automorphism(g2_doc, "phi2")
