import pytest

from hnil.catalog import CATALOG
from hnil.parser import parse_model


@pytest.fixture(scope="session")
def catalog_models():
    return {name: parse_model(text) for name, text in CATALOG.items()}


@pytest.fixture
def remark(catalog_models):
    return catalog_models["remark-s1s3"]


@pytest.fixture
def cp3(catalog_models):
    return catalog_models["cp3-su-type"]


@pytest.fixture
def hopf(catalog_models):
    return catalog_models["hopf-s7"]


@pytest.fixture
def trivial_s1s3(catalog_models):
    return catalog_models["trivial-s4-s1s3"]
