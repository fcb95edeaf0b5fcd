import pytest

from mtcalc import fusion_data
from mtcalc import diagonal_frobenius

BUILTINS = fusion_data.BUILTIN_NAMES


@pytest.fixture(scope="session")
def categories():
    return {name: fusion_data.builtin_category(name) for name in BUILTINS}


@pytest.fixture(scope="session")
def algebras(categories):
    return {
        name: diagonal_frobenius.build_diagonal_algebra(data)
        for name, data in categories.items()
    }
