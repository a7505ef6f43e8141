"""
Test import, versioning and the shipped examples of the package.
"""

import pytest


def test_import():
    """
    Test import of the package.
    """
    import freshvar  # noqa: F401 pylint: disable=import-outside-toplevel
    assert freshvar


def test_versioning():
    """
    Test the version of the package.
    """
    import freshvar  # noqa: F401 pylint: disable=import-outside-toplevel
    assert freshvar.__version__


def test_fixture_names():
    """
    Test that the names of the shipped examples are sorted and valid.
    """
    import freshvar  # pylint: disable=import-outside-toplevel
    names = freshvar.fixture_names()
    assert names == sorted(names)
    assert 'cart-client' in names
    for name in names:
        assert freshvar.validate(freshvar.fixture(name)) == []
    with pytest.raises(ValueError):
        freshvar.fixture('a3')
