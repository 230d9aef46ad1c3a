import pytest

from solvlen import atlas, grp


@pytest.fixture(scope="session")
def d8data():
    """The derived-length-8 witness; the pipeline is cached module-wide."""
    from solvlen.lift import d8_group
    return d8_group()


@pytest.fixture(scope="session")
def prop8data():
    """The derived-length-7 witness and its series report."""
    handle = atlas.prop8_group(7)
    report = grp.derived_series(handle)
    return handle, report
