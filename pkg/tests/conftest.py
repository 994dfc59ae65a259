import pytest

from jetbound.cli import TABLE_CELLS, cached_report
from jetbound.geometry import GeometrySpec


@pytest.fixture(scope="session")
def table_cache_dir(tmp_path_factory):
    """Warm a cache with every table cell; the heavy cells run exactly once."""
    path = str(tmp_path_factory.mktemp("table-cache"))
    for n, k in TABLE_CELLS:
        cached_report(GeometrySpec.from_token("log", n), k, None, path)
    return path


@pytest.fixture(scope="session")
def table_reports(table_cache_dir):
    reports = {}
    for n, k in TABLE_CELLS:
        report, _ = cached_report(GeometrySpec.from_token("log", n), k, None, table_cache_dir)
        reports[(n, k)] = report
    return reports
