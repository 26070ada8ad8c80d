import pytest

from groupapprox.catalog import (
    CATALOG_DIR_ENV,
    builtin_group,
    load_catalog_file,
    parse_catalog,
    resolve_group,
)
from groupapprox.errors import ParseError

DEMO = """
# comment line
Z3   generated   3  (1 2 3)
K4   generated   4  (1 2)(3 4), (1 3)(2 4)
S4   symmetric   4
A5   alternating 5
P    product     Z3 K4
"""


class TestParseCatalog:
    def test_kinds_and_orders(self):
        cat = parse_catalog(DEMO)
        assert list(cat) == ["Z3", "K4", "S4", "A5", "P"]
        assert cat["Z3"].order() == 3
        assert cat["K4"].order() == 4
        assert cat["S4"].order() == 24
        assert cat["A5"].order() == 60
        assert cat["P"].order() == 12

    def test_duplicate_name(self):
        with pytest.raises(ParseError) as err:
            parse_catalog("Z2 generated 2 (1 2)\nZ2 symmetric 2\n")
        assert err.value.line == 2

    def test_unknown_kind(self):
        with pytest.raises(ParseError):
            parse_catalog("G weird 3\n")

    def test_bad_degree(self):
        with pytest.raises(ParseError):
            parse_catalog("G symmetric x\n")

    def test_unknown_product_reference(self):
        with pytest.raises(ParseError):
            parse_catalog("P product Z9\n")

    def test_generator_degree_mismatch(self):
        with pytest.raises(ParseError):
            parse_catalog("G generated 3 (1 4)\n")


class TestResolution:
    def test_builtins(self):
        assert builtin_group("S5").order() == 120
        assert builtin_group("A4").order() == 12
        assert builtin_group("Z6").order() == 6
        assert builtin_group("Q8") is None

    def test_catalog_wins_over_builtin(self):
        cat = parse_catalog("S4 generated 2 (1 2)\n")
        assert resolve_group("S4", [cat]).order() == 2

    def test_unknown_name(self):
        with pytest.raises(ParseError):
            resolve_group("NOPE", [])

    def test_env_directory(self, tmp_path, monkeypatch):
        (tmp_path / "extra.catalog").write_text("D4 generated 4 (1 2 3 4), (1 3)\n")
        monkeypatch.setenv(CATALOG_DIR_ENV, str(tmp_path))
        assert resolve_group("D4", []).order() == 8

    def test_file_loader(self, tmp_path):
        path = tmp_path / "demo.catalog"
        path.write_text(DEMO)
        cat = load_catalog_file(path)
        assert cat["P"].order() == 12
