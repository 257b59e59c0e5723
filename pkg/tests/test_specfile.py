"""Specification file parsing and validation."""

import pytest

from entrolab import NotFiniteLengthError, SpecError
from entrolab.specfile import parse_spec


def _write(tmp_path, text, name="ring.spec"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


FULL = """\
# a quotient ring with everything attached
characteristic 3
variables X Y
quotient [1,1]
map [3,0] [0,3]
ideal [2,0] [0,2]
sequence [1,0] [0,1]
"""


def test_parse_full(tmp_path):
    spec = parse_spec(_write(tmp_path, FULL))
    assert spec.characteristic == 3
    assert spec.variables == ("X", "Y")
    assert spec.quotient == ((1, 1),)
    assert spec.map_columns == ((3, 0), (0, 3))
    assert spec.ideal == ((2, 0), (0, 2))
    assert spec.sequence == ((1, 0), (0, 1))
    assert not spec.ring.regular
    assert spec.map.matrix == ((3, 0), (0, 3))
    assert spec.reference_ideal().generators == ((0, 2), (2, 0))
    assert not spec.has_square()


def test_parse_regular_defaults(tmp_path):
    spec = parse_spec(_write(tmp_path, "characteristic 0\nvariables X\nmap [2]\n"))
    assert spec.ring.regular
    assert spec.reference_ideal() is None
    assert spec.koszul_sequence() is None


def test_comments_and_blank_lines(tmp_path):
    text = "\n# header\ncharacteristic 0  # inline\n\nvariables X Y\nmap [2,0] [0,3]\n"
    spec = parse_spec(_write(tmp_path, text))
    assert spec.characteristic == 0


@pytest.mark.parametrize(
    "text,needle",
    [
        ("characteristic 0\nvariables X Y\nmap [2,0] [0,0]\n", "map column 2 is zero"),
        ("characteristic 6\nvariables X\nmap [2]\n", "0 or prime"),
        ("characteristic 0\nvariables X X\nmap [2]\n", "not unique"),
        ("characteristic 0\nvariables X\nmap [2] [3]\n", "needs 1 columns"),
        ("characteristic 0\nvariables X Y\nmap [2,0]\n", "needs 2 columns"),
        ("characteristic 0\nvariables X Y\nmap [2] [0,3]\n", "expected 2"),
        ("characteristic 0\nvariables X Y\nmap [2,0] [0,3]\nbogus 1\n", "unknown field"),
        ("characteristic 0\ncharacteristic 0\nvariables X\nmap [2]\n", "duplicate"),
        ("variables X\nmap [2]\n", "missing required field"),
        ("characteristic 0\nvariables X\nmap two\n", "bracketed"),
        ("characteristic 0\nvariables X\nmap [a]\n", "integer list"),
        ("characteristic 0\nvariables X Y\nquotient [0,0]\nmap [2,0] [0,3]\n",
         "quotient generator 1"),
        ("characteristic 0\nvariables X Y\nmap [2,0] [0,3]\nxi [1,0]\n",
         "needs all of"),
    ],
)
def test_parse_errors(tmp_path, text, needle):
    with pytest.raises(SpecError, match=needle):
        parse_spec(_write(tmp_path, text))


def test_error_messages_are_line_anchored(tmp_path):
    text = "characteristic 0\nvariables X Y\nmap [2,0] [0,0]\n"
    with pytest.raises(SpecError, match=r"line 3: map column 2 is zero"):
        parse_spec(_write(tmp_path, text))


def test_quotient_well_definedness_checked(tmp_path):
    # X -> X^2, Y -> X^3 does not preserve (XY)
    text = "characteristic 0\nvariables X Y\nquotient [1,1]\nmap [2,0] [3,0]\n"
    with pytest.raises(SpecError, match="line 4: .*not well defined"):
        parse_spec(_write(tmp_path, text))


SQUARE = """\
characteristic 2
variables X Y
map [2,0] [0,2]
source_variables U V
source_map [2,0] [0,2]
xi [1,0] [0,1]
"""


def test_parse_square(tmp_path):
    spec = parse_spec(_write(tmp_path, SQUARE))
    assert spec.has_square()
    square = spec.square()
    assert square.source_ring.regular
    assert square.xi_columns == ((1, 0), (0, 1))


def test_square_joining_map_must_be_finite_length(tmp_path):
    text = (
        "characteristic 2\nvariables X Y\nmap [2,0] [0,2]\n"
        "source_variables U\nsource_map [2]\nxi [1,0]\n"
    )
    spec = parse_spec(_write(tmp_path, text))
    with pytest.raises(NotFiniteLengthError):
        spec.square()
