import math

import pytest

from twistguide import cross_section as cs, twist as tw
from twistguide.config import RunConfig, as_text, config_keys, parse_config, with_overrides
from twistguide.errors import ConfigError


def test_defaults():
    cfg = RunConfig()
    assert cfg.beta == 1.5 and cfg.c == 0.5 and cfg.L == 20 and cfg.nx == 2000 and cfg.modes == 9
    assert cfg.section() == cs.Rectangle(math.pi, math.pi)
    assert cfg.twist() == tw.Tanh(0.5, math.pi / 2)


def test_parse_and_round_trip():
    text = "beta = 0.9\ntwist.c = 1.0  # comment\n\ndomain.nx = 500\noutput.format = csv\n"
    cfg = parse_config(text)
    assert (cfg.beta, cfg.c, cfg.nx, cfg.out_format) == (0.9, 1.0, 500, "csv")
    assert parse_config(as_text(cfg)) == cfg


def test_bump_and_tabulated(tmp_path):
    cfg = parse_config("twist.kind = bump\ntwist.c = 0.7\ntwist.R = 3\n")
    assert cfg.twist() == tw.Bump(0.7, 3.0, math.pi / 2)
    path = tmp_path / "t.txt"
    path.write_text("-1 0 0\n0 0.5 1\n1 1 0\n")
    cfg = parse_config(f"twist.kind = tabulated\ntwist.file = {path}\n")
    assert isinstance(cfg.twist(), tw.Tabulated)


@pytest.mark.parametrize("text,line,key", [
    ("beta = 1\nfoo = 2\n", 2, "foo"),
    ("beta = abc\n", 1, "beta"),
    ("\n\nbeta = nan\n", 3, "beta"),
    ("domain.nx = 2.5\n", 1, "domain.nx"),
    ("modes = 9\nbeta = -1\n", 2, "beta"),
    ("twist.kind = spiral\n", 1, "twist.kind"),
])
def test_errors_carry_line_and_key(text, line, key):
    with pytest.raises(ConfigError) as info:
        parse_config(text)
    assert info.value.line == line and info.value.key == key


def test_missing_equals():
    with pytest.raises(ConfigError) as info:
        parse_config("beta 1.5\n")
    assert info.value.line == 1


def test_overrides_validate():
    cfg = with_overrides(RunConfig(), beta=0.9, c=None)
    assert cfg.beta == 0.9 and cfg.c == 0.5
    with pytest.raises(ConfigError):
        with_overrides(RunConfig(), modes=0)


def test_key_list():
    keys = config_keys()
    assert "domain.L" in keys and "cross_section.mask" in keys and keys == sorted(keys)
