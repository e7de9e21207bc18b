#!/usr/bin/python3

import sys

import pytest

from zigrand._cli import __main__ as cli_main


class CliRunner:
    def __init__(self, monkeypatch, capsys):
        self.monkeypatch = monkeypatch
        self.capsys = capsys

    def __call__(self, argv=""):
        """Run the CLI with `argv` and return the exit code, stdout and stderr."""
        self.monkeypatch.setattr(sys, "argv", ["zigrand"] + argv.split())
        with pytest.raises(SystemExit) as exc:
            cli_main.main()
        out, err = self.capsys.readouterr()
        return exc.value.code, out, err


@pytest.fixture
def cli(monkeypatch, capsys, config):
    yield CliRunner(monkeypatch, capsys)
