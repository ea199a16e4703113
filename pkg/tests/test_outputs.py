"""Tests for atomic output writes."""

from __future__ import annotations

from cellplan.outputs import write_text


def test_write_text_creates_parents(tmp_path):
    path = write_text(tmp_path / "a" / "b" / "out.txt", "line\n")
    assert path.read_bytes() == b"line\n"
    assert not list(path.parent.glob("*.tmp"))


def test_write_text_replaces(tmp_path):
    path = tmp_path / "out.txt"
    write_text(path, "old")
    write_text(path, "new")
    assert path.read_text() == "new"


def test_newlines_are_kept(tmp_path):
    path = write_text(tmp_path / "out.txt", "a\nb\n")
    assert b"\r" not in path.read_bytes()
