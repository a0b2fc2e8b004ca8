import dataclasses

import pytest

from mtlspec.corpus import build_corpus, check_entry, corpus_entry, run_corpus


def test_every_entry_passes():
    report = run_corpus()
    assert report.all_passed, "\n".join(report.lines())


def test_report_counts():
    report = run_corpus()
    assert report.passed == report.total == len(build_corpus())


def test_report_lines_format():
    lines = run_corpus().lines()
    assert all(line.startswith("PASS ") for line in lines[:-1])
    assert lines[-1].endswith("corpus entries passed")


def test_tasks_are_all_present():
    ids = {entry.id for entry in build_corpus()}
    for n in range(1, 11):
        assert f"task-{n:02d}" in {i[:7] for i in ids} or any(
            i.startswith(f"task-{n:02d}") for i in ids
        )


def test_entry_lookup():
    entry = corpus_entry("rpm-bound")
    assert entry.expected_formula == "[]_[0,36](rpm < 4000)"
    with pytest.raises(KeyError):
        corpus_entry("no-such-entry")


def test_mutated_entry_fails_alone():
    """Corrupting one expected formula must fail exactly that entry."""
    entries = list(build_corpus())
    victim = next(i for i, e in enumerate(entries) if e.id == "speed-reach")
    entries[victim] = dataclasses.replace(
        entries[victim], expected_formula="<>_[0,99](speed > 100)"
    )
    report = run_corpus(entries)
    failed = [r.entry for r in report.results if not r.ok]
    assert failed == ["speed-reach"]
    assert report.passed == report.total - 1


def test_mutated_class_fails_alone():
    entries = list(build_corpus())
    victim = next(i for i, e in enumerate(entries) if e.id == "speed-stabilize")
    wrong = dataclasses.replace(entries[victim], expected_class=entries[0].expected_class)
    entries[victim] = wrong
    report = run_corpus(entries)
    failed = [r.entry for r in report.results if not r.ok]
    assert failed == ["speed-stabilize"]


def test_check_entry_reports_failure_reasons():
    entry = dataclasses.replace(
        corpus_entry("rpm-bound"), expected_formula="[]_[0,36](rpm < 9999)"
    )
    result = check_entry(entry)
    assert not result.ok
    assert result.failures


def test_strict_flags_match_recognizer():
    for entry in build_corpus():
        result = check_entry(entry)
        assert result.ok, f"{entry.id}: {result.failures}"
