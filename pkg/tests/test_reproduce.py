import pytest

from arithlab_toolkit.errors import DomainError
from arithlab_toolkit.modforms import forms
from arithlab_toolkit.reproduce import (CHAPTERS, CRITERIA, MODULES, load_fixtures,
                                        reproduce_all, select_criteria)


def _pick(*names):
    return [c for c in CRITERIA if c.name in names]


def test_registry_is_well_formed():
    names = [c.name for c in CRITERIA]
    assert len(names) == len(set(names))
    assert {c.module for c in CRITERIA} <= set(MODULES)
    assert "sidon-sets" in CHAPTERS and "heights" in CHAPTERS


def test_filter_selects_one_module():
    selected = select_criteria(module="elliptic")
    assert {c.name for c in selected} == {"elliptic-fixtures", "hasse-bound", "canonical-height"}
    assert all(c.module == "elliptic" for c in selected)
    assert [c.name for c in select_criteria(chapter="systoles")] == ["systole-floor"]


def test_unknown_filter():
    with pytest.raises(DomainError):
        select_criteria(module="topology")
    with pytest.raises(DomainError):
        select_criteria(chapter="nope")


def test_fixtures_load():
    fx = load_fixtures()
    assert fx["mian_chowla"][:5] == [1, 2, 4, 8, 13]
    assert fx["brandt_11"]["weights"] == [2, 3]


def test_small_run_passes():
    summary = reproduce_all(criteria=_pick("sigma7-identity", "sigma9-identity", "kakeya",
                                           "ramanujan-sums"),
                            num_threads=2, show_progress=False)
    assert summary.all_passed, summary.failures
    assert [r.name for r in summary.results] == ["sigma7-identity", "sigma9-identity",
                                                 "kakeya", "ramanujan-sums"]
    header, rows = summary.rows()
    assert header[3] == "status" and {row[3] for row in rows} == {"PASS"}


def test_broken_sigma3_fails_by_name(monkeypatch):
    original = forms.sigma_table

    def off_by_one(n_max, k):
        table = list(original(n_max, k))
        if k == 3:
            table = [v + 1 if i else v for i, v in enumerate(table)]
        return table

    monkeypatch.setattr(forms, "sigma_table", off_by_one)
    summary = reproduce_all(criteria=_pick("sigma7-identity", "kakeya"), num_threads=1,
                            show_progress=False)
    assert not summary.all_passed
    assert [r.name for r in summary.failures] == ["sigma7-identity"]
    assert "ConsistencyError" in summary.failures[0].error


def test_results_are_seed_deterministic():
    picks = _pick("sumset-inequalities", "ramanujan-sums")
    a = reproduce_all(criteria=picks, seed=3, num_threads=2, show_progress=False)
    b = reproduce_all(criteria=picks, seed=3, num_threads=1, show_progress=False)
    assert a.to_json() == b.to_json()
