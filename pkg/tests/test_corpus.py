"""The shipped scenario library must run clean and round-trip through disk."""

import os

import pytest

from steencalc import ScenarioIncomplete, UnknownGenerator, corpus, dsl


def test_listing_is_stable_and_nonempty():
    names = corpus.scenario_names()
    assert names == sorted(names)
    assert {"MO3", "MO5", "CLASSIFYING2", "CLASSIFYING3", "P2REAL"} <= set(names)


@pytest.mark.parametrize("name", corpus.scenario_names())
def test_every_scenario_passes(name):
    report = corpus.run_scenario(corpus.get_scenario(name))
    assert report.ok, report.render()


@pytest.mark.parametrize("name", corpus.scenario_names())
def test_shipped_data_matches_builder(name):
    path = corpus.data_file_path(name)
    with open(path, encoding="utf-8") as fh:
        on_disk = fh.read()
    assert on_disk == corpus.get_scenario(name).source


@pytest.mark.parametrize("name", corpus.scenario_names())
def test_shipped_data_parses(name):
    with open(corpus.data_file_path(name), encoding="utf-8") as fh:
        ast = dsl.parse(fh.read())
    assert any(r.name == name for r in ast.rings)


def test_write_data_files_round_trips(tmp_path):
    paths = corpus.write_data_files(str(tmp_path))
    assert len(paths) == len(corpus.scenario_names())
    for path in paths:
        name = os.path.splitext(os.path.basename(path))[0]
        with open(path, encoding="utf-8") as fh:
            assert fh.read() == corpus.get_scenario(name).source


def test_env_override_changes_lookup(tmp_path, monkeypatch):
    custom = tmp_path / "TINY.steen"
    custom.write_text(
        "ring TINY {\n"
        "  prime = 2;\n"
        "  gen a deg=1;\n"
        "}\n"
        'apply "Sq^1" to a in TINY expect a^2;\n',
        encoding="utf-8",
    )
    monkeypatch.setenv(corpus.ENV_DATA_DIR, str(tmp_path))
    corpus.get_scenario.cache_clear()
    try:
        s = corpus.get_scenario("TINY")
        assert s.presentation.prime == 2
        assert corpus.run_scenario(s).ok
        with pytest.raises(ScenarioIncomplete):
            corpus.get_scenario("MO3")  # not present in the override dir
    finally:
        monkeypatch.delenv(corpus.ENV_DATA_DIR)
        corpus.get_scenario.cache_clear()


def test_override_requires_matching_ring_name(tmp_path, monkeypatch):
    bad = tmp_path / "ODD.steen"
    bad.write_text("ring OTHER {\n  prime = 2;\n  gen a deg=1;\n}\n", encoding="utf-8")
    monkeypatch.setenv(corpus.ENV_DATA_DIR, str(tmp_path))
    corpus.get_scenario.cache_clear()
    try:
        with pytest.raises(ScenarioIncomplete):
            corpus.get_scenario("ODD")
    finally:
        monkeypatch.delenv(corpus.ENV_DATA_DIR)
        corpus.get_scenario.cache_clear()


def test_resolve_ring_unknown():
    with pytest.raises(UnknownGenerator):
        corpus.resolve_ring("NOSUCHRING")


@pytest.mark.parametrize("name", corpus.scenario_names())
def test_actions_consistent_on_scenario_rings(name):
    pres = corpus.get_scenario(name).presentation
    report = pres.check_action_consistency(12)
    assert report.ok and report.failures == ()


def test_scenario_reports_render_one_line_per_step():
    report = corpus.run_scenario(corpus.get_scenario("MO3"))
    text = report.render()
    assert text.count("[ok  ]") + text.count("[FAIL]") == len(report.steps)
    assert "MO3" in text
