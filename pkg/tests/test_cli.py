import json
import re
from datetime import datetime, timedelta
from pathlib import Path

import pytest

from tutorlens.cli import main
from tutorlens.logio import save_corpus
from tutorlens.replay import RawAction, replay_student
from tutorlens.synth import demo_config

FIXTURES = Path(__file__).parent.parent / "fixtures"
GOLDEN = json.loads((Path(__file__).parent / "golden" / "build_counts.json").read_text())


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def extract_id(prefix, text):
    match = re.search(rf"\b({prefix}[0-9a-f]{{12}})\b", text)
    assert match, text
    return match.group(1)


@pytest.fixture(scope="module")
def store_dir(tmp_path_factory):
    return str(tmp_path_factory.mktemp("clistore"))


@pytest.fixture(scope="module")
def fixture_corpus_id(store_dir):
    code = main([
        "ingest",
        "--config", str(FIXTURES / "demo_config.json"),
        "--corpus", str(FIXTURES / "corpus87.jsonl"),
        "--store", store_dir,
    ])
    assert code == 0
    meta = json.loads(next(Path(store_dir).glob("corpora/c*/meta.json")).read_text())
    return meta["corpus_id"]


@pytest.fixture(scope="module")
def fixture_model_id(store_dir, fixture_corpus_id):
    code = main([
        "build", "--corpus-id", fixture_corpus_id, "--store", store_dir,
    ])
    assert code == 0
    metas = [
        json.loads(p.read_text()) for p in Path(store_dir).glob("models/m*/meta.json")
    ]
    return next(m["model_id"] for m in metas if m["method"] == "none")


def test_generate_is_deterministic(tmp_path, capsys):
    code, out, _ = run(
        capsys, "generate", "--preset", "demo87", "--out-dir", str(tmp_path / "one"),
        "--seed", "5",
    )
    assert code == 0
    assert "87 students" in out
    code, _, _ = run(
        capsys, "generate", "--preset", "demo87", "--out-dir", str(tmp_path / "two"),
        "--seed", "5",
    )
    assert code == 0
    one = (tmp_path / "one" / "corpus.jsonl").read_bytes()
    two = (tmp_path / "two" / "corpus.jsonl").read_bytes()
    assert one == two
    cfg_one = (tmp_path / "one" / "config.json").read_bytes()
    cfg_two = (tmp_path / "two" / "config.json").read_bytes()
    assert cfg_one == cfg_two


def test_generate_periods_preset(tmp_path, capsys):
    code, out, _ = run(
        capsys, "generate", "--preset", "periods", "--out-dir", str(tmp_path),
    )
    assert code == 0
    assert "102 students" in out


def test_ingest_reports_count_and_is_idempotent(store_dir, fixture_corpus_id, capsys):
    code, out, _ = run(
        capsys, "ingest",
        "--config", str(FIXTURES / "demo_config.json"),
        "--corpus", str(FIXTURES / "corpus87.jsonl"),
        "--store", store_dir,
    )
    assert code == 0
    assert "87 students" in out
    assert extract_id("c", out) == fixture_corpus_id


def test_ingest_missing_corpus_fails(store_dir, capsys):
    code, _, err = run(
        capsys, "ingest",
        "--config", str(FIXTURES / "demo_config.json"),
        "--corpus", str(FIXTURES / "nope.jsonl"),
        "--store", store_dir,
    )
    assert code == 1
    assert "cannot read corpus" in err


def test_ingest_reports_damaged_lines(store_dir, tmp_path, capsys):
    config = demo_config()
    t0 = datetime(2014, 2, 3, 9, 0)
    raws = [
        RawAction("s001", t0 + timedelta(seconds=20 * j), c)
        for j, c in enumerate(config.correct_flow[:5])
    ]
    save_corpus([replay_student(config, raws)], tmp_path / "corpus.jsonl")
    with open(tmp_path / "corpus.jsonl", "a", encoding="utf-8") as fh:
        fh.write("this is not json\n")
    code, out, err = run(
        capsys, "ingest",
        "--config", str(FIXTURES / "demo_config.json"),
        "--corpus", str(tmp_path / "corpus.jsonl"),
        "--store", store_dir,
    )
    assert code == 0
    assert "1 students" in out and "1 skipped" in out
    assert "skipped" in err


def test_build_prints_golden_counts(store_dir, fixture_model_id, capsys):
    code, out, _ = run(
        capsys, "build", "--corpus-id", "cdoesnotexist", "--store", store_dir,
    )
    assert code == 1

    meta = json.loads(
        (Path(store_dir) / "models" / fixture_model_id / "meta.json").read_text()
    )
    cluster = meta["clusters"][0]
    assert meta["n_students"] == GOLDEN["n_students"]
    assert cluster["n_states"] == GOLDEN["n_states"]
    assert cluster["n_edges"] == GOLDEN["n_edges"]


def test_build_xmeans_splits_two_populations(store_dir, tmp_path, capsys):
    config = demo_config()
    flow = config.correct_flow
    t0 = datetime(2014, 2, 3, 9, 0)
    logs = []
    for i in range(30):
        sid = f"p{i:03d}"
        start = t0 + timedelta(hours=i)
        raws = [
            RawAction(sid, start + timedelta(seconds=20 * j), c)
            for j, c in enumerate(flow)
        ]
        logs.append(replay_student(config, raws))
    for i in range(30):
        sid = f"q{i:03d}"
        start = t0 + timedelta(hours=100 + i)
        codes = [flow[1], *flow]
        raws = [
            RawAction(sid, start + timedelta(seconds=20 * j), c)
            for j, c in enumerate(codes)
        ]
        logs.append(replay_student(config, raws))
    from tutorlens.model import save_config

    save_config(config, tmp_path / "config.json")
    save_corpus(logs, tmp_path / "corpus.jsonl")

    code, out, _ = run(
        capsys, "ingest", "--config", str(tmp_path / "config.json"),
        "--corpus", str(tmp_path / "corpus.jsonl"), "--store", str(tmp_path / "st"),
    )
    assert code == 0
    corpus_id = extract_id("c", out)

    code, out, _ = run(
        capsys, "build", "--corpus-id", corpus_id, "--method", "xmeans",
        "--feature", "errors", "--k-max", "4", "--store", str(tmp_path / "st"),
    )
    assert code == 0
    assert "k=2" in out
    assert out.count("30 students") == 2


def test_compare_identical_windows_are_all_zero(store_dir, fixture_model_id, capsys):
    window = ["--from-a", "2000-01-01", "--to-a", "2030-12-31",
              "--from-b", "2000-01-01", "--to-b", "2030-12-31"]
    code, out, _ = run(
        capsys, "compare", "--model-id", fixture_model_id, *window,
        "--json", "--store", store_dir,
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["n_a"] == payload["n_b"] == 87
    assert all(row["difference"] == 0.0 for row in payload["rows"])


def test_compare_two_period_fixture_table(tmp_path, capsys):
    code, _, _ = run(
        capsys, "generate", "--preset", "periods", "--out-dir", str(tmp_path),
    )
    assert code == 0
    code, out, _ = run(
        capsys, "ingest", "--config", str(tmp_path / "config.json"),
        "--corpus", str(tmp_path / "corpus.jsonl"), "--store", str(tmp_path / "st"),
    )
    corpus_id = extract_id("c", out)
    code, out, _ = run(
        capsys, "build", "--corpus-id", corpus_id, "--store", str(tmp_path / "st"),
    )
    model_id = extract_id("m", out)
    code, out, _ = run(
        capsys, "compare", "--model-id", model_id,
        "--from-a", "2013-01-01", "--to-a", "2015-12-31",
        "--from-b", "2016-01-01", "--to-b", "2016-12-31",
        "--changed", "f1t16,f2t37", "--min-percent", "30",
        "--store", str(tmp_path / "st"),
    )
    assert code == 0
    assert "period A: 85 students, period B: 17 students" in out
    assert re.search(r"f2t38\s+f2t37", out)
    assert "Mann-Whitney" in out and "Welch" in out


def test_compare_unknown_model_fails(store_dir, capsys):
    code, _, err = run(
        capsys, "compare", "--model-id", "mmissing",
        "--from-a", "2013-01-01", "--to-a", "2015-12-31",
        "--from-b", "2016-01-01", "--to-b", "2016-12-31",
        "--store", store_dir,
    )
    assert code == 1
    assert "compare failed" in err


def test_export_svg_and_dot(store_dir, fixture_model_id, tmp_path, capsys):
    svg_path = tmp_path / "graph.svg"
    code, out, _ = run(
        capsys, "export", "--model-id", fixture_model_id, "--format", "svg",
        "--out", str(svg_path), "--min-node-freq", "20", "--store", store_dir,
    )
    assert code == 0
    svg = svg_path.read_text()
    assert svg.startswith("<svg") and "<rect" in svg and "</svg>" in svg

    dot_path = tmp_path / "graph.dot"
    code, out, _ = run(
        capsys, "export", "--model-id", fixture_model_id, "--format", "dot",
        "--out", str(dot_path), "--store", store_dir,
    )
    assert code == 0
    assert "digraph" in dot_path.read_text()


def test_invalid_flags_exit_with_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["build", "--corpus-id", "c0", "--feature", "colours"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["generate", "--preset", "nope", "--out-dir", "x"])
    assert exc.value.code == 2
