"""Rebuilds the committed test fixtures. Run from the repository root:

    python3 fixtures/regenerate.py

Seeds are fixed; the outputs are deterministic and committed so tests can
spot accidental generator drift.
"""

from pathlib import Path

from tutorlens import demo_config, save_config, save_corpus
from tutorlens.synth import synthesize_corpus, synthesize_period_corpus

HERE = Path(__file__).parent

CORPUS87_SEED = 20130304
PERIODS_SEED = 20160115


def main() -> None:
    config = demo_config()
    save_config(config, HERE / "demo_config.json")

    logs = synthesize_corpus(config, 87, seed=CORPUS87_SEED)
    save_corpus(logs, HERE / "corpus87.jsonl")

    before, after = synthesize_period_corpus(config, seed=PERIODS_SEED)
    save_corpus(before + after, HERE / "corpus_periods.jsonl")

    print(f"corpus87: {len(logs)} students")
    print(f"periods: {len(before)} + {len(after)} students")


if __name__ == "__main__":
    main()
