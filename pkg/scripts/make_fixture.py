"""Generate the synthetic MWE-separable corpus fixture.

Writes fixtures/synthetic/{corpus.jsonl, lexicon.tsv, lemmas.tsv,
expected_stats.json}.  The hateful label is carried entirely by the presence
of a verbal-MWE entry, so a linear model over per-category match counts
separates the classes perfectly while the sentence-vector branch stays
uninformative.  expected_stats.json records the generation plan (matches per
tweet, per-entry class counts) as ground truth that never touches the tagger.

The script re-reads its own output through the package and asserts the plan
survives cleaning, lemmatization and tagging unchanged, then prints a summary.
Deterministic: a fixed RNG seed produces byte-identical files.
"""

from __future__ import annotations

import json
import random
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from mwehate.lexicon import MWE5, VMWE5, MweCategory, load_lexicon
from mwehate.mwe_tagger import tag_sentence
from mwehate.lexicon import category_group
from mwehate.textprep import (
    load_corpus,
    load_lemma_dictionary,
    preprocess_corpus,
    DATASET_CONFIGS,
)

OUT_DIR = Path(__file__).resolve().parent.parent / "fixtures" / "synthetic"
SEED = 20240817
N_TWEETS = 300
N_SINGLE_TOKEN = 6   # one word: dropped from train/dev, predictable at test
N_EMPTY = 4          # only removable tokens: empty after cleaning

# (lemmas, category); the first block carries the hateful signal
SIGNAL_ENTRIES = [
    (("blor", "fenk"), MweCategory.VERBAL_IDIOM),
    (("dask", "prun", "veld"), MweCategory.VERBAL_IDIOM),
    (("gresh", "tov"), MweCategory.FULL_VERB_PARTICLE),
    (("mib", "wark"), MweCategory.FULL_LIGHT_VERB_CONSTRUCTION),
    (("snur", "pelt"), MweCategory.INHERENTLY_ADPOSITIONAL_VERB),
    (("quol", "dren"), MweCategory.SEMI_VERB_PARTICLE),
]
DISTRACTOR_ENTRIES = [
    (("trel", "vost"), MweCategory.ADVERB),
    (("plim", "gorv"), MweCategory.ADJECTIVE),
    (("hask", "jorn", "crev"), MweCategory.NOMINAL),
    (("wunt", "lesh"), MweCategory.DISCOURSE),
    (("frim", "dolt"), MweCategory.ADPOSITION_PHRASE),
    (("zim", "kel"), MweCategory.AUXILIARY),
    (("yorv", "nask"), MweCategory.DETERMINER),
]
ALL_ENTRIES = SIGNAL_ENTRIES + DISTRACTOR_ENTRIES

FILLERS = ["norp", "welt", "brack", "omple", "jint", "saff", "lome", "tund",
           "virp", "chag", "melk", "dorf", "spen", "glip", "harn"]

# surface forms per lemma beyond the identity; suffix rules or the lemma
# dictionary must map each back to its lemma
SURFACE_VARIANTS = {
    "blor": ["blors", "blorn"],
    "fenk": ["fenked"],
    "gresh": ["greshes"],
    "tov": ["tovs"],
    "mib": ["mibbing"],
    "prun": ["prunned"],
    "quol": ["quolling"],
    "trel": ["trelly"],
}
LEMMA_DICT_ROWS = [
    ("blorn", "blor"),
    ("mibbing", "mib"),
    ("prunned", "prun"),
    ("quolling", "quol"),
    ("trelly", "trel"),
]


def check_vocabulary():
    member = {l for lemmas, _ in ALL_ENTRIES for l in lemmas}
    assert len(member) == sum(len(lemmas) for lemmas, _ in ALL_ENTRIES), \
        "entry lemma sets must be pairwise disjoint"
    assert member.isdisjoint(FILLERS), "fillers must not be entry lemmas"


def realize(lemma: str, rng: random.Random) -> str:
    surface = lemma
    variants = SURFACE_VARIANTS.get(lemma)
    if variants and rng.random() < 0.3:
        surface = rng.choice(variants)
    r = rng.random()
    if r < 0.05:
        surface = surface.upper()
    elif r < 0.15:
        surface = surface.capitalize()
    return surface


def noise_token(rng: random.Random) -> str:
    n = rng.randrange(1000)
    forms = [
        f"@u{n}", f"#t{n}", f"http://x{n}.example/p",
        f"https://y{n}.example", f"www.z{n}.example",
        f".@v{n}", f"(http://q{n}.example)",
    ]
    return rng.choice(forms)


def build_tweet(i: int, rng: random.Random):
    """Returns (lemmas, injected entry indices, label)."""
    signal = i % 2 == 0
    injections: list[int] = []
    if signal:
        injections.append(ALL_ENTRIES.index(rng.choice(SIGNAL_ENTRIES)))
    if rng.random() < (0.35 if signal else 0.5):
        injections.append(ALL_ENTRIES.index(rng.choice(DISTRACTOR_ENTRIES)))
    segments = []
    for entry_idx in injections:
        lemmas = list(ALL_ENTRIES[entry_idx][0])
        if rng.random() < 0.4:
            gap_at = rng.randrange(1, len(lemmas))
            lemmas = lemmas[:gap_at] + [rng.choice(FILLERS)] + lemmas[gap_at:]
        segments.append((entry_idx, lemmas))
    target_len = rng.randint(6, 12)
    n_fill = max(target_len - sum(len(s) for _, s in segments), 1)
    items: list[tuple[int | None, list[str]]] = [
        (None, [rng.choice(FILLERS)]) for _ in range(n_fill)
    ]
    for segment in segments:
        items.insert(rng.randint(0, len(items)), segment)
    lemmas: list[str] = []
    placed: list[tuple[int, tuple[int, ...]]] = []
    for entry_idx, seg in items:
        if entry_idx is not None:
            member = set(ALL_ENTRIES[entry_idx][0])
            positions = tuple(
                len(lemmas) + j for j, l in enumerate(seg) if l in member
            )
            placed.append((entry_idx, positions))
        lemmas.extend(seg)
    return lemmas, placed, ("hateful" if signal else "nonhateful")


def main() -> None:
    check_vocabulary()
    rng = random.Random(SEED)
    OUT_DIR.mkdir(parents=True, exist_ok=True)

    lexicon_text = "".join(
        f"{' '.join(lemmas)}\t{category.value}\n" for lemmas, category in ALL_ENTRIES
    )
    (OUT_DIR / "lexicon.tsv").write_text(lexicon_text, encoding="utf-8")
    lemmas_text = "".join(f"{tok}\t{lem}\n" for tok, lem in LEMMA_DICT_ROWS)
    (OUT_DIR / "lemmas.tsv").write_text(lemmas_text, encoding="utf-8")

    rows = []
    plan: dict[str, list[tuple[int, tuple[int, ...]]]] = {}
    plan_lemmas: dict[str, list[str]] = {}
    entry_counts = [[0, 0] for _ in ALL_ENTRIES]  # [nonhateful, hateful]
    histogram: dict[int, int] = {}
    n_normal = N_TWEETS - N_SINGLE_TOKEN - N_EMPTY
    for i in range(N_TWEETS):
        tweet_id = f"syn{i:03d}"
        if i < n_normal:
            lemmas, placed, label = build_tweet(i, rng)
        elif i < n_normal + N_SINGLE_TOKEN:
            lemmas, placed, label = [rng.choice(FILLERS)], [], "nonhateful"
        else:
            lemmas, placed, label = [], [], "nonhateful"
        surface = [realize(l, rng) for l in lemmas]
        n_noise = rng.randint(2, 4) if not lemmas else rng.randint(0, 2)
        for _ in range(n_noise):
            surface.insert(rng.randint(0, len(surface)), noise_token(rng))
        rows.append({"id": tweet_id, "text": " ".join(surface), "label": label})
        plan[tweet_id] = placed
        plan_lemmas[tweet_id] = lemmas
        histogram[len(placed)] = histogram.get(len(placed), 0) + 1
        for entry_idx, _ in placed:
            entry_counts[entry_idx][1 if label == "hateful" else 0] += 1

    corpus_text = "".join(json.dumps(r, sort_keys=True) + "\n" for r in rows)
    (OUT_DIR / "corpus.jsonl").write_text(corpus_text, encoding="utf-8")

    expected = {
        "corpus_size": N_TWEETS,
        "histogram": {str(k): v for k, v in sorted(histogram.items())},
        "entries": [
            {
                "lemmas": " ".join(lemmas),
                "category": category.value,
                "nonhateful": entry_counts[idx][0],
                "hateful": entry_counts[idx][1],
            }
            for idx, (lemmas, category) in enumerate(ALL_ENTRIES)
        ],
    }
    (OUT_DIR / "expected_stats.json").write_text(
        json.dumps(expected, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )

    verify(plan, plan_lemmas)
    n_hateful = sum(1 for r in rows if r["label"] == "hateful")
    print(f"wrote {N_TWEETS} tweets ({n_hateful} hateful) to {OUT_DIR}")
    print(f"histogram: {dict(sorted(histogram.items()))}")


def verify(plan, plan_lemmas) -> None:
    """Re-read everything through the package and check the plan survived."""
    with open(OUT_DIR / "lexicon.tsv", encoding="utf-8") as fh:
        lexicon = load_lexicon(fh)
    with open(OUT_DIR / "lemmas.tsv", encoding="utf-8") as fh:
        lemma_dict = load_lemma_dictionary(fh)
    with open(OUT_DIR / "corpus.jsonl", encoding="utf-8") as fh:
        raw = load_corpus(fh, DATASET_CONFIGS["hateval"])
    assert len(raw) == N_TWEETS
    clean = preprocess_corpus(raw, lemma_dict)
    group = category_group("mweall")
    for tweet in clean:
        assert list(tweet.lemmas) == plan_lemmas[tweet.id], \
            f"{tweet.id}: lemmas diverged from plan"
        tagged = tag_sentence(tweet.lemmas, lexicon, group)
        got = sorted((m.entry_id, m.token_positions) for m in tagged.matches)
        assert got == sorted(plan[tweet.id]), f"{tweet.id}: matches diverged"
    print("verification passed: lemmas and matches equal the generation plan")


if __name__ == "__main__":
    main()
