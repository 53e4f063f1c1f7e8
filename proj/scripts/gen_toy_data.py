#!/usr/bin/env python3
"""Generates the bundled toy corpus and embedding file under data/.

Deterministic: rerunning reproduces identical bytes. The corpus is 20
presegmented documents over 5 topics; every document carries a unique
entity word in each sentence so next-sentence prediction is learnable on
a desk-scale budget.
"""
import random
import zlib
from pathlib import Path

SEED = 20240817
OUT = Path(__file__).resolve().parent.parent / "data"

TOPICS = {
    "flood": ["flood", "river", "levee", "rainfall", "evacuation",
              "rescue", "damage", "warning"],
    "election": ["election", "ballot", "candidate", "turnout", "campaign",
                 "debate", "voters", "poll"],
    "comet": ["comet", "telescope", "orbit", "astronomer", "tail",
              "observatory", "perihelion", "sky"],
    "harvest": ["harvest", "wheat", "drought", "farmers", "yield",
                "grain", "irrigation", "soil"],
    "ferry": ["ferry", "harbor", "crossing", "deck", "passengers",
              "captain", "tide", "route"],
}

ENTITIES = [
    "almera", "borvik", "cantoral", "dravelle", "ellsmere",
    "farrowgate", "glenmoor", "hartwick", "ironcliffe", "jesterfield",
    "kelvaston", "lorimar", "marwick", "northbay", "ostrander",
    "pellworth", "quarrytown", "rensford", "silvermoor", "thornbury",
]

VERBS = ["reported", "described", "confirmed", "announced", "watched",
         "recorded", "surveyed", "discussed"]

TEMPLATES = [
    "officials in {e} {v} the {t1} and the {t2} this week",
    "the {e} council {v} new measures for the {t1} after the {t2}",
    "residents of {e} {v} the {t1} near the old {t2}",
    "a spokesman for {e} {v} that the {t1} would affect the {t2}",
    "local reporters in {e} {v} the {t1} alongside the {t2}",
    "the mayor of {e} {v} plans concerning the {t1} and {t2}",
]


def main():
    rng = random.Random(SEED)
    corpus_dir = OUT / "toy"
    corpus_dir.mkdir(parents=True, exist_ok=True)

    topic_names = list(TOPICS)
    vocab = set(VERBS) | set(ENTITIES) | {"officials", "council", "measures",
                                          "residents", "spokesman",
                                          "reporters", "mayor", "plans",
                                          "week"}
    for words in TOPICS.values():
        vocab.update(words)

    for di, entity in enumerate(ENTITIES):
        topic = topic_names[di % len(topic_names)]
        words = TOPICS[topic]
        lines = []
        for si in range(6):
            tmpl = TEMPLATES[si % len(TEMPLATES)]
            t1, t2 = rng.sample(words, 2)
            v = rng.choice(VERBS)
            lines.append(tmpl.format(e=entity, v=v, t1=t1, t2=t2))
        name = corpus_dir / f"d{di + 1:02d}.txt"
        name.write_text("".join(line + "\n" for line in lines))

    # topic-structured 16-dim vectors: dims 0-4 carry the topic signal,
    # the rest is per-word noise
    dim = 16
    lines = []
    for word in sorted(vocab):
        vec = [0.0] * dim
        for ti, tname in enumerate(topic_names):
            if word in TOPICS[tname]:
                vec[ti] = 1.0
        if word in ENTITIES:
            ti = ENTITIES.index(word) % len(topic_names)
            vec[ti] = 0.6
        wrng = random.Random(zlib.crc32(word.encode()) ^ SEED)
        for i in range(dim):
            vec[i] += wrng.uniform(-0.15, 0.15)
        lines.append(word + " " + " ".join(f"{x:.6f}" for x in vec))
    (OUT / "toy_embeddings.txt").write_text("".join(l + "\n" for l in lines))
    print(f"wrote {len(ENTITIES)} documents and {len(vocab)} vectors")


if __name__ == "__main__":
    main()
