#!/usr/bin/env python3
"""Regenerates the synthetic English corpus and its ground-truth statistics.

Gold keywords are planted by construction: verbatim phrases, plural variants
that only match after stemming, phrases whose words never appear adjacent, and
invented words that never appear. The expected counts are checked against an
independent Porter implementation (nltk) when it is installed.
"""
import json
import random
import re
import sys
from pathlib import Path

OUT = Path(__file__).resolve().parent
SEED = 20240611
N_DOCS = 50

NOUNS = ["network", "river", "market", "engine", "garden", "harbor", "council", "bridge", "farmer",
         "station", "forest", "signal", "vaccine", "museum", "budget", "tunnel", "railway", "factory",
         "library", "election", "festival", "mountain", "teacher", "airport", "hospital", "satellite"]
ADJECTIVES = ["regional", "digital", "coastal", "public", "ancient", "urban", "national", "rural",
              "electric", "northern", "local", "central"]
FILLER = ["report", "officials", "week", "plan", "people", "city", "year", "group", "change", "project"]
VERBS = ["supports", "describes", "announced", "reviewed", "expanded", "opened", "discussed", "funded"]
STOP = ["the", "a", "of", "in", "and", "for", "with", "on", "to", "by"]
INVENTED = ["zorvex", "quillbrat", "fenmarrow", "glintspur", "vashkettle", "drumquist"]


def sentence(rng, topic_phrases, plurals):
    words = [rng.choice(["The", "A", "Local", "New"]), rng.choice(FILLER), rng.choice(VERBS), rng.choice(STOP)]
    phrase = rng.choice(topic_phrases)
    if phrase in plurals and rng.random() < 0.7:
        phrase = phrase + "s"
    words.append(phrase)
    if rng.random() < 0.5:
        words += [rng.choice(["and", "with", "for"]), rng.choice(STOP), rng.choice(NOUNS)]
    if rng.random() < 0.3:
        words += [",", rng.choice(FILLER)]
    text = " ".join(words).replace(" ,", ",")
    return text + "."


def make_doc(rng, i):
    n_topics = rng.randint(2, 3)
    topics = []
    for _ in range(n_topics):
        if rng.random() < 0.6:
            topics.append(rng.choice(ADJECTIVES) + " " + rng.choice(NOUNS))
        else:
            topics.append(rng.choice(NOUNS))
    topics = list(dict.fromkeys(topics))
    # Plural variants: the gold phrase is singular, the text says "...s".
    plurals = {t for t in topics if rng.random() < 0.4}
    n_sent = rng.randint(4, 9)
    sentences = [sentence(rng, topics, plurals) for _ in range(n_sent)]
    # Guarantee every topic appears at least once, singular or plural.
    for t in topics:
        form = t + "s" if t in plurals else t
        sentences.append(f"Officials described the {form} again.")
    text = " ".join(sentences)

    kind = i % 10
    keywords = []
    if kind == 0:
        keywords = []                                   # no gold keywords
    elif kind == 1:
        keywords = [rng.choice(INVENTED) + " " + rng.choice(NOUNS), rng.choice(INVENTED)]  # nothing present
    else:
        keywords = list(topics)
        if rng.random() < 0.6:
            keywords.append(rng.choice(INVENTED))
        if rng.random() < 0.5:
            # Two words that never stand next to each other in this order.
            keywords.append("garden " + rng.choice(INVENTED))
        if rng.random() < 0.3:
            keywords.append(keywords[0].upper())        # duplicate after lowercasing
    doc = {"id": f"syn-{i:03d}", "text": text, "keywords": keywords}
    if i % 4 == 0:
        doc = {"id": doc["id"], "title": f"{topics[0].title()} update", "text": text, "keywords": keywords}
    return doc


def tokens(text):
    return re.findall(r"\w+|[^\w\s]", text.lower())


def stemmed(seq):
    try:
        from nltk.stem.porter import PorterStemmer
    except ImportError:
        return None
    st = PorterStemmer(mode=PorterStemmer.ORIGINAL_ALGORITHM)
    return [st.stem(w) if w.isalnum() else w for w in seq]


def contains(hay, needle):
    n = len(needle)
    return any(hay[i:i + n] == needle for i in range(len(hay) - n + 1))


def fnv1a64(text):
    h = 14695981039346656037
    for b in text.encode("utf-8"):
        h ^= b
        h = (h * 1099511628211) % (1 << 64)
    return f"fnv1a64:{h:016x}"


def vector(key, dim=16):
    rng = random.Random(key)
    return [round(rng.uniform(-1.0, 1.0), 6) for _ in range(dim)]


def write_embeddings(docs):
    """Document texts are keyed by hash, words by their literal surface."""
    lines = []
    words = set()
    for d in docs:
        full = (d["title"] + "\n" + d["text"]) if "title" in d else d["text"]
        lines.append(fnv1a64(full) + "\t" + " ".join(f"{v:.6f}" for v in vector(full)))
        words.update(re.findall(r"[^\W\d_]\w*", full))
    for w in sorted(words):
        lines.append(w + "\t" + " ".join(f"{v:.6f}" for v in vector(w)))
    with open(OUT / "en.embeddings.tsv", "w", encoding="utf-8") as f:
        f.write("\n".join(lines) + "\n")


def main():
    rng = random.Random(SEED)
    docs = [make_doc(rng, i) for i in range(N_DOCS)]
    n_keywords = sum(len(d["keywords"]) for d in docs)
    # Present by construction: everything except invented words and "garden <invented>".
    n_present = sum(1 for d in docs for k in d["keywords"]
                    if not any(w in k.lower().split() for w in INVENTED))
    check = 0
    for d in docs:
        full = (d["title"] + "\n" + d["text"]) if "title" in d else d["text"]
        hay = stemmed(tokens(full))
        if hay is None:
            break
        check += sum(contains(hay, stemmed(tokens(k))) for k in d["keywords"])
    else:
        if check != n_present:
            sys.exit(f"construction count {n_present} disagrees with stemmed count {check}")

    with open(OUT / "en.test.jsonl", "w", encoding="utf-8") as f:
        for d in docs:
            f.write(json.dumps(d, ensure_ascii=False) + "\n")
    truth = {"size": N_DOCS, "n_keywords": n_keywords, "n_present": n_present,
             "kw_per_doc": n_keywords / N_DOCS, "kw_present": n_present / n_keywords}
    with open(OUT / "en.test.truth.json", "w", encoding="utf-8") as f:
        json.dump(truth, f, indent=2)
        f.write("\n")
    write_embeddings(docs)
    print(truth)


if __name__ == "__main__":
    main()
