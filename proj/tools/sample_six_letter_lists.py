#!/usr/bin/env python3
"""Regenerate the 6-letter guess and mystery lists shipped in data/.

The source corpus is Peter Norvig's web unigram count file (count_1w.txt),
which the `wordsegment` package ships as unigrams.txt. Guesses are a uniform
sample of the purely alphabetic 6-letter entries; mysteries are a uniform
sample of the guesses. The benchmark openers are always kept in the guess
list so the benchmark can be run against them.

    pip install wordsegment
    python3 tools/sample_six_letter_lists.py --out data
"""

import argparse
import pathlib
import random
import re

SEED = 20221114
GUESS_COUNT = 12972
MYSTERY_COUNT = 2315
OPENERS = ("ambros", "rabies", "tances")


def default_corpus() -> pathlib.Path:
    import wordsegment  # noqa: PLC0415

    return pathlib.Path(wordsegment.__file__).with_name("unigrams.txt")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--corpus", type=pathlib.Path, default=None)
    parser.add_argument("--out", type=pathlib.Path, default=pathlib.Path("data"))
    parser.add_argument("--seed", type=int, default=SEED)
    args = parser.parse_args()

    corpus = args.corpus or default_corpus()
    word = re.compile(r"^[a-z]{6}$")
    words = []
    with corpus.open(encoding="utf-8") as fh:
        for line in fh:
            token = line.split("\t", 1)[0].strip()
            if word.match(token):
                words.append(token)
    words = sorted(set(words))

    rng = random.Random(args.seed)
    pool = [w for w in words if w not in OPENERS]
    guesses = sorted(set(rng.sample(pool, GUESS_COUNT - len(OPENERS))) | set(OPENERS))
    mysteries = sorted(rng.sample(guesses, MYSTERY_COUNT))

    args.out.mkdir(parents=True, exist_ok=True)
    (args.out / "words6_guess.txt").write_text("\n".join(guesses) + "\n", encoding="utf-8")
    (args.out / "words6_mystery.txt").write_text("\n".join(mysteries) + "\n", encoding="utf-8")
    print(f"corpus={len(words)} guesses={len(guesses)} mysteries={len(mysteries)} seed={args.seed}")


if __name__ == "__main__":
    main()
