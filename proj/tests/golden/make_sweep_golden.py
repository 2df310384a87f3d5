#!/usr/bin/env python3
"""Independent sweep of every k-fact vocabulary over n states.

Writes one row per vocabulary in lexicographic order of fact masks:
index,facts,agree,total,language_size
"""
import itertools
import sys


def language(facts):
    out = []
    for r in range(1, len(facts) + 1):
        for combo in itertools.combinations(range(len(facts)), r):
            inter = (1 << 64) - 1
            for i in combo:
                inter &= facts[i]
            if inter:
                out.append(frozenset(combo))
    return out


def score(facts):
    lang = language(facts)
    weak = {x: sum(1 for y in lang if x <= y) for x in lang}
    agree = total = 0
    for x in lang:
        for y in lang:
            if x == y:
                continue
            total += 1
            if (weak[x] < weak[y]) == (len(x) > len(y)):
                agree += 1
    return agree, total, len(lang)


def main():
    n, k = int(sys.argv[1]), int(sys.argv[2])
    print("index,facts,agree,total,language_size")
    for i, facts in enumerate(itertools.combinations(range(1 << n), k)):
        agree, total, size = score(list(facts))
        print(f"{i},{' '.join(map(str, facts))},{agree},{total},{size}")


if __name__ == "__main__":
    main()
