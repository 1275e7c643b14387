"""Generate the committed movies dataset (data/movies.csv).

709 rows, 9 attributes. Deterministic: a fixed seed and pure-stdlib RNG.
Distributions are tuned so the demo walkthrough has substance at every
step (genres above and below a 100M mean-gross cutoff, budgets straddling
100M, a spread of creative types and content ratings among survivors).
"""

from __future__ import annotations

import csv
import random
from pathlib import Path

SEED = 20260823
OUT = Path(__file__).resolve().parent.parent / "data" / "movies.csv"

COLUMNS = [
    "Release Year",
    "Worldwide Gross",
    "Production Budget",
    "Running Time",
    "Rotten Tomatoes",
    "IMDB Rating",
    "Major Genre",
    "Creative Type",
    "Content Rating",
]

# genre -> (rows, mean budget $M, gross multiplier range, mean gross target side)
GENRES = {
    "Drama":     (140, 28, (0.4, 3.0)),
    "Comedy":    (120, 35, (0.5, 3.5)),
    "Action":    (110, 80, (1.2, 4.5)),
    "Adventure": (90, 85, (1.3, 4.8)),
    "Thriller":  (70, 40, (0.5, 3.0)),
    "Fantasy":   (60, 75, (1.2, 4.6)),
    "Horror":    (55, 18, (0.6, 4.0)),
    "Musical":   (34, 30, (0.4, 2.8)),
    "Western":   (30, 32, (0.4, 2.5)),
}

CREATIVE_TYPES = [
    "Contemporary Fiction",
    "Science Fiction",
    "Kids Fiction",
    "Historical Fiction",
    "Fantasy World",
    "Dramatization",
]
# per-genre creative type weights, matching genre flavor
CT_WEIGHTS = {
    "Drama":     [5, 1, 1, 4, 1, 4],
    "Comedy":    [6, 1, 3, 1, 1, 1],
    "Action":    [5, 4, 2, 1, 1, 1],
    "Adventure": [3, 4, 4, 1, 2, 1],
    "Thriller":  [6, 2, 0, 1, 0, 1],
    "Fantasy":   [1, 3, 4, 0, 6, 0],
    "Horror":    [4, 2, 0, 1, 2, 0],
    "Musical":   [4, 0, 3, 2, 1, 1],
    "Western":   [3, 0, 1, 4, 0, 2],
}

RATINGS = ["G", "PG", "PG-13", "R"]
RATING_WEIGHTS = {
    "Drama":     [1, 3, 6, 6],
    "Comedy":    [1, 4, 6, 3],
    "Action":    [0, 2, 7, 4],
    "Adventure": [2, 6, 5, 1],
    "Thriller":  [0, 1, 5, 6],
    "Fantasy":   [2, 6, 4, 1],
    "Horror":    [0, 0, 3, 8],
    "Musical":   [4, 5, 2, 1],
    "Western":   [0, 2, 5, 4],
}


def make_rows(rng: random.Random) -> list[dict]:
    rows = []
    for genre, (n, budget_mean, mult_range) in GENRES.items():
        for _ in range(n):
            budget = rng.lognormvariate(0.0, 0.55) * budget_mean * 1e6
            budget = max(0.5e6, min(budget, 280e6))
            mult = rng.uniform(*mult_range)
            gross = budget * mult * rng.uniform(0.85, 1.15)
            gross = max(0.1e6, gross)
            year = rng.randint(1985, 2010)
            runtime = int(rng.gauss(112, 16))
            runtime = max(68, min(runtime, 205))
            tomatoes = int(min(100, max(2, rng.gauss(55, 22))))
            imdb = round(min(9.6, max(1.4, rng.gauss(6.2, 1.1))), 1)
            row = {
                "Release Year": year,
                "Worldwide Gross": int(round(gross, -4)),
                "Production Budget": int(round(budget, -4)),
                "Running Time": runtime,
                "Rotten Tomatoes": tomatoes,
                "IMDB Rating": imdb,
                "Major Genre": genre,
                "Creative Type": rng.choices(CREATIVE_TYPES, CT_WEIGHTS[genre])[0],
                "Content Rating": rng.choices(RATINGS, RATING_WEIGHTS[genre])[0],
            }
            rows.append(row)
    rng.shuffle(rows)
    # sprinkle missing cells into the two least central measures
    for idx in rng.sample(range(len(rows)), 24):
        rows[idx]["Rotten Tomatoes"] = ""
    for idx in rng.sample(range(len(rows)), 15):
        rows[idx]["Running Time"] = ""
    return rows


def check(rows: list[dict]) -> None:
    assert len(rows) == 709, len(rows)
    by_genre: dict = {}
    for r in rows:
        by_genre.setdefault(r["Major Genre"], []).append(r)
    means = {g: sum(r["Worldwide Gross"] for r in rs) / len(rs) for g, rs in by_genre.items()}
    high = sorted(g for g, m in means.items() if m >= 100e6)
    low = sorted(g for g, m in means.items() if m < 100e6)
    assert high == ["Action", "Adventure", "Fantasy"], means
    assert len(low) == 6, means

    survivors = [r for r in rows
                 if r["Major Genre"] in high
                 and r["Production Budget"] < 100e6
                 and r["Worldwide Gross"] >= 200e6]
    assert len(survivors) >= 25, len(survivors)
    cts = {r["Creative Type"] for r in survivors}
    assert {"Contemporary Fiction", "Kids Fiction", "Science Fiction"} <= cts, cts
    assert len(cts) > 3, cts
    top3 = [r for r in survivors
            if r["Creative Type"] in ("Contemporary Fiction", "Kids Fiction", "Science Fiction")]
    assert any(r["Content Rating"] == "R" for r in top3)
    assert sum(r["Content Rating"] != "R" for r in top3) >= 12


def main() -> None:
    rng = random.Random(SEED)
    rows = make_rows(rng)
    check(rows)
    OUT.parent.mkdir(parents=True, exist_ok=True)
    with open(OUT, "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=COLUMNS)
        writer.writeheader()
        writer.writerows(rows)
    print(f"wrote {len(rows)} rows to {OUT}")


if __name__ == "__main__":
    main()
