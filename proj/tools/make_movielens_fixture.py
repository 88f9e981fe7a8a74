#!/usr/bin/env python3
"""Writes a small synthetic ratings/movies pair in the MovieLens CSV layout.

The output is deterministic for a given seed. Usage:
    make_movielens_fixture.py OUT_DIR [--users N] [--movies N] [--ratings N] [--seed S]
"""

import argparse
import csv
import random
from pathlib import Path

GENRES = [
    "Action", "Adventure", "Animation", "Children", "Comedy", "Crime", "Documentary",
    "Drama", "Fantasy", "Film-Noir", "Horror", "IMAX", "Musical", "Mystery",
    "Romance", "Sci-Fi", "Thriller", "War", "Western",
]

# 2013-01-01 .. 2016-01-01, so part of the data falls outside the default window
T_START = 1356998400
T_END = 1451606400


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("out_dir", type=Path)
    ap.add_argument("--users", type=int, default=900)
    ap.add_argument("--movies", type=int, default=240)
    ap.add_argument("--ratings", type=int, default=24000)
    ap.add_argument("--seed", type=int, default=20140301)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    args.out_dir.mkdir(parents=True, exist_ok=True)

    movie_ids = sorted(rng.sample(range(1, 5 * args.movies), args.movies))
    quality = {m: rng.uniform(2.0, 4.6) for m in movie_ids}
    movie_genres = {}
    with open(args.out_dir / "movies.csv", "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["movieId", "title", "genres"])
        for m in movie_ids:
            if rng.random() < 0.01:
                labels = ["(no genres listed)"]
            else:
                labels = rng.sample(GENRES, rng.choice([1, 1, 2, 2, 3]))
            movie_genres[m] = labels
            title = f"Movie {m}, Part {rng.randint(1, 3)} ({rng.randint(1950, 2014)})"
            w.writerow([m, title, "|".join(labels)])

    # Zipf-like popularity so most-rated and least-rated movies are well separated
    weights = [1.0 / (r + 1) ** 0.9 for r in range(args.movies)]
    order = movie_ids[:]
    rng.shuffle(order)
    taste = {u: set(rng.sample(GENRES, 3)) for u in range(1, args.users + 1)}

    seen = set()
    rows = []
    while len(rows) < args.ratings:
        u = rng.randint(1, args.users)
        m = rng.choices(order, weights=weights)[0]
        if (u, m) in seen:
            continue
        seen.add((u, m))
        bonus = 0.6 if taste[u] & set(movie_genres[m]) else 0.0
        r = min(5.0, max(0.5, round((quality[m] + bonus + rng.gauss(0, 0.7)) * 2) / 2))
        rows.append((u, m, r, rng.randint(T_START, T_END - 1)))
    rows.sort()
    with open(args.out_dir / "ratings.csv", "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["userId", "movieId", "rating", "timestamp"])
        for u, m, r, ts in rows:
            w.writerow([u, m, f"{r:.1f}", ts])


if __name__ == "__main__":
    main()
