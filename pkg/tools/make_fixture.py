#!/usr/bin/env python3
"""Regenerate the bundled mini-corpus fixture (20 users, 10 per class).

Writes tests/data/fixture_corpus.jsonl and tests/data/fixture_title_cache.json.
The fixture is authored with known counts; tests recount independently.
"""

import json
from pathlib import Path

import numpy as np

TITLES = {
    "https://seaworldofhurt.example.com/": "SeaWorld Of Hurt: Where Happiness Tanks",
    "https://staystrong.example.org/self-harm-alternatives": "Self-harm alternatives - Stay strong",
    "https://anxietyuk.example.org/": "National charity helping people with Anxiety - Anxiety UK",
    "https://edweek.example.com/student-mental-health": "Four Ways to Improve Student Mental-Health Support (Opinion)",
    "https://artshelp.example.com/awareness": "Mental Health Awareness, And Breaking Through... - Helping Artists Create and Share",
    "https://books.example.com/top10-mental-health": "Madeleine Kuderick's top 10 books that explore mental health issues | Children's books | The Guardian",
    "https://healthyplace.example.com/birthday-depression": "Celebrating My Birthday with Depression | HealthyPlace",
    "https://coffeeblog.example.com/best-beans": "The Ten Best Coffee Beans We Tried This Year",
    "https://trailguide.example.org/weekend-hikes": "Weekend Hikes Near The City: A Field Guide",
    "https://gamer.example.com/season-recap": "Season Recap: The Plays That Defined The Finals",
}
FAILED_URLS = ["https://gone.example.com/404", "https://timeout.example.org/slow"]

DEPRESSED_TWEETS = [
    "I feel so hopeless and empty today nothing helps anymore 😢",
    "another sleepless night with anxiety and crying myself through it",
    "therapy session today but the depression is still unbearable honestly",
    "I am so exhausted and worthless lately every single day hurts",
    "the panic and despair just will not stop this week at all",
    "feeling numb and lonely again cannot talk to anyone about this 😭",
    "my psychiatrist changed my antidepressants again hoping something finally works",
    "everything feels dark and broken and I keep struggling to get up",
    "diagnosed two months ago and the grief still feels overwhelming daily",
    "can someone explain how to survive this misery and insomnia 💔",
]
CONTROL_TWEETS = [
    "had a wonderful morning run and the sunshine felt amazing today 😀",
    "coffee with friends then the game tonight what a great weekend",
    "so grateful for my team we finally shipped the big project",
    "the new season of my favorite show is such fun to watch",
    "weekend hike plans are ready the trail guide looks excellent 😊",
    "my garden tomatoes are thriving this summer very proud of them",
    "booked tickets for the island tour next month cannot wait honestly",
    "the market had fresh bread and the kitchen smells incredible now",
    "happy birthday to my best friend love you lots have fun 🎉",
    "great match today the team played smart and won the season opener",
]
SHORT_TWEETS = ["so tired today", "rain again", "ugh monday", "no words", "meh 😔"]
NON_LATIN = "Сегодня очень плохой день и мне грустно совсем"

DESCRIPTIONS_DEP = [
    "fighting depression and anxiety one day at a time",
    "tired and sad but surviving",
    "mental health matters / therapy advocate",
    "",
    "just trying to feel less empty",
]
DESCRIPTIONS_CTL = [
    "coffee lover, runner, happy human",
    "grateful for every sunny day",
    "sports and games and fun",
    "",
    "gardener and proud parent",
]


def make_embedding(rng, shift):
    return [round(float(v), 3) for v in rng.normal(shift, 1.0, 128)]


def main():
    rng = np.random.default_rng(20240501)
    urls = list(TITLES)
    dep_urls = urls[:7]
    ctl_urls = urls[7:]
    users = []
    for i in range(20):
        depressed = i < 10
        uid = f"fixture_{'dep' if depressed else 'ctl'}_{i % 10:02d}"
        pool = DEPRESSED_TWEETS if depressed else CONTROL_TWEETS
        tweets = []
        n_tweets = 3 + (i % 4)
        for j in range(n_tweets):
            text = pool[(i + j) % len(pool)]
            tweet_urls = []
            if (i + j) % 3 == 0:
                u = (dep_urls if depressed else ctl_urls)[(i + j) % (7 if depressed else 3)]
                text = text + " " + u
                tweet_urls.append(u)
            if (i + j) % 7 == 0 and depressed:
                u = FAILED_URLS[i % 2]
                text = text + " " + u
                tweet_urls.append(u)
            tweet = {
                "tweet_id": f"{uid}_t{j}",
                "timestamp": f"2021-07-{(i % 27) + 1:02d}T{8 + j:02d}:30:00Z",
                "text": text,
                "urls": tweet_urls,
            }
            if (i + j) % 4 == 0:
                tweet["ocr_text"] = (
                    "you are not alone reach out for help" if depressed else "fresh beans roasted daily"
                )
            if (i * 3 + j) % 5 == 0:
                tweet["image_embeddings"] = [make_embedding(rng, 0.5 if depressed else 0.0)]
            tweets.append(tweet)
        if i == 4:  # depressed user whose tweets are all too short after cleaning
            tweets = [
                {
                    "tweet_id": f"{uid}_t{j}",
                    "timestamp": f"2021-07-05T{9 + j:02d}:00:00Z",
                    "text": SHORT_TWEETS[j],
                    "urls": [],
                }
                for j in range(len(SHORT_TWEETS))
            ]
        if i == 7:  # depressed user with one non-English tweet
            tweets.append(
                {
                    "tweet_id": f"{uid}_tx",
                    "timestamp": "2021-07-08T20:00:00Z",
                    "text": NON_LATIN,
                    "urls": [],
                }
            )
        if i == 13:  # control user with no tweets at all
            tweets = []
        profile = {
            "followers_count": int(rng.integers(0, 150) if depressed else rng.integers(200, 1500)),
            "friends_count": int(rng.integers(0, 200) if depressed else rng.integers(150, 1200)),
            "favourites_count": int(rng.integers(0, 400) if depressed else rng.integers(300, 4000)),
            "statuses_count": int(rng.integers(30, 500) if depressed else rng.integers(500, 7000)),
            "description": (DESCRIPTIONS_DEP if depressed else DESCRIPTIONS_CTL)[i % 5],
        }
        users.append(
            {
                "user_id": uid,
                "label": 1 if depressed else 0,
                "profile": profile,
                "tweets": tweets,
            }
        )

    out_dir = Path(__file__).resolve().parents[1] / "tests" / "data"
    out_dir.mkdir(parents=True, exist_ok=True)
    with (out_dir / "fixture_corpus.jsonl").open("w", encoding="utf-8") as fh:
        for u in users:
            fh.write(json.dumps(u, ensure_ascii=False) + "\n")

    cache = {}
    for url, title in TITLES.items():
        cache[url] = {"title": title, "fetched_at": "2021-08-01T00:00:00+00:00", "status": "ok"}
    for url in FAILED_URLS:
        cache[url] = {"title": None, "fetched_at": "2021-08-01T00:00:00+00:00", "status": "failed"}
    (out_dir / "fixture_title_cache.json").write_text(
        json.dumps(cache, indent=1, sort_keys=True, ensure_ascii=False), "utf-8"
    )
    print(f"wrote {out_dir / 'fixture_corpus.jsonl'} ({len(users)} users)")


if __name__ == "__main__":
    main()
