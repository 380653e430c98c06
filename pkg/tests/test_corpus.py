import json
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from depdetect.corpus import (
    DuplicateUser,
    EmptyDataset,
    ParseError,
    UnknownFieldWarning,
    clean_text,
    dataset_stats,
    filter_non_english,
    filter_tweets,
    latin_letter_fraction,
    load_dataset,
    tokenize,
    users_without_tweets,
)


def user_line(uid="u1", label=0, tweets=None, **profile):
    prof = {
        "followers_count": 1,
        "friends_count": 2,
        "favourites_count": 3,
        "statuses_count": 4,
        "description": "",
    }
    prof.update(profile)
    return json.dumps(
        {
            "user_id": uid,
            "label": label,
            "profile": prof,
            "tweets": tweets
            or [
                {
                    "tweet_id": f"{uid}_t0",
                    "timestamp": "2021-06-01T10:00:00Z",
                    "text": "hello world this is a tweet",
                    "urls": [],
                }
            ],
        }
    )


class TestLoadDataset:
    def test_two_valid_lines(self, tmp_path):
        p = tmp_path / "ds.jsonl"
        p.write_text(user_line("a") + "\n" + user_line("b", label=1) + "\n")
        ds = load_dataset(p)
        assert len(ds.users) == 2
        assert [u.user_id for u in ds.users] == ["a", "b"]

    def test_duplicate_user_id(self, tmp_path):
        p = tmp_path / "ds.jsonl"
        p.write_text(user_line("a") + "\n" + user_line("a") + "\n")
        with pytest.raises(DuplicateUser):
            load_dataset(p)

    def test_empty_file(self, tmp_path):
        p = tmp_path / "ds.jsonl"
        p.write_text("\n\n")
        with pytest.raises(EmptyDataset):
            load_dataset(p)

    def test_invalid_json_reports_line(self, tmp_path):
        p = tmp_path / "ds.jsonl"
        p.write_text(user_line("a") + "\n{not json\n")
        with pytest.raises(ParseError) as err:
            load_dataset(p)
        assert err.value.line == 2

    def test_bad_label(self, tmp_path):
        p = tmp_path / "ds.jsonl"
        p.write_text(user_line("a", label=2) + "\n")
        with pytest.raises(ParseError):
            load_dataset(p)

    def test_negative_profile_count(self, tmp_path):
        p = tmp_path / "ds.jsonl"
        p.write_text(user_line("a", followers_count=-1) + "\n")
        with pytest.raises(ParseError):
            load_dataset(p)

    def test_relative_url_rejected(self, tmp_path):
        tweets = [
            {
                "tweet_id": "t",
                "timestamp": "2021-06-01T10:00:00Z",
                "text": "x",
                "urls": ["not-a-url"],
            }
        ]
        p = tmp_path / "ds.jsonl"
        p.write_text(user_line("a", tweets=tweets) + "\n")
        with pytest.raises(ParseError):
            load_dataset(p)

    def test_mixed_embedding_dims_in_one_tweet(self, tmp_path):
        tweets = [
            {
                "tweet_id": "t",
                "timestamp": "2021-06-01T10:00:00Z",
                "text": "x",
                "urls": [],
                "image_embeddings": [[0.0, 1.0], [0.0, 1.0, 2.0]],
            }
        ]
        p = tmp_path / "ds.jsonl"
        p.write_text(user_line("a", tweets=tweets) + "\n")
        with pytest.raises(ParseError):
            load_dataset(p)

    def test_unknown_keys_warn(self, tmp_path):
        obj = json.loads(user_line("a"))
        obj["mystery"] = 1
        p = tmp_path / "ds.jsonl"
        p.write_text(json.dumps(obj) + "\n")
        with pytest.warns(UnknownFieldWarning):
            load_dataset(p)

    def test_fixture_mini_corpus(self, fixture_dataset):
        assert len(fixture_dataset.users) == 20
        assert sum(u.label for u in fixture_dataset.users) == 10


class TestCleanText:
    def test_spec_example(self):
        assert clean_text("Check https://a.b @sam THE rain!!", {"the"}) == "check rain"

    def test_empty(self):
        assert clean_text("", {"the"}) == ""

    def test_casefold_and_whitespace(self):
        assert clean_text("  HeLLo   WORLD  ") == "hello world"

    def test_emoji_survive_and_separate(self):
        assert clean_text("sad😢 day") == "sad 😢 day"

    def test_apostrophes_merge(self):
        assert clean_text("don't you're") == "dont youre"

    @settings(max_examples=200, deadline=None)
    @given(st.text(max_size=120))
    def test_idempotent(self, s):
        once = clean_text(s, {"the", "a"})
        assert clean_text(once, {"the", "a"}) == once

    @settings(max_examples=100, deadline=None)
    @given(st.text(max_size=120))
    def test_output_alphabet(self, s):
        for tok in clean_text(s).split():
            assert "@" not in tok
            assert "http://" not in tok and "https://" not in tok

    def test_order_stable(self):
        assert clean_text("one the two the three", {"the"}) == "one two three"

    def test_tokenize(self):
        assert tokenize("a b  c") == ["a", "b", "c"]


def make_ds(texts, tmp_path, name="f.jsonl"):
    tweets = [
        {"tweet_id": f"t{i}", "timestamp": "2021-06-01T10:00:00Z", "text": t, "urls": []}
        for i, t in enumerate(texts)
    ]
    p = tmp_path / name
    p.write_text(user_line("u", tweets=tweets) + "\n" + user_line("v", label=1) + "\n")
    return load_dataset(p)


class TestFilterTweets:
    def test_five_words_dropped_at_threshold(self, tmp_path):
        ds = make_ds(["a b c d e"], tmp_path)
        out = filter_tweets(ds, min_words=5)
        assert len(out.users[0].tweets) == 0

    def test_six_words_kept(self, tmp_path):
        ds = make_ds(["a b c d e f"], tmp_path)
        out = filter_tweets(ds, min_words=5)
        assert len(out.users[0].tweets) == 1

    def test_zero_threshold_keeps_nonempty(self, tmp_path):
        ds = make_ds(["word", ""], tmp_path)
        out = filter_tweets(ds, min_words=0)
        assert len(out.users[0].tweets) == 1

    def test_counts_never_increase_users_preserved(self, tmp_path):
        ds = make_ds(["a b c", "a b c d e f g", "x"], tmp_path)
        out = filter_tweets(ds, min_words=3)
        assert len(out.users) == len(ds.users)
        for u_in, u_out in zip(ds.users, out.users):
            assert len(u_out.tweets) <= len(u_in.tweets)

    def test_emptied_users_flagged(self, tmp_path):
        ds = make_ds(["a b"], tmp_path)
        out = filter_tweets(ds, min_words=5)
        assert "u" in users_without_tweets(out)


class TestNonEnglishFilter:
    def test_fraction(self):
        assert latin_letter_fraction("hello") == 1.0
        assert latin_letter_fraction("привет") == 0.0
        assert latin_letter_fraction("12 34") == 1.0  # no letters at all

    def test_drops_mostly_non_latin(self, tmp_path):
        ds = make_ds(["hello there friend", "сегодня плохой день"], tmp_path)
        out = filter_non_english(ds)
        assert [t.text for t in out.users[0].tweets] == ["hello there friend"]


class TestDatasetStats:
    def test_url_saturation(self, tmp_path):
        tweets = [
            {
                "tweet_id": "t",
                "timestamp": "2021-06-01T10:00:00Z",
                "text": "x https://a.example/",
                "urls": ["https://a.example/"],
            }
        ]
        p = tmp_path / "s.jsonl"
        p.write_text(user_line("u", tweets=tweets) + "\n")
        rep = dataset_stats(load_dataset(p))
        assert rep.percentages()["tweets_with_at_least_one_url"] == 100.0

    def test_fixture_matches_brute_force(self, fixture_dataset, fixture_path):
        rep = dataset_stats(fixture_dataset)
        # independent recount straight off the file
        users = [json.loads(l) for l in fixture_path.read_text("utf-8").splitlines() if l.strip()]
        tweets = [t for u in users for t in u["tweets"]]
        has_img = lambda t: bool(t.get("image_embeddings")) or t.get("ocr_text") is not None  # noqa: E731
        assert rep.n_users == len(users)
        assert rep.n_tweets == len(tweets)
        assert rep.tweets_with_url == sum(1 for t in tweets if t.get("urls"))
        assert rep.tweets_with_image == sum(1 for t in tweets if has_img(t))
        assert rep.users_with_url == sum(1 for u in users if any(t.get("urls") for t in u["tweets"]))
        assert rep.users_with_image == sum(1 for u in users if any(has_img(t) for t in u["tweets"]))

    def test_complement_rows_sum_to_100(self, fixture_dataset):
        pct = dataset_stats(fixture_dataset).percentages()
        for a, b in [
            ("tweets_with_no_urls", "tweets_with_at_least_one_url"),
            ("tweets_with_no_images", "tweets_with_at_least_one_image"),
            ("users_who_posted_no_urls", "users_who_posted_at_least_one_url"),
            ("users_who_posted_no_images", "users_who_posted_at_least_one_image"),
        ]:
            assert math.isclose(pct[a] + pct[b], 100.0, abs_tol=1e-9)
