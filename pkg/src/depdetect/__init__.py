"""Multimodal depression detection from per-user tweet corpora.

Feature extraction (webpage-title context, lexicon emotions, topics,
image-embedding means, user activity), three from-scratch classifiers,
a max-vote ensemble, and a cross-validated evaluation/ablation harness.
"""

from .corpus import (
    LabeledDataset,
    ProfileInfo,
    StatsReport,
    TweetRecord,
    UserRecord,
    clean_text,
    dataset_stats,
    filter_tweets,
    load_dataset,
    load_stopwords,
)
from .evaluation import (
    ConfusionCounts,
    EvalReport,
    ExperimentConfig,
    Holdout,
    KFold,
    Lexicons,
    ablation_suite,
    confusion,
    grid_search,
    metrics,
    prepare_dataset,
    run_experiment,
    split,
)
from .features import FeatureLayout, FeatureVector, ablate, assemble, default_layout
from .lexicons import (
    CategoryLexicon,
    EmojiSentimentTable,
    EmotionLexicon,
    load_category_lexicon,
    load_emoji_table,
    load_emotion_lexicon,
)
from .pca import PcaModel, fit_pca, transform
from .topics import TopicAssignment, TopicModel, doc_topic_dist, fit_lda, term_topic_dist, top_words
from .webcontext import FetchPolicy, UrlTitleCache, augment_tweet, extract_urls, fetch_title, html_title

__version__ = "0.1.0"
