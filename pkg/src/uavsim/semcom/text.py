"""Corpus preprocessing and the token <-> id vocabulary codec.

Preprocessing lowercases, strips punctuation and keeps only sentences of
3 to 20 tokens. Tokens seen fewer than ``min_count`` times map to the
unknown id, mirroring standard rare-word handling.
"""

import math
import string
from collections import Counter
from dataclasses import dataclass
from importlib import resources

from ..errors import ConfigurationError

PAD_TOKEN = "<pad>"
UNK_TOKEN = "<unk>"
EOS_TOKEN = "<eos>"
RESERVED = (PAD_TOKEN, UNK_TOKEN, EOS_TOKEN)

PAD_ID = 0
UNK_ID = 1
EOS_ID = 2

MIN_SENTENCE_TOKENS = 3
MAX_SENTENCE_TOKENS = 20

_PUNCT_TABLE = str.maketrans("", "", string.punctuation + "‘’“”")


def preprocess_corpus(raw_lines):
    """Lowercase, strip punctuation and drop sentences outside 3..20 tokens."""
    out = []
    for line in raw_lines:
        tokens = line.lower().translate(_PUNCT_TABLE).split()
        if MIN_SENTENCE_TOKENS <= len(tokens) <= MAX_SENTENCE_TOKENS:
            out.append(" ".join(tokens))
    return out


@dataclass(frozen=True)
class Vocabulary:
    """Dense token <-> id bijection with reserved pad/unk/eos ids."""

    id_to_token: tuple
    min_count: int = 5

    def __post_init__(self):
        object.__setattr__(self, "id_to_token", tuple(self.id_to_token))
        if self.id_to_token[: len(RESERVED)] != RESERVED:
            raise ConfigurationError("vocabulary must start with the reserved tokens")
        if len(set(self.id_to_token)) != len(self.id_to_token):
            raise ConfigurationError("vocabulary tokens must be unique")
        object.__setattr__(
            self, "_token_to_id", {t: i for i, t in enumerate(self.id_to_token)}
        )

    def __len__(self):
        return len(self.id_to_token)

    @property
    def bits_per_token(self):
        return max(1, math.ceil(math.log2(len(self.id_to_token))))

    def token_id(self, token):
        return self._token_to_id.get(token, UNK_ID)

    def token(self, token_id):
        if 0 <= token_id < len(self.id_to_token):
            return self.id_to_token[token_id]
        return UNK_TOKEN

    def __contains__(self, token):
        return token in self._token_to_id

    def to_text(self):
        return "".join(f"{t}\t{i}\n" for i, t in enumerate(self.id_to_token))

    @classmethod
    def from_text(cls, text, min_count=5):
        pairs = []
        for lineno, line in enumerate(text.splitlines(), start=1):
            if not line.strip():
                continue
            try:
                token, token_id = line.split("\t")
                pairs.append((int(token_id), token))
            except ValueError as exc:
                raise ConfigurationError(f"bad vocabulary line {lineno}: {line!r}") from exc
        pairs.sort()
        if [i for i, _ in pairs] != list(range(len(pairs))):
            raise ConfigurationError("vocabulary ids must be dense from 0")
        return cls(tuple(t for _, t in pairs), min_count=min_count)


def build_vocabulary(corpus_lines, min_count=5):
    """Assign dense ids by descending frequency (ties broken lexicographically).

    Tokens below ``min_count`` occurrences are left out and hit the unknown id.
    """
    counts = Counter()
    for line in corpus_lines:
        counts.update(line.split())
    if not counts:
        raise ConfigurationError("cannot build a vocabulary from an empty corpus")
    kept = sorted(
        (t for t, c in counts.items() if c >= min_count),
        key=lambda t: (-counts[t], t),
    )
    return Vocabulary(RESERVED + tuple(kept), min_count=min_count)


def vocabulary_from_labels(labels):
    """Vocabulary over a fixed label set (for scene-graph transmission)."""
    labels = sorted(set(labels))
    if not labels:
        raise ConfigurationError("empty label set")
    return Vocabulary(RESERVED + tuple(labels), min_count=1)


def load_bundled_corpus():
    """Raw lines of the bundled mini-corpus (unpreprocessed)."""
    text = (
        resources.files("uavsim.semcom").joinpath("data/mini_corpus.txt").read_text("utf-8")
    )
    return [line for line in text.splitlines() if line.strip()]
