"""Scene-graph data model, synthetic detector, and retrieval metrics.

A scene graph is an ordered collection of (subject, relation, object)
triples over a fixed label catalog. The detector here is a tunable
surrogate for a vision pipeline: it recovers each ground-truth triple with
probability ``1 - error_rate``, sometimes emits a corrupted variant, and
pads the ranked list with random distractors.

Retrieval quality is measured with recall@k and its per-predicate mean,
which counters dominant predicates in long-tailed catalogs.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigurationError, UndefinedMetricError

DEFAULT_MAX_TRIPLES = 16

DEFAULT_OBJECT_CATEGORIES = (
    "building",
    "crate",
    "dock",
    "drone",
    "person",
    "road",
    "sign",
    "tree",
    "truck",
    "vehicle",
)

DEFAULT_PREDICATES = (
    "near",
    "on",
    "above",
    "behind",
    "beside",
    "inside",
    "carries",
    "faces",
)


@dataclass(frozen=True)
class SemanticTriple:
    subject: str
    relation: str
    object: str

    def as_tuple(self):
        return (self.subject, self.relation, self.object)


@dataclass(frozen=True)
class SceneGraph:
    """Triples extracted from one captured scene."""

    triples: tuple
    scene_id: str = ""
    max_triples: int = DEFAULT_MAX_TRIPLES

    def __post_init__(self):
        object.__setattr__(self, "triples", tuple(self.triples))
        k = len(self.triples)
        if not 1 <= k <= self.max_triples:
            raise ConfigurationError(
                f"scene must hold 1..{self.max_triples} triples, got {k}"
            )
        if len(set(self.triples)) != k:
            raise ConfigurationError("scene contains duplicate triples")

    def __len__(self):
        return len(self.triples)

    def triple_set(self):
        return set(self.triples)


@dataclass(frozen=True)
class PredicateCatalog:
    """Label sets and the predicate sampling distribution.

    ``predicate_weights`` aligns with ``predicates``; weights must be strictly
    positive and sum to one. The bundled default is long-tailed so that mean
    recall and plain recall can disagree.
    """

    object_categories: tuple
    predicates: tuple
    predicate_weights: tuple

    def __post_init__(self):
        object.__setattr__(self, "object_categories", tuple(self.object_categories))
        object.__setattr__(self, "predicates", tuple(self.predicates))
        object.__setattr__(
            self, "predicate_weights", tuple(float(w) for w in self.predicate_weights)
        )
        if not self.object_categories or not self.predicates:
            raise ConfigurationError("catalog needs categories and predicates")
        if len(self.predicates) != len(self.predicate_weights):
            raise ConfigurationError("one weight per predicate required")
        if any(w <= 0 for w in self.predicate_weights):
            raise ConfigurationError("predicate weights must be positive")
        if abs(sum(self.predicate_weights) - 1.0) > 1e-9:
            raise ConfigurationError("predicate weights must sum to 1")
        if len(set(self.object_categories)) != len(self.object_categories):
            raise ConfigurationError("duplicate object categories")
        if len(set(self.predicates)) != len(self.predicates):
            raise ConfigurationError("duplicate predicates")

    @property
    def weight_map(self):
        return dict(zip(self.predicates, self.predicate_weights))


def long_tailed_catalog(categories=DEFAULT_OBJECT_CATEGORIES, predicates=DEFAULT_PREDICATES):
    """Catalog whose predicate frequencies decay like 1/rank (Zipf-style)."""
    raw = [1.0 / (i + 1) for i in range(len(predicates))]
    total = sum(raw)
    return PredicateCatalog(
        object_categories=tuple(categories),
        predicates=tuple(predicates),
        predicate_weights=tuple(w / total for w in raw),
    )


@dataclass(frozen=True)
class RankedPredictions:
    """Detector output: (triple, confidence) pairs, best first."""

    items: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(self.items))
        confs = [c for _, c in self.items]
        for a, b in zip(confs, confs[1:]):
            if b > a + 1e-12:
                raise ConfigurationError("confidences must be nonincreasing")
        if any(not 0.0 <= c <= 1.0 for c in confs):
            raise ConfigurationError("confidences must lie in [0, 1]")

    def __len__(self):
        return len(self.items)

    def top(self, k):
        return [t for t, _ in self.items[:k]]

    @classmethod
    def from_ordered_triples(cls, triples):
        """Wrap an already-ranked triple list with synthetic confidences."""
        n = max(len(triples), 1)
        return cls(tuple((t, 1.0 - i / (n + 1)) for i, t in enumerate(triples)))


# ---------------------------------------------------------------------------
# synthetic scene / detector generation


def _sample_triple(catalog, rng):
    cats = catalog.object_categories
    subj = cats[rng.integers(len(cats))]
    pred = catalog.predicates[
        rng.choice(len(catalog.predicates), p=catalog.predicate_weights)
    ]
    obj = cats[rng.integers(len(cats))]
    return SemanticTriple(subj, pred, obj)


def generate_scene(catalog, rng_seed, size_range=(4, 12), scene_id=None):
    """Sample a scene graph with a uniform size drawn from ``size_range``.

    Triples are drawn i.i.d. from the catalog distributions; exact duplicates
    are resampled so the scene holds distinct triples.
    """
    lo, hi = int(size_range[0]), int(size_range[1])
    if not 1 <= lo <= hi <= DEFAULT_MAX_TRIPLES:
        raise ConfigurationError(
            f"size_range must lie within [1, {DEFAULT_MAX_TRIPLES}]"
        )
    rng = np.random.default_rng(rng_seed)
    k = int(rng.integers(lo, hi + 1))
    chosen = []
    seen = set()
    attempts = 0
    while len(chosen) < k:
        attempts += 1
        if attempts > 1000 * k:
            raise ConfigurationError(
                "catalog too small to produce the requested number of distinct triples"
            )
        t = _sample_triple(catalog, rng)
        if t not in seen:
            seen.add(t)
            chosen.append(t)
    if scene_id is None:
        scene_id = f"scene-{int(rng_seed) & 0xFFFFFFFF:08x}"
    return SceneGraph(tuple(chosen), scene_id=scene_id)


def _corrupt_predicate(triple, catalog, rng):
    options = [p for p in catalog.predicates if p != triple.relation]
    if not options:
        return triple
    weights = np.array([catalog.weight_map[p] for p in options])
    weights /= weights.sum()
    return SemanticTriple(
        triple.subject, options[rng.choice(len(options), p=weights)], triple.object
    )


def _corrupt_object(triple, catalog, rng):
    options = [c for c in catalog.object_categories if c != triple.object]
    if not options:
        return triple
    return SemanticTriple(
        triple.subject, triple.relation, options[rng.integers(len(options))]
    )


def simulate_detector(gt, catalog, error_rate, list_length, rng_seed):
    """Simulate a ranked detector over a known ground-truth scene.

    Each ground-truth triple survives intact with probability
    ``1 - error_rate``. A missed triple either reappears with its predicate
    and/or object resampled (two fair coins decide which slots, conditioned
    on the miss) or is dropped outright when neither coin fires. Remaining
    slots are filled with random distractors. Detections draw confidences
    from U(0.5, 1), distractors from U(0, 0.5), so true triples rank higher
    in expectation.
    """
    if list_length < 1:
        raise ValueError("list_length must be >= 1")
    if list_length < len(gt):
        raise ValueError("list_length must cover the ground-truth scene")
    if not 0.0 <= error_rate <= 1.0:
        raise ValueError("error_rate must lie in [0, 1]")
    rng = np.random.default_rng(rng_seed)
    detections = []
    for triple in gt.triples:
        if rng.random() < 1.0 - error_rate:
            detections.append(triple)
            continue
        corrupt_pred = rng.random() < 0.5
        corrupt_obj = rng.random() < 0.5
        if not (corrupt_pred or corrupt_obj):
            continue  # missed outright
        emitted = triple
        if corrupt_pred:
            emitted = _corrupt_predicate(emitted, catalog, rng)
        if corrupt_obj:
            emitted = _corrupt_object(emitted, catalog, rng)
        detections.append(emitted)
    items = [(t, 0.5 + 0.5 * rng.random()) for t in detections]
    while len(items) < list_length:
        items.append((_sample_triple(catalog, rng), 0.5 * rng.random()))
    items.sort(key=lambda pair: -pair[1])
    return RankedPredictions(tuple(items))


# ---------------------------------------------------------------------------
# retrieval metrics


def recall_at_k(preds, gt, k):
    """Fraction of ground-truth triples found in the top-k predictions."""
    if k < 1:
        raise ValueError("k must be >= 1")
    gt_set = gt.triple_set()
    if not gt_set:
        raise UndefinedMetricError("recall undefined for an empty ground truth")
    top = set(preds.top(k))
    return len(top & gt_set) / len(gt_set)


def mean_recall_at_k(preds, gt, k, catalog):
    """Recall@k averaged over the predicates present in the ground truth."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if not gt.triples:
        raise UndefinedMetricError("mean recall undefined for an empty ground truth")
    known = set(catalog.predicates)
    for t in gt.triples:
        if t.relation not in known:
            raise ConfigurationError(f"ground-truth predicate {t.relation!r} not in catalog")
    top = set(preds.top(k))
    per_class = []
    for pred_label in sorted({t.relation for t in gt.triples}):
        members = {t for t in gt.triples if t.relation == pred_label}
        per_class.append(len(top & members) / len(members))
    return sum(per_class) / len(per_class)


# ---------------------------------------------------------------------------
# line-oriented serialization: subject<TAB>relation<TAB>object,
# scenes separated by blank lines


def scenes_to_text(scenes):
    blocks = []
    for scene in scenes:
        blocks.append(
            "\n".join(
                f"{t.subject}\t{t.relation}\t{t.object}" for t in scene.triples
            )
        )
    return "\n\n".join(blocks) + "\n"


def scenes_from_text(text, max_triples=DEFAULT_MAX_TRIPLES):
    scenes = []
    block = []
    for raw in text.splitlines() + [""]:
        line = raw.rstrip("\n")
        if not line.strip():
            if block:
                scenes.append(
                    SceneGraph(tuple(block), scene_id=f"scene-{len(scenes)}",
                               max_triples=max_triples)
                )
                block = []
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise ConfigurationError(f"bad triple line: {line!r}")
        block.append(SemanticTriple(*parts))
    return scenes
