"""Corpus ingestion: tokenization, coarse part-of-speech tagging, lemmatization.

Documents come in as JSON Lines (one record per line with ``id``, ``text``
and optional ``title``) and come out as an immutable :class:`Corpus` whose
vocabulary covers every non-stopword lemma that clears a frequency floor.
Tagging is intentionally lightweight: a bundled lexicon of common nouns and
adjectives, then suffix rules, then ``Other``. Pre-tagged input in
``surface/TAG`` form is accepted as an escape hatch for external taggers.
"""

from __future__ import annotations

import io
import json
import re
from collections import Counter
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import BinaryIO, Iterable, Sequence

NOUN = "Noun"
ADJECTIVE = "Adjective"
OTHER = "Other"

_WORD_RE = re.compile(r"[A-Za-z]+(?:'[A-Za-z]+)?")

# Irregular plural forms applied before the suffix rules. Includes identity
# entries for words the suffix rules would otherwise mangle.
_IRREGULAR = {
    "analyses": "analysis",
    "axes": "axis",
    "bases": "base",
    "children": "child",
    "criteria": "criterion",
    "corpora": "corpus",
    "data": "datum",
    "feet": "foot",
    "geese": "goose",
    "hypotheses": "hypothesis",
    "indices": "index",
    "lives": "life",
    "matrices": "matrix",
    "maxima": "maximum",
    "media": "medium",
    "men": "man",
    "mice": "mouse",
    "minima": "minimum",
    "news": "news",
    "optima": "optimum",
    "people": "person",
    "phenomena": "phenomenon",
    "schemata": "schema",
    "series": "series",
    "species": "species",
    "taxa": "taxon",
    "teeth": "tooth",
    "theses": "thesis",
    "vertices": "vertex",
    "women": "woman",
}

# Stems ending in s/x/z/ch/sh take an "-es" plural; everything else that the
# "-es" test would catch (cases, phrases, uses) is a plain "-s" plural.
_ES_ENDINGS = ("sses", "xes", "zes", "ches", "shes")

_NOUN_SUFFIXES = ("tion", "ment", "ness", "ity", "er", "ing")
_ADJ_SUFFIXES = ("al", "ive", "ous", "ic", "able")

_PRETAG_NOUN = ("NOUN", "NN", "NNS", "NNP", "NNPS", "N")
_PRETAG_ADJ = ("ADJECTIVE", "ADJ", "JJ", "JJR", "JJS", "A")


class CorpusError(Exception):
    """Malformed or inconsistent corpus input."""


@dataclass(frozen=True)
class Token:
    """A single token: original surface, normalized lemma, coarse tag."""

    surface: str
    lemma: str
    tag: str


@dataclass(frozen=True)
class Document:
    """One ingested document with its tokenized text."""

    id: str
    title: str | None
    tokens: tuple[Token, ...]
    raw: str

    @property
    def lemmas(self) -> tuple[str, ...]:
        return tuple(t.lemma for t in self.tokens)


class Corpus:
    """Immutable collection of documents plus a dense lemma vocabulary.

    The vocabulary maps lemma to integer index (0..V-1, lexicographic
    order) over lemmas with corpus frequency at or above the floor and not
    in the stopword set. Safe for concurrent reads.
    """

    def __init__(
        self,
        documents: Sequence[Document],
        stopwords: Iterable[str] = (),
        min_frequency: int = 2,
    ):
        self.documents: tuple[Document, ...] = tuple(documents)
        self.stopwords: frozenset[str] = frozenset(stopwords)
        self.min_frequency = int(min_frequency)
        counts = Counter(
            t.lemma for doc in self.documents for t in doc.tokens if t.lemma
        )
        kept = [
            lemma
            for lemma, n in counts.items()
            if n >= self.min_frequency and lemma not in self.stopwords
        ]
        self.vocabulary: tuple[str, ...] = tuple(sorted(kept))
        self._index = {lemma: i for i, lemma in enumerate(self.vocabulary)}
        self._docs_by_id = {doc.id: doc for doc in self.documents}

    def __len__(self) -> int:
        return len(self.documents)

    @property
    def vocab_size(self) -> int:
        return len(self.vocabulary)

    def index_of(self, lemma: str) -> int:
        """Vocabulary index of ``lemma``; KeyError if out of vocabulary."""
        return self._index[lemma]

    def lemma_of(self, index: int) -> str:
        return self.vocabulary[index]

    def __contains__(self, lemma: str) -> bool:
        return lemma in self._index

    def document(self, doc_id: str) -> Document:
        return self._docs_by_id[doc_id]

    def doc_token_ids(self, doc: Document) -> list[int]:
        """Vocabulary indices of the document's in-vocabulary tokens."""
        return [self._index[t.lemma] for t in doc.tokens if t.lemma in self._index]

    def to_json(self) -> str:
        """Canonical JSON serialization; byte-stable for equal corpora."""
        payload = {
            "documents": [
                {
                    "id": d.id,
                    "title": d.title,
                    "raw": d.raw,
                    "tokens": [[t.surface, t.lemma, t.tag] for t in d.tokens],
                }
                for d in self.documents
            ],
            "min_frequency": self.min_frequency,
            "stopwords": sorted(self.stopwords),
            "vocabulary": list(self.vocabulary),
        }
        return json.dumps(payload, sort_keys=True, ensure_ascii=False)


def lemmatize(surface: str) -> str:
    """Lowercase and strip plural suffixes; irregular table first.

    Idempotent: applying twice equals applying once.
    """
    w = surface.lower()
    if w in _IRREGULAR:
        return _IRREGULAR[w]
    if len(w) > 3 and w.endswith("ies"):
        return w[:-3] + "y"
    if len(w) > 4 and w.endswith(_ES_ENDINGS):
        return w[:-2]
    if (
        len(w) > 3
        and w.endswith("s")
        and not w.endswith(("ss", "us", "is"))
    ):
        return w[:-1]
    return w


_DEFAULT_LEXICON: dict[str, str] | None = None


def load_lexicon(path: str | Path | None = None) -> dict[str, str]:
    """Load a lemma -> tag lexicon.

    The file has ``[nouns]`` and ``[adjectives]`` sections with
    whitespace-separated words; ``#`` starts a comment. With no path the
    bundled lexicon is returned (cached).
    """
    global _DEFAULT_LEXICON
    if path is None:
        if _DEFAULT_LEXICON is None:
            text = (
                resources.files("hsnkeys.data").joinpath("lexicon.txt").read_text("utf-8")
            )
            _DEFAULT_LEXICON = _parse_lexicon(text)
        return _DEFAULT_LEXICON
    return _parse_lexicon(Path(path).read_text("utf-8"))


def _parse_lexicon(text: str) -> dict[str, str]:
    lexicon: dict[str, str] = {}
    tag = None
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if line == "[nouns]":
            tag = NOUN
            continue
        if line == "[adjectives]":
            tag = ADJECTIVE
            continue
        if tag is None:
            raise CorpusError("lexicon entries before any section header")
        for word in line.split():
            lexicon[word.lower()] = tag
    return lexicon


def _tag_lemma(lemma: str, lexicon: dict[str, str]) -> str:
    tag = lexicon.get(lemma)
    if tag is not None:
        return tag
    for suffix in _NOUN_SUFFIXES:
        if len(lemma) >= len(suffix) + 2 and lemma.endswith(suffix):
            return NOUN
    for suffix in _ADJ_SUFFIXES:
        if len(lemma) >= len(suffix) + 2 and lemma.endswith(suffix):
            return ADJECTIVE
    return OTHER


def tag_tokens(
    surfaces: Sequence[str], lexicon: dict[str, str] | None = None
) -> list[Token]:
    """Tag each surface with exactly one coarse tag; total and deterministic."""
    if lexicon is None:
        lexicon = load_lexicon()
    out = []
    for surface in surfaces:
        lemma = lemmatize(surface)
        out.append(Token(surface=surface, lemma=lemma, tag=_tag_lemma(lemma, lexicon)))
    return out


def tokenize(text: str) -> list[str]:
    """Split raw text into word surfaces (letters, optional apostrophe part)."""
    return _WORD_RE.findall(text)


def _coerce_tag(raw: str) -> str:
    upper = raw.upper()
    if upper.startswith(_PRETAG_NOUN) and not upper.startswith(_PRETAG_ADJ):
        return NOUN
    if upper.startswith(_PRETAG_ADJ):
        return ADJECTIVE
    return OTHER


def _parse_pretagged(text: str) -> list[Token]:
    tokens = []
    for item in text.split():
        surface, sep, tag = item.rpartition("/")
        if not sep:
            surface, tag = item, ""
        tokens.append(
            Token(surface=surface, lemma=lemmatize(surface), tag=_coerce_tag(tag))
        )
    return tokens


_DEFAULT_STOPWORDS: frozenset[str] | None = None


def default_stopwords() -> frozenset[str]:
    """The bundled English stopword list (lemmatized closure, cached)."""
    global _DEFAULT_STOPWORDS
    if _DEFAULT_STOPWORDS is None:
        text = (
            resources.files("hsnkeys.data").joinpath("stopwords.txt").read_text("utf-8")
        )
        _DEFAULT_STOPWORDS = _parse_stopwords(text)
    return _DEFAULT_STOPWORDS


def load_stopwords(path: str | Path) -> frozenset[str]:
    """Load stopwords from a file: one lemma per line, ``#`` comments."""
    return _parse_stopwords(Path(path).read_text("utf-8"))


def _parse_stopwords(text: str) -> frozenset[str]:
    words = set()
    for line in text.splitlines():
        entry = line.split("#", 1)[0].strip().lower()
        if entry:
            # Keep both the raw entry and its lemma so token lemmas always
            # match ("does" -> "doe").
            words.add(entry)
            words.add(lemmatize(entry))
    return frozenset(words)


def ingest_corpus(
    source: str | Path | BinaryIO | bytes,
    stopwords: Iterable[str] | None = None,
    *,
    min_frequency: int = 2,
    pretagged: bool = False,
    lexicon: dict[str, str] | None = None,
) -> Corpus:
    """Ingest a JSON Lines corpus into an immutable :class:`Corpus`.

    Each line is a JSON record with required ``id`` and ``text`` fields and
    an optional ``title``. With ``pretagged=True`` the text is read as
    whitespace-separated ``surface/TAG`` items instead of raw prose.
    Deterministic: identical input bytes produce identical corpora.

    Raises :class:`CorpusError` on malformed JSON (naming the line number),
    missing fields, duplicate ids, or an empty corpus.
    """
    data = _read_bytes(source)
    if stopwords is None:
        stopwords = default_stopwords()
    if lexicon is None:
        lexicon = load_lexicon()

    documents: list[Document] = []
    seen_ids: set[str] = set()
    for lineno, line in enumerate(data.decode("utf-8").splitlines(), start=1):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as exc:
            raise CorpusError(f"line {lineno}: malformed JSON ({exc.msg})") from exc
        if not isinstance(record, dict):
            raise CorpusError(f"line {lineno}: record is not a JSON object")
        if "id" not in record:
            raise CorpusError(f"line {lineno}: missing required field 'id'")
        if "text" not in record:
            raise CorpusError(f"line {lineno}: missing required field 'text'")
        doc_id = str(record["id"])
        if doc_id in seen_ids:
            raise CorpusError(f"line {lineno}: duplicate document id '{doc_id}'")
        seen_ids.add(doc_id)
        text = str(record["text"])
        if pretagged:
            tokens = _parse_pretagged(text)
        else:
            tokens = tag_tokens(tokenize(text), lexicon)
        title = record.get("title")
        documents.append(
            Document(
                id=doc_id,
                title=None if title is None else str(title),
                tokens=tuple(tokens),
                raw=text,
            )
        )

    if not documents:
        raise CorpusError("empty corpus: no records found")
    return Corpus(documents, stopwords=stopwords, min_frequency=min_frequency)


def _read_bytes(source: str | Path | BinaryIO | bytes) -> bytes:
    if isinstance(source, bytes):
        return source
    if isinstance(source, (str, Path)):
        return Path(source).read_bytes()
    if isinstance(source, io.TextIOBase):
        return source.read().encode("utf-8")
    return source.read()
