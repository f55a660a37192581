"""Token normalisation shared by the dictionary, corpus and text readers."""

import unicodedata


def strip_punctuation(s):
    return "".join(ch for ch in s if not unicodedata.category(ch).startswith("P"))


def normalize_token(raw):
    """Case-fold ``raw`` and drop punctuation characters.

    Returns an empty string when nothing but punctuation was left.
    """
    return strip_punctuation(raw.casefold()).strip()


def normalize_words(text):
    out = []
    for raw in text.split():
        tok = normalize_token(raw)
        if tok:
            out.append(tok)
    return out
