"""Group files, element literals and JSON encoding of big integers.

Element literals come in two shapes:

* normal form ``[a1,...,an] t^k`` (the ``t`` part optional, bare ``t``
  meaning ``t^1``);
* free words of whitespace-separated letters ``g3^-2``, ``t^5``, ``g1``, ``t``.

JSON integers are numbers when ``|x| < 2**53`` and decimal strings beyond.
"""

from __future__ import annotations

import json
import re
from pathlib import Path
from typing import Any, List, Union

from .errors import UsageError
from .group import AbcGroup, GroupElement, GroupWord, collect, make_group
from .linalg import IntMatrix, as_matrix

SAFE_INT = 2**53

_INT = re.compile(r"[+-]?\d+")
_LETTER = re.compile(r"(?:g(\d+)|(t))(?:\^([+-]?\d+))?")
_T_PART = re.compile(r"t(?:\^([+-]?\d+))?")


class ParseError(UsageError):
    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at column {position + 1}: {text!r}")
        self.message = message
        self.text = text
        self.position = position


def encode_int(x: int) -> Union[int, str]:
    return x if abs(x) < SAFE_INT else str(x)


def decode_int(value: Any) -> int:
    if isinstance(value, bool):
        raise UsageError(f"expected an integer, got {value!r}")
    if isinstance(value, int):
        return value
    if isinstance(value, float) and value.is_integer() and abs(value) < SAFE_INT:
        return int(value)
    if isinstance(value, str) and re.fullmatch(r"\s*[+-]?\d+\s*", value):
        return int(value)
    raise UsageError(f"expected an integer, got {value!r}")


def decode_matrix(value: Any) -> IntMatrix:
    if not isinstance(value, list) or not all(isinstance(r, list) for r in value):
        raise UsageError("matrix must be a JSON array of arrays")
    return as_matrix([[decode_int(a) for a in row] for row in value])


def encode_matrix(A: IntMatrix) -> List[List[Union[int, str]]]:
    return [[encode_int(a) for a in row] for row in A]


def element_to_json(g: GroupElement) -> dict:
    return {"w": [encode_int(a) for a in g.w], "k": encode_int(g.k)}


def element_from_json(value: Any) -> GroupElement:
    try:
        return GroupElement(tuple(decode_int(a) for a in value["w"]), decode_int(value["k"]))
    except (KeyError, TypeError) as exc:
        raise UsageError(f"malformed element object: {value!r}") from exc


def _read_json(path) -> Any:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from exc


def group_from_json(data: Any) -> AbcGroup:
    if not isinstance(data, dict) or "phi" not in data:
        raise UsageError('group file must be an object with a "phi" matrix')
    phi = decode_matrix(data["phi"])
    n = decode_int(data["n"]) if "n" in data else len(phi)
    return make_group(n, phi)


def group_to_json(G: AbcGroup) -> dict:
    return {"n": G.n, "phi": encode_matrix(G.phi)}


def load_group(path) -> AbcGroup:
    return group_from_json(_read_json(path))


def load_matrix(path) -> IntMatrix:
    """A bare array of arrays, or an object holding ``matrix`` or ``phi``."""
    data = _read_json(path)
    if isinstance(data, dict):
        for key in ("matrix", "phi"):
            if key in data:
                return decode_matrix(data[key])
        raise UsageError('matrix file object needs a "matrix" or "phi" entry')
    return decode_matrix(data)


def parse_word(text: str) -> GroupWord:
    letters = []
    for match in re.finditer(r"\S+", text):
        token = match.group()
        m = _LETTER.fullmatch(token)
        if not m:
            raise ParseError(f"bad letter {token!r}", text, match.start())
        index, is_t, exponent = m.groups()
        exponent = int(exponent) if exponent is not None else 1
        letters.append(("t" if is_t else int(index), exponent))
    return tuple(letters)


def parse_vector(text: str, n: int = None) -> tuple:
    """``[a1,...,an]`` (brackets optional) into an integer tuple."""
    body = text.strip()
    if body.startswith("[") and body.endswith("]"):
        body = body[1:-1]
    if not body.strip():
        entries = []
    else:
        entries = []
        offset = text.find(body)
        pos = 0
        for part in body.split(","):
            if not _INT.fullmatch(part.strip()):
                lead = len(part) - len(part.lstrip())
                raise ParseError(f"bad integer {part.strip()!r}", text, offset + pos + lead)
            entries.append(int(part))
            pos += len(part) + 1
    if n is not None and len(entries) != n:
        raise UsageError(f"vector {text!r} has {len(entries)} entries, expected {n}")
    return tuple(entries)


def parse_element(G: AbcGroup, text: str) -> GroupElement:
    """Parse a normal-form literal or a free word into a normal form."""
    stripped = text.lstrip()
    if stripped.startswith("["):
        start = len(text) - len(stripped)
        close = text.find("]", start)
        if close < 0:
            raise ParseError("unclosed '['", text, start)
        try:
            w = parse_vector(text[start : close + 1])
        except ParseError as exc:
            raise ParseError(exc.message, text, start + exc.position) from None
        if len(w) != G.n:
            raise ParseError(f"expected {G.n} coordinates, got {len(w)}", text, start)
        rest = text[close + 1 :]
        tail = rest.strip()
        k = 0
        if tail:
            m = _T_PART.fullmatch(tail)
            if not m:
                raise ParseError("expected 't' or 't^k' after the vector", text, close + 1 + rest.find(tail))
            k = int(m.group(1)) if m.group(1) is not None else 1
        return GroupElement(w, k)
    word = parse_word(text)
    for gen, _ in word:
        if gen != "t" and not 1 <= gen <= G.n:
            pos = text.find(f"g{gen}")
            raise ParseError(f"generator g{gen} out of range 1..{G.n}", text, max(pos, 0))
    return collect(G, word)
