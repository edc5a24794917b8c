"""Byte-stable JSON and DOT serialization for the public structures.

Every emitter returns deterministic text: JSON uses sorted keys and
fixed separators, DOT iterates curves and crossings in system order, so
identical inputs give identical bytes.  Braid words serialize as signed
integer arrays (sign = generator sign), twist words as arrays of
``{curve, sign}`` objects, and move scripts as replayable arrays;
round-trip loaders validate as they parse.
"""
from __future__ import annotations

import hashlib
import json

from .factorization import AurouxCertificate, AurouxStep, Factorization, TwistLetter
from .monodromy import Colouring
from .surface import CurveId, CurveSystem, parse_curve

__all__ = [
    "stable_json",
    "sha256_hex",
    "system_to_dict",
    "system_to_dot",
    "matrix_to_dict",
    "twist_word_to_json",
    "twist_word_from_json",
    "pretty_twist_word",
    "letter_to_dict",
    "letter_from_dict",
    "factorization_to_dict",
    "factorization_from_dict",
    "script_to_json",
    "script_from_json",
    "braid_word_to_ints",
    "braid_word_from_ints",
    "colouring_to_dict",
    "blocks_to_dict",
    "certificate_to_dict",
    "certificate_from_dict",
    "replay_file_to_dict",
    "replay_file_from_dict",
]


def stable_json(payload) -> str:
    """Canonical JSON text: sorted keys, fixed separators, newline end."""
    return json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"


def sha256_hex(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()


# ---------------------------------------------------------------------------
# curve systems


def system_to_dict(sys: CurveSystem) -> dict:
    return {
        "b": sys.b,
        "sigma_signs": list(sys.sigma_signs) if sys.sigma_signs else None,
        "curves": [c.label for c in sys.curves],
        "crossings": [
            {"first": x.first.label, "second": x.second.label, "sign": x.sign}
            for x in sys.crossings
        ],
        "cyclic_orders": [
            {"curve": c.label, "crossings": list(sys.incidences_of(c))}
            for c in sys.curves
        ],
    }


def system_to_dot(sys: CurveSystem) -> str:
    """The crossing graph: one node per crossing, one edge per arc of a
    curve between consecutive crossings in its cyclic order (every node
    has valence four: two arcs per curve through it)."""
    lines = ["graph configuration {"]
    for i, x in enumerate(sys.crossings):
        tag = "+" if x.sign == 1 else "-"
        lines.append(
            f'  c{i} [label="{x.first.label} x {x.second.label} ({tag})"];'
        )
    for c in sys.curves:
        ring = sys.incidences_of(c)
        for k, here in enumerate(ring):
            there = ring[(k + 1) % len(ring)]
            lines.append(f'  c{here} -- c{there} [label="{c.label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def matrix_to_dict(m) -> dict:
    """Row-major integer arrays plus the owning model's fingerprint so a
    matrix cannot be replayed against a different model."""
    return {
        "matrix": [list(row) for row in m.matrix],
        "model_fingerprint": m.model_fingerprint,
        "word": twist_word_to_json(m.word) if m.word is not None else None,
    }


# ---------------------------------------------------------------------------
# twist words and factorizations


def _curve_label(core) -> str:
    if isinstance(core, CurveId):
        return core.label
    raise TypeError(f"only curve cores serialize here, got {core!r}")


def twist_word_to_json(word) -> list:
    return [{"curve": _curve_label(c), "sign": s} for c, s in word]


def twist_word_from_json(items) -> tuple:
    word = []
    for item in items:
        sign = int(item["sign"])
        if sign not in (1, -1):
            raise ValueError(f"bad twist sign {item['sign']!r}")
        word.append((parse_curve(item["curve"]), sign))
    return tuple(word)


def pretty_twist_word(word) -> str:
    """T-notation, leftmost printed first (rightmost acts first)."""
    if not word:
        return "Id"
    return " ".join(
        f"T[{_curve_label(c)}]" + ("" if s == 1 else "^-1") for c, s in word
    )


def letter_to_dict(letter: TwistLetter) -> dict:
    return {
        "core": _curve_label(letter.core),
        "sign": letter.sign,
        "conjugator": [[_curve_label(c), s] for c, s in letter.conjugator],
    }


def letter_from_dict(item: dict) -> TwistLetter:
    return TwistLetter(
        parse_curve(item["core"]),
        int(item["sign"]),
        tuple((parse_curve(c), int(s)) for c, s in item["conjugator"]),
    )


def factorization_to_dict(fact: Factorization) -> dict:
    return {"letters": [letter_to_dict(t) for t in fact.letters]}


def factorization_from_dict(item: dict) -> Factorization:
    return Factorization(tuple(letter_from_dict(t) for t in item["letters"]))


def script_to_json(script) -> list:
    return [[direction, index] for direction, index in script]


def script_from_json(items) -> tuple:
    script = []
    for direction, index in items:
        if direction not in ("left", "right"):
            raise ValueError(f"bad move direction {direction!r}")
        script.append((direction, int(index)))
    return tuple(script)


# ---------------------------------------------------------------------------
# braid words, colourings, monodromy blocks


def braid_word_to_ints(word) -> list:
    return [g * s for g, s in word]


def braid_word_from_ints(values) -> tuple:
    word = []
    for value in values:
        value = int(value)
        if value == 0:
            raise ValueError("generator 0 does not exist")
        word.append((abs(value), 1 if value > 0 else -1))
    return tuple(word)


def colouring_to_dict(colouring: Colouring) -> dict:
    return {
        "blocks": [
            {"label": str(label), "strands": list(block)}
            for label, block in colouring.blocks
        ]
    }


def blocks_to_dict(blocks: dict) -> dict:
    """Monodromy blocks in printed form plus machine-readable letters."""
    out = {}
    for name, block in blocks.items():
        out[name] = [
            {
                "label": letter.label(),
                "core": letter.core,
                "power": letter.power,
                "sign": letter.sign,
                "conjugator": braid_word_to_ints(letter.conjugator),
                "braid_word": braid_word_to_ints(letter.braid_word()),
            }
            for letter in block
        ]
    return out


# ---------------------------------------------------------------------------
# certificates and replay files


def certificate_to_dict(cert: AurouxCertificate, **context) -> dict:
    payload = dict(context)
    payload["base_cores"] = [_curve_label(c) for c in cert.base_cores]
    payload["steps"] = [
        {
            "core": _curve_label(step.core),
            "sign": step.sign,
            "source_index": step.source_index,
            "script": script_to_json(step.script),
            "front_letter": letter_to_dict(step.front_letter),
            "stripped_bare": step.stripped_bare,
        }
        for step in cert.steps
    ]
    return payload


def certificate_from_dict(item: dict) -> AurouxCertificate:
    return AurouxCertificate(
        base_cores=tuple(parse_curve(c) for c in item["base_cores"]),
        steps=tuple(
            AurouxStep(
                core=parse_curve(step["core"]),
                sign=int(step["sign"]),
                source_index=int(step["source_index"]),
                script=script_from_json(step["script"]),
                front_letter=letter_from_dict(step["front_letter"]),
                stripped_bare=bool(step["stripped_bare"]),
            )
            for step in item["steps"]
        ),
    )


def replay_file_to_dict(b: int, fact: Factorization, script, result: Factorization) -> dict:
    return {
        "b": b,
        "factorization": factorization_to_dict(fact),
        "script": script_to_json(script),
        "result": factorization_to_dict(result),
    }


def replay_file_from_dict(item: dict) -> tuple:
    return (
        int(item["b"]),
        factorization_from_dict(item["factorization"]),
        script_from_json(item["script"]),
        factorization_from_dict(item["result"]),
    )
