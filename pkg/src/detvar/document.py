"""JSON problem documents for the EIDS commands.

Layout::

    {"schema_version": "1", "q": 9, "n": 3, "k": 0, "t": 2,
     "strata": [{"i": 1, "chi_stab": 1}, {"i": 2, "m_top": 0, "eu0": 3}]}

Unknown keys anywhere are rejected. ``schema_version`` may be omitted on
input. Integers may be given as decimal strings, which is how large values
are written back out.
"""

import json
from dataclasses import dataclass

import jsonschema

from .eids import EidsProblem, StratumInvariants
from .errors import SchemaError
from .report import dumps

SCHEMA_VERSION = "1"

_INT = {"anyOf": [{"type": "integer"}, {"type": "string", "pattern": "^-?[0-9]+$"}]}

SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["q", "n", "k", "t", "strata"],
    "properties": {
        "schema_version": {"type": "string"},
        "q": _INT,
        "n": _INT,
        "k": _INT,
        "t": _INT,
        "strata": {
            "type": "array",
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["i"],
                "properties": {"i": _INT, "chi_stab": _INT, "m_top": _INT, "eu0": _INT},
            },
        },
    },
}

_VALIDATOR = jsonschema.Draft202012Validator(SCHEMA)


@dataclass(frozen=True)
class ProblemDocument:
    problem: EidsProblem
    schema_version: str = SCHEMA_VERSION

    def to_dict(self):
        p = self.problem
        strata = []
        for entry in p.strata:
            item = {"i": entry.i}
            for name in entry.supplied():
                item[name] = getattr(entry, name)
            strata.append(item)
        return {
            "schema_version": self.schema_version,
            "q": p.q,
            "n": p.n,
            "k": p.k,
            "t": p.t,
            "strata": strata,
        }

    @classmethod
    def from_dict(cls, data):
        errors = sorted(_VALIDATOR.iter_errors(data), key=lambda e: list(e.path))
        if errors:
            err = errors[0]
            where = "/".join(str(p) for p in err.path) or "<root>"
            raise SchemaError(f"{where}: {err.message}")
        strata = tuple(
            StratumInvariants(
                i=int(item["i"]),
                **{k: int(v) for k, v in item.items() if k != "i"},
            )
            for item in data["strata"]
        )
        problem = EidsProblem(
            q=int(data["q"]), n=int(data["n"]), k=int(data["k"]), t=int(data["t"]), strata=strata
        )
        return cls(problem, data.get("schema_version", SCHEMA_VERSION))


def parse(text):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from None
    return ProblemDocument.from_dict(data)


def emit(doc):
    return dumps(doc.to_dict())
