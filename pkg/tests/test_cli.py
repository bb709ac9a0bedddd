"""End-to-end checks of the command-line front end.

Every json-lines record kind is validated against a schema transcribed
from docs/formats.md (additionalProperties: false, so the docs and the
code cannot drift apart silently), and the exit-code contract is pinned:
0 clean, 1 at least one failing record, 2 usage or unreadable input.
All invocations run `main` in-process.
"""

import json

import pytest
from jsonschema import Draft202012Validator

from seqprof.cli import main
from seqprof.typecheck import ERROR_CLASSES

import pathlib

from conftest import CORPUS as _CORPUS

CORPUS = pathlib.Path(_CORPUS)


def run(capsys, *argv: str):
    code = main(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def records(out: str) -> list[dict]:
    return [json.loads(line) for line in out.splitlines()]


# ---------------------------------------------------------------------------
# record schemas

STR = {"type": "string"}
STR_ARRAY = {"type": "array", "items": STR}
STR_PAIR = {
    "type": "array",
    "prefixItems": [STR, STR],
    "minItems": 2,
    "maxItems": 2,
    "items": False,
}
STR_TRIPLE = {
    "type": "array",
    "prefixItems": [STR, STR, STR],
    "minItems": 3,
    "maxItems": 3,
    "items": False,
}
FIBRE_TABLE = {
    "type": "array",
    "items": {
        "type": "object",
        "properties": {"point": STR_ARRAY, "elems": STR_ARRAY},
        "required": ["point", "elems"],
        "additionalProperties": False,
    },
}
CELL_TABLE = {
    "type": "array",
    "items": {
        "type": "object",
        "properties": {"point": STR_ARRAY, "map": {"type": "array", "items": STR_PAIR}},
        "required": ["point", "map"],
        "additionalProperties": False,
    },
}

SCHEMAS = {
    "check": {
        "type": "object",
        "properties": {
            "record": {"const": "check"},
            "file": STR,
            "name": STR,
            "kind": {"enum": ["type", "term", "coterm", "statement", "reduction"]},
            "line": {"type": "integer", "minimum": 1},
            "col": {"type": "integer", "minimum": 1},
            "ok": {"type": "boolean"},
            "judgment": STR,
            "source": STR,
            "target": STR,
            "error_class": {"enum": list(ERROR_CLASSES)},
            "message": STR,
        },
        "required": ["record", "file", "line", "col", "ok"],
        "additionalProperties": False,
        "allOf": [
            {
                "if": {"properties": {"ok": {"const": False}}, "required": ["ok"]},
                "then": {"required": ["error_class", "message"]},
            },
            {
                "if": {"properties": {"ok": {"const": True}}, "required": ["ok"]},
                "then": {"required": ["name", "kind"]},
            },
            {
                "if": {
                    "properties": {
                        "ok": {"const": True},
                        "kind": {"const": "reduction"},
                    },
                    "required": ["ok", "kind"],
                },
                "then": {"required": ["source", "target"]},
            },
        ],
    },
    "interp": {
        "type": "object",
        "properties": {
            "record": {"const": "interp"},
            "file": STR,
            "name": STR,
            "kind": {"enum": ["type", "expr", "reduction"]},
            "ok": {"type": "boolean"},
            "message": STR,
            "judgment": STR,
            "inputs": {"type": "array", "items": STR_PAIR},
            "outputs": {"type": "array", "items": STR_PAIR},
            "table": FIBRE_TABLE,
            "objects": STR_ARRAY,
            "arrows": {"type": "array", "items": STR_TRIPLE},
            "source": STR,
            "target": STR,
            "cells": CELL_TABLE,
        },
        "required": ["record", "file", "name", "ok"],
        "additionalProperties": False,
        "allOf": [
            {
                "if": {"properties": {"ok": {"const": False}}, "required": ["ok"]},
                "then": {"required": ["message"]},
            },
            {
                "if": {"properties": {"kind": {"const": "expr"}}, "required": ["kind"]},
                "then": {"required": ["judgment", "inputs", "outputs", "table"]},
            },
            {
                "if": {"properties": {"kind": {"const": "type"}}, "required": ["kind"]},
                "then": {"required": ["objects", "arrows"]},
            },
            {
                "if": {
                    "properties": {"kind": {"const": "reduction"}},
                    "required": ["kind"],
                },
                "then": {"required": ["source", "target", "cells"]},
            },
        ],
    },
    "verify": {
        "type": "object",
        "properties": {
            "record": {"const": "verify"},
            "file": STR,
            "name": STR,
            "property": {
                "type": "string",
                "pattern": (
                    "^(functor-laws|mode|unit-law|composition-oracle"
                    "|naturality|endpoints|coincidence\\[.*\\])$"
                ),
            },
            "ok": {"type": "boolean"},
            "detail": STR,
        },
        "required": ["record", "file", "name", "property", "ok"],
        "additionalProperties": False,
    },
    "base": {
        "type": "object",
        "properties": {
            "record": {"const": "base"},
            "file": STR,
            "ok": {"const": False},
            "message": STR,
        },
        "required": ["record", "file", "ok", "message"],
        "additionalProperties": False,
    },
    "demo-lafont": {
        "type": "object",
        "properties": {
            "record": {"const": "demo"},
            "demo": {"const": "lafont"},
            "ok": {"type": "boolean"},
            "source": STR,
            "reductions": {
                "type": "array",
                "minItems": 2,
                "maxItems": 2,
                "items": {
                    "type": "object",
                    "properties": {"witness": STR, "target": STR},
                    "required": ["witness", "target"],
                    "additionalProperties": False,
                },
            },
            "targets_differ": {"type": "boolean"},
            "left_cells": CELL_TABLE,
            "right_cells": CELL_TABLE,
        },
        "required": [
            "record", "demo", "ok", "source", "reductions",
            "targets_differ", "left_cells", "right_cells",
        ],
        "additionalProperties": False,
    },
    "demo-nondegeneracy": {
        "type": "object",
        "properties": {
            "record": {"const": "demo"},
            "demo": {"const": "nondegeneracy"},
            "ok": {"type": "boolean"},
            "searched": {"type": "integer", "minimum": 0},
            "witness": {
                "oneOf": [
                    {"type": "null"},
                    {
                        "type": "object",
                        "properties": {
                            "left": STR,
                            "right": STR,
                            "judgment": STR,
                            "point": STR_ARRAY,
                            "from": STR,
                        },
                        "required": ["left", "right", "judgment", "point", "from"],
                        "additionalProperties": False,
                    },
                ]
            },
        },
        "required": ["record", "demo", "ok", "searched", "witness"],
        "additionalProperties": False,
    },
    "demo-rel-collapse": {
        "type": "object",
        "properties": {
            "record": {"const": "demo"},
            "demo": {"const": "rel-collapse"},
            "ok": {"type": "boolean"},
            "parallel_pairs": {"type": "integer", "minimum": 0},
            "distinct_pairs": {"type": "integer", "minimum": 0},
            "type_notes": STR_ARRAY,
        },
        "required": [
            "record", "demo", "ok", "parallel_pairs", "distinct_pairs", "type_notes",
        ],
        "additionalProperties": False,
    },
    "demo-fail": {
        "type": "object",
        "properties": {
            "record": {"const": "demo"},
            "demo": {"enum": ["lafont", "nondegeneracy", "rel-collapse"]},
            "ok": {"const": False},
            "message": STR,
        },
        "required": ["record", "demo", "ok", "message"],
        "additionalProperties": False,
    },
}

VALIDATORS = {k: Draft202012Validator(s) for k, s in SCHEMAS.items()}


def check_record(rec: dict):
    key = rec["record"]
    if key == "demo":
        key = "demo-fail" if "message" in rec else f"demo-{rec['demo']}"
    errors = [e.message for e in VALIDATORS[key].iter_errors(rec)]
    assert not errors, f"{key} record fails schema: {errors}\n{rec}"


def test_schemas_are_themselves_valid():
    for s in SCHEMAS.values():
        Draft202012Validator.check_schema(s)


# ---------------------------------------------------------------------------
# check

def test_check_corpus_records(corpus_files, capsys):
    code, out, err = run(capsys, "check", "--format", "json-lines", *corpus_files)
    assert code == 0
    assert err == ""
    recs = records(out)
    assert len(recs) >= 30
    for r in recs:
        check_record(r)
        assert r["ok"] is True
    kinds = {r["kind"] for r in recs}
    assert {"term", "coterm", "statement", "reduction"} <= kinds


def test_check_negative_corpus(negative_files, capsys):
    code, out, _ = run(capsys, "check", "--format", "json-lines", *negative_files)
    assert code == 1
    recs = records(out)
    for r in recs:
        check_record(r)
    bad = {r["error_class"] for r in recs if not r["ok"]}
    assert set(ERROR_CLASSES) <= bad


def test_check_human_format(corpus_files, capsys):
    code, out, _ = run(capsys, "check", corpus_files[0])
    assert code == 0
    lines = out.splitlines()
    assert lines
    for line in lines:
        assert line.startswith(corpus_files[0] + ":")
        assert ": OK " in line
    # human mode never leaks record syntax
    assert "{" not in out


def test_empty_file_passes(tmp_path, capsys):
    f = tmp_path / "empty.c2"
    f.write_text("-- nothing here\n")
    code, out, _ = run(capsys, "check", "--format", "json-lines", str(f))
    assert code == 0
    assert out == ""


# ---------------------------------------------------------------------------
# interp

def test_interp_records_and_schema(base_dir, capsys):
    code, out, _ = run(
        capsys,
        "interp", "--base", str(pathlib.Path(base_dir) / "mixed.base"),
        "--format", "json-lines", str(CORPUS / "logical.c2"),
    )
    assert code == 0
    recs = records(out)
    for r in recs:
        check_record(r)
        assert r["ok"] is True
    kinds = {r["kind"] for r in recs if r["record"] == "interp"}
    assert kinds == {"type", "expr", "reduction"}


def test_interp_rel_mode_truncates(base_dir, capsys):
    code, out, _ = run(
        capsys,
        "interp", "--mode", "rel", "--base", str(pathlib.Path(base_dir) / "discrete2.base"),
        "--format", "json-lines", str(CORPUS / "structural.c2"),
    )
    assert code == 0
    tables = [r["table"] for r in records(out) if r.get("kind") == "expr"]
    assert tables
    for table in tables:
        for row in table:
            assert row["elems"] in ([], ["•"])


def test_interp_span_rejects_nondiscrete_base(base_dir, capsys):
    code, out, _ = run(
        capsys,
        "interp", "--mode", "span", "--base", str(pathlib.Path(base_dir) / "parallel.base"),
        "--format", "json-lines", str(CORPUS / "structural.c2"),
    )
    assert code == 1
    bad = [r for r in records(out) if not r["ok"]]
    assert bad
    for r in bad:
        check_record(r)
        assert "discrete" in r["message"]


def test_interp_precheck_failures_come_as_check_records(tmp_path, base_dir, capsys):
    f = tmp_path / "mixed.c2"
    f.write_text(
        "term good [] : +Top = ()\n"
        "term bad [] : +Top = x\n"
    )
    code, out, _ = run(
        capsys,
        "interp", "--base", str(pathlib.Path(base_dir) / "terminal.base"),
        "--format", "json-lines", str(f),
    )
    assert code == 1
    recs = records(out)
    by = {(r["record"], r.get("name")) for r in recs}
    assert ("check", "bad") in by
    assert ("interp", "good") in by
    assert ("interp", "bad") not in by


# ---------------------------------------------------------------------------
# verify

def test_verify_records(base_dir, capsys):
    code, out, _ = run(
        capsys,
        "verify", "--base", str(pathlib.Path(base_dir) / "terminal.base"),
        "--format", "json-lines", str(CORPUS / "structural.c2"),
    )
    assert code == 0
    recs = records(out)
    assert recs
    for r in recs:
        check_record(r)
        assert r["ok"] is True
    props = {r["property"].split("[")[0] for r in recs}
    assert {
        "functor-laws", "mode", "unit-law", "composition-oracle",
        "naturality", "endpoints", "coincidence",
    } <= props
    base_rows = [r for r in recs if r["name"] == "base"]
    assert base_rows
    assert all(r["file"] == "-" for r in base_rows)


# ---------------------------------------------------------------------------
# base assignment handling

def test_bad_base_content_is_failure_not_usage(tmp_path, capsys):
    bad = tmp_path / "bad.base"
    bad.write_text("A = terminal\nA = arrow\n")
    code, out, err = run(
        capsys,
        "interp", "--base", str(bad),
        "--format", "json-lines", str(CORPUS / "structural.c2"),
    )
    assert code == 1
    recs = records(out)
    assert len(recs) == 1
    check_record(recs[0])
    assert recs[0]["record"] == "base"
    assert "assigned twice" in recs[0]["message"]


def test_corrupt_category_file_is_failure(tmp_path, capsys):
    (tmp_path / "broken.fincat").write_text("objects p\narrow f : p -> q\n")
    b = tmp_path / "b.base"
    b.write_text("* = @broken.fincat\n")
    code, out, _ = run(
        capsys,
        "verify", "--base", str(b),
        "--format", "json-lines", str(CORPUS / "structural.c2"),
    )
    assert code == 1
    rec = records(out)[0]
    check_record(rec)
    assert rec["record"] == "base"


def test_missing_base_flag_is_usage(capsys, monkeypatch):
    monkeypatch.delenv("SEQPROF_BASE", raising=False)
    code, out, err = run(
        capsys, "interp", "--format", "json-lines", str(CORPUS / "structural.c2")
    )
    assert code == 2
    assert out == ""
    assert "--base" in err and "SEQPROF_BASE" in err


def test_nonexistent_base_path_is_usage(capsys, tmp_path):
    code, out, err = run(
        capsys,
        "interp", "--base", str(tmp_path / "no-such.base"),
        str(CORPUS / "structural.c2"),
    )
    assert code == 2
    assert "cannot read" in err


def test_env_base_fallback(capsys, monkeypatch, base_dir):
    monkeypatch.setenv("SEQPROF_BASE", str(pathlib.Path(base_dir) / "terminal.base"))
    code, out, _ = run(
        capsys, "interp", "--format", "json-lines", str(CORPUS / "structural.c2")
    )
    assert code == 0
    assert records(out)


# ---------------------------------------------------------------------------
# usage errors

def test_unreadable_source_is_usage(capsys):
    code, out, err = run(capsys, "check", "/no/such/dir/missing.c2")
    assert code == 2
    assert out == ""
    assert "cannot read" in err


def test_unknown_flag_rejected(capsys):
    with pytest.raises(SystemExit) as ei:
        main(["check", "--frobnicate", "x.c2"])
    assert ei.value.code == 2


def test_unknown_flag_among_trailing_positionals(base_dir, capsys):
    with pytest.raises(SystemExit) as ei:
        main([
            "demo", "rel-collapse",
            "--base", str(pathlib.Path(base_dir) / "discrete2.base"),
            str(CORPUS / "structural.c2"), "--bogus",
        ])
    assert ei.value.code == 2


def test_rel_collapse_needs_files(capsys, base_dir):
    code, out, err = run(
        capsys, "demo", "rel-collapse", "--base", str(pathlib.Path(base_dir) / "discrete2.base")
    )
    assert code == 2
    assert "FILE" in err


# ---------------------------------------------------------------------------
# demos

def test_demo_lafont(capsys, base_dir):
    code, out, _ = run(
        capsys,
        "demo", "lafont", "--base", str(pathlib.Path(base_dir) / "terminal.base"),
        "--format", "json-lines",
    )
    assert code == 0
    recs = records(out)
    assert len(recs) == 1
    r = recs[0]
    check_record(r)
    assert r["targets_differ"] is True
    t1, t2 = (x["target"] for x in r["reductions"])
    assert t1 != t2


def test_demo_nondegeneracy_finds_corpus_witness(capsys, base_dir):
    code, out, _ = run(
        capsys,
        "demo", "nondegeneracy", "--base", str(pathlib.Path(base_dir) / "parallel.base"),
        "--format", "json-lines", str(CORPUS / "critical.c2"),
    )
    assert code == 0
    r = records(out)[-1]
    check_record(r)
    assert r["witness"] is not None
    assert r["witness"]["from"].endswith("critical.c2")


def test_demo_rel_collapse(capsys, base_dir, corpus_files):
    code, out, _ = run(
        capsys,
        "demo", "rel-collapse", "--base", str(pathlib.Path(base_dir) / "discrete2.base"),
        "--format", "json-lines", *corpus_files,
    )
    assert code == 0
    r = records(out)[-1]
    check_record(r)
    assert r["distinct_pairs"] == 0
    assert r["parallel_pairs"] >= 1


def test_demo_flag_order_irrelevant(capsys, base_dir):
    b = str(pathlib.Path(base_dir) / "discrete2.base")
    src = str(CORPUS / "structural.c2")
    c1, o1, _ = run(
        capsys, "demo", "rel-collapse", "--base", b, src, "--format", "json-lines"
    )
    c2, o2, _ = run(
        capsys, "demo", "rel-collapse", src, "--base", b, "--format", "json-lines"
    )
    assert c1 == c2 == 0
    assert o1 == o2


# ---------------------------------------------------------------------------
# output discipline

def test_output_is_deterministic(capsys, base_dir):
    args = (
        "interp", "--base", str(pathlib.Path(base_dir) / "mixed.base"),
        "--format", "json-lines", str(CORPUS / "logical.c2"),
    )
    c1, o1, _ = run(capsys, *args)
    c2, o2, _ = run(capsys, *args)
    assert c1 == c2 == 0
    assert o1 == o2


def test_verbose_human_detail(capsys, base_dir):
    code, out, _ = run(
        capsys,
        "interp", "--base", str(pathlib.Path(base_dir) / "terminal.base"), "-v",
        str(CORPUS / "logical.c2"),
    )
    assert code == 0
    assert "    objects:" in out
