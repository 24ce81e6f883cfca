"""JSON round trips for domains and operation tables."""
from __future__ import annotations

import json

import pytest

from galkit import catalog, fileio
from galkit.errors import FormatError
from galkit.functions import AbstractFn, ConcreteFn
from galkit.galois import CarrierConn, ClosureOp, GaloisConn, check_cgc
from galkit.transforms import t_cco


def roundtrip(conn):
    return fileio.domain_from_dict(
        json.loads(json.dumps(fileio.domain_to_dict(conn)))
    )


def test_cgc_roundtrip(parity):
    back = roundtrip(parity)
    assert isinstance(back, CarrierConn) and back.kind == "cgc"
    assert back.eta == parity.eta and back.mu == parity.mu
    assert back.carrier.mode == "modular"
    assert check_cgc(back).ok


def test_cgp_roundtrip():
    C = catalog.builtin("plustop_cgp", 8)
    back = roundtrip(C)
    assert back.kind == "cgp"
    assert back.eta == C.eta and back.mu == C.mu
    assert back.abstract_poset.leq("+", "⊤")


def test_pcgc_roundtrip(signconst):
    back = roundtrip(signconst)
    assert back.kind == "pcgc"
    assert back.eta == signconst.eta and back.mu == signconst.mu


def test_gc_roundtrip_small():
    G = catalog.builtin("sign_pgi", 5)
    back = roundtrip(G)
    assert isinstance(back, GaloisConn)
    assert back.gamma == G.gamma
    # the stored table covers every subset at this size
    for X in G.iter_concrete():
        assert back.alpha(X) == G.alpha(X)


def test_gc_roundtrip_large_falls_back_to_derived_alpha(sign_pgi):
    data = fileio.domain_to_dict(sign_pgi)
    # only the empty set and the singletons are stored for large carriers
    assert len(data["alpha"]) == len(sign_pgi.carrier.values) + 1
    back = fileio.domain_from_dict(data)
    assert back.gamma == sign_pgi.gamma
    assert back.alpha(["3", "5"]) == sign_pgi.alpha(["3", "5"])
    assert back.alpha(["-2", "2"]) == sign_pgi.alpha(["-2", "2"])


def test_cco_roundtrip():
    phi = t_cco(catalog.sign_cgc(4))
    back = roundtrip(phi)
    assert isinstance(back, ClosureOp)
    assert back.phi == phi.phi


def test_save_and_load_files(tmp_path, parity):
    path = tmp_path / "parity.json"
    fileio.save_domain(parity, str(path))
    back = fileio.load_domain(str(path))
    assert back.eta == parity.eta

    fpath = tmp_path / "fn.json"
    fn = ConcreteFn(1, {v: v for v in parity.carrier.values})
    fileio.save_fn("concrete", fn, str(fpath))
    over, loaded = fileio.load_fn(str(fpath))
    assert over == "concrete" and loaded.table == fn.table


def test_binary_fn_roundtrip():
    fn = AbstractFn(2, {("a", "b"): "c", ("b", "a"): "c"})
    data = fileio.fn_to_dict("abstract", fn)
    assert data["table"] == {"a,b": "c", "b,a": "c"}
    over, back = fileio.fn_from_dict(data)
    assert over == "abstract" and back.table == fn.table


def test_format_errors():
    with pytest.raises(FormatError):
        fileio.domain_from_dict({"carrier": {"atoms": ["a"]}})
    with pytest.raises(FormatError):
        fileio.domain_from_dict({"kind": "nope", "carrier": {"atoms": ["a"]}})
    with pytest.raises(FormatError):
        fileio.domain_from_dict(
            {
                "kind": "cgc",
                "carrier": {"atoms": ["a"]},
                "abstract": {"elements": ["x"], "leq": []},
                "eta": {"a": "x"},
                "mu": {"x": ["a"]},
                "extra": 1,
            }
        )
    with pytest.raises(FormatError):
        fileio.fn_from_dict({"arity": 3, "over": "concrete", "table": {}})
    with pytest.raises(FormatError):
        fileio.fn_from_dict({"arity": 1, "over": "nope", "table": {}})
    with pytest.raises(FormatError):
        fileio.fn_from_dict(
            {"arity": 2, "over": "concrete", "table": {"a": "b"}}
        )


def test_load_rejects_invalid_json(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json", encoding="utf-8")
    with pytest.raises(FormatError):
        fileio.load_domain(str(path))
    with pytest.raises(FormatError):
        fileio.load_fn(str(path))


def test_alpha_keys_must_be_canonical_subset_strings():
    with pytest.raises(FormatError):
        fileio.domain_from_dict(
            {
                "kind": "gc",
                "carrier": {"atoms": ["a"]},
                "abstract": {"elements": ["x"], "leq": []},
                "alpha": {"a": "x"},
                "gamma": {"x": ["a"]},
            }
        )
