import json

import pytest

from taucollapse.certificate import (ReplayMismatch, collapse_certificate, dumps,
                                     normalize_certificate, replay, sqp_certificate,
                                     tau_certificate, verify)
from taucollapse.collapse import Roles, obstruct_bing_double, obstruct_hopf
from taucollapse.dsl import parse_tree


def test_bing_certificate_schema(db):
    doc = obstruct_bing_double(parse_tree("((*,*),*)"), "RHT", db).to_dict()
    assert set(doc) >= {"version", "input", "steps", "final_knot", "tau", "verdict",
                        "citations", "notes"}
    assert doc["version"] == 1 and doc["verdict"] == "not_smoothly_slice"
    step = doc["steps"][0]
    assert {m["move"] for m in step["covering_moves"]} == {"sublink", "branched_double_cover"}
    assert step["hedden"]["holds"]
    assert any("2*t_l" in n for n in doc["notes"])
    assert verify(doc)
    # JSON is integer-only
    assert "." not in json.dumps([doc["tau"], [s["u"] for s in doc["steps"]]])


def test_dumps_byte_stable(db):
    a = dumps(obstruct_hopf(parse_tree("(*,*)"), parse_tree("((*,*),*)"), db))
    b = dumps(obstruct_hopf(parse_tree("(*,*)"), parse_tree("((*,*),*)"), db))
    assert a == b and a.endswith("\n")


def test_replay_hopf_and_roles(db):
    doc = obstruct_hopf(parse_tree("((*,*),*)"), parse_tree("*"), db,
                        roles=Roles.LEFT_IS_Q).to_dict()
    assert doc["assembly"]["q_tree"] == 1
    assert replay(doc) == doc["final_knot"]


def test_replay_detects_tampering(db):
    doc = obstruct_bing_double(parse_tree("((*,*),(*,*))"), "RHT", db).to_dict()
    doc["steps"][2]["label"][0][1] = 7
    with pytest.raises(ReplayMismatch):
        replay(doc)
    doc = obstruct_bing_double(parse_tree("((*,*),(*,*))"), "RHT", db).to_dict()
    doc["final_knot"] = "O"
    assert not verify(doc)
    doc = obstruct_bing_double(parse_tree("((*,*),(*,*))"), "RHT", db).to_dict()
    del doc["steps"][1]
    with pytest.raises(ReplayMismatch):
        replay(doc)


def test_expression_certificates(db):
    doc = tau_certificate("Wh+(RHT)", db).to_dict()
    assert doc["tau"] == 1 and doc["final_knot"] == "D[O,-1](RHT,0)" and verify(doc)
    doc = normalize_certificate("Wh+(X)", db).to_dict()
    assert doc["tau"] is None and doc["final_knot"] == "D[O,-1](X,0)" and verify(doc)
    doc = sqp_certificate("D[RHT,-2](RHT,-3)", db).to_dict()
    assert doc["verdict"] == "not_smoothly_slice" and doc["tau"] == 1
    assert doc["input"]["sqp"] == "proven_yes"


def test_collapse_certificate(db):
    doc = collapse_certificate(parse_tree("(*,(*,*))"), "K", db).to_dict()
    assert doc["tau"] is None and len(doc["steps"]) == 2 and verify(doc)
    doc = collapse_certificate(parse_tree("(*,(*,*))"), "RHT", db).to_dict()
    assert doc["tau"] == 1 and verify(doc)
