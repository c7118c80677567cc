import json
import random

import pytest

from cosegal import documents as docs
from cosegal.chain import ChainMap
from cosegal.field_linalg import GF2, GF3, GF5, QQ
from cosegal.free_gamma import gamma_na
from cosegal.premonoid import PremonoidMorphism, from_strict
from cosegal.sampling import (
    random_chain_map,
    random_complex,
    random_k2_instruction,
    random_strict_monoid,
    random_tower_diagram,
    random_two_constant,
)
from cosegal.two_constant import expand_to_premonoid


def canonical_roundtrip(obj, kind):
    text = docs.dump_document(obj, kind)
    payload = json.loads(text)
    kind2, obj2 = docs.load_document(payload)
    assert kind2 == kind
    assert docs.dump_document(obj2, kind) == text
    return obj2


def test_complex_roundtrip():
    rng = random.Random(1)
    for field in (GF2, GF3, QQ):
        c = random_complex(rng, field, -1, 2, 3)
        c2 = canonical_roundtrip(c, "complex")
        assert c2 == c


def test_rational_entries_roundtrip():
    from fractions import Fraction

    c = random_complex(random.Random(2), QQ, 0, 1, 2)
    m = random_chain_map(random.Random(3), c, c)
    m2 = canonical_roundtrip(m, "map")
    assert m2 == m


def test_map_roundtrip():
    rng = random.Random(4)
    a = random_complex(rng, GF3, 0, 2, 2)
    b = random_complex(rng, GF3, 0, 2, 2)
    f = random_chain_map(rng, a, b)
    assert canonical_roundtrip(f, "map") == f


def test_diagram_and_na_diagram_roundtrip():
    rng = random.Random(5)
    f = random_tower_diagram(rng, GF2, 2, 0, 1, 2)
    f2 = canonical_roundtrip(f, "diagram")
    assert f2.structure == f.structure
    g, _ = gamma_na(f)
    g2 = canonical_roundtrip(g, "na_diagram")
    assert g2.laxity == g.laxity


def test_premonoid_roundtrip():
    rng = random.Random(6)
    m = random_strict_monoid(rng, GF2, allow_graded=False)
    f = from_strict(m, 3)
    f2 = canonical_roundtrip(f, "premonoid")
    assert f2.objects == f.objects
    assert f2.laxity == f.laxity
    assert f2.unit == f.unit


def test_morphism_roundtrip():
    rng = random.Random(7)
    m = random_strict_monoid(rng, GF3, allow_graded=False)
    f = from_strict(m, 2)
    s = PremonoidMorphism.identity(f)
    s2 = canonical_roundtrip(s, "morphism")
    assert s2.components == s.components


def test_two_constant_and_instruction_roundtrip():
    rng = random.Random(8)
    f = random_two_constant(rng, GF2, surjective_h=True)
    f2 = canonical_roundtrip(f, "two_constant")
    assert f2.h == f.h and f2.base == f.base
    ins = random_k2_instruction(rng, f, 1)
    text = docs.dump_document(ins, "instruction")
    payload = json.loads(text)
    ins2 = docs.instruction_from_dict(payload, f)
    assert ins2.q == ins.q and ins2.p == ins.p
    assert docs.dump_document(ins2, "instruction") == text


def test_bad_schema_is_document_error():
    with pytest.raises(docs.DocumentError):
        docs.load_document({"kind": "widget"})
    with pytest.raises(docs.DocumentError):
        docs.complex_from_dict({"field": "two", "dims": {}})
    with pytest.raises(docs.DocumentError):
        docs.complex_from_dict({"field": 2, "dims": {"0": -1}})
    with pytest.raises(docs.DocumentError):
        docs.complex_from_dict({"field": 2, "dims": {"0": 1}, "diff": {"0": [[1, 2]]}})


def test_broken_math_is_validation_failure():
    # d.d != 0
    with pytest.raises(docs.ValidationFailure):
        docs.complex_from_dict(
            {
                "field": 2,
                "dims": {"0": 1, "1": 1, "2": 1},
                "diff": {"1": [[1]], "2": [[1]]},
            }
        )
    # valid complexes, non-chain component
    payload = {
        "kind": "map",
        "source": {"field": 2, "dims": {"0": 1, "1": 1}, "diff": {"1": [[1]]}},
        "target": {"field": 2, "dims": {"0": 1}, "diff": {}},
        "components": {"0": [[1]]},
    }
    with pytest.raises(docs.ValidationFailure):
        docs.load_document(payload)


def test_max_dim_cap():
    with pytest.raises(docs.DocumentError):
        docs.complex_from_dict({"field": 2, "dims": {"0": 10}}, max_dim=4)


def test_corrupted_laxity_names_the_square():
    # depending on the differentials, the corruption is caught either at load
    # time (chain-map failure naming the laxity key) or by the axiom pass
    rng = random.Random(9)
    f = random_two_constant(rng, GF2)
    g = expand_to_premonoid(f, 2)
    doc = docs.premonoid_to_dict(g)
    key = sorted(doc["laxity"])[0]
    deg = sorted(doc["laxity"][key])[0]
    doc["laxity"][key][deg][0][0] = (doc["laxity"][key][deg][0][0] + 1) % 2
    try:
        loaded = docs.premonoid_from_dict(doc)
    except docs.ValidationFailure as exc:
        assert any("laxity" in str(v.where) for v in exc.violations)
    else:
        from cosegal.premonoid import validate

        report = validate(loaded)
        assert report
        for v in report:
            assert "1" in "".join(str(w) for w in v.where) or v.axiom == "diag-unitality"


def test_canonical_serialization_is_stable():
    rng = random.Random(10)
    c = random_complex(rng, GF5, -1, 2, 3)
    t1 = docs.dump_document(c, "complex")
    t2 = docs.dump_document(c, "complex")
    assert t1 == t2
    assert t1.endswith("\n")
    # key order does not depend on construction order
    payload = json.loads(t1)
    shuffled = json.loads(json.dumps(payload))
    _, c2 = docs.load_document(shuffled)
    assert docs.dump_document(c2, "complex") == t1
