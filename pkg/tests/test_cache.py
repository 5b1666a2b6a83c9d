import json

from g1tloewy.cache import PersistentCache


def test_round_trip(tmp_path):
    path = tmp_path / "c.log"
    c = PersistentCache(path, "ns")
    c.put("a", [[0, 1], [2, 1]])
    c.put("b", {"x": 1})
    d = PersistentCache(path, "ns")
    assert d.get("a") == [[0, 1], [2, 1]]
    assert d.get("b") == {"x": 1}
    assert len(d) == 2 and "a" in d and d.dropped == 0


def test_corrupt_record_dropped(tmp_path):
    path = tmp_path / "c.log"
    c = PersistentCache(path, "ns")
    c.put("a", 1)
    c.put("b", 2)
    lines = path.read_text().split("\n")
    rec = json.loads(lines[1])
    rec["v"] = 99
    lines[1] = json.dumps(rec)
    path.write_text("\n".join(lines) + "garbage{\n")
    d = PersistentCache(path, "ns")
    assert d.dropped == 2
    assert "a" not in d and d.get("b") == 2
    # the file was rewritten clean
    assert PersistentCache(path, "ns").dropped == 0


def test_wrong_namespace_discards_file(tmp_path):
    path = tmp_path / "c.log"
    PersistentCache(path, "one").put("a", 1)
    d = PersistentCache(path, "two")
    assert not d.header_ok and len(d) == 0
    assert not path.exists()
