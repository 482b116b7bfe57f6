from qfree.io import g7_graph
from qfree.core import format_edge


def g7_tokens():
    return [format_edge(e) for e in g7_graph().omitted_edges()]


def test_health(client):
    assert client.get("/health").json() == {"status": "ok"}


def test_verify_g7(client):
    resp = client.post("/verify", json={
        "graph": {"n": 7, "edges": g7_tokens(), "mode": "omitted"},
        "forbid": "q3",
    })
    assert resp.status_code == 200
    data = resp.json()
    assert data["free"] is True
    assert data["present_count"] == 392
    assert data["omitted_count"] == 56
    assert [cs["omitted"] for cs in data["class_stats"]] == [8] * 7


def test_verify_violation_witness(client):
    resp = client.post("/verify", json={
        "graph": {"n": 3, "edges": [], "mode": "omitted"}, "forbid": "q3"})
    data = resp.json()
    assert data["free"] is False
    assert data["witness"] == "[***]"
    assert data["violation_count"] == 1


def test_verify_bad_token_422(client):
    resp = client.post("/verify", json={
        "graph": {"edges": ["[0*1*]"], "mode": "present"}})
    assert resp.status_code == 422
    assert "star" in resp.json()["detail"]


def test_verify_q2_target(client):
    resp = client.post("/verify", json={
        "graph": {"n": 3, "edges": [], "mode": "omitted"}, "forbid": "q2"})
    assert resp.json()["violation_count"] == 6


def test_analyze_g7(client):
    resp = client.post("/analyze", json={
        "graph": {"n": 7, "edges": g7_tokens(), "mode": "omitted"}})
    data = resp.json()
    assert data["maximal"] is True
    assert data["addable_edges"] == []
    assert sum(data["p_value_histogram"].values()) == 392


def test_construct_chain(client):
    resp = client.post("/construct", json={
        "base": {"n": 2, "edges": [], "mode": "omitted"},
        "coloring": {"name": "q3_aeo"},
    })
    data = resp.json()
    assert data["n"] == 4
    assert data["present_count"] == 29
    assert data["predicted_count"] == 29
    assert data["free"] is True
    assert len(data["edges"]) == 3


def test_construct_rejects_unfree_base(client):
    resp = client.post("/construct", json={
        "base": {"n": 3, "edges": [], "mode": "omitted"},
        "coloring": {"name": "q3_aeo"},
    })
    assert resp.status_code == 422
    assert "not q3-free" in resp.json()["detail"]


def test_construct_explicit_coloring(client):
    resp = client.post("/construct", json={
        "base": {"n": 2, "edges": [], "mode": "omitted"},
        "coloring": {"m": 3, "e_edges": ["[00*]", "[*11]"], "o_edges": ["[1*0]"]},
    })
    assert resp.json()["present_count"] == 29


def test_recur_table(client):
    resp = client.post("/recur", json={
        "seeds": {"7": 56, "8": 128, "9": 352},
        "coloring": {"name": "q4_aeo"},
        "k_max": 27,
    })
    rows = resp.json()["rows"]
    assert rows[0]["upper_bound"] == 56
    assert rows[-1] == {
        "k": 27, "lower_bound": 211120128, "upper_bound": 459059616,
        "lb_ratio": rows[-1]["lb_ratio"], "ub_ratio": rows[-1]["ub_ratio"],
        "seeded": False,
    }
    assert abs(rows[-1]["ub_ratio"] - 0.25335) < 5e-6


def test_general_endpoint(client):
    resp = client.post("/general", json={"n": 3, "residue": "best"})
    data = resp.json()
    assert data["residue"] == 2
    assert data["present_count"] == 10
    assert sorted(data["omitted_edges"]) == ["[*11]", "[11*]"]


def test_search_exact_endpoint(client):
    resp = client.post("/search/exact", json={"n": 4, "d": 3})
    data = resp.json()
    assert data["optimal"] is True
    assert data["omitted_count"] == 3


def test_search_perturb_endpoint(client):
    resp = client.post("/search/perturb", json={
        "graph": {"n": 3, "edges": ["[00*]", "[*11]", "[1*0]"], "mode": "omitted"},
        "d": 3,
        "config": {"remove_t": 0},
    })
    data = resp.json()
    assert data["improved"] is True
    assert data["present_count"] == 11


def test_colorings_listing(client):
    data = client.get("/colorings").json()
    names = [c["name"] for c in data]
    assert names == ["c4_simple", "q3_aeo", "q4_aeo", "q5_aeo"]
    q5 = data[-1]
    assert (q5["count_a"], q5["count_e"], q5["count_o"]) == (56, 12, 12)


def test_coloring_validate_endpoint(client):
    resp = client.post("/coloring/validate", json={
        "coloring": {"name": "q4_aeo"}, "target": "q3"})
    assert resp.json()["ok"] is True
    resp = client.post("/coloring/validate", json={
        "coloring": {"m": 3, "e_edges": ["[00*]", "[*11]", "[1*0]"], "o_edges": []},
        "target": "q3"})
    data = resp.json()
    assert data["ok"] is False
    assert data["violations"][0]["subcube"] == "[***]"


def test_coloring_split_endpoint(client):
    resp = client.post("/coloring/split", json={
        "graph": {"n": 3, "edges": ["[00*]", "[*11]", "[1*0]"], "mode": "omitted"}})
    data = resp.json()
    assert data["ok"] is True
    assert data["coloring"]["count_a"] == 9


def test_coloring_split_failure(client):
    resp = client.post("/coloring/split", json={
        "graph": {"n": 3, "edges": [], "mode": "omitted"}})
    data = resp.json()
    assert data["ok"] is False
    assert data["witness"] is not None
