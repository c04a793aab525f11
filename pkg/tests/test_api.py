import base64
import hashlib
from datetime import datetime, timedelta, timezone
from pathlib import Path

import numpy as np
import pytest
from fastapi.testclient import TestClient

from conftest import blob_frame
from photocoach.imagecore import RasterImage, encode_ppm
from photocoach.model import ATTRIBUTES, NetworkConfig, ScoringNetwork
from photocoach.service import SCHEMA_VERSION, create_app

TINY_MODEL = ScoringNetwork(
    NetworkConfig(stage_channels=(2, 4), shared_dim=8, head_hidden=4, seed=5)
)


class FakeClock:
    def __init__(self):
        self.now = datetime(2024, 5, 10, 12, 0, 0, tzinfo=timezone.utc)

    def __call__(self):
        return self.now

    def advance(self, **kw):
        self.now = self.now + timedelta(**kw)


def _ppm(seed=1, side=32) -> bytes:
    rng = np.random.default_rng(seed)
    return encode_ppm(RasterImage(rng.random((side, side, 3))))


def _b64(data: bytes) -> str:
    return base64.b64encode(data).decode()


@pytest.fixture()
def service(tmp_path):
    clock = FakeClock()
    app = create_app(tmp_path / "store", model=TINY_MODEL, clock=clock)
    with TestClient(app) as client:
        yield client, clock, tmp_path / "store"


def _register_and_login(client, name="ana", password="pw123"):
    r = client.post("/api/users", json={"name": name, "password": password})
    assert r.status_code == 201
    user_id = r.json()["user_id"]
    r = client.post("/api/sessions", json={"name": name, "password": password})
    assert r.status_code == 200
    return user_id, {"Authorization": f"Bearer {r.json()['token']}"}


def test_health(service):
    client, _, _ = service
    r = client.get("/api/health")
    assert r.status_code == 200
    assert r.json() == {"schema_version": SCHEMA_VERSION, "status": "ok"}


def test_user_registration_and_duplicate(service):
    client, _, _ = service
    r = client.post("/api/users", json={"name": "ana", "password": "pw"})
    assert r.status_code == 201
    body = r.json()
    assert body["schema_version"] == SCHEMA_VERSION
    assert body["name"] == "ana"
    assert len(body["user_id"]) == 16

    dup = client.post("/api/users", json={"name": "ana", "password": "zz"})
    assert dup.status_code == 409
    err = dup.json()
    assert err["schema_version"] == SCHEMA_VERSION
    assert err["code"] == "duplicate_name"
    assert "message" in err


def test_user_validation_error_shape(service):
    client, _, _ = service
    r = client.post("/api/users", json={"name": "", "password": "pw"})
    assert r.status_code == 422
    err = r.json()
    assert err["schema_version"] == SCHEMA_VERSION
    assert err["code"] == "validation_error"


def test_login_does_not_reveal_which_field_failed(service):
    client, _, _ = service
    client.post("/api/users", json={"name": "ana", "password": "pw"})
    wrong_pw = client.post("/api/sessions", json={"name": "ana", "password": "zz"})
    no_user = client.post("/api/sessions", json={"name": "ghost", "password": "zz"})
    assert wrong_pw.status_code == no_user.status_code == 401
    assert wrong_pw.json()["code"] == no_user.json()["code"] == "bad_credentials"
    assert wrong_pw.json()["message"] == no_user.json()["message"]


def test_upload_requires_auth(service):
    client, _, _ = service
    r = client.post("/api/photos", json={"image_base64": _b64(_ppm())})
    assert r.status_code == 401
    assert r.json()["code"] == "unauthenticated"
    bad = client.post("/api/photos", json={"image_base64": _b64(_ppm())},
                      headers={"Authorization": "Bearer bogus"})
    assert bad.status_code == 401


def test_upload_scores_and_replay(service):
    client, clock, _ = service
    user_id, auth = _register_and_login(client)
    data = _ppm(seed=7)

    r = client.post("/api/photos", json={"image_base64": _b64(data)}, headers=auth)
    assert r.status_code == 201
    body = r.json()
    assert body["created"] is True
    assert body["photo_id"] == hashlib.sha256(data).hexdigest()
    assert body["owner"] == user_id
    assert body["day_bucket"] == "2024-05-10"
    scores = body["scores"]
    assert 0.0 <= scores["overall"] <= 1.0
    assert set(scores["attributes"]) == set(ATTRIBUTES)
    assert scores["display"]["overall"] == round(100 * scores["overall"])
    assert isinstance(body["suggestions"], list)

    clock.advance(hours=1)
    replay = client.post("/api/photos", json={"image_base64": _b64(data)}, headers=auth)
    assert replay.status_code == 200
    rbody = replay.json()
    assert rbody["created"] is False
    assert rbody["uploaded_at"] == body["uploaded_at"]
    assert rbody["scores"] == body["scores"]


def test_upload_multipart(service):
    client, _, _ = service
    _, auth = _register_and_login(client)
    data = _ppm(seed=9)
    r = client.post("/api/photos", headers=auth,
                    files={"image": ("shot.ppm", data, "application/octet-stream")})
    assert r.status_code == 201
    assert r.json()["photo_id"] == hashlib.sha256(data).hexdigest()


def test_upload_duplicate_other_owner_conflict(service):
    client, _, _ = service
    _, ana = _register_and_login(client, "ana")
    _, bob = _register_and_login(client, "bob")
    data = _ppm(seed=11)
    assert client.post("/api/photos", json={"image_base64": _b64(data)},
                       headers=ana).status_code == 201
    r = client.post("/api/photos", json={"image_base64": _b64(data)}, headers=bob)
    assert r.status_code == 409
    assert r.json()["code"] == "duplicate_photo"


def test_upload_rejects_tiny_and_garbage(service):
    client, _, _ = service
    _, auth = _register_and_login(client)
    tiny = _ppm(seed=3, side=8)
    r = client.post("/api/photos", json={"image_base64": _b64(tiny)}, headers=auth)
    assert r.status_code == 400
    assert r.json()["code"] == "too_small"

    r = client.post("/api/photos", json={"image_base64": _b64(b"not an image")},
                    headers=auth)
    assert r.status_code == 400
    assert r.json()["code"] == "undecodable"

    r = client.post("/api/photos", json={"image_base64": "!!!not-base64!!!"},
                    headers=auth)
    assert r.status_code == 400
    assert r.json()["code"] == "undecodable"

    r = client.post("/api/photos", json={"wrong_field": 1}, headers=auth)
    assert r.status_code == 400


def test_get_photo_and_not_found(service):
    client, _, _ = service
    _, auth = _register_and_login(client)
    data = _ppm(seed=13)
    created = client.post("/api/photos", json={"image_base64": _b64(data)},
                          headers=auth).json()

    r = client.get(f"/api/photos/{created['photo_id']}")
    assert r.status_code == 200
    assert r.json()["scores"] == created["scores"]

    missing = client.get("/api/photos/" + "0" * 64)
    assert missing.status_code == 404
    assert missing.json()["code"] == "not_found"
    assert missing.json()["schema_version"] == SCHEMA_VERSION


def test_daily_ranking_and_bad_date(service):
    client, clock, _ = service
    _, auth = _register_and_login(client)
    for seed in (21, 22, 23):
        client.post("/api/photos", json={"image_base64": _b64(_ppm(seed=seed))},
                    headers=auth)
        clock.advance(minutes=1)

    r = client.get("/api/rankings/daily", params={"date": "2024-05-10"})
    assert r.status_code == 200
    entries = r.json()["entries"]
    assert [e["rank"] for e in entries] == [1, 2, 3]
    scores = [e["display_score"] for e in entries]
    assert scores == sorted(scores, reverse=True)
    assert all(e["owner_name"] == "ana" for e in entries)

    empty = client.get("/api/rankings/daily", params={"date": "2030-01-01"})
    assert empty.json()["entries"] == []

    bad = client.get("/api/rankings/daily", params={"date": "05/10/2024"})
    assert bad.status_code == 400
    assert bad.json()["code"] == "bad_query"
    none = client.get("/api/rankings/daily")
    assert none.status_code == 400


def test_recommendations_limit(service):
    client, clock, _ = service
    _, auth = _register_and_login(client)
    for seed in range(30, 36):
        client.post("/api/photos", json={"image_base64": _b64(_ppm(seed=seed))},
                    headers=auth)
        clock.advance(minutes=1)

    r = client.get("/api/recommendations", params={"limit": 4})
    assert r.status_code == 200
    assert len(r.json()["entries"]) == 4

    default = client.get("/api/recommendations")
    assert len(default.json()["entries"]) == 6  # fewer photos than the default 10

    bad = client.get("/api/recommendations", params={"limit": 0})
    assert bad.status_code == 400
    assert bad.json()["code"] == "bad_query"


def test_history_is_private(service):
    client, clock, _ = service
    ana_id, ana = _register_and_login(client, "ana")
    bob_id, bob = _register_and_login(client, "bob")
    client.post("/api/photos", json={"image_base64": _b64(_ppm(seed=41))}, headers=ana)
    clock.advance(minutes=1)
    client.post("/api/photos", json={"image_base64": _b64(_ppm(seed=42))}, headers=ana)

    r = client.get(f"/api/users/{ana_id}/history", headers=ana)
    assert r.status_code == 200
    photos = r.json()["photos"]
    assert len(photos) == 2
    stamps = [p["uploaded_at"] for p in photos]
    assert stamps == sorted(stamps, reverse=True)

    other = client.get(f"/api/users/{ana_id}/history", headers=bob)
    assert other.status_code == 403
    assert other.json()["code"] == "forbidden"

    anon = client.get(f"/api/users/{ana_id}/history")
    assert anon.status_code == 401


def test_guidance_stateless_and_unauthenticated(service):
    client, _, store_dir = service
    img = blob_frame(1 / 3, 1 / 3, size=96)
    data = encode_ppm(img)

    def fingerprint(root: Path):
        entries = []
        for p in sorted(root.rglob("*")):
            entries.append((str(p.relative_to(root)), p.read_bytes() if p.is_file() else None))
        return entries

    before = fingerprint(store_dir)
    r = client.post("/api/guidance", json={"image_base64": _b64(data)})
    assert r.status_code == 200
    body = r.json()
    assert body["schema_version"] == SCHEMA_VERSION
    assert body["verdict"]["best"] == "rule_of_thirds"
    assert body["verdict"]["matched"] is True
    assert set(body["verdict"]["scores"]) == {
        "rule_of_thirds", "center", "symmetric", "diagonal", "framed", "triangle",
    }
    assert len(body["subject"]["bbox"]) == 4
    assert len(body["subject"]["centroid"]) == 2
    kinds = [p["kind"] for p in body["prompts"]]
    assert "encouragement" in kinds
    assert "scores" not in body
    # guidance must not write anything to the store
    assert fingerprint(store_dir) == before


def test_guidance_with_scores(service):
    client, _, _ = service
    data = encode_ppm(blob_frame(0.15, 0.5, size=64))
    r = client.post("/api/guidance", params={"score": "true"},
                    json={"image_base64": _b64(data)})
    assert r.status_code == 200
    body = r.json()
    assert set(body["scores"]["attributes"]) == set(ATTRIBUTES)
    tokens = [p["token"] for p in body["prompts"] if p["kind"] == "direction"]
    assert tokens == ["right"]


def test_guidance_flat_frame_composition_silent(service):
    client, _, _ = service
    flat = encode_ppm(RasterImage(np.full((48, 48, 3), 0.12)))
    r = client.post("/api/guidance", json={"image_base64": _b64(flat)})
    body = r.json()
    assert body["verdict"] is None and body["subject"] is None
    assert [p["token"] for p in body["prompts"]] == ["too dark"]


def test_state_survives_restart(tmp_path):
    clock = FakeClock()
    store_dir = tmp_path / "store"
    app = create_app(store_dir, model=TINY_MODEL, clock=clock)
    with TestClient(app) as client:
        _, auth = _register_and_login(client)
        data = _ppm(seed=55)
        created = client.post("/api/photos", json={"image_base64": _b64(data)},
                              headers=auth).json()
        ranking = client.get("/api/rankings/daily",
                             params={"date": "2024-05-10"}).json()

    app2 = create_app(store_dir, model=TINY_MODEL, clock=clock)
    with TestClient(app2) as client2:
        again = client2.get(f"/api/photos/{created['photo_id']}")
        assert again.status_code == 200
        body = again.json()
        assert body["scores"] == created["scores"]
        assert body["uploaded_at"] == created["uploaded_at"]
        ranking2 = client2.get("/api/rankings/daily",
                               params={"date": "2024-05-10"}).json()
        assert ranking2 == ranking
        # tokens are in-memory only: the old bearer token is gone
        r = client2.post("/api/photos", json={"image_base64": _b64(_ppm(seed=56))},
                         headers=auth)
        assert r.status_code == 401


def test_every_response_carries_schema_version(service):
    client, _, _ = service
    _, auth = _register_and_login(client)
    responses = [
        client.get("/api/health"),
        client.post("/api/users", json={"name": "zoe", "password": "pw"}),
        client.post("/api/sessions", json={"name": "zoe", "password": "pw"}),
        client.post("/api/photos", json={"image_base64": _b64(_ppm(seed=61))}, headers=auth),
        client.get("/api/photos/" + "0" * 64),
        client.get("/api/rankings/daily", params={"date": "2024-05-10"}),
        client.get("/api/rankings/daily", params={"date": "nope"}),
        client.get("/api/recommendations"),
        client.post("/api/guidance", json={"image_base64": _b64(_ppm(seed=62))}),
        client.post("/api/users", json={"name": "", "password": ""}),
        client.post("/api/photos", json={}, headers=auth),
    ]
    for r in responses:
        assert r.json()["schema_version"] == SCHEMA_VERSION, r.request.url
