"""Append-only on-disk store for users, photo records, and image blobs.

Layout under the store root:

    users.log    one JSON object per line, append-only
    records.log  one JSON object per line, append-only
    blobs/<id>   raw image bytes, named by content hash

Startup is a full rescan of both logs. Mutations are serialized through a
single lock and flushed per line, so a crash loses at most the line being
written and replaying the directory reproduces every query response.
"""

from __future__ import annotations

import hashlib
import json
import threading
from dataclasses import dataclass
from datetime import date, datetime, timezone
from pathlib import Path
from typing import Callable

from ..errors import PhotoCoachError
from ..model import ATTRIBUTES, AestheticScores, display_score

Clock = Callable[[], datetime]


class DuplicateNameError(PhotoCoachError):
    """The user name is already taken."""


class DuplicatePhotoError(PhotoCoachError):
    """The same image bytes were already uploaded by a different user."""


class UnknownPhotoError(PhotoCoachError):
    """No record with that photo id."""


class UnknownUserError(PhotoCoachError):
    """No user with that id."""


def utc_now() -> datetime:
    return datetime.now(timezone.utc)


@dataclass(frozen=True)
class UserRecord:
    user_id: str
    name: str
    password_hash: str
    created_at: datetime

    def to_json(self) -> dict:
        return {
            "user_id": self.user_id,
            "name": self.name,
            "password_hash": self.password_hash,
            "created_at": self.created_at.isoformat(),
        }

    @classmethod
    def from_json(cls, raw: dict) -> "UserRecord":
        return cls(
            user_id=raw["user_id"],
            name=raw["name"],
            password_hash=raw["password_hash"],
            created_at=datetime.fromisoformat(raw["created_at"]),
        )


@dataclass(frozen=True)
class PhotoRecord:
    photo_id: str
    owner: str
    uploaded_at: datetime
    day_bucket: str  # YYYY-MM-DD, UTC
    scores: AestheticScores
    suggestions: tuple[str, ...]

    def to_json(self) -> dict:
        return {
            "photo_id": self.photo_id,
            "owner": self.owner,
            "uploaded_at": self.uploaded_at.isoformat(),
            "day_bucket": self.day_bucket,
            "scores": {
                "overall": self.scores.overall,
                "attributes": {k: self.scores.attributes[k] for k in ATTRIBUTES},
            },
            "suggestions": list(self.suggestions),
        }

    @classmethod
    def from_json(cls, raw: dict) -> "PhotoRecord":
        return cls(
            photo_id=raw["photo_id"],
            owner=raw["owner"],
            uploaded_at=datetime.fromisoformat(raw["uploaded_at"]),
            day_bucket=raw["day_bucket"],
            scores=AestheticScores(raw["scores"]["overall"], raw["scores"]["attributes"]),
            suggestions=tuple(raw["suggestions"]),
        )


def ranking_key(record: PhotoRecord):
    """Total order: overall descending, earlier upload first, then photo id."""
    return (-record.scores.overall, record.uploaded_at, record.photo_id)


class PhotoStore:
    def __init__(self, root: str | Path, clock: Clock = utc_now):
        self.root = Path(root)
        self.clock = clock
        self.root.mkdir(parents=True, exist_ok=True)
        (self.root / "blobs").mkdir(exist_ok=True)
        self._users_log = self.root / "users.log"
        self._records_log = self.root / "records.log"
        self._lock = threading.Lock()
        self._users: dict[str, UserRecord] = {}
        self._users_by_name: dict[str, UserRecord] = {}
        self._photos: dict[str, PhotoRecord] = {}
        self._rescan()

    def _rescan(self):
        if self._users_log.exists():
            for line in self._users_log.read_text().splitlines():
                if not line.strip():
                    continue
                user = UserRecord.from_json(json.loads(line))
                self._users.setdefault(user.user_id, user)
                self._users_by_name.setdefault(user.name, user)
        if self._records_log.exists():
            for line in self._records_log.read_text().splitlines():
                if not line.strip():
                    continue
                record = PhotoRecord.from_json(json.loads(line))
                self._photos.setdefault(record.photo_id, record)

    @staticmethod
    def _append(path: Path, payload: dict):
        with open(path, "a") as fh:
            fh.write(json.dumps(payload, separators=(",", ":")) + "\n")
            fh.flush()

    # -- users --------------------------------------------------------------

    def add_user(self, name: str, password_hash: str) -> UserRecord:
        with self._lock:
            if name in self._users_by_name:
                raise DuplicateNameError(f"name {name!r} is taken")
            user_id = hashlib.sha256(f"user:{name}".encode()).hexdigest()[:16]
            user = UserRecord(user_id, name, password_hash, self.clock())
            self._append(self._users_log, user.to_json())
            self._users[user_id] = user
            self._users_by_name[name] = user
            return user

    def user_by_name(self, name: str) -> UserRecord | None:
        return self._users_by_name.get(name)

    def user_by_id(self, user_id: str) -> UserRecord:
        user = self._users.get(user_id)
        if user is None:
            raise UnknownUserError(f"no user {user_id!r}")
        return user

    # -- photos ---------------------------------------------------------------

    @staticmethod
    def photo_id_for(image_bytes: bytes) -> str:
        return hashlib.sha256(image_bytes).hexdigest()

    def add_photo(self, owner: str, image_bytes: bytes, scores: AestheticScores,
                  suggestions: list[str]) -> tuple[PhotoRecord, bool]:
        """Persist a scored upload. Returns (record, created). Re-uploading
        identical bytes is idempotent for the owner and rejected for others."""
        photo_id = self.photo_id_for(image_bytes)
        with self._lock:
            existing = self._photos.get(photo_id)
            if existing is not None:
                if existing.owner == owner:
                    return existing, False
                raise DuplicatePhotoError(f"photo {photo_id} belongs to another user")
            now = self.clock()
            record = PhotoRecord(
                photo_id=photo_id,
                owner=owner,
                uploaded_at=now,
                day_bucket=now.date().isoformat(),
                scores=scores,
                suggestions=tuple(suggestions),
            )
            blob = self.root / "blobs" / photo_id
            if not blob.exists():
                blob.write_bytes(image_bytes)
            self._append(self._records_log, record.to_json())
            self._photos[photo_id] = record
            return record, True

    def get_photo(self, photo_id: str) -> PhotoRecord:
        record = self._photos.get(photo_id)
        if record is None:
            raise UnknownPhotoError(f"no photo {photo_id!r}")
        return record

    def photo_bytes(self, photo_id: str) -> bytes:
        self.get_photo(photo_id)
        return (self.root / "blobs" / photo_id).read_bytes()

    def photos_for_day(self, day: date) -> list[PhotoRecord]:
        bucket = day.isoformat()
        with self._lock:
            records = [r for r in self._photos.values() if r.day_bucket == bucket]
        return sorted(records, key=ranking_key)

    def top_photos(self, limit: int) -> list[PhotoRecord]:
        with self._lock:
            records = list(self._photos.values())
        return sorted(records, key=ranking_key)[:limit]

    def user_photos(self, user_id: str) -> list[PhotoRecord]:
        """Newest first."""
        with self._lock:
            records = [r for r in self._photos.values() if r.owner == user_id]
        return sorted(records, key=lambda r: (r.uploaded_at, r.photo_id), reverse=True)

    def ranking_entries(self, records: list[PhotoRecord]) -> list[dict]:
        return [
            {
                "rank": i + 1,
                "photo_id": r.photo_id,
                "display_score": display_score(r.scores.overall),
                "owner_name": self._users[r.owner].name if r.owner in self._users else r.owner,
            }
            for i, r in enumerate(records)
        ]
