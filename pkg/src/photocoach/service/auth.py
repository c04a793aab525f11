"""Password hashing and in-memory bearer tokens.

Tokens live only in process memory: restarting the service invalidates
sessions but never the durable store. Login failures are indistinguishable
between unknown-name and wrong-password.
"""

from __future__ import annotations

import hashlib
import hmac
import secrets
from datetime import datetime, timedelta

from ..errors import PhotoCoachError
from .store import Clock, utc_now

PBKDF2_ITERATIONS = 60_000
TOKEN_TTL = timedelta(hours=24)


class BadCredentialsError(PhotoCoachError):
    """Unknown name or wrong password (deliberately the same error)."""


class AuthRequiredError(PhotoCoachError):
    """Missing, malformed, or expired bearer token."""


def hash_password(password: str, salt: bytes | None = None) -> str:
    if salt is None:
        salt = secrets.token_bytes(16)
    digest = hashlib.pbkdf2_hmac("sha256", password.encode(), salt, PBKDF2_ITERATIONS)
    return f"pbkdf2_sha256${PBKDF2_ITERATIONS}${salt.hex()}${digest.hex()}"


def verify_password(password: str, stored: str) -> bool:
    try:
        scheme, iterations, salt_hex, digest_hex = stored.split("$")
        if scheme != "pbkdf2_sha256":
            return False
        digest = hashlib.pbkdf2_hmac(
            "sha256", password.encode(), bytes.fromhex(salt_hex), int(iterations)
        )
        return hmac.compare_digest(digest.hex(), digest_hex)
    except (ValueError, TypeError):
        return False


class TokenManager:
    def __init__(self, clock: Clock = utc_now, ttl: timedelta = TOKEN_TTL):
        self.clock = clock
        self.ttl = ttl
        self._tokens: dict[str, tuple[str, datetime]] = {}

    def issue(self, user_id: str) -> tuple[str, datetime]:
        token = secrets.token_urlsafe(32)
        expires_at = self.clock() + self.ttl
        self._tokens[token] = (user_id, expires_at)
        return token, expires_at

    def resolve(self, token: str | None) -> str:
        """Token -> user_id; raises AuthRequiredError when invalid or expired."""
        if not token:
            raise AuthRequiredError("missing bearer token")
        entry = self._tokens.get(token)
        if entry is None:
            raise AuthRequiredError("unknown token")
        user_id, expires_at = entry
        if self.clock() >= expires_at:
            del self._tokens[token]
            raise AuthRequiredError("token expired")
        return user_id
