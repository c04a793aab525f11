"""Community backend: durable store, auth, and the JSON HTTP API."""

from .api import SCHEMA_VERSION, BadQueryError, ForbiddenError, build_app_from_env, create_app
from .auth import (
    PBKDF2_ITERATIONS,
    TOKEN_TTL,
    AuthRequiredError,
    BadCredentialsError,
    TokenManager,
    hash_password,
    verify_password,
)
from .store import (
    Clock,
    DuplicateNameError,
    DuplicatePhotoError,
    PhotoRecord,
    PhotoStore,
    UnknownPhotoError,
    UnknownUserError,
    UserRecord,
    ranking_key,
    utc_now,
)

__all__ = [
    "AuthRequiredError",
    "BadCredentialsError",
    "BadQueryError",
    "Clock",
    "DuplicateNameError",
    "DuplicatePhotoError",
    "ForbiddenError",
    "PBKDF2_ITERATIONS",
    "PhotoRecord",
    "PhotoStore",
    "SCHEMA_VERSION",
    "TOKEN_TTL",
    "TokenManager",
    "UnknownPhotoError",
    "UnknownUserError",
    "UserRecord",
    "build_app_from_env",
    "create_app",
    "hash_password",
    "ranking_key",
    "utc_now",
    "verify_password",
]
