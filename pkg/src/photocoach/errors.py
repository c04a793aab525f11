"""Exception hierarchy shared across the package.

Every domain failure raises a subclass of PhotoCoachError so callers (CLI,
service) can map them to exit codes / HTTP status codes in one place.
"""


class PhotoCoachError(Exception):
    """Base class for all domain errors."""


class ColorspaceError(PhotoCoachError):
    """Operation received an image in the wrong color space."""


class ImageTooSmallError(PhotoCoachError):
    """Image (or feature map) is below the operation's minimum size."""


class DecodeError(PhotoCoachError):
    """Byte stream is not a decodable PPM/PNG image."""


class ShapeError(PhotoCoachError):
    """Tensor shapes are inconsistent with the operation's contract."""


class TrainingDivergedError(PhotoCoachError):
    """Non-finite gradients or parameters encountered during training."""


class NoSubjectError(PhotoCoachError):
    """Saliency is uniformly zero; no subject region can be estimated."""


class UndefinedCorrelationError(PhotoCoachError):
    """Rank correlation is undefined (length mismatch, < 2 points, or a
    constant vector)."""


class EmptyDatasetError(PhotoCoachError):
    """No usable records in a dataset manifest or evaluation set."""


class CheckpointError(PhotoCoachError):
    """Checkpoint file is missing, truncated, or of an unknown version."""
