"""Input handling shared by the command modules."""

import json
import logging
from fractions import Fraction
from typing import Callable, Optional, TextIO

from deltaset.config import ConfigError
from deltaset.duality import Instance
from deltaset.errors import DeltasetError, SerializationError
from deltaset.reporter import Reporter
from deltaset.serialization import InstanceFile, instance_file_from_dict

logger = logging.getLogger(__name__)

EXIT_MALFORMED = 2


def read_json(stream: TextIO) -> object:
    """Decode one JSON document from ``stream``.

    Raises:
        SerializationError: If the text is not valid JSON
    """
    text = stream.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise SerializationError(f"Invalid JSON input: {e}") from e


def read_instance_file(stream: TextIO) -> InstanceFile:
    return instance_file_from_dict(read_json(stream))


def with_delta(instance: Instance, delta: Optional[Fraction]) -> Instance:
    """The same vectors under an overriding delta, if one was given."""
    if delta is None:
        return instance
    return Instance(delta=delta, xs=instance.xs)


def run_guarded(reporter: Reporter, action: Callable[[], int]) -> int:
    """Run a command body; malformed input becomes exit code 2."""
    try:
        return action()
    except (DeltasetError, ConfigError) as e:
        logger.debug("Rejected input", exc_info=True)
        reporter.error(str(e))
        return EXIT_MALFORMED
