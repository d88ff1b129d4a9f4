"""
Utility modules for the museum engine.
"""
from museum.utils.logger import configure_logging
from museum.utils.errors import (
    MuseumError,
    ValidationError,
    StoreError,
    NotFoundError,
    register_error_handlers
)
from museum.utils.rationals import format_rational, to_fraction
from museum.utils.validators import (
    validate_url,
    parse_timestamp,
    check_partition_paths
)
