#
# __init__.py
#
"""
Logger sub-package: the process-wide structlog wrapper and its emoji contract.
"""
from pyvider.complementarity.logger.base import (
    ComplementarityLogger,
    logger,
)
from pyvider.complementarity.logger.emoji_matrix import (
    PRIMARY_EMOJI,
    SECONDARY_EMOJI,
    TERTIARY_EMOJI,
    emoji_contract_lines,
)

__all__ = [
    "PRIMARY_EMOJI",
    "SECONDARY_EMOJI",
    "TERTIARY_EMOJI",
    "ComplementarityLogger",
    "emoji_contract_lines",
    "logger",
]

# 🐍📝
