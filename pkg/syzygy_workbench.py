#!/usr/bin/env python
"""Exec module for the invariant syzygy workbench.

Compute invariant rings of finite groups, their syzygy ideals and minimal free
resolutions, and check the degree bounds on them. Example:

    ./syzygy_workbench.py verify --spec specs/a3.json --imax 2 --out report.json

"""  # noqa: D205

import asyncio
import logging
import sys

from invariant_syzygies import cli, common  # type: ignore  # noqa: PGH003

_LOGGER: logging.Logger = logging.getLogger(__name__)
_LOGGER.addHandler(logging.StreamHandler(sys.stdout))
# _LOGGER.setLevel(logging.DEBUG)    # enable for debug output
CONSOLE: logging.Logger = common.CONSOLE


async def main() -> int:
    """Run the command line interface."""
    try:
        return await cli.async_run_cli(sys.argv[1:])
    except Exception as err:  # pylint: disable=broad-exception-caught  # noqa: BLE001
        CONSOLE.exception("%s: %s", type(err), err)
        return 70


# run async main
if __name__ == "__main__":
    try:
        sys.exit(asyncio.run(main()))
    except KeyboardInterrupt:
        CONSOLE.warning("Aborted!")
        sys.exit(130)
