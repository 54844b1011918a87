# coding=utf-8
#
# wigner-rotation - numerical checks of the Wigner rotation
#
# SPDX-License-Identifier: GPL-2.0-or-later
from dataclasses import dataclass


@dataclass(frozen=True)
class EXIT:
    OK = 0

    ERR = 1
    ERR_USAGE = 2  # bad arguments, config or physical domain
    ERR_NUMERICAL = 3  # loop did not close, transform drifted off the group

    SIGINT = 130
