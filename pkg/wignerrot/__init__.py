# coding=utf-8
#
# wigner-rotation - numerical checks of the Wigner rotation
#
# SPDX-License-Identifier: GPL-2.0-or-later

__version__ = "1.0.0"
