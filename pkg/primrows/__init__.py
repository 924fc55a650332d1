# Copyright The primrows Authors. All Rights Reserved.
# SPDX-License-Identifier: Apache-2.0

# primrows: orbit counts and densities of integer matrices with primitive rows

__version__ = "0.1.0"
