# Copyright The primrows Authors. All Rights Reserved.
# SPDX-License-Identifier: Apache-2.0

# Brute-force lattice oracle: integer matrices, Hermite normal forms, ball counts
