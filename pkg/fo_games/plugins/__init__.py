# SPDX-FileCopyrightText: 2024-2025 fo-games contributors
# SPDX-License-Identifier: Apache-2.0
from fo_games.plugins.import_plugins import import_plugins

__all__ = ["import_plugins"]
