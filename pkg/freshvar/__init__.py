# Copyright 2026 The freshvar authors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#    http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""
freshvar - Fresh-variable automata over infinite alphabets
"""

from __future__ import absolute_import

from ._version import __version__  # noqa: F401
from ._exceptions import *  # noqa: F403,F401
from ._utils import *  # noqa: F403,F401
from ._core import *  # noqa: F403,F401
from ._words import *  # noqa: F403,F401
from ._closure import *  # noqa: F403,F401
from ._game import *  # noqa: F403,F401
from ._decide import *  # noqa: F403,F401
from ._compose import *  # noqa: F403,F401
from ._jsonio import *  # noqa: F403,F401
from ._fixtures import *  # noqa: F403,F401
