# Copyright 2026 The hhlprep Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""State preparation by modified HHL, and the HHL linear-system solver."""

import json as _json

from ._hhlprep import *  # noqa: F401,F403
from ._hhlprep import _hhlprep_sweep_csv  # noqa: F401

__version__ = "0.1.0"


def sweep(spec):
    """Runs a sweep described by a dict (or JSON text) and returns the CSV text."""
    text = spec if isinstance(spec, str) else _json.dumps(spec)
    return _hhlprep_sweep_csv(text)
