# Copyright 2026 The dpnoise Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Maximum-entropy integer perturbation noise for counting queries.

Designs the symmetric noise distribution, computes its exact
(epsilon, delta) differential-privacy parameters, calibrates the noise to
a privacy target and implements the cell-key lookup-table sampling
pipeline with a post-quantization audit.
"""

from ._dpnoise import *  # noqa: F401,F403
from ._dpnoise import __version__  # noqa: F401
