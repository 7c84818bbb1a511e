# Copyright 2026 The skelprop Authors
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Skeleton-supervised label propagation for tubular structures.

Volumes are numpy arrays indexed (z, y, x); spacing tuples use the same
order. Mask proposals use 0 = background, 1 = foreground, 2 = unknown.
"""

from ._core import (
    euclidean_distance,
    gaussian_smooth,
    geodesic_distance,
    inverse_geodesic,
    largest_component,
    load_volume,
    losses,
    metrics,
    phantom,
    propagate,
    save_volume,
    set_thread_count,
    skeleton_graph,
    skeletonize,
)

BACKGROUND = 0
FOREGROUND = 1
UNKNOWN = 2

__all__ = [
    "BACKGROUND",
    "FOREGROUND",
    "UNKNOWN",
    "euclidean_distance",
    "gaussian_smooth",
    "geodesic_distance",
    "inverse_geodesic",
    "largest_component",
    "load_volume",
    "losses",
    "metrics",
    "phantom",
    "propagate",
    "save_volume",
    "set_thread_count",
    "skeleton_graph",
    "skeletonize",
]
