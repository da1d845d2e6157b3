#ifndef HAILCHI_CLUSTERING_H_
#define HAILCHI_CLUSTERING_H_

#include <cstddef>
#include <span>
#include <vector>

#include "hailchi/hail_event.h"

namespace hailchi {

using FeatureVector = std::vector<double>;

// One agglomeration step. Leaves have ids 0..n-1; the k-th merge creates
// cluster id n + k. `left` < `right`.
struct Merge {
  std::size_t left;
  std::size_t right;
  double height;
  friend bool operator==(const Merge&, const Merge&) = default;
};

struct Dendrogram {
  std::vector<Merge> merges;  // leaf_count - 1 entries, heights nondecreasing
  std::size_t leaf_count = 0;
  friend bool operator==(const Dendrogram&, const Dendrogram&) = default;
};

struct ClusterCut {
  std::vector<std::size_t> assignments;  // event index -> label
  std::size_t cluster_count = 0;
  // Height ratio that triggered the cut; the largest observed ratio when the
  // tree was not cut (1 if there was nothing to compare).
  double jump_ratio = 1.0;
};

/// (lon, lat) per event, plus time_scale * seconds since the first event when
/// time_scale > 0.
std::vector<FeatureVector> event_features(std::span<const HailEvent> events,
                                          double time_scale);

/// Single-linkage agglomerative clustering under the Euclidean metric, built
/// from the sorted edges of a minimum spanning tree (Prim, O(n^2)). Equal
/// heights are ordered by the (smaller, larger) leaf index pair of the edge.
Dendrogram single_linkage(std::span<const FeatureVector> features);

/// Applies merges in order and stops before the first merge whose height
/// exceeds jump_threshold times the previous merge height. Merges at heights
/// <= height_floor (coincident points) neither trigger a cut nor serve as the
/// reference height.
ClusterCut cut_dendrogram(const Dendrogram& dendrogram, double jump_threshold,
                          double height_floor = 1e-12);

}  // namespace hailchi

#endif  // HAILCHI_CLUSTERING_H_
