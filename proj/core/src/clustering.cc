#include "hailchi/clustering.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <tuple>

#include "hailchi/error.h"

namespace hailchi {
namespace {

double euclidean(const FeatureVector& a, const FeatureVector& b) {
  double sum = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    sum += d * d;
  }
  return std::sqrt(sum);
}

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  // Attaches b's root under a's root; returns the surviving root.
  std::size_t join(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    parent_[b] = a;
    return a;
  }

 private:
  std::vector<std::size_t> parent_;
};

struct Edge {
  std::size_t u;  // u < v
  std::size_t v;
  double weight;
};

}  // namespace

std::vector<FeatureVector> event_features(std::span<const HailEvent> events,
                                          double time_scale) {
  if (events.empty()) throw DataError("event_features: no events");
  if (!(time_scale >= 0.0) || !std::isfinite(time_scale)) {
    throw DomainError("event_features: time_scale must be finite and >= 0");
  }
  std::vector<FeatureVector> features;
  features.reserve(events.size());
  const Timestamp first = events.front().time;
  for (const HailEvent& e : events) {
    if (time_scale > 0.0) {
      const double seconds = static_cast<double>((e.time - first).count());
      features.push_back({e.lon, e.lat, time_scale * seconds});
    } else {
      features.push_back({e.lon, e.lat});
    }
  }
  return features;
}

Dendrogram single_linkage(std::span<const FeatureVector> features) {
  const std::size_t n = features.size();
  if (n == 0) throw DomainError("single_linkage: no feature vectors");
  const std::size_t dim = features.front().size();
  for (const FeatureVector& f : features) {
    if (f.size() != dim) throw DomainError("single_linkage: dimension mismatch");
    for (double x : f) {
      if (!std::isfinite(x)) throw DomainError("single_linkage: non-finite feature");
    }
  }

  // Prim's algorithm on the implicit complete graph.
  std::vector<Edge> tree;
  tree.reserve(n - 1);
  std::vector<bool> in_tree(n, false);
  std::vector<double> best(n, std::numeric_limits<double>::infinity());
  std::vector<std::size_t> via(n, 0);
  std::size_t current = 0;
  in_tree[0] = true;
  for (std::size_t step = 1; step < n; ++step) {
    std::size_t next = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (in_tree[j]) continue;
      const double d = euclidean(features[current], features[j]);
      if (d < best[j]) {
        best[j] = d;
        via[j] = current;
      }
      if (next == n || best[j] < best[next]) next = j;
    }
    in_tree[next] = true;
    tree.push_back({std::min(next, via[next]), std::max(next, via[next]), best[next]});
    current = next;
  }

  std::sort(tree.begin(), tree.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.weight, a.u, a.v) < std::tie(b.weight, b.u, b.v);
  });

  Dendrogram dendrogram;
  dendrogram.leaf_count = n;
  dendrogram.merges.reserve(n - 1);
  DisjointSets sets(n);
  std::vector<std::size_t> cluster_id(n);  // root -> current cluster id
  std::iota(cluster_id.begin(), cluster_id.end(), 0);
  for (const Edge& e : tree) {
    const std::size_t ru = sets.find(e.u);
    const std::size_t rv = sets.find(e.v);
    const std::size_t a = cluster_id[ru];
    const std::size_t b = cluster_id[rv];
    const std::size_t root = sets.join(ru, rv);
    cluster_id[root] = n + dendrogram.merges.size();
    dendrogram.merges.push_back({std::min(a, b), std::max(a, b), e.weight});
  }
  return dendrogram;
}

ClusterCut cut_dendrogram(const Dendrogram& dendrogram, double jump_threshold,
                          double height_floor) {
  if (!(jump_threshold > 1.0)) {
    throw DomainError("cut_dendrogram: jump_threshold must exceed 1");
  }
  if (!(height_floor >= 0.0)) throw DomainError("cut_dendrogram: negative height floor");
  const std::size_t n = dendrogram.leaf_count;
  if (n == 0) throw DomainError("cut_dendrogram: empty dendrogram");
  if (dendrogram.merges.size() + 1 != n) {
    throw DomainError("cut_dendrogram: merge count must be leaf_count - 1");
  }

  ClusterCut cut;
  std::size_t applied = dendrogram.merges.size();
  double reference = 0.0;  // last merge height above the floor
  double largest_ratio = 1.0;
  for (std::size_t k = 0; k < dendrogram.merges.size(); ++k) {
    const double h = dendrogram.merges[k].height;
    if (h <= height_floor) continue;
    if (reference > 0.0) {
      const double ratio = h / reference;
      if (ratio > jump_threshold) {
        applied = k;
        cut.jump_ratio = ratio;
        break;
      }
      largest_ratio = std::max(largest_ratio, ratio);
    }
    reference = h;
  }
  if (applied == dendrogram.merges.size()) cut.jump_ratio = largest_ratio;

  // Replay the retained merges over leaves.
  std::vector<std::size_t> owner(n + applied);  // cluster id -> representative leaf
  DisjointSets sets(n);
  std::iota(owner.begin(), owner.begin() + n, 0);
  for (std::size_t k = 0; k < applied; ++k) {
    const Merge& m = dendrogram.merges[k];
    if (m.left >= n + k || m.right >= n + k) {
      throw DomainError("cut_dendrogram: merge references an unknown cluster");
    }
    owner[n + k] = sets.join(owner[m.left], owner[m.right]);
  }

  // Labels in order of each cluster's smallest event index.
  constexpr std::size_t kUnlabelled = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> label_of_root(n, kUnlabelled);
  cut.assignments.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t root = sets.find(i);
    if (label_of_root[root] == kUnlabelled) label_of_root[root] = cut.cluster_count++;
    cut.assignments[i] = label_of_root[root];
  }
  return cut;
}

}  // namespace hailchi
