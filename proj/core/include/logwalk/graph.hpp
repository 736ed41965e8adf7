#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace logwalk {

using Vertex = std::size_t;

struct Neighbor {
  Vertex vertex;
  double weight;
};

/// An undirected edge as it appears in a graph file: listed once, u == v
/// denotes a loop.
struct Edge {
  Vertex u;
  Vertex v;
  double weight;
};

/// Undirected weighted graph in compressed adjacency form.
///
/// Every non-loop edge {u, v} is stored as the two entries (u, v, w) and
/// (v, u, w); a loop is stored once in its vertex's row. Rows are sorted by
/// neighbor index and parallel edges are merged by summing their weights.
/// Degrees are the row sums d_i = sum_j w(i, j), so a loop contributes its
/// weight once. Immutable after construction.
class WeightedGraph {
 public:
  WeightedGraph() = default;

  /// Throws IndexError for endpoints outside [0, n) and WeightError for
  /// weights that are not finite and strictly positive.
  static WeightedGraph from_edges(std::size_t n, std::span<const Edge> edges);

  std::size_t size() const noexcept { return degrees_.size(); }
  std::size_t entry_count() const noexcept { return entries_.size(); }

  std::span<const Neighbor> neighbors(Vertex v) const noexcept {
    return {entries_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }
  double degree(Vertex v) const noexcept { return degrees_[v]; }
  std::span<const double> degrees() const noexcept { return degrees_; }

  /// w(u, v), zero when the pair is not adjacent.
  double weight(Vertex u, Vertex v) const;

  /// Undirected edge list, each edge once (u <= v).
  std::vector<Edge> edges() const;

  /// FNV-1a digest over the adjacency structure and weights.
  std::uint64_t fingerprint() const;

  /// Subgraph induced by `vertices`; vertex k of the result is vertices[k].
  WeightedGraph induced(std::span<const Vertex> vertices) const;

 private:
  std::vector<std::size_t> offsets_{0};
  std::vector<Neighbor> entries_;
  std::vector<double> degrees_;
};

struct LoadOptions {
  /// Treat each line as one directed entry (u, v, w). The reverse entry
  /// must then be present with an identical weight unless `symmetrize`.
  bool directed_entries = false;
  bool symmetrize = false;
};

/// Parses the edge-list format: a header line `n m` followed by m lines
/// `u v w`. Blank lines and lines starting with '#' are skipped.
WeightedGraph load_graph(std::string_view text, const LoadOptions& options = {});

double volume(const WeightedGraph& g);

/// max_i d_i / min_i d_i. Throws IsolatedVertexError when some d_i = 0.
double degree_ratio(const WeightedGraph& g);

void require_no_isolated_vertex(const WeightedGraph& g);

/// Components ordered by smallest member; members sorted ascending.
std::vector<std::vector<Vertex>> connected_components(const WeightedGraph& g);
bool is_connected(const WeightedGraph& g);
void require_connected(const WeightedGraph& g);

/// Maximum unweighted hop distance over all vertex pairs.
std::size_t hop_diameter(const WeightedGraph& g);

/// 1 / (diam(G) vol(G)), clamped into (0, 2].
double lambda2_lower_bound(const WeightedGraph& g);

/// Unit kernel vector (1/sqrt(vol)) (sqrt(d_1), ..., sqrt(d_n)).
std::vector<double> kernel_vector(const WeightedGraph& g);

inline constexpr double kImageTolerance = 1e-9;

/// A vector orthogonal to the kernel vector of a connected graph.
class ImageVector {
 public:
  std::span<const double> entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  double operator[](std::size_t i) const noexcept { return entries_[i]; }

  /// Wraps `v` after checking |<v, u_1>| <= tolerance * ||v||; throws
  /// NotInImageError otherwise.
  static ImageVector checked(const WeightedGraph& g, std::vector<double> v,
                             double tolerance = kImageTolerance);

 private:
  friend ImageVector project_to_image(const WeightedGraph&, std::span<const double>);
  explicit ImageVector(std::vector<double> v) : entries_(std::move(v)) {}
  std::vector<double> entries_;
};

/// v - <u_1, v> u_1. Requires a connected graph.
ImageVector project_to_image(const WeightedGraph& g, std::span<const double> v);

/// |<u_1, v>| for the closed-form kernel vector.
double kernel_component(const WeightedGraph& g, std::span<const double> v);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> v);

}  // namespace logwalk
