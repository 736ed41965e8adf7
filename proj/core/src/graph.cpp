#include "logwalk/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cstring>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <numeric>
#include <string>
#include <tuple>

#include "logwalk/errors.hpp"

namespace logwalk {

namespace {

void validate_edge(std::size_t n, const Edge& e) {
  if (e.u >= n || e.v >= n) {
    throw IndexError("edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                     ") has an endpoint outside [0, " + std::to_string(n) + ")");
  }
  if (!std::isfinite(e.weight) || !(e.weight > 0.0)) {
    throw WeightError("edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                      ") has non-positive or non-finite weight " + std::to_string(e.weight));
  }
}

}  // namespace

WeightedGraph WeightedGraph::from_edges(std::size_t n, std::span<const Edge> edges) {
  std::vector<std::vector<Neighbor>> rows(n);
  for (const Edge& e : edges) {
    validate_edge(n, e);
    rows[e.u].push_back({e.v, e.weight});
    if (e.u != e.v) rows[e.v].push_back({e.u, e.weight});
  }

  WeightedGraph g;
  g.offsets_.assign(1, 0);
  g.offsets_.reserve(n + 1);
  g.degrees_.assign(n, 0.0);
  for (std::size_t v = 0; v < n; ++v) {
    auto& row = rows[v];
    std::stable_sort(row.begin(), row.end(),
                     [](const Neighbor& a, const Neighbor& b) { return a.vertex < b.vertex; });
    for (const Neighbor& nb : row) {
      if (!g.entries_.empty() && g.entries_.size() > g.offsets_.back() &&
          g.entries_.back().vertex == nb.vertex) {
        g.entries_.back().weight += nb.weight;
      } else {
        g.entries_.push_back(nb);
      }
    }
    g.offsets_.push_back(g.entries_.size());
    double d = 0.0;
    for (std::size_t e = g.offsets_[v]; e < g.offsets_[v + 1]; ++e) d += g.entries_[e].weight;
    g.degrees_[v] = d;
  }
  return g;
}

double WeightedGraph::weight(Vertex u, Vertex v) const {
  auto row = neighbors(u);
  auto it = std::lower_bound(row.begin(), row.end(), v,
                             [](const Neighbor& a, Vertex x) { return a.vertex < x; });
  return (it != row.end() && it->vertex == v) ? it->weight : 0.0;
}

std::vector<Edge> WeightedGraph::edges() const {
  std::vector<Edge> out;
  for (Vertex u = 0; u < size(); ++u) {
    for (const Neighbor& nb : neighbors(u)) {
      if (nb.vertex >= u) out.push_back({u, nb.vertex, nb.weight});
    }
  }
  return out;
}

std::uint64_t WeightedGraph::fingerprint() const {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](std::uint64_t x) {
    for (int b = 0; b < 8; ++b) {
      h ^= (x >> (8 * b)) & 0xffU;
      h *= 1099511628211ULL;
    }
  };
  mix(size());
  for (Vertex u = 0; u < size(); ++u) {
    for (const Neighbor& nb : neighbors(u)) {
      std::uint64_t bits = 0;
      static_assert(sizeof(bits) == sizeof(nb.weight));
      std::memcpy(&bits, &nb.weight, sizeof(bits));
      mix(u);
      mix(nb.vertex);
      mix(bits);
    }
  }
  return h;
}

WeightedGraph WeightedGraph::induced(std::span<const Vertex> vertices) const {
  std::vector<std::size_t> local(size(), std::numeric_limits<std::size_t>::max());
  for (std::size_t k = 0; k < vertices.size(); ++k) {
    if (vertices[k] >= size()) throw IndexError("induced subgraph vertex out of range");
    local[vertices[k]] = k;
  }
  std::vector<Edge> sub;
  for (std::size_t k = 0; k < vertices.size(); ++k) {
    for (const Neighbor& nb : neighbors(vertices[k])) {
      const std::size_t j = local[nb.vertex];
      if (j != std::numeric_limits<std::size_t>::max() && j >= k) sub.push_back({k, j, nb.weight});
    }
  }
  return from_edges(vertices.size(), sub);
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    if (pos >= line.size()) break;
    std::size_t end = pos;
    while (end < line.size() && line[end] != ' ' && line[end] != '\t') ++end;
    out.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return out;
}

template <typename T>
T parse_number(std::string_view field, std::size_t line_no) {
  T value{};
  const char* begin = field.data();
  const char* end = field.data() + field.size();
  if (!field.empty() && *begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) {
    throw ParseError("line " + std::to_string(line_no) + ": cannot parse '" + std::string(field) +
                     "'");
  }
  return value;
}

struct PairKey {
  Vertex a, b;
  auto operator<=>(const PairKey&) const = default;
};

}  // namespace

WeightedGraph load_graph(std::string_view text, const LoadOptions& options) {
  std::size_t line_no = 0;
  bool have_header = false;
  std::size_t n = 0, m = 0;
  std::vector<Edge> edges;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = trim(text.substr(pos, nl - pos));
    pos = nl + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;

    const auto fields = split_fields(line);
    if (!have_header) {
      if (fields.size() != 2) throw ParseError("line " + std::to_string(line_no) + ": expected 'n m'");
      const auto nn = parse_number<long long>(fields[0], line_no);
      const auto mm = parse_number<long long>(fields[1], line_no);
      if (nn < 1 || mm < 0) throw ParseError("header requires n >= 1 and m >= 0");
      n = static_cast<std::size_t>(nn);
      m = static_cast<std::size_t>(mm);
      have_header = true;
      continue;
    }
    if (fields.size() != 3) {
      throw ParseError("line " + std::to_string(line_no) + ": expected 'u v w'");
    }
    const auto u = parse_number<long long>(fields[0], line_no);
    const auto v = parse_number<long long>(fields[1], line_no);
    const auto w = parse_number<double>(fields[2], line_no);
    if (u < 0 || v < 0) throw IndexError("line " + std::to_string(line_no) + ": negative vertex index");
    edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v), w});
  }
  if (!have_header) throw ParseError("missing 'n m' header");
  if (edges.size() != m) {
    throw ParseError("header announces " + std::to_string(m) + " edges, found " +
                     std::to_string(edges.size()));
  }
  for (const Edge& e : edges) validate_edge(n, e);

  if (!options.directed_entries) return WeightedGraph::from_edges(n, edges);

  // Directed entries: pair each (u, v, w) with its reverse.
  std::map<PairKey, double> entries;
  for (const Edge& e : edges) entries[{e.u, e.v}] += e.weight;
  std::vector<Edge> undirected;
  for (const auto& [key, w] : entries) {
    if (key.a == key.b) {
      undirected.push_back({key.a, key.b, w});
      continue;
    }
    auto rev = entries.find({key.b, key.a});
    if (rev == entries.end()) {
      if (!options.symmetrize) {
        throw AsymmetryError("entry (" + std::to_string(key.a) + ", " + std::to_string(key.b) +
                             ") has no reverse entry");
      }
      undirected.push_back({key.a, key.b, w});
    } else if (key.a < key.b) {
      if (rev->second != w && !options.symmetrize) {
        throw AsymmetryError("entries (" + std::to_string(key.a) + ", " + std::to_string(key.b) +
                             ") and reverse differ in weight");
      }
      undirected.push_back({key.a, key.b, options.symmetrize ? std::max(w, rev->second) : w});
    }
  }
  return WeightedGraph::from_edges(n, undirected);
}

// ---------------------------------------------------------------------------
// Structural quantities

double volume(const WeightedGraph& g) {
  double vol = 0.0;
  for (double d : g.degrees()) vol += d;
  return vol;
}

void require_no_isolated_vertex(const WeightedGraph& g) {
  for (Vertex v = 0; v < g.size(); ++v) {
    if (!(g.degree(v) > 0.0)) {
      throw IsolatedVertexError("vertex " + std::to_string(v) + " has degree zero");
    }
  }
}

double degree_ratio(const WeightedGraph& g) {
  require_no_isolated_vertex(g);
  const auto [lo, hi] = std::minmax_element(g.degrees().begin(), g.degrees().end());
  return *hi / *lo;
}

std::vector<std::vector<Vertex>> connected_components(const WeightedGraph& g) {
  const std::size_t n = g.size();
  std::vector<bool> seen(n, false);
  std::vector<std::vector<Vertex>> parts;
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<Vertex> part;
    seen[s] = true;
    stack.push_back(s);
    while (!stack.empty()) {
      const Vertex v = stack.back();
      stack.pop_back();
      part.push_back(v);
      for (const Neighbor& nb : g.neighbors(v)) {
        if (!seen[nb.vertex]) {
          seen[nb.vertex] = true;
          stack.push_back(nb.vertex);
        }
      }
    }
    std::sort(part.begin(), part.end());
    parts.push_back(std::move(part));
  }
  return parts;
}

bool is_connected(const WeightedGraph& g) { return connected_components(g).size() <= 1; }

void require_connected(const WeightedGraph& g) {
  if (!is_connected(g)) throw DisconnectedError("graph is not connected");
}

std::size_t hop_diameter(const WeightedGraph& g) {
  require_connected(g);
  const std::size_t n = g.size();
  constexpr auto unseen = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> dist(n);
  std::deque<Vertex> queue;
  std::size_t diameter = 0;
  for (Vertex s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), unseen);
    dist[s] = 0;
    queue.assign(1, s);
    while (!queue.empty()) {
      const Vertex v = queue.front();
      queue.pop_front();
      diameter = std::max(diameter, dist[v]);
      for (const Neighbor& nb : g.neighbors(v)) {
        if (dist[nb.vertex] == unseen) {
          dist[nb.vertex] = dist[v] + 1;
          queue.push_back(nb.vertex);
        }
      }
    }
  }
  return diameter;
}

double lambda2_lower_bound(const WeightedGraph& g) {
  require_connected(g);
  if (g.size() < 2) throw NotApplicableError("lambda_2 is undefined for a single vertex");
  const double bound = 1.0 / (static_cast<double>(hop_diameter(g)) * volume(g));
  return std::clamp(bound, std::numeric_limits<double>::min(), 2.0);
}

std::vector<double> kernel_vector(const WeightedGraph& g) {
  const double vol = volume(g);
  if (!(vol > 0.0)) throw NotApplicableError("graph has zero volume");
  std::vector<double> u(g.size());
  const double scale = 1.0 / std::sqrt(vol);
  for (Vertex v = 0; v < g.size(); ++v) u[v] = std::sqrt(g.degree(v)) * scale;
  return u;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> v) { return std::sqrt(dot(v, v)); }

double kernel_component(const WeightedGraph& g, std::span<const double> v) {
  if (v.size() != g.size()) throw DomainError("vector length does not match vertex count");
  const auto u = kernel_vector(g);
  return std::abs(dot(u, v));
}

ImageVector ImageVector::checked(const WeightedGraph& g, std::vector<double> v, double tolerance) {
  require_connected(g);
  if (kernel_component(g, v) > tolerance * norm2(v)) {
    throw NotInImageError("vector is not orthogonal to the kernel vector u_1");
  }
  return ImageVector(std::move(v));
}

ImageVector project_to_image(const WeightedGraph& g, std::span<const double> v) {
  require_connected(g);
  if (v.size() != g.size()) throw DomainError("vector length does not match vertex count");
  const auto u = kernel_vector(g);
  std::vector<double> out(v.begin(), v.end());
  // Two passes of Gram-Schmidt keep the residual at rounding level.
  for (int pass = 0; pass < 2; ++pass) {
    const double c = dot(u, out);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= c * u[i];
  }
  return ImageVector(std::move(out));
}

}  // namespace logwalk
