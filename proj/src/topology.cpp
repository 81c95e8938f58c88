// Copyright 2022 The swaproute Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "swaproute/topology.hpp"

#include <algorithm>
#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/edge_coloring.hpp>
#include <limits>
#include "json.hpp"
#include <ostream>
#include <queue>
#include <set>
#include <sstream>
#include <tuple>

#include "swaproute/error.hpp"
#include "swaproute/io.hpp"

namespace swaproute {

std::ostream& operator<<(std::ostream& os, const Edge& e) {
  return os << '(' << e.u << ',' << e.v << ')';
}

std::string_view to_string(Family family) {
  switch (family) {
    case Family::Line:
      return "line";
    case Family::Grid2D:
      return "grid2d";
    case Family::Grid3D:
      return "grid3d";
    case Family::HeavyHex:
      return "heavy-hex";
    case Family::Custom:
      return "custom";
  }
  return "custom";
}

Family family_from_string(std::string_view name) {
  if (name == "line") return Family::Line;
  if (name == "grid2d" || name == "grid") return Family::Grid2D;
  if (name == "grid3d") return Family::Grid3D;
  if (name == "heavy-hex" || name == "heavyhex") return Family::HeavyHex;
  if (name == "custom" || name == CouplingMap::kUnrolledHeavyHex) return Family::Custom;
  throw Error(ErrorCode::UnknownFamily, "unknown family '" + std::string(name) + "'");
}

CouplingMap::CouplingMap(
    std::size_t num_qubits, std::vector<Edge> edges, Family family,
    std::vector<std::size_t> dims, std::string label)
    : num_qubits_(num_qubits),
      edges_(std::move(edges)),
      family_(family),
      dims_(std::move(dims)),
      label_(std::move(label)),
      adjacency_(num_qubits) {
  if (num_qubits_ == 0) throw Error(ErrorCode::InvalidDims, "coupling map needs at least one qubit");
  if (num_qubits_ > std::numeric_limits<Qubit>::max()) {
    throw Error(ErrorCode::InvalidDims, "too many qubits");
  }
  edge_lookup_.reserve(edges_.size());
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    const Edge& e = edges_[k];
    if (e.u == e.v) throw Error(ErrorCode::InvalidInput, "self-loop on qubit " + std::to_string(e.u));
    if (e.v >= num_qubits_) {
      throw Error(ErrorCode::OutOfRange, "edge references qubit " + std::to_string(e.v));
    }
    if (!edge_lookup_.emplace(key(e.u, e.v), k).second) {
      throw Error(
          ErrorCode::InvalidInput,
          "duplicate edge " + std::to_string(e.u) + "-" + std::to_string(e.v));
    }
    adjacency_[e.u].push_back(e.v);
    adjacency_[e.v].push_back(e.u);
  }
  for (auto& nb : adjacency_) std::sort(nb.begin(), nb.end());
}

CouplingMap CouplingMap::line(std::size_t n) {
  if (n < 1) throw Error(ErrorCode::InvalidDims, "line needs n >= 1");
  std::vector<Edge> edges;
  for (std::size_t q = 0; q + 1 < n; ++q) {
    edges.emplace_back(static_cast<Qubit>(q), static_cast<Qubit>(q + 1));
  }
  return CouplingMap(n, std::move(edges), Family::Line, {n});
}

namespace {

std::size_t checked_product(std::initializer_list<std::size_t> dims) {
  std::size_t n = 1;
  for (std::size_t d : dims) {
    if (d < 1) throw Error(ErrorCode::InvalidDims, "dimensions must be >= 1");
    if (n > std::numeric_limits<Qubit>::max() / d) {
      throw Error(ErrorCode::InvalidDims, "dimension product overflows");
    }
    n *= d;
  }
  return n;
}

}  // namespace

CouplingMap CouplingMap::grid2d(std::size_t x, std::size_t y) {
  const std::size_t n = checked_product({x, y});
  auto q = [x](std::size_t r, std::size_t c) { return static_cast<Qubit>(r * x + c); };
  std::vector<Edge> edges;
  for (std::size_t r = 0; r < y; ++r) {
    for (std::size_t c = 0; c + 1 < x; ++c) edges.emplace_back(q(r, c), q(r, c + 1));
  }
  for (std::size_t r = 0; r + 1 < y; ++r) {
    for (std::size_t c = 0; c < x; ++c) edges.emplace_back(q(r, c), q(r + 1, c));
  }
  return CouplingMap(n, std::move(edges), Family::Grid2D, {x, y});
}

CouplingMap CouplingMap::grid3d(std::size_t x, std::size_t y, std::size_t z) {
  const std::size_t n = checked_product({x, y, z});
  auto q = [x, y](std::size_t c, std::size_t r, std::size_t p) {
    return static_cast<Qubit>((p * y + r) * x + c);
  };
  std::vector<Edge> edges;
  for (std::size_t p = 0; p < z; ++p)
    for (std::size_t r = 0; r < y; ++r)
      for (std::size_t c = 0; c + 1 < x; ++c) edges.emplace_back(q(c, r, p), q(c + 1, r, p));
  for (std::size_t p = 0; p < z; ++p)
    for (std::size_t r = 0; r + 1 < y; ++r)
      for (std::size_t c = 0; c < x; ++c) edges.emplace_back(q(c, r, p), q(c, r + 1, p));
  for (std::size_t p = 0; p + 1 < z; ++p)
    for (std::size_t r = 0; r < y; ++r)
      for (std::size_t c = 0; c < x; ++c) edges.emplace_back(q(c, r, p), q(c, r, p + 1));
  return CouplingMap(n, std::move(edges), Family::Grid3D, {x, y, z});
}

namespace {

// Heavy-hex as a subdivided brick-wall honeycomb. Honeycomb vertex (r, c)
// lives in row r = 0..rows and column c = 0..2*cols+1; the corner (0, 2j+1)
// is absent, and in the last row so is (i, 2j+1) for odd i or (i, 0) for even
// i. Row r is the chain of heavy positions h = 2*c0 .. 2*c1, even h being
// honeycomb vertices and odd h the qubit on the horizontal edge between them.
// Vertical edges between rows r and r+1 sit at columns with c % 2 == r % 2 and
// carry one bridge qubit each. Numbering is row-major: a row's chain left to
// right, then the bridges below it left to right.
struct HeavyHexLayout {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::vector<std::size_t>> columns;  // honeycomb columns per row
  std::map<std::pair<std::size_t, std::size_t>, Qubit> chain;   // (row, h)
  std::map<std::pair<std::size_t, std::size_t>, Qubit> bridge;  // (gap row, column)
  std::size_t num_qubits = 0;
  std::vector<Edge> edges;

  Qubit vertex(std::size_t r, std::size_t c) const { return chain.at({r, 2 * c}); }
  bool has_vertex(std::size_t r, std::size_t c) const {
    const auto& cs = columns[r];
    return std::find(cs.begin(), cs.end(), c) != cs.end();
  }
};

HeavyHexLayout heavy_hex_layout(std::size_t rows, std::size_t cols) {
  if (rows < 1 || cols < 1) throw Error(ErrorCode::InvalidDims, "heavy-hex needs i, j >= 1");
  if (rows > 4096 || cols > 4096) throw Error(ErrorCode::InvalidDims, "heavy-hex dimensions too large");
  HeavyHexLayout L;
  L.rows = rows;
  L.cols = cols;
  const std::size_t width = 2 * cols + 2;
  for (std::size_t r = 0; r <= rows; ++r) {
    std::vector<std::size_t> cs;
    for (std::size_t c = 0; c < width; ++c) cs.push_back(c);
    if (r == 0) cs.erase(std::find(cs.begin(), cs.end(), width - 1));
    if (r == rows) {
      const std::size_t drop = rows % 2 == 1 ? width - 1 : 0;
      auto it = std::find(cs.begin(), cs.end(), drop);
      if (it != cs.end()) cs.erase(it);
    }
    L.columns.push_back(std::move(cs));
  }
  Qubit next = 0;
  for (std::size_t r = 0; r <= rows; ++r) {
    const auto& cs = L.columns[r];
    const std::size_t h0 = 2 * cs.front();
    const std::size_t h1 = 2 * cs.back();
    for (std::size_t h = h0; h <= h1; ++h) L.chain[{r, h}] = next++;
    for (std::size_t h = h0; h < h1; ++h) L.edges.emplace_back(L.chain[{r, h}], L.chain[{r, h + 1}]);
    if (r < rows) {
      for (std::size_t c = 0; c < width; ++c) {
        if (c % 2 == r % 2 && L.has_vertex(r, c) && L.has_vertex(r + 1, c)) {
          L.bridge[{r, c}] = next++;
        }
      }
    }
  }
  for (const auto& [rc, b] : L.bridge) {
    const auto [r, c] = rc;
    L.edges.emplace_back(L.vertex(r, c), b);
    L.edges.emplace_back(b, L.chain.at({r + 1, 2 * c}));
  }
  L.num_qubits = next;
  return L;
}

}  // namespace

CouplingMap CouplingMap::heavy_hex(std::size_t rows, std::size_t cols) {
  HeavyHexLayout L = heavy_hex_layout(rows, cols);
  return CouplingMap(L.num_qubits, std::move(L.edges), Family::HeavyHex, {rows, cols});
}

CouplingMap CouplingMap::unrolled_heavy_hex(std::size_t line_length) {
  if (line_length < 4 || line_length % 4 != 0) {
    throw Error(ErrorCode::InvalidDims, "unrolled heavy-hex line length must be a positive multiple of 4");
  }
  std::vector<Edge> edges;
  for (std::size_t p = 0; p + 1 < line_length; ++p) {
    edges.emplace_back(static_cast<Qubit>(p), static_cast<Qubit>(p + 1));
  }
  std::size_t next = line_length;
  for (std::size_t p = 1; p < line_length; p += 4) {
    edges.emplace_back(static_cast<Qubit>(p), static_cast<Qubit>(next++));
  }
  return CouplingMap(
      next, std::move(edges), Family::Custom, {line_length}, std::string(kUnrolledHeavyHex));
}

bool CouplingMap::has_edge(Qubit a, Qubit b) const {
  return edge_lookup_.contains(key(a, b));
}

std::optional<std::size_t> CouplingMap::edge_index(Qubit a, Qubit b) const {
  auto it = edge_lookup_.find(key(a, b));
  if (it == edge_lookup_.end()) return std::nullopt;
  return it->second;
}

std::span<const Qubit> CouplingMap::neighbors(Qubit q) const {
  if (q >= num_qubits_) throw Error(ErrorCode::OutOfRange, "qubit " + std::to_string(q));
  return adjacency_[q];
}

std::size_t CouplingMap::max_degree() const {
  std::size_t d = 0;
  for (const auto& nb : adjacency_) d = std::max(d, nb.size());
  return d;
}

CouplingMap CouplingMap::with_coloring(std::vector<std::size_t> colors) const {
  if (colors.size() != edges_.size()) {
    throw Error(ErrorCode::LengthMismatch, "coloring must assign one color per edge");
  }
  if (!is_proper_coloring(*this, colors)) {
    throw Error(ErrorCode::InvalidInput, "coloring is not proper");
  }
  CouplingMap copy = *this;
  copy.coloring_ = std::move(colors);
  return copy;
}

std::vector<std::size_t> CouplingMap::distances_from(Qubit source) const {
  constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> dist(num_qubits_, kInf);
  std::queue<Qubit> frontier;
  dist.at(source) = 0;
  frontier.push(source);
  while (!frontier.empty()) {
    const Qubit q = frontier.front();
    frontier.pop();
    for (Qubit nb : adjacency_[q]) {
      if (dist[nb] == kInf) {
        dist[nb] = dist[q] + 1;
        frontier.push(nb);
      }
    }
  }
  return dist;
}

std::vector<std::size_t> CouplingMap::all_distances() const {
  std::vector<std::size_t> out;
  out.reserve(num_qubits_ * num_qubits_);
  for (std::size_t q = 0; q < num_qubits_; ++q) {
    auto row = distances_from(static_cast<Qubit>(q));
    out.insert(out.end(), row.begin(), row.end());
  }
  return out;
}

CouplingMap build_coupling_map(Family family, std::span<const std::size_t> dims) {
  auto need = [&](std::size_t k) {
    if (dims.size() != k) {
      throw Error(
          ErrorCode::InvalidDims,
          std::string(to_string(family)) + " expects " + std::to_string(k) + " dimension(s)");
    }
  };
  switch (family) {
    case Family::Line:
      need(1);
      return CouplingMap::line(dims[0]);
    case Family::Grid2D:
      if (dims.size() == 1) return CouplingMap::grid2d(dims[0], dims[0]);
      need(2);
      return CouplingMap::grid2d(dims[0], dims[1]);
    case Family::Grid3D:
      if (dims.size() == 1) return CouplingMap::grid3d(dims[0], dims[0], dims[0]);
      need(3);
      return CouplingMap::grid3d(dims[0], dims[1], dims[2]);
    case Family::HeavyHex:
      need(2);
      return CouplingMap::heavy_hex(dims[0], dims[1]);
    case Family::Custom:
      break;
  }
  throw Error(ErrorCode::UnknownFamily, "custom maps have no constructor");
}

// ---------------------------------------------------------------------------
// Edge coloring

bool is_proper_coloring(const CouplingMap& map, std::span<const std::size_t> colors) {
  if (colors.size() != map.edges().size()) return false;
  std::set<std::pair<Qubit, std::size_t>> seen;
  for (std::size_t k = 0; k < colors.size(); ++k) {
    const Edge& e = map.edges()[k];
    if (!seen.emplace(e.u, colors[k]).second) return false;
    if (!seen.emplace(e.v, colors[k]).second) return false;
  }
  return true;
}

namespace {

// Bipartite edge coloring with max-degree colors by alternating-path swaps.
std::vector<std::size_t> bipartite_edge_coloring(const CouplingMap& map) {
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  const std::size_t n = map.num_qubits();
  const std::size_t palette = std::max<std::size_t>(map.max_degree(), 1);
  // at[q][c] = index of the edge with color c at q
  std::vector<std::vector<std::size_t>> at(n, std::vector<std::size_t>(palette, kNone));
  std::vector<std::size_t> color(map.edges().size(), kNone);
  auto free_color = [&](Qubit q) {
    for (std::size_t c = 0; c < palette; ++c)
      if (at[q][c] == kNone) return c;
    throw Error(ErrorCode::InvalidInput, "no free color");
  };
  for (std::size_t k = 0; k < map.edges().size(); ++k) {
    const Edge& e = map.edges()[k];
    const std::size_t a = free_color(e.u);
    if (at[e.v][a] != kNone) {
      const std::size_t b = free_color(e.v);
      // Walk the a/b path starting at v and swap its colors. In a bipartite
      // graph it cannot reach u.
      std::vector<std::size_t> path;
      Qubit q = e.v;
      std::size_t want = a;
      while (at[q][want] != kNone) {
        const std::size_t idx = at[q][want];
        path.push_back(idx);
        const Edge& pe = map.edges()[idx];
        q = pe.u == q ? pe.v : pe.u;
        want = want == a ? b : a;
      }
      for (std::size_t idx : path) {
        const Edge& pe = map.edges()[idx];
        at[pe.u][color[idx]] = kNone;
        at[pe.v][color[idx]] = kNone;
      }
      for (std::size_t idx : path) {
        color[idx] = color[idx] == a ? b : a;
        const Edge& pe = map.edges()[idx];
        at[pe.u][color[idx]] = idx;
        at[pe.v][color[idx]] = idx;
      }
    }
    color[k] = a;
    at[e.u][a] = k;
    at[e.v][a] = k;
  }
  return color;
}

std::vector<std::size_t> generic_edge_coloring(const CouplingMap& map) {
  using Graph = boost::adjacency_list<
      boost::vecS, boost::vecS, boost::undirectedS, boost::no_property, std::size_t>;
  Graph g(map.num_qubits());
  for (const Edge& e : map.edges()) boost::add_edge(e.u, e.v, g);
  boost::edge_coloring(g, boost::get(boost::edge_bundle, g));
  std::vector<std::size_t> colors;
  colors.reserve(map.edges().size());
  for (const Edge& e : map.edges()) {
    colors.push_back(g[boost::edge(e.u, e.v, g).first]);
  }
  return colors;
}

}  // namespace

std::vector<std::size_t> edge_coloring(const CouplingMap& map) {
  std::vector<std::size_t> colors;
  colors.reserve(map.edges().size());
  switch (map.family()) {
    case Family::Line:
      for (const Edge& e : map.edges()) colors.push_back(e.u % 2);
      return colors;
    case Family::Grid2D: {
      const std::size_t x = map.dims()[0];
      for (const Edge& e : map.edges()) {
        const std::size_t r = e.u / x;
        const std::size_t c = e.u % x;
        colors.push_back(e.v == e.u + 1 ? (r + c) % 2 : 2 + r % 2);
      }
      return colors;
    }
    case Family::Grid3D: {
      const std::size_t x = map.dims()[0];
      const std::size_t y = map.dims()[1];
      for (const Edge& e : map.edges()) {
        const std::size_t c = e.u % x;
        const std::size_t r = (e.u / x) % y;
        const std::size_t p = e.u / (x * y);
        if (e.v == e.u + 1) {
          colors.push_back((c + r + p) % 2);
        } else if (e.v == e.u + x) {
          colors.push_back(2 + (r + p) % 2);
        } else {
          colors.push_back(4 + p % 2);
        }
      }
      return colors;
    }
    case Family::HeavyHex:
      return bipartite_edge_coloring(map);
    case Family::Custom:
      break;
  }
  return generic_edge_coloring(map);
}

std::string_view to_string(NodeGroup group) {
  static constexpr std::string_view names[] = {
      "A", "B", "V0", "V1", "V2", "V3", "V4", "V5", "V6", "V7", "tail-short", "tail-long"};
  return names[static_cast<std::size_t>(group)];
}

// ---------------------------------------------------------------------------
// Unfolding

namespace {

// Line through the honeycomb: row 0 right to left, row 1 left to right and so
// on, joined through the end bridges. A leading bridge below the start of
// row 0 is prepended, giving a line of 4(ij + i + j) qubits.
std::vector<Qubit> heavy_hex_line(const HeavyHexLayout& L) {
  std::vector<std::pair<std::size_t, std::size_t>> path;
  for (std::size_t r = 0; r <= L.rows; ++r) {
    auto cs = L.columns[r];
    if (r % 2 == 0) std::reverse(cs.begin(), cs.end());
    for (std::size_t c : cs) path.emplace_back(r, c);
  }
  std::vector<Qubit> line;
  line.push_back(L.bridge.at({0, path.front().second}));
  for (std::size_t k = 0; k < path.size(); ++k) {
    const auto [r, c] = path[k];
    line.push_back(L.vertex(r, c));
    if (k + 1 == path.size()) break;
    const auto [r2, c2] = path[k + 1];
    if (r2 == r) {
      line.push_back(L.chain.at({r, c + c2}));
    } else {
      if (c2 != c) throw Error(ErrorCode::UnfoldFailed, "row transition is not vertical");
      line.push_back(L.bridge.at({r, c}));
    }
  }
  return line;
}

UnfoldedHeavyHex assemble_unfolding(const CouplingMap& map, std::vector<Qubit> line) {
  const std::size_t n = map.num_qubits();
  constexpr std::size_t kOff = std::numeric_limits<std::size_t>::max();
  if (line.size() < 8 || line.size() % 4 != 0) {
    throw Error(ErrorCode::UnfoldFailed, "line length must be a multiple of 4 and at least 8");
  }
  std::vector<std::size_t> pos(n, kOff);
  for (std::size_t p = 0; p < line.size(); ++p) {
    if (pos.at(line[p]) != kOff) throw Error(ErrorCode::UnfoldFailed, "line revisits a qubit");
    pos[line[p]] = p;
    if (p > 0 && !map.has_edge(line[p - 1], line[p])) {
      throw Error(ErrorCode::UnfoldFailed, "line is not a path of the coupling map");
    }
  }
  UnfoldedHeavyHex out{map, std::move(line), {}, {}, {}, {}, {}, 0};
  std::set<Edge> kept;
  for (std::size_t p = 0; p + 1 < out.line_order.size(); ++p) {
    kept.emplace(out.line_order[p], out.line_order[p + 1]);
  }
  for (Qubit q = 0; q < n; ++q) {
    if (pos[q] != kOff) continue;
    std::optional<std::size_t> anchor;
    for (Qubit nb : map.neighbors(q)) {
      if (pos[nb] != kOff && pos[nb] % 4 == 1) {
        if (anchor) throw Error(ErrorCode::UnfoldFailed, "off-line qubit has two anchors");
        anchor = pos[nb];
      }
    }
    if (!anchor) throw Error(ErrorCode::UnfoldFailed, "off-line qubit " + std::to_string(q) + " has no anchor");
    if (!out.dangling.emplace(*anchor, q).second) {
      throw Error(ErrorCode::UnfoldFailed, "two off-line qubits share an anchor");
    }
    kept.emplace(out.line_order[*anchor], q);
  }
  for (const Edge& e : map.edges()) {
    if (!kept.contains(e)) out.removed_edges.push_back(e);
  }

  const std::size_t first = out.dangling.empty() ? out.line_order.size() : out.dangling.begin()->first;
  const std::size_t last = out.dangling.empty() ? out.line_order.size() : out.dangling.rbegin()->first;
  out.groups.assign(n, NodeGroup::TailLong);
  for (std::size_t p = 0; p < out.line_order.size(); ++p) {
    const Qubit q = out.line_order[p];
    if (p < first) {
      out.groups[q] = NodeGroup::TailShort;
      out.tail_short.push_back(q);
    } else if (p > last) {
      out.groups[q] = NodeGroup::TailLong;
      out.tail_long.push_back(q);
    } else {
      out.groups[q] = static_cast<NodeGroup>(static_cast<std::size_t>(NodeGroup::V0) + (p + 7) % 8);
    }
  }
  for (const auto& [p, q] : out.dangling) out.groups[q] = p % 8 == 1 ? NodeGroup::A : NodeGroup::B;

  out.extended_length = out.line_order.size();
  for (Qubit nb : map.neighbors(out.line_order.back())) {
    if (pos[nb] == kOff) {
      out.extended_length += 1;
      break;
    }
  }
  return out;
}

}  // namespace

UnfoldedHeavyHex unfold_heavy_hex(const CouplingMap& map) {
  if (map.family() == Family::HeavyHex) {
    const HeavyHexLayout L = heavy_hex_layout(map.dims()[0], map.dims()[1]);
    return assemble_unfolding(map, heavy_hex_line(L));
  }
  if (map.family() == Family::Custom && map.label() == CouplingMap::kUnrolledHeavyHex) {
    const std::size_t l = map.dims()[0];
    std::vector<Qubit> line(l);
    for (std::size_t p = 0; p < l; ++p) line[p] = static_cast<Qubit>(p);
    return assemble_unfolding(map, std::move(line));
  }
  throw Error(ErrorCode::UnfoldFailed, "only heavy-hex maps can be unfolded");
}

// ---------------------------------------------------------------------------
// Serialization

std::string to_json(const CouplingMap& map) {
  nlohmann::json j;
  j["n"] = map.num_qubits();
  j["family"] = map.family() == Family::Custom && !map.label().empty()
                    ? map.label()
                    : std::string(to_string(map.family()));
  j["dims"] = std::vector<std::size_t>(map.dims().begin(), map.dims().end());
  auto edges = nlohmann::json::array();
  for (const Edge& e : map.edges()) edges.push_back({e.u, e.v});
  j["edges"] = std::move(edges);
  if (map.coloring()) j["coloring"] = *map.coloring();
  return j.dump();
}

namespace {

std::vector<Edge> parse_edges(const nlohmann::json& arr) {
  std::vector<Edge> edges;
  for (const auto& e : arr) {
    if (!e.is_array() || e.size() != 2) throw Error(ErrorCode::InvalidInput, "edge must be [u, v]");
    edges.emplace_back(e[0].get<Qubit>(), e[1].get<Qubit>());
  }
  return edges;
}

}  // namespace

CouplingMap coupling_map_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
    const std::size_t n = j.at("n").get<std::size_t>();
    const std::string fam = j.value("family", std::string("custom"));
    std::vector<std::size_t> dims = j.value("dims", std::vector<std::size_t>{});
    std::vector<Edge> edges = parse_edges(j.at("edges"));
    const Family family = family_from_string(fam);
    std::string label = fam == CouplingMap::kUnrolledHeavyHex ? fam : std::string();
    CouplingMap map(n, std::move(edges), family, dims, label);
    // Named families must match the canonical numbering exactly.
    if (family != Family::Custom || !label.empty()) {
      const CouplingMap canonical = family == Family::Custom
                                        ? CouplingMap::unrolled_heavy_hex(dims.at(0))
                                        : build_coupling_map(family, dims);
      std::set<Edge> a(map.edges().begin(), map.edges().end());
      std::set<Edge> b(canonical.edges().begin(), canonical.edges().end());
      if (canonical.num_qubits() != n || a != b) {
        throw Error(ErrorCode::InvalidInput, "edges do not match the canonical " + fam + " layout");
      }
      map = family == Family::Custom ? canonical : build_coupling_map(family, dims);
    }
    if (j.contains("coloring")) {
      if (family != Family::Custom || !label.empty()) {
        // Canonical order may differ from the file order; remap by edge.
        std::vector<std::size_t> colors(map.edges().size());
        const auto file_edges = parse_edges(j.at("edges"));
        const auto file_colors = j.at("coloring").get<std::vector<std::size_t>>();
        if (file_colors.size() != file_edges.size()) {
          throw Error(ErrorCode::LengthMismatch, "coloring must assign one color per edge");
        }
        for (std::size_t k = 0; k < file_edges.size(); ++k) {
          colors[*map.edge_index(file_edges[k].u, file_edges[k].v)] = file_colors[k];
        }
        map = map.with_coloring(std::move(colors));
      } else {
        map = map.with_coloring(j.at("coloring").get<std::vector<std::size_t>>());
      }
    }
    return map;
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::InvalidInput, std::string("coupling map JSON: ") + ex.what());
  } catch (const std::out_of_range& ex) {
    throw Error(ErrorCode::InvalidInput, std::string("coupling map JSON: ") + ex.what());
  }
}

std::string to_edge_list(const CouplingMap& map) {
  std::ostringstream os;
  for (const Edge& e : map.edges()) os << e.u << ' ' << e.v << '\n';
  return os.str();
}

CouplingMap coupling_map_from_edge_list(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::string line;
  std::vector<Edge> edges;
  Qubit max_q = 0;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    long long a = 0;
    long long b = 0;
    if (!(ls >> a)) continue;
    std::string rest;
    if (!(ls >> b) || a < 0 || b < 0 || (ls >> rest)) {
      throw Error(ErrorCode::InvalidInput, "edge list line " + std::to_string(lineno) + ": expected 'u v'");
    }
    edges.emplace_back(static_cast<Qubit>(a), static_cast<Qubit>(b));
    max_q = std::max({max_q, static_cast<Qubit>(a), static_cast<Qubit>(b)});
  }
  if (edges.empty()) throw Error(ErrorCode::InvalidInput, "edge list is empty");
  return CouplingMap(static_cast<std::size_t>(max_q) + 1, std::move(edges));
}

CouplingMap read_coupling_map(const std::string& path) {
  const std::string text = read_file(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return coupling_map_from_json(text);
  return coupling_map_from_edge_list(text);
}

}  // namespace swaproute
