#include "krsmall/cartan.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <deque>
#include <stdexcept>

namespace krsmall {

namespace {

[[noreturn]] void reject(const std::string& what) {
  throw std::invalid_argument("invalid diagram: " + what);
}

struct Shape {
  std::vector<int> labels;
  std::vector<int> lengths; // symmetrizer per label position
  std::vector<std::pair<int, int>> edges;
};

void chain(Shape& s, int from, int to) {
  for (int a = from; a < to; ++a)
    s.edges.emplace_back(a, a + 1);
}

Shape finite_shape(char series, int n) {
  Shape s;
  for (int i = 1; i <= n; ++i)
    s.labels.push_back(i);
  s.lengths.assign(n, 1);
  switch (series) {
  case 'A':
    if (n < 1)
      reject("A_n needs n >= 1");
    chain(s, 1, n);
    break;
  case 'B':
    if (n < 2)
      reject("B_n needs n >= 2");
    chain(s, 1, n);
    std::fill(s.lengths.begin(), s.lengths.end() - 1, 2);
    break;
  case 'C':
    if (n < 2)
      reject("C_n needs n >= 2");
    chain(s, 1, n);
    s.lengths.back() = 2;
    break;
  case 'D':
    if (n < 4)
      reject("D_n needs n >= 4");
    chain(s, 1, n - 1);
    s.edges.emplace_back(n - 2, n);
    break;
  case 'E':
    if (n < 6 || n > 8)
      reject("E_n needs 6 <= n <= 8");
    chain(s, 1, n - 1);
    s.edges.emplace_back(n == 6 ? 3 : (n == 7 ? 4 : 5), n);
    break;
  case 'F':
    if (n != 4)
      reject("F_n needs n = 4");
    chain(s, 1, 4);
    s.lengths = {2, 2, 1, 1};
    break;
  case 'G':
    if (n != 2)
      reject("G_n needs n = 2");
    chain(s, 1, 2);
    s.lengths = {3, 1};
    break;
  default:
    reject(std::string("unknown series '") + series + "'");
  }
  return s;
}

Shape affine_shape(char series, int n) {
  Shape s;
  switch (series) {
  case 'A':
    if (n < 2)
      reject("affine A_n needs n >= 2");
    for (int i = 0; i <= n; ++i)
      s.labels.push_back(i);
    chain(s, 0, n);
    s.edges.emplace_back(0, n);
    break;
  case 'D':
    if (n < 4)
      reject("affine D_n needs n >= 4");
    for (int i = 0; i <= n; ++i)
      s.labels.push_back(i);
    s.edges.emplace_back(0, 2);
    chain(s, 1, n - 1);
    s.edges.emplace_back(n - 2, n);
    break;
  case 'E': {
    s = finite_shape('E', n);
    s.labels.insert(s.labels.begin(), 0);
    s.edges.emplace_back(0, n == 8 ? 1 : 6);
    break;
  }
  default:
    reject(std::string("affine series '") + series + "' is not simply-laced or unsupported");
  }
  s.lengths.assign(s.labels.size(), 1);
  return s;
}

} // namespace

CartanData CartanData::build(char series, int rank, bool affine) {
  series = static_cast<char>(std::toupper(static_cast<unsigned char>(series)));
  Shape shape = affine ? affine_shape(series, rank) : finite_shape(series, rank);

  CartanData c;
  c.series_ = series;
  c.rank_ = rank;
  c.affine_ = affine;
  c.name_ = std::string(1, series) + std::to_string(rank) + (affine ? "~" : "");
  c.labels_ = shape.labels;
  const int n = c.size();
  const int max_label = *std::max_element(c.labels_.begin(), c.labels_.end());
  c.index_.assign(max_label + 1, -1);
  for (int k = 0; k < n; ++k)
    c.index_[c.labels_[k]] = k;
  c.sym_ = shape.lengths;
  c.cartan_.assign(n * n, 0);
  for (int k = 0; k < n; ++k)
    c.cartan_[k * n + k] = 2;
  for (auto [a, b] : shape.edges) {
    const int ia = c.index_of(a);
    const int ib = c.index_of(b);
    const int ra = c.sym_[ia];
    const int rb = c.sym_[ib];
    c.cartan_[ia * n + ib] = -std::max(ra, rb) / ra;
    c.cartan_[ib * n + ia] = -std::max(ra, rb) / rb;
  }
  c.finish();
  return c;
}

CartanData CartanData::parse(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  if (s.size() < 2)
    reject("'" + std::string(text) + "'");
  bool affine = false;
  if (s.back() == '~') {
    affine = true;
    s.remove_suffix(1);
  } else if (s.size() > 3 && s.substr(s.size() - 3) == "(1)") {
    affine = true;
    s.remove_suffix(3);
  }
  const char series = s.front();
  s.remove_prefix(1);
  if (!s.empty() && s.front() == '_')
    s.remove_prefix(1);
  int rank = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), rank);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isalpha(static_cast<unsigned char>(series)))
    reject("'" + std::string(text) + "'");
  return build(series, rank, affine);
}

void CartanData::finish() {
  const int n = size();
  neighbors_.assign(n, {});
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b && cartan_[a * n + b] < 0)
        neighbors_[a].push_back(labels_[b]);
}

bool CartanData::has_node(int label) const {
  return label >= 0 && label < static_cast<int>(index_.size()) && index_[label] >= 0;
}

int CartanData::index_of(int label) const {
  if (!has_node(label))
    throw std::invalid_argument("node " + std::to_string(label) + " is not in " + name_);
  return index_[label];
}

int CartanData::entry(int i, int j) const { return cartan_[index_of(i) * size() + index_of(j)]; }

int CartanData::symmetrizer(int i) const { return sym_[index_of(i)]; }

int CartanData::max_symmetrizer() const { return *std::max_element(sym_.begin(), sym_.end()); }

bool CartanData::simply_laced() const {
  return std::all_of(sym_.begin(), sym_.end(), [](int r) { return r == 1; }) &&
         std::all_of(cartan_.begin(), cartan_.end(), [](int e) { return e == 2 || e == 0 || e == -1; });
}

const std::vector<int>& CartanData::neighbors(int i) const { return neighbors_[index_of(i)]; }

std::vector<std::vector<int>> CartanData::matrix() const {
  const int n = size();
  std::vector<std::vector<int>> m(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      m[a][b] = cartan_[a * n + b];
  return m;
}

const char* to_string(NodeKind kind) {
  switch (kind) {
  case NodeKind::Extremal:
    return "extremal";
  case NodeKind::Special:
    return "special";
  case NodeKind::Neither:
    break;
  }
  return "neither";
}

std::size_t NodeClassification::at(int label) const {
  auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end())
    throw std::invalid_argument("node " + std::to_string(label) + " is not classified");
  return static_cast<std::size_t>(it - labels.begin());
}

NodeKind NodeClassification::kind_of(int label) const { return kind[at(label)]; }
std::optional<int> NodeClassification::d_of(int label) const { return d[at(label)]; }
int NodeClassification::degree_of(int label) const { return degree[at(label)]; }

namespace {

// Edge counts from `from` to every node (BFS), -1 when unreachable.
std::vector<int> bfs_edges(const CartanData& c, int from) {
  std::vector<int> dist(c.size(), -1);
  std::deque<int> queue{c.index_of(from)};
  dist[queue.front()] = 0;
  while (!queue.empty()) {
    const int a = queue.front();
    queue.pop_front();
    for (int nb : c.neighbors(c.label_of(a))) {
      const int b = c.index_of(nb);
      if (dist[b] < 0) {
        dist[b] = dist[a] + 1;
        queue.push_back(b);
      }
    }
  }
  return dist;
}

} // namespace

std::optional<int> graph_distance(const CartanData& c, int i, int j) {
  const int edges = bfs_edges(c, i)[c.index_of(j)];
  if (edges < 0)
    return std::nullopt;
  return edges + 1;
}

NodeClassification classify_nodes(const CartanData& c) {
  NodeClassification out;
  const auto nodes = c.nodes();
  out.labels.assign(nodes.begin(), nodes.end());
  for (int label : nodes) {
    const int deg = static_cast<int>(c.neighbors(label).size());
    out.degree.push_back(deg);
    out.kind.push_back(deg == 1 ? NodeKind::Extremal : (deg >= 3 ? NodeKind::Special : NodeKind::Neither));
  }
  // A shortest path is a chain of distinct nodes, so BFS realises the
  // minimum over injective chains.
  for (int label : nodes) {
    const auto dist = bfs_edges(c, label);
    std::optional<int> best;
    for (int k = 0; k < c.size(); ++k) {
      if (out.kind[k] != NodeKind::Special || dist[k] < 0)
        continue;
      if (!best || dist[k] + 1 < *best)
        best = dist[k] + 1;
    }
    out.d.push_back(best);
  }
  return out;
}

} // namespace krsmall
