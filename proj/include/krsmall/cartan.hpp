#ifndef KRSMALL_CARTAN_HPP
#define KRSMALL_CARTAN_HPP

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace krsmall {

/// Dynkin data of a finite type A-G or a simply-laced affine type.
///
/// Nodes carry labels: 1..n for finite types, 0..n for affine types. All
/// public accessors take labels; `index_of` converts to the dense internal
/// index used for per-node tables.
///
/// Node numbering:
///
///   A_n    1 - 2 - ... - n
///   B_n    1 - ... - (n-1) => n           (n short, r = 2,..,2,1)
///   C_n    1 - ... - (n-1) <= n           (n long,  r = 1,..,1,2)
///   D_n    1 - ... - (n-2) - {n-1, n}
///   E_6    1 - 2 - 3 - 4 - 5, 6 on 3
///   E_7    1 - 2 - 3 - 4 - 5 - 6, 7 on 4
///   E_8    1 - 2 - 3 - 4 - 5 - 6 - 7, 8 on 5
///   F_4    1 - 2 => 3 - 4                 (r = 2,2,1,1)
///   G_2    1 => 2                         (r = 3,1)
///   A_n~   cycle 0 - 1 - ... - n - 0
///   D_n~   {0, 1} - 2 - ... - (n-2) - {n-1, n}
///   E_6~   E_6 plus 0 on 6
///   E_7~   E_7 plus 0 on 6
///   E_8~   E_8 plus 0 on 1
///
/// Entries follow C_{i,j} = alpha_j(alpha_i^vee), so the row of a short node
/// carries the -2 or -3 next to a long neighbour.
class CartanData {
public:
  /// Builds a diagram from its series letter and rank. Throws
  /// std::invalid_argument for invalid combinations.
  static CartanData build(char series, int rank, bool affine = false);

  /// Parses "A3", "D4", "E6", "A2~" (affine), case-insensitive letter.
  static CartanData parse(std::string_view text);

  const std::string& name() const { return name_; }
  char series() const { return series_; }
  int rank() const { return rank_; }
  bool affine() const { return affine_; }
  int size() const { return static_cast<int>(labels_.size()); }

  std::span<const int> nodes() const { return labels_; }
  bool has_node(int label) const;
  int index_of(int label) const;
  int label_of(int index) const { return labels_.at(index); }

  int entry(int i, int j) const;
  int symmetrizer(int i) const;
  int max_symmetrizer() const;
  bool simply_laced() const;

  /// Labels j != i with C_{i,j} < 0, ascending.
  const std::vector<int>& neighbors(int i) const;

  std::vector<std::vector<int>> matrix() const;

private:
  CartanData() = default;
  void finish();

  std::string name_;
  char series_ = 'A';
  int rank_ = 0;
  bool affine_ = false;
  std::vector<int> labels_;
  std::vector<int> index_;  // label -> index, -1 when absent
  std::vector<int> cartan_; // dense size() x size()
  std::vector<int> sym_;
  std::vector<std::vector<int>> neighbors_;
};

enum class NodeKind { Extremal, Special, Neither };

const char* to_string(NodeKind kind);

struct NodeClassification {
  std::vector<int> labels;
  std::vector<NodeKind> kind;
  /// nullopt encodes d_i = +infinity.
  std::vector<std::optional<int>> d;
  std::vector<int> degree;

  NodeKind kind_of(int label) const;
  std::optional<int> d_of(int label) const;
  int degree_of(int label) const;

private:
  std::size_t at(int label) const;
};

/// Sequence-length distance: d(i,i) = 1, adjacent nodes are at distance 2.
/// nullopt when j is unreachable from i.
std::optional<int> graph_distance(const CartanData& c, int i, int j);

NodeClassification classify_nodes(const CartanData& c);

} // namespace krsmall

#endif
