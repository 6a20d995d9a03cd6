#ifndef KRSMALL_MONOMIAL_HPP
#define KRSMALL_MONOMIAL_HPP

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "krsmall/cartan.hpp"

namespace krsmall {

/// One variable Y_{node, q^power} raised to `exponent`.
struct YFactor {
  int node = 0;
  int power = 0;
  int exponent = 0;

  friend bool operator==(const YFactor&, const YFactor&) = default;
  friend auto operator<=>(const YFactor&, const YFactor&) = default;
};

/// Laurent monomial in the variables Y_{i,q^r}, stored sparse and sorted
/// node-major then by power. Zero exponents are never stored, so equal
/// monomials have equal representations and the ordering below is the
/// canonical encoding order used for every tie-break in the library.
class Monomial {
public:
  Monomial() = default;

  static Monomial y(int node, int power, int exponent = 1);
  /// Merges repeated keys and drops zeros; input order is irrelevant.
  static Monomial from_factors(std::vector<YFactor> factors);

  /// Compact notation: `1_3 1_5 2_0^-1`, `1` for the identity.
  static Monomial parse(std::string_view text);
  std::string str() const;

  std::span<const YFactor> factors() const { return factors_; }
  std::size_t size() const { return factors_.size(); }
  bool is_identity() const { return factors_.empty(); }
  int exponent(int node, int power) const;

  std::optional<int> max_power() const;
  std::optional<int> min_power() const;

  /// Keeps only the variables of `node`.
  Monomial restricted_to(int node) const;

  Monomial inverse() const;
  Monomial pow(int e) const;
  Monomial& operator*=(const Monomial& other);
  Monomial& operator/=(const Monomial& other);
  friend Monomial operator*(Monomial a, const Monomial& b) { return a *= b; }
  friend Monomial operator/(Monomial a, const Monomial& b) { return a /= b; }

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend auto operator<=>(const Monomial& a, const Monomial& b) { return a.factors_ <=> b.factors_; }

  std::size_t hash() const;

private:
  void combine(const Monomial& other, int sign);
  std::vector<YFactor> factors_;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

/// Exponent table v_{i,r} >= 0 encoding prod A_{i,q^r}^{-v_{i,r}}.
class AWitness {
public:
  AWitness() = default;

  void add(int node, int power, int count);
  int get(int node, int power) const;
  /// Entries as YFactor triples with `exponent` holding v_{i,r}.
  std::span<const YFactor> entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  /// v = sum of all entries.
  long total() const;
  /// v_i for one node.
  long node_total(int node) const;

  /// source * prod A^{-v}.
  Monomial apply(const CartanData& c, const Monomial& source) const;
  AWitness& operator+=(const AWitness& other);

  std::string str() const;

  friend bool operator==(const AWitness&, const AWitness&) = default;

private:
  std::vector<YFactor> entries_;
};

/// A_{i,q^r}: the monomial analogue of the simple root alpha_i.
Monomial a_monomial(const CartanData& c, int i, int r);

/// X_{k,q^r}^{(i)} = prod_{k'=1..k} Y_{i, q^{r + r_i (k - 2k' + 1)}}.
Monomial kr_highest(const CartanData& c, int i, int k, int r);

struct ExponentProfile {
  std::vector<YFactor> table;      // u_{i,r}
  std::map<int, long> node_sums;   // u_i, nonzero only when present
  /// omega(m) as Lambda-coefficients, aligned with c.nodes().
  std::vector<long> weight;
};

ExponentProfile exponent_profile(const CartanData& c, const Monomial& m);

/// u_{j,r}(m) >= 0 for every j in `nodes` and every r.
bool is_dominant(const Monomial& m, std::span<const int> nodes);
/// All nodes.
bool is_dominant(const Monomial& m);

/// At the maximal power L carrying a nonzero exponent, every u_{j,L} <= 0.
/// Throws std::invalid_argument for the identity.
bool is_right_negative(const Monomial& m);

/// The v-table with target = source * prod A^{-v}, v >= 0, when it exists.
std::optional<AWitness> divide_as_a_product(const CartanData& c, const Monomial& target, const Monomial& source);

/// max |u_{i,r}| <= 1.
bool is_thin_monomial(const Monomial& m);

} // namespace krsmall

#endif
