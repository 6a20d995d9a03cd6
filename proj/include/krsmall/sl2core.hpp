#ifndef KRSMALL_SL2CORE_HPP
#define KRSMALL_SL2CORE_HPP

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "krsmall/character.hpp"

namespace krsmall {

/// Monomial in the single-node variables Y_{q^r}, powers in the node's own
/// q_i-lattice.
class Sl2Monomial {
public:
  struct Entry {
    int power = 0;
    int exponent = 0;
    friend bool operator==(const Entry&, const Entry&) = default;
    friend auto operator<=>(const Entry&, const Entry&) = default;
  };

  Sl2Monomial() = default;
  static Sl2Monomial y(int power, int exponent = 1);
  static Sl2Monomial from_entries(std::vector<Entry> entries);
  /// A_{q^s} = Y_{q^{s-1}} Y_{q^{s+1}}.
  static Sl2Monomial a(int s);

  std::span<const Entry> entries() const { return entries_; }
  int exponent(int power) const;
  bool is_identity() const { return entries_.empty(); }
  bool is_dominant() const;
  std::optional<int> max_power() const;
  std::optional<int> min_power() const;

  Sl2Monomial shifted(int by) const;
  Sl2Monomial inverse() const;
  Sl2Monomial pow(int e) const;
  Sl2Monomial& operator*=(const Sl2Monomial& other);
  Sl2Monomial& operator/=(const Sl2Monomial& other);
  friend Sl2Monomial operator*(Sl2Monomial a, const Sl2Monomial& b) { return a *= b; }
  friend Sl2Monomial operator/(Sl2Monomial a, const Sl2Monomial& b) { return a /= b; }

  friend bool operator==(const Sl2Monomial&, const Sl2Monomial&) = default;
  friend auto operator<=>(const Sl2Monomial& a, const Sl2Monomial& b) { return a.entries_ <=> b.entries_; }

  /// `Y_0 Y_2^-1`, `1` for the identity.
  std::string str() const;

private:
  std::vector<Entry> entries_; // sorted by power, no zero exponents
};

using Sl2Character = Character<Sl2Monomial>;

/// X_{k,q^r} = Y_{q^{r-k+1}} Y_{q^{r-k+3}} ... Y_{q^{r+k-1}}.
Sl2Monomial sl2_kr_highest(int k, int r);

/// (k, r) when m is some X_{k,q^r}.
std::optional<std::pair<int, int>> as_kr_string(const Sl2Monomial& m);

/// X (1 + A_{r+k}^{-1} (1 + A_{r+k-2}^{-1} (1 + ...))): k+1 monomials.
Sl2Character kr_qchar_sl2(int k, int r);

/// X prod_{j=0}^{k-1} (1 + A_{r+k-2j}^{-1}).
Sl2Character standard_qchar_sl2(int k, int r);

bool in_special_position(int k1, int r1, int k2, int r2);

struct KrString {
  int k = 0;
  int r = 0;
  friend bool operator==(const KrString&, const KrString&) = default;
  friend auto operator<=>(const KrString&, const KrString&) = default;
};

/// Factors sorted by (r, k).
struct NormalWriting {
  std::vector<KrString> factors;
  Sl2Monomial product() const;
};

/// Throws std::invalid_argument when m is not dominant.
NormalWriting normal_writing(const Sl2Monomial& m);

/// Product of the KR characters of the normal writing. Throws
/// std::invalid_argument when m is not dominant.
Sl2Character simple_qchar_sl2(const Sl2Monomial& m);

/// Same as simple_qchar_sl2, memoized up to a shift of powers. Thread-safe.
std::shared_ptr<const Sl2Character> simple_qchar_sl2_cached(const Sl2Monomial& m);

/// w with target = source * prod A_{q^s}^{-w_s}, w >= 0, when it exists.
std::optional<std::map<int, int>> sl2_divide(const Sl2Monomial& target, const Sl2Monomial& source);

} // namespace krsmall

#endif
