#ifndef KRSMALL_CHARACTER_HPP
#define KRSMALL_CHARACTER_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>

namespace krsmall {

/// Finite multiset of monomials with positive multiplicities, iterated in
/// canonical monomial order.
template <class M>
class Character {
public:
  using Terms = std::map<M, long>;

  Character() = default;
  explicit Character(M highest) : highest_(highest) { terms_.emplace(std::move(highest), 1); }

  void add(const M& m, long multiplicity = 1) {
    if (multiplicity == 0)
      return;
    auto& slot = terms_[m];
    slot += multiplicity;
    if (slot == 0)
      terms_.erase(m);
  }

  long multiplicity(const M& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? 0 : it->second;
  }
  bool contains(const M& m) const { return terms_.count(m) != 0; }

  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  long dimension() const {
    long d = 0;
    for (const auto& [m, n] : terms_)
      d += n;
    return d;
  }

  const std::optional<M>& highest() const { return highest_; }
  void set_highest(std::optional<M> h) { highest_ = std::move(h); }

  bool all_multiplicities_one() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second == 1; });
  }

  friend Character operator*(const Character& a, const Character& b) {
    Character out;
    for (const auto& [ma, na] : a.terms_)
      for (const auto& [mb, nb] : b.terms_)
        out.add(ma * mb, na * nb);
    if (a.highest_ && b.highest_)
      out.highest_ = *a.highest_ * *b.highest_;
    return out;
  }

  friend bool operator==(const Character&, const Character&) = default;

private:
  Terms terms_;
  std::optional<M> highest_;
};

} // namespace krsmall

#endif
