#include "krsmall/sl2core.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace krsmall {

Sl2Monomial Sl2Monomial::y(int power, int exponent) {
  Sl2Monomial m;
  if (exponent != 0)
    m.entries_.push_back({power, exponent});
  return m;
}

Sl2Monomial Sl2Monomial::from_entries(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.power < b.power; });
  Sl2Monomial m;
  for (const auto& e : entries) {
    if (!m.entries_.empty() && m.entries_.back().power == e.power)
      m.entries_.back().exponent += e.exponent;
    else
      m.entries_.push_back(e);
    if (m.entries_.back().exponent == 0)
      m.entries_.pop_back();
  }
  return m;
}

Sl2Monomial Sl2Monomial::a(int s) { return from_entries({{s - 1, 1}, {s + 1, 1}}); }

int Sl2Monomial::exponent(int power) const {
  for (const auto& e : entries_)
    if (e.power == power)
      return e.exponent;
  return 0;
}

bool Sl2Monomial::is_dominant() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Entry& e) { return e.exponent >= 0; });
}

std::optional<int> Sl2Monomial::max_power() const {
  if (entries_.empty())
    return std::nullopt;
  return entries_.back().power;
}

std::optional<int> Sl2Monomial::min_power() const {
  if (entries_.empty())
    return std::nullopt;
  return entries_.front().power;
}

Sl2Monomial Sl2Monomial::shifted(int by) const {
  Sl2Monomial m = *this;
  for (auto& e : m.entries_)
    e.power += by;
  return m;
}

Sl2Monomial Sl2Monomial::inverse() const { return pow(-1); }

Sl2Monomial Sl2Monomial::pow(int e) const {
  if (e == 0)
    return {};
  Sl2Monomial m = *this;
  for (auto& x : m.entries_)
    x.exponent *= e;
  return m;
}

Sl2Monomial& Sl2Monomial::operator*=(const Sl2Monomial& other) {
  std::vector<Entry> all = entries_;
  all.insert(all.end(), other.entries_.begin(), other.entries_.end());
  *this = from_entries(std::move(all));
  return *this;
}

Sl2Monomial& Sl2Monomial::operator/=(const Sl2Monomial& other) { return *this *= other.inverse(); }

std::string Sl2Monomial::str() const {
  if (entries_.empty())
    return "1";
  std::string out;
  for (const auto& e : entries_) {
    if (!out.empty())
      out += ' ';
    out += "Y_" + std::to_string(e.power);
    if (e.exponent != 1)
      out += "^" + std::to_string(e.exponent);
  }
  return out;
}

Sl2Monomial sl2_kr_highest(int k, int r) {
  if (k < 1)
    throw std::invalid_argument("KR level must be positive");
  std::vector<Sl2Monomial::Entry> e;
  for (int j = 0; j < k; ++j)
    e.push_back({r - k + 1 + 2 * j, 1});
  return Sl2Monomial::from_entries(std::move(e));
}

std::optional<std::pair<int, int>> as_kr_string(const Sl2Monomial& m) {
  const auto e = m.entries();
  if (e.empty())
    return std::nullopt;
  for (std::size_t j = 0; j < e.size(); ++j) {
    if (e[j].exponent != 1)
      return std::nullopt;
    if (j > 0 && e[j].power - e[j - 1].power != 2)
      return std::nullopt;
  }
  const int k = static_cast<int>(e.size());
  return std::pair{k, e.front().power + k - 1};
}

Sl2Character kr_qchar_sl2(int k, int r) {
  Sl2Monomial current = sl2_kr_highest(k, r);
  Sl2Character chi(current);
  for (int j = 0; j < k; ++j) {
    current /= Sl2Monomial::a(r + k - 2 * j);
    chi.add(current);
  }
  return chi;
}

Sl2Character standard_qchar_sl2(int k, int r) {
  const Sl2Monomial x = sl2_kr_highest(k, r);
  Sl2Character chi;
  chi.set_highest(x);
  for (unsigned long subset = 0; subset < (1UL << k); ++subset) {
    Sl2Monomial m = x;
    for (int j = 0; j < k; ++j)
      if (subset & (1UL << j))
        m /= Sl2Monomial::a(r + k - 2 * j);
    chi.add(m);
  }
  return chi;
}

namespace {

Sl2Monomial max_merge(const Sl2Monomial& a, const Sl2Monomial& b) {
  std::map<int, int> best;
  for (const auto& e : a.entries())
    best[e.power] = std::max(best[e.power], e.exponent);
  for (const auto& e : b.entries())
    best[e.power] = std::max(best[e.power], e.exponent);
  std::vector<Sl2Monomial::Entry> out;
  for (auto [p, x] : best)
    out.push_back({p, x});
  return Sl2Monomial::from_entries(std::move(out));
}

} // namespace

bool in_special_position(int k1, int r1, int k2, int r2) {
  const Sl2Monomial m1 = sl2_kr_highest(k1, r1);
  const Sl2Monomial m2 = sl2_kr_highest(k2, r2);
  const Sl2Monomial m3 = max_merge(m1, m2);
  return as_kr_string(m3).has_value() && m3 != m1 && m3 != m2;
}

Sl2Monomial NormalWriting::product() const {
  Sl2Monomial m;
  for (const auto& f : factors)
    m *= sl2_kr_highest(f.k, f.r);
  return m;
}

NormalWriting normal_writing(const Sl2Monomial& m) {
  if (!m.is_dominant())
    throw std::invalid_argument("normal writing needs a dominant monomial, got " + m.str());
  std::map<int, int> rest;
  for (const auto& e : m.entries())
    rest[e.power] = e.exponent;

  NormalWriting w;
  while (!rest.empty()) {
    const int top = rest.rbegin()->first;
    int k = 0;
    for (int p = top; rest.count(p); p -= 2) {
      ++k;
      if (--rest[p] == 0)
        rest.erase(p);
    }
    w.factors.push_back({k, top - k + 1});
  }

  // Replace any special-position pair by its union and intersection strings
  // until none is left; the product is unchanged at every step.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t a = 0; a < w.factors.size() && !changed; ++a) {
      for (std::size_t b = a + 1; b < w.factors.size() && !changed; ++b) {
        const auto fa = w.factors[a];
        const auto fb = w.factors[b];
        if (!in_special_position(fa.k, fa.r, fb.k, fb.r))
          continue;
        const Sl2Monomial xa = sl2_kr_highest(fa.k, fa.r);
        const Sl2Monomial xb = sl2_kr_highest(fb.k, fb.r);
        const Sl2Monomial uni = max_merge(xa, xb);
        const Sl2Monomial inter = xa * xb / uni;
        w.factors.erase(w.factors.begin() + static_cast<long>(b));
        w.factors.erase(w.factors.begin() + static_cast<long>(a));
        const auto u = as_kr_string(uni);
        w.factors.push_back({u->first, u->second});
        if (!inter.is_identity()) {
          const auto s = as_kr_string(inter);
          if (!s)
            throw std::logic_error("intersection of strings is not a string: " + inter.str());
          w.factors.push_back({s->first, s->second});
        }
        changed = true;
      }
    }
  }
  std::sort(w.factors.begin(), w.factors.end());
  return w;
}

Sl2Character simple_qchar_sl2(const Sl2Monomial& m) {
  const NormalWriting w = normal_writing(m);
  Sl2Character chi(Sl2Monomial{});
  for (const auto& f : w.factors)
    chi = chi * kr_qchar_sl2(f.k, f.r);
  chi.set_highest(m);
  return chi;
}

namespace {

struct Sl2Hash {
  std::size_t operator()(const Sl2Monomial& m) const {
    std::size_t h = 1469598103934665603ULL;
    for (const auto& e : m.entries())
      h = (h ^ (static_cast<std::size_t>(static_cast<unsigned>(e.power)) * 31 + static_cast<unsigned>(e.exponent))) *
          1099511628211ULL;
    return h;
  }
};

std::mutex cache_mutex;
std::unordered_map<Sl2Monomial, std::shared_ptr<const Sl2Character>, Sl2Hash> cache;

Sl2Character shift_character(const Sl2Character& chi, int by) {
  Sl2Character out;
  for (const auto& [mono, n] : chi.terms())
    out.add(mono.shifted(by), n);
  if (chi.highest())
    out.set_highest(chi.highest()->shifted(by));
  return out;
}

} // namespace

std::shared_ptr<const Sl2Character> simple_qchar_sl2_cached(const Sl2Monomial& m) {
  if (m.is_identity())
    return std::make_shared<const Sl2Character>(Sl2Monomial{});
  const int base = *m.min_power();
  const Sl2Monomial key = m.shifted(-base);
  std::shared_ptr<const Sl2Character> normalized;
  {
    std::lock_guard lock(cache_mutex);
    if (auto it = cache.find(key); it != cache.end())
      normalized = it->second;
  }
  if (!normalized) {
    auto fresh = std::make_shared<const Sl2Character>(simple_qchar_sl2(key));
    std::lock_guard lock(cache_mutex);
    normalized = cache.emplace(key, std::move(fresh)).first->second;
  }
  if (base == 0)
    return normalized;
  return std::make_shared<const Sl2Character>(shift_character(*normalized, base));
}

std::optional<std::map<int, int>> sl2_divide(const Sl2Monomial& target, const Sl2Monomial& source) {
  Sl2Monomial rest = source / target;
  std::map<int, int> w;
  if (rest.is_identity())
    return w;
  const int floor = *rest.min_power();
  while (!rest.is_identity()) {
    const int top = *rest.max_power();
    const int e = rest.exponent(top);
    if (e < 0 || top - 2 < floor)
      return std::nullopt;
    w[top - 1] += e;
    rest /= Sl2Monomial::a(top - 1).pow(e);
  }
  return w;
}

} // namespace krsmall
