#include "krsmall/monomial.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace krsmall {

Monomial Monomial::y(int node, int power, int exponent) {
  Monomial m;
  if (exponent != 0)
    m.factors_.push_back({node, power, exponent});
  return m;
}

Monomial Monomial::from_factors(std::vector<YFactor> factors) {
  std::sort(factors.begin(), factors.end(), [](const YFactor& a, const YFactor& b) {
    return a.node != b.node ? a.node < b.node : a.power < b.power;
  });
  Monomial m;
  for (const auto& f : factors) {
    if (!m.factors_.empty() && m.factors_.back().node == f.node && m.factors_.back().power == f.power)
      m.factors_.back().exponent += f.exponent;
    else
      m.factors_.push_back(f);
    if (m.factors_.back().exponent == 0)
      m.factors_.pop_back();
  }
  return m;
}

namespace {

[[noreturn]] void bad_text(std::string_view text, const std::string& why) {
  throw std::invalid_argument("cannot parse monomial '" + std::string(text) + "': " + why);
}

int parse_int(std::string_view s, std::string_view whole) {
  if (!s.empty() && s.front() == '+')
    s.remove_prefix(1);
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    bad_text(whole, "expected an integer, got '" + std::string(s) + "'");
  return value;
}

} // namespace

Monomial Monomial::parse(std::string_view text) {
  std::vector<YFactor> factors;
  std::size_t pos = 0;
  bool saw_identity = false;
  while (pos < text.size()) {
    while (pos < text.size() && (std::isspace(static_cast<unsigned char>(text[pos])) || text[pos] == '*'))
      ++pos;
    if (pos >= text.size())
      break;
    std::size_t end = pos;
    while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end])) && text[end] != '*')
      ++end;
    std::string_view token = text.substr(pos, end - pos);
    pos = end;
    if (token == "1") {
      saw_identity = true;
      continue;
    }
    const auto underscore = token.find('_');
    if (underscore == std::string_view::npos)
      bad_text(text, "token '" + std::string(token) + "' lacks '_'");
    std::string_view node_part = token.substr(0, underscore);
    std::string_view rest = token.substr(underscore + 1);
    std::string_view power_part = rest;
    std::optional<std::string_view> exp_part;
    const auto caret_it = std::find(rest.begin(), rest.end(), '^');
    if (caret_it != rest.end()) {
      const auto caret = static_cast<std::size_t>(caret_it - rest.begin());
      power_part = rest.substr(0, caret);
      exp_part = rest.substr(caret + 1);
      if (exp_part->size() >= 2 && exp_part->front() == '{' && exp_part->back() == '}')
        exp_part = exp_part->substr(1, exp_part->size() - 2);
    }
    if (power_part.size() >= 2 && power_part.front() == '{' && power_part.back() == '}')
      power_part = power_part.substr(1, power_part.size() - 2);
    const int node = parse_int(node_part, text);
    const int power = parse_int(power_part, text);
    const int exponent = exp_part ? parse_int(*exp_part, text) : 1;
    if (node < 0)
      bad_text(text, "negative node");
    factors.push_back({node, power, exponent});
  }
  if (factors.empty() && !saw_identity)
    bad_text(text, "empty input");
  return from_factors(std::move(factors));
}

std::string Monomial::str() const {
  if (factors_.empty())
    return "1";
  std::string out;
  for (const auto& f : factors_) {
    if (!out.empty())
      out += ' ';
    out += std::to_string(f.node) + "_" + std::to_string(f.power);
    if (f.exponent != 1)
      out += "^" + std::to_string(f.exponent);
  }
  return out;
}

int Monomial::exponent(int node, int power) const {
  auto it = std::lower_bound(factors_.begin(), factors_.end(), YFactor{node, power, 0},
                             [](const YFactor& a, const YFactor& b) {
                               return a.node != b.node ? a.node < b.node : a.power < b.power;
                             });
  if (it != factors_.end() && it->node == node && it->power == power)
    return it->exponent;
  return 0;
}

std::optional<int> Monomial::max_power() const {
  if (factors_.empty())
    return std::nullopt;
  int best = factors_.front().power;
  for (const auto& f : factors_)
    best = std::max(best, f.power);
  return best;
}

std::optional<int> Monomial::min_power() const {
  if (factors_.empty())
    return std::nullopt;
  int best = factors_.front().power;
  for (const auto& f : factors_)
    best = std::min(best, f.power);
  return best;
}

Monomial Monomial::restricted_to(int node) const {
  Monomial m;
  for (const auto& f : factors_)
    if (f.node == node)
      m.factors_.push_back(f);
  return m;
}

Monomial Monomial::inverse() const {
  Monomial m = *this;
  for (auto& f : m.factors_)
    f.exponent = -f.exponent;
  return m;
}

Monomial Monomial::pow(int e) const {
  if (e == 0)
    return {};
  Monomial m = *this;
  for (auto& f : m.factors_)
    f.exponent *= e;
  return m;
}

void Monomial::combine(const Monomial& other, int sign) {
  std::vector<YFactor> out;
  out.reserve(factors_.size() + other.factors_.size());
  auto a = factors_.begin();
  auto b = other.factors_.begin();
  while (a != factors_.end() || b != other.factors_.end()) {
    if (b == other.factors_.end() || (a != factors_.end() && (a->node < b->node || (a->node == b->node && a->power < b->power)))) {
      out.push_back(*a++);
    } else if (a == factors_.end() || b->node < a->node || (b->node == a->node && b->power < a->power)) {
      out.push_back({b->node, b->power, sign * b->exponent});
      ++b;
    } else {
      const int e = a->exponent + sign * b->exponent;
      if (e != 0)
        out.push_back({a->node, a->power, e});
      ++a;
      ++b;
    }
  }
  factors_ = std::move(out);
}

Monomial& Monomial::operator*=(const Monomial& other) {
  combine(other, 1);
  return *this;
}

Monomial& Monomial::operator/=(const Monomial& other) {
  combine(other, -1);
  return *this;
}

std::size_t Monomial::hash() const {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (const auto& f : factors_) {
    for (int v : {f.node, f.power, f.exponent}) {
      h ^= static_cast<std::size_t>(static_cast<unsigned>(v)) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
  }
  return h;
}

void AWitness::add(int node, int power, int count) {
  if (count == 0)
    return;
  auto it = std::lower_bound(entries_.begin(), entries_.end(), YFactor{node, power, 0},
                             [](const YFactor& a, const YFactor& b) {
                               return a.node != b.node ? a.node < b.node : a.power < b.power;
                             });
  if (it != entries_.end() && it->node == node && it->power == power) {
    it->exponent += count;
    if (it->exponent == 0)
      entries_.erase(it);
  } else {
    entries_.insert(it, {node, power, count});
  }
}

int AWitness::get(int node, int power) const {
  for (const auto& e : entries_)
    if (e.node == node && e.power == power)
      return e.exponent;
  return 0;
}

long AWitness::total() const {
  long t = 0;
  for (const auto& e : entries_)
    t += e.exponent;
  return t;
}

long AWitness::node_total(int node) const {
  long t = 0;
  for (const auto& e : entries_)
    if (e.node == node)
      t += e.exponent;
  return t;
}

Monomial AWitness::apply(const CartanData& c, const Monomial& source) const {
  Monomial out = source;
  for (const auto& e : entries_)
    out /= a_monomial(c, e.node, e.power).pow(e.exponent);
  return out;
}

AWitness& AWitness::operator+=(const AWitness& other) {
  for (const auto& e : other.entries_)
    add(e.node, e.power, e.exponent);
  return *this;
}

std::string AWitness::str() const {
  if (entries_.empty())
    return "{}";
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& e : entries_) {
    os << (first ? "" : ", ") << "(" << e.node << "," << e.power << "):" << e.exponent;
    first = false;
  }
  os << '}';
  return os.str();
}

Monomial a_monomial(const CartanData& c, int i, int r) {
  const int ri = c.symmetrizer(i);
  std::vector<YFactor> f{{i, r - ri, 1}, {i, r + ri, 1}};
  for (int j : c.neighbors(i)) {
    switch (c.entry(j, i)) {
    case -1:
      f.push_back({j, r, -1});
      break;
    case -2:
      f.push_back({j, r - 1, -1});
      f.push_back({j, r + 1, -1});
      break;
    case -3:
      f.push_back({j, r - 2, -1});
      f.push_back({j, r, -1});
      f.push_back({j, r + 2, -1});
      break;
    default:
      throw std::logic_error("unexpected Cartan entry in " + c.name());
    }
  }
  return Monomial::from_factors(std::move(f));
}

Monomial kr_highest(const CartanData& c, int i, int k, int r) {
  if (k < 1)
    throw std::invalid_argument("KR level must be positive");
  const int ri = c.symmetrizer(i);
  std::vector<YFactor> f;
  for (int kk = 1; kk <= k; ++kk)
    f.push_back({i, r + ri * (k - 2 * kk + 1), 1});
  return Monomial::from_factors(std::move(f));
}

ExponentProfile exponent_profile(const CartanData& c, const Monomial& m) {
  ExponentProfile p;
  p.table.assign(m.factors().begin(), m.factors().end());
  for (const auto& f : m.factors())
    p.node_sums[f.node] += f.exponent;
  for (auto it = p.node_sums.begin(); it != p.node_sums.end();)
    it = it->second == 0 ? p.node_sums.erase(it) : std::next(it);
  for (int label : c.nodes()) {
    auto it = p.node_sums.find(label);
    p.weight.push_back(it == p.node_sums.end() ? 0 : it->second);
  }
  return p;
}

bool is_dominant(const Monomial& m, std::span<const int> nodes) {
  for (const auto& f : m.factors())
    if (f.exponent < 0 && std::find(nodes.begin(), nodes.end(), f.node) != nodes.end())
      return false;
  return true;
}

bool is_dominant(const Monomial& m) {
  return std::all_of(m.factors().begin(), m.factors().end(), [](const YFactor& f) { return f.exponent >= 0; });
}

bool is_right_negative(const Monomial& m) {
  if (m.is_identity())
    throw std::invalid_argument("right-negativity is undefined for the identity monomial");
  const int top = *m.max_power();
  return std::all_of(m.factors().begin(), m.factors().end(),
                     [top](const YFactor& f) { return f.power != top || f.exponent <= 0; });
}

std::optional<AWitness> divide_as_a_product(const CartanData& c, const Monomial& target, const Monomial& source) {
  // rest = source / target must equal prod A^{v}. The top power of A_{j,s} is
  // s + r_j and only Y_j sits there, so the top of `rest` fixes v there.
  Monomial rest = source / target;
  AWitness v;
  if (rest.is_identity())
    return v;
  const int floor = *rest.min_power();
  while (!rest.is_identity()) {
    const int top = *rest.max_power();
    std::vector<YFactor> at_top;
    for (const auto& f : rest.factors())
      if (f.power == top)
        at_top.push_back(f);
    for (const auto& f : at_top) {
      if (f.exponent < 0 || !c.has_node(f.node))
        return std::nullopt;
      const int rj = c.symmetrizer(f.node);
      const int s = top - rj;
      if (s - rj < floor)
        return std::nullopt;
      v.add(f.node, s, f.exponent);
      rest /= a_monomial(c, f.node, s).pow(f.exponent);
    }
  }
  return v;
}

bool is_thin_monomial(const Monomial& m) {
  return std::all_of(m.factors().begin(), m.factors().end(),
                     [](const YFactor& f) { return std::abs(f.exponent) <= 1; });
}

} // namespace krsmall
