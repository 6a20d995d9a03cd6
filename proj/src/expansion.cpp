#include "krsmall/expansion.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>
#include <thread>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

#include "krsmall/sl2core.hpp"

namespace krsmall {

namespace {

bool node_dominant(const Monomial& m, int i) {
  const int nodes[] = {i};
  return is_dominant(m, nodes);
}

bool touches_node(const Monomial& m, int i) {
  return std::any_of(m.factors().begin(), m.factors().end(), [i](const YFactor& f) { return f.node == i; });
}

// Number of A_i^{-1} separating mu from root inside L_i(root).
long steps_at_node(const Monomial& root, const Monomial& mu, int i) {
  long diff = 0;
  for (const auto& f : root.factors())
    if (f.node == i)
      diff += f.exponent;
  for (const auto& f : mu.factors())
    if (f.node == i)
      diff -= f.exponent;
  return diff / 2;
}

} // namespace

QCharacter expand_Li(const CartanData& c, const Monomial& m, int i) {
  if (!node_dominant(m, i))
    throw std::invalid_argument("monomial " + m.str() + " is not " + std::to_string(i) + "-dominant");
  const int ri = c.symmetrizer(i);

  // Powers in one residue class mod r_i form an independent sl2 lattice.
  std::map<int, std::vector<Sl2Monomial::Entry>> classes;
  for (const auto& f : m.factors()) {
    if (f.node != i)
      continue;
    const int rho = ((f.power % ri) + ri) % ri;
    classes[rho].push_back({(f.power - rho) / ri, f.exponent});
  }

  std::vector<std::pair<Monomial, long>> products{{Monomial{}, 1}};
  for (const auto& [rho, entries] : classes) {
    const Sl2Monomial local = Sl2Monomial::from_entries(entries);
    const auto chi = simple_qchar_sl2_cached(local);
    std::vector<std::pair<Monomial, long>> options;
    for (const auto& [mu, n] : chi->terms()) {
      const auto w = sl2_divide(mu, local);
      if (!w)
        throw std::logic_error("sl2 character term " + mu.str() + " is not below " + local.str());
      Monomial a;
      for (const auto& [s, count] : *w)
        a /= a_monomial(c, i, ri * s + rho).pow(count);
      options.emplace_back(std::move(a), n);
    }
    std::vector<std::pair<Monomial, long>> next;
    next.reserve(products.size() * options.size());
    for (const auto& [pa, na] : products)
      for (const auto& [pb, nb] : options)
        next.emplace_back(pa * pb, na * nb);
    products = std::move(next);
  }

  QCharacter out;
  out.set_highest(m);
  for (const auto& [a, n] : products)
    out.add(m * a, n);
  return out;
}

std::optional<std::size_t> GenerationTrace::find(const Monomial& m) const {
  for (std::size_t k = 0; k < entries.size(); ++k)
    if (entries[k].monomial == m)
      return k;
  return std::nullopt;
}

std::vector<ChainStep> GenerationTrace::chain(std::size_t index) const {
  std::vector<ChainStep> out;
  std::size_t at = index;
  while (entries.at(at).parent) {
    const std::size_t p = *entries[at].parent;
    out.push_back({entries[at].via_node, entries[p].monomial});
    at = p;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

namespace {

// Variables at node i and its neighbours are the only ones an A_{i,.} moves.
Monomial outside_key(const CartanData& c, const Monomial& m, int i) {
  const auto& nb = c.neighbors(i);
  std::vector<YFactor> kept;
  for (const auto& f : m.factors())
    if (f.node != i && std::find(nb.begin(), nb.end(), f.node) == nb.end())
      kept.push_back(f);
  return Monomial::from_factors(std::move(kept));
}

} // namespace

GenerationTrace generate_process(const CartanData& c, const Monomial& m, const ProcessOptions& options) {
  if (!is_dominant(m))
    throw std::invalid_argument("the process starts from a dominant monomial, got " + m.str());
  GenerationTrace t;
  t.source = m;
  t.entries.push_back({m, {}, 0, std::nullopt, 0});

  std::unordered_map<Monomial, std::size_t, MonomialHash> index{{m, 0}};
  std::set<std::pair<long, Monomial>> queue{{0, m}};
  // Per node and outside key: the i-dominant entries sharing that key and the
  // union of their L_i minus themselves, filled in lazily.
  struct Bucket {
    std::vector<std::size_t> members;
    std::size_t absorbed = 0;
    std::unordered_set<Monomial, MonomialHash> covered;
  };
  std::vector<std::unordered_map<Monomial, Bucket, MonomialHash>> buckets(c.size());
  std::map<std::pair<std::size_t, int>, QCharacter> expansions;

  auto expansion_of = [&](std::size_t idx, int i) -> const QCharacter& {
    auto key = std::pair{idx, i};
    auto it = expansions.find(key);
    if (it == expansions.end())
      it = expansions.emplace(key, expand_Li(c, t.entries[idx].monomial, i)).first;
    return it->second;
  };

  auto enroll = [&](std::size_t idx) {
    const Monomial& x = t.entries[idx].monomial;
    for (int i : c.nodes())
      if (touches_node(x, i) && node_dominant(x, i))
        buckets[c.index_of(i)][outside_key(c, x, i)].members.push_back(idx);
  };
  enroll(0);

  while (!queue.empty()) {
    const auto [level, current] = *queue.begin();
    if (options.max_level && level > *options.max_level) {
      t.level_capped = true;
      return t;
    }
    queue.erase(queue.begin());
    const std::size_t idx = index.at(current);
    for (int i : c.nodes()) {
      if (!touches_node(current, i) || !node_dominant(current, i))
        continue;
      Bucket& bucket = buckets[c.index_of(i)].at(outside_key(c, current, i));
      for (; bucket.absorbed < bucket.members.size(); ++bucket.absorbed) {
        const std::size_t other = bucket.members[bucket.absorbed];
        for (const auto& [mu, n] : expansion_of(other, i).terms())
          if (mu != t.entries[other].monomial)
            bucket.covered.insert(mu);
      }
      if (bucket.covered.count(current))
        continue;
      if (t.steps >= options.budget) {
        t.partial = true;
        return t;
      }
      ++t.steps;
      const QCharacter& chi = expansion_of(idx, i);
      for (const auto& [mu, n] : chi.terms()) {
        if (mu == current || index.count(mu))
          continue;
        const auto rel = divide_as_a_product(c, mu, current);
        if (!rel)
          throw std::logic_error("expansion term " + mu.str() + " is not below " + current.str());
        AWitness w = t.entries[idx].witness;
        w += *rel;
        const long lv = w.total();
        const std::size_t fresh = t.entries.size();
        t.entries.push_back({mu, std::move(w), lv, idx, i});
        index.emplace(mu, fresh);
        queue.emplace(lv, mu);
        enroll(fresh);
        if (!t.witness && is_dominant(mu)) {
          t.witness = fresh;
          if (options.stop_on_witness)
            return t;
        }
      }
    }
  }
  return t;
}

bool replay_chain(const CartanData& c, const Monomial& source, const std::vector<ChainStep>& chain,
                  const Monomial& target) {
  if (chain.empty())
    return target == source;
  if (chain.front().root != source)
    return false;
  for (std::size_t k = 0; k < chain.size(); ++k) {
    const ChainStep& step = chain[k];
    if (!c.has_node(step.node) || !node_dominant(step.root, step.node))
      return false;
    const Monomial& next = k + 1 < chain.size() ? chain[k + 1].root : target;
    if (!expand_Li(c, step.root, step.node).contains(next))
      return false;
  }
  return true;
}

const char* to_string(FmVerdict v) {
  switch (v) {
  case FmVerdict::SpecialFMConsistent:
    return "SpecialFMConsistent";
  case FmVerdict::NotSpecial:
    return "NotSpecial";
  case FmVerdict::Inconclusive:
    break;
  }
  return "Inconclusive";
}

namespace {

struct FmEntry {
  Monomial monomial;
  long level = 0;
  long multiplicity = 0;
  std::vector<long> coloured; // c_i: copies of L_i already covering this monomial
  std::optional<std::size_t> parent;
  int via_node = 0;
};

struct FmTask {
  std::size_t entry;
  int node;
  long copies;
};

std::vector<ChainStep> fm_chain(const std::vector<FmEntry>& entries, std::size_t index) {
  std::vector<ChainStep> out;
  std::size_t at = index;
  while (entries[at].parent) {
    const std::size_t p = *entries[at].parent;
    out.push_back({entries[at].via_node, entries[p].monomial});
    at = p;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

} // namespace

SpecialnessReport fm_algorithm(const CartanData& c, const Monomial& m, const FmOptions& options) {
  if (!is_dominant(m))
    throw std::invalid_argument("FM algorithm needs a dominant monomial, got " + m.str());
  SpecialnessReport report;
  report.qchar.set_highest(m);

  std::vector<FmEntry> entries{{m, 0, 0, std::vector<long>(c.size(), 0), std::nullopt, 0}};
  std::unordered_map<Monomial, std::size_t, MonomialHash> index{{m, 0}};
  std::set<std::pair<long, Monomial>> pending{{0, m}};

  while (!pending.empty()) {
    const long level = pending.begin()->first;
    std::vector<std::size_t> batch;
    while (!pending.empty() && pending.begin()->first == level) {
      batch.push_back(index.at(pending.begin()->second));
      pending.erase(pending.begin());
    }

    std::vector<FmTask> tasks;
    for (std::size_t idx : batch) {
      FmEntry& e = entries[idx];
      const long s = idx == 0 ? 1 : *std::max_element(e.coloured.begin(), e.coloured.end());
      e.multiplicity = s;
      report.qchar.add(e.monomial, s);
      ++report.settled;
      if (report.settled > options.budget) {
        report.verdict = FmVerdict::Inconclusive;
        report.diagnostic = "budget of " + std::to_string(options.budget) + " settled monomials exhausted";
        return report;
      }
      if (idx != 0 && is_dominant(e.monomial)) {
        report.verdict = FmVerdict::NotSpecial;
        report.witness = e.monomial;
        report.chain = fm_chain(entries, idx);
        return report;
      }
      for (int i : c.nodes()) {
        const long have = e.coloured[c.index_of(i)];
        if (node_dominant(e.monomial, i)) {
          if (touches_node(e.monomial, i) && s > have)
            tasks.push_back({idx, i, s - have});
        } else if (have < s) {
          report.verdict = FmVerdict::Inconclusive;
          report.diagnostic = "monomial " + e.monomial.str() + " has multiplicity " + std::to_string(s) +
                              " but only " + std::to_string(have) + " copies at node " + std::to_string(i) +
                              " reach it";
          return report;
        }
      }
    }

    std::vector<QCharacter> expanded(tasks.size());
    const unsigned workers = std::min<unsigned>(std::max(1u, options.threads), static_cast<unsigned>(tasks.size()));
    if (workers <= 1) {
      for (std::size_t t = 0; t < tasks.size(); ++t)
        expanded[t] = expand_Li(c, entries[tasks[t].entry].monomial, tasks[t].node);
    } else {
      std::atomic<std::size_t> next{0};
      std::vector<std::thread> pool;
      std::vector<std::exception_ptr> errors(workers);
      for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          try {
            for (std::size_t t = next++; t < tasks.size(); t = next++)
              expanded[t] = expand_Li(c, entries[tasks[t].entry].monomial, tasks[t].node);
          } catch (...) {
            errors[w] = std::current_exception();
          }
        });
      }
      for (auto& th : pool)
        th.join();
      for (auto& err : errors)
        if (err)
          std::rethrow_exception(err);
    }

    for (std::size_t t = 0; t < tasks.size(); ++t) {
      const FmTask& task = tasks[t];
      const Monomial root = entries[task.entry].monomial;
      const long root_level = entries[task.entry].level;
      const int ni = c.index_of(task.node);
      for (const auto& [mu, n] : expanded[t].terms()) {
        if (mu == root)
          continue;
        auto it = index.find(mu);
        if (it == index.end()) {
          const long lv = root_level + steps_at_node(root, mu, task.node);
          it = index.emplace(mu, entries.size()).first;
          entries.push_back({mu, lv, 0, std::vector<long>(c.size(), 0), task.entry, task.node});
          pending.emplace(lv, mu);
        }
        entries[it->second].coloured[ni] += task.copies * n;
      }
    }
  }
  report.verdict = FmVerdict::SpecialFMConsistent;
  return report;
}

bool qchar_is_thin(const QCharacter& chi) { return chi.all_multiplicities_one(); }

std::vector<Monomial> dominant_monomials(const QCharacter& chi) {
  std::vector<Monomial> out;
  for (const auto& [mu, n] : chi.terms())
    if (is_dominant(mu))
      out.push_back(mu);
  return out;
}

std::vector<std::pair<Monomial, long>> ordered_terms(const CartanData& c, const QCharacter& chi) {
  std::vector<std::tuple<long, Monomial, long>> keyed;
  for (const auto& [mu, n] : chi.terms()) {
    long level = 0;
    if (chi.highest()) {
      const auto w = divide_as_a_product(c, mu, *chi.highest());
      level = w ? w->total() : std::numeric_limits<long>::max();
    }
    keyed.emplace_back(level, mu, n);
  }
  std::sort(keyed.begin(), keyed.end());
  std::vector<std::pair<Monomial, long>> out;
  for (auto& [lv, mu, n] : keyed)
    out.emplace_back(std::move(mu), n);
  return out;
}

} // namespace krsmall
