#include "krsmall/smallness.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <thread>

namespace krsmall {

const char* to_string(Smallness s) { return s == Smallness::Small ? "Small" : "NotSmall"; }

const char* to_string(EmpiricalSmallness s) {
  switch (s) {
  case EmpiricalSmallness::Small:
    return "Small";
  case EmpiricalSmallness::NotSmall:
    return "NotSmall";
  case EmpiricalSmallness::Undetermined:
    break;
  }
  return "Undetermined";
}

namespace {

void require_simply_laced(const CartanData& c) {
  if (!c.simply_laced())
    throw std::invalid_argument(c.name() + " is not simply-laced; the smallness criterion covers simply-laced types only");
}

} // namespace

Smallness classify(const CartanData& c, int i, int k) {
  require_simply_laced(c);
  if (k < 1)
    throw std::invalid_argument("KR level must be positive");
  if (k <= 2)
    return Smallness::Small;
  const NodeClassification nc = classify_nodes(c);
  if (nc.degree_of(i) > 1)
    return Smallness::NotSmall;
  const auto d = nc.d_of(i);
  return !d || k <= *d + 1 ? Smallness::Small : Smallness::NotSmall;
}

namespace {

class Enumerator {
public:
  Enumerator(const CartanData& c, int i, int k, int r, std::size_t budget)
      : c_(c), k_(k), budget_(budget), pmin_(r - k + 1), pmax_(r + k - 1) {
    const int n = c.size();
    width_ = pmax_ - pmin_ + 1;
    u_.assign(n * width_, 0);
    for (int kk = 0; kk < k; ++kk)
      at(c.index_of(i), pmin_ + 2 * kk) = 1;
    for (int l = r + k - 2; l >= r - k + 2; --l) {
      Level lv{l, {}};
      for (int j : c.nodes()) {
        const auto d = graph_distance(c, i, j);
        if (d && *d <= k - 1 && *d + 1 - k <= l - r && l - r <= k - 1 - *d)
          lv.box.push_back(c.index_of(j));
      }
      levels_.push_back(std::move(lv));
    }
    v_.assign(levels_.size(), std::vector<int>(n, 0));
    neighbors_.resize(n);
    for (int a = 0; a < n; ++a)
      for (int nb : c.neighbors(c.label_of(a)))
        neighbors_[a].push_back(c.index_of(nb));
  }

  void run(EnumerationResult& out) {
    out_ = &out;
    enter_level(0);
    out.nodes_visited = visited_;
    out.partial = exhausted_;
  }

private:
  struct Level {
    int l;
    std::vector<int> box; // node indices
  };

  int& at(int node, int power) { return u_[node * width_ + (power - pmin_)]; }
  int value(int node, int power) const {
    if (power < pmin_ || power > pmax_)
      return 0;
    return u_[node * width_ + (power - pmin_)];
  }

  void apply(int node, int l, int v) {
    // multiply by A_{node,l}^{-v}
    at(node, l - 1) -= v;
    at(node, l + 1) -= v;
    for (int nb : neighbors_[node])
      at(nb, l) += v;
  }

  void enter_level(std::size_t li) {
    if (exhausted_)
      return;
    if (li == levels_.size()) {
      emit();
      return;
    }
    const int l = levels_[li].l;
    for (int j = 0; j < c_.size(); ++j)
      if (value(j, l + 1) < 0)
        return;
    choose(li, 0);
  }

  void choose(std::size_t li, std::size_t bi) {
    if (exhausted_)
      return;
    const Level& lv = levels_[li];
    if (bi == lv.box.size()) {
      enter_level(li + 1);
      return;
    }
    const int j = lv.box[bi];
    const int cap = std::min(k_, value(j, lv.l + 1));
    for (int v = 0; v <= cap; ++v) {
      if (++visited_ > budget_) {
        exhausted_ = true;
        return;
      }
      v_[li][j] = v;
      apply(j, lv.l, v);
      choose(li, bi + 1);
      apply(j, lv.l, -v);
      v_[li][j] = 0;
      if (exhausted_)
        return;
    }
  }

  void emit() {
    if (std::any_of(u_.begin(), u_.end(), [](int e) { return e < 0; }))
      return;
    std::vector<YFactor> factors;
    for (int a = 0; a < c_.size(); ++a)
      for (int p = pmin_; p <= pmax_; ++p)
        if (value(a, p) != 0)
          factors.push_back({c_.label_of(a), p, value(a, p)});
    Monomial m = Monomial::from_factors(std::move(factors));
    AWitness w;
    for (std::size_t li = 0; li < levels_.size(); ++li)
      for (int a = 0; a < c_.size(); ++a)
        w.add(c_.label_of(a), levels_[li].l, v_[li][a]);
    const auto back = divide_as_a_product(c_, m, out_->highest);
    if (!back || !(*back == w))
      throw std::logic_error("enumerated monomial " + m.str() + " fails the witness round trip");
    out_->entries.push_back({std::move(m), std::move(w)});
  }

  const CartanData& c_;
  int k_;
  std::size_t budget_;
  int pmin_;
  int pmax_;
  int width_ = 0;
  std::vector<int> u_;
  std::vector<Level> levels_;
  std::vector<std::vector<int>> v_;
  std::vector<std::vector<int>> neighbors_;
  std::size_t visited_ = 0;
  bool exhausted_ = false;
  EnumerationResult* out_ = nullptr;
};

} // namespace

EnumerationResult enumerate_dominant_below(const CartanData& c, int i, int k, int r, std::size_t budget) {
  require_simply_laced(c);
  EnumerationResult out;
  out.highest = kr_highest(c, i, k, r);
  Enumerator(c, i, k, r, budget).run(out);
  std::sort(out.entries.begin(), out.entries.end(), [](const DominantEntry& a, const DominantEntry& b) {
    const long ta = a.witness.total();
    const long tb = b.witness.total();
    return ta != tb ? ta < tb : a.monomial < b.monomial;
  });
  return out;
}

Budgets budgets_from_env() {
  Budgets b;
  auto read = [](const char* name, std::size_t& slot) {
    if (const char* text = std::getenv(name)) {
      try {
        const unsigned long long v = std::stoull(text);
        if (v > 0)
          slot = static_cast<std::size_t>(v);
      } catch (const std::exception&) {
        throw std::invalid_argument(std::string(name) + " must be a positive integer, got '" + text + "'");
      }
    }
  };
  read("KRSMALL_FM_STEPS", b.fm_steps);
  read("KRSMALL_PROCESS_STEPS", b.process_steps);
  read("KRSMALL_ENUM_NODES", b.enum_nodes);
  return b;
}

std::vector<const MonomialCheck*> SmallnessVerdict::witnesses() const {
  std::vector<const MonomialCheck*> out;
  for (const auto& ch : checks)
    if (ch.certificate)
      out.push_back(&ch);
  return out;
}

std::vector<const MonomialCheck*> SmallnessVerdict::undetermined() const {
  std::vector<const MonomialCheck*> out;
  for (const auto& ch : checks)
    if (!ch.certificate && ch.fm != FmVerdict::SpecialFMConsistent)
      out.push_back(&ch);
  return out;
}

SmallnessVerdict theoretical_verdict(const CartanData& c, int i, int k, int r) {
  SmallnessVerdict v;
  v.diagram = c.name();
  v.node = i;
  v.k = k;
  v.r = r;
  v.theoretical = classify(c, i, k);
  return v;
}

MonomialCheck certify_not_special(const CartanData& c, const Monomial& m_prime, std::size_t process_steps) {
  MonomialCheck check;
  check.monomial = m_prime;
  check.process_ran = true;
  ProcessOptions opts;
  opts.budget = process_steps;
  opts.stop_on_witness = true;
  const GenerationTrace trace = generate_process(c, m_prime, opts);
  check.process_partial = trace.partial;
  if (trace.witness) {
    check.certificate = trace.entries[*trace.witness].monomial;
    check.chain = trace.chain(*trace.witness);
  }
  return check;
}

SmallnessVerdict check_small_empirical(const CartanData& c, int i, int k, int r, const Budgets& budgets) {
  SmallnessVerdict verdict = theoretical_verdict(c, i, k, r);
  verdict.empirical_ran = true;
  const EnumerationResult en = enumerate_dominant_below(c, i, k, r, budgets.enum_nodes);
  verdict.enumeration_partial = en.partial;
  verdict.checks.resize(en.entries.size());

  auto run_one = [&](std::size_t idx) {
    const DominantEntry& e = en.entries[idx];
    const SpecialnessReport fm = fm_algorithm(c, e.monomial, {budgets.fm_steps, 1});
    MonomialCheck check;
    if (fm.verdict != FmVerdict::SpecialFMConsistent)
      check = certify_not_special(c, e.monomial, budgets.process_steps);
    check.monomial = e.monomial;
    check.witness = e.witness;
    check.fm = fm.verdict;
    check.fm_diagnostic = fm.diagnostic;
    verdict.checks[idx] = std::move(check);
  };

  const std::size_t n = en.entries.size();
  const unsigned workers = std::min<std::size_t>(std::max(1u, budgets.threads), n);
  if (workers <= 1) {
    for (std::size_t idx = 0; idx < n; ++idx)
      run_one(idx);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        try {
          for (std::size_t idx = next++; idx < n; idx = next++)
            run_one(idx);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    for (auto& th : pool)
      th.join();
    for (auto& err : errors)
      if (err)
        std::rethrow_exception(err);
  }

  const bool any_certificate =
      std::any_of(verdict.checks.begin(), verdict.checks.end(), [](const MonomialCheck& ch) { return ch.certificate.has_value(); });
  const bool all_consistent = std::all_of(verdict.checks.begin(), verdict.checks.end(), [](const MonomialCheck& ch) {
    return ch.fm == FmVerdict::SpecialFMConsistent;
  });
  if (any_certificate)
    verdict.empirical = EmpiricalSmallness::NotSmall;
  else if (all_consistent && !en.partial)
    verdict.empirical = EmpiricalSmallness::Small;
  else
    verdict.empirical = EmpiricalSmallness::Undetermined;
  verdict.agree = (verdict.empirical == EmpiricalSmallness::Small && verdict.theoretical == Smallness::Small) ||
                  (verdict.empirical == EmpiricalSmallness::NotSmall && verdict.theoretical == Smallness::NotSmall);
  return verdict;
}

bool has_type_A_form(const Monomial& m) {
  std::vector<YFactor> f(m.factors().begin(), m.factors().end());
  if (std::any_of(f.begin(), f.end(), [](const YFactor& x) { return x.exponent != 1; }))
    return false;
  std::sort(f.begin(), f.end(), [](const YFactor& a, const YFactor& b) { return a.power < b.power; });
  for (std::size_t t = 1; t < f.size(); ++t)
    if (f[t].power - f[t - 1].power < f[t - 1].node + f[t].node)
      return false;
  return true;
}

bool check_type_A_form(const CartanData& c, const std::vector<DominantEntry>& entries) {
  if (c.series() != 'A' || c.affine())
    throw std::invalid_argument("the gap form applies to finite type A, got " + c.name());
  return std::all_of(entries.begin(), entries.end(), [](const DominantEntry& e) { return has_type_A_form(e.monomial); });
}

bool RemarkReport::all_passed() const {
  return !remarks.empty() && std::all_of(remarks.begin(), remarks.end(), [](const RemarkCheck& r) { return r.passed; });
}

namespace {

struct RemarkInput {
  std::string name;
  std::string diagram;
  int node;
  int k;
  int r;
  std::vector<std::pair<int, int>> lowering; // A_{j,s}^{-1} taking X to the start
  std::string start;
  std::vector<std::string> listed;
  std::string witness;
};

RemarkCheck run_remark(const RemarkInput& in, const Budgets& budgets) {
  RemarkCheck out;
  out.name = in.name;
  out.diagram = in.diagram;
  auto fail = [&](std::string why) { out.failures.push_back(std::move(why)); };

  const CartanData c = CartanData::parse(in.diagram);
  out.highest = kr_highest(c, in.node, in.k, in.r);
  Monomial start = out.highest;
  for (auto [j, s] : in.lowering)
    start /= a_monomial(c, j, s);
  out.start = start;
  if (start != Monomial::parse(in.start))
    fail("start monomial is " + start.str() + ", expected " + in.start);
  if (!is_dominant(start))
    fail("start monomial " + start.str() + " is not dominant");

  const EnumerationResult en = enumerate_dominant_below(c, in.node, in.k, in.r, budgets.enum_nodes);
  if (std::none_of(en.entries.begin(), en.entries.end(), [&](const DominantEntry& e) { return e.monomial == start; }))
    fail("start monomial " + start.str() + " missing from the dominant monomials below " + out.highest.str());

  long deepest = 0;
  std::vector<Monomial> listed;
  for (const auto& text : in.listed) {
    listed.push_back(Monomial::parse(text));
    const auto w = divide_as_a_product(c, listed.back(), start);
    if (!w)
      fail("listed monomial " + text + " is not below the start");
    else
      deepest = std::max(deepest, w->total());
  }

  ProcessOptions opts;
  opts.budget = budgets.process_steps;
  opts.max_level = deepest;
  const GenerationTrace trace = generate_process(c, start, opts);
  for (const Monomial& m : listed) {
    const auto idx = trace.find(m);
    if (!idx) {
      fail("monomial " + m.str() + " was not generated");
      continue;
    }
    out.generated.emplace_back(m, trace.chain(*idx));
    if (!replay_chain(c, start, out.generated.back().second, m))
      fail("chain to " + m.str() + " does not replay");
  }

  const Monomial expected_witness = Monomial::parse(in.witness);
  if (const auto idx = trace.find(expected_witness); idx && is_dominant(expected_witness) && expected_witness != start) {
    out.witness = expected_witness;
    out.witness_chain = trace.chain(*idx);
  } else {
    fail("no dominant witness " + in.witness + " below the start: L(start) is not certified non-special");
  }

  if (classify(c, in.node, in.k) != Smallness::NotSmall)
    fail("classification does not report NotSmall");
  out.passed = out.failures.empty();
  return out;
}

} // namespace

RemarkReport verify_remarks(const Budgets& budgets) {
  const std::vector<RemarkInput> inputs{
      {"A3 node 2 level 3",
       "A3",
       2,
       3,
       2,
       {{2, 1}},
       "1_1 3_1 2_4",
       {"1_3^-1 3_3^-1 2_2^2 2_4", "2_2"},
       "2_2"},
      {"D4 node 1 level 4",
       "D4",
       1,
       4,
       2,
       {{1, 0}},
       "1_3 1_5 2_0",
       {"1_3 1_5 2_0", "1_1 1_3 1_5 2_2^-1 3_1 4_1", "1_1 1_3 1_5 2_2 3_3^-1 4_3^-1", "1_1 1_3^2 1_5 2_4^-1",
        "1_1 1_3"},
       "1_1 1_3"},
      {"A2~ node 2 level 3",
       "A2~",
       2,
       3,
       2,
       {{2, 1}},
       "1_1 0_1 2_4",
       {"1_3^-1 0_3^-1 1_2 0_2 2_2^2 2_4", "1_2 0_2 2_2"},
       "1_2 0_2 2_2"},
  };
  RemarkReport report;
  for (const auto& in : inputs)
    report.remarks.push_back(run_remark(in, budgets));
  return report;
}

} // namespace krsmall
