// One PASS/FAIL line per acceptance check; exit status 1 if any fails.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "krsmall/serialize.hpp"
#include "krsmall/sl2core.hpp"
#include "oracles.hpp"

using namespace krsmall;

namespace {

struct Failures {
  std::vector<std::string> list;
  void expect(bool ok, const std::string& what) {
    if (!ok)
      list.push_back(what);
  }
};

Monomial M(const std::string& text) { return Monomial::parse(text); }

oracle::Exps exps_of(const Monomial& m) {
  oracle::Exps e;
  for (const auto& f : m.factors())
    e[f.power] = f.exponent;
  return e;
}

void sl2_closed_forms(Failures& f) {
  const auto c = CartanData::parse("A1");
  for (int k = 1; k <= 10; ++k) {
    const auto rep = fm_algorithm(c, kr_highest(c, 1, k, 0));
    const auto tag = "k=" + std::to_string(k);
    f.expect(rep.verdict == FmVerdict::SpecialFMConsistent, tag + " FM not consistent");
    f.expect(rep.qchar.size() == static_cast<std::size_t>(k + 1), tag + " term count");
    f.expect(rep.qchar.all_multiplicities_one(), tag + " multiplicities");
    oracle::Poly got;
    for (const auto& [m, n] : rep.qchar.terms())
      got[exps_of(m)] += n;
    f.expect(got == oracle::sl2_kr_nested(k, 0), tag + " differs from nested formula");
    const auto std_chi = standard_qchar_sl2(k, 0);
    f.expect(std_chi.size() == (std::size_t{1} << k), tag + " standard term count");
    f.expect(std_chi.all_multiplicities_one(), tag + " standard multiplicities");
  }
}

void generated(Failures& f, const CartanData& c, const Monomial& start, const std::vector<Monomial>& listed) {
  long deepest = 0;
  for (const auto& m : listed) {
    const auto w = divide_as_a_product(c, m, start);
    f.expect(w.has_value(), m.str() + " is not below " + start.str());
    if (w)
      deepest = std::max(deepest, w->total());
  }
  ProcessOptions opt;
  opt.max_level = deepest;
  const auto trace = generate_process(c, start, opt);
  for (const auto& m : listed) {
    const auto idx = trace.find(m);
    f.expect(idx.has_value(), m.str() + " not generated from " + start.str());
    if (idx)
      f.expect(replay_chain(c, start, trace.chain(*idx), m), m.str() + " chain does not replay");
  }
}

void not_small(Failures& f, const CartanData& c, int i, int k, int r, const Monomial& m_prime,
               const Budgets& b = {}) {
  const auto v = check_small_empirical(c, i, k, r, b);
  f.expect(v.empirical == EmpiricalSmallness::NotSmall, "empirical verdict is not NotSmall");
  f.expect(v.theoretical == Smallness::NotSmall, "classify is not NotSmall");
  f.expect(classify(c, i, k) == Smallness::NotSmall, "classify disagrees");
  bool seen = false;
  for (const auto* w : v.witnesses())
    seen = seen || w->monomial == m_prime;
  f.expect(seen, m_prime.str() + " is not among the certified witnesses");
}

void a3_example(Failures& f) {
  const auto c = CartanData::parse("A3");
  const Monomial m = M("2_0 2_2 2_4");
  const Monomial mp = M("1_1 3_1 2_4");
  f.expect(kr_highest(c, 2, 3, 2) == m, "highest monomial");
  bool listed = false;
  for (const auto& d : enumerate_dominant_below(c, 2, 3, 2).entries)
    listed = listed || d.monomial == mp;
  f.expect(listed, "m' not enumerated");
  f.expect(m * a_monomial(c, 2, 1).inverse() == mp, "m' != m A_{2,1}^-1");
  generated(f, c, mp, {M("1_3^-1 3_3^-1 2_2^2 2_4"), M("2_2")});
  f.expect(fm_algorithm(c, mp).verdict == FmVerdict::NotSpecial, "FM does not flag L(m') not special");
  not_small(f, c, 2, 3, 2, mp);
}

void d4_example(Failures& f) {
  const auto c = CartanData::parse("D4");
  const Monomial mp = M("1_3 1_5 2_0");
  generated(f, c, mp,
            {M("1_3 1_5 2_0"), M("1_1 1_3 1_5 2_2^-1 3_1 4_1"), M("1_1 1_3 1_5 2_2 3_3^-1 4_3^-1"),
             M("1_1 1_3^2 1_5 2_4^-1"), M("1_1 1_3")});
  not_small(f, c, 1, 4, 2, mp);
}

void affine_a2_example(Failures& f) {
  const auto c = CartanData::parse("A2~");
  const Monomial mp = M("1_1 0_1 2_4");
  f.expect(kr_highest(c, 2, 3, 2) * a_monomial(c, 2, 1).inverse() == mp, "m' != m A_{2,1}^-1");
  generated(f, c, mp, {M("1_3^-1 0_3^-1 1_2 0_2 2_2^2 2_4"), M("2_2 1_2 0_2")});
  // q-characters of the affinization are infinite, so FM and the process are capped.
  Budgets b;
  b.fm_steps = 2000;
  b.process_steps = 2000;
  not_small(f, c, 2, 3, 2, mp, b);
}

void sweep(Failures& f) {
  for (const char* name : {"A1", "A2", "A3", "A4", "D4"}) {
    const auto c = CartanData::parse(name);
    for (int i : c.nodes())
      for (int k = 1; k <= 4; ++k) {
        const auto v = check_small_empirical(c, i, k);
        std::ostringstream tag;
        tag << name << " i=" << i << " k=" << k;
        f.expect(v.agree, tag.str() + " disagrees");
        f.expect(!v.enumeration_partial, tag.str() + " enumeration partial");
        if (v.theoretical == Smallness::NotSmall) {
          f.expect(!v.witnesses().empty(), tag.str() + " no witness");
          for (const auto* w : v.witnesses())
            f.expect(replay_chain(c, w->monomial, w->chain, *w->certificate), tag.str() + " chain does not replay");
        } else {
          f.expect(v.undetermined().empty(), tag.str() + " has undetermined monomials");
          for (const auto& ch : v.checks)
            f.expect(ch.fm == FmVerdict::SpecialFMConsistent, tag.str() + " " + ch.monomial.str() + " not consistent");
        }
      }
  }
}

void type_a_enumeration(Failures& f) {
  for (int n = 1; n <= 4; ++n) {
    const auto c = CartanData::build('A', n);
    for (int k = 1; k <= 5; ++k) {
      const auto e = enumerate_dominant_below(c, 1, k, 0);
      std::set<Monomial> got;
      for (const auto& d : e.entries)
        got.insert(d.monomial);
      const auto tag = "A" + std::to_string(n) + " k=" + std::to_string(k);
      f.expect(!e.partial, tag + " partial");
      f.expect(got == oracle::dominant_below_bruteforce(c, 1, k, 0), tag + " differs from brute force");
      f.expect(check_type_A_form(c, e.entries), tag + " gap condition");
    }
  }
}

void level_two(Failures& f) {
  for (const char* name : {"A1", "A2", "A3", "A4", "A5", "D4", "D5", "A2~", "A3~", "A4~", "D4~"}) {
    const auto c = CartanData::parse(name);
    const bool affine = std::string(name).back() == '~';
    for (int i : c.nodes()) {
      std::vector<YFactor> nbrs;
      for (int j : c.neighbors(i))
        nbrs.push_back({j, 0, 1});
      const Monomial lower = Monomial::from_factors(nbrs);
      const auto e = enumerate_dominant_below(c, i, 2, 0);
      std::set<Monomial> got;
      for (const auto& d : e.entries)
        got.insert(d.monomial);
      const auto tag = std::string(name) + " i=" + std::to_string(i);
      f.expect(got == std::set<Monomial>{kr_highest(c, i, 2, 0), lower}, tag + " dominant set");
      if (!affine)
        f.expect(fm_algorithm(c, lower).verdict == FmVerdict::SpecialFMConsistent, tag + " lower monomial not consistent");
    }
  }
}

void thin_and_kr(Failures& f) {
  for (int n = 1; n <= 4; ++n) {
    const auto c = CartanData::build('A', n);
    for (int i : c.nodes()) {
      const auto fund = fm_algorithm(c, Monomial::y(i, 0));
      const auto tag = "A" + std::to_string(n) + " i=" + std::to_string(i);
      f.expect(fund.verdict == FmVerdict::SpecialFMConsistent, tag + " fundamental not consistent");
      f.expect(fund.qchar.all_multiplicities_one(), tag + " fundamental not thin");
      for (int k = 1; k <= 4; ++k) {
        const Monomial x = kr_highest(c, i, k, 0);
        const auto rep = fm_algorithm(c, x);
        const auto kt = tag + " k=" + std::to_string(k);
        f.expect(rep.verdict == FmVerdict::SpecialFMConsistent, kt + " KR not consistent");
        f.expect(dominant_monomials(rep.qchar) == std::vector<Monomial>{x}, kt + " dominant monomial not unique");
        const Monomial bound = x * a_monomial(c, i, k * c.symmetrizer(i)).inverse();
        for (const auto& [m, mult] : rep.qchar.terms())
          if (m != x)
            f.expect(divide_as_a_product(c, m, bound).has_value(), kt + " " + m.str() + " above X A^-1");
      }
    }
  }
}

void property_suite(Failures& f) {
  const int status = std::system(KRSMALL_PROPERTY_TESTS " --minimal > /dev/null 2>&1");
  f.expect(status == 0, "property suite exited with status " + std::to_string(status));
}

} // namespace

int main() {
  struct Check {
    int id;
    const char* title;
    double limit_seconds;
    std::function<void(Failures&)> run;
  };
  const Check checks[] = {
      {1, "sl2 closed forms", 1.0, sl2_closed_forms},
      {2, "A3 node 2 level 3 counterexample", 1.0, a3_example},
      {3, "D4 node 1 level 4 counterexample", 5.0, d4_example},
      {4, "affine A2 node 2 level 3 counterexample", 5.0, affine_a2_example},
      {5, "classification sweep A1-A4, D4, k<=4", 300.0, sweep},
      {6, "type A enumeration vs brute force", 120.0, type_a_enumeration},
      {7, "level 2 dominant sets", 0.0, level_two},
      {8, "thin fundamentals and KR modules", 0.0, thin_and_kr},
      {9, "standalone property suite", 0.0, property_suite},
  };
  int failed = 0;
  for (const auto& c : checks) {
    Failures f;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(f);
    } catch (const std::exception& e) {
      f.list.push_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds > 0 && secs > c.limit_seconds) {
      std::ostringstream s;
      s << "took " << secs << " s, limit " << c.limit_seconds << " s";
      f.list.push_back(s.str());
    }
    const bool ok = f.list.empty();
    failed += !ok;
    std::printf("[%d] %-42s %s (%.3f s)\n", c.id, c.title, ok ? "PASS" : "FAIL", secs);
    for (std::size_t t = 0; t < f.list.size() && t < 10; ++t)
      std::printf("      %s\n", f.list[t].c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu passed\n", static_cast<int>(std::size(checks)) - failed, std::size(checks));
  return failed == 0 ? 0 : 1;
}
