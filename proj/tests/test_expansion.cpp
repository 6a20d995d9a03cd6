#include <doctest.h>

#include <stdexcept>

#include <set>

#include "krsmall/expansion.hpp"
#include "krsmall/sl2core.hpp"
#include "oracles.hpp"

using namespace krsmall;

namespace {

Monomial M(const char* text) { return Monomial::parse(text); }

std::set<Monomial> support(const QCharacter& chi) {
  std::set<Monomial> out;
  for (const auto& [m, n] : chi.terms())
    out.insert(m);
  return out;
}

// Y_{a,s} -> Y_{a,-s}^{-1}
Monomial dual(const Monomial& m) {
  std::vector<YFactor> f;
  for (const auto& x : m.factors())
    f.push_back({x.node, -x.power, -x.exponent});
  return Monomial::from_factors(std::move(f));
}

} // namespace

TEST_CASE("single-node expansion of a fundamental monomial") {
  for (const char* name : {"A3", "D4", "B2", "G2"}) {
    CAPTURE(name);
    const auto c = CartanData::parse(name);
    for (int i : c.nodes()) {
      const Monomial y = Monomial::y(i, 3);
      const auto chi = expand_Li(c, y, i);
      CHECK(chi.size() == 2);
      CHECK(chi.contains(y));
      CHECK(chi.contains(y / a_monomial(c, i, 3 + c.symmetrizer(i))));
      CHECK(chi.highest() == y);
    }
  }
}

TEST_CASE("single-node expansion edge cases") {
  const auto a3 = CartanData::parse("A3");
  const auto trivial = expand_Li(a3, M("1_0 3_4"), 2);
  CHECK(trivial.size() == 1);
  CHECK(trivial.contains(M("1_0 3_4")));
  CHECK_THROWS_AS(expand_Li(a3, M("2_0^-1 1_0"), 2), std::invalid_argument);
  // Negative exponents elsewhere are allowed.
  CHECK(expand_Li(a3, M("2_0 1_0^-1"), 2).size() == 2);

  const auto chi = expand_Li(a3, M("2_0 2_2 2_4"), 2);
  CHECK(chi.size() == 4);
  CHECK(chi.contains(M("2_0 2_2 2_6^-1 1_5 3_5")));
  CHECK(!chi.contains(M("1_1 3_1 2_4")));
  CHECK(chi.multiplicity(M("2_0 2_2 2_4")) == 1);
}

TEST_CASE("single-node expansion restricts to the sl2 simple character") {
  struct Case {
    const char* diagram;
    int node;
    const char* monomial;
  };
  for (const Case& cs : {Case{"A3", 2, "2_0 2_2 2_6 1_1"}, Case{"D4", 2, "2_0^2 2_2 3_5"}, Case{"B3", 1, "1_0 1_1 1_4 2_3"},
                         Case{"G2", 1, "1_0 1_2 1_6"}, Case{"C3", 3, "3_0 3_4 3_5"}}) {
    CAPTURE(cs.monomial);
    const auto c = CartanData::parse(cs.diagram);
    const Monomial m = M(cs.monomial);
    const auto chi = expand_Li(c, m, cs.node);
    const int ri = c.symmetrizer(cs.node);

    // Expected: product over residue classes of the sl2 simple characters.
    std::map<int, std::vector<Sl2Monomial::Entry>> classes;
    const Monomial at_node = m.restricted_to(cs.node);
    for (const auto& f : at_node.factors()) {
      const int rho = ((f.power % ri) + ri) % ri;
      classes[rho].push_back({(f.power - rho) / ri, f.exponent});
    }
    std::map<Monomial, long> expected{{Monomial{}, 1}};
    for (const auto& [rho, e] : classes) {
      std::map<Monomial, long> next;
      const auto sl2 = simple_qchar_sl2(Sl2Monomial::from_entries(e));
      for (const auto& [mu, n] : sl2.terms()) {
        std::vector<YFactor> f;
        for (const auto& x : mu.entries())
          f.push_back({cs.node, ri * x.power + rho, x.exponent});
        const Monomial lifted = Monomial::from_factors(f);
        for (const auto& [acc, na] : expected)
          next[acc * lifted] += na * n;
      }
      expected = next;
    }
    std::map<Monomial, long> got;
    for (const auto& [mu, n] : chi.terms())
      got[mu.restricted_to(cs.node)] += n;
    CHECK(got == expected);

    for (const auto& [mu, n] : chi.terms()) {
      const auto w = divide_as_a_product(c, mu, m);
      REQUIRE(w);
      CHECK(w->node_total(cs.node) == w->total());
    }
  }
}

TEST_CASE("generation process on an sl2 KR monomial gives the KR character") {
  const auto a1 = CartanData::parse("A1");
  for (int k = 1; k <= 6; ++k) {
    const auto t = generate_process(a1, kr_highest(a1, 1, k, 0));
    CHECK(!t.partial);
    CHECK(t.entries.size() == static_cast<std::size_t>(k + 1));
    const auto kr = kr_qchar_sl2(k, 0);
    for (const auto& e : t.entries) {
      std::vector<Sl2Monomial::Entry> s;
      for (const auto& f : e.monomial.factors())
        s.push_back({f.power, f.exponent});
      CHECK(kr.contains(Sl2Monomial::from_entries(s)));
    }
  }
}

TEST_CASE("generation process from 1_1 3_1 2_4 in A3") {
  const auto a3 = CartanData::parse("A3");
  const auto t = generate_process(a3, M("1_1 3_1 2_4"));
  CHECK(!t.partial);
  for (const char* m : {"1_3^-1 3_3^-1 2_2^2 2_4", "2_2"}) {
    CAPTURE(m);
    const auto idx = t.find(M(m));
    REQUIRE(idx);
    CHECK(replay_chain(a3, t.source, t.chain(*idx), M(m)));
  }
  REQUIRE(t.witness);
  CHECK(t.entries[*t.witness].monomial == M("2_2"));
}

TEST_CASE("generation process from 1_3 1_5 2_0 in D4") {
  const auto d4 = CartanData::parse("D4");
  ProcessOptions opts;
  opts.max_level = 5;
  const auto t = generate_process(d4, M("1_3 1_5 2_0"), opts);
  for (const char* m : {"1_1 1_3 1_5 2_2^-1 3_1 4_1", "1_1 1_3 1_5 2_2 3_3^-1 4_3^-1", "1_1 1_3^2 1_5 2_4^-1", "1_1 1_3"}) {
    CAPTURE(m);
    const auto idx = t.find(M(m));
    REQUIRE(idx);
    CHECK(replay_chain(d4, t.source, t.chain(*idx), M(m)));
  }
  CHECK(t.level_capped);
}

TEST_CASE("generation process honours its budget and stop flag") {
  const auto a2 = CartanData::parse("A2~");
  ProcessOptions opts;
  opts.budget = 10;
  const auto t = generate_process(a2, M("1_0"), opts);
  CHECK(t.partial);
  CHECK(t.steps == 10);
  opts.budget = 1000;
  opts.stop_on_witness = true;
  const auto s = generate_process(CartanData::parse("A3"), M("1_1 3_1 2_4"), opts);
  REQUIRE(s.witness);
  CHECK(*s.witness + 1 == s.entries.size());
  CHECK_THROWS_AS(generate_process(a2, M("1_0^-1")), std::invalid_argument);
}

TEST_CASE("replay rejects broken chains") {
  const auto a3 = CartanData::parse("A3");
  const Monomial m = M("2_0 2_2 2_4");
  const std::vector<ChainStep> good{{2, m}};
  const Monomial lowered = M("2_0 2_2 2_6^-1 1_5 3_5");
  CHECK(replay_chain(a3, m, good, lowered));
  CHECK(!replay_chain(a3, m, good, M("1_1 3_1 2_4")));
  CHECK(!replay_chain(a3, m, {{1, m}}, lowered));
  CHECK(!replay_chain(a3, M("2_2"), good, lowered));
  CHECK(replay_chain(a3, m, {}, m));
}

TEST_CASE("FM algorithm on sl2 KR monomials") {
  const auto a1 = CartanData::parse("A1");
  for (int k = 1; k <= 6; ++k) {
    const auto rep = fm_algorithm(a1, kr_highest(a1, 1, k, 0));
    CHECK(rep.verdict == FmVerdict::SpecialFMConsistent);
    CHECK(rep.qchar.size() == static_cast<std::size_t>(k + 1));
    CHECK(qchar_is_thin(rep.qchar));
  }
}

TEST_CASE("FM algorithm finds the witness 2_2 below 1_1 3_1 2_4") {
  const auto a3 = CartanData::parse("A3");
  const auto rep = fm_algorithm(a3, M("1_1 3_1 2_4"));
  CHECK(rep.verdict == FmVerdict::NotSpecial);
  REQUIRE(rep.witness);
  CHECK(*rep.witness == M("2_2"));
  CHECK(replay_chain(a3, M("1_1 3_1 2_4"), rep.chain, M("2_2")));
}

TEST_CASE("FM first steps on fundamental monomials") {
  for (int n = 1; n <= 4; ++n) {
    const auto c = CartanData::build('A', n);
    for (int i = 1; i <= n; ++i) {
      CAPTURE(n);
      CAPTURE(i);
      const Monomial y = Monomial::y(i, 0);
      const auto rep = fm_algorithm(c, y);
      REQUIRE(rep.verdict == FmVerdict::SpecialFMConsistent);
      CHECK(qchar_is_thin(rep.qchar));
      CHECK(static_cast<long>(rep.qchar.size()) == oracle::binomial(n + 1, i));

      const Monomial first = y / a_monomial(c, i, 1);
      std::set<Monomial> level1;
      std::set<Monomial> level2;
      for (const auto& [m, mult] : rep.qchar.terms()) {
        const long v = divide_as_a_product(c, m, y)->total();
        if (v == 1)
          level1.insert(m);
        if (v == 2)
          level2.insert(m);
      }
      CHECK(level1 == std::set<Monomial>{first});
      std::set<Monomial> expected2;
      for (int j : c.neighbors(i))
        expected2.insert(first / a_monomial(c, j, 2));
      CHECK(level2 == expected2);
    }
  }
}

TEST_CASE("fundamental characters are dual under Y_{a,s} -> Y_{a,-s}^{-1}") {
  for (const char* name : {"A3", "A4", "D4"}) {
    const auto c = CartanData::parse(name);
    for (int i : c.nodes()) {
      CAPTURE(name);
      CAPTURE(i);
      const auto rep = fm_algorithm(c, Monomial::y(i, 0));
      REQUIRE(rep.verdict == FmVerdict::SpecialFMConsistent);
      const auto ordered = ordered_terms(c, rep.qchar);
      const Monomial lowest = ordered.back().first;
      REQUIRE(lowest.size() == 1);
      CHECK(lowest.factors()[0].exponent == -1);
      const Monomial top = dual(lowest);
      const auto other = fm_algorithm(c, top);
      REQUIRE(other.verdict == FmVerdict::SpecialFMConsistent);
      std::set<Monomial> mapped;
      for (const auto& [m, n] : rep.qchar.terms())
        mapped.insert(dual(m));
      CHECK(mapped == support(other.qchar));
    }
  }
}

TEST_CASE("KR monomials: consistent, and everything else sits below X A_{i,k}^{-1}") {
  for (const char* name : {"A2", "A3", "D4"}) {
    const auto c = CartanData::parse(name);
    for (int i : c.nodes())
      for (int k = 1; k <= 3; ++k) {
        CAPTURE(name);
        CAPTURE(i);
        CAPTURE(k);
        const Monomial x = kr_highest(c, i, k, 0);
        const auto rep = fm_algorithm(c, x);
        REQUIRE(rep.verdict == FmVerdict::SpecialFMConsistent);
        CHECK(dominant_monomials(rep.qchar) == std::vector<Monomial>{x});
        const Monomial below = x / a_monomial(c, i, k);
        for (const auto& [m, n] : rep.qchar.terms())
          if (m != x)
            CHECK(divide_as_a_product(c, m, below).has_value());
        // thin monomials force thin characters
        bool all_thin = true;
        for (const auto& [m, n] : rep.qchar.terms())
          all_thin = all_thin && is_thin_monomial(m);
        if (all_thin)
          CHECK(qchar_is_thin(rep.qchar));
        // certified monomials are a subset of the FM character
        const auto t = generate_process(c, x);
        CHECK(!t.partial);
        for (const auto& e : t.entries)
          CHECK(rep.qchar.contains(e.monomial));
      }
  }
}

TEST_CASE("type A KR characters have the weights of rectangular tableaux") {
  for (int n = 1; n <= 4; ++n)
    for (int i = 1; i <= n; ++i)
      for (int k = 1; k <= 3; ++k) {
        const auto c = CartanData::build('A', n);
        const auto rep = fm_algorithm(c, kr_highest(c, i, k, 0));
        REQUIRE(rep.verdict == FmVerdict::SpecialFMConsistent);
        std::map<std::vector<long>, long> weights;
        for (const auto& [m, mult] : rep.qchar.terms())
          weights[exponent_profile(c, m).weight] += mult;
        CHECK(weights == oracle::rectangle_weights(n, i, k));
      }
}

TEST_CASE("FM multiplicities and thinness") {
  const auto a1 = CartanData::parse("A1");
  const auto rep = fm_algorithm(a1, M("1_0^2"));
  CHECK(rep.verdict == FmVerdict::SpecialFMConsistent);
  CHECK(rep.qchar.multiplicity(M("1_0 1_2^-1")) == 2);
  CHECK(!qchar_is_thin(rep.qchar));
  CHECK(qchar_is_thin(fm_algorithm(CartanData::parse("A2"), M("1_0")).qchar));
  CHECK(fm_algorithm(CartanData::parse("A2"), M("1_0")).qchar.size() == 3);
}

TEST_CASE("FM budget and affine types") {
  const auto rep = fm_algorithm(CartanData::parse("A2~"), M("1_0"), {500, 1});
  CHECK(rep.verdict == FmVerdict::Inconclusive);
  CHECK(!rep.diagnostic.empty());
  CHECK_THROWS_AS(fm_algorithm(CartanData::parse("A2"), M("1_0^-1")), std::invalid_argument);
}

TEST_CASE("FM output does not depend on the thread count") {
  const auto d4 = CartanData::parse("D4");
  const Monomial x = kr_highest(d4, 2, 2, 0);
  const auto one = fm_algorithm(d4, x, {200000, 1});
  const auto four = fm_algorithm(d4, x, {200000, 4});
  CHECK(one.verdict == four.verdict);
  CHECK(one.qchar == four.qchar);
  CHECK(one.settled == four.settled);
}

TEST_CASE("ordered terms put the highest monomial first") {
  const auto a2 = CartanData::parse("A2");
  const auto rep = fm_algorithm(a2, M("1_0"));
  const auto terms = ordered_terms(a2, rep.qchar);
  REQUIRE(terms.size() == 3);
  CHECK(terms[0].first == M("1_0"));
  CHECK(terms[1].first == M("1_2^-1 2_1"));
  CHECK(terms[2].first == M("2_3^-1"));
}
