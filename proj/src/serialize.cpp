#include "krsmall/serialize.hpp"

#include <stdexcept>

namespace krsmall {

Json to_json(const Monomial& m) {
  Json out = Json::array();
  for (const auto& f : m.factors())
    out.push_back({{"node", f.node}, {"power", f.power}, {"exponent", f.exponent}});
  return out;
}

Monomial monomial_from_json(const Json& j) {
  if (!j.is_array())
    throw std::invalid_argument("monomial JSON must be an array");
  std::vector<YFactor> f;
  for (const auto& e : j)
    f.push_back({e.at("node").get<int>(), e.at("power").get<int>(), e.at("exponent").get<int>()});
  return Monomial::from_factors(std::move(f));
}

Json to_json(const AWitness& w) {
  Json out = Json::array();
  for (const auto& e : w.entries())
    out.push_back({{"node", e.node}, {"power", e.power}, {"count", e.exponent}});
  return out;
}

AWitness witness_from_json(const Json& j) {
  AWitness w;
  for (const auto& e : j)
    w.add(e.at("node").get<int>(), e.at("power").get<int>(), e.at("count").get<int>());
  return w;
}

Json to_json(const QCharacter& chi) {
  Json out;
  out["highest"] = chi.highest() ? to_json(*chi.highest()) : Json(nullptr);
  Json terms = Json::array();
  for (const auto& [m, n] : chi.terms())
    terms.push_back({{"monomial", to_json(m)}, {"multiplicity", n}});
  out["terms"] = std::move(terms);
  return out;
}

QCharacter qchar_from_json(const Json& j) {
  QCharacter chi;
  if (!j.at("highest").is_null())
    chi.set_highest(monomial_from_json(j.at("highest")));
  for (const auto& t : j.at("terms"))
    chi.add(monomial_from_json(t.at("monomial")), t.at("multiplicity").get<long>());
  return chi;
}

Json to_json(const std::vector<ChainStep>& chain) {
  Json out = Json::array();
  for (const auto& s : chain)
    out.push_back({{"node", s.node}, {"monomial", to_json(s.root)}});
  return out;
}

std::vector<ChainStep> chain_from_json(const Json& j) {
  std::vector<ChainStep> out;
  for (const auto& s : j)
    out.push_back({s.at("node").get<int>(), monomial_from_json(s.at("monomial"))});
  return out;
}

Json to_json(const GenerationTrace& t) {
  Json out;
  out["source"] = to_json(t.source);
  out["steps"] = t.steps;
  out["partial"] = t.partial;
  out["level_capped"] = t.level_capped;
  out["witness"] = t.witness ? to_json(t.entries[*t.witness].monomial) : Json(nullptr);
  Json gen = Json::array();
  for (std::size_t k = 0; k < t.entries.size(); ++k) {
    const auto& e = t.entries[k];
    gen.push_back({{"monomial", to_json(e.monomial)},
                   {"level", e.level},
                   {"witness", to_json(e.witness)},
                   {"chain", to_json(t.chain(k))}});
  }
  out["generated"] = std::move(gen);
  return out;
}

Json to_json(const SpecialnessReport& r) {
  Json out;
  out["verdict"] = to_string(r.verdict);
  out["settled"] = r.settled;
  out["thin"] = qchar_is_thin(r.qchar);
  out["witness"] = r.witness ? to_json(*r.witness) : Json(nullptr);
  out["chain"] = to_json(r.chain);
  out["diagnostic"] = r.diagnostic;
  out["qchar"] = to_json(r.qchar);
  return out;
}

Json to_json(const EnumerationResult& e) {
  Json out;
  out["highest"] = to_json(e.highest);
  out["partial"] = e.partial;
  out["nodes_visited"] = e.nodes_visited;
  Json entries = Json::array();
  for (const auto& d : e.entries)
    entries.push_back({{"monomial", to_json(d.monomial)}, {"witness", to_json(d.witness)}});
  out["dominant"] = std::move(entries);
  return out;
}

Json to_json(const RemarkReport& r) {
  Json out;
  out["all_passed"] = r.all_passed();
  Json list = Json::array();
  for (const auto& rc : r.remarks) {
    Json gen = Json::array();
    for (const auto& [m, chain] : rc.generated)
      gen.push_back({{"monomial", to_json(m)}, {"chain", to_json(chain)}});
    list.push_back({{"name", rc.name},
                    {"diagram", rc.diagram},
                    {"highest", to_json(rc.highest)},
                    {"start", to_json(rc.start)},
                    {"passed", rc.passed},
                    {"failures", rc.failures},
                    {"generated", std::move(gen)},
                    {"witness", rc.witness ? to_json(*rc.witness) : Json(nullptr)},
                    {"witness_chain", to_json(rc.witness_chain)}});
  }
  out["remarks"] = std::move(list);
  return out;
}

namespace {

Json check_to_json(const MonomialCheck& ch) {
  return {{"monomial", to_json(ch.monomial)},
          {"witness", to_json(ch.witness)},
          {"fm", to_string(ch.fm)},
          {"fm_diagnostic", ch.fm_diagnostic},
          {"process_ran", ch.process_ran},
          {"process_partial", ch.process_partial},
          {"certificate", ch.certificate ? to_json(*ch.certificate) : Json(nullptr)},
          {"chain", to_json(ch.chain)}};
}

FmVerdict fm_from_string(const std::string& s) {
  for (auto v : {FmVerdict::SpecialFMConsistent, FmVerdict::NotSpecial, FmVerdict::Inconclusive})
    if (s == to_string(v))
      return v;
  throw std::invalid_argument("unknown FM verdict '" + s + "'");
}

MonomialCheck check_from_json(const Json& j) {
  MonomialCheck ch;
  ch.monomial = monomial_from_json(j.at("monomial"));
  ch.witness = witness_from_json(j.at("witness"));
  ch.fm = fm_from_string(j.at("fm").get<std::string>());
  ch.fm_diagnostic = j.at("fm_diagnostic").get<std::string>();
  ch.process_ran = j.at("process_ran").get<bool>();
  ch.process_partial = j.at("process_partial").get<bool>();
  if (!j.at("certificate").is_null())
    ch.certificate = monomial_from_json(j.at("certificate"));
  ch.chain = chain_from_json(j.at("chain"));
  return ch;
}

} // namespace

Json to_json(const SmallnessVerdict& v) {
  Json out;
  out["diagram"] = v.diagram;
  out["node"] = v.node;
  out["k"] = v.k;
  out["r"] = v.r;
  out["theoretical"] = to_string(v.theoretical);
  if (v.empirical_ran) {
    Json emp;
    emp["verdict"] = to_string(v.empirical);
    emp["dominant_count"] = v.dominant_count();
    emp["enumeration_partial"] = v.enumeration_partial;
    Json wit = Json::array();
    for (const auto* ch : v.witnesses())
      wit.push_back({{"monomial", to_json(ch->monomial)},
                     {"certificate", to_json(*ch->certificate)},
                     {"chain", to_json(ch->chain)}});
    emp["witnesses"] = std::move(wit);
    Json und = Json::array();
    for (const auto* ch : v.undetermined())
      und.push_back({{"monomial", to_json(ch->monomial)}, {"fm", to_string(ch->fm)}, {"diagnostic", ch->fm_diagnostic}});
    emp["undetermined"] = std::move(und);
    Json checks = Json::array();
    for (const auto& ch : v.checks)
      checks.push_back(check_to_json(ch));
    emp["checks"] = std::move(checks);
    out["empirical"] = std::move(emp);
  } else {
    out["empirical"] = nullptr;
  }
  out["agree"] = v.agree;
  return out;
}

SmallnessVerdict verdict_from_json(const Json& j) {
  SmallnessVerdict v;
  v.diagram = j.at("diagram").get<std::string>();
  v.node = j.at("node").get<int>();
  v.k = j.at("k").get<int>();
  v.r = j.at("r").get<int>();
  const auto th = j.at("theoretical").get<std::string>();
  if (th != "Small" && th != "NotSmall")
    throw std::invalid_argument("unknown theoretical verdict '" + th + "'");
  v.theoretical = th == "Small" ? Smallness::Small : Smallness::NotSmall;
  const Json& emp = j.at("empirical");
  if (!emp.is_null()) {
    v.empirical_ran = true;
    const auto e = emp.at("verdict").get<std::string>();
    if (e == "Small")
      v.empirical = EmpiricalSmallness::Small;
    else if (e == "NotSmall")
      v.empirical = EmpiricalSmallness::NotSmall;
    else if (e == "Undetermined")
      v.empirical = EmpiricalSmallness::Undetermined;
    else
      throw std::invalid_argument("unknown empirical verdict '" + e + "'");
    v.enumeration_partial = emp.at("enumeration_partial").get<bool>();
    for (const auto& ch : emp.at("checks"))
      v.checks.push_back(check_from_json(ch));
  }
  v.agree = j.at("agree").get<bool>();
  return v;
}

} // namespace krsmall
