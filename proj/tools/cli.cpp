#include "cli.hpp"

#include <CLI11.hpp>

#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "krsmall/cartan.hpp"
#include "krsmall/expansion.hpp"
#include "krsmall/monomial.hpp"
#include "krsmall/serialize.hpp"
#include "krsmall/smallness.hpp"

namespace krsmall::cli {

namespace {

struct RunConfig {
  std::string diagram;
  int node = 1;
  int k = 1;
  int r = 0;
  Budgets budgets;
  bool json = false;
  bool empirical = false;
  bool stop = false;
  int kmax = 4;
  std::vector<std::string> monomials;
};

std::string chain_text(const std::vector<ChainStep>& chain) {
  if (chain.empty())
    return "(source)";
  std::string out;
  for (const auto& s : chain) {
    if (!out.empty())
      out += " ; ";
    out += "L_" + std::to_string(s.node) + "(" + s.root.str() + ")";
  }
  return out;
}

std::string qchar_text(const CartanData& c, const QCharacter& chi) {
  std::string out;
  for (const auto& [m, n] : ordered_terms(c, chi)) {
    if (!out.empty())
      out += " + ";
    if (n != 1)
      out += std::to_string(n) + "*";
    out += m.str();
  }
  return out;
}

Json envelope(const std::string& command) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  return j;
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

std::vector<std::string> expand_diagram_list(const std::string& list) {
  std::vector<std::string> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty())
      continue;
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(item);
      continue;
    }
    const CartanData lo = CartanData::parse(item.substr(0, dots));
    const CartanData hi = CartanData::parse(item.substr(dots + 2));
    if (lo.series() != hi.series() || lo.affine() != hi.affine() || lo.rank() > hi.rank())
      throw std::invalid_argument("bad diagram range '" + item + "'");
    for (int n = lo.rank(); n <= hi.rank(); ++n)
      out.push_back(CartanData::build(lo.series(), n, lo.affine()).name());
  }
  if (out.empty())
    throw std::invalid_argument("empty diagram list");
  return out;
}

int cmd_classify(const RunConfig& cfg, std::ostream& out) {
  const CartanData c = CartanData::parse(cfg.diagram);
  const SmallnessVerdict v = cfg.empirical ? check_small_empirical(c, cfg.node, cfg.k, cfg.r, cfg.budgets)
                                           : theoretical_verdict(c, cfg.node, cfg.k, cfg.r);
  if (cfg.json) {
    Json j = envelope("classify");
    j["verdict"] = to_json(v);
    emit(out, j);
  } else if (!cfg.empirical) {
    out << to_string(v.theoretical) << '\n';
  } else {
    out << "theoretical: " << to_string(v.theoretical) << '\n';
    out << "empirical: " << to_string(v.empirical) << '\n';
    out << "dominant monomials: " << v.dominant_count() << '\n';
    for (const auto* w : v.witnesses())
      out << "witness: " << w->monomial.str() << " -> " << w->certificate->str() << " via " << chain_text(w->chain)
          << '\n';
    for (const auto* u : v.undetermined())
      out << "undetermined: " << u->monomial.str() << " (" << to_string(u->fm) << ")\n";
    out << "agree: " << (v.agree ? "yes" : "no") << '\n';
  }
  if (v.enumeration_partial)
    return kBudgetPartial;
  return kOk;
}

int cmd_qchar(const RunConfig& cfg, std::ostream& out) {
  const CartanData c = CartanData::parse(cfg.diagram);
  const Monomial m = Monomial::parse(cfg.monomials.at(0));
  if (!is_dominant(m))
    throw std::invalid_argument("monomial " + m.str() + " is not dominant");
  const SpecialnessReport rep = fm_algorithm(c, m, {cfg.budgets.fm_steps, cfg.budgets.threads});
  if (cfg.json) {
    Json j = envelope("qchar");
    j["monomial"] = to_json(m);
    j["report"] = to_json(rep);
    emit(out, j);
  } else if (rep.verdict == FmVerdict::SpecialFMConsistent) {
    out << qchar_text(c, rep.qchar) << '\n';
  } else if (rep.verdict == FmVerdict::NotSpecial) {
    out << "NotSpecial witness " << rep.witness->str() << '\n';
    out << "chain: " << chain_text(rep.chain) << '\n';
  } else {
    out << "Inconclusive: " << rep.diagnostic << '\n';
  }
  return rep.verdict == FmVerdict::Inconclusive ? kBudgetPartial : kOk;
}

int cmd_enumerate(const RunConfig& cfg, std::ostream& out) {
  const CartanData c = CartanData::parse(cfg.diagram);
  const EnumerationResult e = enumerate_dominant_below(c, cfg.node, cfg.k, cfg.r, cfg.budgets.enum_nodes);
  if (cfg.json) {
    Json j = envelope("enumerate");
    j["diagram"] = c.name();
    j["node"] = cfg.node;
    j["k"] = cfg.k;
    j["r"] = cfg.r;
    j["result"] = to_json(e);
    emit(out, j);
  } else {
    for (const auto& d : e.entries)
      out << d.monomial.str() << "\tv=" << d.witness.str() << '\n';
    out << e.entries.size() << " dominant monomials" << (e.partial ? " (partial: budget exhausted)" : "") << '\n';
  }
  return e.partial ? kBudgetPartial : kOk;
}

int cmd_process(const RunConfig& cfg, std::ostream& out) {
  const CartanData c = CartanData::parse(cfg.diagram);
  const Monomial m = Monomial::parse(cfg.monomials.at(0));
  ProcessOptions opts;
  opts.budget = cfg.budgets.process_steps;
  opts.stop_on_witness = cfg.stop;
  const GenerationTrace t = generate_process(c, m, opts);
  if (cfg.json) {
    Json j = envelope("process");
    j["trace"] = to_json(t);
    emit(out, j);
  } else {
    for (std::size_t k = 0; k < t.entries.size(); ++k)
      out << t.entries[k].level << '\t' << t.entries[k].monomial.str() << '\n';
    if (t.witness)
      out << "dominant: " << t.entries[*t.witness].monomial.str() << " via " << chain_text(t.chain(*t.witness)) << '\n';
    out << t.entries.size() << " monomials, " << t.steps << " expansions" << (t.partial ? " (partial)" : "") << '\n';
  }
  return t.partial ? kBudgetPartial : kOk;
}

int cmd_expand(const RunConfig& cfg, std::ostream& out) {
  const CartanData c = CartanData::parse(cfg.diagram);
  const Monomial m = Monomial::parse(cfg.monomials.at(0));
  const QCharacter chi = expand_Li(c, m, cfg.node);
  if (cfg.json) {
    Json j = envelope("expand");
    j["node"] = cfg.node;
    j["qchar"] = to_json(chi);
    emit(out, j);
  } else {
    out << qchar_text(c, chi) << '\n';
  }
  return kOk;
}

int cmd_divide(const RunConfig& cfg, std::ostream& out) {
  const CartanData c = CartanData::parse(cfg.diagram);
  if (cfg.monomials.size() != 2)
    throw std::invalid_argument("divide takes a target and a source monomial");
  const Monomial target = Monomial::parse(cfg.monomials[0]);
  const Monomial source = Monomial::parse(cfg.monomials[1]);
  const auto w = divide_as_a_product(c, target, source);
  if (cfg.json) {
    Json j = envelope("divide");
    j["target"] = to_json(target);
    j["source"] = to_json(source);
    j["witness"] = w ? to_json(*w) : Json(nullptr);
    emit(out, j);
  } else {
    out << (w ? w->str() : std::string("none")) << '\n';
  }
  return kOk;
}

int cmd_nodes(const RunConfig& cfg, std::ostream& out) {
  const CartanData c = CartanData::parse(cfg.diagram);
  const NodeClassification nc = classify_nodes(c);
  auto d_text = [](const std::optional<int>& d) { return d ? std::to_string(*d) : std::string("inf"); };
  if (cfg.json) {
    Json j = envelope("nodes");
    j["diagram"] = c.name();
    j["cartan"] = c.matrix();
    Json nodes = Json::array();
    for (std::size_t k = 0; k < nc.labels.size(); ++k)
      nodes.push_back({{"node", nc.labels[k]},
                       {"kind", to_string(nc.kind[k])},
                       {"d", nc.d[k] ? Json(*nc.d[k]) : Json(nullptr)},
                       {"degree", nc.degree[k]},
                       {"symmetrizer", c.symmetrizer(nc.labels[k])}});
    j["nodes"] = std::move(nodes);
    emit(out, j);
  } else {
    out << "node\tkind\td\tdegree\tneighbors\n";
    for (std::size_t k = 0; k < nc.labels.size(); ++k) {
      out << nc.labels[k] << '\t' << to_string(nc.kind[k]) << '\t' << d_text(nc.d[k]) << '\t' << nc.degree[k] << '\t';
      const auto& nb = c.neighbors(nc.labels[k]);
      for (std::size_t t = 0; t < nb.size(); ++t)
        out << (t ? "," : "") << nb[t];
      out << '\n';
    }
  }
  return kOk;
}

int cmd_verify_remarks(const RunConfig& cfg, std::ostream& out) {
  const RemarkReport rep = verify_remarks(cfg.budgets);
  if (cfg.json) {
    Json j = envelope("verify-remarks");
    j["report"] = to_json(rep);
    emit(out, j);
  } else {
    std::size_t passed = 0;
    for (const auto& r : rep.remarks) {
      out << (r.passed ? "PASS " : "FAIL ") << r.name << ": start " << r.start.str();
      if (r.witness)
        out << ", witness " << r.witness->str();
      out << '\n';
      for (const auto& f : r.failures)
        out << "  " << f << '\n';
      passed += r.passed ? 1 : 0;
    }
    out << passed << "/" << rep.remarks.size() << " pass\n";
  }
  return rep.all_passed() ? kOk : kRemarkMismatch;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
  Json rows = Json::array();
  std::size_t disagreements = 0;
  bool partial = false;
  if (!cfg.json)
    out << "diagram\tnode\tk\ttheoretical\tempirical\tdominant\tagree\n";
  for (const auto& name : expand_diagram_list(cfg.diagram)) {
    const CartanData c = CartanData::parse(name);
    for (int i : c.nodes()) {
      for (int k = 1; k <= cfg.kmax; ++k) {
        const SmallnessVerdict v = check_small_empirical(c, i, k, cfg.r, cfg.budgets);
        disagreements += v.agree ? 0 : 1;
        partial = partial || v.enumeration_partial;
        if (cfg.json)
          rows.push_back(to_json(v));
        else
          out << c.name() << '\t' << i << '\t' << k << '\t' << to_string(v.theoretical) << '\t'
              << to_string(v.empirical) << '\t' << v.dominant_count() << '\t' << (v.agree ? "yes" : "no") << '\n';
      }
    }
  }
  if (cfg.json) {
    Json j = envelope("sweep");
    j["rows"] = std::move(rows);
    j["disagreements"] = disagreements;
    emit(out, j);
  } else {
    out << (disagreements == 0 ? std::string("all rows agree") : std::to_string(disagreements) + " rows disagree")
        << '\n';
  }
  if (partial)
    return kBudgetPartial;
  return disagreements == 0 ? kOk : kDisagreement;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg.budgets = budgets_from_env();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  }

  CLI::App app{"Kirillov-Reshetikhin smallness toolkit: q-characters, dominant monomials, smallness verdicts"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "krsmall 1.0");
  app.add_flag("--json", cfg.json, "Emit JSON");
  app.add_option("--fm-steps", cfg.budgets.fm_steps, "FM budget (settled monomials)")->check(CLI::PositiveNumber);
  app.add_option("--process-steps", cfg.budgets.process_steps, "Generation budget (expansions)")
      ->check(CLI::PositiveNumber);
  app.add_option("--enum-nodes", cfg.budgets.enum_nodes, "Enumeration budget (search nodes)")
      ->check(CLI::PositiveNumber);
  app.add_option("--threads", cfg.budgets.threads, "Worker threads")->check(CLI::PositiveNumber);

  auto diagram = [&](CLI::App* sub) { sub->add_option("--g", cfg.diagram, "Diagram, e.g. A3, D4, A2~")->required(); };
  auto node = [&](CLI::App* sub, bool required) {
    auto* o = sub->add_option("--i", cfg.node, "Node label");
    if (required)
      o->required();
  };
  auto level = [&](CLI::App* sub) {
    sub->add_option("--k", cfg.k, "KR level")->required()->check(CLI::PositiveNumber);
    sub->add_option("--r", cfg.r, "Base power (default 0)");
  };
  auto global_flags = [&](CLI::App* sub) {
    sub->add_flag("--json", cfg.json, "Emit JSON");
    sub->add_option("--fm-steps", cfg.budgets.fm_steps, "FM budget")->check(CLI::PositiveNumber);
    sub->add_option("--process-steps", cfg.budgets.process_steps, "Generation budget")->check(CLI::PositiveNumber);
    sub->add_option("--enum-nodes", cfg.budgets.enum_nodes, "Enumeration budget")->check(CLI::PositiveNumber);
    sub->add_option("--threads", cfg.budgets.threads, "Worker threads")->check(CLI::PositiveNumber);
  };

  auto* classify_cmd = app.add_subcommand("classify", "Smallness of the standard module M(X_{k,q^r}^{(i)})");
  diagram(classify_cmd);
  node(classify_cmd, true);
  level(classify_cmd);
  classify_cmd->add_flag("--empirical", cfg.empirical, "Also enumerate and check every dominant m' <= X");
  global_flags(classify_cmd);

  auto* qchar_cmd = app.add_subcommand("qchar", "FM algorithm on a dominant monomial");
  diagram(qchar_cmd);
  qchar_cmd->add_option("monomial", cfg.monomials, "Monomial, e.g. \"1_1 3_1 2_4\"")->required()->expected(1);
  global_flags(qchar_cmd);

  auto* enum_cmd = app.add_subcommand("enumerate", "Dominant monomials below X_{k,q^r}^{(i)}");
  diagram(enum_cmd);
  node(enum_cmd, true);
  level(enum_cmd);
  global_flags(enum_cmd);

  auto* process_cmd = app.add_subcommand("process", "Certified generation of monomials of L(m)");
  diagram(process_cmd);
  process_cmd->add_option("monomial", cfg.monomials, "Dominant monomial")->required()->expected(1);
  process_cmd->add_flag("--stop", cfg.stop, "Stop at the first dominant monomial below m");
  global_flags(process_cmd);

  auto* expand_cmd = app.add_subcommand("expand", "Single-node expansion L_i(m)");
  diagram(expand_cmd);
  node(expand_cmd, true);
  expand_cmd->add_option("monomial", cfg.monomials, "i-dominant monomial")->required()->expected(1);
  global_flags(expand_cmd);

  auto* divide_cmd = app.add_subcommand("divide", "A-witness of target <= source");
  diagram(divide_cmd);
  divide_cmd->add_option("monomials", cfg.monomials, "Target and source monomials")->required()->expected(2);
  global_flags(divide_cmd);

  auto* nodes_cmd = app.add_subcommand("nodes", "Cartan matrix and node classification");
  diagram(nodes_cmd);
  global_flags(nodes_cmd);

  auto* remarks_cmd = app.add_subcommand("verify-remarks", "Replay the worked non-smallness examples");
  global_flags(remarks_cmd);

  auto* sweep_cmd = app.add_subcommand("sweep", "Empirical vs theoretical verdicts over diagrams, nodes and levels");
  sweep_cmd->add_option("--g", cfg.diagram, "Diagram list, e.g. A1..A4,D4")->required();
  sweep_cmd->add_option("--kmax", cfg.kmax, "Largest level")->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--r", cfg.r, "Base power (default 0)");
  global_flags(sweep_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0)
      return app.exit(e, out, err);
    err << "error: " << e.what() << '\n';
    return kParseError;
  }

  try {
    if (*classify_cmd)
      return cmd_classify(cfg, out);
    if (*qchar_cmd)
      return cmd_qchar(cfg, out);
    if (*enum_cmd)
      return cmd_enumerate(cfg, out);
    if (*process_cmd)
      return cmd_process(cfg, out);
    if (*expand_cmd)
      return cmd_expand(cfg, out);
    if (*divide_cmd)
      return cmd_divide(cfg, out);
    if (*nodes_cmd)
      return cmd_nodes(cfg, out);
    if (*remarks_cmd)
      return cmd_verify_remarks(cfg, out);
    if (*sweep_cmd)
      return cmd_sweep(cfg, out);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  }
  return kParseError;
}

} // namespace krsmall::cli
