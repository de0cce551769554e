#include "cli.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "graphconfig/bounds.hpp"
#include "graphconfig/errors.hpp"
#include "graphconfig/oracle.hpp"
#include "graphconfig/sweep.hpp"

namespace graphconfig::cli {

namespace {

MetricGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read graph file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_graph(text.str());
}

std::string tuple(const std::vector<std::size_t>& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + std::to_string(v[i]);
  return out + ")";
}

void print_json(std::ostream& out, const nlohmann::json& doc) { out << doc.dump(2) << '\n'; }

int analyze(const RunConfig& c, std::ostream& out) {
  if (!c.r) throw InputError("analyze needs --r");
  const CellAtlas atlas(load_graph(c.graph_path), c.n);
  const RestraintVector r = parse_restraint(c.n, *c.r);
  const ConfigComplex x = build_complex(atlas, r);
  if (c.format == Format::json) {
    nlohmann::json doc = complex_report(x);
    nlohmann::json rs = nlohmann::json::array();
    for (const auto& v : r.values()) rs.push_back(to_string(v));
    doc["r"] = std::move(rs);
    doc["n"] = c.n;
    print_json(out, doc);
  } else {
    const Invariants inv = invariants(x);
    out << "cells       " << x.size() << '\n'
        << "f_vector    " << tuple(inv.f_vector) << '\n'
        << "components  " << inv.components << '\n'
        << "euler       " << inv.euler << '\n'
        << "betti_mod2  " << tuple(inv.betti_mod2) << '\n';
  }
  return 0;
}

int sweep(const RunConfig& c, std::ostream& out) {
  const CellAtlas atlas(load_graph(c.graph_path), c.n);
  const Ray ray = c.ray ? parse_ray(c.n, *c.ray) : Ray::scalar(c.n);
  const CriticalSweep s = sweep_types(atlas, ray);
  if (c.format == Format::json) {
    print_json(out, sweep_report(s, c.include_empty));
  } else {
    out << sweep_table(s, c.include_empty);
  }
  return 0;
}

int bound(const RunConfig& c, std::ostream& out) {
  const BoundReport report = bound_report(static_cast<long>(c.n), c.edges, c.dim);
  const nlohmann::json doc = bound_report_json(report);
  if (c.format == Format::json) {
    print_json(out, doc);
  } else {
    for (const auto& [key, value] : doc.items()) out << std::left << std::setw(24) << key << value.dump() << '\n';
  }
  return 0;
}

int corolla_command(const RunConfig& c, std::ostream& out) {
  const std::string text = serialize_graph(corolla(c.k));
  if (!c.output) {
    out << text;
    return 0;
  }
  std::ofstream file(*c.output);
  if (!file || !(file << text)) throw InputError("cannot write '" + *c.output + "'");
  return 0;
}

/// Both oracles against the main pipeline at each restraint value.
int verify(const RunConfig& c, std::ostream& out) {
  const MetricGraph g = load_graph(c.graph_path);
  const CellAtlas atlas(g, c.n);
  const Ray ray = Ray::scalar(c.n);
  const auto candidates = critical_candidates(atlas, ray);
  std::vector<Rational> extra;
  for (const auto& cand : candidates) extra.push_back(cand.t);

  std::vector<RestraintVector> samples;
  if (c.r) {
    samples.push_back(parse_restraint(c.n, *c.r));
  } else {
    for (const auto& iv : sweep_types(atlas, ray, {false}).intervals) {
      if (!iv.empty) samples.push_back(ray.at(iv.sample));
    }
  }

  nlohmann::json checks = nlohmann::json::array();
  bool all = true;
  auto record = [&](nlohmann::json check) {
    all = all && check["agree"].get<bool>();
    checks.push_back(std::move(check));
  };
  for (const auto& r : samples) {
    nlohmann::json rs = nlohmann::json::array();
    for (const auto& v : r.values()) rs.push_back(to_string(v));

    std::size_t compared = 0;
    std::vector<std::string> mismatched;
    for (std::size_t i = 0; i < atlas.size(); ++i) {
      const auto* system = atlas.system(i);
      if (!system || system->size() > 14 || system->dimension() > 3) continue;
      const PolytopeType type = atlas.enumerator(i)->type_at(r);
      const FacePoset expected = bruteforce_face_poset(*system, r);
      const FacePoset actual = type.empty() ? FacePoset{} : face_poset(*system, type);
      ++compared;
      if (!(expected == actual)) mismatched.push_back(atlas.cell(i).to_string());
    }
    record({{"check", "face_poset"}, {"r", rs}, {"cells", compared}, {"mismatched", mismatched},
            {"agree", mismatched.empty()}});

    const Invariants inv = invariants(build_complex(atlas, r));
    const Rational mesh = c.mesh ? parse_rational(*c.mesh) : auto_mesh(g, r, extra);
    for (const Rational& m : {mesh, Rational(mesh / 2)}) {
      const DiscreteInvariants d = discrete_invariants(g, c.n, r, m);
      const long b1 = inv.betti_mod2.size() > 1 ? static_cast<long>(inv.betti_mod2[1]) : 0;
      record({{"check", "components"}, {"r", rs}, {"mesh", to_string(m)}, {"complex", inv.components},
              {"oracle", d.components}, {"agree", d.components == inv.components}});
      record({{"check", "betti_1"}, {"r", rs}, {"mesh", to_string(m)}, {"complex", b1},
              {"oracle", d.cycle_rank}, {"agree", d.cycle_rank == b1}});
    }
  }

  if (c.format == Format::json) {
    print_json(out, {{"checks", checks}, {"agree", all}});
  } else {
    for (const auto& check : checks) {
      out << std::left << std::setw(12) << check["check"].get<std::string>() << std::setw(8)
          << (check["agree"].get<bool>() ? "agree" : "DISAGREE") << check["r"].dump();
      if (check.contains("mesh")) out << " mesh " << check["mesh"].get<std::string>();
      out << '\n';
    }
    out << (all ? "all checks agree" : "disagreement found") << '\n';
  }
  return all ? 0 : 2;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    switch (config.command) {
      case Command::analyze:
        return analyze(config, out);
      case Command::sweep:
        return sweep(config, out);
      case Command::bound:
        return bound(config, out);
      case Command::corolla:
        return corolla_command(config, out);
      case Command::verify:
        return verify(config, out);
    }
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << '\n';
    return 2;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Restricted configuration spaces of metric graphs"};
  app.require_subcommand(1);
  RunConfig config;
  std::string format = "json";
  const std::map<std::string, Format> formats{{"json", Format::json}, {"table", Format::table}};

  auto add_common = [&](CLI::App* sub, bool graph) {
    if (graph) sub->add_option("graph", config.graph_path, "Graph file")->required();
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "table"}));
  };
  auto add_points = [&](CLI::App* sub) {
    sub->add_option("--n", config.n, "Number of points")->required()->check(CLI::PositiveNumber);
  };

  auto* analyze_cmd = app.add_subcommand("analyze", "Cell complex and invariants at a fixed restraint");
  add_common(analyze_cmd, true);
  add_points(analyze_cmd);
  analyze_cmd->add_option("--r", config.r, "Restraint: p/q, or a comma list over pairs")->required();

  auto* sweep_cmd = app.add_subcommand("sweep", "Critical values and classes along a ray");
  add_common(sweep_cmd, true);
  add_points(sweep_cmd);
  sweep_cmd->add_option("--ray", config.ray, "base;direction (default: r_ij = t)");
  sweep_cmd->add_flag("--include-empty", config.include_empty, "Count the empty space as a class");

  auto* bound_cmd = app.add_subcommand("bound", "Closed-form counting bounds");
  add_common(bound_cmd, false);
  add_points(bound_cmd);
  bound_cmd->add_option("--edges", config.edges, "Number of edges")->required()->check(CLI::PositiveNumber);
  bound_cmd->add_option("--dim", config.dim, "Parameter space dimension")->required()->check(CLI::NonNegativeNumber);

  auto* corolla_cmd = app.add_subcommand("corolla", "Write the k-corolla graph");
  corolla_cmd->add_option("--k", config.k, "Number of edges")->required()->check(CLI::PositiveNumber);
  corolla_cmd->add_option("-o,--output", config.output, "Output file (default: stdout)");

  auto* verify_cmd = app.add_subcommand("verify", "Cross-check against the brute-force oracles");
  add_common(verify_cmd, true);
  add_points(verify_cmd);
  verify_cmd->add_option("--mesh", config.mesh, "Grid spacing p/q (default: automatic)");
  verify_cmd->add_option("--r", config.r, "Restraint (default: every sweep interval midpoint)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  config.format = formats.at(format);
  if (analyze_cmd->parsed()) config.command = Command::analyze;
  if (sweep_cmd->parsed()) config.command = Command::sweep;
  if (bound_cmd->parsed()) config.command = Command::bound;
  if (corolla_cmd->parsed()) config.command = Command::corolla;
  if (verify_cmd->parsed()) config.command = Command::verify;
  return run(config, out, err);
}

}  // namespace graphconfig::cli
