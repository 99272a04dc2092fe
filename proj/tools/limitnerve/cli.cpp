#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "limitnerve/contraction.hpp"
#include "limitnerve/error.hpp"
#include "limitnerve/export.hpp"
#include "limitnerve/model.hpp"

namespace limitnerve::cli {

namespace {

struct Config {
  std::string command;
  std::string input;
  std::size_t level = 0;
  std::optional<std::string> out_dir;
  std::vector<std::string> formats{"json", "dot"};
  std::optional<std::size_t> max_states;
  std::size_t jobs = 0;
  std::optional<std::uint64_t> seed;
  std::size_t radius = 2;
  std::size_t max_depth = 8;
};

/// Undecided outcome that is not an error.
struct Undecided {
  std::string message;
};

bool wants(const Config& c, const std::string& format) {
  return std::find(c.formats.begin(), c.formats.end(), format) != c.formats.end();
}

void write_file(const Config& c, const std::string& name, const std::string& content, std::ostream& out) {
  if (!c.out_dir) return;
  const std::filesystem::path dir(*c.out_dir);
  std::filesystem::create_directories(dir);
  const auto path = dir / name;
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + path.string() + "'");
  f << content;
  out << "wrote " << path.string() << "\n";
}

std::string counts(const std::vector<std::size_t>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
  return s + ")";
}

std::vector<std::string> names_of(GroupEngine& engine, const Nucleus& nucleus) {
  std::vector<std::string> names;
  for (const Element e : nucleus.elements()) names.push_back(engine.to_string(e));
  return names;
}

Nucleus require_nucleus(GroupEngine& engine) {
  auto verdict = is_contracting(engine);
  if (!verdict.contracting) throw Undecided{"contraction unknown within budget (" + verdict.reason + ")"};
  return std::move(*verdict.nucleus);
}

// One generator per {g, g^-1} pair of the nucleus, the one listed first.
std::vector<std::size_t> edge_classes(const Nucleus& nucleus) {
  std::vector<std::size_t> out;
  for (std::size_t g = 1; g < nucleus.size(); ++g)
    if (nucleus.inverse(g) >= g) out.push_back(g);
  return out;
}

int cmd_nucleus(const Config& c, GroupEngine& engine, std::ostream& out) {
  const Nucleus nucleus = require_nucleus(engine);
  const auto names = names_of(engine, nucleus);
  out << "nucleus: " << nucleus.size() << (nucleus.size() == 1 ? " element:" : " elements:");
  for (const auto& n : names) out << " " << n;
  out << "\n";
  if (wants(c, "dot")) write_file(c, "moore.dot", moore_dot(engine.recursion(), moore_diagram(nucleus), names), out);
  if (wants(c, "json")) write_file(c, "nucleus.json", nucleus_json(nucleus, names), out);
  return kOk;
}

int cmd_model(const Config& c, GroupEngine& engine, std::ostream& out) {
  const Nucleus nucleus = require_nucleus(engine);
  const Nerve nerve = build_nerve(engine, nucleus);
  const auto& rec = engine.recursion();
  const auto cutpaste = cutpaste_models(rec, nerve, c.level);
  if (c.seed) {
    const auto shuffled = cutpaste_models(rec, nerve, c.level, TowerOptions{c.seed});
    for (std::size_t n = 0; n <= c.level; ++n)
      if (model_json(shuffled[n]) != model_json(cutpaste[n]))
        throw ValidationFailure("confluence", "shuffled identifications changed J_" + std::to_string(n));
    out << "confluence: identical partitions under seed " << *c.seed << "\n";
  }
  ModelOptions options;
  options.jobs = c.jobs;
  std::optional<DirectModel> previous;
  std::ostringstream homology;
  for (std::size_t n = 0; n <= c.level; ++n) {
    DirectModel direct = direct_Jn(nerve, n, options);
    const LeveledModel model = direct_model(rec, nerve, direct, previous ? &*previous : nullptr);
    const CrossValidation report = cross_validate(engine, nerve, direct, cutpaste[n]);
    std::ostringstream line;
    line << "J_" << n << ": f = " << counts(report.direct_f) << ", subdivided f = " << counts(report.cutpaste_f)
         << ", euler = " << report.euler << ", betti = " << counts(report.betti);
    if (cutpaste[n].iota_conflicts) line << ", iota conflicts = " << cutpaste[n].iota_conflicts;
    line << "\n";
    out << line.str();
    homology << line.str();
    const std::string stem = "J" + std::to_string(n);
    if (wants(c, "json")) {
      write_file(c, stem + ".json", model_json(model), out);
      write_file(c, stem + ".cutpaste.json", model_json(cutpaste[n]), out);
    }
    if (wants(c, "dot")) write_file(c, stem + ".dot", complex_dot(model.complex, stem), out);
    previous = std::move(direct);
  }
  homology << "cross-validation: passed for levels 0.." << c.level << "\n";
  out << "cross-validation: passed for levels 0.." << c.level << "\n";
  write_file(c, "homology.txt", homology.str(), out);
  return kOk;
}

int cmd_schreier(const Config& c, GroupEngine& engine, std::ostream& out) {
  const auto& rec = engine.recursion();
  std::vector<Element> gens;
  std::vector<std::string> labels;
  auto verdict = is_contracting(engine);
  if (verdict.contracting) {
    for (std::size_t g : edge_classes(*verdict.nucleus)) {
      gens.push_back(verdict.nucleus->element(g));
      labels.push_back(engine.to_string(gens.back()));
    }
  } else {
    out << "contraction unknown within budget (" << verdict.reason << "); using the defining generators\n";
    for (std::size_t g = 0; g < rec.generators().size(); ++g) {
      gens.push_back(engine.generator(static_cast<GeneratorIndex>(g)));
      labels.push_back(rec.generator(static_cast<GeneratorIndex>(g)).name);
    }
  }
  const SchreierGraph graph = schreier_graph(engine, gens, c.level);
  out << "schreier graph: level " << c.level << ", " << graph.vertex_count() << " vertices, " << graph.edges.size()
      << " edges\n";
  const std::string dot = schreier_dot(rec, graph, labels);
  if (c.out_dir)
    write_file(c, "schreier" + std::to_string(c.level) + ".dot", dot, out);
  else
    out << dot;
  return kOk;
}

int cmd_certificate(const Config& c, GroupEngine& engine, std::ostream& out) {
  const Nucleus nucleus = require_nucleus(engine);
  const Nerve nerve = build_nerve(engine, nucleus);
  ContractionOptions options;
  options.max_depth = c.max_depth;
  ContractionCertificate cert;
  try {
    cert = contraction_certificate(engine, nerve, options);
  } catch (const NotFoundWithinBound& e) {
    throw Undecided{e.what()};
  }
  out << "multinucleus depth: " << cert.depth << " (" << cert.rows.size() << " rows verified"
      << (cert.monotone ? ", holds at depth + 1" : "") << ")\n";
  if (wants(c, "json")) write_file(c, "certificate.json", certificate_json(engine, nerve, cert), out);
  return kOk;
}

int cmd_selfrep(const Config& c, GroupEngine& engine, std::ostream& out) {
  const SelfReplication r = is_self_replicating(engine, c.radius);
  if (r.replicating) {
    out << "self-replicating: yes (witness radius " << r.radius << ")\n";
    const auto& rec = engine.recursion();
    for (const auto& w : r.witnesses)
      out << "  " << rec.alphabet().name(w.from) << " -> " << rec.alphabet().name(w.to) << ": "
          << engine.to_string(w.element) << "\n";
    return kOk;
  }
  std::string missing;
  if (r.missing)
    missing = " (no witness for " + engine.recursion().alphabet().name(r.missing->first) + " -> " +
              engine.recursion().alphabet().name(r.missing->second) + ")";
  out << "self-replicating: unknown within radius " << r.radius << missing << "\n";
  return kUndecided;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"Nucleus, tiling nerve and limit space models of self-similar groups", "limitnerve"};
  app.add_option("command", c.command, "nucleus | model | schreier | certificate | selfrep")
      ->required()
      ->check(CLI::IsMember({"nucleus", "model", "schreier", "certificate", "selfrep"}));
  app.add_option("--input", c.input, "group definition file")->required();
  app.add_option("--level", c.level, "level n of the model or Schreier graph");
  app.add_option("--out", c.out_dir, "directory for exported files");
  app.add_option("--format", c.formats, "export formats (json, dot)")
      ->delimiter(',')
      ->check(CLI::IsMember({"json", "dot"}));
  app.add_option("--max-states", c.max_states, "state budget of the group engine")->check(CLI::PositiveNumber);
  app.add_option("--jobs", c.jobs, "worker threads (0 = all cores)");
  app.add_option("--seed", c.seed, "seed for the shuffled-identification confluence check");
  app.add_option("--radius", c.radius, "word radius of the self-replication search");
  app.add_option("--max-depth", c.max_depth, "largest multinucleus depth tried");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "limitnerve: " << e.what() << "\n";
    return kInputError;
  }

  try {
    const WreathRecursion rec = load_recursion(c.input);
    EffortBudget budget = EffortBudget::from_environment();
    if (c.max_states) budget.max_states = *c.max_states;
    GroupEngine engine(rec, budget);
    if (c.command == "nucleus") return cmd_nucleus(c, engine, out);
    if (c.command == "model") return cmd_model(c, engine, out);
    if (c.command == "schreier") return cmd_schreier(c, engine, out);
    if (c.command == "certificate") return cmd_certificate(c, engine, out);
    return cmd_selfrep(c, engine, out);
  } catch (const Undecided& u) {
    out << u.message << "\n";
    return kUndecided;
  } catch (const ParseError& e) {
    err << "limitnerve: " << e.what() << "\n";
    return kInputError;
  } catch (const InvalidRecursion& e) {
    err << "limitnerve: " << e.what() << "\n";
    return kInputError;
  } catch (const BudgetExceeded& e) {
    out << "undecided: " << e.what() << "\n";
    return kUndecided;
  } catch (const RoundLimitExceeded& e) {
    out << "undecided: " << e.what() << "\n";
    return kUndecided;
  } catch (const ResourceLimit& e) {
    err << "limitnerve: resource limit: " << e.what() << "\n";
    return kResource;
  } catch (const ValidationFailure& e) {
    err << "limitnerve: " << e.what() << "\n";
    return kValidation;
  } catch (const ConsistencyError& e) {
    err << "limitnerve: consistency check failed: " << e.what() << "\n";
    return kValidation;
  } catch (const CertificateFailure& e) {
    err << "limitnerve: certificate check failed: " << e.what() << "\n";
    return kValidation;
  } catch (const Error& e) {
    err << "limitnerve: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "limitnerve: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace limitnerve::cli
