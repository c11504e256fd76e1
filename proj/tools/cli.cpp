#include "cli.hpp"

#include <fstream>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "zerograph/json_io.hpp"
#include "zerograph/povm.hpp"
#include "zerograph/superact.hpp"

namespace zerograph::cli {

namespace {

using io::json;

struct Common {
  int starts = 1000;
  std::uint64_t seed = 42;
  int threads = 0;
  std::string out_path;
  bool pretty = false;
};

void add_common(CLI::App* cmd, Common& c, bool search_flags) {
  if (search_flags) {
    cmd->add_option("--starts", c.starts, "Number of optimization starts")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", c.seed, "Seed of the start sequence");
    cmd->add_option("--threads", c.threads, "Worker threads (ZEROGRAPH_THREADS overrides)")->check(CLI::NonNegativeNumber);
  }
  cmd->add_option("--out", c.out_path, "Write JSON here instead of standard output");
  cmd->add_flag("--pretty", c.pretty, "Indent the JSON output");
}

// Writes the document; returns false if the output file cannot be written.
bool emit(const json& doc, const Common& c, std::ostream& out, std::ostream& err) {
  const std::string text = (c.pretty ? doc.dump(2) : doc.dump()) + "\n";
  if (c.out_path.empty()) {
    out << text;
    return true;
  }
  std::ofstream file(c.out_path, std::ios::binary);
  if (!file || !(file << text)) {
    err << "error: cannot write " << c.out_path << "\n";
    return false;
  }
  return true;
}

json read_json_file(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw FormatError("cannot read " + path);
  try {
    return json::parse(file);
  } catch (const json::exception& e) {
    throw FormatError(path + ": " + e.what());
  }
}

int finish_report(const Report& report, const Common& c, std::ostream& out, std::ostream& err) {
  if (!emit(io::to_json(report), c, out, err)) return kUsage;
  if (report.all_passed()) return kOk;
  for (const std::string& name : report.failing()) err << "check failed: " << name << "\n";
  return kCheckFailed;
}

OperatorSpace select_graph(const std::string& graph, int n) {
  if (graph == "l0") return make_graph({2, GraphVariant::L0});
  if (graph == "l0sq") {
    const OperatorSpace l0 = make_graph({2, GraphVariant::L0});
    return tensor_spaces(l0, l0);
  }
  if (graph == "ln") return make_graph({n, GraphVariant::Ln});
  return io::graph_from_json(read_json_file(graph));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Zero-error codes, noncommutative graphs and superactivation"};
  app.require_subcommand(1);

  // reproduce {corollary1|theorem2}
  CLI::App* reproduce = app.add_subcommand("reproduce", "Run a reproduction pipeline and write a JSON report");
  reproduce->require_subcommand(1);

  Common cor;
  std::vector<double> cor_t;
  CLI::App* corollary = reproduce->add_subcommand("corollary1", "4-dimensional channel and its tensor square");
  corollary->add_option("--t", cor_t, "Code phase t (repeatable; default 16-point grid)");
  add_common(corollary, cor, true);

  Common thm;
  thm.starts = 500;
  int thm_n = 2;
  double thm_t = 0.0;
  CLI::App* theorem = reproduce->add_subcommand("theorem2", "n-block construction with an n-dimensional code");
  theorem->add_option("--n", thm_n, "Number of 2x2 blocks")->check(CLI::Range(kMinBlocks, kMaxBlocks));
  theorem->add_option("--t", thm_t, "Code phase t");
  add_common(theorem, thm, true);

  // search
  Common srch;
  std::string graph = "l0";
  int search_n = 2;
  CLI::App* search = app.add_subcommand("search", "Multi-start search for a witness pair");
  search->add_option("--graph", graph, "l0 | l0sq | ln | path to a graph JSON file");
  search->add_option("--n", search_n, "Block count for --graph ln")->check(CLI::Range(kMinBlocks, kMaxBlocks));
  add_common(search, srch, true);

  // export
  Common exp;
  std::string what;
  int export_n = 2;
  CLI::App* exporter = app.add_subcommand("export", "Write exact fixtures");
  exporter->add_option("--what", what, "povm | kraus | psis | graph-l0 | graph-ln")->required();
  exporter->add_option("--n", export_n, "Block count for graph-ln")->check(CLI::Range(kMinBlocks, kMaxBlocks));
  add_common(exporter, exp, false);

  // povm-check
  Common pc;
  std::string observable_path;
  bool square = false;
  std::vector<double> pc_t;
  CLI::App* povm_check = app.add_subcommand("povm-check", "Validate an observable and search for indistinguishable subspaces");
  povm_check->add_option("--observable", observable_path, "Observable JSON file (default: the 5-outcome fixture)");
  povm_check->add_flag("--square", square, "Use the tensor square of the observable");
  povm_check->add_option("--t", pc_t, "Check the entangled code at phase t (repeatable; needs 16 dimensions)");
  add_common(povm_check, pc, true);

  std::vector<const char*> argv{"zerograph"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kUsage;
  }

  try {
    if (*corollary) {
      DriverOptions opts{cor.starts, cor.seed, cor.threads};
      const std::vector<double> grid = cor_t.empty() ? default_t_grid() : cor_t;
      return finish_report(reproduce_corollary1(grid, opts), cor, out, err);
    }
    if (*theorem) {
      DriverOptions opts{thm.starts, thm.seed, thm.threads};
      return finish_report(reproduce_theorem2(thm_n, thm_t, opts), thm, out, err);
    }
    if (*search) {
      const OperatorSpace space = select_graph(graph, search_n);
      SearchOptions opts;
      opts.starts = srch.starts;
      opts.seed = srch.seed;
      opts.threads = srch.threads;
      return emit(io::to_json(search_violation(space, opts)), srch, out, err) ? kOk : kUsage;
    }
    if (*exporter) {
      json doc;
      if (what == "povm") {
        doc = io::to_json(make_observable(paper_povm()));
      } else if (what == "kraus") {
        doc = io::to_json(paper_kraus());
      } else if (what == "psis") {
        json arr = json::array();
        for (const CVec& v : paper_psis()) arr.push_back(io::to_json(CMat(v)));
        doc = {{"psis", arr}};
      } else if (what == "graph-l0") {
        doc = io::graph_to_json(4, graph_generators({2, GraphVariant::L0}));
      } else if (what == "graph-ln") {
        doc = io::graph_to_json(2 * export_n, graph_generators({export_n, GraphVariant::Ln}));
      } else {
        err << "error: unknown export target \"" << what << "\"\n";
        return kUsage;
      }
      return emit(doc, exp, out, err) ? kOk : kUsage;
    }
    if (*povm_check) {
      Observable obs = observable_path.empty() ? make_observable(paper_povm())
                                               : io::observable_from_json(read_json_file(observable_path));
      if (square) obs = tensor_observables(obs, obs);
      SearchOptions opts;
      opts.starts = pc.starts;
      opts.seed = pc.seed;
      opts.threads = pc.threads;
      const ViolationReport found = find_indistinguishable(obs, opts);
      json codes = json::array();
      for (double t : pc_t) {
        if (obs.dim() != 16) {
          err << "error: --t needs an observable on 16 dimensions\n";
          return kUsage;
        }
        const CodeCertificate cert = is_indistinguishable(obs, code_vectors(2, t));
        codes.push_back({{"t", fold_angle(t)},
                         {"indistinguishable", cert.passed},
                         {"max_offdiag_residual", cert.max_offdiag_residual},
                         {"max_diag_residual", cert.max_diag_residual}});
      }
      const json doc = {
          {"schema", io::kSchemaVersion},
          {"observable", {{"dim", obs.dim()}, {"outcomes", obs.outcomes()}, {"sharp", obs.sharp()}}},
          {"violation", io::to_json(found)},
          {"witness_found", found.witness_found()},
          {"codes", codes},
      };
      return emit(doc, pc, out, err) ? kOk : kUsage;
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace zerograph::cli
