#include "CLI11.hpp"

#include "tauseq/config.hpp"
#include "tauseq/mutation.hpp"
#include "tauseq/textio.hpp"

#include <fstream>
#include <iostream>

using namespace tauseq;

namespace {

Seq parse_sequence_literal(const World& w, const std::string& literal) {
  std::string s = literal;
  if (!s.empty() && s.front() == '(') s = s.substr(1);
  if (!s.empty() && s.back() == ')') s.pop_back();
  Seq out;
  std::istringstream is(s);
  std::string cell;
  while (std::getline(is, cell, ',')) {
    while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
    while (!cell.empty() && cell.back() == ' ') cell.pop_back();
    int e = w.catalog.find_name(cell);
    if (e < 0) throw std::invalid_argument("unknown module name '" + cell + "'");
    out.push_back(e);
  }
  if (out.empty()) throw std::invalid_argument("empty sequence literal");
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write '" + path + "'");
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tau-exceptional sequence mutation engine for R (x) kQ"};
  app.require_subcommand(1);

  std::string config_path;
  std::uint64_t prime = 0;
  int threads = 0;
  app.add_option("--config", config_path, "algebra configuration file")->required();
  app.add_option("--prime", prime, "prime modulus for the cross-check mode");
  app.add_option("--threads", threads, "worker threads for graph construction (0 = auto)");

  auto* cmd_catalog = app.add_subcommand("catalog", "list the indecomposable catalog");
  auto* cmd_taurigid = app.add_subcommand("taurigid", "list indecomposable tau-rigid modules with native certificates");
  auto* cmd_sequences = app.add_subcommand("sequences", "enumerate complete tau-exceptional sequences");

  auto* cmd_mutate = app.add_subcommand("mutate", "mutate a sequence at an index");
  std::string seq_literal;
  int index = 0;
  bool right = false;
  cmd_mutate->add_option("--seq", seq_literal, "sequence literal, e.g. \"(P3,P2,P1)\"")->required();
  cmd_mutate->add_option("--i", index, "1-based mutation index")->required();
  cmd_mutate->add_flag("--right", right, "apply the right mutation (inverse of the left one)");

  auto* cmd_graph = app.add_subcommand("graph", "compute the mutation graph");
  std::string dot_path;
  cmd_graph->add_option("--dot", dot_path, "write the graph in DOT format to this path");

  auto* cmd_verify = app.add_subcommand("verify", "run named verification checks");
  std::string checks_csv;
  std::string golden_path = "data/figure1_edges.txt";
  std::string verify_dot;
  cmd_verify->add_option("--checks", checks_csv, "comma separated check list (or 'all')")->required();
  cmd_verify->add_option("--golden", golden_path, "golden edge list for the figure1 check");
  cmd_verify->add_option("--dot", verify_dot, "also emit the mutation graph in DOT format");

  auto* cmd_module = app.add_subcommand("module", "serialize a catalog module");
  std::string dump_name;
  cmd_module->add_option("--dump", dump_name, "module name to serialize")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (prime) Fp::set_modulus(prime);
    RunConfig cfg = parse_config_file(config_path);
    TensorSetup ts = setup_from_config(cfg);
    WorldPtr wl = make_top_world(ts);

    if (*cmd_catalog) {
      for (int e = 0; e < wl->catalog.size(); ++e) {
        const auto& entry = wl->catalog.at(e);
        std::cout << entry.name << " label=" << entry.label << " dims=[";
        for (std::size_t v = 0; v < entry.mod.dims.size(); ++v)
          std::cout << (v ? "," : "") << entry.mod.dims[v];
        std::cout << "]\n";
      }
    } else if (*cmd_taurigid) {
      for (int e = 0; e < wl->catalog.size(); ++e) {
        Module t = wl->tau_entry(e);
        const int obstruction = t.is_zero() ? 0 : hom_dim(wl->mod(e), t);
        if (obstruction != 0)
          throw std::runtime_error("catalog entry " + wl->name(e) + " failed the tau-rigidity certificate");
        std::cout << wl->name(e) << " label=" << wl->label(e) << " hom(X,tauX)=0\n";
      }
    } else if (*cmd_sequences) {
      auto seqs = enumerate_complete(wl);
      std::vector<std::string> lines;
      for (const auto& s : seqs) lines.push_back(seq_label(*wl, s));
      std::sort(lines.begin(), lines.end());
      for (const auto& l : lines) std::cout << l << "\n";
    } else if (*cmd_mutate) {
      Seq seq = parse_sequence_literal(*wl, seq_literal);
      if (!is_tau_exceptional(wl, seq))
        throw std::invalid_argument("input is not a tau-exceptional sequence");
      if (index < 1 || index >= (int)seq.size())
        throw std::invalid_argument("index must lie between 1 and " + std::to_string(seq.size() - 1));
      Seq out = right ? phi_inverse(wl, seq, index) : phi(wl, seq, index);
      std::cout << seq_label(*wl, out) << "\n";
    } else if (*cmd_graph) {
      auto g = mutation_graph(wl, threads);
      std::cout << "vertices=" << g.vertices.size() << " edges=" << g.vertices.size() * (std::size_t)(g.rank - 1)
                << " connected=" << (g.connected() ? "yes" : "no") << "\n";
      if (!dot_path.empty()) write_file(dot_path, graph_to_dot(g));
    } else if (*cmd_verify) {
      std::vector<std::string> checks;
      std::istringstream cs(checks_csv);
      std::string cell;
      while (std::getline(cs, cell, ',')) {
        if (!cell.empty()) checks.push_back(cell);
      }
      std::string golden;
      bool needs_golden = false;
      for (const auto& c : checks) needs_golden |= (c == "figure1" || c == "all");
      if (needs_golden) {
        try {
          golden = read_file(golden_path);
        } catch (const std::exception&) {
          golden.clear();  // figure1 reports the missing golden honestly
        }
      }
      VerifyReport report = verify_suite(ts, checks, golden, threads);
      std::cout << report.to_text();
      if (!verify_dot.empty()) write_file(verify_dot, graph_to_dot(mutation_graph(wl, threads)));
      return report.all_pass() ? 0 : 1;
    } else if (*cmd_module) {
      int e = wl->catalog.find_name(dump_name);
      if (e < 0) throw std::invalid_argument("unknown module name '" + dump_name + "'");
      std::cout << module_text(wl->mod(e), wl->name(e), cfg.algebra_id);
    }
  } catch (const std::invalid_argument& ex) {
    std::cerr << "usage error: " << ex.what() << "\n";
    return 2;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 3;
  }
  return 0;
}
