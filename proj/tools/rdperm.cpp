#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "rdperm/boundary.hpp"
#include "rdperm/branching_graph.hpp"
#include "rdperm/errors.hpp"
#include "rdperm/experiments.hpp"
#include "rdperm/measures.hpp"
#include "rdperm/posets.hpp"
#include "rdperm/serialization.hpp"
#include "rdperm/verification.hpp"

using namespace rdperm;

namespace {

constexpr int kOk = 0, kVerifyFailed = 1, kUsage = 2, kBudget = 3;

// "star" or a JSON record
OmegaPoint parse_omega(const std::string& text) {
  if (text == "star") return OmegaPoint::star();
  return omega_from_json(text);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

BigInt yf_dimension(const FibWord& target) {
  // paths from the level-1 word, level by level
  std::map<std::string, BigInt> count{{"1", 1}};
  for (int n = 1; n < target.weight(); ++n) {
    std::map<std::string, BigInt> next;
    for (const auto& [w, c] : count)
      for (const auto& s : yf_successors(FibWord(w))) next[s.to_string()] += c;
    count = std::move(next);
  }
  auto it = count.find(target.to_string());
  return it == count.end() ? BigInt(0) : it->second;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Record-dependent random permutations: sampling, exact laws, graphs and experiments"};
  app.require_subcommand(1);

  std::uint64_t seed = 1;
  std::string omega_text, rho_text, word, family = "R", path_text = "ones", config_path, output;
  int n = 0, count = 1, m = 0, level = 0, depth = 1000, criterion = 0;
  std::string successors_of, dimension_of;

  auto* sample = app.add_subcommand("sample", "Draw projections onto S_n of P^omega");
  sample->add_option("--omega", omega_text, "\"star\" or a JSON omega record")->required();
  sample->add_option("--n", n, "Permutation size")->required()->check(CLI::Range(1, 1 << 24));
  sample->add_option("--count", count, "Number of draws")->check(CLI::NonNegativeNumber);
  sample->add_option("--seed", seed, "Root seed");

  auto* pmf = app.add_subcommand("pmf", "Exact law on S_n of P^omega or of the elementary measure of rho");
  auto* pmf_omega = pmf->add_option("--omega", omega_text, "\"star\" or a JSON omega record");
  auto* pmf_rho = pmf->add_option("--rho", rho_text, "Record word such as 10110");
  pmf_omega->excludes(pmf_rho);
  pmf->add_option("--n", n, "Projection size (defaults to |rho|)")->check(CLI::Range(1, 10));

  auto* project_cmd = app.add_subcommand("project", "Delete letters above m");
  project_cmd->add_option("--word", word, "Permutation such as \"3 4 1 2\"")->required();
  project_cmd->add_option("--m", m, "Target size")->required()->check(CLI::PositiveNumber);

  auto* graph = app.add_subcommand("graph", "Explore the record graph R or the Young-Fibonacci graph YF");
  graph->add_option("--family", family, "R or YF")->check(CLI::IsMember({"R", "YF"}));
  auto* g_level = graph->add_option("--level", level, "Print the adjacency list of a level")->check(CLI::PositiveNumber);
  auto* g_succ = graph->add_option("--successors", successors_of, "Print the upper covers of a vertex");
  auto* g_dim = graph->add_option("--dimension", dimension_of, "Print the number of paths to a vertex");
  g_level->excludes(g_succ)->excludes(g_dim);
  g_succ->excludes(g_dim);

  auto* classify = app.add_subcommand("classify", "Guess the limit of the elementary measures along a path");
  classify->add_option("--path", path_text, "ones | frozen:3,6 | sqrt | half | drift | prefix:c");
  classify->add_option("--depth", depth, "Inspection depth")->check(CLI::Range(2, 1 << 22));

  auto* experiment = app.add_subcommand("experiment", "Run an experiment from a JSON config and write CSV");
  experiment->add_option("--config", config_path, "Config file")->required()->check(CLI::ExistingFile);
  experiment->add_option("--output", output, "CSV path (overrides the config; - for stdout)");

  auto* verify = app.add_subcommand("verify", "Run the acceptance criteria; exit 0 iff all pass");
  verify->add_option("--criterion", criterion, "Run a single criterion")->check(CLI::Range(1, kCriteria));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*sample) {
      const OmegaPoint omega = parse_omega(omega_text);
      std::cerr << "seed " << seed << '\n';
      for (int i = 0; i < count; ++i) {
        RandomStream rng = RandomStream::child(seed, static_cast<std::uint64_t>(i));
        std::cout << sample_projection(omega, n, rng).to_string() << '\n';
      }
    } else if (*pmf) {
      if (!rho_text.empty()) {
        const RecordWord rho = RecordWord::parse(rho_text);
        write_distribution(std::cout, elementary_projection_exact(rho, n ? n : rho.size()));
      } else {
        if (omega_text.empty() || n == 0) throw SpecError("pmf: give --rho, or --omega with --n");
        const OmegaPoint omega = parse_omega(omega_text);
        if (omega.is_star())
          write_distribution(std::cout, uniform_distribution(n));
        else if (omega.pair().p == 1.0 && omega.pair().alpha.has_infinite_tail())
          write_distribution(std::cout, exact_marginal(omega, n));
        else if (omega.pair().alpha.has_infinite_tail())
          write_distribution(std::cout, limit_marginal(omega, n));
        else
          throw SpecError("pmf: exact laws need a finite alpha");
      }
    } else if (*project_cmd) {
      std::cout << project(Permutation::parse(word), m).to_string() << '\n';
    } else if (*graph) {
      const bool yf = family == "YF";
      if (*g_level) {
        if (yf) export_yf_level(std::cout, level);
        else export_level(std::cout, level);
      } else if (*g_succ) {
        std::string line;
        if (yf)
          for (const auto& s : yf_successors(FibWord::parse(successors_of))) line += (line.empty() ? "" : " ") + s.to_string();
        else
          for (const auto& s : successors(RecordWord::parse(successors_of))) line += (line.empty() ? "" : " ") + s.to_string();
        std::cout << line << '\n';
      } else if (*g_dim) {
        if (yf) {
          const FibWord w = FibWord::parse(dimension_of);
          if (w.weight() > 30) throw SpecError("graph: YF dimension needs weight <= 30");
          std::cout << to_string(yf_dimension(w)) << '\n';
        } else {
          std::cout << to_string(dimension(RecordWord::parse(dimension_of))) << '\n';
        }
      } else {
        throw SpecError("graph: give --level, --successors or --dimension");
      }
    } else if (*classify) {
      const auto c = classify_limit(path_prefix(PathSpec::parse(path_text), depth));
      std::cout << c.to_string() << '\n';
      if (c.omega) std::cout << omega_to_json(*c.omega) << '\n';
    } else if (*experiment) {
      ExperimentConfig config = config_from_json(read_file(config_path));
      if (!output.empty()) config.output = output;
      std::cerr << "seed " << config.seed << '\n';
      const ExperimentReport rep = run_experiment(config);
      if (config.output.empty() || config.output == "-") {
        rep.write_csv(std::cout);
      } else {
        std::ofstream out(config.output);
        if (!out) throw SpecError("cannot write '" + config.output + "'");
        rep.write_csv(out);
      }
      for (const auto& [name, value] : rep.summary) std::cerr << name << " = " << value << '\n';
    } else if (*verify) {
      bool all = true;
      for (int id = 1; id <= kCriteria; ++id) {
        if (criterion && id != criterion) continue;
        const auto r = run_criterion(id);
        all = all && r.pass;
        std::cout << r.line() << '\n' << std::flush;
      }
      return all ? kOk : kVerifyFailed;
    }
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return kBudget;
  } catch (const UnsupportedExperiment& e) {
    std::cerr << "unsupported: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kOk;
}
