#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ffa/conway.hpp"
#include "ffa/errors.hpp"
#include "ffa/fuzz.hpp"
#include "ffa/interop.hpp"
#include "ffa/normalizer.hpp"
#include "ffa/smtlib/sort_check.hpp"
#include "ffa/solver.hpp"

namespace {

struct Global {
  unsigned long long budget = 10'000'000ULL;
  unsigned mr_rounds = 40;
  std::string cache_path = "conway_cache.txt";
  double timeout = 10.0;
  unsigned long long seed = 0;
};

void diagnose(const std::string& msg) {
  std::string quoted;
  quoted.reserve(msg.size());
  for (const char c : msg) {
    quoted += c;
    if (c == '"') quoted += c;  // SMT-LIB string escape
  }
  std::cerr << "(error \"" << quoted << "\")\n";
}

ffa::smtlib::FrontendConfig frontend_config(const Global& g) {
  ffa::smtlib::FrontendConfig cfg;
  cfg.mr_rounds = g.mr_rounds;
  cfg.conway_budget.mr_rounds = g.mr_rounds;
  return cfg;
}

ffa::SolverConfig solver_config(const Global& g) {
  ffa::SolverConfig cfg;
  cfg.budget = ffa::Integer(static_cast<unsigned long>(g.budget));
  return cfg;
}

ffa::Integer parse_numeral(const std::string& text, const std::string& what) {
  if (text.empty() ||
      text.find_first_not_of("0123456789") != std::string::npos ||
      (text.size() > 1 && text[0] == '0')) {
    throw ffa::InvalidInputError(what + " must be a numeral, got '" + text +
                                 "'");
  }
  return ffa::Integer(text);
}

int cmd_solve(const Global& g, const std::string& file) {
  std::string text;
  if (file == "-") {
    std::ostringstream all;
    all << std::cin.rdbuf();
    text = all.str();
  } else {
    std::ifstream in(file);
    if (!in) {
      throw ffa::InvalidInputError("cannot read '" + file + "'");
    }
    std::ostringstream all;
    all << in.rdbuf();
    text = all.str();
  }
  ffa::ConwayCache cache(g.cache_path);
  ffa::smtlib::SortBuilder sorts(cache, frontend_config(g));
  const auto script = ffa::smtlib::check_script_text(text, sorts);
  for (const auto& line : ffa::run_script(script, solver_config(g))) {
    std::cout << line << "\n";
  }
  return 0;
}

int cmd_conway(const Global& g, const std::string& p_text,
               const std::string& n_text) {
  const ffa::Integer p = parse_numeral(p_text, "p");
  const ffa::Integer n_big = parse_numeral(n_text, "n");
  if (n_big == 0 || n_big > 4096) {
    throw ffa::InvalidInputError("degree must be between 1 and 4096");
  }
  const unsigned n = static_cast<unsigned>(n_big.get_ui());
  ffa::ConwayCache cache(g.cache_path);
  ffa::ConwayBudget budget;
  budget.mr_rounds = g.mr_rounds;
  const ffa::Polynomial f = ffa::conway_polynomial(p, n, cache, budget);
  std::cout << p << " " << n;
  for (const auto& c : f.coeffs()) std::cout << " " << c;
  std::cout << "\n";
  cache.save();
  return 0;
}

int cmd_normalize(const Global& g, const std::string& sort_spec,
                  const std::string& literal) {
  ffa::ConwayCache cache(g.cache_path);
  ffa::FieldSort sort = [&] {
    const auto colon = sort_spec.find(':');
    if (colon == std::string::npos) {
      return ffa::FieldSort::prime_field(parse_numeral(sort_spec, "p"),
                                         g.mr_rounds);
    }
    const ffa::Integer p =
        parse_numeral(sort_spec.substr(0, colon), "p");
    const ffa::Integer n_big =
        parse_numeral(sort_spec.substr(colon + 1), "n");
    if (n_big < 2 || n_big > 4096) {
      throw ffa::InvalidInputError(
          "extension degree must be between 2 and 4096");
    }
    ffa::ConwayBudget budget;
    budget.mr_rounds = g.mr_rounds;
    return ffa::FieldSort::extension(p, static_cast<unsigned>(n_big.get_ui()),
                                     cache, budget);
  }();
  if (!ffa::smtlib::is_ff_literal_text(literal)) {
    throw ffa::InvalidInputError(
        "'" + literal + "' is not a field literal (ff<digits>, coefficients "
        "separated by '.')");
  }
  const ffa::FieldElement e = ffa::normalize_literal(
      sort, ffa::smtlib::literal_coefficients(literal.substr(2)));
  std::cout << ffa::print_literal(e) << "\n";
  return 0;
}

int cmd_prime(const Global& g, const std::string& p_text) {
  const ffa::Integer p = parse_numeral(p_text, "p");
  if (ffa::is_probable_prime(p, g.mr_rounds)) {
    std::cout << "probable-prime\n";
    return 0;
  }
  std::cout << "composite\n";
  return 1;
}

struct DiffCli {
  std::string seeds;
  std::string corpus;
  std::vector<std::string> solver_specs;
  bool internal_only = false;
  std::string jsonl_path;
};

std::pair<unsigned long long, unsigned long long> parse_seed_range(
    const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    throw ffa::InvalidInputError("--seeds wants A..B, got '" + text + "'");
  }
  const ffa::Integer a = parse_numeral(text.substr(0, dots), "seed");
  const ffa::Integer b = parse_numeral(text.substr(dots + 2), "seed");
  if (a > b || !b.fits_ulong_p()) {
    throw ffa::InvalidInputError("--seeds range '" + text +
                                 "' is empty or out of range");
  }
  return {a.get_ui(), b.get_ui()};
}

int cmd_diff(const Global& g, const DiffCli& d) {
  // Inputs: named corpus files, or generated scripts over a seed range.
  std::vector<std::pair<std::string, std::string>> inputs;  // name, text
  std::vector<std::optional<unsigned long>> seeds;
  if (!d.corpus.empty()) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry :
         std::filesystem::directory_iterator(d.corpus)) {
      if (entry.is_regular_file() && entry.path().extension() == ".smt2") {
        files.push_back(entry.path());
      }
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) {
      throw ffa::InvalidInputError("no .smt2 scripts in '" + d.corpus + "'");
    }
    for (const auto& f : files) {
      std::ifstream in(f);
      if (!in) throw ffa::InvalidInputError("cannot read '" + f.string() + "'");
      std::ostringstream all;
      all << in.rdbuf();
      inputs.emplace_back(f.string(), all.str());
      seeds.emplace_back(std::nullopt);
    }
  } else {
    auto [first, last] = d.seeds.empty()
                             ? std::make_pair(g.seed, g.seed + 99)
                             : parse_seed_range(d.seeds);
    for (unsigned long long s = first; s <= last; ++s) {
      inputs.emplace_back("seed:" + std::to_string(s),
                          ffa::fuzz_generate(static_cast<unsigned long>(s)));
      seeds.emplace_back(static_cast<unsigned long>(s));
      if (s == last) break;  // guards s + 1 overflow at ULLONG_MAX
    }
  }

  std::vector<ffa::ExternalSolverConfig> solvers;
  if (!d.internal_only) {
    for (const auto& spec : d.solver_specs) {
      solvers.push_back(ffa::parse_solver_spec(spec, g.timeout));
    }
    if (solvers.empty()) {
      throw ffa::InvalidInputError(
          "configure at least one --solver LABEL=CMD, or --internal-only");
    }
  }

  ffa::ConwayCache cache(g.cache_path);
  ffa::smtlib::SortBuilder sorts(cache, frontend_config(g));
  ffa::DiffOptions opts;
  opts.solver = solver_config(g);
  opts.internal_only = d.internal_only;

  std::ofstream jsonl;
  if (!d.jsonl_path.empty()) {
    jsonl.open(d.jsonl_path, std::ios::trunc);
    if (!jsonl) {
      throw ffa::InvalidInputError("cannot write '" + d.jsonl_path + "'");
    }
  }

  std::vector<ffa::DiffRecord> records;
  for (size_t i = 0; i < inputs.size(); ++i) {
    const auto run = [&](const ffa::ExternalSolverConfig* ext) {
      ffa::DiffRecord r = ffa::diff_one(inputs[i].second, inputs[i].first,
                                        seeds[i], sorts, opts, ext);
      std::cout << ffa::format_record(r) << "\n";
      if (jsonl.is_open()) jsonl << ffa::jsonl_record(r) << "\n";
      records.push_back(std::move(r));
    };
    if (d.internal_only) {
      run(nullptr);
    } else {
      for (const auto& s : solvers) run(&s);
    }
  }
  std::cout << "\n" << ffa::format_summary(records);

  for (const auto& r : records) {
    if (r.klass == ffa::DiffClass::VerdictMismatch ||
        r.klass == ffa::DiffClass::ModelInvalid) {
      return 3;
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Global g;
  CLI::App app{
      "Finite field SMT toolkit: solve QF_FFA scripts, compute Conway "
      "polynomials, normalize literals, test primality, and run "
      "differential comparisons."};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--budget", g.budget,
                 "Assignment-space ceiling for check-sat")
      ->envname("FFA_BUDGET")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--mr-rounds", g.mr_rounds, "Miller-Rabin rounds")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--cache", g.cache_path, "Conway polynomial cache file")
      ->envname("FFA_CONWAY_CACHE")
      ->capture_default_str();
  app.add_option("--timeout", g.timeout,
                 "External solver timeout in seconds")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--seed", g.seed, "Base seed for generated scripts")
      ->capture_default_str();

  std::string solve_file;
  auto* solve = app.add_subcommand("solve", "Run an SMT-LIB script");
  solve->add_option("file", solve_file, "Script path, or - for stdin")
      ->required();

  std::string conway_p, conway_n;
  auto* conway =
      app.add_subcommand("conway", "Compute a Conway polynomial");
  conway->add_option("p", conway_p, "Field characteristic")->required();
  conway->add_option("n", conway_n, "Extension degree")->required();

  std::string norm_sort, norm_literal;
  auto* normalize =
      app.add_subcommand("normalize", "Normalize a field literal");
  normalize->add_option("sort", norm_sort, "Field sort: p, or p:n")
      ->required();
  normalize->add_option("literal", norm_literal, "Literal, e.g. ff10")
      ->required();

  std::string prime_p;
  auto* prime = app.add_subcommand("prime", "Probabilistic primality test");
  prime->add_option("p", prime_p, "Candidate")->required();

  DiffCli d;
  auto* diff = app.add_subcommand(
      "diff", "Differential comparison on generated or corpus scripts");
  diff->add_option("--seeds", d.seeds, "Seed range A..B");
  diff->add_option("--corpus", d.corpus, "Directory of .smt2 scripts");
  diff->add_option("--solver", d.solver_specs,
                   "External solver as LABEL=CMD; repeatable");
  diff->add_flag("--internal-only", d.internal_only,
                 "Compare the pruned search against the naive enumeration");
  diff->add_option("--jsonl", d.jsonl_path,
                   "Write machine-readable records to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    diagnose(e.what());
    return 1;
  }

  try {
    if (*solve) return cmd_solve(g, solve_file);
    if (*conway) return cmd_conway(g, conway_p, conway_n);
    if (*normalize) return cmd_normalize(g, norm_sort, norm_literal);
    if (*prime) return cmd_prime(g, prime_p);
    if (*diff) return cmd_diff(g, d);
  } catch (const ffa::ResourceError& e) {
    diagnose(e.what());
    return 2;
  } catch (const std::exception& e) {
    diagnose(e.what());
    return 1;
  }
  return 1;
}
