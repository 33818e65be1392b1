#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "balance/io.hpp"
#include "balance/verify.hpp"

namespace {

using namespace balance;

int default_jobs() {
  if (const char* env = std::getenv("BALANCE_KIT_JOBS")) {
    int j = std::atoi(env);
    if (j >= 1) return j;
  }
  return 1;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path);
  if (!out) throw domain_error("cannot write to " + path);
  out << content;
}

std::vector<Rat> parse_weight_csv(const std::string& csv, std::size_t count) {
  std::vector<Rat> weights;
  std::istringstream in(csv);
  std::string item;
  while (std::getline(in, item, ',')) weights.push_back(parse_rat(item));
  if (weights.size() != count)
    throw domain_error("expected " + std::to_string(count) +
                       " weights, got " + std::to_string(weights.size()));
  return weights;
}

Multiset parse_multiset_csv(const std::string& csv) {
  std::vector<int> labels;
  std::istringstream in(csv);
  std::string item;
  while (std::getline(in, item, ',')) labels.push_back(std::stoi(item));
  return Multiset(std::move(labels));
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error(path, 0, "cannot open file");
  try {
    return json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(path, 0, e.what());
  }
}

void print_report(const VerificationReport& report, bool as_json) {
  if (as_json) {
    json out = json::array();
    for (const auto& c : report.checks)
      out.push_back({{"id", c.id},
                     {"section", c.section},
                     {"criterion", c.criterion},
                     {"description", c.description},
                     {"expected", c.expected},
                     {"actual", c.actual},
                     {"pass", c.pass},
                     {"ms", c.millis}});
    std::cout << out.dump(2) << "\n";
    return;
  }
  for (const auto& c : report.checks) {
    std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.id << "  "
              << c.description << "\n";
    if (!c.pass)
      std::cout << "       expected: " << c.expected
                << "\n       actual:   " << c.actual << "\n";
  }
  std::cout << report.passed() << "/" << report.checks.size()
            << " checks passed\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact computations with balanced weighted multiset complexes"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand(
      "gen", "emit a named complex family as .cplx (weights sidecar when a "
             "canonical balancing exists)");
  std::string gen_name;
  std::vector<int> gen_params;
  bool gen_nonsingular = false;
  std::string gen_out;
  gen->add_option("family", gen_name,
                  "B H T P O C A complete torus cube")->required();
  gen->add_option("params", gen_params, "labels or sizes");
  gen->add_flag("--nonsingular", gen_nonsingular,
                "restrict 'complete' to nonsingular simplices");
  gen->add_option("--out", gen_out, "output path (stem also used for .weights)");

  // dim
  auto* dim = app.add_subcommand("dim", "dimension of the balancing space");
  std::string dim_file;
  std::vector<int> dim_complete;
  bool dim_nonsingular = false;
  dim->add_option("file", dim_file, ".cplx input");
  dim->add_option("--complete", dim_complete, "n d of a complete complex")
      ->expected(2);
  dim->add_flag("--nonsingular", dim_nonsingular);

  // kernel
  auto* kernel = app.add_subcommand(
      "kernel", "kernel basis of the balancing conditions, as JSON");
  std::string kernel_file, kernel_out;
  bool kernel_full = false;
  kernel->add_option("file", kernel_file, ".cplx input")->required();
  kernel->add_flag("--all-degrees", kernel_full,
                   "use conditions of every degree 0..d");
  kernel->add_option("--out", kernel_out, "output path");

  // check
  auto* check = app.add_subcommand("check", "test whether a weighting is "
                                            "balanced");
  std::string check_file, check_weights, check_weights_file;
  bool check_full = false, check_json = false;
  check->add_option("file", check_file, ".cplx input");
  check->add_option("--weights", check_weights,
                    "comma-separated weights in sorted simplex order");
  check->add_option("--weights-file", check_weights_file,
                    "weighting file (simplices with weights)");
  check->add_flag("--all-degrees", check_full);
  check->add_flag("--json", check_json);

  // prune
  auto* prune = app.add_subcommand(
      "prune", "largest subcomplex that can carry a nondegenerate balancing");
  std::string prune_file, prune_out;
  prune->add_option("file", prune_file, ".cplx input")->required();
  prune->add_option("--out", prune_out, "output path");

  // divisor
  auto* divisor_cmd = app.add_subcommand(
      "divisor", "divisor class of a complex in the Kapranov basis");
  std::string divisor_file;
  int divisor_n = 0;
  bool divisor_json = false;
  divisor_cmd->add_option("file", divisor_file, ".cplx input")->required();
  divisor_cmd->add_option("--n", divisor_n, "number of marked points")
      ->required();
  divisor_cmd->add_flag("--json", divisor_json);

  // admissible
  auto* admissible_cmd = app.add_subcommand(
      "admissible", "all simplices a complex with the given class may use");
  std::string admissible_file, admissible_out;
  int admissible_d = -1;
  admissible_cmd->add_option("divisor", admissible_file, "divisor JSON file")
      ->required();
  admissible_cmd->add_option("--d", admissible_d, "complex degree")->required();
  admissible_cmd->add_option("--out", admissible_out, "output path");

  // decompose
  auto* decompose_cmd = app.add_subcommand(
      "decompose", "all decompositions of a class over candidate classes");
  std::string decompose_file, decompose_cands;
  bool decompose_json = false;
  decompose_cmd->add_option("divisor", decompose_file, "divisor JSON file")
      ->required();
  decompose_cmd
      ->add_option("--candidates", decompose_cands,
                   "JSON array of candidate divisor classes")
      ->required();
  decompose_cmd->add_flag("--json", decompose_json);

  // link
  auto* link_cmd = app.add_subcommand("link", "link of a complex with respect "
                                              "to a multiset");
  std::string link_file, link_multiset, link_weights_file, link_out;
  link_cmd->add_option("file", link_file, ".cplx input");
  link_cmd->add_option("--multiset", link_multiset,
                       "comma-separated labels of S")->required();
  link_cmd->add_option("--weights-file", link_weights_file,
                       "weighting input; emits the induced weighting instead");
  link_cmd->add_option("--out", link_out, "output path");

  // product
  auto* product_cmd = app.add_subcommand("product", "product of two complexes");
  std::vector<std::string> product_files;
  std::string product_out;
  product_cmd->add_option("files", product_files, ".cplx inputs")
      ->expected(2)
      ->required();
  product_cmd->add_option("--out", product_out, "output path");

  // minimal-search
  auto* search_cmd = app.add_subcommand(
      "minimal-search",
      "enumerate minimal balanceable subcomplexes of a complete complex up "
      "to relabeling");
  int search_n = 0, search_d = 0, search_max_support = 0;
  int search_jobs = default_jobs(), search_points = 0;
  bool search_nonsingular = false;
  std::string search_out;
  search_cmd->add_option("--n", search_n, "ambient vertices")->required();
  search_cmd->add_option("--d", search_d, "ambient degree")->required();
  search_cmd->add_flag("--nonsingular", search_nonsingular);
  search_cmd->add_option("--max-support", search_max_support,
                         "cap on circuit size (required for singular "
                         "ambients)");
  search_cmd->add_option("--jobs", search_jobs, "worker threads");
  search_cmd->add_option("--n-points", search_points,
                         "marked points for divisor reporting (default n+1)");
  search_cmd->add_option("--out", search_out, "report path");

  // verify
  auto* verify_cmd = app.add_subcommand(
      "verify", "replay the library's verification suite");
  std::string verify_scope = "all";
  int verify_jobs = default_jobs();
  bool verify_json = false;
  verify_cmd->add_option("--section", verify_scope, "all or 2..5");
  verify_cmd->add_option("--jobs", verify_jobs, "worker threads");
  verify_cmd->add_flag("--json", verify_json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*gen) {
      FamilySpec spec{gen_name, gen_params, gen_nonsingular};
      Family fam = family(spec);
      std::string body = to_cplx(fam.complex);
      if (gen_out.empty()) {
        std::cout << body;
        if (fam.weighting) {
          std::cout << "# canonical weighting:\n";
          std::istringstream lines(to_weights(*fam.weighting));
          std::string line;
          while (std::getline(lines, line)) std::cout << "# " << line << "\n";
        }
      } else {
        write_output(gen_out, body);
        if (fam.weighting) {
          std::string stem = gen_out;
          if (auto dot = stem.rfind('.'); dot != std::string::npos)
            stem.erase(dot);
          write_output(stem + ".weights", to_weights(*fam.weighting));
        }
      }
    } else if (*dim) {
      if (dim_complete.empty() && dim_file.empty())
        throw domain_error("dim needs a file or --complete");
      Complex c = dim_complete.empty()
                      ? parse_cplx_file(dim_file)
                      : complete(dim_complete[0], dim_complete[1],
                                 dim_nonsingular);
      std::cout << (c.is_empty() ? 0 : balancing_space(c).dimension) << "\n";
    } else if (*kernel) {
      Complex c = parse_cplx_file(kernel_file);
      BalancingSpace space = balancing_space(
          c, kernel_full ? BalanceCheck::all_degrees
                         : BalanceCheck::facets_only);
      write_output(kernel_out, space_to_json(space).dump(2) + "\n");
    } else if (*check) {
      Weighting w = [&]() {
        if (!check_weights_file.empty())
          return parse_weights_file(check_weights_file);
        if (check_file.empty() || check_weights.empty())
          throw domain_error(
              "check needs a .cplx with --weights, or --weights-file");
        Complex c = parse_cplx_file(check_file);
        auto weights = parse_weight_csv(check_weights, c.size());
        return Weighting(std::move(c), std::move(weights));
      }();
      BalanceCheck mode = check_full ? BalanceCheck::all_degrees
                                     : BalanceCheck::facets_only;
      auto violation = first_unbalanced(w, mode);
      if (check_json) {
        json out;
        out["balanced"] = !violation.has_value();
        if (violation) {
          out["violating_multiset"] = simplex_to_json(*violation);
          Rat value = 0;
          for (std::size_t i = 0; i < w.weights.size(); ++i)
            value += w.weights[i] *
                     Int(static_cast<long>(
                         multiplicity(*violation, w.complex.simplex(i))));
          out["value"] = rat_string(value);
        }
        std::cout << out.dump(2) << "\n";
      } else if (!violation) {
        std::cout << "balanced\n";
      } else {
        Rat value = 0;
        for (std::size_t i = 0; i < w.weights.size(); ++i)
          value += w.weights[i] *
                   Int(static_cast<long>(
                       multiplicity(*violation, w.complex.simplex(i))));
        std::ostringstream line;
        line << "unbalanced: condition for " << *violation << " sums to "
             << rat_string(value);
        std::cout << line.str() << "\n";
        return 1;
      }
    } else if (*prune) {
      Complex pruned = prune_degenerate(parse_cplx_file(prune_file));
      if (pruned.is_empty()) {
        std::cerr << "pruned to the empty complex\n";
        write_output(prune_out, "");
      } else {
        write_output(prune_out, to_cplx(pruned));
      }
    } else if (*divisor_cmd) {
      DivisorClass d =
          divisor_of_complex(parse_cplx_file(divisor_file), divisor_n);
      if (divisor_json)
        std::cout << divisor_to_json(d).dump(2) << "\n";
      else
        std::cout << divisor_to_text(d) << "\n";
    } else if (*admissible_cmd) {
      DivisorClass d = divisor_from_json(load_json(admissible_file));
      write_output(admissible_out,
                   to_cplx(admissible_simplices(d, admissible_d)));
    } else if (*decompose_cmd) {
      DivisorClass d = divisor_from_json(load_json(decompose_file));
      json cand_json = load_json(decompose_cands);
      std::vector<DivisorClass> candidates;
      for (const auto& item : cand_json)
        candidates.push_back(divisor_from_json(item));
      auto witnesses = decompose(d, candidates);
      if (decompose_json) {
        json out;
        out["witnesses"] = witnesses;
        std::cout << out.dump(2) << "\n";
      } else if (witnesses.empty()) {
        std::cout << "no decomposition\n";
      } else {
        for (const auto& witness : witnesses) {
          bool first = true;
          for (std::size_t idx : witness) {
            if (!first) std::cout << " + ";
            std::cout << "candidate[" << idx << "]";
            first = false;
          }
          std::cout << "\n";
        }
      }
    } else if (*link_cmd) {
      Multiset s = parse_multiset_csv(link_multiset);
      if (!link_weights_file.empty()) {
        Weighting w = parse_weights_file(link_weights_file);
        write_output(link_out, to_weights(link_weighting(w, s)));
      } else if (link_file.empty()) {
        throw domain_error("link needs a .cplx file or --weights-file");
      } else {
        write_output(link_out, to_cplx(link(parse_cplx_file(link_file), s)));
      }
    } else if (*product_cmd) {
      Complex a = parse_cplx_file(product_files[0]);
      Complex b = parse_cplx_file(product_files[1]);
      write_output(product_out, to_cplx(product(a, b)));
    } else if (*search_cmd) {
      auto classes =
          enumerate_minimal(search_n, search_d, search_nonsingular,
                            SearchOptions{search_max_support, search_jobs});
      int n_points = search_points > 0 ? search_points : search_n + 1;
      auto entries = classify_irreducible_candidates(classes, n_points);
      write_output(search_out,
                   search_report_json(search_n, search_d, search_nonsingular,
                                      n_points, entries)
                           .dump(2) +
                       "\n");
    } else if (*verify_cmd) {
      VerificationReport report = run_verification(verify_scope, verify_jobs);
      print_report(report, verify_json);
      return report.all_pass() ? 0 : 1;
    }
  } catch (const parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
