// markoff: orbit experiments for the Out(F_2) action on X_kappa(F_p).

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "markoff/experiments.hpp"
#include "markoff/serialize.hpp"

namespace {

using namespace markoff;

enum ExitCode : int {
  kOk = 0,
  kMismatch = 1,
  kUsage = 2,
  kNotPrime = 3,
  kBadWord = 4,
  kSpaceMismatch = 5,
};

struct CliError {
  int code;
  std::string message;
};

struct Globals {
  i64 kappa = -2;
  std::string space = "Y";
  bool json = false;
  bool csv = false;
  unsigned threads = 0;
  std::uint64_t seed = 1;
  bool timing = false;
};

std::uint64_t require_prime(std::uint64_t p) {
  if (p < 3 || p >= (std::uint64_t{1} << 62) || !is_prime(p))
    throw CliError{kNotPrime, "p = " + std::to_string(p) + " is not an odd prime"};
  return p;
}

GenWord require_word(const std::string& text) {
  try {
    return parse_word(text);
  } catch (const WordSyntaxError& e) {
    throw CliError{kBadWord, e.what()};
  }
}

Space require_space(const Globals& g) {
  auto space = parse_space(g.space);
  if (!space) throw CliError{kUsage, "unknown space '" + g.space + "' (expected X, Xstar or Y)"};
  if (*space != Space::FullSurface && g.kappa != -2)
    throw CliError{kSpaceMismatch, "space " + g.space + " is only defined for kappa = -2"};
  return *space;
}

void require_table_size(std::uint64_t p) {
  if (p > 65521) throw CliError{kUsage, "point tables are limited to p <= 65521"};
}

void check_word_for_space(const GenWord& w, Space space) {
  if (space == Space::NOrbitQuotient && std::any_of(w.begin(), w.end(), is_sign_change))
    throw CliError{kBadWord, "sign changes n1, n2, n3 act trivially on Y and are rejected there"};
}

int cmd_longest(const Globals& g, const std::string& word, std::uint64_t p, bool summary) {
  require_prime(p);
  require_table_size(p);
  const GenWord w = require_word(word);
  const Space space = require_space(g);
  check_word_for_space(w, space);
  if (summary) {
    const PointTable table = enumerate(PrimeModulus(p), g.kappa, space);
    const CycleSummary cs = decompose(compile(w, table, g.threads));
    std::cout << to_json(cs, p, g.kappa, format_word(w)).dump(2) << '\n';
    return kOk;
  }
  const SweepRecord r = measure(w, p, g.kappa, space, g.threads, g.timing);
  if (g.csv) {
    write_sweep_csv(std::cout, {r});
  } else {
    std::cout << to_json(r).dump(2) << '\n';
  }
  return kOk;
}

int cmd_sweep(const Globals& g, const std::string& word, std::uint64_t pmin, std::uint64_t pmax,
              const std::string& out_path) {
  if (pmin > pmax) throw CliError{kUsage, "sweep needs pmin <= pmax"};
  require_table_size(pmax);
  const GenWord w = require_word(word);
  const Space space = require_space(g);
  check_word_for_space(w, space);
  const auto rows = sweep(w, pmin, pmax, g.kappa, space, g.threads, g.timing);

  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) throw CliError{kUsage, "cannot open " + out_path + " for writing"};
  }
  std::ostream& os = out_path.empty() ? std::cout : file;
  if (g.json) {
    Json arr = Json::array();
    for (const auto& r : rows) arr.push_back(to_json(r));
    os << arr.dump(2) << '\n';
  } else {
    write_sweep_csv(os, rows);
  }
  if (!os) throw CliError{kUsage, "write failed"};
  return kOk;
}

int cmd_table1(const Globals& g, bool check) {
  const auto results = run_table1(g.threads);
  bool all_match = true;
  for (const auto& r : results) all_match = all_match && r.matches();

  if (g.json) {
    Json arr = Json::array();
    for (const auto& r : results) arr.push_back(to_json(r));
    std::cout << Json{{"p", kTable1Prime}, {"rows", arr}, {"all_match", all_match}}.dump(2) << '\n';
  } else if (g.csv) {
    std::cout << "label,longest,expected,ambiguous,match\n";
    for (const auto& r : results)
      std::cout << '"' << r.row.label << "\"," << r.longest << ',' << r.row.expected << ','
                << (r.ambiguous ? "true" : "false") << ',' << (r.matches() ? "true" : "false") << '\n';
  } else {
    std::cout << "p = " << kTable1Prime << "\n\n";
    for (bool amb : {false, true}) {
      std::cout << (amb ? "ambiguous" : "non-ambiguous") << '\n';
      for (const auto& r : results) {
        if (r.row.ambiguous != amb) continue;
        std::cout << "  " << std::left << std::setw(20) << r.row.label << std::right << std::setw(8) << r.longest;
        if (check) std::cout << "  " << (r.matches() ? "ok" : "MISMATCH (expected " + std::to_string(r.row.expected) + ")");
        std::cout << '\n';
      }
    }
  }
  if (check && !all_match) {
    std::cerr << "table1: mismatch against reference values\n";
    return kMismatch;
  }
  return kOk;
}

int cmd_verify(const Globals& g, std::uint64_t pmax, bool groupid, std::size_t budget) {
  if (pmax < 5) throw CliError{kUsage, "verify needs pmax >= 5"};
  require_table_size(pmax);
  VerifyOptions opt;
  opt.pmax = pmax;
  opt.groupid = groupid;
  opt.budget = budget;
  opt.seed = g.seed;
  const auto checks = run_verify(opt);
  bool ok = true;
  for (const auto& c : checks) ok = ok && c.passed();

  if (g.json) {
    Json arr = Json::array();
    for (const auto& c : checks) arr.push_back(to_json(c));
    std::cout << Json{{"pmax", pmax}, {"checks", arr}, {"passed", ok}}.dump(2) << '\n';
  } else {
    for (const auto& c : checks) {
      std::cout << std::left << std::setw(26) << c.name << std::right << std::setw(6) << c.primes_tested << "  "
                << (c.passed() ? "pass" : "FAIL");
      if (!c.passed()) {
        std::cout << " at p =";
        for (auto p : c.failures) std::cout << ' ' << p;
      }
      std::cout << '\n';
    }
  }
  return ok ? kOk : kMismatch;
}

int cmd_classify_word(const std::string& word) {
  const GenWord w = require_word(word);
  if (std::any_of(w.begin(), w.end(), is_sign_change))
    throw CliError{kBadWord, "sign changes have no GL_2(Z) matrix"};
  Json out = to_json(classify_matrix(word_to_matrix(w)));
  out["word"] = format_word(w);
  std::cout << out.dump(2) << '\n';
  return kOk;
}

int cmd_points(const Globals& g, std::uint64_t p) {
  require_prime(p);
  require_table_size(p);
  const Space space = require_space(g);
  const PointTable table = enumerate(PrimeModulus(p), g.kappa, space);
  if (g.json) {
    Json pts = Json::array();
    for (const auto& q : table) pts.push_back({q.x, q.y, q.z});
    std::cout << Json{{"p", p}, {"kappa", g.kappa}, {"space", std::string(space_name(space))}, {"count", table.size()},
                      {"points", pts}}
                     .dump()
              << '\n';
  } else {
    write_points_csv(std::cout, table);
  }
  return kOk;
}

int cmd_group_id(const Globals& g, std::uint64_t p, std::size_t budget) {
  require_prime(p);
  require_table_size(p);
  if (p <= 3) throw CliError{kUsage, "group-id needs p > 3"};
  std::cout << to_json(classify(p, budget, g.threads)).dump(2) << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orbits of the Out(F_2) action on Markoff-type surfaces over F_p"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--kappa", g.kappa, "Surface parameter kappa")->capture_default_str();
  app.add_option("--space", g.space, "X (full surface), Xstar (punctured) or Y (N-orbit quotient)")
      ->capture_default_str();
  auto* json_flag = app.add_flag("--json", g.json, "JSON output");
  auto* csv_flag = app.add_flag("--csv", g.csv, "CSV output");
  json_flag->excludes(csv_flag);
  app.add_option("--threads", g.threads, "Worker threads (0 = hardware concurrency)")->capture_default_str();
  app.add_option("--seed", g.seed, "Seed for sampled checks")->capture_default_str();
  app.add_flag("--timing", g.timing, "Fill elapsed_ms (otherwise 0, keeping output reproducible)");

  std::string word;
  std::uint64_t p = 0;

  auto* longest = app.add_subcommand("longest", "Longest orbit of a word on the chosen space");
  bool summary = false;
  longest->add_option("word", word, "Generator word, e.g. \"U2 V U V\"")->required();
  longest->add_option("p", p, "Odd prime")->required();
  longest->add_flag("--summary", summary, "Print the full cycle summary instead");

  auto* sweep_cmd = app.add_subcommand("sweep", "Longest orbits over a range of primes, as CSV");
  std::uint64_t pmin = 5, pmax = 3761;
  std::string out_path;
  sweep_cmd->add_option("word", word, "Generator word")->required();
  sweep_cmd->add_option("pmin", pmin, "Smallest prime")->capture_default_str();
  sweep_cmd->add_option("pmax", pmax, "Largest prime")->capture_default_str();
  sweep_cmd->add_option("--out", out_path, "Write to this file instead of stdout");

  auto* table1 = app.add_subcommand("table1", "Longest orbits of the 34 reference words at p = 727");
  bool check = false;
  table1->add_flag("--check", check, "Compare against the reference values; exit 1 on mismatch");

  auto* verify = app.add_subcommand("verify", "Point counts, fixed points and parities for 3 < p <= pmax");
  std::uint64_t verify_pmax = 200;
  bool groupid = false;
  std::size_t budget = 5000;
  verify->add_option("pmax", verify_pmax, "Largest prime")->required();
  verify->add_flag("--groupid", groupid, "Also identify the generated group for p <= 47");
  verify->add_option("--budget", budget, "Word budget for group identification")->capture_default_str();

  auto* classify_word = app.add_subcommand("classify-word", "Matrix, trace, SR sequence and ambiguity of a word");
  classify_word->add_option("word", word, "Generator word")->required();

  auto* points = app.add_subcommand("points", "Dump the points of the chosen space");
  points->add_option("p", p, "Odd prime")->required();

  auto* group_id = app.add_subcommand("group-id", "Identify the group generated on Y for one prime");
  group_id->add_option("p", p, "Prime > 3")->required();
  group_id->add_option("--budget", budget, "Word budget for the Jordan element search")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*longest) return cmd_longest(g, word, p, summary);
    if (*sweep_cmd) return cmd_sweep(g, word, pmin, pmax, out_path);
    if (*table1) return cmd_table1(g, check);
    if (*verify) return cmd_verify(g, verify_pmax, groupid, budget);
    if (*classify_word) return cmd_classify_word(word);
    if (*points) return cmd_points(g, p);
    if (*group_id) return cmd_group_id(g, p, budget);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << '\n';
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
