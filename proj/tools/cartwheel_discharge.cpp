// cartwheel-discharge: command-line front end.
//
// Exit codes: 0 verified / clean, 1 verification failure or lint findings,
// 2 malformed or missing input, 3 internal error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "cartwheel/cartwheel.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kMalformed = 2;
constexpr int kInternal = 3;

// Missing or unreadable input; reported as malformed.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Prefix parse errors with the file they came from.
template <class F>
auto in_file(const std::string& path, F&& f) {
  try {
    return f(read_file(path));
  } catch (const cartwheel::ParseError& e) {
    throw InputError(path + ": " + e.what());
  } catch (const cartwheel::EmbeddingError& e) {
    throw InputError(path + ": " + e.what());
  }
}

struct Options {
  int degree = 0;
  std::string rules, presentation, configurations, golden;
  bool trace = false;
  int jobs = 0;
};

std::optional<std::string> golden_mismatch(const cartwheel::OutletTable& table, const std::string& path) {
  const auto golden = in_file(path, [](const std::string& text) { return cartwheel::parse_outlet_table(text); });
  return cartwheel::diff_outlet_tables(table, golden);
}

void write_trace(const std::vector<std::string>& records, int degree) {
  const char* dir = std::getenv("CARTWHEEL_TRACE_DIR");
  if (!dir || !*dir) {
    for (const auto& r : records) std::cout << r << "\n";
    return;
  }
  const auto path = std::filesystem::path(dir) / ("trace-d" + std::to_string(degree) + ".txt");
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  for (const auto& r : records) out << r << "\n";
}

int cmd_verify(const Options& o) {
  using namespace cartwheel;
  const auto rules = in_file(o.rules, [](const std::string& t) { return parse_rules(t); });
  const auto pres = in_file(o.presentation, [&](const std::string& t) {
    auto p = parse_presentation(t);
    if (p.degree != o.degree) {
      throw ParseError(1, "presentation is for degree " + std::to_string(p.degree) + ", not " +
                              std::to_string(o.degree));
    }
    return p;
  });
  const auto db = in_file(o.configurations, [](const std::string& t) { return load_database(t); });
  OutletTable table;
  try {
    table = derive_outlets(rules, o.degree);
  } catch (const EmbeddingError& e) {
    throw InputError(o.rules + ": " + e.what());
  }
  if (!o.golden.empty()) {
    if (auto diff = golden_mismatch(table, o.golden)) {
      std::cout << "FAILED degree " << o.degree << ": " << o.golden << ": " << *diff << "\n";
      return kFailed;
    }
  }

  PresentationOptions options;
  options.trace = o.trace;
  options.jobs = o.jobs;
  const auto result = run_presentation(pres, table, db, options);
  if (o.trace) write_trace(result.trace, o.degree);
  if (!result.ok) {
    std::cout << "FAILED degree " << o.degree << ": " << o.presentation << ": line " << result.line << ": "
              << result.message << "\n";
    if (!result.branch.empty()) {
      std::cout << "  branch:";
      for (const auto& c : result.branch) std::cout << " (" << c.n << "," << c.m << ")";
      std::cout << "\n";
    }
    return kFailed;
  }
  std::cout << "verified degree " << o.degree << ": " << pres.lines.size() << " lines, " << table.size()
            << " outlets, " << db.size() << " configurations (" << result.hubcaps << " hubcap, "
            << result.reductions << " reducibility, " << result.symmetries << " symmetry dispositions)\n";
  return kOk;
}

int cmd_derive(const Options& o) {
  using namespace cartwheel;
  const auto table = in_file(o.rules, [&](const std::string& t) { return derive_outlets(parse_rules(t), o.degree); });
  std::cout << format_outlet_table(table);
  if (!o.golden.empty()) {
    if (auto diff = golden_mismatch(table, o.golden)) {
      std::cerr << o.golden << ": " << *diff << "\n";
      return kFailed;
    }
  }
  return kOk;
}

int cmd_lint(const Options& o) {
  using namespace cartwheel;
  int findings = 0;
  auto run = [&](const std::string& path, std::vector<std::string> (*lint)(std::string_view)) {
    if (path.empty()) return;
    for (const auto& f : lint(read_file(path))) {
      std::cout << path << ": " << f << "\n";
      ++findings;
    }
  };
  run(o.rules, lint_rules);
  run(o.presentation, lint_presentation);
  run(o.configurations, lint_configurations);
  return findings == 0 ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Check discharging certificates for the cartwheel case analysis"};
  app.require_subcommand(1);
  Options o;
  o.jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

  auto* verify = app.add_subcommand("verify", "Verify a presentation against rules and configurations");
  verify->add_option("-d,--degree", o.degree, "Hub degree")->required()->check(CLI::Range(7, 11));
  verify->add_option("-r,--rules", o.rules, "Rules file")->required();
  verify->add_option("-p,--presentation", o.presentation, "Presentation file")->required();
  verify->add_option("-c,--configurations", o.configurations, "Good configuration file")->required();
  verify->add_option("--golden", o.golden, "Expected outlet table");
  verify->add_flag("--trace", o.trace, "Print one record per presentation line");
  verify->add_option("--jobs", o.jobs, "Worker threads for hubcap triples")->check(CLI::PositiveNumber);

  auto* derive = app.add_subcommand("derive-outlets", "Print the outlet table derived from the rules");
  derive->add_option("-d,--degree", o.degree, "Hub degree")->required()->check(CLI::Range(5, 11));
  derive->add_option("-r,--rules", o.rules, "Rules file")->required();
  derive->add_option("--golden", o.golden, "Expected outlet table");

  auto* lint = app.add_subcommand("lint", "Static checks of input files");
  lint->add_option("-r,--rules", o.rules, "Rules file");
  lint->add_option("-p,--presentation", o.presentation, "Presentation file");
  lint->add_option("-c,--configurations", o.configurations, "Good configuration file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kMalformed;
  }

  try {
    if (*verify) return cmd_verify(o);
    if (*derive) return cmd_derive(o);
    return cmd_lint(o);
  } catch (const cartwheel::InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kMalformed;
  } catch (const cartwheel::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kMalformed;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kMalformed;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}
