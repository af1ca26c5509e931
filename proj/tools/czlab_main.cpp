// czlab: batch experiment runner.
//
// Usage:
//   czlab <experiment> [--config PATH] [--set section.key=value]... [--out DIR]
//   experiments: boundedness | compactness | factorization | lowerbound | kernelcheck
//
// Exit codes: 0 all checks pass, 1 any check fails, 2 config/window error.

#include <iostream>
#include <string>
#include <vector>

#include "czlab/config.hpp"
#include "czlab/error.hpp"
#include "czlab/experiments.hpp"

namespace {

void usage(std::ostream& out) {
  out << "usage: czlab <experiment> [--config PATH] [--set section.key=value]... [--out DIR]\n"
         "experiments: boundedness | compactness | factorization | lowerbound | kernelcheck\n";
}

}  // namespace

int main(int argc, char** argv) {
  using namespace czlab;
  std::vector<std::string> args(argv + 1, argv + argc);
  if (args.empty() || args[0] == "--help" || args[0] == "-h") {
    usage(args.empty() ? std::cerr : std::cout);
    return args.empty() ? 2 : 0;
  }
  std::string experiment = args[0];
  std::string out_dir = "out";
  Config cfg;
  try {
    for (std::size_t i = 1; i < args.size(); ++i) {
      if (args[i] == "--config" && i + 1 < args.size()) {
        cfg = Config::from_file(args[++i]);
      } else if (args[i] == "--set" && i + 1 < args.size()) {
        const std::string& kv = args[++i];
        std::size_t eq = kv.find('=');
        if (eq == std::string::npos) fail(errc::config_error, "--set expects section.key=value");
        cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
      } else if (args[i] == "--out" && i + 1 < args.size()) {
        out_dir = args[++i];
      } else {
        fail(errc::config_error, "unknown argument: " + args[i]);
      }
    }
    ExperimentReport report = run_experiment(experiment, cfg);
    int code = write_outputs(report, out_dir);
    for (const auto& c : report.checks)
      std::cout << (c.pass ? "PASS " : "FAIL ") << report.experiment << '/' << c.name << '\n';
    std::cout << (code == 0 ? "all checks passed" : "some checks FAILED") << " -> " << out_dir
              << "/report.json\n";
    return code;
  } catch (const Error& e) {
    std::cerr << "czlab: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "czlab: " << e.what() << '\n';
    return 2;
  }
}
