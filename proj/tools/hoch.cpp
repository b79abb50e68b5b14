// hoch: command-line front end. Reads a JSON document (a file, or stdin with
// "-"), writes the JSON report to stdout or --out, and exits with the
// command's code.

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"

#include "hoch/cli.hpp"

namespace {

bool read_input(const std::string& path, std::string& text) {
  if (path.empty()) return true;
  if (path == "-") {
    std::ostringstream s;
    s << std::cin.rdbuf();
    text = s.str();
    return true;
  }
  std::ifstream in(path);
  if (!in) return false;
  std::ostringstream s;
  s << in.rdbuf();
  text = s.str();
  return true;
}

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
  return static_cast<bool>(out);
}

const std::map<std::string, std::string> kAbout{
    {"validate", "check the algebra and the A_k relations"},
    {"hh", "Hochschild cohomology by bidegree"},
    {"props", "randomized identity checks"},
    {"e-page", "terms of the spectral sequence"},
    {"obstruct", "obstruction class to extending the structure"},
    {"extend", "run the extension solver"},
    {"collapse-check", "collapse hypotheses and vanishing of E3"},
    {"section8", "identities of the Laurent model"}};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hochschild cohomology, A_k obstructions and spectral pages with exact arithmetic"};
  app.require_subcommand(1);

  hoch::cli::Flags flags;
  std::string input, out_path, report_path;
  int trials = 0, page = 0, ch = -1, degree = -1;

  for (const auto& name : hoch::cli::commands()) {
    CLI::App* sub = app.add_subcommand(name, kAbout.at(name));
    sub->add_option("input", input, "JSON document, or - for stdin")->required(name != "section8");
    sub->add_option("--out", out_path, "write the JSON report here instead of stdout");
    sub->add_option("--report", report_path, "write a plain-text summary here");
    sub->add_option("--threads", flags.threads, "worker threads")->check(CLI::NonNegativeNumber);
    sub->add_option("--seed", flags.seed, "random seed");
    sub->add_flag("--timing", flags.timing, "add wall-clock time to the report");
    if (name == "props") sub->add_option("--trials", trials, "random trials per identity")->check(CLI::PositiveNumber);
    if (name == "e-page" || name == "obstruct") sub->add_option("--page", page, "page number");
    if (name == "section8") {
      sub->add_option("--char", ch, "characteristic, 0 for the rationals");
      sub->add_option("--max-poly-degree", degree, "degree bound of the witness search");
    }
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  if (trials > 0) flags.trials = trials;
  if (page > 0) flags.page = page;
  if (ch >= 0) flags.characteristic = ch;
  if (degree >= 0) flags.max_poly_degree = degree;

  std::string text;
  if (!read_input(input, text)) {
    std::cerr << "cannot read " << input << "\n";
    return 1;
  }
  hoch::cli::Outcome o = hoch::cli::run(command, text, flags);
  const std::string json = o.report.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << json;
  } else if (!write_file(out_path, json)) {
    std::cerr << "cannot write " << out_path << "\n";
    return 1;
  }
  if (!report_path.empty() && !write_file(report_path, o.text)) {
    std::cerr << "cannot write " << report_path << "\n";
    return 1;
  }
  if (o.report.contains("error")) std::cerr << o.text;
  return o.exit_code;
}
