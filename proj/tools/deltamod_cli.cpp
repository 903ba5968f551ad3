#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "deltamod/commands.hpp"

using namespace deltamod;

namespace {

IntMatrix load_matrix_file(const std::string& path, std::vector<std::string>* labels) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open file: " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_matrix_text(ss.str(), labels);
}

void write_text(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw std::invalid_argument("cannot write file: " + out_path);
  f << text;
}

int emit(const Report& report, const std::string& out_path) {
  write_text(report.to_json().dump(2) + "\n", out_path);
  return report.all_pass() ? 0 : 1;
}

std::pair<int, int> parse_r_range(const std::string& spec) {
  auto to_int = [&](const std::string& t) {
    size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(t, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad --r value: " + spec);
    }
    if (used != t.size()) throw std::invalid_argument("bad --r value: " + spec);
    return v;
  };
  auto pos = spec.find("..");
  if (pos == std::string::npos) {
    int v = to_int(spec);
    return {v, v};
  }
  return {to_int(spec.substr(0, pos)), to_int(spec.substr(pos + 2))};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact arithmetic checks for 2-modular matrices and their matroids"};
  app.require_subcommand(1);

  std::string file, out_path, name, pattern, rspec = "2..6";
  long long delta = 2;
  int rval = 0, cap = 0;
  unsigned seed = 0;
  bool totally = false;
  app.add_option("--seed", seed, "seed for sampled utilities (reserved)");

  auto* c_modcheck = app.add_subcommand("modcheck", "bound the minors of a matrix file");
  c_modcheck->add_option("--file", file, "matrix file")->required();
  c_modcheck->add_option("--delta", delta, "bound (default 2)");
  c_modcheck->add_flag("--totally", totally, "check all square minors, not just rank-sized ones");
  c_modcheck->add_option("-o", out_path, "report file (default stdout)");

  auto* c_construct = app.add_subcommand("construct", "print a named matrix (A, Aprime, D, H, MK, or a catalog name)");
  c_construct->add_option("name", name, "family or catalog name")->required();
  c_construct->add_option("--r", rval, "rank / vertex parameter");
  c_construct->add_option("-o", out_path, "output file (default stdout)");

  auto* c_epsilon = app.add_subcommand("epsilon", "count points (distinct nonzero parallel classes)");
  c_epsilon->add_option("name", name, "family: A, Aprime, T, Tprime");
  c_epsilon->add_option("--file", file, "matrix file");
  c_epsilon->add_option("--r", rval, "rank parameter for a named family");
  c_epsilon->add_option("-o", out_path, "report file (default stdout)");

  auto* c_verify = app.add_subcommand("verify-main", "modularity, point counts, and minor-freeness per rank");
  c_verify->add_option("--r", rspec, "rank or range MIN..MAX (default 2..6)");
  c_verify->add_option("-o", out_path, "report file (default stdout)");

  auto* c_excluded = app.add_subcommand("excluded-minor", "certify excluded minors of the totally 2-modular class");
  c_excluded->add_option("--file", file, "matrix file (default: the three catalog instances)");
  c_excluded->add_option("-o", out_path, "report file (default stdout)");

  auto* c_rank2 = app.add_subcommand("rank2", "maximum rank-2 family size for a given delta");
  c_rank2->add_option("--delta", delta, "bound, 1..8")->required();
  c_rank2->add_option("-o", out_path, "report file (default stdout)");

  auto* c_classify = app.add_subcommand("classify-extension", "type every non-clique column of a clique instance");
  c_classify->add_option("--file", file, "matrix file")->required();
  c_classify->add_option("-o", out_path, "report file (default stdout)");

  auto* c_analyze = app.add_subcommand("analyze", "structure and bounds of a spanning-clique instance");
  c_analyze->add_option("--file", file, "matrix file")->required();
  c_analyze->add_option("-o", out_path, "report file (default stdout)");

  auto* c_minor = app.add_subcommand("minor", "decide whether a named pattern is a minor of the file's matroid");
  c_minor->add_option("pattern", pattern, "pattern name, e.g. 'U(2,5)', F7, R9, U24+U24")->required();
  c_minor->add_option("--file", file, "matrix file")->required();
  c_minor->add_option("--cap", cap, "host size cap (default 20)");
  c_minor->add_option("-o", out_path, "report file (default stdout)");

  auto* c_proj = app.add_subcommand("projections", "exhaustive census of simple clique extensions");
  c_proj->add_option("--r", rval, "clique rank, 3 or 4")->required();
  c_proj->add_option("--cap", cap, "flat cap for the modular-cut enumeration");
  c_proj->add_option("-o", out_path, "report file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    auto t0 = std::chrono::steady_clock::now();
    Report report;
    if (c_modcheck->parsed()) {
      auto m = load_matrix_file(file, nullptr);
      report = cmd_modcheck(m, delta, totally);
    } else if (c_construct->parsed()) {
      auto out = cli_construct(name, rval);
      std::string text = to_text(out.matrix, out.labels.empty() ? nullptr : &out.labels);
      if (out.field != "Q") text += "# field: " + out.field + "\n";
      write_text(text, out_path);
      return 0;
    } else if (c_epsilon->parsed()) {
      if (!file.empty()) {
        auto m = load_matrix_file(file, nullptr);
        report = cmd_epsilon_file(m);
      } else if (!name.empty()) {
        report = cmd_epsilon_named(name, rval);
      } else {
        throw std::invalid_argument("epsilon: give a family name or --file");
      }
    } else if (c_verify->parsed()) {
      auto [lo, hi] = parse_r_range(rspec);
      report = cmd_verify_main(lo, hi);
    } else if (c_excluded->parsed()) {
      if (file.empty()) {
        report = cmd_excluded_minors();
      } else {
        std::vector<std::string> labels;
        auto m = load_matrix_file(file, &labels);
        report = cmd_excluded_minor_file(m, std::move(labels));
      }
    } else if (c_rank2->parsed()) {
      report = cmd_rank2(delta);
    } else if (c_classify->parsed()) {
      std::vector<std::string> labels;
      auto m = load_matrix_file(file, &labels);
      report = cmd_classify_extension(m, std::move(labels));
    } else if (c_analyze->parsed()) {
      std::vector<std::string> labels;
      auto m = load_matrix_file(file, &labels);
      report = cmd_analyze(m, std::move(labels));
    } else if (c_minor->parsed()) {
      std::vector<std::string> labels;
      auto m = load_matrix_file(file, &labels);
      report = cmd_minor(m, std::move(labels), pattern, cap > 0 ? cap : 20);
    } else if (c_proj->parsed()) {
      report = cmd_projections(rval, cap);
    } else {
      return 2;
    }
    report.runtime_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
    return emit(report, out_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
