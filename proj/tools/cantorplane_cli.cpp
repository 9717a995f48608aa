#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cantorplane/report_io.hpp"

using namespace cantorplane;

namespace {

constexpr int kOk = 0;
constexpr int kDomain = 1;
constexpr int kMalformed = 2;
constexpr int kBudget = 3;
constexpr int kVerifyFailed = 4;

struct Malformed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Malformed("cannot read " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Malformed(path + ": " + e.what());
  }
}

Support support_arg(const std::string& s) {
  try {
    return parse_support(s);
  } catch (const DomainError&) {
    throw;
  } catch (const std::exception& e) {
    throw Malformed(std::string("bad support: ") + e.what());
  }
}

Rat rational_arg(const std::string& s) {
  try {
    return parse_rational(s);
  } catch (const std::exception& e) {
    throw Malformed("bad rational '" + s + "'");
  }
}

void emit(const std::string& format, const json& j, const std::string& text) {
  if (format == "json")
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text << (text.empty() || text.back() == '\n' ? "" : "\n");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Cantor-set schemes in the plane and Kuratowski's function"};
  app.require_subcommand(1);
  std::string format = "text";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));

  auto* kur = app.add_subcommand("kuratowski", "Evaluate Kuratowski objects");
  kur->require_subcommand(1);
  std::string support_s, word, t_s;
  int prefix_len = 16;
  int depth_k = 0;
  auto* k_eval = kur->add_subcommand("eval", "f at a finite support");
  k_eval->add_option("--support", support_s, "Comma-separated support")->required();
  auto* k_interval = kur->add_subcommand("interval", "Enclosure of a cylinder or the closure slice of a support");
  k_interval->add_option("--word", word, "0/1 word");
  k_interval->add_option("--support", support_s, "Comma-separated support");
  auto* k_fiber = kur->add_subcommand("fiber", "Support prefix of the fiber point of t");
  k_fiber->add_option("--t", t_s, "Rational in [-1,1]")->required();
  k_fiber->add_option("--prefix-len", prefix_len, "Coordinates to print")->check(CLI::NonNegativeNumber);
  auto* k_accum = kur->add_subcommand("accum", "Is (d, t) an accumulation point of the fiber");
  k_accum->add_option("--support", support_s, "Comma-separated support")->required();
  k_accum->add_option("--t", t_s, "Rational in [-1,1]")->required();
  k_accum->add_option("--depth", depth_k, "Unused; accepted for symmetry");

  auto* run = app.add_subcommand("run", "Run a multi-stage construction from a config");
  std::string config, out = "out";
  std::optional<int> depth, bound, samples;
  std::optional<long> budget;
  std::optional<std::size_t> ma;
  run->add_option("--config", config, "Run config JSON")->required();
  run->add_option("--out", out, "Output directory");
  run->add_option("--depth", depth, "Maximum support size");
  run->add_option("--bound", bound, "Maximum support index");
  run->add_option("--ma-points", ma, "Number of points of A to track");
  run->add_option("--budget", budget, "Candidate budget per stage chain");
  run->add_option("--samples", samples, "Samples per boundary check");

  auto* validate = app.add_subcommand("validate", "Validate a scheme JSON file");
  std::string scheme_path;
  validate->add_option("scheme", scheme_path, "Scheme JSON")->required();

  auto* fixture = app.add_subcommand("fixture", "Emit a built-in scheme");
  std::string fixture_name = "radial";
  int fx_depth = 6, fx_bound = 6;
  fixture->add_option("name", fixture_name)->check(CLI::IsMember({"radial"}));
  fixture->add_option("--depth", fx_depth)->check(CLI::NonNegativeNumber);
  fixture->add_option("--bound", fx_bound)->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kMalformed;
  }

  try {
    if (k_eval->parsed()) {
      DyadicRational v = eval_finite(support_arg(support_s));
      emit(format, {{"support", support_arg(support_s)}, {"value", v.to_string()}}, v.to_string());
    } else if (k_interval->parsed()) {
      RationalInterval iv;
      if (!word.empty()) {
        if (word.find_first_not_of("01") != std::string::npos) throw Malformed("word must be 0/1");
        iv = eval_cylinder(Cylinder{word});
      } else if (!support_s.empty()) {
        iv = closure_slice(support_arg(support_s)).interval;
      } else {
        throw Malformed("interval needs --word or --support");
      }
      emit(format, {{"lo", iv.lo.get_str()}, {"hi", iv.hi.get_str()}}, iv.to_string());
    } else if (k_fiber->parsed()) {
      CantorPoint x = fiber_point(rational_arg(t_s));
      Support s = x.support(prefix_len);
      std::string joined;
      for (std::size_t i = 0; i < s.size(); ++i) joined += (i ? "," : "") + std::to_string(s[i]);
      emit(format, {{"t", t_s}, {"prefix_len", prefix_len}, {"support", s}}, "supp: " + joined);
    } else if (k_accum->parsed()) {
      bool r = accumulation_test(support_arg(support_s), rational_arg(t_s));
      emit(format, {{"accumulation", r}}, r ? "true" : "false");
    } else if (validate->parsed()) {
      CantorScheme s;
      try {
        s = scheme_from_json(read_json(scheme_path));
      } catch (const Malformed&) {
        throw;
      } catch (const std::exception& e) {
        throw Malformed(e.what());
      }
      ValidationReport rep = validate_scheme(s);
      emit(format, rep.to_json(), rep.text());
      return rep.ok() ? kOk : kVerifyFailed;
    } else if (fixture->parsed()) {
      std::cout << scheme_to_json(radial_scheme(fx_depth, fx_bound)).dump(2) << "\n";
    } else if (run->parsed()) {
      RunConfig cfg;
      try {
        cfg = RunConfig::from_json(read_json(config));
      } catch (const Malformed&) {
        throw;
      } catch (const std::exception& e) {
        throw Malformed(std::string("config: ") + e.what());
      }
      if (depth) cfg.depth = *depth;
      if (bound) cfg.bound = *bound;
      if (ma) cfg.mA = *ma;
      if (budget) cfg.budget = *budget;
      if (samples) cfg.samples = *samples;
      if (cfg.budget <= 0 || cfg.depth < 0 || cfg.bound < 0 || cfg.samples < 0) throw Malformed("config: budgets must be positive");
      RunResult res;
      try {
        res = run_construction(cfg);
      } catch (const ChainBudgetExhausted& e) {
        write_partial_chain(e.partial(), out);
        std::cerr << "budget exhausted: " << e.what() << "\n";
        std::cerr << "partial chain with " << e.partial().chain.size() << " conditions written to " << out << "\n";
        return kBudget;
      }
      write_artifacts(res, cfg, out);
      json rep = res.report_json(cfg);
      std::ostringstream text;
      for (const auto& st : rep["stages"])
        text << "stage " << st["id"] << " " << st["name"].get<std::string>() << ": " << st["branch"].get<std::string>()
             << (st.contains("points") ? " (" + std::to_string(st["points"].get<long>()) + " points)" : "") << "\n";
      for (const auto& r : res.reports)
        text << r.name << ": " << (r.ok() ? "pass" : "FAIL") << " (" << r.checks << " checks, " << r.failures
             << " failures)\n";
      text << (res.ok() ? "all verifications pass" : "verification failures") << "\n";
      emit(format, {{"ok", res.ok()}, {"out", out}, {"failures", rep["failures"]}}, text.str());
      return res.ok() ? kOk : kVerifyFailed;
    }
  } catch (const Malformed& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kMalformed;
  } catch (const UnsupportedRegion& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kMalformed;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kDomain;
  } catch (const BudgetExhausted& e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return kBudget;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kMalformed;
  }
  return kOk;
}
