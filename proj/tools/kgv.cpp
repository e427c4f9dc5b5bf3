// kgv — construct and verify finitely presented higher-rank graphs.
//
// Subcommands:
//   validate <file>            check the combinatorial axioms of the graph
//   skew <file>                print the windowed skew-product graph as a spec
//   verify <file> --suite <s>  run a verification suite over the spec
//
// Exit codes: 0 all checks passed (inconclusive allowed unless --strict),
// 1 a check failed or the spec is semantically unusable, 2 the file does not
// parse, 3 only-inconclusive results with --strict.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kgv/suites.hpp"
#include "kgv/validate.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw kgv::ParseError("cannot read file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<long long> parse_coords(const std::string& s, const char* what) {
  std::vector<long long> out;
  size_t pos = 0;
  while (pos <= s.size()) {
    size_t comma = s.find(',', pos);
    std::string part = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(part, &used);
    } catch (const std::exception&) {
      used = std::string::npos;
    }
    if (used != part.size())
      throw kgv::PreconditionError(std::string(what) + ": expected comma-separated integers, got '" +
                                   s + "'");
    out.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

// "hi" (lower corner = 0) or "lo:hi".
std::pair<kgv::Monoid::Elt, kgv::Monoid::Elt> parse_window_flag(const std::string& s) {
  size_t colon = s.find(':');
  if (colon == std::string::npos) {
    kgv::Monoid::Elt hi = parse_coords(s, "--window");
    return {kgv::Monoid::Elt(hi.size(), 0), hi};
  }
  return {parse_coords(s.substr(0, colon), "--window"),
          parse_coords(s.substr(colon + 1), "--window")};
}

struct ReportMode {
  bool structured = false;
};

void print_report(const kgv::Report& r, const ReportMode& mode) {
  int pass = 0, fail = 0, untested = 0;
  for (const auto& c : r.checks) {
    if (c.status == kgv::Status::pass) ++pass;
    if (c.status == kgv::Status::fail) ++fail;
    if (c.status == kgv::Status::untested) ++untested;
  }
  if (mode.structured) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : r.checks) {
      nlohmann::json jc{{"id", c.id}, {"status", kgv::status_name(c.status)}};
      if (!c.witness.empty()) jc["witness"] = c.witness;
      checks.push_back(std::move(jc));
    }
    nlohmann::json j{{"format", 1},
                     {"suite", r.suite},
                     {"checks", std::move(checks)},
                     {"counts", {{"pass", pass}, {"fail", fail}, {"untested", untested}}}};
    std::cout << j.dump(2) << "\n";
    return;
  }
  for (const auto& c : r.checks) {
    std::cout << kgv::status_name(c.status) << "  " << c.id;
    if (!c.witness.empty()) std::cout << "  |  " << c.witness;
    std::cout << "\n";
  }
  std::cout << "suite " << r.suite << ": " << pass << " passed, " << fail << " failed, "
            << untested << " untested\n";
}

int exit_for(const kgv::Report& r, bool strict) {
  if (r.any_fail()) return 1;
  if (strict && r.any_untested()) return 3;
  return 0;
}

int cmd_validate(const std::string& file, const ReportMode& mode) {
  kgv::SpecData sd = kgv::parse_spec(slurp(file));
  kgv::Report r = kgv::validate_kgraph(*sd.graph);
  print_report(r, mode);
  return r.any_fail() ? 1 : 0;
}

int cmd_skew(const std::string& file, const std::optional<std::string>& window_flag) {
  kgv::SpecData sd = kgv::parse_spec(slurp(file));
  if (!sd.monoid) throw kgv::PreconditionError("skew needs a MONOID section");
  if (!sd.functor) throw kgv::PreconditionError("skew needs a FUNCTOR section");
  std::pair<kgv::Monoid::Elt, kgv::Monoid::Elt> w;
  if (window_flag)
    w = parse_window_flag(*window_flag);
  else if (sd.window)
    w = *sd.window;
  else if (sd.monoid->kind() == kgv::Monoid::Kind::finite)
    w = {sd.monoid->identity(), sd.monoid->identity()};
  else
    throw kgv::PreconditionError("skew needs a WINDOW section or --window");
  kgv::SkewProduct sk = kgv::skew_product(*sd.graph, *sd.monoid, *sd.functor, w.first, w.second);
  kgv::SpecData out;
  out.rank = sk.graph.rank();
  out.graph = sk.graph;
  std::cout << kgv::serialize_spec(out);
  return 0;
}

int cmd_verify(const std::string& file, const std::string& suite,
               const std::optional<std::string>& window_flag,
               const std::optional<std::string>& bound_flag,
               const std::optional<std::string>& depth_flag, bool strict,
               const ReportMode& mode) {
  kgv::SpecData sd = kgv::parse_spec(slurp(file));
  kgv::SuiteOptions opt;
  if (window_flag) opt.window = parse_window_flag(*window_flag);
  if (bound_flag) opt.bound = kgv::Degree(parse_coords(*bound_flag, "--bound"));
  if (depth_flag) opt.depth = kgv::Degree(parse_coords(*depth_flag, "--depth"));
  kgv::Report r = kgv::run_suite(sd, suite, opt);
  print_report(r, mode);
  return exit_for(r, strict);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"construct and verify finitely presented higher-rank graphs"};
  app.require_subcommand(1);

  std::string file, suite, report = "plain";
  std::optional<std::string> window_flag, bound_flag, depth_flag;
  bool strict = false;

  auto add_report = [&](CLI::App* c) {
    c->add_option("--report", report, "output form: plain or structured")
        ->check(CLI::IsMember({"plain", "structured"}));
  };

  CLI::App* validate = app.add_subcommand("validate", "check the graph axioms");
  validate->add_option("file", file, "spec file")->required();
  add_report(validate);

  CLI::App* skew = app.add_subcommand("skew", "print the windowed skew-product graph");
  skew->add_option("file", file, "spec file")->required();
  skew->add_option("--window", window_flag, "window '<hi>' or '<lo>:<hi>'");

  CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("file", file, "spec file")->required();
  verify->add_option("--suite", suite, "lemma21, gross-tucker, thm51, main, dilation-hyp, "
                     "or aperiodicity")
      ->required();
  verify->add_option("--window", window_flag, "window '<hi>' or '<lo>:<hi>'");
  verify->add_option("--bound", bound_flag, "degree bound 'm1,m2,...'");
  verify->add_option("--depth", depth_flag, "search depth 'd1,d2,...'");
  verify->add_flag("--strict", strict, "exit 3 when results are inconclusive-only");
  add_report(verify);

  CLI11_PARSE(app, argc, argv);
  ReportMode mode{report == "structured"};

  try {
    if (validate->parsed()) return cmd_validate(file, mode);
    if (skew->parsed()) return cmd_skew(file, window_flag);
    return cmd_verify(file, suite, window_flag, bound_flag, depth_flag, strict, mode);
  } catch (const kgv::ParseError& e) {
    std::cerr << "kgv: parse error: " << e.what() << "\n";
    return 2;
  } catch (const kgv::Error& e) {
    std::cerr << "kgv: " << e.what() << "\n";
    return 1;
  }
}
