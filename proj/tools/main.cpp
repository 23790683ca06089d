// Copyright 2026 The flexsusp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// flexsusp command-line tool: synthesize | trace | verify | report.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "flexsusp/errors.hpp"
#include "flexsusp/flexer/flexer.hpp"
#include "flexsusp/synthesis/suspension.hpp"
#include "flexsusp/verify/verify.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using namespace flexsusp;

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kUsage = 2, kDomain = 3 };

/// Reported as exit code 2.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string dataset = "hexagon";
  std::string in;
  std::string out;
  int precision = 0;
  int grid = 201;
  double tol = 1e-8;
  std::string xmin;
  std::string xmax;
  std::vector<std::string> edges;
  std::string height = "3";
  double crossing_angle = 0;
  std::string expect = "auto";
  unsigned threads = 0;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw IoError("cannot write '" + path + "'");
}

std::string dataset_of(const RunConfig& cfg) {
  if (!cfg.in.empty() && cfg.dataset == "hexagon") return "file";
  return cfg.dataset;
}

BricardResult bricard_from(const RunConfig& cfg, const CLI::App& app) {
  std::vector<Rational> e;
  for (const std::string& s : cfg.edges) e.push_back(Rational::parse(s));
  if (e.empty()) e = {Rational(5), Rational(7)};
  if (e.size() == 2) e = {e[0], e[1], e[0], e[1]};
  if (e.size() != 4) throw CLI::ValidationError("--edges", "expects two or four lengths");
  BricardParams p;
  p.edges = {e[0], e[1], e[2], e[3]};
  p.pole_height = Rational::parse(cfg.height);
  if (app.count("--crossing-angle") > 0) p.crossing_angle = cfg.crossing_angle;
  return bricard_type1(p);
}

SuspensionSpec load_spec(const RunConfig& cfg, const CLI::App& app) {
  const std::string ds = dataset_of(cfg);
  if (ds == "hexagon") return synthesize(builtin_hexagon());
  if (ds == "bricard") return bricard_from(cfg, app).spec;
  if (cfg.in.empty()) throw CLI::ValidationError("--in", "required with --dataset file");
  return spec_from_json(read_file(cfg.in));
}

std::vector<BigFloat> grid_of(const RunConfig& cfg, const SuspensionSpec& spec) {
  BigFloat lo = to_bigfloat(spec.x_min()) + BigFloat("0.5");
  BigFloat hi = to_bigfloat(spec.x_max()) - BigFloat("0.5");
  if (!cfg.xmin.empty()) lo = to_bigfloat(Rational::parse(cfg.xmin));
  if (!cfg.xmax.empty()) hi = to_bigfloat(Rational::parse(cfg.xmax));
  return uniform_grid(lo, hi, cfg.grid);
}

void print_tables(std::ostream& os, const SuspensionSpec& s) {
  os << "vertex  r'  r  apex_long\n";
  for (int j = 0; j < s.n; ++j) {
    const ApexEdge& a = s.apex[static_cast<std::size_t>(j)];
    os << "  p" << (j + 1) << "  " << a.r_prime << "  " << a.r << "  " << (a.apex_long ? "north" : "south") << "\n";
  }
  os << "vertex  |Np|^2  |Sp|^2  |Np|  |Sp|\n";
  for (int j = 0; j < s.n; ++j) {
    const ApexEdge& a = s.apex[static_cast<std::size_t>(j)];
    os << "  p" << (j + 1) << "  " << north_length_sq(a) << "  " << south_length_sq(a) << "  "
       << format(north_length(a), 16) << "  " << format(south_length(a), 16) << "\n";
  }
  os << "sector  length  sign\n";
  for (int j = 0; j < s.n; ++j) {
    os << "  " << (j + 1) << "-" << ((j + 1) % s.n + 1) << "  " << s.equator[static_cast<std::size_t>(j)] << "  "
       << (s.epsilon[static_cast<std::size_t>(j)] > 0 ? "+1" : "-1") << "\n";
  }
}

int cmd_synthesize(const RunConfig& cfg, const CLI::App& app) {
  const std::string ds = dataset_of(cfg);
  SuspensionSpec spec;
  if (ds == "hexagon") {
    spec = synthesize(builtin_hexagon());
  } else if (ds == "bricard") {
    spec = bricard_from(cfg, app).spec;
  } else {
    if (cfg.in.empty()) throw CLI::ValidationError("--in", "required with --dataset file");
    const nlohmann::json j = nlohmann::json::parse(read_file(cfg.in), nullptr, false);
    if (j.is_discarded() || !j.contains("table") || !j.contains("assignment")) {
      throw ParseError("dataset file needs 'table' and 'assignment'");
    }
    spec = synthesize(Dataset{table_from_json(j["table"].dump()), assignment_from_json(j["assignment"].dump())});
  }
  if (cfg.out.empty()) {
    print_tables(std::cerr, spec);
    std::cout << to_json(spec) << "\n";
  } else {
    print_tables(std::cout, spec);
    write_file(cfg.out, to_json(spec) + "\n");
  }
  return kOk;
}

int cmd_trace(const RunConfig& cfg, const CLI::App& app) {
  const SuspensionSpec spec = load_spec(cfg, app);
  TraceOptions opt;
  opt.threads = cfg.threads;
  const FlexTrace tr = trace(spec, grid_of(cfg, spec), opt);
  if (cfg.out.empty()) {
    write_trace_csv(std::cout, tr);
  } else {
    std::ostringstream ss;
    write_trace_csv(ss, tr);
    write_file(cfg.out, ss.str());
  }
  return kOk;
}

ReportOptions report_options(const RunConfig& cfg) {
  ReportOptions o;
  o.grid = cfg.grid;
  o.constancy_tol = cfg.tol;
  o.trace.threads = cfg.threads;
  return o;
}

int cmd_verify(const RunConfig& cfg, const CLI::App& app) {
  const SuspensionSpec spec = load_spec(cfg, app);
  const VerificationReport rep = full_report(spec, report_options(cfg));
  if (!cfg.out.empty()) write_file(cfg.out, to_json(rep) + "\n");

  for (const CheckResult& c : rep.checks) {
    std::cout << "[" << to_string(c.status) << "] " << c.name;
    if (c.failed() && !c.details.empty()) std::cout << ": " << c.details.front();
    std::cout << "\n";
  }
  for (std::size_t i = 0; i < rep.dehn.kernels.size(); ++i) {
    std::cout << "alpha" << (i + 1) << " (sqrt " << rep.dehn.kernels[i] << "): spread "
              << format(rep.dehn.spread[i], 6) << "\n";
  }
  std::cout << "verdict: " << rep.verdict << "\n";

  std::string expect = cfg.expect;
  if (expect == "auto") {
    const std::string ds = dataset_of(cfg);
    expect = ds == "hexagon" ? "nonconstant" : ds == "bricard" ? "constant" : "none";
  }
  bool ok = rep.all_passed();
  if (expect == "nonconstant") {
    const bool hit = rep.flexible && !rep.dehn_constant;
    std::cout << (hit ? "Extended Strong Bellows: COUNTEREXAMPLE confirmed"
                      : "Extended Strong Bellows: counterexample NOT confirmed")
              << "\n";
    ok = ok && hit;
  } else if (expect == "constant") {
    const bool hit = rep.flexible && rep.dehn_constant;
    std::cout << (hit ? "Dehn functionals constant" : "Dehn functionals NOT constant") << "\n";
    ok = ok && hit;
  }
  if (!rep.all_passed()) {
    std::cout << "failed:";
    for (const CheckResult& c : rep.checks) {
      if (c.failed()) std::cout << " " << c.name;
    }
    std::cout << "\n";
  }
  return ok ? kOk : kVerifyFailed;
}

int cmd_report(const RunConfig& cfg, const CLI::App& app) {
  if (cfg.out.empty()) throw CLI::ValidationError("--out", "report needs an output directory");
  const SuspensionSpec spec = load_spec(cfg, app);
  std::error_code ec;
  fs::create_directories(cfg.out, ec);
  if (ec) throw IoError("cannot create '" + cfg.out + "': " + ec.message());
  const fs::path dir(cfg.out);

  TraceOptions topt;
  topt.threads = cfg.threads;
  const FlexTrace tr = trace(spec, grid_of(cfg, spec), topt);
  const DehnReport dehn = dehn_functionals(spec, tr, cfg.tol);
  const VerificationReport rep = full_report(spec, report_options(cfg));

  std::ostringstream trace_csv;
  write_trace_csv(trace_csv, tr);
  std::ostringstream alpha_csv;
  write_dehn_csv(alpha_csv, dehn);
  write_file((dir / "spec.json").string(), to_json(spec) + "\n");
  write_file((dir / "trace.csv").string(), trace_csv.str());
  write_file((dir / "alpha.csv").string(), alpha_csv.str());
  write_file((dir / "report.json").string(), to_json(rep) + "\n");
  std::cout << "wrote spec.json, trace.csv, alpha.csv, report.json to " << dir.string() << "\n";
  std::cout << "verdict: " << rep.verdict << "\n";
  return rep.all_passed() ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Flexible suspensions: synthesis, flexing and verification"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&cfg](CLI::App* sub) {
    sub->add_option("--dataset", cfg.dataset, "hexagon, bricard or file")
        ->check(CLI::IsMember({"hexagon", "bricard", "file"}));
    sub->add_option("--in", cfg.in, "input file (spec JSON, or dataset JSON for synthesize)");
    sub->add_option("--out", cfg.out, "output file or directory");
    sub->add_option("--precision", cfg.precision, "working precision in decimal digits")->check(CLI::Range(15, 100000));
    sub->add_option("--grid", cfg.grid, "number of samples")->check(CLI::Range(2, 10000000));
    sub->add_option("--tol", cfg.tol, "relative tolerance for constancy checks")->check(CLI::PositiveNumber);
    sub->add_option("--xmin", cfg.xmin, "first sample (rational or decimal)");
    sub->add_option("--xmax", cfg.xmax, "last sample (rational or decimal)");
    sub->add_option("--edges", cfg.edges, "bricard: two or four equator lengths")->delimiter(',');
    sub->add_option("--height", cfg.height, "bricard: distance of the poles from the symmetry plane");
    sub->add_option("--crossing-angle", cfg.crossing_angle, "bricard: angle between the crossing edges, radians");
    sub->add_option("--threads", cfg.threads, "sampling threads (0 = all cores)");
  };
  CLI::App* synth = app.add_subcommand("synthesize", "build a suspension spec and print its tables");
  CLI::App* tr = app.add_subcommand("trace", "sample the flex and write CSV");
  CLI::App* ver = app.add_subcommand("verify", "run every check and print a verdict");
  CLI::App* rep = app.add_subcommand("report", "write spec, trace, alpha series and report into a directory");
  for (CLI::App* sub : {synth, tr, ver, rep}) add_common(sub);
  ver->add_option("--expect", cfg.expect, "expected Dehn verdict: auto, constant, nonconstant or none")
      ->check(CLI::IsMember({"auto", "constant", "nonconstant", "none"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    const unsigned digits = cfg.precision > 0 ? static_cast<unsigned>(cfg.precision) : default_digits();
    ScopedPrecision precision(digits);
    if (synth->parsed()) return cmd_synthesize(cfg, *synth);
    if (tr->parsed()) return cmd_trace(cfg, *tr);
    if (ver->parsed()) return cmd_verify(cfg, *ver);
    return cmd_report(cfg, *rep);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomain;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomain;
  }
}
