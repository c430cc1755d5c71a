// Copyright 2026 The fareystat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fareystat/acceptance.hpp"
#include "fareystat/fareystat.hpp"
#include "fareystat/io.hpp"

namespace fs = fareystat;
using nlohmann::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Config {
  int dim = 1;
  std::int64_t level = 0;
  std::string out;
  std::string format = "csv";
  std::vector<std::string> sets;
  std::string s_grid;
  std::uint64_t seed = fs::acceptance::kSeed;
  std::uint64_t samples = 100'000;
  std::string mode = "mc";
  double s = 1.0;
  double lambda = 1.0;
  std::string tol_profile = "default";
  std::string levels = "500,2000,5000";
  std::int64_t qmax = 100'000;
  std::int64_t p = 1, q = 1, m1 = 1, m2 = 1;
  unsigned threads = 0;
};

// Writes `body` to cfg.out (plus a sidecar) or to stdout.
void emit(const Config& cfg, const std::string& body, const json& meta) {
  if (cfg.out.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream os(cfg.out, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open '" + cfg.out + "' for writing");
  os << body;
  fs::io::write_json_file(fs::io::sidecar_path(cfg.out), meta);
}

std::vector<double> grid_or_empty(const std::string& text) {
  if (text.empty()) return {};
  try {
    return fs::io::parse_grid(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--s-grid: ") + e.what());
  }
}

// --set A:box:... / --set D:box:...
void parse_sets(const Config& cfg, std::optional<fs::TestSet>& a, std::optional<fs::TestSet>& d) {
  for (const auto& spec : cfg.sets) {
    if (spec.size() < 3 || spec[1] != ':' || (spec[0] != 'A' && spec[0] != 'D'))
      throw UsageError("--set: expected A:<set> or D:<set>, got '" + spec + "'");
    try {
      auto parsed = fs::parse_test_set(std::string_view(spec).substr(2), cfg.dim);
      (spec[0] == 'A' ? a : d) = std::move(parsed);
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("--set ") + spec + ": " + e.what());
    }
  }
}

json config_json(const Config& cfg, std::string_view sub) {
  json j = fs::io::sidecar_base(sub);
  j["n"] = cfg.dim;
  j["Q"] = cfg.level;
  j["sets"] = cfg.sets;
  j["s_grid"] = cfg.s_grid;
  j["seed"] = cfg.seed;
  j["samples"] = cfg.samples;
  j["mode"] = cfg.mode;
  return j;
}

int farey_gen(const Config& cfg) {
  const fs::FareySequence f = fs::enumerate(cfg.dim, cfg.level, {.build_index = false});
  std::ostringstream os;
  fs::io::write_farey_csv(os, f);
  json meta = fs::io::sidecar_base("farey gen");
  meta["n"] = cfg.dim;
  meta["Q"] = cfg.level;
  meta["rows"] = f.size();
  emit(cfg, os.str(), meta);
  return kExitPass;
}

int stats_counts(const Config& cfg, bool is_void) {
  std::optional<fs::TestSet> a, d;
  parse_sets(cfg, a, d);
  if (!a) throw UsageError("--set A:<set> is required");
  if (!d) d = fs::TestSet::unit_torus(cfg.dim);
  const std::vector<double> grid = grid_or_empty(cfg.s_grid);
  const fs::FareySequence f = fs::enumerate(cfg.dim, cfg.level);
  const fs::SamplingPlan plan{cfg.mode == "grid" ? fs::SamplingMode::Grid : fs::SamplingMode::MonteCarlo, cfg.samples,
                              cfg.seed};
  auto run = [&](const fs::TestSet& set) {
    return is_void ? fs::void_statistic(f, *d, set, plan) : fs::point_statistic(f, *d, set);
  };
  json meta = config_json(cfg, is_void ? "stats void" : "stats point");
  json dists = json::array();
  std::ostringstream os;
  if (grid.empty()) {
    const fs::CountDistribution dist = run(*a);
    if (cfg.format == "json") os << fs::io::to_json(dist).dump(2) << '\n';
    else fs::io::write_distribution_csv(os, dist);
    dists.push_back(fs::io::to_json(dist));
  } else {
    json rows = json::array();
    if (cfg.format == "csv") os << "s,k,mass\n";
    for (const double s : grid) {
      if (!(s > 0.0)) throw UsageError("--s-grid: scale factors must be positive");
      const fs::CountDistribution dist = run(a->scaled(s));
      json j = fs::io::to_json(dist);
      j["s"] = s;
      j["masses"] = dist.masses();
      dists.push_back(j);
      if (cfg.format == "csv") {
        const auto m = dist.masses();
        for (std::size_t k = 0; k < m.size(); ++k)
          os << fs::io::format_real(s) << ',' << k << ',' << fs::io::format_real(m[k]) << '\n';
      }
    }
    if (cfg.format == "json") os << dists.dump(2) << '\n';
  }
  meta["distributions"] = dists;
  emit(cfg, os.str(), meta);
  return kExitPass;
}

int stats_gaps(const Config& cfg) {
  if (cfg.dim != 1) throw UsageError("stats gaps: only --dim 1 is supported");
  std::vector<double> grid = grid_or_empty(cfg.s_grid.empty() ? "0:4:0.1" : cfg.s_grid);
  const fs::FareySequence f = fs::enumerate(1, cfg.level, {.build_index = false});
  const std::vector<double> gaps = fs::gap_distribution_1d(f);
  std::ostringstream os;
  os << "s,survival,limit\n";
  for (const double s : grid)
    os << fs::io::format_real(s) << ',' << fs::io::format_real(fs::gap_survival(gaps, s)) << ','
       << fs::io::format_real(fs::hall_cdf(s)) << '\n';
  json meta = config_json(cfg, "stats gaps");
  meta["gaps"] = gaps.size();
  emit(cfg, os.str(), meta);
  return kExitPass;
}

int limits_hall(const Config& cfg) {
  const std::vector<double> grid = grid_or_empty(cfg.s_grid.empty() ? "0:4:0.01" : cfg.s_grid);
  std::ostringstream os;
  os << "s,cdf,density,quadrature\n";
  for (const double s : grid) {
    if (s < 0.0) throw UsageError("--s-grid: s must be non-negative");
    const double quad = s > 0.0 ? fs::p0_quadrature(s) : 1.0;
    os << fs::io::format_real(s) << ',' << fs::io::format_real(fs::hall_cdf(s)) << ','
       << fs::io::format_real(fs::hall_density(s)) << ',' << fs::io::format_real(quad) << '\n';
  }
  json meta = fs::io::sidecar_base("limits hall");
  meta["s_grid"] = cfg.s_grid.empty() ? "0:4:0.01" : cfg.s_grid;
  emit(cfg, os.str(), meta);
  return kExitPass;
}

int limits_triangle(const Config& cfg) {
  std::ostringstream os;
  os << "s,lambda,closed_form,oracle\n"
     << fs::io::format_real(cfg.s) << ',' << fs::io::format_real(cfg.lambda) << ','
     << fs::io::format_real(fs::p0_triangle(cfg.s, cfg.lambda)) << ','
     << fs::io::format_real(fs::triangle_oracle(cfg.s, cfg.lambda)) << '\n';
  json meta = fs::io::sidecar_base("limits triangle");
  meta["s"] = cfg.s;
  meta["lambda"] = cfg.lambda;
  emit(cfg, os.str(), meta);
  return kExitPass;
}

int finish_reports(const Config& cfg, const std::vector<fs::VerificationReport>& reports, const std::string& sub) {
  bool ok = true;
  json arr = json::array();
  for (const auto& r : reports) {
    std::printf("%s  %-48s deviation %.3e  (%.2fs)\n", r.passed ? "PASS" : "FAIL", r.name.c_str(), r.deviation,
                r.runtime_seconds);
    ok = ok && r.passed;
    arr.push_back(fs::io::to_json(r));
  }
  if (!cfg.out.empty()) {
    json j = fs::io::sidecar_base(sub);
    j["tol_profile"] = cfg.tol_profile;
    j["reports"] = arr;
    j["passed"] = ok;
    fs::io::write_json_file(cfg.out, j);
  }
  return ok ? kExitPass : kExitFail;
}

std::vector<std::int64_t> parse_levels(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || v < 1) throw UsageError("--levels: bad level '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw UsageError("--levels: empty list");
  return out;
}

int verify_equidist(const Config& cfg) {
  const std::vector<std::int64_t> levels = parse_levels(cfg.levels);
  struct Case {
    fs::TestFunctionSpec f;
    double tol;
  };
  const std::vector<Case> cases = {{fs::TestFunctionSpec::indicator(1.0, 2.0), 0.01},
                                   {fs::TestFunctionSpec::indicator(1.0, 4.0), 0.01},
                                   {fs::TestFunctionSpec::power_window(1.0, 4.0, -1.0), 0.01},
                                   {fs::TestFunctionSpec::harmonic(1, 0, 1.0, 2.0), 0.02},
                                   {fs::TestFunctionSpec::harmonic(0, 1, 1.0, 2.0), 0.02}};
  bool ok = true;
  json functions = json::array();
  for (const auto& c : cases) {
    const double rhs = fs::rhs_integral(c.f);
    json lhs = json::array(), gaps = json::array();
    double last_gap = 0.0;
    for (const auto level : levels) {
      const std::complex<double> v = fs::farey_average(c.f, level);
      last_gap = std::abs(v - rhs);
      lhs.push_back({v.real(), v.imag()});
      gaps.push_back(last_gap);
    }
    const bool passed = last_gap <= c.tol;
    ok = ok && passed;
    std::printf("%s  %-40s gap %.3e at Q=%lld\n", passed ? "PASS" : "FAIL", c.f.describe().c_str(), last_gap,
                static_cast<long long>(levels.back()));
    functions.push_back({{"function", c.f.describe()}, {"levels", levels}, {"lhs", lhs}, {"rhs", rhs},
                         {"gaps", gaps}, {"tolerance", c.tol}, {"passed", passed}});
  }
  if (!cfg.out.empty()) {
    json j = fs::io::sidecar_base("verify equidist");
    j["tol_profile"] = cfg.tol_profile;
    j["functions"] = functions;
    j["passed"] = ok;
    fs::io::write_json_file(cfg.out, j);
  }
  return ok ? kExitPass : kExitFail;
}

int verify(const Config& cfg, const std::string& which) {
  namespace acc = fs::acceptance;
  std::vector<fs::VerificationReport> reports;
  if (which == "zeta") {
    reports.push_back(acc::zeta_identity_check());
    for (const double s : {2.0, 3.0}) reports.push_back(fs::totient_zeta_identity_check(s, cfg.qmax));
  } else if (which == "equivalence") {
    reports.push_back(acc::counting_equivalence_check());
  } else if (which == "hall") {
    for (auto fn : {acc::hall_law_check, acc::quadrature_identity_check, acc::triangle_oracle_check,
                    acc::branch_continuity_check})
      reports.push_back(fn());
  } else if (which == "equidist") {
    return verify_equidist(cfg);
  } else {
    for (const auto& c : acc::criteria()) {
      reports.push_back(c.run());
      reports.back().name = std::to_string(c.id) + ". " + c.title;
    }
  }
  return finish_reports(cfg, reports, "verify " + which);
}

int nt(const Config& cfg, const std::string& which) {
  auto need = [](bool ok, const char* msg) {
    if (!ok) throw UsageError(msg);
  };
  if (which == "totient" || which == "mobius" || which == "jordan") {
    need(cfg.q >= 1, "--q must be >= 1");
    const fs::ArithmeticTable t = fs::build_table(cfg.q, cfg.dim);
    const std::int64_t v = which == "totient" ? t.phi(cfg.q) : which == "mobius" ? t.mu(cfg.q) : t.jordan_totient(cfg.q);
    std::cout << v << '\n';
  } else if (which == "inverse") {
    std::cout << fs::mod_inverse(cfg.p, cfg.q) << '\n';
  } else if (which == "kloosterman") {
    need(cfg.q >= 1, "--q must be >= 1");
    std::cout << fs::io::format_real(fs::kloosterman(cfg.m1, cfg.m2, cfg.q)) << '\n';
  } else if (which == "zeta") {
    std::cout << fs::io::format_real(fs::zeta_real(cfg.s)) << '\n';
  } else {  // kzeta
    const fs::PartialSum z = fs::kloosterman_zeta_partial(cfg.m1, cfg.m2, cfg.s, cfg.qmax);
    std::cout << fs::io::format_real(z.value) << ',' << fs::io::format_real(z.tail_bound) << '\n';
  }
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fareystat: fine-scale statistics of multidimensional Farey sequences"};
  app.set_version_flag("--version", std::string(fs::kVersion));
  app.set_config("--config", "", "key=value file mirroring the command-line flags");
  app.require_subcommand(1);
  Config cfg;
  app.add_option("--threads", cfg.threads, "worker threads (0 = all cores)")->envname("FAREYSTAT_THREADS");

  auto add_out = [&](CLI::App* sub) { sub->add_option("--out", cfg.out, "output file (default stdout)"); };
  auto add_level = [&](CLI::App* sub) {
    sub->add_option("--dim", cfg.dim, "dimension n")->check(CLI::Range(1, fs::kMaxDim));
    sub->add_option("--level", cfg.level, "level Q")->required()->check(CLI::PositiveNumber);
  };

  std::string leaf;
  auto leaf_of = [&](CLI::App* parent, const char* name, const char* help) {
    CLI::App* sub = parent->add_subcommand(name, help);
    sub->final_callback([&leaf, name] { leaf = name; });
    return sub;
  };

  CLI::App* farey = app.add_subcommand("farey", "Farey sequence generation")->require_subcommand(1);
  CLI::App* gen = leaf_of(farey, "gen", "write F_Q as CSV p1,...,pn,q");
  add_level(gen);
  add_out(gen);

  CLI::App* stats = app.add_subcommand("stats", "empirical statistics")->require_subcommand(1);
  for (const char* name : {"void", "point", "gaps"}) {
    CLI::App* sub = leaf_of(stats, name, "count distribution / gap survival");
    add_level(sub);
    add_out(sub);
    sub->add_option("--s-grid", cfg.s_grid, "scale grid lo:hi:step");
    if (std::string(name) == "gaps") continue;
    sub->add_option("--set", cfg.sets, "A:<set> or D:<set>; sets are box:lo,hi;..., boxoc:..., ball:r");
    sub->add_option("--seed", cfg.seed, "sampling seed");
    sub->add_option("--samples", cfg.samples, "sample count")->check(CLI::PositiveNumber);
    sub->add_option("--mode", cfg.mode, "mc or grid")->check(CLI::IsMember({"mc", "grid"}));
    sub->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  }

  CLI::App* limits = app.add_subcommand("limits", "limit laws")->require_subcommand(1);
  CLI::App* hall = leaf_of(limits, "hall", "cdf, density and lambda quadrature");
  hall->add_option("--s-grid", cfg.s_grid, "grid lo:hi:step (default 0:4:0.01)");
  add_out(hall);
  CLI::App* tri = leaf_of(limits, "triangle", "triangle void probability");
  tri->add_option("--s", cfg.s)->required()->check(CLI::PositiveNumber);
  tri->add_option("--lambda", cfg.lambda)->required()->check(CLI::Range(std::numeric_limits<double>::min(), 1.0));
  add_out(tri);

  CLI::App* ver = app.add_subcommand("verify", "verification harness")->require_subcommand(1);
  for (const char* name : {"zeta", "equivalence", "equidist", "hall", "all"}) {
    CLI::App* sub = leaf_of(ver, name, "run checks; exit 1 on failure");
    sub->add_option("--tol-profile", cfg.tol_profile)->check(CLI::IsMember({"default"}));
    add_out(sub);
    if (std::string(name) == "equidist") sub->add_option("--levels", cfg.levels, "comma-separated levels");
    if (std::string(name) == "zeta") sub->add_option("--qmax", cfg.qmax)->check(CLI::PositiveNumber);
  }

  CLI::App* ntc = app.add_subcommand("nt", "number theory helpers")->require_subcommand(1);
  for (const char* name : {"totient", "mobius", "jordan", "inverse", "kloosterman", "zeta", "kzeta"}) {
    CLI::App* sub = leaf_of(ntc, name, "print one value");
    sub->add_option("--q", cfg.q);
    sub->add_option("--p", cfg.p);
    sub->add_option("--m1", cfg.m1);
    sub->add_option("--m2", cfg.m2);
    sub->add_option("--s", cfg.s);
    sub->add_option("--qmax", cfg.qmax)->check(CLI::PositiveNumber);
    sub->add_option("--dim", cfg.dim, "n for jordan")->check(CLI::Range(1, fs::kMaxDim));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitPass : kExitUsage;
  }

  fs::parallel::set_thread_count(cfg.threads);
  try {
    if (gen->parsed()) return farey_gen(cfg);
    if (stats->parsed()) return leaf == "gaps" ? stats_gaps(cfg) : stats_counts(cfg, leaf == "void");
    if (hall->parsed()) return limits_hall(cfg);
    if (tri->parsed()) return limits_triangle(cfg);
    if (ver->parsed()) return verify(cfg, leaf);
    if (ntc->parsed()) return nt(cfg, leaf);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::length_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFail;
  }
  return kExitUsage;
}
