// SPDX-License-Identifier: Apache-2.0
//
// lambdap: compactness checks for function families on finite measure spaces.
//
// Exit codes: 0 certified-net / TB-consistent / all verified,
//             1 refuted-at-scale / TB-refuting,
//             2 inconclusive,
//             3 usage or configuration error, 4 I/O error, 5 malformed JSON,
//             6 verification or property failure, 7 invalid input data,
//             8 internal error.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lambdap/compactness.hpp"
#include "lambdap/error.hpp"
#include "lambdap/families.hpp"
#include "lambdap/io.hpp"
#include "lambdap/properties.hpp"

namespace {

using namespace lambdap;

enum Exit : int {
  kCertified = 0,
  kRefuted = 1,
  kInconclusive = 2,
  kConfig = 3,
  kIo = 4,
  kParse = 5,
  kVerification = 6,
  kInvalid = 7,
  kInternal = 8,
};

int exit_code(Errc code) {
  switch (code) {
    case Errc::configuration: return kConfig;
    case Errc::io: return kIo;
    case Errc::parse: return kParse;
    case Errc::verification: return kVerification;
    case Errc::invalid_input:
    case Errc::space_mismatch: return kInvalid;
  }
  return kInternal;
}

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::certified_net: return kCertified;
    case Verdict::refuted_at_scale: return kRefuted;
    case Verdict::inconclusive: return kInconclusive;
  }
  return kInternal;
}

int exit_code(TrendVerdict v) {
  switch (v) {
    case TrendVerdict::tb_consistent: return kCertified;
    case TrendVerdict::tb_refuting: return kRefuted;
    case TrendVerdict::inconclusive: return kInconclusive;
  }
  return kInternal;
}

struct RunConfig {
  std::string input;
  std::string generator;
  double p = 1.0;
  std::optional<double> epsilon;
  double grid_max = 64.0;
  std::vector<std::uint64_t> ladder;
  std::string out = ".";
  std::vector<std::string> formats{"json"};
  std::uint64_t seed = 0x5eed;
  std::optional<std::size_t> trials;
  std::string verify_only;
  std::string fault = "none";
  int verbosity = 0;

  bool wants(const std::string& format) const {
    return std::find(formats.begin(), formats.end(), format) != formats.end();
  }
};

void log(const RunConfig& cfg, int level, const std::string& line) {
  if (cfg.verbosity >= level) std::cerr << line << '\n';
}

std::string out_path(const RunConfig& cfg, const std::string& name) {
  return (std::filesystem::path(cfg.out) / name).string();
}

void prepare_out_dir(const RunConfig& cfg) {
  std::error_code ec;
  std::filesystem::create_directories(cfg.out, ec);
  if (ec) throw Error(Errc::io, "cannot create output directory '" + cfg.out + "': " + ec.message());
}

GeneratorSpec generator_spec(const RunConfig& cfg) {
  GeneratorSpec spec = parse_generator(cfg.generator);
  // An explicit seed inside the generator string wins over --seed.
  if (cfg.generator.find("seed=") == std::string::npos) spec.seed = cfg.seed;
  return spec;
}

FunctionFamily family_at(const GeneratorSpec& base, std::uint64_t index) {
  GeneratorSpec spec = base;
  spec.growth_index = index;
  return generate(spec);
}

// Serialize, parse back, and verify every certificate of a report against
// the family it was computed on.
bool reverify(const Json& report, const FunctionFamily& family) {
  const Json parsed = Json::parse(report.dump());
  bool ok = true;
  if (!parsed.at("net").is_null()) {
    const Json& net = parsed.at("net");
    ok = ok && verify_certificate(cover_from_json(net.at("certificate")), oracle_from_json(net.at("metric"), family));
  }
  const Json& packing = parsed.at("packing");
  ok = ok && verify_certificate(packing_from_json(packing.at("certificate")), oracle_from_json(packing.at("metric"), family));
  return ok;
}

Json config_json(const RunConfig& cfg, const LevelGrid& grid) {
  Json j = {{"p", cfg.p}, {"epsilon", *cfg.epsilon}, {"grid", grid.levels()}, {"seed", cfg.seed}};
  if (!cfg.input.empty()) j["input"] = cfg.input;
  if (!cfg.generator.empty()) j["generator"] = cfg.generator;
  if (!cfg.ladder.empty()) j["ladder"] = cfg.ladder;
  return j;
}

void require(bool condition, const std::string& message) {
  if (!condition) throw Error(Errc::configuration, message);
}

int run_check(const RunConfig& cfg) {
  require(cfg.epsilon.has_value(), "--epsilon is required");
  require(*cfg.epsilon > 0.0 && std::isfinite(*cfg.epsilon), "--epsilon must be positive");
  require(cfg.p >= 1.0 && std::isfinite(cfg.p), "--p must satisfy 1 <= p < inf");
  require(cfg.input.empty() != cfg.generator.empty(), "give exactly one of --input and --generator");
  require(cfg.generator.empty() || !cfg.ladder.empty(), "--generator needs --ladder with at least one growth index");
  require(cfg.input.empty() || cfg.ladder.empty(), "--ladder applies to --generator only");
  for (std::size_t i = 1; i < cfg.ladder.size(); ++i) {
    require(cfg.ladder[i] > cfg.ladder[i - 1], "--ladder indices must be strictly increasing");
  }
  require(cfg.ladder.empty() || cfg.ladder.front() >= 1, "--ladder indices must be >= 1");

  const Exponent p(cfg.p);
  const double eps = *cfg.epsilon;
  const LevelGrid grid = LevelGrid::geometric(cfg.grid_max);
  prepare_out_dir(cfg);

  if (!cfg.input.empty()) {
    const FunctionFamily family = read_family_file(cfg.input);
    log(cfg, 1, "checking '" + family.label() + "' with " + std::to_string(family.size()) + " members");
    const CompactnessReport report = assemble_lambda_net(family, p, eps, grid);
    Json j = to_json(report);
    if (!reverify(j, family)) throw Error(Errc::verification, "embedded certificate failed re-verification");
    j["family"] = to_json(family);
    j["config"] = config_json(cfg, grid);
    if (cfg.wants("json")) write_text_file(out_path(cfg, "report.json"), dump(j));
    if (cfg.wants("csv")) {
      LadderTrend single;
      single.rows.push_back({family.growth_index().value_or(1), report.family_size,
                             report.net ? std::optional<std::size_t>(report.net->size()) : std::nullopt,
                             report.packing.size(), report.min_level_for_half_epsilon});
      std::ostringstream csv;
      write_trend_csv(csv, single);
      write_text_file(out_path(cfg, "trend.csv"), csv.str());
    }
    std::cerr << report.label << ": " << to_string(report.verdict) << '\n';
    return exit_code(report.verdict);
  }

  const GeneratorSpec spec = generator_spec(cfg);
  const LadderTrend trend =
      ladder_trend([&](std::uint64_t n) { return family_at(spec, n); }, cfg.ladder, p, eps, grid);

  Json reports = Json::array();
  for (std::size_t i = 0; i < trend.reports.size(); ++i) {
    const FunctionFamily family = family_at(spec, cfg.ladder[i]);
    Json j = to_json(trend.reports[i]);
    if (!reverify(j, family)) throw Error(Errc::verification, "embedded certificate failed re-verification");
    j["family"] = to_json(family);
    log(cfg, 1, trend.reports[i].label + ": " + to_string(trend.reports[i].verdict));
    reports.push_back(std::move(j));
  }
  Json doc = to_json(trend);
  doc["reports"] = std::move(reports);
  doc["config"] = config_json(cfg, grid);
  if (cfg.wants("json")) write_text_file(out_path(cfg, "report.json"), dump(doc));
  if (cfg.wants("csv")) {
    std::ostringstream csv;
    write_trend_csv(csv, trend);
    write_text_file(out_path(cfg, "trend.csv"), csv.str());
  }
  std::cerr << "ladder: " << to_string(trend.verdict) << '\n';
  return exit_code(trend.verdict);
}

bool verify_report(const Json& report, const RunConfig& cfg) {
  const FunctionFamily family = family_from_json(report.at("family"));
  const bool ok = reverify(report, family);
  log(cfg, 0, report.value("label", family.label()) + ": " + (ok ? "verified" : "FAILED"));
  return ok;
}

int run_verify(const RunConfig& cfg) {
  const Json doc = read_json_file(cfg.verify_only);
  bool ok = true;
  try {
    if (doc.contains("reports")) {
      for (const auto& r : doc.at("reports")) ok = verify_report(r, cfg) && ok;
    } else if (doc.contains("net") && doc.contains("packing")) {
      ok = verify_report(doc, cfg);
    } else if (doc.contains("certificate") && doc.contains("metric")) {
      std::optional<FunctionFamily> family;
      if (doc.contains("family")) {
        family.emplace(family_from_json(doc.at("family")));
      } else if (!cfg.input.empty()) {
        family.emplace(read_family_file(cfg.input));
      } else {
        require(!cfg.generator.empty() && cfg.ladder.size() == 1,
                "a bare certificate needs --input, or --generator with a single --ladder index");
        family.emplace(family_at(generator_spec(cfg), cfg.ladder.front()));
      }
      const auto oracle = oracle_from_json(doc.at("metric"), *family);
      const Json& cert = doc.at("certificate");
      ok = cert.contains("assignment") ? verify_certificate(cover_from_json(cert), oracle)
                                       : verify_certificate(packing_from_json(cert), oracle);
      log(cfg, 0, std::string("certificate: ") + (ok ? "verified" : "FAILED"));
    } else {
      throw Error(Errc::parse, "'" + cfg.verify_only + "' is neither a report nor a certificate");
    }
  } catch (const Json::exception& e) {
    throw Error(Errc::parse, "'" + cfg.verify_only + "': " + e.what());
  }
  return ok ? kCertified : kVerification;
}

int run_properties(const RunConfig& cfg) {
  PropertyConfig pc;
  pc.trials = *cfg.trials;
  pc.seed = cfg.seed;
  if (cfg.fault == "negated-cm") {
    pc.fault = Fault::negated_cm;
  } else {
    require(cfg.fault == "none", "unknown fault '" + cfg.fault + "'");
  }
  const auto results = run_property_suite(pc);
  Json summary = Json::array();
  bool all = true;
  for (const auto& r : results) {
    all = all && r.passed();
    std::cerr << (r.passed() ? "PASS " : "FAIL ") << r.name << " (" << r.failures << '/' << r.trials << " failed)\n";
    if (!r.passed()) std::cerr << "  counterexample: " << r.counterexample.dump() << '\n';
    summary.push_back(to_json(r));
  }
  prepare_out_dir(cfg);
  write_text_file(out_path(cfg, "properties.json"),
                  dump({{"seed", cfg.seed}, {"trials", pc.trials}, {"passed", all}, {"properties", summary}}));
  return all ? kCertified : kVerification;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compactness checks for function families in asymptotic L_p spaces over finite measure spaces"};
  RunConfig cfg;
  app.add_option("--input", cfg.input, "Family file {\"space\":..., \"family\":...}");
  app.add_option("--generator", cfg.generator,
                 "Built-in family: vanishing-spike, escaping-indicator, constants[:mass=M], "
                 "bounded-random[:atoms=A,bound=B,seed=S], custom-json:path=FILE (\"{n}\" = index)");
  app.add_option("--p", cfg.p, "Exponent p >= 1")->capture_default_str();
  app.add_option("--epsilon", cfg.epsilon, "Net radius");
  app.add_option("--grid-max", cfg.grid_max, "Largest power-of-two truncation level")->capture_default_str();
  app.add_option("--ladder", cfg.ladder, "Growth indices, e.g. 8,16,32")->delimiter(',');
  app.add_option("--out", cfg.out, "Output directory")->capture_default_str();
  app.add_option("--format", cfg.formats, "Outputs: json, csv")
      ->delimiter(',')
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("--seed", cfg.seed, "Seed for bounded-random families and property trials")->capture_default_str();
  app.add_option("--trials", cfg.trials, "Run the randomized property suite with this many trials");
  app.add_option("--verify-only", cfg.verify_only, "Re-verify a report or certificate file");
  app.add_option("--inject-fault", cfg.fault, "Mutation check for the property suite")->group("");
  app.add_flag("-v,--verbose", cfg.verbosity, "More progress on stderr");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfig;
  }

  try {
    if (!cfg.verify_only.empty()) return run_verify(cfg);
    if (cfg.trials) return run_properties(cfg);
    return run_check(cfg);
  } catch (const Error& e) {
    std::cerr << "lambdap: " << to_string(e.code()) << ": " << e.what() << '\n';
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "lambdap: internal error: " << e.what() << '\n';
    return kInternal;
  }
}
