// Copyright 2026 The pinchcert Authors
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

#include "pinchcert/app.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "pinchcert/errors.hpp"
#include "pinchcert/flow.hpp"
#include "pinchcert/region.hpp"
#include "pinchcert/sampling.hpp"
#include "pinchcert/version.hpp"

namespace pinchcert::cli {
namespace {

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string format_point(const CurvaturePoint& p) {
  std::string out = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ", ";
    out += format_number(p[i]);
  }
  return out + ")";
}

std::string format_name(OutputFormat f) { return f == OutputFormat::kJson ? "json" : "csv"; }

// Writes to `path` via a sibling temporary file and a rename, or to `out` when path is empty.
void emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty()) {
    out << content;
    return;
  }
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
    if (!file) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    file << content;
    file.flush();
    if (!file) throw std::runtime_error("failed writing " + tmp.string());
  }
  std::filesystem::rename(tmp, target);
}

Json envelope(const RunConfig& config) {
  return Json{
      {"tool", version_string()}, {"command", config.command}, {"config", config_json(config)}};
}

// Threshold h for the run: override, preset value, or derived from the cone.
std::pair<double, std::optional<ThresholdReport>> resolve_threshold(const FlowPreset& preset,
                                                                    const RunConfig& config) {
  if (config.threshold) return {*config.threshold, std::nullopt};
  if (preset.threshold) return {*preset.threshold, std::nullopt};
  ThresholdReport derived = derive_threshold(
      preset, {config.grid.value_or(1000), config.samples, config.seed, config.workers},
      config.tolerances);
  const double h = derived.threshold;
  return {h, std::move(derived)};
}

std::string chain_summary_csv(const FlowReport& report) {
  std::ostringstream csv;
  csv << "sampler,inner,outer,samples,inner_members,violations,indeterminate,worst_margin,"
         "verified\n";
  for (const auto& c : report.chains) {
    csv << to_string(c.sampler) << ',' << c.inner << ',' << c.outer << ',' << c.samples << ','
        << c.inner_members << ',' << c.violation_count << ',' << c.indeterminate_count << ','
        << (c.worst_margin ? format_number(*c.worst_margin) : "") << ','
        << (c.verified() ? 1 : 0) << '\n';
  }
  return csv.str();
}

std::uint64_t parse_count(const std::string& text, const char* what) {
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size() || !(v >= 1.0) ||
      std::floor(v) != v || v > 1e15) {
    throw InvalidArgument(std::string(what) + " must be a positive integer, got '" + text + "'");
  }
  return static_cast<std::uint64_t>(v);
}

}  // namespace

Json config_json(const RunConfig& config) {
  Json j{{"command", config.command},
         {"flow", config.flow},
         {"samples", config.samples},
         {"grid", config.grid ? Json(*config.grid) : Json()},
         {"seed", config.seed},
         {"h", config.threshold ? Json(*config.threshold) : Json()},
         {"tolerances", config.tolerances},
         {"format", format_name(config.format)}};
  return j;
}

int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  const FlowPreset preset = flow_preset(config.flow);
  FlowConfig fc;
  fc.samples = config.samples;
  fc.grid = config.grid;
  fc.seed = config.seed;
  fc.workers = config.workers;
  fc.threshold = config.threshold;
  fc.tolerances = config.tolerances;
  const FlowReport report = verify_flow(preset, fc);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  err << "verify " << report.flow << ": h = " << format_number(report.threshold) << " ("
      << report.threshold_source << ")\n";
  for (const auto& c : report.chains) {
    err << "  [" << (c.verified() ? "PASS" : "FAIL") << "] " << to_string(c.sampler) << ' '
        << c.inner << " in " << c.outer << ": samples=" << c.samples
        << " members=" << c.inner_members << " violations=" << c.violation_count
        << " indeterminate=" << c.indeterminate_count;
    if (c.worst_margin) err << " worst_margin=" << format_number(*c.worst_margin);
    err << '\n';
    for (std::size_t k = 0; k < std::min<std::size_t>(5, c.violations.size()); ++k) {
      const auto& v = c.violations[k];
      err << "      counterexample #" << v.index << ' ' << format_point(v.point)
          << " margin=" << format_number(v.outer_margin) << '\n';
    }
  }
  err << "  [" << (report.vanishing.passed ? "PASS" : "FAIL") << "] vanishing "
      << report.vanishing.quantity << ": max relative |C| = "
      << format_number(report.vanishing.max_relative)
      << (report.vanishing_claimed ? "" : " (not claimed for this flow)") << '\n';
  err << "  [" << (report.pinching.passed ? "PASS" : "FAIL")
      << "] pinching bound: failures=" << report.pinching.failures
      << (report.vanishing_claimed ? "" : " (not claimed for this flow)") << '\n';
  err << "  overall: " << (report.verified ? "verified" : "NOT verified") << " in "
      << format_number(std::round(seconds * 100.0) / 100.0) << " s\n";

  if (config.format == OutputFormat::kCsv) {
    emit(config.out, chain_summary_csv(report), out);
  } else {
    Json j = envelope(config);
    j["result"] = report;
    if (config.timing) j["wall_time_s"] = seconds;
    emit(config.out, j.dump(2) + "\n", out);
  }
  return report.verified ? kExitVerified : kExitViolations;
}

int cmd_export(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const FlowPreset preset = flow_preset(config.flow);
  const auto [h, derivation] = resolve_threshold(preset, config);
  const std::vector<RegionSpec> regions{
      RegionSpec::pinched_cone(preset.pinch), RegionSpec::sublevel(preset.phi, h),
      RegionSpec::certificate(preset.velocity, preset.phi),
      RegionSpec::certificate(preset.velocity, preset.psi)};
  const SamplerConfig sampler =
      config.grid ? SamplerConfig{SamplerKind::kGrid, *config.grid, config.seed, config.workers}
                  : SamplerConfig{SamplerKind::kMonteCarlo, config.samples, config.seed,
                                  config.workers};
  const SampleStream stream(sampler);
  const bool csv = config.format == OutputFormat::kCsv;

  auto blocks = map_blocks<std::string>(
      stream, config.workers,
      [&](std::uint64_t, std::span<const CurvaturePoint> points, std::string& text) {
        Json rows = Json::array();
        for (const auto& p : points) {
          const RegionClassification cls = classify(p, regions, config.tolerances);
          const double worst = *std::min_element(cls.margins.begin(), cls.margins.end());
          const double phi = preset.phi.value(p);
          const double psi = preset.psi.value(p);
          if (csv) {
            text += format_number(p.a()) + ',' + format_number(p.b()) + ',' +
                    format_number(p.c());
            for (Membership m : cls.memberships) text += ',' + to_string(m);
            text += ',' + format_number(phi) + ',' + format_number(psi) + ',' +
                    format_number(worst) + '\n';
          } else {
            rows.push_back(Json{{"a", p.a()},
                                {"b", p.b()},
                                {"c", p.c()},
                                {"in_cone", to_string(cls.memberships[0])},
                                {"in_sublevel", to_string(cls.memberships[1])},
                                {"cert_phi", to_string(cls.memberships[2])},
                                {"cert_psi", to_string(cls.memberships[3])},
                                {"phi", phi},
                                {"psi", psi},
                                {"margin_worst", worst}});
          }
        }
        if (!csv) text = rows.dump();
      });

  std::string content;
  if (csv) {
    content = "a,b,c,in_cone,in_sublevel,cert_phi,cert_psi,phi,psi,margin_worst\n";
    for (const auto& b : blocks) content += b;
  } else {
    Json j = envelope(config);
    j["threshold"] = h;
    j["derivation"] = derivation ? Json(*derivation) : Json();
    Json rows = Json::array();
    for (const auto& b : blocks)
      for (auto& row : Json::parse(b)) rows.push_back(std::move(row));
    j["rows"] = std::move(rows);
    content = j.dump(2) + "\n";
  }
  emit(config.out, content, out);
  err << "export " << preset.name << ": " << stream.size() << " rows, h = " << format_number(h)
      << '\n';
  return kExitVerified;
}

int cmd_derive_h(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const FlowPreset preset = flow_preset(config.flow);
  const ThresholdReport report = derive_threshold(
      preset, {config.grid.value_or(1000), config.samples, config.seed, config.workers},
      config.tolerances);
  std::ostringstream summary;
  summary << preset.name << " h = " << format_number(report.threshold)
          << " (max phi over cone(" << format_number(preset.pinch)
          << ") = " << format_number(report.raw_max) << " at " << format_point(report.witness)
          << ", " << to_string(report.witness_sampler) << ")\n";
  if (preset.threshold) {
    summary << "closed-form threshold for " << preset.name << ": "
            << format_number(*preset.threshold) << '\n';
  }
  Json j = envelope(config);
  j["result"] = report;
  const std::string json = j.dump(2) + "\n";
  if (!config.out.empty()) {
    emit(config.out, json, out);
    out << summary.str();
  } else if (config.format == OutputFormat::kJson) {
    out << json;
    err << summary.str();
  } else {
    out << summary.str();
  }
  return kExitVerified;
}

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certificate and pinching-cone verification for contracting curvature flows",
               "pinchcert"};
  // `--h` is the threshold override, so help is long-form only.
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  app.set_version_flag("--version", version_string());

  RunConfig config;
  std::string samples_text = "1000000";
  std::string format_text;
  std::optional<std::string> grid_text;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("flow", config.flow, "Flow preset: H3, A2 or K")->required();
    sub->add_option("--samples", samples_text, "Monte-Carlo sample count");
    sub->add_option("--grid", grid_text, "Barycentric grid resolution");
    sub->add_option("--seed", config.seed, "64-bit RNG seed");
    sub->add_option("--h", config.threshold, "Override the sublevel threshold h");
    sub->add_option("--eps-tau", config.tolerances.tau, "Scalar non-positivity tolerance");
    sub->add_option("--eps-nsd", config.tolerances.tau_nsd, "NSD trace/det tolerance");
    sub->add_option("--eps-grad", config.tolerances.delta_grad, "Degenerate gradient tolerance");
    sub->add_option("--eps-umbilic", config.tolerances.eps_umbilic, "Umbilic band width");
    sub->add_option("--eps-dd", config.tolerances.eps_dd, "Divided-difference diagonal switch");
    sub->add_option("--eps-boundary", config.tolerances.eps_boundary,
                    "Relative slack on region boundaries");
    sub->add_option("--format", format_text, "Output format")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", config.out, "Output path (stdout when omitted)");
    sub->add_option("--workers", config.workers, "Worker threads")
        ->check(CLI::Range(1u, 1024u));
  };

  CLI::App* verify = app.add_subcommand("verify", "Run every inclusion chain for a flow");
  add_common(verify);
  verify->add_flag("--timing", config.timing, "Embed wall time in the JSON report");
  CLI::App* exporter = app.add_subcommand("export", "Export classified samples for ternary plots");
  add_common(exporter);
  CLI::App* derive = app.add_subcommand("derive-h", "Derive the sublevel threshold from the cone");
  add_common(derive);

  std::vector<std::string> storage{"pinchcert"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitVerified;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitVerified;
  } catch (const CLI::CallForVersion&) {
    out << version_string() << '\n';
    return kExitVerified;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfigError;
  }

  try {
    config.samples = parse_count(samples_text, "--samples");
    if (grid_text) config.grid = parse_count(*grid_text, "--grid");
    if (config.threshold && !(*config.threshold > 0.0)) {
      throw InvalidArgument("--h must be positive");
    }
    if (verify->parsed()) {
      config.command = "verify";
      config.format = format_text == "csv" ? OutputFormat::kCsv : OutputFormat::kJson;
      return cmd_verify(config, out, err);
    }
    if (exporter->parsed()) {
      config.command = "export";
      config.format = format_text == "json" ? OutputFormat::kJson : OutputFormat::kCsv;
      return cmd_export(config, out, err);
    }
    config.command = "derive-h";
    config.format = format_text == "json" ? OutputFormat::kJson : OutputFormat::kCsv;
    return cmd_derive_h(config, out, err);
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfigError;
  }
}

}  // namespace pinchcert::cli
