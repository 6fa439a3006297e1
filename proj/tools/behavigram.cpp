// behavigram: offline multimodal behavioral-analytics pipeline.
//
//   behavigram validate <session_dir>
//   behavigram sync     <session_dir> [--max-lag s] [--out dir]
//   behavigram analyze  <session_dir> [--config f] [--out dir] [--sweep]
//   behavigram render   <session_dir> [--variant v] [--out dir] [...]
//   behavigram simulate <out_dir> [--preset p | --spec f] [--seed n]
//
// Exit codes: 0 success, 1 data/validation error, 2 usage error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "behavigram/config.hpp"
#include "behavigram/csv.hpp"
#include "behavigram/errors.hpp"
#include "behavigram/lag.hpp"
#include "behavigram/pipeline.hpp"
#include "behavigram/render.hpp"
#include "behavigram/scenario.hpp"
#include "behavigram/session_io.hpp"

namespace fs = std::filesystem;
using namespace behavigram;

namespace {

struct StreamReport {
  std::string name;
  std::size_t samples;
  double rate_hz;
  double missing_fraction;
};

int cmd_validate(const fs::path& session_dir) {
  const Recording rec = load_recording(session_dir);

  std::vector<StreamReport> reports;
  for (const TimeSeries* s : rec.stream_list()) {
    StreamReport r;
    r.name = s->stream_id;
    r.samples = s->sample_count();
    r.rate_hz = s->sample_count() > 1
                    ? static_cast<double>(s->sample_count() - 1) /
                          (s->end_time() - s->start_time())
                    : 0.0;
    std::size_t missing = 0;
    for (double v : s->values) {
      if (is_missing(v)) ++missing;
    }
    r.missing_fraction =
        s->values.empty() ? 0.0 : static_cast<double>(missing) / static_cast<double>(s->values.size());
    reports.push_back(r);
  }

  std::printf("%-10s %9s %9s %9s\n", "stream", "samples", "rate_hz", "missing");
  for (const auto& r : reports) {
    std::printf("%-10s %9zu %9.2f %9.4f\n", r.name.c_str(), r.samples, r.rate_hz,
                r.missing_fraction);
  }
  std::printf("%-10s %9zu %9s %9s\n", "markers", rec.markers.events.size(), "-", "-");
  std::printf("%zu streams OK\n", reports.size() + 1);
  return 0;
}

int cmd_sync(const fs::path& session_dir, const fs::path& out_dir, double max_lag_s,
             const PipelineConfig& cfg) {
  const Recording rec = load_recording(session_dir);
  const double lag = estimate_sync_lag(rec, cfg, max_lag_s);
  std::printf("gaze lag relative to accel: %s s\n", csv::format_number(lag).c_str());

  StreamLags lags;
  lags.gaze = lag;
  const Recording aligned = align(rec, lags);
  save_recording(aligned, out_dir);
  {
    std::ofstream report(out_dir / "sync_report.csv");
    report << "stream,lag_s\n";
    report << "gaze," << csv::format_number(lag) << '\n';
  }
  std::printf("aligned session written to %s\n", out_dir.string().c_str());
  return 0;
}

int cmd_analyze(const fs::path& session_dir, const fs::path& out_dir, const PipelineConfig& cfg,
                bool sweep) {
  const Recording rec = load_recording(session_dir);
  const AnalysisResult result = analyze(rec, cfg);
  write_analysis(result, out_dir);
  std::fputs(phase_report_text(result).c_str(), stdout);
  if (sweep) {
    const SweepResult sr = run_robustness_sweep(rec, cfg);
    write_sweep_csv(sr, out_dir / "sweep_correlations.csv");
    std::printf("sweep minimum pairwise Spearman: %s\n",
                csv::format_number(sr.min_correlation()).c_str());
  }
  std::printf("analysis written to %s\n", out_dir.string().c_str());
  return 0;
}

int cmd_render(const fs::path& session_dir, const fs::path& out_dir, const PipelineConfig& cfg,
               const std::string& variant, double t0, double t1) {
  const Recording rec = load_recording(session_dir);
  const AnalysisResult result = analyze(rec, cfg);

  BehaviorgramSpec spec;
  spec.width_px = cfg.render.width_px;
  spec.height_px = cfg.render.height_px;
  spec.colormap = cfg.render.colormap;
  spec.entropy_track_px = cfg.render.entropy_track_px;
  spec.labels = cfg.render.labels;
  spec.t_start = t0;
  spec.t_end = t1;

  const std::string session = session_dir.filename().string().empty()
                                  ? session_dir.parent_path().filename().string()
                                  : session_dir.filename().string();
  fs::create_directories(out_dir);

  const auto write_variant = [&](BehaviorgramVariant v, const std::string& suffix) {
    spec.variant = v;
    const std::string svg = render_behaviorgram(render_inputs(result), spec);
    const fs::path file = out_dir / (session + suffix);
    std::ofstream out(file, std::ios::binary);
    out << svg;
    std::printf("wrote %s\n", file.string().c_str());
  };
  if (variant == "extended" || variant == "both") {
    write_variant(BehaviorgramVariant::Extended, "_extended.svg");
  }
  if (variant == "simplified" || variant == "both") {
    write_variant(BehaviorgramVariant::Simplified, "_simplified.svg");
  }
  return 0;
}

int cmd_simulate(const fs::path& out_dir, const std::string& preset, const std::string& spec_path,
                 std::uint64_t seed, bool seed_set, double sync_offset_s) {
  if (preset == "sync" && spec_path.empty()) {
    const Recording rec = make_sync_scenario(sync_offset_s, seed_set ? seed : 1);
    save_recording(rec, out_dir);
    std::printf("sync scenario (offset %s s) written to %s\n",
                csv::format_number(sync_offset_s).c_str(), out_dir.string().c_str());
    return 0;
  }
  ScenarioSpec spec;
  if (!spec_path.empty()) {
    spec = scenario_from_json_file(spec_path);
    if (seed_set) spec.seed = seed;
  } else if (preset == "abcde") {
    spec = abcde_scenario(seed_set ? seed : 1);
  } else if (preset == "two-regime") {
    spec = two_regime_scenario(seed_set ? seed : 1);
  } else {
    fail(Errc::ConfigError, "unknown preset '" + preset + "'");
  }
  const GeneratedScenario scenario = generate(spec);
  write_scenario(scenario, out_dir);
  std::printf("scenario with %zu phases written to %s\n", scenario.truth.phases.size(),
              out_dir.string().c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"offline multimodal behaviorgram toolkit"};
  app.require_subcommand(0, 1);

  std::string emit_config_path;
  app.add_option("--emit-default-config", emit_config_path,
                 "write the default pipeline configuration to a file and exit");

  std::string session_dir, out_dir, config_path;
  double max_lag_s = 0.5;
  bool sweep = false;
  std::string variant = "extended";
  double t0 = 0.0, t1 = 0.0;
  std::string preset = "abcde", spec_path;
  std::uint64_t seed = 0;
  double sync_offset_s = 0.05;

  auto* validate = app.add_subcommand("validate", "ingest and validate a session directory");
  validate->add_option("session_dir", session_dir)->required();

  auto* sync = app.add_subcommand("sync", "estimate the gaze/accel lag and write aligned copies");
  sync->add_option("session_dir", session_dir)->required();
  sync->add_option("--max-lag", max_lag_s, "lag search range in seconds");
  sync->add_option("--out", out_dir, "output directory (default <session>/aligned)");
  sync->add_option("--config", config_path, "pipeline configuration file");

  auto* analyze_cmd = app.add_subcommand("analyze", "run the full analysis pipeline");
  analyze_cmd->add_option("session_dir", session_dir)->required();
  analyze_cmd->add_option("--config", config_path, "pipeline configuration file");
  analyze_cmd->add_option("--out", out_dir, "output directory (default <session>/analysis)");
  analyze_cmd->add_flag("--sweep", sweep, "also run the entropy robustness sweep");

  auto* render_cmd = app.add_subcommand("render", "render behaviorgrams as SVG");
  render_cmd->add_option("session_dir", session_dir)->required();
  render_cmd->add_option("--variant", variant)
      ->check(CLI::IsMember({"extended", "simplified", "both"}));
  render_cmd->add_option("--config", config_path, "pipeline configuration file");
  render_cmd->add_option("--out", out_dir, "output directory (default session dir)");
  render_cmd->add_option("--t0", t0, "render range start (seconds)");
  render_cmd->add_option("--t1", t1, "render range end (seconds)");

  auto* simulate = app.add_subcommand("simulate", "generate a synthetic session");
  simulate->add_option("out_dir", session_dir)->required();
  simulate->add_option("--preset", preset)
      ->check(CLI::IsMember({"abcde", "two-regime", "sync"}));
  simulate->add_option("--spec", spec_path, "JSON scenario description");
  auto* seed_opt = simulate->add_option("--seed", seed, "override the scenario seed");
  simulate->add_option("--sync-offset", sync_offset_s, "injected gaze lag for the sync preset");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (!emit_config_path.empty()) {
      std::ofstream out(emit_config_path);
      if (!out) fail(Errc::MissingFile, "cannot write " + emit_config_path);
      write_default_config(out);
      std::printf("default configuration written to %s\n", emit_config_path.c_str());
      return 0;
    }
    if (app.get_subcommands().empty()) {
      std::fputs(app.help().c_str(), stderr);
      return 2;
    }

    PipelineConfig cfg;
    if (!config_path.empty()) cfg = load_config(config_path);

    if (validate->parsed()) return cmd_validate(session_dir);
    if (sync->parsed()) {
      const fs::path out = out_dir.empty() ? fs::path(session_dir) / "aligned" : fs::path(out_dir);
      return cmd_sync(session_dir, out, max_lag_s, cfg);
    }
    if (analyze_cmd->parsed()) {
      const fs::path out =
          out_dir.empty() ? fs::path(session_dir) / "analysis" : fs::path(out_dir);
      return cmd_analyze(session_dir, out, cfg, sweep);
    }
    if (render_cmd->parsed()) {
      const fs::path out = out_dir.empty() ? fs::path(session_dir) : fs::path(out_dir);
      return cmd_render(session_dir, out, cfg, variant, t0, t1);
    }
    if (simulate->parsed()) {
      return cmd_simulate(session_dir, preset, spec_path, seed, seed_opt->count() > 0,
                          sync_offset_s);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (...) {
    std::fprintf(stderr, "error: unknown failure\n");
    return 1;
  }
  return 0;
}
