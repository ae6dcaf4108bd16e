// swarmfold command-line front end: simulate, analyze, run, isomap.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "swarmfold/config.hpp"
#include "swarmfold/io.hpp"
#include "swarmfold/mapping.hpp"
#include "swarmfold/pipeline.hpp"

namespace {

using namespace swarmfold;

struct Flags {
  std::string config_file;
  std::vector<std::string> settings;
  std::optional<std::string> scenario, input, epsilon_mode, out;
  std::optional<std::string> seed;
  std::optional<double> xi1, xi2, threshold, merge_tol;
  std::optional<int> k, dmax, min_len;
  bool dump_correspondence = false;
};

void add_common(CLI::App* app, Flags& f, bool source, bool analysis) {
  app->add_option("--config", f.config_file, "key = value configuration file");
  app->add_option("--set", f.settings, "override a setting, key=value (repeatable)");
  app->add_option("--out", f.out, "output directory");
  if (source) {
    app->add_option("--scenario", f.scenario, "speed-switch | noise-switch | split-rejoin");
    app->add_option("--input", f.input, "trajectory CSV");
    app->add_option("--seed", f.seed, "random seed");
  }
  if (analysis) {
    app->add_option("--xi1", f.xi1, "speed weight");
    app->add_option("--xi2", f.xi2, "polarization weight");
    app->add_option("--epsilon-mode", f.epsilon_mode, "all_pairs | nearest_neighbor");
    app->add_option("--min-len", f.min_len, "minimum segment length");
    app->add_option("--merge-tol", f.merge_tol, "manifold merge tolerance");
    app->add_flag("--dump-correspondence", f.dump_correspondence,
                  "write per-step permutations to correspondence.csv");
  }
  if (analysis || !source) {
    app->add_option("--k", f.k, "Isomap neighbour count");
    app->add_option("--dmax", f.dmax, "largest embedding dimension");
    app->add_option("--threshold", f.threshold, "residual variance threshold");
  }
}

PipelineConfig build_config(const Flags& f) {
  PipelineConfig c;
  if (const char* env = std::getenv("SWARMFOLD_OUT_DIR"); env && *env) c.out_dir = env;
  if (!f.config_file.empty()) apply_config_file(c, f.config_file);
  for (const std::string& s : f.settings) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw Error("config", "--set expects key=value, got '" + s + "'");
    apply_setting(c, s.substr(0, eq), s.substr(eq + 1));
  }
  auto set = [&](const char* key, const auto& v) {
    if (!v) return;
    if constexpr (std::is_same_v<std::decay_t<decltype(*v)>, std::string>) {
      apply_setting(c, key, *v);
    } else {
      apply_setting(c, key, format_double(static_cast<double>(*v)));
    }
  };
  set("scenario", f.scenario);
  set("input", f.input);
  set("seed", f.seed);
  set("xi1", f.xi1);
  set("xi2", f.xi2);
  set("epsilon_mode", f.epsilon_mode);
  set("k", f.k);
  set("dmax", f.dmax);
  set("threshold", f.threshold);
  set("min_len", f.min_len);
  set("merge_tol", f.merge_tol);
  set("out", f.out);
  if (f.dump_correspondence) c.dump_correspondence = true;
  return c;
}

int cmd_simulate(const Flags& f) {
  PipelineConfig c = build_config(f);
  if (c.scenario.empty()) throw Error("config", "key 'scenario': simulate needs a scenario");
  c.validate();
  const TrajectoryDataset data = produce_dataset(c);
  std::filesystem::create_directories(c.out_dir);
  save_trajectory_csv(data, c.out_dir / "trajectory.csv");
  save_trajectory_csv(data, c.out_dir / "trajectory_wrapped.csv", true);
  std::cout << "wrote " << (c.out_dir / "trajectory.csv").string() << " ("
            << data.frame_count() << " frames, " << data.agent_count() << " agents, seed "
            << c.seed << ")\n";
  return 0;
}

int cmd_pipeline(const Flags& f, bool require_input) {
  PipelineConfig c = build_config(f);
  if (require_input && c.input.empty()) throw Error("config", "key 'input': analyze needs --input");
  c.validate();
  PipelineResult r = analyze(produce_dataset(c), c);
  write_artifacts(r, c, !c.scenario.empty());
  std::cout << summarize(r, c);
  return 0;
}

int cmd_isomap(const Flags& f) {
  PipelineConfig c = build_config(f);
  if (c.input.empty()) throw Error("config", "key 'input': isomap needs --input");
  c.validate();
  const TrajectoryDataset data = load_trajectory_csv(c.input);
  if (data.frame_count() < 3) throw Error("pipeline", "need at least 3 frames for Isomap");
  std::vector<Configuration> frames = data.frames;
  if (c.canonicalize) frames = canonical_frames(data, velocities(data).maps);
  const EmbeddingReport report = isomap(stack_configurations(frames), c.isomap);
  std::filesystem::create_directories(c.out_dir);
  save_residual_csv(report, c.out_dir / "residual_full.csv");
  save_embedding_csv(report, report.dimension, c.out_dir / "embedding_full.csv");
  std::cout << "k: " << report.k << "\n";
  for (std::size_t d = 0; d < report.residual_variance.size(); ++d) {
    std::cout << "r(" << d + 1 << ") = " << format_double(report.residual_variance[d]) << "\n";
  }
  std::cout << "d*: " << report.dimension << "\n";
  for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"swarmfold: phases and manifolds of collective motion"};
  app.require_subcommand(1);

  Flags simulate_flags, analyze_flags, run_flags, isomap_flags;
  auto* simulate = app.add_subcommand("simulate", "simulate a scenario and write its trajectory");
  add_common(simulate, simulate_flags, true, false);
  auto* analyze_cmd = app.add_subcommand("analyze", "analyse a trajectory CSV");
  add_common(analyze_cmd, analyze_flags, true, true);
  auto* run = app.add_subcommand("run", "simulate or load, then analyse and write every artifact");
  add_common(run, run_flags, true, true);
  auto* iso = app.add_subcommand("isomap", "Isomap dimensionality of a trajectory CSV");
  add_common(iso, isomap_flags, false, false);
  iso->add_option("--input", isomap_flags.input, "trajectory CSV");

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) return cmd_simulate(simulate_flags);
    if (analyze_cmd->parsed()) return cmd_pipeline(analyze_flags, true);
    if (run->parsed()) return cmd_pipeline(run_flags, false);
    if (iso->parsed()) return cmd_isomap(isomap_flags);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
