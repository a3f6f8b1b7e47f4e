#include "cli.hpp"

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <numbers>
#include <optional>
#include <regex>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "sepvol/error.hpp"
#include "sepvol/estimator.hpp"
#include "sepvol/frames.hpp"
#include "sepvol/io.hpp"
#include "sepvol/separability.hpp"

namespace sepvol::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr std::size_t kFullScaleFrames = 1u << 15;
constexpr std::uint64_t kFullScalePoints = 1'000'000;
constexpr double kDegree = std::numbers::pi / 180.0;

BipartiteDims parse_dims(const std::string& text) {
  static const std::regex pattern(R"(^\s*(\d+)\s*[xX]\s*(\d+)\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, pattern)) {
    throw CLI::ValidationError("--dims", "expected AxB, got '" + text + "'");
  }
  const auto a = std::stoul(m[1]), b = std::stoul(m[2]);
  if (a < 2 || b < 2) {
    throw CLI::ValidationError("--dims", "subsystem dimensions must be >= 2");
  }
  return {a, b};
}

std::vector<BipartiteDims> parse_dims_list(const std::string& text) {
  std::vector<BipartiteDims> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto piece = text.substr(start, comma == std::string::npos ? std::string::npos
                                                                      : comma - start);
    if (!piece.empty()) out.push_back(parse_dims(piece));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (out.empty()) throw CLI::ValidationError("--dims-list", "no dimensions given");
  return out;
}

std::string dims_label(const BipartiteDims& d) {
  return std::to_string(d.dim_a()) + "x" + std::to_string(d.dim_b());
}

// Above composite dimension 6 PPT is only necessary for separability.
const char* criterion_label(const BipartiteDims& d) {
  return d.total() <= 6 ? "separable" : "ppt";
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json estimate_json(const VolumeEstimate& e) {
  return {{"mean", e.mean},
          {"std_error", e.std_error},
          {"n_samples", e.n_samples},
          {"n_separable", e.n_separable}};
}

/// Parsed command line.
struct RunConfig {
  std::string command;
  std::string dims_text = "2x2";
  std::string dims_list_text = "2x2,2x3,2x4,3x3,2x5,2x6,3x4";
  std::size_t n_frames = 512;
  std::size_t scan_frames = 128;
  std::uint64_t n_points = 20000;
  std::size_t grid = 9;
  std::size_t resolution = 64;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  std::string output_dir;
  bool full_scale = false;
  std::string measure = "entropy";

  // Frame selection, highest precedence first.
  bool bell = false;
  std::vector<double> two_param;
  std::optional<double> theta, alpha, theta_deg, alpha_deg;
  std::vector<double> qutrit_family;
  std::vector<double> canonical;
  std::string frame_file;
  std::string save_frame;

  // radius-fit
  std::string scan_input;
  std::optional<double> decay_rate;
  long long d_max = 100;
};

struct FrameChoice {
  Frame frame;
  json description;
};

std::optional<double> angle(const std::optional<double>& rad,
                            const std::optional<double>& deg) {
  if (rad) return rad;
  if (deg) return *deg * kDegree;
  return std::nullopt;
}

FrameChoice select_frame(const RunConfig& cfg) {
  if (cfg.bell) {
    const auto dims = parse_dims(cfg.dims_text);
    return {bell_frame(dims), {{"kind", "bell"}, {"dims", dims_label(dims)}}};
  }
  const auto theta = angle(cfg.theta, cfg.theta_deg);
  const auto alpha = angle(cfg.alpha, cfg.alpha_deg);
  if (!cfg.two_param.empty() || theta || alpha) {
    double t = theta.value_or(0.0), a = alpha.value_or(0.0);
    if (!cfg.two_param.empty()) {
      t = cfg.two_param[0];
      a = cfg.two_param[1];
    }
    return {two_param_frame(t, a), {{"kind", "two-param"}, {"theta", t}, {"alpha", a}}};
  }
  if (!cfg.qutrit_family.empty()) {
    const auto& q = cfg.qutrit_family;
    return {qubit_qutrit_frame(q[0], q[1], q[2]),
            {{"kind", "qutrit-family"}, {"theta", q[0]}, {"alpha", q[1]}, {"beta", q[2]}}};
  }
  if (!cfg.canonical.empty()) {
    const auto& c = cfg.canonical;
    CanonicalTwoQubitParams p{c[0], c[1], c[2], c[3], c[4], c[5]};
    return {canonical_two_qubit_frame(p),
            {{"kind", "canonical"},
             {"theta1", p.theta1},
             {"alpha", p.alpha},
             {"theta2", p.theta2},
             {"theta3", p.theta3},
             {"phi", p.phi},
             {"phi3", p.phi3}}};
  }
  if (!cfg.frame_file.empty()) {
    return {io::read_frame_file(cfg.frame_file),
            {{"kind", "file"}, {"path", cfg.frame_file}}};
  }
  throw InvalidInput(
      "no frame given: use --bell, --two-param, --theta/--alpha, --qutrit-family, "
      "--canonical or --frame-file");
}

class Runner {
 public:
  Runner(const RunConfig& cfg, const CLI::App& app, std::ostream& out)
      : cfg_(cfg), app_(app), out_(out), started_(std::chrono::steady_clock::now()) {
    const char* env = std::getenv(kOutputDirEnv);
    dir_ = !cfg.output_dir.empty() ? fs::path(cfg.output_dir)
                                   : fs::path(env && *env ? env : ".");
    fs::create_directories(dir_);
    summary_ = {{"command", cfg.command},
                {"seed", cfg.seed},
                {"version", kVersion},
                {"threads", cfg.threads},
                {"started_at", utc_timestamp()}};
    options_.threads = cfg.threads;
    options_.measure = parse_entanglement_measure(cfg.measure);
  }

  int dispatch() {
    if (cfg_.command == "estimate") return estimate();
    if (cfg_.command == "frame-volume") return frame_volume();
    if (cfg_.command == "sweep") return sweep();
    if (cfg_.command == "region") return region();
    if (cfg_.command == "scan") return scan();
    if (cfg_.command == "radius-fit") return radius_fit();
    throw InvalidInput("unknown command '" + cfg_.command + "'");
  }

 private:
  bool given(const char* sub, const char* flag) const {
    return app_.get_subcommand(sub)->count(flag) > 0;
  }

  std::size_t frames_for(const char* sub) const {
    const std::size_t requested =
        cfg_.command == "scan" ? cfg_.scan_frames : cfg_.n_frames;
    return cfg_.full_scale && !given(sub, "--frames") ? kFullScaleFrames : requested;
  }
  std::uint64_t points_for(const char* sub) const {
    return cfg_.full_scale && !given(sub, "--points") ? kFullScalePoints : cfg_.n_points;
  }

  void emit(const std::string& name, const std::string& text) {
    io::write_text(dir_ / name, text);
    summary_["files"].push_back(name);
  }

  int finish(const std::string& line) {
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started_).count();
    summary_["timings"] = {{"wall_seconds", seconds}};
    io::write_text(dir_ / "summary.json", summary_.dump(2) + "\n");
    out_ << line << "\n";
    return kExitOk;
  }

  int estimate() {
    const auto dims = parse_dims(cfg_.dims_text);
    const auto frames = frames_for("estimate");
    const auto points = points_for("estimate");
    const auto result = global_volume(dims, frames, points, cfg_.seed, options_);
    emit("frames.csv", io::frames_csv(result.frames));
    emit("histogram.csv", io::histogram_csv(frame_histograms(result.frames)));
    const auto& worst = result.min_frame();
    summary_["dims"] = dims_label(dims);
    summary_["criterion"] = criterion_label(dims);
    summary_["entanglement_measure"] = cfg_.measure;
    summary_["result"] = {{"pooled", estimate_json(result.pooled)},
                          {"frame_std_error", result.frame_std_error},
                          {"n_frames", frames},
                          {"n_points", points},
                          {"min_fraction", worst.fraction.mean},
                          {"min_fraction_std_error", worst.fraction.std_error},
                          {"min_frame_index", worst.frame_index}};
    const std::string label = dims.total() <= 6 ? "v_sep" : "v_ppt";
    return finish("estimate " + dims_label(dims) + ": " + label + " = " +
                  io::format_double(result.pooled.mean) + " ± " +
                  io::format_double(result.frame_std_error) + " (frames=" +
                  std::to_string(frames) + ", points=" + std::to_string(points) +
                  ", min frame fraction=" + io::format_double(worst.fraction.mean) + ")");
  }

  int frame_volume() {
    const auto choice = select_frame(cfg_);
    const auto points = points_for("frame-volume");
    if (!cfg_.save_frame.empty()) io::write_frame_file(cfg_.save_frame, choice.frame);
    RandomStream rng = derive_stream(cfg_.seed, 0);
    const auto fraction = frame_fraction(choice.frame, points, rng);
    const double ent = frame_entanglement(choice.frame, options_.measure);
    const FrameRecord record{0, ent, fraction};
    emit("frames.csv", io::frames_csv(std::span(&record, 1)));
    summary_["frame"] = choice.description;
    summary_["dims"] = dims_label(choice.frame.dims());
    summary_["criterion"] = criterion_label(choice.frame.dims());
    summary_["result"] = {{"fraction", estimate_json(fraction)},
                          {"frame_entanglement", ent}};
    return finish("frame-volume " + dims_label(choice.frame.dims()) + ": fraction = " +
                  io::format_double(fraction.mean) + " ± " +
                  io::format_double(fraction.std_error) +
                  " (points=" + std::to_string(points) +
                  ", frame entanglement=" + io::format_double(ent) + ")");
  }

  int sweep() {
    const auto points = points_for("sweep");
    const auto nodes = sweep_two_param(cfg_.grid, points, cfg_.seed, options_);
    emit("sweep.csv", io::sweep_csv(nodes));
    const auto it = std::min_element(nodes.begin(), nodes.end(), [](auto& a, auto& b) {
      return a.fraction.mean < b.fraction.mean;
    });
    summary_["result"] = {{"grid", cfg_.grid},
                          {"n_points", points},
                          {"min_theta", it->theta},
                          {"min_alpha", it->alpha},
                          {"min_fraction", it->fraction.mean}};
    return finish("sweep " + std::to_string(cfg_.grid) + "x" + std::to_string(cfg_.grid) +
                  ": minimum fraction " + io::format_double(it->fraction.mean) +
                  " at (theta, alpha) = (" + io::format_double(it->theta) + ", " +
                  io::format_double(it->alpha) + ")");
  }

  int region() {
    const auto choice = select_frame(cfg_);
    const auto mesh = region_mesh(choice.frame, cfg_.resolution, cfg_.threads);
    emit("mesh.csv", io::mesh_csv(mesh));
    const json header = {{"frame", choice.description},
                         {"frame_vectors", io::frame_to_json(choice.frame)},
                         {"resolution", mesh.resolution},
                         {"classes", {"outside", "separable", "entangled"}},
                         {"counts",
                          {{"outside", mesh.count(CellClass::Outside)},
                           {"separable", mesh.count(CellClass::Separable)},
                           {"entangled", mesh.count(CellClass::Entangled)}}}};
    emit("mesh.json", header.dump(2) + "\n");
    summary_["result"] = {{"separable_ratio", mesh.separable_ratio()},
                          {"resolution", mesh.resolution}};
    return finish("region resolution " + std::to_string(mesh.resolution) +
                  ": separable/inside = " + io::format_double(mesh.separable_ratio()));
  }

  int scan() {
    const auto dims_list = parse_dims_list(cfg_.dims_list_text);
    const auto frames = frames_for("scan");
    const auto points = points_for("scan");
    const auto rows = dimension_scan(dims_list, frames, points, cfg_.seed, options_);
    emit("scan.csv", io::scan_csv(rows));
    std::string line = "scan:";
    for (const auto& r : rows) {
      line += " " + dims_label(r.dims) + "=" + io::format_double(r.mean_fraction);
    }
    json result = {{"n_frames", frames}, {"n_points", points}};
    if (rows.size() >= 2) {
      try {
        const auto fit = fit_exponential(rows);
        result["decay_rate"] = fit.decay_rate;
        line += "; decay rate " + io::format_double(fit.decay_rate);
      } catch (const std::exception&) {
        // Degenerate abscissae or zero means: no fit to report.
      }
    }
    summary_["result"] = result;
    return finish(line);
  }

  int radius_fit() {
    double rate;
    json result;
    if (cfg_.decay_rate) {
      rate = *cfg_.decay_rate;
    } else {
      const fs::path input = cfg_.scan_input.empty() ? dir_ / "scan.csv" : fs::path(cfg_.scan_input);
      const auto rows = io::parse_scan_csv(io::read_text(input));
      const auto fit = fit_exponential(rows);
      rate = fit.decay_rate;
      result["input"] = input.string();
      result["log_intercept"] = fit.log_intercept;
      result["max_abs_residual"] = fit.max_abs_residual;
    }
    emit("radius.csv", io::radius_csv(rate, cfg_.d_max));
    result["decay_rate"] = rate;
    result["d_max"] = cfg_.d_max;
    summary_["result"] = result;
    return finish("radius-fit: decay rate " + io::format_double(rate) + ", ratio(2) = " +
                  io::format_double(radius_ratio(2, rate)) + ", ratio(" +
                  std::to_string(cfg_.d_max) + ") = " +
                  io::format_double(radius_ratio(cfg_.d_max, rate)));
  }

  const RunConfig& cfg_;
  const CLI::App& app_;
  std::ostream& out_;
  std::chrono::steady_clock::time_point started_;
  fs::path dir_;
  json summary_;
  EstimatorOptions options_;
};

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--seed", cfg.seed, "Master seed (decimal 64-bit)");
  sub->add_option("--threads", cfg.threads, "Worker cap (0 = all cores)");
  sub->add_option("--output-dir", cfg.output_dir,
                  std::string("Output directory (default $") + kOutputDirEnv + " or .)");
}

void add_frame_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--dims", cfg.dims_text, "Subsystem dimensions AxB")->capture_default_str();
  sub->add_flag("--bell", cfg.bell, "Maximally entangled frame for --dims");
  sub->add_option("--two-param", cfg.two_param, "theta alpha (radians)")->expected(2);
  sub->add_option("--theta", cfg.theta, "Two-parameter theta (radians)");
  sub->add_option("--alpha", cfg.alpha, "Two-parameter alpha (radians)");
  sub->add_option("--theta-deg", cfg.theta_deg, "Two-parameter theta (degrees)");
  sub->add_option("--alpha-deg", cfg.alpha_deg, "Two-parameter alpha (degrees)");
  sub->add_option("--qutrit-family", cfg.qutrit_family, "theta alpha beta (radians)")
      ->expected(3);
  sub->add_option("--canonical", cfg.canonical,
                  "theta1 alpha theta2 theta3 phi phi3 canonical two-qubit frame")
      ->expected(6);
  sub->add_option("--frame-file", cfg.frame_file, "Frame JSON file");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Monte Carlo volume of separable bipartite states", "sepvol"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  auto* estimate = app.add_subcommand("estimate", "Orbit-averaged separable volume");
  estimate->add_option("--dims", cfg.dims_text, "Subsystem dimensions AxB")
      ->capture_default_str();
  estimate->add_option("--frames", cfg.n_frames, "Haar frames")->capture_default_str();
  estimate->add_option("--points", cfg.n_points, "Simplex points per frame")
      ->capture_default_str();
  estimate->add_option("--measure", cfg.measure, "Frame entanglement: entropy|concurrence")
      ->check(CLI::IsMember({"entropy", "concurrence"}));
  estimate->add_flag("--paper-scale", cfg.full_scale, "2^15 frames x 10^6 points");
  add_common(estimate, cfg);

  auto* frame_volume = app.add_subcommand("frame-volume", "Separable fraction of one frame");
  add_frame_options(frame_volume, cfg);
  frame_volume->add_option("--points", cfg.n_points, "Simplex points")->capture_default_str();
  frame_volume->add_option("--measure", cfg.measure, "Frame entanglement: entropy|concurrence")
      ->check(CLI::IsMember({"entropy", "concurrence"}));
  frame_volume->add_option("--save-frame", cfg.save_frame, "Write the frame as JSON");
  frame_volume->add_flag("--paper-scale", cfg.full_scale, "10^6 points");
  add_common(frame_volume, cfg);

  auto* sweep = app.add_subcommand("sweep", "Two-parameter family grid over [0, pi/4]^2");
  sweep->add_option("--grid", cfg.grid, "Nodes per axis")
      ->check(CLI::Range(std::size_t{2}, std::size_t{1000}))
      ->capture_default_str();
  sweep->add_option("--points", cfg.n_points, "Simplex points per node")->capture_default_str();
  sweep->add_flag("--paper-scale", cfg.full_scale, "10^6 points per node");
  add_common(sweep, cfg);

  auto* region = app.add_subcommand("region", "Classify a grid over the two-qubit tetrahedron");
  add_frame_options(region, cfg);
  region->add_option("--resolution", cfg.resolution, "Cells per axis")
      ->check(CLI::Range(std::size_t{2}, std::size_t{1024}))
      ->capture_default_str();
  add_common(region, cfg);

  auto* scan = app.add_subcommand("scan", "Mean and minimum fraction across dimensions");
  scan->add_option("--dims-list", cfg.dims_list_text, "Comma-separated AxB list")
      ->capture_default_str();
  scan->add_option("--frames", cfg.scan_frames, "Haar frames per dims")->capture_default_str();
  scan->add_option("--points", cfg.n_points, "Simplex points per frame")->capture_default_str();
  scan->add_flag("--paper-scale", cfg.full_scale, "2^15 frames x 10^6 points");
  add_common(scan, cfg);

  auto* radius = app.add_subcommand("radius-fit", "Effective radius ratio from a decay fit");
  radius->add_option("--input", cfg.scan_input, "scan.csv to fit (default <output-dir>/scan.csv)");
  radius->add_option("--decay-rate", cfg.decay_rate, "Use this decay rate instead of a fit")
      ->check(CLI::NonNegativeNumber);
  radius->add_option("--d-max", cfg.d_max, "Largest dimension tabulated")
      ->check(CLI::Range(2LL, 1000000LL))
      ->capture_default_str();
  add_common(radius, cfg);

  std::vector<const char*> argv{"sepvol"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  for (auto* sub : app.get_subcommands()) cfg.command = sub->get_name();
  for (const auto* key : {"--frames", "--points"}) {
    for (auto* sub : app.get_subcommands()) {
      auto* opt = sub->get_option_no_throw(key);
      if (opt && opt->count() > 0 && opt->as<std::uint64_t>() == 0) {
        err << "sepvol: " << key << " must be positive\n";
        return kExitUsage;
      }
    }
  }

  try {
    Runner runner(cfg, app, out);
    return runner.dispatch();
  } catch (const CLI::ValidationError& e) {
    err << "sepvol: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "sepvol: infeasible parameters [" << e.constraint() << "]: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const InvalidInput& e) {
    err << "sepvol: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Unsupported& e) {
    err << "sepvol: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "sepvol: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace sepvol::cli
