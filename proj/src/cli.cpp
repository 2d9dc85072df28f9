#include "univip/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "univip/datasets_io.hpp"
#include "univip/flow_ops.hpp"
#include "univip/losses_metrics.hpp"
#include "univip/pyramid.hpp"
#include "univip/report.hpp"
#include "univip/scenegen.hpp"
#include "univip/timegrid.hpp"

namespace univip::cli {
namespace {

struct CommandError {
  int code;
  std::string kind;
  std::string message;
};

[[noreturn]] void usage_error(const std::string& message) {
  throw CommandError{kInvalidArguments, "invalid-arguments", message};
}

/// Runs file I/O; library errors become exit 3 (or 2 for bad values).
template <typename F>
auto io_step(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    const int code = is_io_error(e.kind()) ? kIoFailure : kInvalidArguments;
    throw CommandError{code, std::string(to_string(e.kind())), e.what()};
  }
}

/// Runs engine work; library errors become exit 4.
template <typename F>
auto engine_step(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    throw CommandError{kEngineError, std::string(to_string(e.kind())), e.what()};
  }
}

struct EstimatorOptions {
  std::string estimator = "classical";
  std::string flow01;
  std::string flow10;
  int window = 9;
  int iters = 5;
  double smoothing = 0.0;
  int levels = 0;
};

struct EngineFlags {
  bool no_convert = false;
  bool no_temporal_factor = false;
  bool no_fill = false;
};

void add_estimator_options(CLI::App* app, EstimatorOptions& o, bool with_flow_files,
                           const std::string& iters_flag = "--iters") {
  app->add_option("--estimator", o.estimator, "Flow estimator")
      ->check(CLI::IsMember({"gt", "classical"}))
      ->capture_default_str();
  if (with_flow_files) {
    app->add_option("--gt-flow01", o.flow01, "Ground-truth F0->1 (.flo) for --estimator gt");
    app->add_option("--gt-flow10", o.flow10, "Ground-truth F1->0 (.flo) for --estimator gt");
  }
  app->add_option("--window", o.window, "Classical estimator window")->check(CLI::PositiveNumber)
      ->capture_default_str();
  app->add_option(iters_flag, o.iters, "Classical estimator iterations per level")
      ->check(CLI::NonNegativeNumber)->capture_default_str();
  app->add_option("--smoothing", o.smoothing, "Classical estimator quadratic smoothing")
      ->check(CLI::NonNegativeNumber)->capture_default_str();
  app->add_option("--levels", o.levels, "Pyramid levels (0 = automatic)")
      ->check(CLI::NonNegativeNumber)->capture_default_str();
}

void add_engine_flags(CLI::App* app, EngineFlags& f) {
  app->add_flag("--no-convert", f.no_convert, "Synthesize t < 0 directly instead of converting");
  app->add_flag("--no-temporal-factor", f.no_temporal_factor, "Use (0.5, 0.5) temporal factors");
  app->add_flag("--no-fill", f.no_fill, "Leave unfillable pixels at 0");
}

SynthesisOptions to_options(const EngineFlags& f) {
  SynthesisOptions o;
  o.convert = !f.no_convert;
  o.temporal_factor = !f.no_temporal_factor;
  o.fill = !f.no_fill;
  return o;
}

ClassicalParams to_params(const EstimatorOptions& o) {
  ClassicalParams p;
  p.window = o.window;
  p.iterations = o.iters;
  p.smoothing = o.smoothing;
  return p;
}

/// Ground-truth flows from the command's flow-file options, if given.
std::shared_ptr<const GroundTruthFlows> load_flow_files(const EstimatorOptions& o) {
  if (o.flow01.empty() && o.flow10.empty()) return nullptr;
  if (o.flow01.empty() || o.flow10.empty()) usage_error("--gt-flow01 and --gt-flow10 go together");
  return io_step([&] {
    return std::make_shared<const GroundTruthFlows>(
        GroundTruthFlows{read_flo(o.flow01), read_flo(o.flow10)});
  });
}

EstimatorSpec make_estimator(const EstimatorOptions& o,
                             const std::shared_ptr<const GroundTruthFlows>& gt) {
  if (o.estimator == "gt") {
    if (!gt) usage_error("--estimator gt needs ground-truth flows");
    EstimatorSpec spec;
    spec.kind = EstimatorKind::GroundTruth;
    spec.ground_truth = gt;
    return spec;
  }
  return EstimatorSpec::classical(to_params(o));
}

std::uint64_t effective_seed(std::uint64_t requested) {
  if (const char* env = std::getenv("UNIVIP_SEED"); env && *env) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0') return v;
    usage_error("UNIVIP_SEED must be an unsigned integer");
  }
  return requested;
}

void check_flow_sizes(const std::shared_ptr<const GroundTruthFlows>& gt, const Image& img) {
  if (gt && (!gt->f01.same_size(img.width(), img.height()) ||
             !gt->f10.same_size(img.width(), img.height()))) {
    usage_error("ground-truth flow size differs from the input frames");
  }
}

ReportItem score(const SynthesisResult& r, const Image* target,
                 const std::shared_ptr<const GroundTruthFlows>& gt, double t) {
  ReportItem item;
  item.t = t;
  item.milliseconds = r.milliseconds;
  item.hole_iou = hole_overlap(r.holes0, r.holes1);
  if (target) {
    item.psnr = psnr(r.it, *target);
    Plane<std::uint8_t> fillable(r.it.width(), r.it.height(), 1);
    for (int y = 0; y < r.it.height(); ++y) {
      for (int x = 0; x < r.it.width(); ++x) fillable.at(x, y) = r.unfillable.hole(x, y) ? 0 : 1;
    }
    item.psnr_fillable = psnr(r.it, *target, fillable);
    if (r.it.width() >= kSsimWindow && r.it.height() >= kSsimWindow) item.ssim = ssim(r.it, *target);
  }
  if (gt) {
    const FlowField& ref = r.converted ? gt->f10 : gt->f01;
    item.epe = endpoint_error(r.f01, ref);
  }
  return item;
}

std::string fmt(double v, int precision = 3) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(precision) << v;
  return s.str();
}

void print_item(std::ostream& out, const std::string& label, const ReportItem& item) {
  out << label << " t=" << item.t;
  if (!item.ok) {
    out << " error: " << item.error << '\n';
    return;
  }
  if (item.psnr) out << " psnr=" << fmt(*item.psnr) << "dB";
  if (item.psnr_fillable) out << " psnr_fillable=" << fmt(*item.psnr_fillable) << "dB";
  if (item.ssim) out << " ssim=" << fmt(*item.ssim, 4);
  if (item.epe) out << " epe=" << fmt(*item.epe);
  if (item.hole_iou) out << " hole_iou=" << fmt(*item.hole_iou);
  out << " ms=" << fmt(item.milliseconds, 1) << '\n';
}

void print_aggregates(std::ostream& out, const std::vector<ReportItem>& items) {
  for (const Aggregate& a : aggregate(items)) {
    out << "[" << a.scope << "] n=" << a.count;
    if (a.failed) out << " failed=" << a.failed;
    if (a.psnr) out << " psnr=" << fmt(*a.psnr) << "dB";
    if (a.psnr_fillable) out << " psnr_fillable=" << fmt(*a.psnr_fillable) << "dB";
    if (a.ssim) out << " ssim=" << fmt(*a.ssim, 4);
    if (a.epe) out << " epe=" << fmt(*a.epe);
    out << " ms=" << fmt(a.milliseconds, 1) << "±" << fmt(a.milliseconds_stddev, 1) << '\n';
  }
}

void dump_diagnostics(const SynthesisResult& r, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw CommandError{kIoFailure, "io-failure", "cannot create " + dir.string()};
  io_step([&] {
    write_flo(r.f01, dir / "f01.flo");
    write_flo(r.f10, dir / "f10.flo");
    write_flo(r.f0t, dir / "f0t.flo");
    write_flo(r.f1t, dir / "f1t.flo");
    write_mask(r.holes0, dir / "holes0.png");
    write_mask(r.holes1, dir / "holes1.png");
    write_mask(r.unfillable, dir / "unfillable.png");
    for (auto [cov, name] : {std::pair{&r.coverage0, "coverage0.png"},
                             std::pair{&r.coverage1, "coverage1.png"}}) {
      Image img(cov->width(), cov->height(), 1);
      for (int y = 0; y < cov->height(); ++y) {
        for (int x = 0; x < cov->width(); ++x) img.at(x, y) = std::min(1.0, cov->at(x, y));
      }
      write_image(img, dir / name);
    }
    nlohmann::ordered_json j;
    j["task"] = std::string(to_string(r.task));
    j["task_channel"] = r.task == TaskKind::Prediction ? 1 : 0;
    j["effective_t"] = r.effective_t;
    j["converted"] = r.converted;
    j["w0"] = r.weights.w0;
    j["w1"] = r.weights.w1;
    j["levels"] = r.levels;
    j["levels_from_bracket_rule"] = r.levels_from_rule;
    j["milliseconds"] = r.milliseconds;
    for (const LevelDiagnostics& d : r.per_level) {
      nlohmann::ordered_json l;
      l["level"] = d.level;
      l["width"] = d.width;
      l["height"] = d.height;
      if (d.epe01) l["epe01"] = *d.epe01;
      if (d.epe10) l["epe10"] = *d.epe10;
      l["residual01"] = d.residual01;
      l["residual10"] = d.residual10;
      l["hole_iou"] = d.hole_iou;
      l["unfillable"] = d.unfillable;
      l["task_channel"] = d.task_channel;
      l["milliseconds"] = d.milliseconds;
      j["per_level"].push_back(l);
    }
    std::ofstream out(dir / "diagnostics.json");
    out << j.dump(2) << '\n';
    if (!out) fail(ErrorKind::IoFailure, "failed writing diagnostics.json");
  });
}

nlohmann::ordered_json echo(const EstimatorOptions& e, const EngineFlags& f) {
  nlohmann::ordered_json j;
  j["estimator"] = e.estimator;
  j["window"] = e.window;
  j["iters"] = e.iters;
  j["smoothing"] = e.smoothing;
  j["levels"] = e.levels;
  j["convert"] = !f.no_convert;
  j["temporal_factor"] = !f.no_temporal_factor;
  j["fill"] = !f.no_fill;
  return j;
}

// synth ---------------------------------------------------------------------

struct SynthArgs {
  std::string i0, i1, out, target, report, dump;
  double t = 0.5;
  EstimatorOptions est;
  EngineFlags flags;
};

int cmd_synth(const SynthArgs& a, std::ostream& out) {
  if (!std::isfinite(a.t)) usage_error("--t must be finite");
  const Image i0 = io_step([&] { return read_image(a.i0); });
  const Image i1 = io_step([&] { return read_image(a.i1); });
  if (!i0.same_shape(i1)) usage_error("input frames differ in size or channel count");
  std::optional<Image> target;
  if (!a.target.empty()) {
    target = io_step([&] { return read_image(a.target); });
    if (!target->same_shape(i0)) usage_error("target differs in size from the inputs");
  }
  const auto gt = load_flow_files(a.est);
  check_flow_sizes(gt, i0);

  SynthesisRequest req{i0, i1, a.t, make_estimator(a.est, gt), a.est.levels, to_options(a.flags),
                       gt, std::nullopt};
  const SynthesisResult r = engine_step([&] { return synthesize(req); });
  io_step([&] { write_image(r.it, a.out); });
  if (!a.dump.empty()) dump_diagnostics(r, a.dump);

  ReportItem item = score(r, target ? &*target : nullptr, gt, a.t);
  item.id = fs::path(a.out).filename().string();
  out << "synth task=" << to_string(r.task) << (r.converted ? " converted" : "")
      << " levels=" << r.levels << '\n';
  print_item(out, item.id, item);
  if (!a.report.empty()) {
    Report report{"synth", echo(a.est, a.flags), {item}};
    report.request["i0"] = a.i0;
    report.request["i1"] = a.i1;
    report.request["t"] = a.t;
    io_step([&] { write_report(report, a.report); });
  }
  return kOk;
}

// sweep ---------------------------------------------------------------------

struct SweepArgs {
  std::string i0, i1, times, outdir, report, target_dir;
  std::int64_t scene_seed = -1;
  int width = 128, height = 128;
  EstimatorOptions est;
  EngineFlags flags;
};

int cmd_sweep(const SweepArgs& a, std::ostream& out) {
  std::vector<TimePoint> times;
  try {
    times = parse_time_list(a.times);
  } catch (const Error& e) {
    usage_error(e.what());
  }
  const bool from_scene = a.scene_seed >= 0;
  if (from_scene == (!a.i0.empty() || !a.i1.empty())) {
    usage_error("give either --i0/--i1 or --scene-seed");
  }
  if (!from_scene && (a.i0.empty() || a.i1.empty())) usage_error("--i0 and --i1 are both required");

  std::optional<SyntheticScene> scene;
  Image i0, i1;
  std::shared_ptr<const GroundTruthFlows> gt;
  if (from_scene) {
    SceneOptions so;
    so.width = a.width;
    so.height = a.height;
    scene = io_step([&] { return random_scene(effective_seed(static_cast<std::uint64_t>(a.scene_seed)), so); });
    i0 = render(*scene, 0.0);
    i1 = render(*scene, 1.0);
    gt = std::make_shared<const GroundTruthFlows>(GroundTruthFlows::from_scene(*scene));
  } else {
    i0 = io_step([&] { return read_image(a.i0); });
    i1 = io_step([&] { return read_image(a.i1); });
    if (!i0.same_shape(i1)) usage_error("input frames differ in size or channel count");
    gt = load_flow_files(a.est);
    check_flow_sizes(gt, i0);
  }
  const EstimatorSpec spec = make_estimator(a.est, gt);

  std::error_code ec;
  fs::create_directories(a.outdir, ec);
  if (ec) throw CommandError{kIoFailure, "io-failure", "cannot create " + a.outdir};

  Report report{"sweep", echo(a.est, a.flags), {}};
  report.request["times"] = a.times;
  if (from_scene) report.request["scene_seed"] = effective_seed(static_cast<std::uint64_t>(a.scene_seed));
  for (const TimePoint& tp : times) {
    std::optional<Image> target;
    if (scene) {
      target = render(*scene, tp.value);
    } else if (!a.target_dir.empty()) {
      const fs::path p = fs::path(a.target_dir) / ("t_" + tp.label + ".png");
      if (fs::exists(p)) target = io_step([&] { return read_image(p); });
    }
    SynthesisRequest req{i0, i1, tp.value, spec, a.est.levels, to_options(a.flags), gt, std::nullopt};
    const SynthesisResult r = engine_step([&] { return synthesize(req); });
    io_step([&] { write_image(r.it, fs::path(a.outdir) / ("t_" + tp.label + ".png")); });
    ReportItem item = score(r, target ? &*target : nullptr, gt, tp.value);
    item.id = "t_" + tp.label;
    item.role = tp.value < 0.0 ? "prev" : (tp.value > 1.0 ? "next" : "interp");
    print_item(out, item.id, item);
    report.items.push_back(std::move(item));
  }
  print_aggregates(out, report.items);
  const fs::path report_path = a.report.empty() ? fs::path(a.outdir) / "report.jsonl" : fs::path(a.report);
  io_step([&] { write_report(report, report_path); });
  return kOk;
}

// eval ----------------------------------------------------------------------

struct EvalArgs {
  std::string manifest, report;
  int jobs = 1;
  EstimatorOptions est;
  EngineFlags flags;
};

ReportItem eval_record(const TripletRecord& rec, const EvalArgs& a) {
  ReportItem item;
  item.id = rec.directory.filename().string();
  item.role = std::string(to_string(rec.role));
  item.t = rec.time();
  try {
    TripletFrames frames = load_triplet(rec);
    std::shared_ptr<const GroundTruthFlows> gt;
    if (rec.flow01 && rec.flow10) {
      gt = std::make_shared<const GroundTruthFlows>(
          GroundTruthFlows{read_flo(*rec.flow01), read_flo(*rec.flow10)});
    }
    if (a.est.estimator == "gt" && !gt) {
      fail(ErrorKind::InvalidConfiguration, "record has no ground-truth flows");
    }
    EstimatorSpec spec = a.est.estimator == "gt" ? EstimatorSpec{EstimatorKind::GroundTruth, gt, {}}
                                                 : EstimatorSpec::classical(to_params(a.est));
    SynthesisRequest req{frames.i0, frames.i1, frames.t, spec, a.est.levels, to_options(a.flags),
                         gt, std::nullopt};
    const SynthesisResult r = synthesize(req);
    ReportItem scored = score(r, &frames.target, gt, frames.t);
    scored.id = item.id;
    scored.role = item.role;
    return scored;
  } catch (const Error& e) {
    item.ok = false;
    item.error = std::string(to_string(e.kind())) + ": " + e.what();
    return item;
  }
}

int cmd_eval(const EvalArgs& a, std::ostream& out) {
  const auto records = io_step([&] { return read_manifest(a.manifest); });
  if (records.empty()) usage_error("manifest has no records");
  if (a.jobs < 1) usage_error("--jobs must be at least 1");

  std::vector<ReportItem> items(records.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < records.size(); i = next++) items[i] = eval_record(records[i], a);
  };
  const int workers = std::min<int>(a.jobs, static_cast<int>(records.size()));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int k = 0; k < workers; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  Report report{"eval", echo(a.est, a.flags), std::move(items)};
  report.request["manifest"] = a.manifest;
  report.request["jobs"] = a.jobs;
  for (const ReportItem& item : report.items) print_item(out, item.role + "/" + item.id, item);
  print_aggregates(out, report.items);
  io_step([&] { write_report(report, a.report); });
  const bool any_failed = std::any_of(report.items.begin(), report.items.end(),
                                      [](const ReportItem& i) { return !i.ok; });
  return any_failed ? kFailure : kOk;
}

// gen-scenes ----------------------------------------------------------------

struct GenArgs {
  std::string outdir;
  std::vector<std::string> roles{"interp"};
  int count = 10;
  std::uint64_t seed = 1;
  int width = 128, height = 128, channels = 3;
};

int cmd_gen_scenes(const GenArgs& a, std::ostream& out) {
  if (a.count < 1) usage_error("--count must be positive");
  std::vector<TripletRole> roles;
  for (const std::string& r : a.roles) {
    try {
      roles.push_back(parse_role(r));
    } catch (const Error& e) {
      usage_error(e.what());
    }
  }
  const std::uint64_t base = effective_seed(a.seed);
  SceneOptions so;
  so.width = a.width;
  so.height = a.height;
  so.channels = a.channels;

  std::vector<TripletRecord> records;
  for (TripletRole role : roles) {
    for (int i = 0; i < a.count; ++i) {
      const SyntheticScene scene =
          io_step([&] { return random_scene(base + static_cast<std::uint64_t>(i), so); });
      const Triplet trip = make_triplet(scene, role);
      std::ostringstream name;
      name << std::setw(4) << std::setfill('0') << i;
      const fs::path dir = fs::path(a.outdir) / std::string(to_string(role)) / name.str();
      std::error_code ec;
      fs::create_directories(dir, ec);
      if (ec) throw CommandError{kIoFailure, "io-failure", "cannot create " + dir.string()};
      // Frame placement follows the triplet convention for the role.
      const Image* files[3] = {&trip.i0, &trip.target, &trip.i1};
      if (role == TripletRole::NextPred) {
        files[1] = &trip.i1;
        files[2] = &trip.target;
      } else if (role == TripletRole::PrevPred) {
        files[0] = &trip.target;
        files[1] = &trip.i0;
        files[2] = &trip.i1;
      }
      io_step([&] {
        write_image(*files[0], dir / "im1.png");
        write_image(*files[1], dir / "im2.png");
        write_image(*files[2], dir / "im3.png");
        write_flo(analytic_flow(scene, 0.0, 1.0), dir / "flow01.flo");
        write_flo(analytic_flow(scene, 1.0, 0.0), dir / "flow10.flo");
      });
      TripletRecord rec;
      rec.directory = dir;
      rec.role = role;
      rec.flow01 = dir / "flow01.flo";
      rec.flow10 = dir / "flow10.flo";
      records.push_back(rec);
    }
  }
  const fs::path manifest = fs::path(a.outdir) / "manifest.jsonl";
  io_step([&] { write_manifest(records, manifest); });
  out << "gen-scenes wrote " << records.size() << " triplets, manifest " << manifest.string()
      << " (seed " << base << ")\n";
  return kOk;
}

// bench ---------------------------------------------------------------------

struct BenchArgs {
  std::string size = "640x480";
  int iters = 10;
  std::uint64_t seed = 7;
  double t = 0.5;
  std::string report;
  EstimatorOptions est;
};

int cmd_bench(const BenchArgs& a, std::ostream& out) {
  int w = 0, h = 0;
  char x = 0;
  std::istringstream parse(a.size);
  if (!(parse >> w >> x >> h) || (x != 'x' && x != 'X') || !parse.eof() || w < 16 || h < 16) {
    usage_error("--size must be WxH with both sides at least 16");
  }
  if (a.iters < 1) usage_error("--iters must be positive");

  SceneOptions so;
  so.width = w;
  so.height = h;
  const int side = std::min(w, h);
  so.min_size = std::max(2, std::min(12, side / 4));
  so.max_size = std::max(so.min_size, std::min(24, side / 3));
  so.min_speed = 1.0;
  so.max_speed = std::max(1.0, std::min(10.0, side / 8.0));
  so.time_min = 0.0;
  so.time_max = 1.0;
  const SyntheticScene scene = io_step([&] { return random_scene(effective_seed(a.seed), so); });
  const Image i0 = render(scene, 0.0);
  const Image i1 = render(scene, 1.0);
  const Image target = render(scene, a.t);
  auto gt = std::make_shared<const GroundTruthFlows>(GroundTruthFlows::from_scene(scene));
  const EstimatorSpec spec = make_estimator(a.est, gt);

  Report report{"bench", echo(a.est, {}), {}};
  report.request["size"] = a.size;
  report.request["iters"] = a.iters;
  report.request["t"] = a.t;
  int levels = 0;
  for (int k = 0; k < a.iters; ++k) {
    SynthesisRequest req{i0, i1, a.t, spec, a.est.levels, {}, gt, std::nullopt};
    const SynthesisResult r = engine_step([&] { return synthesize(req); });
    levels = r.levels;
    ReportItem item = score(r, &target, gt, a.t);
    item.id = "iter_" + std::to_string(k);
    report.items.push_back(std::move(item));
  }
  const Aggregate all = aggregate(report.items).front();
  out << "bench " << w << "x" << h << " estimator=" << a.est.estimator << " levels=" << levels
      << " iters=" << a.iters << " mean_ms=" << fmt(all.milliseconds, 2)
      << " stddev_ms=" << fmt(all.milliseconds_stddev, 2) << '\n';
  if (!a.report.empty()) io_step([&] { write_report(report, a.report); });
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Arbitrary-time video frame interpolation and prediction", "univip"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  SynthArgs synth;
  auto* s = app.add_subcommand("synth", "Synthesize one frame at time t");
  s->add_option("--i0", synth.i0, "Frame at t = 0")->required();
  s->add_option("--i1", synth.i1, "Frame at t = 1")->required();
  s->add_option("--t", synth.t, "Target time (any real)")->required();
  s->add_option("--out", synth.out, "Output image")->required();
  s->add_option("--target", synth.target, "Reference frame for PSNR/SSIM");
  s->add_option("--report", synth.report, "Report file (JSON lines)");
  s->add_option("--dump-diagnostics", synth.dump, "Directory for flows, masks and diagnostics");
  add_estimator_options(s, synth.est, true);
  add_engine_flags(s, synth.flags);

  SweepArgs sweep;
  auto* w = app.add_subcommand("sweep", "Synthesize a list of times");
  w->add_option("--i0", sweep.i0, "Frame at t = 0");
  w->add_option("--i1", sweep.i1, "Frame at t = 1");
  w->add_option("--scene-seed", sweep.scene_seed, "Use a generated scene instead of files");
  w->add_option("--width", sweep.width, "Generated scene width")->capture_default_str();
  w->add_option("--height", sweep.height, "Generated scene height")->capture_default_str();
  w->add_option("--times", sweep.times, "Times, e.g. -0.25:-3.00:-0.25,1.25:4.00:0.25")->required();
  w->add_option("--outdir", sweep.outdir, "Output directory")->required();
  w->add_option("--target-dir", sweep.target_dir, "Directory of t_<time>.png references");
  w->add_option("--report", sweep.report, "Report path (default <outdir>/report.jsonl)");
  add_estimator_options(w, sweep.est, true);
  add_engine_flags(w, sweep.flags);

  EvalArgs eval;
  auto* e = app.add_subcommand("eval", "Evaluate a manifest of triplets");
  e->add_option("--manifest", eval.manifest, "Manifest (JSON lines)")->required();
  e->add_option("--report", eval.report, "Report path")->required();
  e->add_option("--jobs", eval.jobs, "Concurrent records")->capture_default_str();
  add_estimator_options(e, eval.est, false);
  add_engine_flags(e, eval.flags);

  GenArgs gen;
  auto* g = app.add_subcommand("gen-scenes", "Write synthetic triplets, flows and a manifest");
  g->add_option("--outdir", gen.outdir, "Output directory")->required();
  g->add_option("--count", gen.count, "Scenes per role")->capture_default_str();
  g->add_option("--roles", gen.roles, "Roles: interp next-pred prev-pred")->delimiter(',')
      ->capture_default_str();
  g->add_option("--seed", gen.seed, "Base seed (UNIVIP_SEED overrides)")->capture_default_str();
  g->add_option("--width", gen.width)->check(CLI::Range(16, 4096))->capture_default_str();
  g->add_option("--height", gen.height)->check(CLI::Range(16, 4096))->capture_default_str();
  g->add_option("--channels", gen.channels)->check(CLI::IsMember({1, 3}))->capture_default_str();

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "Time repeated synthesis on a generated scene");
  b->add_option("--size", bench.size, "WxH")->capture_default_str();
  b->add_option("--iters", bench.iters, "Repetitions")->capture_default_str();
  b->add_option("--seed", bench.seed, "Scene seed (UNIVIP_SEED overrides)")->capture_default_str();
  b->add_option("--t", bench.t, "Target time")->capture_default_str();
  b->add_option("--report", bench.report, "Report path");
  add_estimator_options(b, bench.est, false, "--est-iters");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << '\n';
    return kOk;
  } catch (const CLI::ParseError& pe) {
    nlohmann::ordered_json j{{"error", "invalid-arguments"}, {"exit", kInvalidArguments},
                             {"message", pe.what()}};
    err << j.dump() << '\n';
    return kInvalidArguments;
  }

  try {
    if (*s) return cmd_synth(synth, out);
    if (*w) return cmd_sweep(sweep, out);
    if (*e) return cmd_eval(eval, out);
    if (*g) return cmd_gen_scenes(gen, out);
    if (*b) return cmd_bench(bench, out);
  } catch (const CommandError& ce) {
    nlohmann::ordered_json j{{"error", ce.kind}, {"exit", ce.code}, {"message", ce.message}};
    err << j.dump() << '\n';
    return ce.code;
  } catch (const std::exception& ex) {
    nlohmann::ordered_json j{{"error", "internal"}, {"exit", kEngineError}, {"message", ex.what()}};
    err << j.dump() << '\n';
    return kEngineError;
  }
  return kInvalidArguments;
}

}  // namespace univip::cli
