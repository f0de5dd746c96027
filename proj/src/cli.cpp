// Copyright 2026 The artic Authors
// SPDX-License-Identifier: Apache-2.0

#include "artic/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "artic/classifier.hpp"
#include "artic/error.hpp"
#include "artic/io/arrows.hpp"
#include "artic/io/manifest.hpp"
#include "artic/io/ply.hpp"
#include "artic/io/png_image.hpp"
#include "artic/io/report.hpp"
#include "artic/io/scene_config.hpp"
#include "artic/parallel.hpp"
#include "artic/preprocess.hpp"
#include "artic/synthetic.hpp"

namespace artic {
namespace {

namespace fs = std::filesystem;

// A flag bound to one field of RunParameters. Explicit flags override values
// loaded with --params.
struct Binding {
  CLI::Option* option;
  std::function<void(RunParameters& dst, const RunParameters& src)> copy;
};

// "auto" or a number, for parameters with an automatic default.
struct AutoValue {
  std::string text = "auto";
  std::function<std::optional<double>&(RunParameters&)> field;
};

class ParamFlags {
 public:
  void add_all(CLI::App* app, bool with_preprocess) {
    if (with_preprocess) {
      scalar(app, "--std-ratio", &RunParameters::preprocess, &PreprocessParams::std_ratio,
             "outlier filter standard-deviation multiplier s");
      scalar(app, "--neighbor-fraction", &RunParameters::preprocess, &PreprocessParams::neighbor_fraction,
             "outlier filter neighbour count as a fraction of the cloud size");
      scalar(app, "--max-neighbors", &RunParameters::preprocess, &PreprocessParams::max_neighbors,
             "cap on the outlier filter neighbour count (0 = none)");
      automatic(app, "--downsample-voxel", [](RunParameters& p) -> std::optional<double>& {
        return p.preprocess.voxel_size;
      }, "downsampling voxel edge v in metres, or auto (diagonal / 20)");
      automatic(app, "--smoothing-radius", [](RunParameters& p) -> std::optional<double>& {
        return p.preprocess.smoothing_radius;
      }, "mean smoothing radius r in metres, or auto (5 v)");
    }
    automatic(app, "--voxel-size", [](RunParameters& p) -> std::optional<double>& {
      return p.classifier.voxel_size;
    }, "classifier region edge x in metres, or auto (merged diagonal / 5)");
    scalar(app, "--quaternion-bin", &RunParameters::classifier, &ClassifierParams::quaternion_bin,
           "quaternion quantisation width");
    scalar(app, "--translation-bin", &RunParameters::classifier, &ClassifierParams::translation_bin,
           "translation quantisation width in metres");
    scalar(app, "--frame-skip", &RunParameters::classifier, &ClassifierParams::frame_skip,
           "frame gap k inside a pair");
    scalar(app, "--pair-stride", &RunParameters::classifier, &ClassifierParams::pair_stride,
           "advance between pairs (0 = k)");
    scalar(app, "--alpha", &RunParameters::classifier, &ClassifierParams::alpha,
           "minimum fraction of regions that must register");
    scalar(app, "--confidence", &RunParameters::classifier, &ClassifierParams::confidence_min,
           "minimum ICP fitness of a kept registration");
    scalar(app, "--window", &RunParameters::classifier, &ClassifierParams::window,
           "mode filter window (odd)");
    scalar(app, "--still-displacement", &RunParameters::classifier, &ClassifierParams::still_displacement,
           "local motions moving no point farther than this (metres) count as no motion; 0 disables");
    scalar(app, "--icp-iterations", &RunParameters::icp, &IcpParams::max_iterations,
           "ICP iteration cap");
    scalar(app, "--icp-eps", &RunParameters::icp, &IcpParams::convergence_eps,
           "ICP convergence threshold on the RMSE change, metres");
    automatic(app, "--max-correspondence", [](RunParameters& p) -> std::optional<double>& {
      return p.icp.max_correspondence_distance;
    }, "ICP correspondence distance in metres, or auto (x / 2)");
    scalar(app, "--min-pairs", &RunParameters::icp, &IcpParams::min_pair_count,
           "minimum ICP correspondences");
  }

  // Base parameters overlaid with every flag given on the command line.
  RunParameters resolve(const RunParameters& base) {
    RunParameters out = base;
    for (auto& a : autos_) {
      if (a.first->count() == 0) continue;
      auto& value = *a.second;
      if (value.text == "auto") {
        value.field(out).reset();
      } else {
        try {
          std::size_t used = 0;
          const double v = std::stod(value.text, &used);
          if (used != value.text.size()) throw std::invalid_argument(value.text);
          value.field(out) = v;
        } catch (const std::exception&) {
          throw CLI::ValidationError(a.first->get_name(), "expected a number or 'auto'");
        }
      }
    }
    for (const auto& b : bindings_) {
      if (b.option->count() > 0) b.copy(out, flags_);
    }
    return out;
  }

 private:
  template <typename Group, typename T>
  void scalar(CLI::App* app, const std::string& name, Group RunParameters::*group,
              T Group::*field, const std::string& help) {
    T& target = flags_.*group.*field;
    CLI::Option* opt = app->add_option(name, target, help)->capture_default_str();
    bindings_.push_back({opt, [group, field](RunParameters& dst, const RunParameters& src) {
                           dst.*group.*field = src.*group.*field;
                         }});
  }

  void automatic(CLI::App* app, const std::string& name,
                 std::function<std::optional<double>&(RunParameters&)> field, const std::string& help) {
    auto value = std::make_unique<AutoValue>();
    value->field = std::move(field);
    CLI::Option* opt = app->add_option(name, value->text, help)->capture_default_str();
    autos_.emplace_back(opt, std::move(value));
  }

  RunParameters flags_;
  std::vector<Binding> bindings_;
  std::vector<std::pair<CLI::Option*, std::unique_ptr<AutoValue>>> autos_;
};

std::string frame_name(int index, const char* ext) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%06d%s", index, ext);
  return buf;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIoError, "cli", "cannot create " + dir.string() + ": " + ec.message());
}

std::vector<fs::path> ply_files(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw Error(ErrorCode::kMissingFile, "cli", "not a directory: " + dir.string());
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".ply") out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool skippable(const Error& e) {
  return e.code() == ErrorCode::kFrameSkipped || e.code() == ErrorCode::kTooFewPoints ||
         e.code() == ErrorCode::kEmptyCloud;
}

// Loads and preprocesses the input frames in parallel; frames that come out
// empty are recorded as skipped.
void load_frames(const std::optional<fs::path>& manifest_path, const std::optional<fs::path>& ply_dir,
                 const RunParameters& params, std::vector<IndexedCloud>& frames,
                 std::vector<SkippedFrame>& skipped) {
  struct Slot {
    IndexedCloud frame;
    std::optional<std::string> skip;
  };
  std::vector<Slot> slots;
  if (manifest_path) {
    const SequenceManifest m = read_manifest(*manifest_path);
    slots.resize(m.frames.size());
    parallel_for(m.frames.size(), [&](std::size_t i) {
      slots[i].frame.index = m.frames[i].index;
      try {
        slots[i].frame.cloud = preprocess_frame(load_frame(m, i), params.preprocess).cloud;
      } catch (const Error& e) {
        if (!skippable(e)) throw;
        slots[i].skip = e.what();
      }
    });
  } else {
    const auto files = ply_files(*ply_dir);
    slots.resize(files.size());
    parallel_for(files.size(), [&](std::size_t i) {
      slots[i].frame.index = static_cast<int>(i);
      try {
        PointCloud cloud = read_ply(files[i]);
        if (cloud.empty()) throw Error(ErrorCode::kFrameSkipped, "cli", files[i].string() + " has no points");
        slots[i].frame.cloud =
            params.preprocess_ply ? preprocess_cloud(cloud, params.preprocess).cloud : std::move(cloud);
      } catch (const Error& e) {
        if (!skippable(e)) throw;
        slots[i].skip = e.what();
      }
    });
  }
  for (auto& s : slots) {
    if (s.skip) {
      skipped.push_back({s.frame.index, *s.skip});
    } else {
      frames.push_back(std::move(s.frame));
    }
  }
}

void set_threads(int threads) {
  if (threads > 0) ::setenv("ARTIC_THREADS", std::to_string(threads).c_str(), 1);
}

RunParameters base_parameters(const std::string& params_file) {
  if (params_file.empty()) return RunParameters{};
  const Json doc = read_json(params_file);
  return run_parameters_from_json(doc.contains("parameters") ? doc.at("parameters") : doc);
}

int cmd_classify(const std::string& manifest, const std::string& ply_dir, const std::string& out,
                 const std::string& arrows_dir, const RunParameters& params) {
  const auto start = std::chrono::steady_clock::now();
  params.preprocess.validate();
  params.classifier.validate();

  ClassificationReport report;
  report.parameters = params;
  report.input = manifest.empty() ? ply_dir : manifest;
  std::vector<IndexedCloud> frames;
  load_frames(manifest.empty() ? std::nullopt : std::optional<fs::path>(manifest),
              ply_dir.empty() ? std::nullopt : std::optional<fs::path>(ply_dir), params, frames,
              report.frames_skipped);
  for (const auto& f : frames) report.frames_used.push_back(f.index);
  for (const auto& s : report.frames_skipped) std::cerr << "skipped frame " << s.index << ": " << s.reason << "\n";

  report.verdict = classify_sequence(frames, params.classifier, params.icp);
  if (!arrows_dir.empty()) {
    ensure_dir(arrows_dir);
    for (const auto& d : report.verdict.decisions) {
      export_arrows(arrow_field(d), fs::path(arrows_dir) / ("arrows_" + frame_name(d.first, "") + "_" +
                                                            frame_name(d.second, ".ply")));
    }
  }
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (report.verdict.no_reliable_pairs) std::cerr << "warning: no reliable frame pairs\n";
  write_json(to_json(report), out);
  std::cout << to_string(report.verdict.label) << "\n";
  return 0;
}

int cmd_synth(const std::string& preset, const std::string& spec_path, const std::string& out_dir,
              CLI::App* sub, std::uint64_t seed, int frames, double noise, std::size_t points,
              int width, int height) {
  SceneSpec spec;
  if (!spec_path.empty()) {
    spec = read_scene(spec_path);
    if (sub->count("--seed") > 0) spec.seed = seed;
    if (sub->count("--frames") > 0) spec.frame_count = frames;
    if (sub->count("--noise") > 0) spec.noise_sigma = noise;
  } else {
    spec = preset_scene(preset, seed, frames, noise, points);
  }
  const SyntheticSequence seq = generate_sequence(spec);
  const fs::path root(out_dir);
  ensure_dir(root / "clouds");
  ensure_dir(root / "depth");
  ensure_dir(root / "mask");
  write_json(scene_to_json(spec), root / "scene.json");

  SequenceManifest manifest;
  manifest.intrinsics = default_intrinsics();
  manifest.depth_scale = 0.001;
  Json truth = Json::array();
  for (std::size_t f = 0; f < seq.frames.size(); ++f) {
    const int index = static_cast<int>(f);
    write_ply(seq.frames[f], root / "clouds" / ("frame_" + frame_name(index, ".ply")));
    const DepthFrame depth = render_depth(seq.frames[f], manifest.intrinsics, width, height);
    const fs::path depth_rel = fs::path("depth") / frame_name(index, ".png");
    const fs::path mask_rel = fs::path("mask") / frame_name(index, ".png");
    write_png16(encode_depth(depth, manifest.depth_scale), root / depth_rel);
    write_png8(encode_mask(depth), root / mask_rel);
    manifest.frames.push_back({index, depth_rel, mask_rel});
    Json parts = Json::array();
    for (const auto& t : seq.truth[f]) {
      const auto& q = t.rotation();
      parts.push_back({{"rotation", {q.w(), q.x(), q.y(), q.z()}},
                       {"translation", {t.translation().x(), t.translation().y(), t.translation().z()}}});
    }
    truth.push_back({{"index", index}, {"parts", parts}});
  }
  write_manifest(manifest, root / "manifest.json");
  write_json(truth, root / "truth.json");
  std::cout << (root / "manifest.json").string() << "\n";
  return 0;
}

int cmd_register(const std::string& a_path, const std::string& b_path, const std::string& out,
                 const std::string& arrows, bool preprocess, const RunParameters& params) {
  PointCloud a = read_ply(a_path);
  PointCloud b = read_ply(b_path);
  if (preprocess) {
    a = preprocess_cloud(a, params.preprocess).cloud;
    b = preprocess_cloud(b, params.preprocess).cloud;
  }
  FrameDecision d = classify_pair(a, b, params.classifier, params.icp);
  d.second = 1;
  Json doc = to_json(d);
  Json regs = Json::array();
  for (const auto& r : d.registrations.kept) {
    const auto& q = r.transform.rotation();
    regs.push_back({{"cell", r.cell},
                    {"rotation", {q.w(), q.x(), q.y(), q.z()}},
                    {"translation", {r.transform.translation().x(), r.transform.translation().y(),
                                     r.transform.translation().z()}},
                    {"centroid", {r.centroid_a.x(), r.centroid_a.y(), r.centroid_a.z()}},
                    {"angle", r.transform.angle()},
                    {"displacement", r.displacement},
                    {"fitness", r.fitness},
                    {"rmse", r.rmse},
                    {"matched_pairs", r.matched_pairs}});
  }
  doc["registrations"] = regs;
  doc["parameters"] = to_json(params);
  if (!arrows.empty()) export_arrows(arrow_field(d), arrows);
  if (out.empty()) {
    std::cout << doc.dump(2) << "\n";
  } else {
    write_json(doc, out);
    std::cout << to_string(d.label) << "\n";
  }
  return 0;
}

int cmd_inspect(const std::string& input, const std::string& out, const RunParameters& params) {
  PointCloud cloud;
  Json doc;
  if (fs::path(input).extension() == ".json") {
    const SequenceManifest m = read_manifest(input);
    if (m.frames.empty()) throw Error(ErrorCode::kInsufficientFrames, "cli", input + " lists no frames");
    cloud = backproject(load_frame(m, 0));
    doc["input"] = input;
    doc["frame"] = m.frames.front().index;
  } else {
    cloud = read_ply(input);
    doc["input"] = input;
  }
  const double diagonal = aabb_diagonal(cloud);
  const double v = params.preprocess.voxel_size.value_or(diagonal / 20.0);
  const double x = params.classifier.voxel_size.value_or(diagonal / 5.0);
  doc["points"] = cloud.size();
  doc["diagonal"] = diagonal;
  doc["outlier_neighbors"] = outlier_neighbor_count(cloud.size(), params.preprocess.neighbor_fraction,
                                                    params.preprocess.max_neighbors);
  doc["downsample_voxel"] = v;
  doc["smoothing_radius"] = params.preprocess.smoothing_radius.value_or(5.0 * v);
  doc["region_voxel"] = x;
  doc["max_correspondence"] = params.icp.max_correspondence_distance.value_or(x / 2.0);
  if (out.empty()) {
    std::cout << doc.dump(2) << "\n";
  } else {
    write_json(doc, out);
  }
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Articulated / rigid / static classification of object point-cloud sequences"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "worker threads (default: ARTIC_THREADS or all cores)");

  // classify
  auto* classify = app.add_subcommand("classify", "classify a depth+mask manifest or a PLY directory");
  std::string manifest, ply_dir, out, arrows_dir, params_file;
  bool no_preprocess = false;
  auto* m_opt = classify->add_option("--manifest", manifest, "sequence manifest (JSON)");
  auto* p_opt = classify->add_option("--ply-dir", ply_dir, "directory of per-frame object clouds");
  m_opt->excludes(p_opt);
  classify->add_option("--out", out, "report path")->required();
  classify->add_option("--arrows-dir", arrows_dir, "write one arrow PLY per frame pair here");
  classify->add_option("--params", params_file, "reuse the parameters of a report or parameter file");
  classify->add_flag("--no-preprocess", no_preprocess, "use PLY clouds as given");
  ParamFlags classify_flags;
  classify_flags.add_all(classify, true);

  // synth
  auto* synth = app.add_subcommand("synth", "generate a synthetic sequence with ground truth");
  std::string preset = "hinge", spec_path, out_dir;
  std::uint64_t seed = 0;
  int frames = 60, width = 640, height = 480;
  double noise = 0.002;
  std::size_t points = 2000;
  auto* preset_opt = synth->add_option("--preset", preset, "static, tumble, hinge or slider")
                         ->check(CLI::IsMember(preset_names()))
                         ->capture_default_str();
  synth->add_option("--spec", spec_path, "scene description (JSON)")->excludes(preset_opt);
  synth->add_option("--seed", seed, "random seed")->capture_default_str();
  synth->add_option("--frames", frames, "frame count")->capture_default_str();
  synth->add_option("--noise", noise, "Gaussian noise sigma in metres")->capture_default_str();
  synth->add_option("--points", points, "surface samples per frame (presets)")->capture_default_str();
  synth->add_option("--width", width, "depth image width")->capture_default_str();
  synth->add_option("--height", height, "depth image height")->capture_default_str();
  synth->add_option("--out-dir", out_dir, "output directory")->required();

  // register
  auto* reg = app.add_subcommand("register", "classify a single pair of clouds");
  std::string a_path, b_path, reg_out, reg_arrows;
  bool reg_preprocess = false;
  reg->add_option("a", a_path, "first cloud (PLY)")->required();
  reg->add_option("b", b_path, "second cloud (PLY)")->required();
  reg->add_option("--out", reg_out, "decision path (default: stdout)");
  reg->add_option("--arrows", reg_arrows, "arrow PLY path");
  reg->add_flag("--preprocess", reg_preprocess, "preprocess both clouds first");
  ParamFlags reg_flags;
  reg_flags.add_all(reg, true);

  // inspect
  auto* inspect = app.add_subcommand("inspect", "print the automatic parameters for an input");
  std::string inspect_in, inspect_out;
  inspect->add_option("input", inspect_in, "PLY cloud or manifest")->required();
  inspect->add_option("--out", inspect_out, "output path (default: stdout)");
  ParamFlags inspect_flags;
  inspect_flags.add_all(inspect, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  if (classify->parsed() && manifest.empty() && ply_dir.empty()) {
    std::cerr << "classify: one of --manifest or --ply-dir is required\n";
    return 2;
  }

  try {
    set_threads(threads);
    if (classify->parsed()) {
      RunParameters params = classify_flags.resolve(base_parameters(params_file));
      if (no_preprocess) params.preprocess_ply = false;
      return cmd_classify(manifest, ply_dir, out, arrows_dir, params);
    }
    if (synth->parsed()) {
      return cmd_synth(spec_path.empty() ? preset : "", spec_path, out_dir, synth, seed, frames, noise,
                       points, width, height);
    }
    if (reg->parsed()) {
      return cmd_register(a_path, b_path, reg_out, reg_arrows, reg_preprocess,
                          reg_flags.resolve(RunParameters{}));
    }
    return cmd_inspect(inspect_in, inspect_out, inspect_flags.resolve(RunParameters{}));
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

int run_cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace artic
