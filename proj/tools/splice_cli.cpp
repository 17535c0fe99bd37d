// Copyright 2026 The SPLICE Authors. All Rights Reserved.
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

// splice: command-line front end over the libsplice C interface.

#include <CLI11.hpp>

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "splice/parallel.hpp"
#include "splice/splice_c.h"

namespace {

namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

// Raised for failures reported by the library or by file handling.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void check(splice_status status, const std::string& context) {
  if (status == SPLICE_OK) return;
  throw DataError(context + ": " + splice_last_error());
}

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};

using Pyramid = std::unique_ptr<splice_pyramid, Deleter<splice_pyramid, splice_pyramid_free>>;
using Selection =
    std::unique_ptr<splice_selection, Deleter<splice_selection, splice_selection_free>>;
using Features = std::unique_ptr<splice_features, Deleter<splice_features, splice_features_free>>;
using ManifestPtr =
    std::unique_ptr<splice_manifest, Deleter<splice_manifest, splice_manifest_free>>;
using ArchivePtr = std::unique_ptr<splice_archive, Deleter<splice_archive, splice_archive_free>>;
using Report = std::unique_ptr<splice_report, Deleter<splice_report, splice_report_free>>;

std::string take_string(char* s) {
  std::string out(s != nullptr ? s : "");
  splice_string_free(s);
  return out;
}

std::string fmt(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, r.ptr);
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw DataError("cannot write " + path.string());
}

// All tunables live on the top-level app so config files use flat keys and
// flags may appear before or after the subcommand name.
struct Settings {
  uint64_t seed = 0;
  unsigned jobs = 0;
  bool verbose = false;
  splice_options opts{};

  // slide selection
  std::string manifest;
  std::string image;
  std::string id;
  double base_mag = 20.0;
};

ManifestPtr open_manifest(const std::string& path) {
  splice_manifest* m = nullptr;
  check(splice_manifest_load(path.c_str(), &m), "manifest " + path);
  return ManifestPtr(m);
}

struct SlideRef {
  std::string path;
  std::string id;
  std::string label;
  double base_mag = 0.0;
};

std::vector<SlideRef> manifest_rows(const splice_manifest* m) {
  std::vector<SlideRef> rows;
  for (size_t i = 0; i < splice_manifest_size(m); ++i) {
    splice_manifest_row row{};
    check(splice_manifest_row_at(m, i, &row), "manifest");
    rows.push_back({row.path, row.id, row.label, row.base_magnification});
  }
  return rows;
}

// Slides named by --image or by --manifest (optionally narrowed with --id).
std::vector<SlideRef> resolve_slides(const Settings& s) {
  if (!s.image.empty()) {
    return {{s.image, s.id.empty() ? fs::path(s.image).stem().string() : s.id, "",
             s.base_mag}};
  }
  if (s.manifest.empty()) throw CLI::ValidationError("one of --image or --manifest is required");
  const auto m = open_manifest(s.manifest);
  auto rows = manifest_rows(m.get());
  if (s.id.empty()) return rows;
  for (const auto& row : rows) {
    if (row.id == s.id) return {row};
  }
  throw DataError("slide '" + s.id + "' is not in " + s.manifest);
}

Pyramid load_slide(const SlideRef& slide) {
  splice_pyramid* p = nullptr;
  check(splice_pyramid_load(slide.path.c_str(), slide.id.c_str(), slide.base_mag, &p),
        slide.path);
  return Pyramid(p);
}

splice_method method_of(const std::string& name) {
  if (name == "splice") return SPLICE_METHOD_SPLICE;
  if (name == "mosaic") return SPLICE_METHOD_MOSAIC;
  return SPLICE_METHOD_LATTICE;
}

// Writes one selection JSON per slide: to `out` for a single slide, or to
// `out_dir`/<id>.json.
void run_selection(const Settings& s, splice_method method, const std::string& out,
                   const std::string& out_dir) {
  const auto slides = resolve_slides(s);
  if (slides.size() > 1 && out_dir.empty()) {
    throw CLI::ValidationError("several slides selected: use --out-dir");
  }
  if (slides.size() == 1 && out.empty() && out_dir.empty()) {
    throw CLI::ValidationError("--out or --out-dir is required");
  }
  std::vector<std::string> summaries(slides.size());
  std::vector<std::string> errors(slides.size());
  splice::parallel_for(slides.size(), s.jobs, [&](size_t i) {
    try {
      const auto pyramid = load_slide(slides[i]);
      splice_selection* raw = nullptr;
      check(splice_select(pyramid.get(), method, &s.opts, &raw), slides[i].id);
      const Selection sel(raw);
      const fs::path target =
          out_dir.empty() ? fs::path(out) : fs::path(out_dir) / (slides[i].id + ".json");
      if (target.has_parent_path()) fs::create_directories(target.parent_path());
      check(splice_selection_save_json(sel.get(), target.string().c_str()), target.string());
      summaries[i] = slides[i].id + "," + std::to_string(splice_selection_tissue_count(sel.get())) +
                     "," + std::to_string(splice_selection_size(sel.get()));
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  });
  for (const auto& e : errors) {
    if (!e.empty()) throw DataError(e);
  }
  std::cout << "wsi_id,tissue_patches,selected_patches\n";
  for (const auto& line : summaries) std::cout << line << "\n";
}

// Embeds every slide of the manifest in manifest order. Selections come from
// `selections_dir` when given, otherwise they are computed with `method`.
Features embed_manifest(const Settings& s, const splice_manifest* manifest,
                        splice_method method, const std::string& selections_dir) {
  const auto slides = manifest_rows(manifest);
  std::vector<Features> parts(slides.size());
  std::vector<std::string> errors(slides.size());
  splice::parallel_for(slides.size(), s.jobs, [&](size_t i) {
    try {
      const auto pyramid = load_slide(slides[i]);
      splice_selection* raw = nullptr;
      if (selections_dir.empty()) {
        check(splice_select(pyramid.get(), method, &s.opts, &raw), slides[i].id);
      } else {
        const auto path = (fs::path(selections_dir) / (slides[i].id + ".json")).string();
        check(splice_selection_load_json(path.c_str(), &raw), path);
      }
      const Selection sel(raw);
      splice_features* f = nullptr;
      check(splice_features_create(&f), "features");
      parts[i].reset(f);
      check(splice_features_embed(f, pyramid.get(), sel.get(), &s.opts), slides[i].id);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  });
  for (const auto& e : errors) {
    if (!e.empty()) throw DataError(e);
  }
  splice_features* all = nullptr;
  check(splice_features_create(&all), "features");
  Features out(all);
  for (const auto& part : parts) check(splice_features_append(all, part.get()), "features");
  return out;
}

Features load_features(const std::string& path) {
  splice_features* f = nullptr;
  check(splice_features_load_csv(path.c_str(), &f), "features");
  return Features(f);
}

ArchivePtr build_index(const splice_features* features, const splice_manifest* manifest) {
  splice_archive* a = nullptr;
  check(splice_archive_build(features, manifest, &a), "index");
  return ArchivePtr(a);
}

std::vector<uint32_t> parse_tops(const std::string& text) {
  std::vector<uint32_t> out;
  for (const auto& part : CLI::detail::split(text, ',')) {
    uint32_t v = 0;
    const auto r = std::from_chars(part.data(), part.data() + part.size(), v);
    if (r.ec != std::errc() || r.ptr != part.data() + part.size() || v == 0) {
      throw CLI::ValidationError("--top", "expected positive integers separated by commas");
    }
    out.push_back(v);
  }
  if (out.empty()) throw CLI::ValidationError("--top", "at least one value is required");
  return out;
}

std::vector<double> parse_percentiles(const std::string& text) {
  std::vector<double> out;
  for (const auto& part : CLI::detail::split(text, ',')) {
    double v = 0;
    const auto r = std::from_chars(part.data(), part.data() + part.size(), v);
    if (r.ec != std::errc() || r.ptr != part.data() + part.size()) {
      throw CLI::ValidationError("--percentiles", "expected numbers separated by commas");
    }
    out.push_back(v);
  }
  return out;
}

// Accepts numbers in (lo, hi), or (lo, hi] when hi_closed is set.
CLI::Validator open_range(double lo, double hi, bool hi_closed = false) {
  const std::string text = "(" + fmt(lo) + ", " + fmt(hi) + (hi_closed ? "]" : ")");
  return CLI::Validator(
      [=](std::string& in) -> std::string {
        double v = 0.0;
        const auto r = std::from_chars(in.data(), in.data() + in.size(), v);
        const bool ok = r.ec == std::errc() && r.ptr == in.data() + in.size() && v > lo &&
                        (hi_closed ? v <= hi : v < hi);
        return ok ? std::string() : "value " + in + " not in " + text;
      },
      text);
}

void add_pipeline_options(CLI::App& app, Settings& s) {
  const char* group = "Pipeline";
  auto& o = s.opts;
  const auto unit = CLI::Range(0.0, 1.0);
  const auto positive = CLI::PositiveNumber;
  app.add_option("--saturation-min", o.saturation_min, "Minimum HSV saturation of tissue")
      ->group(group)->capture_default_str()->check(unit);
  app.add_option("--value-max", o.value_max, "Maximum HSV value of tissue")
      ->group(group)->capture_default_str()->check(unit);
  app.add_option("--min-tissue", o.min_tissue_fraction, "Minimum tissue fraction of a patch")
      ->group(group)->capture_default_str()->check(unit);
  app.add_option("--percentile", o.percentile_k, "Collage exclusion percentile k in (0,100)")
      ->group(group)->capture_default_str()->check(open_range(0.0, 100.0));
  app.add_option("--patch-size", o.patch_size, "Patch edge in pixels at the selection level")
      ->group(group)->capture_default_str()->check(positive);
  app.add_option("--magnification", o.magnification, "Selection magnification")
      ->group(group)->capture_default_str()->check(positive);
  app.add_option("--bins", o.bins_per_channel, "Color histogram bins per channel")
      ->group(group)->capture_default_str()->check(positive);
  app.add_option("--color-k", o.color_k, "Mosaic color clusters")
      ->group(group)->capture_default_str()->check(positive);
  app.add_option("--fraction", o.select_fraction, "Mosaic spatial selection fraction")
      ->group(group)->capture_default_str()->check(open_range(0.0, 1.0, true));
  app.add_option("--kmeans-iters", o.max_iters, "Mosaic k-means iteration cap")
      ->group(group)->capture_default_str()->check(positive);
  app.add_option("--embed-mag", o.embed_magnification,
                 "Embedding magnification (0 = base level)")
      ->group(group)->capture_default_str()->check(CLI::NonNegativeNumber);
}

void add_slide_options(CLI::App& app, Settings& s) {
  app.add_option("--manifest", s.manifest, "Manifest CSV (path,id,label,base_magnification)");
  app.add_option("--image", s.image, "Single PNG/TIFF image instead of a manifest");
  app.add_option("--id", s.id, "Slide id (manifest filter, or id for --image)");
  app.add_option("--base-mag", s.base_mag, "Base magnification of --image")
      ->capture_default_str();
}

int run(int argc, char** argv) {
  Settings s;
  splice_options_default(&s.opts);

  CLI::App app{"SPLICE collage selection, barcode indexing and retrieval evaluation", "splice"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_config("--config", "", "Config file of key = value lines (CLI flags take precedence)");
  app.set_version_flag("--version", std::string(splice_version()));
  app.add_option("--seed", s.seed, "Seed for every random choice")->capture_default_str();
  app.add_option("--jobs", s.jobs, "Worker threads (0 = all cores)")->capture_default_str();
  app.add_flag("-v,--verbose", s.verbose, "Print the effective configuration");
  add_pipeline_options(app, s);

  // synth generate
  auto* synth = app.add_subcommand("synth", "Synthetic corpus tools");
  synth->require_subcommand(1);
  auto* synth_gen = synth->add_subcommand("generate", "Write a seeded synthetic corpus");
  splice_synth_options synth_opts{3, 12, 1536, 0, 2.5};
  std::string synth_out;
  synth_gen->add_option("--out", synth_out, "Output directory")->required();
  synth_gen->add_option("--classes", synth_opts.classes, "Number of classes (1-5)")
      ->capture_default_str();
  synth_gen->add_option("--per-class", synth_opts.per_class, "Images per class")
      ->capture_default_str();
  synth_gen->add_option("--size", synth_opts.image_size, "Image edge in pixels")
      ->capture_default_str();
  synth_gen->add_option("--base-mag", synth_opts.base_magnification,
                        "Magnification recorded in the manifest")
      ->capture_default_str();

  // segment
  auto* segment = app.add_subcommand("segment", "Segment tissue and report the patch lattice");
  add_slide_options(*segment, s);
  std::string mask_out;
  segment->add_option("--mask", mask_out, "Write the mask PNG here (single slide) or into DIR");

  // splice / mosaic
  std::string sel_out;
  std::string sel_out_dir;
  auto* splice_cmd = app.add_subcommand("splice", "Select a collage per slide");
  auto* mosaic_cmd = app.add_subcommand("mosaic", "Select a mosaic per slide");
  for (auto* cmd : {splice_cmd, mosaic_cmd}) {
    add_slide_options(*cmd, s);
    cmd->add_option("--out", sel_out, "Output JSON for a single slide");
    cmd->add_option("--out-dir", sel_out_dir, "Directory receiving <id>.json per slide");
  }

  // embed
  auto* embed = app.add_subcommand("embed", "Embed selected patches into a feature CSV");
  std::string embed_method = "histogram";
  std::string embed_select = "splice";
  std::string features_in;
  std::string selections_dir;
  std::string features_out;
  embed->add_option("--method", embed_method, "histogram or external")
      ->check(CLI::IsMember({"histogram", "external"}))->capture_default_str();
  embed->add_option("--features", features_in, "External feature CSV (--method external)");
  embed->add_option("--select", embed_select, "Patch selection: splice, mosaic or lattice")
      ->check(CLI::IsMember({"splice", "mosaic", "lattice"}))->capture_default_str();
  embed->add_option("--selections", selections_dir, "Directory of <id>.json selections");
  embed->add_option("--manifest", s.manifest, "Manifest CSV");
  embed->add_option("--out", features_out, "Output feature CSV")->required();

  // index build
  auto* index = app.add_subcommand("index", "Barcode archive tools");
  index->require_subcommand(1);
  auto* index_build = index->add_subcommand("build", "Binarize features into an archive");
  std::string archive_path;
  index_build->add_option("--features", features_in, "Feature CSV")->required();
  index_build->add_option("--manifest", s.manifest, "Manifest supplying labels")->required();
  index_build->add_option("--out", archive_path, "Output archive")->required();

  // search
  auto* search = app.add_subcommand("search", "Rank archive slides against a member slide");
  std::string query;
  size_t top = 5;
  bool include_self = false;
  search->add_option("--index", archive_path, "Archive file")->required();
  search->add_option("--query", query, "Query slide id")->required();
  search->add_option("--top", top, "Number of results")->capture_default_str();
  search->add_flag("--include-self", include_self, "Keep the query in the results");

  // eval loo / eval curve
  auto* eval = app.add_subcommand("eval", "Evaluation");
  eval->require_subcommand(1);
  auto* loo = eval->add_subcommand("loo", "Leave-one-out majority-vote retrieval evaluation");
  std::string loo_method = "splice";
  std::string tops_text = "1,3,5";
  std::string report_out;
  std::string csv_out;
  unsigned timing = 0;
  bool fallback = false;
  loo->add_option("--method", loo_method, "splice, mosaic or lattice")
      ->check(CLI::IsMember({"splice", "mosaic", "lattice"}))->capture_default_str();
  loo->add_option("--top", tops_text, "Comma-separated n values for MV@n")
      ->capture_default_str();
  loo->add_option("--manifest", s.manifest, "Manifest CSV")->required();
  loo->add_option("--features", features_in, "Use this feature CSV instead of embedding");
  loo->add_option("--index", archive_path, "Use this archive instead of embedding");
  loo->add_option("--report", report_out, "Report JSON")->required();
  loo->add_option("--csv", csv_out, "Report CSV");
  loo->add_option("--timing", timing, "Timed search sweeps (0 = no timing)")
      ->capture_default_str();
  loo->add_flag("--fallback-top1", fallback, "Predict the top-1 label instead of abstaining");

  auto* curve = eval->add_subcommand("curve", "Collage size across percentiles");
  std::string percentiles_text = "10,20,30,40,50";
  std::string curve_out;
  curve->add_option("--manifest", s.manifest, "Manifest CSV")->required();
  curve->add_option("--percentiles", percentiles_text, "Comma-separated percentiles")
      ->capture_default_str();
  curve->add_option("--out", curve_out, "Output CSV")->required();

  if (argc <= 1) {
    std::cerr << app.help();
    return kExitUsage;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  s.opts.seed = s.seed;
  synth_opts.seed = s.seed;
  if (s.verbose) {
    std::cerr << "# effective configuration\n" << app.config_to_str(true, false);
  }

  try {
    if (synth_gen->parsed()) {
      check(splice_synth_generate(&synth_opts, synth_out.c_str(), s.jobs), "synth");
      std::cout << "wrote " << synth_opts.classes * synth_opts.per_class << " images and "
                << (fs::path(synth_out) / "manifest.csv").string() << "\n";
    } else if (segment->parsed()) {
      const auto slides = resolve_slides(s);
      std::cout << "wsi_id,level_factor,tissue_fraction,tissue_patches\n";
      for (const auto& slide : slides) {
        const auto pyramid = load_slide(slide);
        std::string mask;
        if (!mask_out.empty()) {
          const fs::path target = slides.size() == 1 && fs::path(mask_out).has_extension()
                                      ? fs::path(mask_out)
                                      : fs::path(mask_out) / (slide.id + "_mask.png");
          if (target.has_parent_path()) fs::create_directories(target.parent_path());
          mask = target.string();
        }
        uint32_t factor = 0;
        double fraction = 0.0;
        size_t patches = 0;
        check(splice_segment(pyramid.get(), &s.opts, mask.empty() ? nullptr : mask.c_str(),
                             &factor, &fraction, &patches),
              slide.id);
        std::cout << slide.id << "," << factor << "," << fmt(fraction) << "," << patches << "\n";
      }
    } else if (splice_cmd->parsed()) {
      run_selection(s, SPLICE_METHOD_SPLICE, sel_out, sel_out_dir);
    } else if (mosaic_cmd->parsed()) {
      run_selection(s, SPLICE_METHOD_MOSAIC, sel_out, sel_out_dir);
    } else if (embed->parsed()) {
      Features features;
      if (embed_method == "external") {
        if (features_in.empty()) throw CLI::ValidationError("--method external needs --features");
        features = load_features(features_in);
      } else {
        if (s.manifest.empty()) throw CLI::ValidationError("--method histogram needs --manifest");
        const auto manifest = open_manifest(s.manifest);
        features = embed_manifest(s, manifest.get(), method_of(embed_select), selections_dir);
      }
      check(splice_features_save_csv(features.get(), features_out.c_str()), features_out);
      std::cout << "wrote " << splice_features_count(features.get()) << " vectors of dimension "
                << splice_features_dim(features.get()) << "\n";
    } else if (index_build->parsed()) {
      const auto manifest = open_manifest(s.manifest);
      const auto features = load_features(features_in);
      const auto archive = build_index(features.get(), manifest.get());
      check(splice_archive_save(archive.get(), archive_path.c_str()), archive_path);
      std::cout << "indexed " << splice_archive_set_count(archive.get()) << " slides, "
                << splice_archive_bits(archive.get()) << " bits per barcode\n";
    } else if (search->parsed()) {
      splice_archive* raw = nullptr;
      check(splice_archive_load(archive_path.c_str(), &raw), archive_path);
      const ArchivePtr archive(raw);
      std::vector<splice_hit> hits(top);
      size_t count = 0;
      check(splice_search(archive.get(), query.c_str(), top, include_self ? 0 : 1, s.jobs,
                          hits.data(), hits.size(), &count),
            "search");
      std::cout << "rank,wsi_id,label,distance\n";
      for (size_t i = 0; i < count && i < hits.size(); ++i) {
        std::cout << i + 1 << "," << hits[i].wsi_id << "," << hits[i].label << ","
                  << fmt(hits[i].distance) << "\n";
      }
    } else if (loo->parsed()) {
      const auto tops = parse_tops(tops_text);
      const auto manifest = open_manifest(s.manifest);
      ArchivePtr archive;
      size_t dim = 0;
      std::string embedder = "histogram";
      if (!archive_path.empty()) {
        splice_archive* raw = nullptr;
        check(splice_archive_load(archive_path.c_str(), &raw), archive_path);
        archive.reset(raw);
        dim = splice_archive_bits(raw) + 1;
        embedder = "archive";
      } else {
        const Features features = features_in.empty()
                                      ? embed_manifest(s, manifest.get(), method_of(loo_method), "")
                                      : load_features(features_in);
        if (!features_in.empty()) embedder = "external";
        dim = splice_features_dim(features.get());
        archive = build_index(features.get(), manifest.get());
      }
      splice_eval_options eo{tops.data(), tops.size(), fallback ? 1 : 0, timing, s.jobs,
                             loo_method.c_str(), dim};
      splice_report* raw_report = nullptr;
      check(splice_eval_loo(archive.get(), &eo, &raw_report), "eval");
      const Report report(raw_report);
      const auto set = [&](const char* k, const std::string& v) {
        check(splice_report_set_param(report.get(), k, v.c_str()), "report");
      };
      set("embedder", embedder);
      set("seed", std::to_string(s.seed));
      if (loo_method == "splice") set("percentile", fmt(s.opts.percentile_k));
      if (loo_method == "mosaic") {
        set("color_k", std::to_string(s.opts.color_k));
        set("fraction", fmt(s.opts.select_fraction));
      }
      write_file(report_out, take_string([&] {
                   char* out = nullptr;
                   check(splice_report_to_json(report.get(), &out), "report");
                   return out;
                 }()));
      if (!csv_out.empty()) {
        char* out = nullptr;
        check(splice_report_to_csv(report.get(), &out), "report");
        write_file(csv_out, take_string(out));
      }
      std::cout << "n,accuracy,macro_f1,abstained\n";
      for (uint32_t n : tops) {
        splice_metrics m{};
        check(splice_report_metrics(report.get(), n, &m), "report");
        std::cout << n << "," << fmt(m.accuracy) << "," << fmt(m.macro_f1) << "," << m.abstained
                  << "\n";
      }
    } else if (curve->parsed()) {
      const auto ks = parse_percentiles(percentiles_text);
      const auto manifest = open_manifest(s.manifest);
      char* out = nullptr;
      check(splice_percentile_curve(manifest.get(), ks.data(), ks.size(), &s.opts, s.jobs, &out),
            "curve");
      write_file(curve_out, take_string(out));
      std::cout << "wrote " << curve_out << "\n";
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
