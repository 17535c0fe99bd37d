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

#include "splice/splice_c.h"

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <new>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "splice/barcode.hpp"
#include "splice/error.hpp"
#include "splice/evaluation.hpp"
#include "splice/image_io.hpp"
#include "splice/manifest.hpp"
#include "splice/pipeline.hpp"
#include "splice/selection_io.hpp"
#include "splice/synth.hpp"
#include "splice/text.hpp"

#ifndef SPLICE_VERSION_STRING
#define SPLICE_VERSION_STRING "0.0.0"
#endif

struct splice_pyramid {
  splice::ImagePyramid pyramid;
};

struct splice_selection {
  splice_method method = SPLICE_METHOD_LATTICE;
  std::string wsi_id;
  uint32_t tissue_count = 0;
  std::vector<splice::PatchRef> patches;
  std::optional<splice::Collage> collage;
  std::optional<splice::Mosaic> mosaic;
};

struct splice_features {
  std::vector<splice::FeatureVector> rows;
};

struct splice_manifest {
  splice::Manifest manifest;
  std::vector<std::string> resolved;
};

struct splice_archive {
  splice::Archive archive;
};

struct splice_report {
  splice::EvaluationReport report;
};

namespace {

thread_local std::string g_last_error;

splice_status fail(splice_status status, const char* message) {
  g_last_error = message;
  return status;
}

splice_status status_of(splice::ErrorCode code) {
  switch (code) {
    case splice::ErrorCode::kInvalidInput:
      return SPLICE_ERR_INVALID_INPUT;
    case splice::ErrorCode::kIo:
      return SPLICE_ERR_IO;
    case splice::ErrorCode::kFormat:
      return SPLICE_ERR_FORMAT;
    case splice::ErrorCode::kEmptyArchive:
      return SPLICE_ERR_EMPTY_ARCHIVE;
  }
  return SPLICE_ERR_INTERNAL;
}

template <typename Fn>
splice_status guard(Fn&& fn) noexcept {
  try {
    fn();
    return SPLICE_OK;
  } catch (const splice::Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return fail(SPLICE_ERR_IO, e.what());
  } catch (const std::bad_alloc&) {
    return fail(SPLICE_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SPLICE_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(SPLICE_ERR_INTERNAL, "unknown exception");
  }
}

void require(bool ok, const char* what) {
  if (!ok) splice::throw_invalid(std::string(what) + " must not be NULL");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

splice_patch to_c(const splice::PatchRef& p) {
  return splice_patch{p.x0, p.y0, p.level_factor, p.size};
}

splice::PipelineOptions to_pipeline(const splice_options* o) {
  splice::PipelineOptions out;
  if (o == nullptr) return out;
  out.segmentation.saturation_min = o->saturation_min;
  out.segmentation.value_max = o->value_max;
  out.min_tissue_fraction = o->min_tissue_fraction;
  if (!(o->min_tissue_fraction >= 0.0 && o->min_tissue_fraction <= 1.0)) {
    splice::throw_invalid("min_tissue_fraction must lie in [0, 1]");
  }
  splice::SpliceConfig::Params sp;
  sp.percentile_k = o->percentile_k;
  sp.patch_size = o->patch_size;
  sp.magnification = o->magnification;
  sp.bins_per_channel = o->bins_per_channel;
  sp.dup_epsilon = o->dup_epsilon;
  out.splice = splice::SpliceConfig(sp);
  splice::MosaicConfig::Params mp;
  mp.color_k = o->color_k;
  mp.select_fraction = o->select_fraction;
  mp.max_iters = o->max_iters;
  mp.tol = o->tol;
  mp.seed = o->seed;
  out.mosaic = splice::MosaicConfig(mp);
  if (o->embed_magnification > 0.0) out.embed_magnification = o->embed_magnification;
  return out;
}

std::vector<std::string> archive_classes(const splice::Archive& archive) {
  std::vector<std::string> classes;
  std::set<std::string> seen;
  for (const auto& set : archive.sets) {
    if (seen.insert(set.label).second) classes.push_back(set.label);
  }
  return classes;
}

}  // namespace

extern "C" {

const char* splice_version(void) { return SPLICE_VERSION_STRING; }

const char* splice_last_error(void) { return g_last_error.c_str(); }

void splice_string_free(char* s) { std::free(s); }

void splice_options_default(splice_options* options) {
  if (options == nullptr) return;
  const splice::PipelineOptions d;
  const auto& sp = d.splice.params();
  const auto& mp = d.mosaic.params();
  options->saturation_min = d.segmentation.saturation_min;
  options->value_max = d.segmentation.value_max;
  options->min_tissue_fraction = d.min_tissue_fraction;
  options->percentile_k = sp.percentile_k;
  options->patch_size = sp.patch_size;
  options->magnification = sp.magnification;
  options->bins_per_channel = sp.bins_per_channel;
  options->dup_epsilon = sp.dup_epsilon;
  options->color_k = mp.color_k;
  options->select_fraction = mp.select_fraction;
  options->max_iters = mp.max_iters;
  options->tol = mp.tol;
  options->seed = mp.seed;
  options->embed_magnification = 0.0;
}

// --- pyramid ---------------------------------------------------------------

splice_status splice_pyramid_load(const char* path, const char* id, double base_magnification,
                                  splice_pyramid** out) {
  return guard([&] {
    require(path != nullptr, "path");
    require(out != nullptr, "out");
    *out = nullptr;
    const std::filesystem::path p(path);
    const std::string name = id != nullptr ? std::string(id) : p.stem().string();
    *out = new splice_pyramid{splice::ImagePyramid(name, base_magnification, splice::read_image(p))};
  });
}

void splice_pyramid_free(splice_pyramid* pyramid) { delete pyramid; }

const char* splice_pyramid_id(const splice_pyramid* pyramid) {
  return pyramid != nullptr ? pyramid->pyramid.id().c_str() : "";
}

size_t splice_pyramid_level_count(const splice_pyramid* pyramid) {
  return pyramid != nullptr ? pyramid->pyramid.levels().size() : 0;
}

splice_status splice_pyramid_level(const splice_pyramid* pyramid, size_t index, uint32_t* factor,
                                   uint32_t* width, uint32_t* height) {
  return guard([&] {
    require(pyramid != nullptr, "pyramid");
    const auto& levels = pyramid->pyramid.levels();
    if (index >= levels.size()) splice::throw_invalid("pyramid level index out of range");
    const auto& level = levels[index];
    if (factor != nullptr) *factor = level.downsample_factor;
    if (width != nullptr) *width = level.image.width();
    if (height != nullptr) *height = level.image.height();
  });
}

splice_status splice_level_for_magnification(const splice_pyramid* pyramid, double target,
                                             size_t* level_index, uint32_t* factor,
                                             int* warning) {
  return guard([&] {
    require(pyramid != nullptr, "pyramid");
    const auto choice = splice::level_for_magnification(pyramid->pyramid, target);
    if (level_index != nullptr) *level_index = choice.level_index;
    if (factor != nullptr) *factor = choice.factor;
    if (warning != nullptr) *warning = choice.warning ? 1 : 0;
  });
}

// --- segmentation ----------------------------------------------------------

splice_status splice_segment(const splice_pyramid* pyramid, const splice_options* options,
                             const char* mask_png, uint32_t* factor, double* tissue_fraction,
                             size_t* tissue_patches) {
  return guard([&] {
    require(pyramid != nullptr, "pyramid");
    const auto lattice = splice::tissue_lattice(pyramid->pyramid, to_pipeline(options));
    if (mask_png != nullptr) {
      std::vector<uint8_t> gray(lattice.mask.bits.size());
      for (size_t i = 0; i < gray.size(); ++i) gray[i] = lattice.mask.bits[i] ? 255 : 0;
      splice::write_png_gray(mask_png, lattice.mask.width, lattice.mask.height, gray);
    }
    if (factor != nullptr) *factor = lattice.factor;
    if (tissue_fraction != nullptr) *tissue_fraction = lattice.mask.tissue_fraction();
    if (tissue_patches != nullptr) *tissue_patches = lattice.patches.size();
  });
}

// --- selections ------------------------------------------------------------

splice_status splice_select(const splice_pyramid* pyramid, splice_method method,
                            const splice_options* options, splice_selection** out) {
  return guard([&] {
    require(pyramid != nullptr, "pyramid");
    require(out != nullptr, "out");
    *out = nullptr;
    const auto opts = to_pipeline(options);
    auto sel = std::make_unique<splice_selection>();
    sel->method = method;
    sel->wsi_id = pyramid->pyramid.id();
    switch (method) {
      case SPLICE_METHOD_SPLICE: {
        sel->collage = splice::run_splice(pyramid->pyramid, opts);
        sel->tissue_count = sel->collage->input_count;
        sel->patches = sel->collage->patches();
        break;
      }
      case SPLICE_METHOD_MOSAIC: {
        sel->mosaic = splice::run_mosaic(pyramid->pyramid, opts);
        sel->tissue_count = sel->mosaic->input_count;
        sel->patches = sel->mosaic->patches();
        break;
      }
      case SPLICE_METHOD_LATTICE: {
        auto lattice = splice::tissue_lattice(pyramid->pyramid, opts);
        sel->tissue_count = static_cast<uint32_t>(lattice.patches.size());
        sel->patches = std::move(lattice.patches);
        break;
      }
      default:
        splice::throw_invalid("unknown selection method");
    }
    *out = sel.release();
  });
}

void splice_selection_free(splice_selection* selection) { delete selection; }

splice_method splice_selection_method(const splice_selection* selection) {
  return selection != nullptr ? selection->method : SPLICE_METHOD_LATTICE;
}

const char* splice_selection_wsi_id(const splice_selection* selection) {
  return selection != nullptr ? selection->wsi_id.c_str() : "";
}

size_t splice_selection_size(const splice_selection* selection) {
  return selection != nullptr ? selection->patches.size() : 0;
}

uint32_t splice_selection_tissue_count(const splice_selection* selection) {
  return selection != nullptr ? selection->tissue_count : 0;
}

splice_status splice_selection_patch(const splice_selection* selection, size_t index,
                                     splice_patch* out) {
  return guard([&] {
    require(selection != nullptr, "selection");
    require(out != nullptr, "out");
    if (index >= selection->patches.size()) splice::throw_invalid("patch index out of range");
    *out = to_c(selection->patches[index]);
  });
}

splice_status splice_selection_highmag(const splice_selection* selection,
                                       double base_magnification, double target_magnification,
                                       splice_patch* out, size_t capacity, size_t* count) {
  return guard([&] {
    require(selection != nullptr, "selection");
    const uint32_t to =
        splice::factor_for_magnification(base_magnification, target_magnification);
    std::vector<splice::PatchRef> mapped;
    mapped.reserve(selection->patches.size());
    for (const auto& p : selection->patches) mapped.push_back(splice::map_patch(p, to));
    if (count != nullptr) *count = mapped.size();
    if (out != nullptr) {
      for (size_t i = 0; i < mapped.size() && i < capacity; ++i) out[i] = to_c(mapped[i]);
    }
  });
}

splice_status splice_selection_to_json(const splice_selection* selection, char** out) {
  return guard([&] {
    require(selection != nullptr, "selection");
    require(out != nullptr, "out");
    *out = nullptr;
    if (selection->collage) {
      *out = dup_string(splice::collage_to_json(*selection->collage));
    } else if (selection->mosaic) {
      *out = dup_string(splice::mosaic_to_json(*selection->mosaic));
    } else {
      splice::throw_invalid("lattice selections have no JSON form");
    }
  });
}

splice_status splice_selection_save_json(const splice_selection* selection, const char* path) {
  return guard([&] {
    require(selection != nullptr, "selection");
    require(path != nullptr, "path");
    if (selection->collage) {
      splice::write_text_file(path, splice::collage_to_json(*selection->collage));
    } else if (selection->mosaic) {
      splice::write_text_file(path, splice::mosaic_to_json(*selection->mosaic));
    } else {
      splice::throw_invalid("lattice selections have no JSON form");
    }
  });
}

splice_status splice_selection_load_json(const char* path, splice_selection** out) {
  return guard([&] {
    require(path != nullptr, "path");
    require(out != nullptr, "out");
    *out = nullptr;
    const std::string text = splice::read_text_file(path);
    auto sel = std::make_unique<splice_selection>();
    const std::string kind = splice::selection_kind(text);
    if (kind == "collage") {
      sel->collage = splice::collage_from_json(text);
      sel->method = SPLICE_METHOD_SPLICE;
      sel->wsi_id = sel->collage->wsi_id;
      sel->tissue_count = sel->collage->input_count;
      sel->patches = sel->collage->patches();
    } else if (kind == "mosaic") {
      sel->mosaic = splice::mosaic_from_json(text);
      sel->method = SPLICE_METHOD_MOSAIC;
      sel->wsi_id = sel->mosaic->wsi_id;
      sel->tissue_count = sel->mosaic->input_count;
      sel->patches = sel->mosaic->patches();
    } else {
      splice::throw_format("unknown selection kind '" + kind + "'");
    }
    *out = sel.release();
  });
}

// --- features --------------------------------------------------------------

splice_status splice_features_create(splice_features** out) {
  return guard([&] {
    require(out != nullptr, "out");
    *out = new splice_features{};
  });
}

void splice_features_free(splice_features* features) { delete features; }

size_t splice_features_count(const splice_features* features) {
  return features != nullptr ? features->rows.size() : 0;
}

size_t splice_features_dim(const splice_features* features) {
  return features != nullptr && !features->rows.empty() ? features->rows.front().values.size()
                                                        : 0;
}

splice_status splice_features_embed(splice_features* features, const splice_pyramid* pyramid,
                                    const splice_selection* selection,
                                    const splice_options* options) {
  return guard([&] {
    require(features != nullptr, "features");
    require(pyramid != nullptr, "pyramid");
    require(selection != nullptr, "selection");
    if (selection->wsi_id != pyramid->pyramid.id()) {
      splice::throw_invalid("selection '" + selection->wsi_id + "' does not belong to slide '" +
                            pyramid->pyramid.id() + "'");
    }
    auto rows = splice::embed_patches(pyramid->pyramid, selection->patches, to_pipeline(options));
    features->rows.insert(features->rows.end(), std::make_move_iterator(rows.begin()),
                          std::make_move_iterator(rows.end()));
  });
}

splice_status splice_features_append(splice_features* dst, const splice_features* src) {
  return guard([&] {
    require(dst != nullptr, "dst");
    require(src != nullptr, "src");
    if (!dst->rows.empty() && !src->rows.empty() &&
        dst->rows.front().values.size() != src->rows.front().values.size()) {
      splice::throw_invalid("feature dimensions differ");
    }
    dst->rows.insert(dst->rows.end(), src->rows.begin(), src->rows.end());
  });
}

splice_status splice_features_load_csv(const char* path, splice_features** out) {
  return guard([&] {
    require(path != nullptr, "path");
    require(out != nullptr, "out");
    *out = nullptr;
    *out = new splice_features{splice::ingest_external_features(path)};
  });
}

splice_status splice_features_save_csv(const splice_features* features, const char* path) {
  return guard([&] {
    require(features != nullptr, "features");
    require(path != nullptr, "path");
    splice::write_features_csv(path, features->rows);
  });
}

// --- manifest --------------------------------------------------------------

splice_status splice_manifest_load(const char* path, splice_manifest** out) {
  return guard([&] {
    require(path != nullptr, "path");
    require(out != nullptr, "out");
    *out = nullptr;
    auto m = std::make_unique<splice_manifest>();
    m->manifest = splice::load_manifest(path);
    for (const auto& row : m->manifest.rows) {
      m->resolved.push_back(m->manifest.resolve(row).string());
    }
    *out = m.release();
  });
}

void splice_manifest_free(splice_manifest* manifest) { delete manifest; }

size_t splice_manifest_size(const splice_manifest* manifest) {
  return manifest != nullptr ? manifest->manifest.rows.size() : 0;
}

splice_status splice_manifest_row_at(const splice_manifest* manifest, size_t index,
                                     splice_manifest_row* out) {
  return guard([&] {
    require(manifest != nullptr, "manifest");
    require(out != nullptr, "out");
    if (index >= manifest->manifest.rows.size()) {
      splice::throw_invalid("manifest row index out of range");
    }
    const auto& row = manifest->manifest.rows[index];
    *out = splice_manifest_row{manifest->resolved[index].c_str(), row.id.c_str(),
                               row.label.c_str(), row.base_magnification};
  });
}

// --- archive ---------------------------------------------------------------

splice_status splice_archive_build(const splice_features* features,
                                   const splice_manifest* manifest, splice_archive** out) {
  return guard([&] {
    require(features != nullptr, "features");
    require(manifest != nullptr, "manifest");
    require(out != nullptr, "out");
    *out = nullptr;
    *out = new splice_archive{splice::build_archive(features->rows, manifest->manifest.labels())};
  });
}

void splice_archive_free(splice_archive* archive) { delete archive; }

splice_status splice_archive_save(const splice_archive* archive, const char* path) {
  return guard([&] {
    require(archive != nullptr, "archive");
    require(path != nullptr, "path");
    splice::save_archive(archive->archive, path);
  });
}

splice_status splice_archive_load(const char* path, splice_archive** out) {
  return guard([&] {
    require(path != nullptr, "path");
    require(out != nullptr, "out");
    *out = nullptr;
    *out = new splice_archive{splice::load_archive(path)};
  });
}

size_t splice_archive_set_count(const splice_archive* archive) {
  return archive != nullptr ? archive->archive.sets.size() : 0;
}

uint32_t splice_archive_bits(const splice_archive* archive) {
  return archive != nullptr ? archive->archive.bits_per_barcode : 0;
}

splice_status splice_archive_set_info(const splice_archive* archive, size_t index,
                                      const char** wsi_id, const char** label,
                                      size_t* barcodes) {
  return guard([&] {
    require(archive != nullptr, "archive");
    if (index >= archive->archive.sets.size()) splice::throw_invalid("set index out of range");
    const auto& set = archive->archive.sets[index];
    if (wsi_id != nullptr) *wsi_id = set.wsi_id.c_str();
    if (label != nullptr) *label = set.label.c_str();
    if (barcodes != nullptr) *barcodes = set.barcodes.size();
  });
}

splice_status splice_search(const splice_archive* archive, const char* query_id, size_t top_n,
                            int exclude_self, unsigned jobs, splice_hit* hits, size_t capacity,
                            size_t* count) {
  return guard([&] {
    require(archive != nullptr, "archive");
    require(query_id != nullptr, "query_id");
    const splice::BarcodeSet* query = archive->archive.find(query_id);
    if (query == nullptr) {
      splice::throw_invalid(std::string("query '") + query_id + "' is not in the archive");
    }
    std::optional<std::string_view> exclude;
    if (exclude_self) exclude = query->wsi_id;
    const auto result = splice::search(archive->archive, *query, top_n, exclude, jobs);
    if (count != nullptr) *count = result.size();
    if (hits == nullptr) return;
    // Point into the archive so the strings outlive this call.
    for (size_t i = 0; i < result.size() && i < capacity; ++i) {
      const splice::BarcodeSet* set = archive->archive.find(result[i].wsi_id);
      hits[i] = splice_hit{set->wsi_id.c_str(), set->label.c_str(), result[i].distance};
    }
  });
}

// --- evaluation ------------------------------------------------------------

splice_status splice_eval_loo(const splice_archive* archive, const splice_eval_options* options,
                              splice_report** out) {
  return guard([&] {
    require(archive != nullptr, "archive");
    require(options != nullptr, "options");
    require(out != nullptr, "out");
    *out = nullptr;
    if (options->n_count == 0) splice::throw_invalid("at least one n value is required");
    require(options->n_values != nullptr, "n_values");
    const std::vector<uint32_t> ns(options->n_values, options->n_values + options->n_count);
    splice::LooOptions loo;
    loo.abstain_falls_back_to_top1 = options->abstain_falls_back_to_top1 != 0;
    loo.jobs = options->jobs;
    const auto results = splice::leave_one_out(archive->archive, ns, loo);

    auto report = std::make_unique<splice_report>();
    auto& r = report->report;
    r.method = options->method != nullptr ? options->method : "";
    r.classes = archive_classes(archive->archive);
    for (const auto& [n, votes] : results) r.metrics[n] = splice::compute_metrics(votes, r.classes);
    r.parameters["abstain_fallback"] = loo.abstain_falls_back_to_top1 ? "top1" : "abstain";
    r.accounting = splice::accounting(archive->archive, options->feature_dim,
                                      options->timing_repeats, options->jobs);
    *out = report.release();
  });
}

void splice_report_free(splice_report* report) { delete report; }

splice_status splice_report_set_param(splice_report* report, const char* key, const char* value) {
  return guard([&] {
    require(report != nullptr, "report");
    require(key != nullptr, "key");
    require(value != nullptr, "value");
    report->report.parameters[key] = value;
  });
}

splice_status splice_report_metrics(const splice_report* report, uint32_t n,
                                    splice_metrics* out) {
  return guard([&] {
    require(report != nullptr, "report");
    require(out != nullptr, "out");
    const auto it = report->report.metrics.find(n);
    if (it == report->report.metrics.end()) {
      splice::throw_invalid("report has no metrics for n=" + std::to_string(n));
    }
    const auto& m = it->second;
    *out = splice_metrics{m.accuracy,  m.macro_precision, m.macro_recall,
                          m.macro_f1, m.total,           m.abstained};
  });
}

splice_status splice_report_to_json(const splice_report* report, char** out) {
  return guard([&] {
    require(report != nullptr, "report");
    require(out != nullptr, "out");
    *out = dup_string(splice::report_to_json(report->report));
  });
}

splice_status splice_report_to_csv(const splice_report* report, char** out) {
  return guard([&] {
    require(report != nullptr, "report");
    require(out != nullptr, "out");
    *out = dup_string(splice::report_to_csv(report->report));
  });
}

splice_status splice_percentile_curve(const splice_manifest* manifest, const double* ks,
                                      size_t k_count, const splice_options* options,
                                      unsigned jobs, char** csv_out) {
  return guard([&] {
    require(manifest != nullptr, "manifest");
    require(csv_out != nullptr, "csv_out");
    *csv_out = nullptr;
    if (k_count == 0) splice::throw_invalid("at least one percentile is required");
    require(ks != nullptr, "ks");
    const auto curve = splice::percentile_curve(manifest->manifest,
                                                std::span<const double>(ks, k_count),
                                                to_pipeline(options), jobs);
    *csv_out = dup_string(splice::curve_to_csv(curve));
  });
}

// --- synthetic corpus ------------------------------------------------------

splice_status splice_synth_generate(const splice_synth_options* options, const char* out_dir,
                                    unsigned jobs) {
  return guard([&] {
    require(options != nullptr, "options");
    require(out_dir != nullptr, "out_dir");
    splice::SynthSpec spec;
    spec.classes = splice::default_synth_classes(options->classes);
    spec.per_class = options->per_class;
    spec.image_size = options->image_size;
    spec.seed = options->seed;
    spec.base_magnification = options->base_magnification;
    splice::generate_corpus(spec, out_dir, jobs);
  });
}

}  // extern "C"
