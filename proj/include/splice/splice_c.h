/* Copyright 2026 The SPLICE Authors. All Rights Reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface of libsplice.
 *
 * All objects are opaque handles created by a *_load / *_create / *_compute
 * call and released with the matching *_free (NULL is accepted). Functions
 * that can fail return a splice_status; on failure splice_last_error() holds
 * a message for the calling thread until its next failing call. Strings
 * returned through char** are heap-allocated and must be released with
 * splice_string_free. Borrowed const char* results stay valid while the
 * owning handle lives.
 *
 * Handles are not internally synchronized: distinct handles may be used from
 * different threads, and a handle may be read concurrently, but mutation
 * (splice_features_embed, splice_features_append, splice_report_set_param)
 * needs exclusive access.
 */

#ifndef SPLICE_SPLICE_C_H_
#define SPLICE_SPLICE_C_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  define SPLICE_API __declspec(dllexport)
#else
#  define SPLICE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum splice_status {
  SPLICE_OK = 0,
  SPLICE_ERR_INVALID_INPUT = 1,
  SPLICE_ERR_IO = 2,
  SPLICE_ERR_FORMAT = 3,
  SPLICE_ERR_EMPTY_ARCHIVE = 4,
  SPLICE_ERR_INTERNAL = 5
} splice_status;

typedef enum splice_method {
  SPLICE_METHOD_SPLICE = 0,  /* sequential collage */
  SPLICE_METHOD_MOSAIC = 1,  /* color + spatial k-means */
  SPLICE_METHOD_LATTICE = 2  /* every tissue patch */
} splice_method;

typedef struct splice_pyramid splice_pyramid;
typedef struct splice_selection splice_selection;
typedef struct splice_features splice_features;
typedef struct splice_manifest splice_manifest;
typedef struct splice_archive splice_archive;
typedef struct splice_report splice_report;

typedef struct splice_patch {
  uint32_t x0; /* level-0 pixels */
  uint32_t y0;
  uint32_t level_factor;
  uint32_t size; /* pixels at level_factor */
} splice_patch;

/* Every tunable of the pipeline; fill with splice_options_default first. */
typedef struct splice_options {
  /* segmentation */
  double saturation_min;
  double value_max;
  double min_tissue_fraction;
  /* collage selection (also fixes the selection level for all methods) */
  double percentile_k;
  uint32_t patch_size;
  double magnification;
  uint32_t bins_per_channel;
  double dup_epsilon;
  /* mosaic */
  uint32_t color_k;
  double select_fraction;
  uint32_t max_iters;
  double tol;
  uint64_t seed;
  /* embedding magnification; <= 0 selects the base level */
  double embed_magnification;
} splice_options;

typedef struct splice_manifest_row {
  const char* path; /* resolved against the manifest directory */
  const char* id;
  const char* label;
  double base_magnification;
} splice_manifest_row;

typedef struct splice_hit {
  const char* wsi_id; /* borrowed from the archive */
  const char* label;
  double distance;
} splice_hit;

typedef struct splice_eval_options {
  const uint32_t* n_values;
  size_t n_count;
  int abstain_falls_back_to_top1;
  unsigned timing_repeats; /* 0: no timing in the report */
  unsigned jobs;           /* 0: all hardware threads */
  const char* method;      /* label written into the report */
  size_t feature_dim;      /* for embedding storage accounting */
} splice_eval_options;

typedef struct splice_metrics {
  double accuracy;
  double macro_precision;
  double macro_recall;
  double macro_f1;
  size_t total;
  size_t abstained;
} splice_metrics;

typedef struct splice_synth_options {
  uint32_t classes; /* taken from the built-in palette (1..5) */
  uint32_t per_class;
  uint32_t image_size;
  uint64_t seed;
  double base_magnification;
} splice_synth_options;

/* --- general ------------------------------------------------------------ */

SPLICE_API const char* splice_version(void);
SPLICE_API const char* splice_last_error(void);
SPLICE_API void splice_string_free(char* s);
SPLICE_API void splice_options_default(splice_options* options);

/* --- pyramid ------------------------------------------------------------ */

/* id may be NULL to use the file stem. */
SPLICE_API splice_status splice_pyramid_load(const char* path, const char* id,
                                             double base_magnification, splice_pyramid** out);
SPLICE_API void splice_pyramid_free(splice_pyramid* pyramid);
SPLICE_API const char* splice_pyramid_id(const splice_pyramid* pyramid);
SPLICE_API size_t splice_pyramid_level_count(const splice_pyramid* pyramid);
SPLICE_API splice_status splice_pyramid_level(const splice_pyramid* pyramid, size_t index,
                                              uint32_t* factor, uint32_t* width,
                                              uint32_t* height);
SPLICE_API splice_status splice_level_for_magnification(const splice_pyramid* pyramid,
                                                        double target, size_t* level_index,
                                                        uint32_t* factor, int* warning);

/* --- segmentation ------------------------------------------------------- */

/* Segments the selection level; writes the mask as a PNG when mask_png is
 * not NULL. Any output pointer may be NULL. */
SPLICE_API splice_status splice_segment(const splice_pyramid* pyramid,
                                        const splice_options* options, const char* mask_png,
                                        uint32_t* factor, double* tissue_fraction,
                                        size_t* tissue_patches);

/* --- selections --------------------------------------------------------- */

SPLICE_API splice_status splice_select(const splice_pyramid* pyramid, splice_method method,
                                       const splice_options* options, splice_selection** out);
SPLICE_API void splice_selection_free(splice_selection* selection);
SPLICE_API splice_method splice_selection_method(const splice_selection* selection);
SPLICE_API const char* splice_selection_wsi_id(const splice_selection* selection);
SPLICE_API size_t splice_selection_size(const splice_selection* selection);
SPLICE_API uint32_t splice_selection_tissue_count(const splice_selection* selection);
SPLICE_API splice_status splice_selection_patch(const splice_selection* selection, size_t index,
                                                splice_patch* out);
/* Patches mapped to target_magnification on a base_magnification slide. */
SPLICE_API splice_status splice_selection_highmag(const splice_selection* selection,
                                                  double base_magnification,
                                                  double target_magnification,
                                                  splice_patch* out, size_t capacity,
                                                  size_t* count);
/* Collage or mosaic JSON; lattice selections have no JSON form. */
SPLICE_API splice_status splice_selection_to_json(const splice_selection* selection, char** out);
SPLICE_API splice_status splice_selection_save_json(const splice_selection* selection,
                                                    const char* path);
SPLICE_API splice_status splice_selection_load_json(const char* path, splice_selection** out);

/* --- features ----------------------------------------------------------- */

SPLICE_API splice_status splice_features_create(splice_features** out);
SPLICE_API void splice_features_free(splice_features* features);
SPLICE_API size_t splice_features_count(const splice_features* features);
SPLICE_API size_t splice_features_dim(const splice_features* features);
/* Appends histogram embeddings of the selection's patches. */
SPLICE_API splice_status splice_features_embed(splice_features* features,
                                               const splice_pyramid* pyramid,
                                               const splice_selection* selection,
                                               const splice_options* options);
SPLICE_API splice_status splice_features_append(splice_features* dst,
                                                const splice_features* src);
SPLICE_API splice_status splice_features_load_csv(const char* path, splice_features** out);
SPLICE_API splice_status splice_features_save_csv(const splice_features* features,
                                                  const char* path);

/* --- manifest ----------------------------------------------------------- */

SPLICE_API splice_status splice_manifest_load(const char* path, splice_manifest** out);
SPLICE_API void splice_manifest_free(splice_manifest* manifest);
SPLICE_API size_t splice_manifest_size(const splice_manifest* manifest);
SPLICE_API splice_status splice_manifest_row_at(const splice_manifest* manifest, size_t index,
                                                splice_manifest_row* out);

/* --- archive ------------------------------------------------------------ */

/* Binarizes every feature vector; labels come from the manifest. */
SPLICE_API splice_status splice_archive_build(const splice_features* features,
                                              const splice_manifest* manifest,
                                              splice_archive** out);
SPLICE_API void splice_archive_free(splice_archive* archive);
SPLICE_API splice_status splice_archive_save(const splice_archive* archive, const char* path);
SPLICE_API splice_status splice_archive_load(const char* path, splice_archive** out);
SPLICE_API size_t splice_archive_set_count(const splice_archive* archive);
SPLICE_API uint32_t splice_archive_bits(const splice_archive* archive);
SPLICE_API splice_status splice_archive_set_info(const splice_archive* archive, size_t index,
                                                 const char** wsi_id, const char** label,
                                                 size_t* barcodes);
/* Ranks archive members against the member `query_id`. With exclude_self the
 * query is left out (leave-one-out). At most `capacity` hits are written. */
SPLICE_API splice_status splice_search(const splice_archive* archive, const char* query_id,
                                       size_t top_n, int exclude_self, unsigned jobs,
                                       splice_hit* hits, size_t capacity, size_t* count);

/* --- evaluation --------------------------------------------------------- */

SPLICE_API splice_status splice_eval_loo(const splice_archive* archive,
                                         const splice_eval_options* options,
                                         splice_report** out);
SPLICE_API void splice_report_free(splice_report* report);
SPLICE_API splice_status splice_report_set_param(splice_report* report, const char* key,
                                                 const char* value);
SPLICE_API splice_status splice_report_metrics(const splice_report* report, uint32_t n,
                                               splice_metrics* out);
SPLICE_API splice_status splice_report_to_json(const splice_report* report, char** out);
SPLICE_API splice_status splice_report_to_csv(const splice_report* report, char** out);

/* Collage size per slide for each percentile in `ks`, as CSV
 * (percentile,wsi_id,tissue_patches,collage_patches,collage_fraction). */
SPLICE_API splice_status splice_percentile_curve(const splice_manifest* manifest,
                                                 const double* ks, size_t k_count,
                                                 const splice_options* options, unsigned jobs,
                                                 char** csv_out);

/* --- synthetic corpus --------------------------------------------------- */

/* Writes PNGs and manifest.csv into out_dir. */
SPLICE_API splice_status splice_synth_generate(const splice_synth_options* options,
                                               const char* out_dir, unsigned jobs);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SPLICE_SPLICE_C_H_ */
