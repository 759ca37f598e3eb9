#ifndef CKNN_H
#define CKNN_H

#include <stddef.h>
#include <stdint.h>

#if defined(CKNN_BUILDING_LIBRARY)
#define CKNN_API __attribute__((visibility("default")))
#else
#define CKNN_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cknn_status {
  CKNN_OK = 0,
  CKNN_INVALID_INPUT = 1,
  CKNN_INVALID_PARAMETER = 2,
  CKNN_DEGENERATE_BANDWIDTH = 3,
  CKNN_RESOURCE_LIMIT = 4,
  CKNN_CONTRACT = 5,
  CKNN_IO = 6,
  CKNN_INTERNAL = 7
} cknn_status;

/* Message for the last failing call on this thread ("" if none). */
CKNN_API const char* cknn_last_error(void);
CKNN_API const char* cknn_status_string(cknn_status s);
CKNN_API const char* cknn_version(void);

/* Releases buffers returned through double** / int** out-parameters. */
CKNN_API void cknn_free_buffer(void* p);

/* ---- point clouds ---- */

typedef struct cknn_cloud cknn_cloud;

/* coords: n*dim row-major values. intrinsic_dim <= 0 means unknown. */
CKNN_API cknn_status cknn_cloud_create(const double* coords, size_t n, size_t dim, int intrinsic_dim,
                                       cknn_cloud** out);
CKNN_API cknn_status cknn_cloud_read_csv(const char* path, cknn_cloud** out);
CKNN_API cknn_status cknn_cloud_write_csv(const cknn_cloud* c, const char* path);
CKNN_API void cknn_cloud_free(cknn_cloud* c);
CKNN_API size_t cknn_cloud_size(const cknn_cloud* c);
CKNN_API size_t cknn_cloud_dim(const cknn_cloud* c);
/* Borrowed pointer to n*dim coordinates, valid while c lives. */
CKNN_API const double* cknn_cloud_coords(const cknn_cloud* c);
/* Generator metadata; NULL with *len = 0 when absent. */
CKNN_API const int* cknn_cloud_labels(const cknn_cloud* c, size_t* len);
CKNN_API const double* cknn_cloud_density(const cknn_cloud* c, size_t* len);
CKNN_API const double* cknn_cloud_latent(const cknn_cloud* c, size_t* len);

CKNN_API cknn_status cknn_read_values_csv(const char* path, double** values, size_t* len);
CKNN_API cknn_status cknn_write_values_csv(const char* path, const double* values, size_t len);
CKNN_API cknn_status cknn_read_labels_csv(const char* path, int** labels, size_t* len);
CKNN_API cknn_status cknn_write_labels_csv(const char* path, const int* labels, size_t len);

/* ---- generators ---- */

typedef enum cknn_dataset {
  CKNN_FIGURE_EIGHT,
  CKNN_CUT_GAUSSIAN_FIG5,
  CKNN_CUT_GAUSSIAN,    /* uses n, m */
  CKNN_CUT_GAUSSIAN_1D, /* curve in the plane, uses n */
  CKNN_CIRCLE,          /* uses n */
  CKNN_THREE_BOXES,
  CKNN_SPIRALS_2D,      /* uses n */
  CKNN_SPIRALS_3D       /* uses n */
} cknn_dataset;

CKNN_API cknn_status cknn_dataset_from_name(const char* name, cknn_dataset* out);
CKNN_API const char* cknn_dataset_name(cknn_dataset d);

/* n = 0 selects the generator's default size. */
CKNN_API cknn_status cknn_generate(cknn_dataset d, size_t n, int m, uint64_t seed, cknn_cloud** out);

/* ---- images and patterns ---- */

typedef struct cknn_image cknn_image;

/* kind: "stripes", "biperiodic", "checkerboard" or "hexagonal". rows/cols of
   0 use the layout that covers one fundamental domain with 9x9 windows. */
CKNN_API cknn_status cknn_pattern_image(const char* kind, size_t rows, size_t cols, int gradient,
                                        cknn_image** out);
/* Window stride matching the default layout for `patch`-sized windows. */
CKNN_API cknn_status cknn_pattern_layout(const char* kind, size_t patch, size_t* rows, size_t* cols,
                                         size_t* stride);
CKNN_API cknn_status cknn_image_read_pgm(const char* path, cknn_image** out);
CKNN_API cknn_status cknn_image_write_pgm(const cknn_image* img, const char* path);
CKNN_API void cknn_image_free(cknn_image* img);
CKNN_API void cknn_image_size(const cknn_image* img, size_t* rows, size_t* cols);
CKNN_API cknn_status cknn_image_decimate(const cknn_image* img, size_t factor, cknn_image** out);
CKNN_API cknn_status cknn_image_patches(const cknn_image* img, size_t patch, size_t stride,
                                        cknn_cloud** out);

/* ---- edge filtrations ---- */

typedef enum cknn_method {
  CKNN_METHOD_CKNN,    /* d / sqrt(rho_i rho_j), rho = k-th neighbour distance */
  CKNN_METHOD_EPS,     /* d */
  CKNN_METHOD_KNN,     /* neighbour rank, OR rule */
  CKNN_METHOD_KNN_AND, /* neighbour rank, AND rule */
  CKNN_METHOD_BETA     /* d / sqrt(rho_i rho_j), rho = q^beta */
} cknn_method;

CKNN_API cknn_status cknn_method_from_name(const char* name, cknn_method* out);

typedef struct cknn_filtration_params {
  cknn_method method;
  int k;                 /* CKNN */
  double beta;           /* BETA */
  const double* density; /* BETA: one value per point */
  size_t density_len;
} cknn_filtration_params;

typedef struct cknn_filtration cknn_filtration;

CKNN_API cknn_status cknn_filtration_build(const cknn_cloud* c, const cknn_filtration_params* p,
                                           cknn_filtration** out);
CKNN_API void cknn_filtration_free(cknn_filtration* f);
CKNN_API size_t cknn_filtration_size(const cknn_filtration* f);
CKNN_API size_t cknn_filtration_vertices(const cknn_filtration* f);
/* Edge at 0-based position idx in filtration order. */
CKNN_API cknn_status cknn_filtration_edge(const cknn_filtration* f, size_t idx, uint32_t* i, uint32_t* j,
                                          double* value);
/* Number of edges with value < scale. */
CKNN_API size_t cknn_filtration_count_below(const cknn_filtration* f, double scale);
CKNN_API cknn_status cknn_filtration_write_csv(const cknn_filtration* f, const char* path);

/* ---- clustering ---- */

/* Largest edge count leaving at least `clusters` components; labels (length
   N, may be NULL) receive component ids 0..C-1 ordered by smallest member. */
CKNN_API cknn_status cknn_cluster(const cknn_filtration* f, size_t clusters, size_t* edge_count,
                                  size_t* components, int* labels);
CKNN_API cknn_status cknn_clustering_fraction(const cknn_filtration* f, const int* truth, size_t len,
                                              double* out);

/* ---- homology ---- */

typedef struct cknn_barcode cknn_barcode;

#define CKNN_MAX_BETTI 8

typedef struct cknn_interval {
  size_t first_count, last_count; /* inclusive edge counts */
  double fraction;
  double scale_lo, scale_hi;
  size_t n_betti;
  size_t betti[CKNN_MAX_BETTI];
} cknn_interval;

/* cap = 0 selects the default simplex cap. */
CKNN_API cknn_status cknn_persistence(const cknn_filtration* f, int max_dim, size_t cap,
                                      cknn_barcode** out);
CKNN_API void cknn_barcode_free(cknn_barcode* b);
/* Bars with distinct birth and death values. */
CKNN_API size_t cknn_barcode_size(const cknn_barcode* b);
CKNN_API cknn_status cknn_barcode_bar(const cknn_barcode* b, size_t idx, int* dim, double* birth,
                                      double* death);
CKNN_API cknn_status cknn_barcode_betti_at(const cknn_barcode* b, size_t edge_count, size_t* betti,
                                           size_t len);
CKNN_API cknn_status cknn_stable_interval(const cknn_barcode* b, const cknn_filtration* f,
                                          cknn_interval* out);
CKNN_API cknn_status cknn_homology_fraction(const cknn_barcode* b, const size_t* target, size_t len,
                                            double* out);
CKNN_API cknn_status cknn_barcode_write_csv(const cknn_barcode* b, const char* path);
CKNN_API size_t cknn_simplex_estimate(size_t n_vertices, int max_dim);

/* ---- spectral ---- */

typedef enum cknn_kernel { CKNN_KERNEL_GAUSSIAN, CKNN_KERNEL_INDICATOR } cknn_kernel;

typedef enum cknn_bandwidth {
  CKNN_BANDWIDTH_CONSTANT, /* rho = 1 */
  CKNN_BANDWIDTH_KNN,      /* rho = k-th neighbour distance */
  CKNN_BANDWIDTH_DENSITY   /* rho = q^beta */
} cknn_bandwidth;

typedef struct cknn_spectral_params {
  cknn_kernel kernel;
  double delta;
  int m; /* intrinsic dimension */
  cknn_bandwidth bandwidth;
  int k;
  double beta;
  const double* density; /* DENSITY */
  size_t density_len;
  const double* mu; /* NULL for mu = 1 */
  size_t mu_len;
  double density_scale; /* 0 means 1 */
} cknn_spectral_params;

CKNN_API cknn_status cknn_kernel_from_name(const char* name, cknn_kernel* out);
/* out = {m0, m2, m22, a}. */
CKNN_API cknn_status cknn_moment_constants(int m, cknn_kernel kernel, double out[4]);
/* Smallest n_eigs generalized eigenvalues of c^{-1} L_un v = lambda M v.
   vectors (may be NULL) receives N x n_eigs column-major eigenvectors. */
CKNN_API cknn_status cknn_spectrum(const cknn_cloud* c, const cknn_spectral_params* p, size_t n_eigs,
                                   double* values, double* vectors);
/* out = c^{-1} L_un f, both of length N. */
CKNN_API cknn_status cknn_pointwise(const cknn_cloud* c, const cknn_spectral_params* p, const double* f,
                                    double* out);

/* ---- bandwidth sweep on the uniform unit circle ---- */

typedef struct cknn_sweep_params {
  const size_t* n_list;
  size_t n_list_len;
  const double* spectral_grid;
  size_t spectral_grid_len;
  const double* pointwise_grid;
  size_t pointwise_grid_len;
  const uint64_t* seeds;
  size_t seeds_len;
  cknn_kernel kernel;
  int jobs;
} cknn_sweep_params;

typedef enum cknn_mode { CKNN_MODE_POINTWISE, CKNN_MODE_SPECTRAL } cknn_mode;

typedef struct cknn_sweep cknn_sweep;

CKNN_API cknn_status cknn_sweep_run(const cknn_sweep_params* p, cknn_sweep** out);
CKNN_API void cknn_sweep_free(cknn_sweep* s);
CKNN_API size_t cknn_sweep_rows(const cknn_sweep* s);
/* Number of N values with a best delta for this mode. */
CKNN_API size_t cknn_sweep_best_count(const cknn_sweep* s, cknn_mode mode);
CKNN_API cknn_status cknn_sweep_best(const cknn_sweep* s, cknn_mode mode, size_t idx, size_t* n,
                                     double* delta, double* rmse);
CKNN_API double cknn_sweep_slope(const cknn_sweep* s, cknn_mode mode);
CKNN_API cknn_status cknn_sweep_write_csv(const cknn_sweep* s, const char* path);
/* count values evenly spaced in log scale. */
CKNN_API cknn_status cknn_log_grid(double lo, double hi, size_t count, double* out);

#ifdef __cplusplus
}
#endif

#endif
