#include "cknn/cknn.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "cknn/clustering.hpp"
#include "cknn/datagen.hpp"
#include "cknn/error.hpp"
#include "cknn/experiment.hpp"
#include "cknn/graph.hpp"
#include "cknn/homology.hpp"
#include "cknn/io.hpp"
#include "cknn/spectral.hpp"

struct cknn_cloud {
  cknn::Dataset data;
};
struct cknn_image {
  cknn::Image img;
};
struct cknn_filtration {
  cknn::EdgeFiltration f;
};
struct cknn_barcode {
  cknn::Barcode b;
  std::vector<cknn::Bar> visible;
};
struct cknn_sweep {
  cknn::PowerLawResult r;
};

namespace {

thread_local std::string g_last_error;

cknn_status fail(cknn_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

cknn_status status_of(cknn::ErrorKind k) {
  switch (k) {
    case cknn::ErrorKind::InvalidInput: return CKNN_INVALID_INPUT;
    case cknn::ErrorKind::InvalidParameter: return CKNN_INVALID_PARAMETER;
    case cknn::ErrorKind::DegenerateBandwidth: return CKNN_DEGENERATE_BANDWIDTH;
    case cknn::ErrorKind::ResourceLimit: return CKNN_RESOURCE_LIMIT;
    case cknn::ErrorKind::Contract: return CKNN_CONTRACT;
    case cknn::ErrorKind::Io: return CKNN_IO;
  }
  return CKNN_INTERNAL;
}

// Runs body and turns exceptions into status codes.
template <class F>
cknn_status guard(F&& body) {
  try {
    g_last_error.clear();
    body();
    return CKNN_OK;
  } catch (const cknn::Error& e) {
    return fail(status_of(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(CKNN_RESOURCE_LIMIT, "out of memory");
  } catch (const std::exception& e) {
    return fail(CKNN_INTERNAL, e.what());
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw cknn::InvalidParameter(what);
}

template <class T>
T* copy_buffer(const std::vector<T>& v) {
  T* p = static_cast<T*>(std::malloc(std::max<std::size_t>(1, v.size()) * sizeof(T)));
  if (!p) throw std::bad_alloc();
  if (!v.empty()) std::memcpy(p, v.data(), v.size() * sizeof(T));
  return p;
}

cknn::KernelShape shape_of(cknn_kernel k) {
  return k == CKNN_KERNEL_GAUSSIAN ? cknn::KernelShape::Gaussian : cknn::KernelShape::Indicator;
}

std::vector<double> vec(const double* p, std::size_t n) {
  return p ? std::vector<double>(p, p + n) : std::vector<double>{};
}

cknn::BandwidthProfile spectral_bandwidth(const cknn::DistanceMatrix& d, const cknn_spectral_params& p) {
  switch (p.bandwidth) {
    case CKNN_BANDWIDTH_CONSTANT: return cknn::BandwidthProfile::constant(d.size());
    case CKNN_BANDWIDTH_KNN: return cknn::knn_bandwidth(d, p.k);
    case CKNN_BANDWIDTH_DENSITY:
      require(p.density && p.density_len == d.size(), "density must have one value per point");
      return cknn::analytic_bandwidth({vec(p.density, p.density_len)}, p.beta);
  }
  throw cknn::InvalidParameter("unknown bandwidth kind");
}

cknn::LaplacianSystem build_system(const cknn_cloud* c, const cknn_spectral_params* p) {
  require(c && p, "null argument");
  require(p->delta > 0.0, "delta must be positive");
  require(p->m >= 1, "m must be at least 1");
  const auto d = cknn::pairwise_distances(c->data.points);
  std::vector<double> mu;
  if (p->mu) {
    require(p->mu_len == d.size(), "mu must have one value per point");
    mu = vec(p->mu, p->mu_len);
  }
  return cknn::laplacian_system(d, spectral_bandwidth(d, *p), p->delta, shape_of(p->kernel), p->m,
                                std::move(mu), p->density_scale > 0.0 ? p->density_scale : 1.0);
}

const std::pair<const char*, cknn_dataset> kDatasets[] = {
    {"figure-eight", CKNN_FIGURE_EIGHT}, {"cut-gaussian-fig5", CKNN_CUT_GAUSSIAN_FIG5},
    {"cut-gaussian", CKNN_CUT_GAUSSIAN}, {"cut-gaussian-1d", CKNN_CUT_GAUSSIAN_1D},
    {"circle", CKNN_CIRCLE},             {"three-boxes", CKNN_THREE_BOXES},
    {"spirals-2d", CKNN_SPIRALS_2D},     {"spirals-3d", CKNN_SPIRALS_3D},
};

}  // namespace

extern "C" {

const char* cknn_last_error(void) { return g_last_error.c_str(); }

const char* cknn_status_string(cknn_status s) {
  switch (s) {
    case CKNN_OK: return "ok";
    case CKNN_INVALID_INPUT: return "invalid input";
    case CKNN_INVALID_PARAMETER: return "invalid parameter";
    case CKNN_DEGENERATE_BANDWIDTH: return "degenerate bandwidth";
    case CKNN_RESOURCE_LIMIT: return "resource limit";
    case CKNN_CONTRACT: return "contract violation";
    case CKNN_IO: return "i/o error";
    case CKNN_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* cknn_version(void) { return CKNN_VERSION_STRING; }

void cknn_free_buffer(void* p) { std::free(p); }

cknn_status cknn_cloud_create(const double* coords, size_t n, size_t dim, int intrinsic_dim,
                              cknn_cloud** out) {
  return guard([&] {
    require(coords && out, "null argument");
    require(dim > 0, "dimension must be positive");
    std::optional<int> hint;
    if (intrinsic_dim > 0) hint = intrinsic_dim;
    *out = new cknn_cloud{{cknn::PointCloud(std::vector<double>(coords, coords + n * dim), dim, hint), {}, {}, {}}};
  });
}

cknn_status cknn_cloud_read_csv(const char* path, cknn_cloud** out) {
  return guard([&] {
    require(path && out, "null argument");
    *out = new cknn_cloud{{cknn::read_points_csv(path), {}, {}, {}}};
  });
}

cknn_status cknn_cloud_write_csv(const cknn_cloud* c, const char* path) {
  return guard([&] {
    require(c && path, "null argument");
    cknn::write_points_csv(path, c->data.points);
  });
}

void cknn_cloud_free(cknn_cloud* c) { delete c; }
size_t cknn_cloud_size(const cknn_cloud* c) { return c ? c->data.points.size() : 0; }
size_t cknn_cloud_dim(const cknn_cloud* c) { return c ? c->data.points.dim() : 0; }
const double* cknn_cloud_coords(const cknn_cloud* c) { return c ? c->data.points.data().data() : nullptr; }

const int* cknn_cloud_labels(const cknn_cloud* c, size_t* len) {
  if (len) *len = c ? c->data.labels.size() : 0;
  return c && !c->data.labels.empty() ? c->data.labels.data() : nullptr;
}

const double* cknn_cloud_density(const cknn_cloud* c, size_t* len) {
  if (len) *len = c ? c->data.density.size() : 0;
  return c && !c->data.density.empty() ? c->data.density.data() : nullptr;
}

const double* cknn_cloud_latent(const cknn_cloud* c, size_t* len) {
  if (len) *len = c ? c->data.latent.size() : 0;
  return c && !c->data.latent.empty() ? c->data.latent.data() : nullptr;
}

cknn_status cknn_read_values_csv(const char* path, double** values, size_t* len) {
  return guard([&] {
    require(path && values && len, "null argument");
    const auto v = cknn::read_values_csv(path);
    *values = copy_buffer(v);
    *len = v.size();
  });
}

cknn_status cknn_write_values_csv(const char* path, const double* values, size_t len) {
  return guard([&] {
    require(path && (values || len == 0), "null argument");
    cknn::write_values_csv(path, vec(values, len));
  });
}

cknn_status cknn_read_labels_csv(const char* path, int** labels, size_t* len) {
  return guard([&] {
    require(path && labels && len, "null argument");
    const auto v = cknn::read_labels_csv(path);
    *labels = copy_buffer(v);
    *len = v.size();
  });
}

cknn_status cknn_write_labels_csv(const char* path, const int* labels, size_t len) {
  return guard([&] {
    require(path && (labels || len == 0), "null argument");
    cknn::write_labels_csv(path, labels ? std::vector<int>(labels, labels + len) : std::vector<int>{});
  });
}

cknn_status cknn_dataset_from_name(const char* name, cknn_dataset* out) {
  return guard([&] {
    require(name && out, "null argument");
    for (const auto& [n, d] : kDatasets)
      if (std::strcmp(n, name) == 0) {
        *out = d;
        return;
      }
    throw cknn::InvalidParameter(std::string("unknown dataset '") + name + "'");
  });
}

const char* cknn_dataset_name(cknn_dataset d) {
  for (const auto& [n, v] : kDatasets)
    if (v == d) return n;
  return "unknown";
}

cknn_status cknn_generate(cknn_dataset d, size_t n, int m, uint64_t seed, cknn_cloud** out) {
  return guard([&] {
    require(out != nullptr, "null argument");
    cknn::Dataset ds = [&] {
      switch (d) {
        case CKNN_FIGURE_EIGHT: return cknn::gen_figure_eight(seed);
        case CKNN_CUT_GAUSSIAN_FIG5: return cknn::gen_cut_gaussian_fig5(seed);
        case CKNN_CUT_GAUSSIAN: return cknn::gen_cut_gaussian(m, n ? n : 200, seed);
        case CKNN_CUT_GAUSSIAN_1D: return cknn::gen_cut_gaussian_1d_embedded(n ? n : 200, seed);
        case CKNN_CIRCLE: return cknn::gen_uniform_circle(n ? n : 1000, seed);
        case CKNN_THREE_BOXES: return cknn::gen_three_boxes({}, seed);
        case CKNN_SPIRALS_2D:
        case CKNN_SPIRALS_3D: {
          cknn::SpiralConfig cfg;
          cfg.dim = d == CKNN_SPIRALS_3D ? 3 : 2;
          if (n) cfg.n_total = n;
          return cknn::gen_spirals(cfg, seed);
        }
      }
      throw cknn::InvalidParameter("unknown dataset");
    }();
    *out = new cknn_cloud{std::move(ds)};
  });
}

cknn_status cknn_pattern_layout(const char* kind, size_t patch, size_t* rows, size_t* cols,
                                size_t* stride) {
  return guard([&] {
    require(kind && rows && cols && stride, "null argument");
    const auto l = cknn::pattern_layout(cknn::pattern_kind_from_string(kind), patch);
    *rows = l.rows;
    *cols = l.cols;
    *stride = l.stride;
  });
}

cknn_status cknn_pattern_image(const char* kind, size_t rows, size_t cols, int gradient,
                               cknn_image** out) {
  return guard([&] {
    require(kind && out, "null argument");
    const auto k = cknn::pattern_kind_from_string(kind);
    if (rows == 0 || cols == 0) {
      const auto l = cknn::pattern_layout(k, 9);
      if (rows == 0) rows = l.rows;
      if (cols == 0) cols = l.cols;
    }
    *out = new cknn_image{cknn::gen_pattern_image(k, rows, cols, gradient != 0)};
  });
}

cknn_status cknn_image_read_pgm(const char* path, cknn_image** out) {
  return guard([&] {
    require(path && out, "null argument");
    *out = new cknn_image{cknn::read_pgm(path)};
  });
}

cknn_status cknn_image_write_pgm(const cknn_image* img, const char* path) {
  return guard([&] {
    require(img && path, "null argument");
    cknn::write_pgm(path, img->img);
  });
}

void cknn_image_free(cknn_image* img) { delete img; }

void cknn_image_size(const cknn_image* img, size_t* rows, size_t* cols) {
  if (rows) *rows = img ? img->img.rows : 0;
  if (cols) *cols = img ? img->img.cols : 0;
}

cknn_status cknn_image_decimate(const cknn_image* img, size_t factor, cknn_image** out) {
  return guard([&] {
    require(img && out, "null argument");
    *out = new cknn_image{cknn::decimate(img->img, factor)};
  });
}

cknn_status cknn_image_patches(const cknn_image* img, size_t patch, size_t stride, cknn_cloud** out) {
  return guard([&] {
    require(img && out, "null argument");
    *out = new cknn_cloud{{cknn::extract_patches(img->img, patch, stride), {}, {}, {}}};
  });
}

cknn_status cknn_method_from_name(const char* name, cknn_method* out) {
  return guard([&] {
    require(name && out, "null argument");
    const std::string s = name;
    if (s == "cknn") *out = CKNN_METHOD_CKNN;
    else if (s == "eps") *out = CKNN_METHOD_EPS;
    else if (s == "knn") *out = CKNN_METHOD_KNN;
    else if (s == "knn-and") *out = CKNN_METHOD_KNN_AND;
    else if (s == "beta") *out = CKNN_METHOD_BETA;
    else throw cknn::InvalidParameter("unknown method '" + s + "'");
  });
}

cknn_status cknn_filtration_build(const cknn_cloud* c, const cknn_filtration_params* p,
                                  cknn_filtration** out) {
  return guard([&] {
    require(c && p && out, "null argument");
    const auto d = cknn::pairwise_distances(c->data.points);
    cknn::EdgeFiltration f = [&] {
      switch (p->method) {
        case CKNN_METHOD_CKNN: return cknn::cknn_filtration(d, cknn::knn_bandwidth(d, p->k));
        case CKNN_METHOD_EPS: return cknn::fixed_eps_filtration(d);
        case CKNN_METHOD_KNN: return cknn::knn_filtration(d, false);
        case CKNN_METHOD_KNN_AND: return cknn::knn_filtration(d, true);
        case CKNN_METHOD_BETA:
          require(p->density && p->density_len == d.size(), "density must have one value per point");
          return cknn::cknn_filtration(
              d, cknn::analytic_bandwidth({vec(p->density, p->density_len)}, p->beta));
      }
      throw cknn::InvalidParameter("unknown method");
    }();
    *out = new cknn_filtration{std::move(f)};
  });
}

void cknn_filtration_free(cknn_filtration* f) { delete f; }
size_t cknn_filtration_size(const cknn_filtration* f) { return f ? f->f.size() : 0; }
size_t cknn_filtration_vertices(const cknn_filtration* f) { return f ? f->f.n_vertices() : 0; }

cknn_status cknn_filtration_edge(const cknn_filtration* f, size_t idx, uint32_t* i, uint32_t* j,
                                 double* value) {
  return guard([&] {
    require(f != nullptr, "null argument");
    require(idx < f->f.size(), "edge index out of range");
    const auto& e = f->f[idx];
    if (i) *i = e.i;
    if (j) *j = e.j;
    if (value) *value = e.value;
  });
}

size_t cknn_filtration_count_below(const cknn_filtration* f, double scale) {
  return f ? f->f.count_below(scale) : 0;
}

cknn_status cknn_filtration_write_csv(const cknn_filtration* f, const char* path) {
  return guard([&] {
    require(f && path, "null argument");
    cknn::write_edges_csv(path, f->f);
  });
}

cknn_status cknn_cluster(const cknn_filtration* f, size_t clusters, size_t* edge_count,
                         size_t* components, int* labels) {
  return guard([&] {
    require(f != nullptr, "null argument");
    const std::size_t L = cknn::binary_search_clusters(f->f, clusters);
    if (edge_count) *edge_count = L;
    const auto lab = cknn::connected_components(cknn::graph_at_count(f->f, L));
    if (components) *components = lab.n_components;
    if (labels) {
      // Smallest-member labels to dense ids 0..C-1.
      std::vector<int> dense(lab.labels.size(), -1);
      int next = 0;
      for (std::size_t v = 0; v < lab.labels.size(); ++v) {
        auto& slot = dense[static_cast<std::size_t>(lab.labels[v])];
        if (slot < 0) slot = next++;
        labels[v] = slot;
      }
    }
  });
}

cknn_status cknn_clustering_fraction(const cknn_filtration* f, const int* truth, size_t len,
                                     double* out) {
  return guard([&] {
    require(f && truth && out, "null argument");
    require(len == f->f.n_vertices(), "truth must have one label per point");
    *out = cknn::clustering_persistence_fraction(f->f, std::vector<int>(truth, truth + len));
  });
}

cknn_status cknn_persistence(const cknn_filtration* f, int max_dim, size_t cap, cknn_barcode** out) {
  return guard([&] {
    require(f && out, "null argument");
    auto b = cknn::persistent_homology(f->f, max_dim, cap ? cap : cknn::kDefaultSimplexCap);
    auto vis = b.visible();
    *out = new cknn_barcode{std::move(b), std::move(vis)};
  });
}

void cknn_barcode_free(cknn_barcode* b) { delete b; }
size_t cknn_barcode_size(const cknn_barcode* b) { return b ? b->visible.size() : 0; }

cknn_status cknn_barcode_bar(const cknn_barcode* b, size_t idx, int* dim, double* birth, double* death) {
  return guard([&] {
    require(b != nullptr, "null argument");
    require(idx < b->visible.size(), "bar index out of range");
    const auto& bar = b->visible[idx];
    if (dim) *dim = bar.dim;
    if (birth) *birth = bar.birth;
    if (death) *death = bar.death;
  });
}

cknn_status cknn_barcode_betti_at(const cknn_barcode* b, size_t edge_count, size_t* betti, size_t len) {
  return guard([&] {
    require(b && betti, "null argument");
    require(edge_count <= b->b.n_states, "edge count beyond the filtration");
    const auto v = b->b.betti_at_count(edge_count);
    require(len >= v.betti.size(), "betti buffer too small");
    for (std::size_t k = 0; k < v.betti.size(); ++k) betti[k] = v.betti[k];
  });
}

cknn_status cknn_stable_interval(const cknn_barcode* b, const cknn_filtration* f, cknn_interval* out) {
  return guard([&] {
    require(b && f && out, "null argument");
    const auto s = cknn::stable_interval(b->b, f->f);
    require(s.betti.betti.size() <= CKNN_MAX_BETTI, "too many Betti numbers");
    *out = {};
    out->first_count = s.first_count;
    out->last_count = s.last_count;
    out->fraction = s.fraction;
    out->scale_lo = s.scale_lo;
    out->scale_hi = s.scale_hi;
    out->n_betti = s.betti.betti.size();
    for (std::size_t k = 0; k < out->n_betti; ++k) out->betti[k] = s.betti.betti[k];
  });
}

cknn_status cknn_homology_fraction(const cknn_barcode* b, const size_t* target, size_t len, double* out) {
  return guard([&] {
    require(b && target && out, "null argument");
    *out = cknn::homology_persistence_fraction(b->b, {std::vector<std::size_t>(target, target + len)});
  });
}

cknn_status cknn_barcode_write_csv(const cknn_barcode* b, const char* path) {
  return guard([&] {
    require(b && path, "null argument");
    cknn::write_barcode_csv(path, b->b);
  });
}

size_t cknn_simplex_estimate(size_t n_vertices, int max_dim) {
  return cknn::simplex_estimate(n_vertices, max_dim);
}

cknn_status cknn_kernel_from_name(const char* name, cknn_kernel* out) {
  return guard([&] {
    require(name && out, "null argument");
    const std::string s = name;
    if (s == "gaussian") *out = CKNN_KERNEL_GAUSSIAN;
    else if (s == "indicator") *out = CKNN_KERNEL_INDICATOR;
    else throw cknn::InvalidParameter("unknown kernel '" + s + "'");
  });
}

cknn_status cknn_moment_constants(int m, cknn_kernel kernel, double out[4]) {
  return guard([&] {
    require(out != nullptr, "null argument");
    const auto mc = cknn::moment_constants(m, shape_of(kernel));
    out[0] = mc.m0;
    out[1] = mc.m2;
    out[2] = mc.m22;
    out[3] = mc.a;
  });
}

cknn_status cknn_spectrum(const cknn_cloud* c, const cknn_spectral_params* p, size_t n_eigs,
                          double* values, double* vectors) {
  return guard([&] {
    require(values != nullptr, "null argument");
    const auto sys = build_system(c, p);
    cknn::SpectrumOptions opt;
    opt.vectors = vectors != nullptr;
    const auto s = cknn::spectrum(sys, n_eigs, opt);
    for (std::size_t k = 0; k < n_eigs; ++k) values[k] = s.values[static_cast<long>(k)];
    if (vectors) std::memcpy(vectors, s.vectors.data(), sizeof(double) * s.vectors.size());
  });
}

cknn_status cknn_pointwise(const cknn_cloud* c, const cknn_spectral_params* p, const double* f,
                           double* out) {
  return guard([&] {
    require(f && out, "null argument");
    const auto sys = build_system(c, p);
    const Eigen::Map<const Eigen::VectorXd> fv(f, static_cast<long>(sys.size()));
    const Eigen::VectorXd r = cknn::pointwise_estimate(sys, fv);
    std::memcpy(out, r.data(), sizeof(double) * sys.size());
  });
}

cknn_status cknn_sweep_run(const cknn_sweep_params* p, cknn_sweep** out) {
  return guard([&] {
    require(p && out, "null argument");
    cknn::PowerLawConfig cfg;
    if (p->n_list) cfg.n_list.assign(p->n_list, p->n_list + p->n_list_len);
    cfg.spectral_grid = vec(p->spectral_grid, p->spectral_grid_len);
    cfg.pointwise_grid = vec(p->pointwise_grid, p->pointwise_grid_len);
    if (p->seeds) cfg.seeds.assign(p->seeds, p->seeds + p->seeds_len);
    cfg.shape = shape_of(p->kernel);
    cfg.jobs = p->jobs;
    *out = new cknn_sweep{cknn::run_power_law_experiment(cfg)};
  });
}

void cknn_sweep_free(cknn_sweep* s) { delete s; }
size_t cknn_sweep_rows(const cknn_sweep* s) { return s ? s->r.rows.size() : 0; }

size_t cknn_sweep_best_count(const cknn_sweep* s, cknn_mode mode) {
  if (!s) return 0;
  return mode == CKNN_MODE_SPECTRAL ? s->r.spectral.size() : s->r.pointwise.size();
}

cknn_status cknn_sweep_best(const cknn_sweep* s, cknn_mode mode, size_t idx, size_t* n, double* delta,
                            double* rmse) {
  return guard([&] {
    require(s != nullptr, "null argument");
    const auto& best = mode == CKNN_MODE_SPECTRAL ? s->r.spectral : s->r.pointwise;
    require(idx < best.size(), "index out of range");
    if (n) *n = best[idx].n;
    if (delta) *delta = best[idx].best_delta;
    if (rmse) *rmse = best[idx].rmse;
  });
}

double cknn_sweep_slope(const cknn_sweep* s, cknn_mode mode) {
  if (!s) return 0.0;
  return mode == CKNN_MODE_SPECTRAL ? s->r.spectral_slope : s->r.pointwise_slope;
}

cknn_status cknn_sweep_write_csv(const cknn_sweep* s, const char* path) {
  return guard([&] {
    require(s && path, "null argument");
    cknn::write_power_law_csv(path, s->r);
  });
}

cknn_status cknn_log_grid(double lo, double hi, size_t count, double* out) {
  return guard([&] {
    require(out != nullptr, "null argument");
    const auto g = cknn::log_grid(lo, hi, count);
    std::copy(g.begin(), g.end(), out);
  });
}

}  // extern "C"
