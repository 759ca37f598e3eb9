// Command-line front end. Talks to the library only through cknn.h.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cknn/cknn.h"

using json = nlohmann::json;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitValidation = 2;
constexpr int kExitResource = 3;

struct Failure {
  int code;
  std::string message;
};

int exit_code(cknn_status s) {
  switch (s) {
    case CKNN_OK: return 0;
    case CKNN_INVALID_INPUT:
    case CKNN_INVALID_PARAMETER:
    case CKNN_DEGENERATE_BANDWIDTH:
    case CKNN_CONTRACT: return kExitValidation;
    case CKNN_RESOURCE_LIMIT: return kExitResource;
    default: return kExitFailure;
  }
}

void check(cknn_status s) {
  if (s != CKNN_OK) throw Failure{exit_code(s), std::string(cknn_status_string(s)) + ": " + cknn_last_error()};
}

[[noreturn]] void invalid(const std::string& msg) { throw Failure{kExitValidation, msg}; }

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Cloud = std::unique_ptr<cknn_cloud, Deleter<cknn_cloud, cknn_cloud_free>>;
using Filtration = std::unique_ptr<cknn_filtration, Deleter<cknn_filtration, cknn_filtration_free>>;
using BarcodePtr = std::unique_ptr<cknn_barcode, Deleter<cknn_barcode, cknn_barcode_free>>;
using Image = std::unique_ptr<cknn_image, Deleter<cknn_image, cknn_image_free>>;
using Sweep = std::unique_ptr<cknn_sweep, Deleter<cknn_sweep, cknn_sweep_free>>;

Cloud load_points(const std::string& path) {
  cknn_cloud* c = nullptr;
  check(cknn_cloud_read_csv(path.c_str(), &c));
  return Cloud(c);
}

std::vector<double> load_values(const std::string& path) {
  double* v = nullptr;
  size_t n = 0;
  check(cknn_read_values_csv(path.c_str(), &v, &n));
  std::vector<double> out(v, v + n);
  cknn_free_buffer(v);
  return out;
}

std::string stem_of(const std::string& path) {
  const auto dot = path.rfind('.');
  const auto slash = path.rfind('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path;
  return path.substr(0, dot);
}

void write_meta(const std::string& out, const json& j) {
  const std::string path = out + ".meta.json";
  std::ofstream f(path);
  f << j.dump(2) << '\n';
  if (!f) throw Failure{kExitFailure, "cannot write " + path};
}

std::string betti_str(const size_t* b, size_t n) {
  std::string s = "(";
  for (size_t k = 0; k < n; ++k) s += (k ? "," : "") + std::to_string(b[k]);
  return s + ")";
}

// Number or lo:hi:count (log spaced).
std::vector<double> parse_grid(const std::string& s) {
  std::vector<double> out;
  if (s.find(':') != std::string::npos) {
    double lo, hi;
    size_t count;
    char c1, c2;
    std::istringstream in(s);
    if (!(in >> lo >> c1 >> hi >> c2 >> count) || c1 != ':' || c2 != ':') invalid("bad grid '" + s + "'");
    out.resize(count);
    check(cknn_log_grid(lo, hi, count, out.data()));
    return out;
  }
  std::istringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    try {
      out.push_back(std::stod(tok));
    } catch (const std::exception&) {
      invalid("bad number '" + tok + "' in grid");
    }
  }
  if (out.empty()) invalid("empty grid");
  return out;
}

template <class T>
std::vector<T> parse_list(const std::string& s, const char* what) {
  std::vector<T> out;
  std::istringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      out.push_back(static_cast<T>(v));
    } catch (const std::exception&) {
      invalid(std::string("bad ") + what + " '" + tok + "'");
    }
  }
  if (out.empty()) invalid(std::string("empty ") + what + " list");
  return out;
}

struct GraphOptions {
  std::string points;
  std::string method = "cknn";
  int k = 10;
  double beta = -0.5;
  std::string density;
};

void add_graph_options(CLI::App* cmd, GraphOptions& g) {
  cmd->add_option("--points", g.points, "points CSV")->required();
  cmd->add_option("--method", g.method, "cknn, eps, knn, knn-and or beta")
      ->check(CLI::IsMember({"cknn", "eps", "knn", "knn-and", "beta"}));
  cmd->add_option("--k", g.k, "neighbour index for cknn")->check(CLI::PositiveNumber);
  cmd->add_option("--beta", g.beta, "exponent for rho = q^beta (method beta)");
  cmd->add_option("--density", g.density, "density values CSV (method beta)");
}

json graph_json(const GraphOptions& g) {
  json j = {{"points", g.points}, {"method", g.method}};
  if (g.method == "cknn") j["k"] = g.k;
  if (g.method == "beta") j.update({{"beta", g.beta}, {"density", g.density}});
  return j;
}

Filtration build_filtration(const cknn_cloud* cloud, const GraphOptions& g, std::vector<double>& density) {
  cknn_filtration_params p{};
  check(cknn_method_from_name(g.method.c_str(), &p.method));
  p.k = g.k;
  p.beta = g.beta;
  if (p.method == CKNN_METHOD_BETA) {
    if (g.density.empty()) invalid("--method beta needs --density");
    density = load_values(g.density);
    p.density = density.data();
    p.density_len = density.size();
  }
  if (p.method == CKNN_METHOD_CKNN && static_cast<size_t>(g.k) >= cknn_cloud_size(cloud))
    invalid("--k must be smaller than the number of points");
  cknn_filtration* f = nullptr;
  check(cknn_filtration_build(cloud, &p, &f));
  return Filtration(f);
}

// ---- datagen ----

struct DatagenOptions {
  std::string dataset;
  std::string out;
  size_t n = 0;
  int m = 2;
  uint64_t seed = 1;
  bool gradient = false;
  std::string image_out;
};

const char* kPatterns[] = {"stripes", "biperiodic", "checkerboard", "hexagonal"};

bool is_pattern(const std::string& s) {
  for (const char* p : kPatterns)
    if (s == p) return true;
  return false;
}

int run_datagen(const DatagenOptions& o) {
  const std::string out = o.out.empty() ? o.dataset + ".csv" : o.out;
  json meta = {{"command", "datagen"}, {"dataset", o.dataset}, {"out", out}, {"version", cknn_version()}};
  Cloud cloud;
  if (is_pattern(o.dataset)) {
    size_t rows, cols, stride;
    check(cknn_pattern_layout(o.dataset.c_str(), 9, &rows, &cols, &stride));
    cknn_image* img = nullptr;
    check(cknn_pattern_image(o.dataset.c_str(), rows, cols, o.gradient, &img));
    Image image(img);
    if (!o.image_out.empty()) check(cknn_image_write_pgm(image.get(), o.image_out.c_str()));
    cknn_cloud* c = nullptr;
    check(cknn_image_patches(image.get(), 9, stride, &c));
    cloud.reset(c);
    meta.update({{"gradient", o.gradient}, {"image_rows", rows}, {"image_cols", cols}, {"patch", 9},
                 {"stride", stride}});
  } else {
    cknn_dataset d;
    check(cknn_dataset_from_name(o.dataset.c_str(), &d));
    if (d == CKNN_CUT_GAUSSIAN && o.m < 1) invalid("--m must be at least 1");
    cknn_cloud* c = nullptr;
    check(cknn_generate(d, o.n, o.m, o.seed, &c));
    cloud.reset(c);
    meta.update({{"seed", o.seed}, {"n_requested", o.n}, {"m", o.m}});
  }
  check(cknn_cloud_write_csv(cloud.get(), out.c_str()));
  size_t len = 0;
  if (const int* labels = cknn_cloud_labels(cloud.get(), &len)) {
    const std::string path = stem_of(out) + ".labels.csv";
    check(cknn_write_labels_csv(path.c_str(), labels, len));
    meta["labels"] = path;
  }
  if (const double* q = cknn_cloud_density(cloud.get(), &len)) {
    const std::string path = stem_of(out) + ".density.csv";
    check(cknn_write_values_csv(path.c_str(), q, len));
    meta["density"] = path;
  }
  meta.update({{"N", cknn_cloud_size(cloud.get())}, {"n", cknn_cloud_dim(cloud.get())}});
  write_meta(out, meta);
  std::printf("%s: N=%zu n=%zu seed=%llu -> %s\n", o.dataset.c_str(), cknn_cloud_size(cloud.get()),
              cknn_cloud_dim(cloud.get()), static_cast<unsigned long long>(o.seed), out.c_str());
  return 0;
}

// ---- persist ----

struct PersistOptions {
  GraphOptions graph;
  int max_dim = 2;
  size_t cap = 0;
  std::string out = "barcode.csv";
};

int run_persist(const PersistOptions& o) {
  if (o.max_dim < 1 || o.max_dim > CKNN_MAX_BETTI) invalid("--max-dim must be in [1, 8]");
  Cloud cloud = load_points(o.graph.points);
  std::vector<double> density;
  Filtration f = build_filtration(cloud.get(), o.graph, density);
  cknn_barcode* b = nullptr;
  check(cknn_persistence(f.get(), o.max_dim, o.cap, &b));
  BarcodePtr bar(b);
  check(cknn_barcode_write_csv(bar.get(), o.out.c_str()));
  cknn_interval iv;
  check(cknn_stable_interval(bar.get(), f.get(), &iv));

  json meta = {{"command", "persist"}, {"version", cknn_version()}, {"graph", graph_json(o.graph)},
               {"max_dim", o.max_dim}, {"cap", o.cap}, {"out", o.out},
               {"N", cknn_cloud_size(cloud.get())}, {"edges", cknn_filtration_size(f.get())},
               {"bars", cknn_barcode_size(bar.get())}};
  meta["stable_interval"] = {{"first_count", iv.first_count}, {"last_count", iv.last_count},
                             {"fraction", iv.fraction}, {"betti", std::vector<size_t>(iv.betti, iv.betti + iv.n_betti)},
                             {"scale_lo", iv.scale_lo},
                             {"scale_hi", std::isinf(iv.scale_hi) ? json("inf") : json(iv.scale_hi)}};
  write_meta(o.out, meta);
  std::printf("stable interval: betti %s, edges %zu..%zu (%.4f of pairs), scale (%.6g, %.6g]\n",
              betti_str(iv.betti, iv.n_betti).c_str(), iv.first_count, iv.last_count, iv.fraction,
              iv.scale_lo, iv.scale_hi);
  return 0;
}

// ---- cluster ----

struct ClusterOptions {
  GraphOptions graph;
  size_t clusters = 2;
  std::string out = "labels.csv";
};

int run_cluster(const ClusterOptions& o) {
  Cloud cloud = load_points(o.graph.points);
  const size_t n = cknn_cloud_size(cloud.get());
  if (o.clusters < 1 || o.clusters > n) invalid("--clusters must be in [1, N]");
  std::vector<double> density;
  Filtration f = build_filtration(cloud.get(), o.graph, density);
  size_t edges = 0, comps = 0;
  std::vector<int> labels(n);
  check(cknn_cluster(f.get(), o.clusters, &edges, &comps, labels.data()));
  check(cknn_write_labels_csv(o.out.c_str(), labels.data(), labels.size()));
  json meta = {{"command", "cluster"}, {"version", cknn_version()}, {"graph", graph_json(o.graph)},
               {"clusters", o.clusters}, {"out", o.out}, {"N", n}, {"edge_count", edges},
               {"components", comps}};
  write_meta(o.out, meta);
  std::printf("edge count %zu, %zu components\n", edges, comps);
  return 0;
}

// ---- spectrum ----

struct SpectrumOptions {
  std::string points;
  std::string kernel = "indicator";
  std::string delta = "auto-spectral";
  int m = 1;
  size_t num = 5;
  std::string bandwidth = "constant";
  int k = 10;
  double beta = -0.5;
  std::string density;
  std::string mu;
  double density_scale = 1.0;
  std::string out = "spectrum.csv";
};

// Power laws for the optimal bandwidth with unit prefactor 3.
double auto_delta(const std::string& mode, size_t n, int m) {
  const double N = static_cast<double>(n);
  if (mode == "auto-spectral") return 3.0 * std::pow(N, m == 1 ? -1.0 / 3.0 : -2.0 / (m + 6.0));
  return 3.0 * std::pow(N, -1.0 / (m + 6.0));
}

int run_spectrum(const SpectrumOptions& o) {
  if (o.m < 1) invalid("--m must be at least 1");
  if (o.num < 1) invalid("--num must be positive");
  if (o.density_scale <= 0.0) invalid("--density-scale must be positive");
  Cloud cloud = load_points(o.points);
  const size_t n = cknn_cloud_size(cloud.get());
  if (o.num > n) invalid("--num exceeds the number of points");

  double delta;
  if (o.delta == "auto-spectral" || o.delta == "auto-pointwise") {
    delta = auto_delta(o.delta, n, o.m);
  } else {
    try {
      std::size_t used = 0;
      delta = std::stod(o.delta, &used);
      if (used != o.delta.size()) throw std::invalid_argument(o.delta);
    } catch (const std::exception&) {
      invalid("--delta must be a number, auto-spectral or auto-pointwise");
    }
    if (!(delta > 0.0)) invalid("--delta must be positive");
  }

  cknn_spectral_params p{};
  check(cknn_kernel_from_name(o.kernel.c_str(), &p.kernel));
  p.delta = delta;
  p.m = o.m;
  p.k = o.k;
  p.beta = o.beta;
  p.density_scale = o.density_scale;
  std::vector<double> density, mu;
  if (o.bandwidth == "constant") {
    p.bandwidth = CKNN_BANDWIDTH_CONSTANT;
  } else if (o.bandwidth == "knn") {
    p.bandwidth = CKNN_BANDWIDTH_KNN;
    if (o.k < 1 || static_cast<size_t>(o.k) >= n) invalid("--k must be in [1, N-1]");
  } else {
    p.bandwidth = CKNN_BANDWIDTH_DENSITY;
    if (o.density.empty()) invalid("--bandwidth density needs --density");
    density = load_values(o.density);
    p.density = density.data();
    p.density_len = density.size();
  }
  if (!o.mu.empty()) {
    mu = load_values(o.mu);
    p.mu = mu.data();
    p.mu_len = mu.size();
  }

  std::vector<double> values(o.num);
  check(cknn_spectrum(cloud.get(), &p, o.num, values.data(), nullptr));
  std::ofstream f(o.out);
  f << "index,eigenvalue\n";
  char buf[64];
  for (size_t k = 0; k < values.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.17g", values[k]);
    f << k << ',' << buf << '\n';
  }
  if (!f) throw Failure{kExitFailure, "cannot write " + o.out};

  json meta = {{"command", "spectrum"}, {"version", cknn_version()}, {"points", o.points},
               {"kernel", o.kernel}, {"delta", delta}, {"delta_rule", o.delta}, {"m", o.m},
               {"num", o.num}, {"bandwidth", o.bandwidth}, {"density_scale", o.density_scale},
               {"out", o.out}, {"N", n}, {"eigenvalues", values}};
  if (o.bandwidth == "knn") meta["k"] = o.k;
  if (o.bandwidth == "density") meta.update({{"beta", o.beta}, {"density", o.density}});
  if (!o.mu.empty()) meta["mu"] = o.mu;
  write_meta(o.out, meta);
  std::printf("delta %.6g, eigenvalues:", delta);
  for (double v : values) std::printf(" %.6g", v);
  std::printf("\n");
  return 0;
}

// ---- sweep ----

struct SweepOptions {
  std::string n_list = "250,500,1000,2000,4000";
  std::string seeds = "1,2,3,4,5";
  std::string spectral_grid = "0.05:1.2:20";
  std::string pointwise_grid = "0.1:2.0:20";
  std::string kernel = "indicator";
  int jobs = 1;
  std::string out = "sweep.csv";
};

int run_sweep(const SweepOptions& o) {
  const auto ns = parse_list<size_t>(o.n_list, "N");
  const auto seeds = parse_list<uint64_t>(o.seeds, "seed");
  const auto sg = o.spectral_grid.empty() ? std::vector<double>{} : parse_grid(o.spectral_grid);
  const auto pg = o.pointwise_grid.empty() ? std::vector<double>{} : parse_grid(o.pointwise_grid);
  if (o.jobs < 1) invalid("--jobs must be positive");
  cknn_sweep_params p{};
  p.n_list = ns.data();
  p.n_list_len = ns.size();
  p.spectral_grid = sg.data();
  p.spectral_grid_len = sg.size();
  p.pointwise_grid = pg.data();
  p.pointwise_grid_len = pg.size();
  p.seeds = seeds.data();
  p.seeds_len = seeds.size();
  p.jobs = o.jobs;
  check(cknn_kernel_from_name(o.kernel.c_str(), &p.kernel));
  cknn_sweep* s = nullptr;
  check(cknn_sweep_run(&p, &s));
  Sweep sweep(s);
  check(cknn_sweep_write_csv(sweep.get(), o.out.c_str()));

  json meta = {{"command", "sweep"}, {"version", cknn_version()}, {"n_list", ns}, {"seeds", seeds},
               {"spectral_grid", sg}, {"pointwise_grid", pg}, {"kernel", o.kernel}, {"jobs", o.jobs},
               {"out", o.out}, {"rows", cknn_sweep_rows(sweep.get())}};
  for (auto [mode, name] : {std::pair{CKNN_MODE_SPECTRAL, "spectral"}, std::pair{CKNN_MODE_POINTWISE, "pointwise"}}) {
    json best = json::array();
    for (size_t i = 0; i < cknn_sweep_best_count(sweep.get(), mode); ++i) {
      size_t n;
      double d, r;
      check(cknn_sweep_best(sweep.get(), mode, i, &n, &d, &r));
      best.push_back({{"N", n}, {"best_delta", d}, {"rmse", r}});
    }
    if (best.empty()) continue;
    const double slope = cknn_sweep_slope(sweep.get(), mode);
    meta[name] = {{"best", best}, {"slope", slope}};
    std::printf("%s slope %.4f\n", name, slope);
  }
  write_meta(o.out, meta);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CkNN graphs, persistent homology and graph Laplacians"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(cknn_version()));

  DatagenOptions dg;
  auto* c_dg = app.add_subcommand("datagen", "generate a dataset");
  c_dg->add_option("dataset", dg.dataset,
                   "figure-eight, cut-gaussian-fig5, cut-gaussian, cut-gaussian-1d, circle, three-boxes, "
                   "spirals-2d, spirals-3d, stripes, biperiodic, checkerboard, hexagonal")
      ->required();
  c_dg->add_option("--out", dg.out, "points CSV (default <dataset>.csv)");
  c_dg->add_option("--n", dg.n, "number of points (0 = generator default)");
  c_dg->add_option("--m", dg.m, "dimension for cut-gaussian");
  c_dg->add_option("--seed", dg.seed, "random seed");
  c_dg->add_flag("--gradient", dg.gradient, "add a brightness gradient (patterns)");
  c_dg->add_option("--image", dg.image_out, "also write the pattern image as PGM");

  PersistOptions ps;
  auto* c_ps = app.add_subcommand("persist", "persistent homology of a filtration");
  add_graph_options(c_ps, ps.graph);
  c_ps->add_option("--max-dim", ps.max_dim, "largest simplex dimension (Betti up to max-dim - 1)");
  c_ps->add_option("--cap", ps.cap, "simplex cap (0 = default 5e6)");
  c_ps->add_option("--out", ps.out, "barcode CSV");

  ClusterOptions cl;
  auto* c_cl = app.add_subcommand("cluster", "binary-search clustering");
  add_graph_options(c_cl, cl.graph);
  c_cl->add_option("--clusters", cl.clusters, "target number of clusters")->required();
  c_cl->add_option("--out", cl.out, "labels CSV");

  SpectrumOptions sp;
  auto* c_sp = app.add_subcommand("spectrum", "smallest generalized Laplacian eigenvalues");
  c_sp->add_option("--points", sp.points, "points CSV")->required();
  c_sp->add_option("--kernel", sp.kernel, "indicator or gaussian")->check(CLI::IsMember({"indicator", "gaussian"}));
  c_sp->add_option("--delta", sp.delta, "bandwidth, auto-spectral or auto-pointwise");
  c_sp->add_option("--m", sp.m, "intrinsic dimension");
  c_sp->add_option("--num", sp.num, "number of eigenvalues");
  c_sp->add_option("--bandwidth", sp.bandwidth, "constant, knn or density")
      ->check(CLI::IsMember({"constant", "knn", "density"}));
  c_sp->add_option("--k", sp.k, "neighbour index for --bandwidth knn");
  c_sp->add_option("--beta", sp.beta, "exponent for --bandwidth density");
  c_sp->add_option("--density", sp.density, "density values CSV");
  c_sp->add_option("--mu", sp.mu, "spectral weights CSV (default all ones)");
  c_sp->add_option("--density-scale", sp.density_scale, "known constant density folded into c");
  c_sp->add_option("--out", sp.out, "eigenvalue CSV");

  SweepOptions sw;
  auto* c_sw = app.add_subcommand("sweep", "optimal bandwidth sweep on the unit circle");
  c_sw->add_option("--n-list", sw.n_list, "comma-separated N values");
  c_sw->add_option("--seeds", sw.seeds, "comma-separated seeds");
  c_sw->add_option("--spectral-grid", sw.spectral_grid, "lo:hi:count or comma list");
  c_sw->add_option("--pointwise-grid", sw.pointwise_grid, "lo:hi:count or comma list");
  c_sw->add_option("--kernel", sw.kernel, "indicator or gaussian")->check(CLI::IsMember({"indicator", "gaussian"}));
  c_sw->add_option("--jobs", sw.jobs, "worker threads");
  c_sw->add_option("--out", sw.out, "long-format CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitValidation;
  }

  try {
    if (c_dg->parsed()) return run_datagen(dg);
    if (c_ps->parsed()) return run_persist(ps);
    if (c_cl->parsed()) return run_cluster(cl);
    if (c_sp->parsed()) return run_spectrum(sp);
    if (c_sw->parsed()) return run_sweep(sw);
  } catch (const Failure& f) {
    std::fprintf(stderr, "error: %s\n", f.message.c_str());
    return f.code;
  }
  return kExitFailure;
}
