// Acceptance runner: one PASS/FAIL line per criterion. Pass criterion
// numbers as arguments to run a subset. Exit status is 0 only if every
// selected criterion passes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include "cknn/clustering.hpp"
#include "cknn/datagen.hpp"
#include "cknn/experiment.hpp"
#include "cknn/homology.hpp"
#include "cknn/spectral.hpp"
#include "support/properties.hpp"

using namespace cknn;

namespace {

constexpr int kSeeds = 10;
constexpr int kBetaSeeds = 500;
constexpr std::size_t kPatternCap = 30'000'000;
constexpr std::uint64_t kPropertySeed = 20240611;

struct Verdict {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// True if some threshold s gives graph_at_scale(f, s) a complex with Betti
// vector `target`: only edge counts m >= 1 that no tie straddles qualify.
bool reachable_at_some_scale(const Barcode& b, const EdgeFiltration& f, const BettiVector& target) {
  const auto seq = b.betti_sequence();
  for (std::size_t m = 1; m <= f.size(); ++m) {
    if (m < f.size() && f[m].value == f[m - 1].value) continue;
    if (seq[m] == target) return true;
  }
  return false;
}

EdgeFiltration cknn_of(const DistanceMatrix& d, int k) { return cknn_filtration(d, knn_bandwidth(d, k)); }

Verdict figure_eight() {
  const BettiVector want{{1, 2}};
  int cknn_ok = 0, eps_none = 0, both = 0;
  for (int s = 1; s <= kSeeds; ++s) {
    const auto d = pairwise_distances(gen_figure_eight(s).points);
    const auto f = cknn_of(d, 10);
    const bool a = stable_interval(persistent_homology(f, 2), f).betti == want;
    const auto fe = fixed_eps_filtration(d);
    const bool b = !reachable_at_some_scale(persistent_homology(fe, 2), fe, want);
    cknn_ok += a;
    eps_none += b;
    both += a && b;
  }
  return {both >= 8, fmt("CkNN stable (1,2) in %d/10, fixed-eps never (1,2) in %d/10, both in %d/10 (need 8)",
                         cknn_ok, eps_none, both)};
}

Verdict cut_gaussian() {
  const BettiVector want{{2, 1}};
  int cknn_ok = 0, eps_none = 0;
  for (int s = 1; s <= kSeeds; ++s) {
    const auto d = pairwise_distances(gen_cut_gaussian_fig5(s).points);
    const auto f = cknn_of(d, 10);
    cknn_ok += reachable_at_some_scale(persistent_homology(f, 2), f, want);
    const auto fe = fixed_eps_filtration(d);
    eps_none += !reachable_at_some_scale(persistent_homology(fe, 2), fe, want);
  }
  return {cknn_ok >= 8 && eps_none >= 6,
          fmt("CkNN reaches (2,1) in %d/10 (need 8), fixed-eps never (2,1) in %d/10 (need 6)", cknn_ok,
              eps_none)};
}

Verdict beta_sweep() {
  const std::vector<double> grid{-1.5, -1.0, -0.75, -0.5, -0.375, -0.25, -0.125};
  bool pass = true;
  std::string detail;
  for (int m : {1, 2}) {
    std::vector<double> mean(grid.size(), 0.0);
    for (int s = 1; s <= kBetaSeeds; ++s) {
      const auto ds = gen_cut_gaussian(m, 200, static_cast<std::uint64_t>(s));
      const auto d = pairwise_distances(ds.points);
      for (std::size_t g = 0; g < grid.size(); ++g) {
        const auto f = cknn_filtration(d, analytic_bandwidth(DensityValues{ds.density}, grid[g]));
        mean[g] += clustering_persistence_fraction(f, ds.labels) / kBetaSeeds;
      }
    }
    std::size_t best = 0, nearest = 0;
    for (std::size_t g = 1; g < grid.size(); ++g) {
      if (mean[g] > mean[best]) best = g;
      if (std::abs(grid[g] + 1.0 / m) < std::abs(grid[nearest] + 1.0 / m)) nearest = g;
    }
    pass = pass && best == nearest;
    detail += fmt("m=%d peak at %g (want %g) [", m, grid[best], grid[nearest]);
    for (std::size_t g = 0; g < grid.size(); ++g) detail += fmt(g ? " %.4f" : "%.4f", mean[g]);
    detail += "]; ";
  }
  return {pass, detail + fmt("%d seeds", kBetaSeeds)};
}

Verdict circle_spectrum() {
  const std::size_t n = 1000;
  const double delta = 3.0 * std::pow(static_cast<double>(n), -1.0 / 3.0);
  const double target[5] = {0, 1, 1, 4, 4};
  int ok = 0;
  double worst_rel = 0.0;
  for (int s = 1; s <= kSeeds; ++s) {
    const auto d = pairwise_distances(gen_uniform_circle(n, s).points);
    const auto sys = laplacian_system(d, BandwidthProfile::constant(n), delta, KernelShape::Indicator, 1, {},
                                      1.0 / (2.0 * std::numbers::pi));
    const auto v = spectrum(sys, 5).values;
    bool good = std::abs(v(0)) <= 0.1;
    for (int k = 1; k < 5; ++k) {
      const double rel = std::abs(v(k) - target[k]) / target[k];
      worst_rel = std::max(worst_rel, rel);
      good = good && rel <= 0.15;
    }
    ok += good;
  }
  return {ok >= 8, fmt("within tolerance in %d/10 (need 8), worst relative error %.3f", ok, worst_rel)};
}

Verdict power_laws() {
  PowerLawConfig cfg;
  cfg.n_list = {250, 500, 1000, 2000, 4000};
  cfg.spectral_grid = log_grid(0.05, 1.2, 20);
  cfg.pointwise_grid = log_grid(0.1, 2.0, 20);
  cfg.seeds = {1, 2, 3, 4, 5};
  const auto r = run_power_law_experiment(cfg);
  const bool spec_ok = std::abs(r.spectral_slope + 1.0 / 3.0) <= 0.12;
  const bool pw_ok = std::abs(r.pointwise_slope + 1.0 / 7.0) <= 0.08;
  std::string detail = fmt("spectral slope %.3f (want -0.333 +- 0.12), pointwise slope %.3f (want -0.143 +- 0.08); best delta",
                           r.spectral_slope, r.pointwise_slope);
  for (std::size_t i = 0; i < r.spectral.size(); ++i)
    detail += fmt(" N=%zu:%.3f/%.3f", r.spectral[i].n, r.spectral[i].best_delta, r.pointwise[i].best_delta);
  return {spec_ok && pw_ok, detail};
}

Verdict patterns() {
  const PatternKind kinds[] = {PatternKind::Stripes, PatternKind::Biperiodic, PatternKind::Checkerboard,
                               PatternKind::Hexagonal};
  const char* names[] = {"stripes", "biperiodic", "checkerboard", "hexagonal"};
  const std::size_t want[] = {1, 2, 2, 3};
  int flat_ok = 0, ramp_ok = 0, ramp_eps_fail = 0;
  std::string detail;
  for (int p = 0; p < 4; ++p) {
    const auto lay = pattern_layout(kinds[p], 9);
    for (bool gradient : {false, true}) {
      const auto img = gen_pattern_image(kinds[p], lay.rows, lay.cols, gradient);
      const auto d = pairwise_distances(extract_patches(img, 9, lay.stride));
      const auto f = cknn_of(d, 10);
      const auto si = stable_interval(persistent_homology(f, 2, kPatternCap), f);
      const bool ok = si.betti == BettiVector{{1, want[p]}};
      if (!gradient) {
        flat_ok += ok;
        detail += fmt("%s %s", names[p], si.betti.str().c_str());
        continue;
      }
      ramp_ok += ok;
      const auto fe = fixed_eps_filtration(d);
      const auto se = stable_interval(persistent_homology(fe, 2, kPatternCap), fe);
      ramp_eps_fail += !(se.betti == BettiVector{{1, want[p]}});
      detail += fmt("/grad %s eps %s; ", si.betti.str().c_str(), se.betti.str().c_str());
    }
  }
  return {flat_ok == 4 && ramp_ok >= 3 && ramp_eps_fail >= 2,
          detail + fmt("flat %d/4 (need 4), gradient CkNN %d/4 (need 3), gradient eps wrong %d/4 (need 2)", flat_ok,
                       ramp_ok, ramp_eps_fail)};
}

Verdict suite(const std::vector<std::pair<const char*, props::Outcome>>& parts) {
  bool pass = true;
  std::string detail;
  for (const auto& [name, o] : parts) {
    pass = pass && o.ok();
    detail += fmt("%s %zu/%zu; ", name, o.cases - o.failures, o.cases);
    if (o.failures) detail += std::string("first failure: ") + o.first_failure + "; ";
  }
  detail.resize(detail.size() - 2);
  return {pass, detail};
}

Verdict oracles() {
  return suite({{"binary search", props::binary_search_vs_linear_scan(1000, kPropertySeed)},
                {"bar snapshots", props::barcode_vs_direct_betti(200, kPropertySeed + 1)},
                {"components", props::components_vs_union_find(1000, kPropertySeed + 2)}});
}

Verdict invariants() {
  return suite({{"row sums", props::laplacian_row_sums(100, kPropertySeed + 3)},
                {"PSD", props::laplacian_psd(100, kPropertySeed + 4)},
                {"zero multiplicity", props::zero_multiplicity(100, kPropertySeed + 5)},
                {"Euler", props::euler_identity(200, kPropertySeed + 6)},
                {"scale invariance", props::cknn_scale_invariance(100, kPropertySeed + 7)}});
}

struct Criterion {
  int id;
  const char* name;
  double limit_s;
  std::function<Verdict()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {1, "figure-eight homology", 60, figure_eight},
      {2, "cut-Gaussian homology", 120, cut_gaussian},
      {3, "beta-sweep peak", 600, beta_sweep},
      {4, "circle spectrum", 120, circle_spectrum},
      {5, "bandwidth power laws", 1800, power_laws},
      {6, "pattern homology", 300, patterns},
      {7, "oracle equivalences", 600, oracles},
      {8, "numerical invariants", 600, invariants},
  };
  std::set<int> pick;
  for (int i = 1; i < argc; ++i) pick.insert(std::atoi(argv[i]));
  int failed = 0;
  for (const auto& c : all) {
    if (!pick.empty() && !pick.count(c.id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs <= c.limit_s;
    const bool pass = v.pass && in_time;
    failed += !pass;
    std::printf("%s %d %s: %s [%.1f s, limit %.0f s%s]\n", pass ? "PASS" : "FAIL", c.id, c.name, v.detail.c_str(),
                secs, c.limit_s, in_time ? "" : ", over time");
    std::fflush(stdout);
  }
  return failed ? 1 : 0;
}
