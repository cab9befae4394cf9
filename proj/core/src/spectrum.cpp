// spectrum.cpp — bracket scan, counted rescue, dual-confirmed refinement
#include "rabicf/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "coeff_kernel.hpp"
#include "rabicf/errors.hpp"
#include "rabicf/recurrence.hpp"

namespace rabicf::spectrum {

namespace {

int sign_of(double x) { return (x > 0.0) - (x < 0.0); }

// One spectral-function sample; sign = 0 stands for "not usable here".
struct ProbedPoint {
  double e = 0.0;
  double f = 0.0;
  bool usable = false;
  int sign = 0;
};

ProbedPoint probe(const model::ModelParams& params, const model::SectorLabel& sector, double e,
                  const SpectrumOptions& opt) {
  ProbedPoint p;
  p.e = e;
  try {
    const auto r = contfrac::spectral_function(params, sector, e, opt.cf);
    p.f = r.value;
    p.usable = r.converged && !r.suspected_pole && std::isfinite(r.value);
  } catch (const NoConvergence&) {
    p.usable = false;
  }
  p.sign = p.usable ? sign_of(p.f) : 0;
  return p;
}

// Truncation depth whose low spectrum is converged far beyond e_max: twice
// the index where the operator diagonal passes e_max, plus slack.
std::size_t pivot_depth(const model::ModelParams& params, const model::SectorLabel& sector,
                        double e_max) {
  const auto kern = recurrence::detail::CoeffKernel::make(params, sector, 0.0);
  const double ceiling = e_max + std::abs(params.delta);
  std::size_t n = 0;
  while (n < 400000 && kern.poly_lead(n) - std::abs(params.delta) <= ceiling) {
    ++n;
  }
  return 2 * n + 64;
}

double resolution_floor(double omega, double lo, double hi) {
  return 16.0 * std::numeric_limits<double>::epsilon() *
         std::max({omega, std::abs(lo), std::abs(hi)});
}

}  // namespace

std::vector<EnergyBracket> scan_brackets(const model::ModelParams& params,
                                         const model::SectorLabel& sector, double e_min,
                                         double e_max, int grid_points,
                                         const SpectrumOptions& opt, ScanDiagnostics* diag) {
  if (!(e_min < e_max)) {
    throw std::invalid_argument("scan_brackets: need e_min < e_max");
  }
  if (grid_points < 16) {
    throw std::invalid_argument("scan_brackets: need at least 16 grid points");
  }

  std::vector<ProbedPoint> pts(static_cast<std::size_t>(grid_points));
  const double step = (e_max - e_min) / static_cast<double>(grid_points - 1);
  for (int i = 0; i < grid_points; ++i) {
    pts[static_cast<std::size_t>(i)] = probe(params, sector, e_min + step * i, opt);
  }

  std::vector<EnergyBracket> brackets;
  int rejected = 0;
  for (int i = 0; i + 1 < grid_points; ++i) {
    const ProbedPoint& a = pts[static_cast<std::size_t>(i)];
    const ProbedPoint& b = pts[static_cast<std::size_t>(i + 1)];
    const bool crossing = sign_of(a.f) * sign_of(b.f) < 0;
    if (!crossing) {
      continue;
    }
    if (a.usable && b.usable) {
      brackets.push_back({a.e, b.e, a.f, b.f});
    } else {
      ++rejected;
    }
  }
  if (diag != nullptr) {
    diag->grid_points = grid_points;
    diag->brackets_found = static_cast<int>(brackets.size());
    diag->rejected_pole_crossings = rejected;
  }
  return brackets;
}

Eigenvalue refine_root(const model::ModelParams& params, const model::SectorLabel& sector,
                       const EnergyBracket& bracket, const SpectrumOptions& opt) {
  double a = bracket.lo;
  double b = bracket.hi;
  double fa = bracket.f_lo;
  double fb = bracket.f_hi;
  if (!(a < b) || sign_of(fa) * sign_of(fb) >= 0) {
    throw std::invalid_argument("refine_root: not a sign-change bracket");
  }
  const double width_target = opt.tol_refine * params.omega;
  // Drive |F| below half the confirmation bound, not just the width: a zero
  // at distance delta from its pole has |F'| ~ 1/delta there, so a fixed
  // width can leave |F| orders of magnitude above tol_confirm.
  const double f_target = 0.5 * opt.tol_confirm;

  auto eval = [&](double e) { return contfrac::spectral_function(params, sector, e, opt.cf).value; };

  double best_e = std::abs(fa) <= std::abs(fb) ? a : b;
  double best_f = std::abs(fa) <= std::abs(fb) ? fa : fb;

  int iters = 0;
  while (b - a > width_target || std::abs(best_f) > f_target) {
    if (b - a <= resolution_floor(params.omega, a, b)) {
      break;  // bracket at double resolution; the residual check decides
    }
    if (++iters > opt.max_refine_iters) {
      throw NoConvergence("refine_root: bracket still " + std::to_string(b - a) + " wide after " +
                          std::to_string(opt.max_refine_iters) + " iterations");
    }
    // Secant proposal on even iterations, accepted only when it lands
    // comfortably inside; bisection otherwise keeps the worst case bounded.
    double mid = 0.5 * (a + b);
    if (iters % 2 == 0 && fb != fa) {
      const double xs = (a * fb - b * fa) / (fb - fa);
      const double margin = 0.01 * (b - a);
      if (xs > a + margin && xs < b - margin) {
        mid = xs;
      }
    }
    const double fm = eval(mid);
    if (std::abs(fm) < std::abs(best_f)) {
      best_e = mid;
      best_f = fm;
    }
    if (fm == 0.0) {
      break;
    }
    if (sign_of(fm) == sign_of(fa)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
      fb = fm;
    }
  }

  Eigenvalue ev;
  ev.energy = best_e;
  ev.sector = sector;
  ev.f_residual = std::abs(best_f);
  ev.pincherle_residual = recurrence::pincherle_residual(params, sector, ev.energy);
  if (!(ev.f_residual <= opt.tol_confirm) || !(ev.pincherle_residual <= opt.tol_confirm)) {
    throw PoleArtifact("refine_root: sign change at E = " + std::to_string(ev.energy) +
                       " failed dual confirmation (|F| " + std::to_string(ev.f_residual) +
                       ", minimal-solution residual " + std::to_string(ev.pincherle_residual) +
                       ")");
  }
  return ev;
}

SpectrumResult compute_spectrum(const model::ModelParams& params,
                                const model::SectorLabel& sector, double e_min, double e_max,
                                int grid_points, const SpectrumOptions& opt) {
  SpectrumResult result;
  result.params = params;
  result.sector = sector;
  result.e_min = e_min;
  result.e_max = e_max;

  auto brackets =
      scan_brackets(params, sector, e_min, e_max, grid_points, opt, &result.diagnostics);

  // Level-count pass: how many truncated-operator levels each grid cell must
  // hold. A cell showing fewer sign changes than levels hides a zero-pole
  // pair, invisible to any uniform grid because the pair's far field carries
  // only an O(separation) trace of it.
  const double step = (e_max - e_min) / static_cast<double>(grid_points - 1);
  const std::size_t depth = pivot_depth(params, sector, e_max);
  std::vector<std::size_t> cnt(static_cast<std::size_t>(grid_points));
  for (int i = 0; i < grid_points; ++i) {
    cnt[static_cast<std::size_t>(i)] =
        recurrence::levels_below(params, sector, e_min + step * i, depth);
  }
  result.diagnostics.expected_levels = static_cast<int>(cnt.back() - cnt.front());

  std::vector<int> in_cell(static_cast<std::size_t>(grid_points - 1), 0);
  for (const auto& br : brackets) {
    const auto idx = static_cast<std::size_t>(std::clamp<long long>(
        std::llround((br.lo - e_min) / step), 0, grid_points - 2));
    ++in_cell[idx];
  }

  // Counted bisection inside every short-handed cell: split multi-level
  // ranges by the count, then shrink each single-level range around its
  // level until the spectral function changes sign across clean endpoints.
  // The count jumps at the zero only — the pole belongs to the shifted
  // operator — so the shrink always ends astride the zero, with the pole
  // left outside.
  struct CountRange {
    double lo, hi;
    std::size_t clo, chi;
  };
  std::vector<CountRange> work;
  for (int i = 0; i + 1 < grid_points; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    const std::size_t inc = cnt[ui + 1] - cnt[ui];
    if (static_cast<int>(inc) > in_cell[ui]) {
      work.push_back({e_min + step * i, e_min + step * (i + 1), cnt[ui], cnt[ui + 1]});
    }
  }
  while (!work.empty()) {
    CountRange r = work.back();
    work.pop_back();
    const std::size_t m = r.chi - r.clo;
    if (m == 0) {
      continue;
    }
    if (m > 1) {
      const double mid = 0.5 * (r.lo + r.hi);
      const std::size_t cmid = recurrence::levels_below(params, sector, mid, depth);
      work.push_back({r.lo, mid, r.clo, cmid});
      work.push_back({mid, r.hi, cmid, r.chi});
      continue;
    }
    ProbedPoint pl = probe(params, sector, r.lo, opt);
    ProbedPoint ph = probe(params, sector, r.hi, opt);
    while (true) {
      if (pl.sign * ph.sign < 0) {
        brackets.push_back({pl.e, ph.e, pl.f, ph.f});
        ++result.diagnostics.rescued_brackets;
        break;
      }
      if (r.hi - r.lo <= resolution_floor(params.omega, r.lo, r.hi)) {
        ++result.diagnostics.unresolved_cells;
        break;
      }
      const double mid = 0.5 * (r.lo + r.hi);
      const std::size_t cmid = recurrence::levels_below(params, sector, mid, depth);
      if (cmid > r.clo) {
        r.hi = mid;
        r.chi = cmid;
        ph = probe(params, sector, mid, opt);
      } else {
        r.lo = mid;
        r.clo = cmid;
        pl = probe(params, sector, mid, opt);
      }
    }
  }

  for (const auto& br : brackets) {
    try {
      result.eigenvalues.push_back(refine_root(params, sector, br, opt));
    } catch (const PoleArtifact&) {
      ++result.diagnostics.rejected_pole_roots;
    } catch (const NoConvergence&) {
      ++result.diagnostics.refine_failures;
    }
  }
  std::sort(result.eigenvalues.begin(), result.eigenvalues.end(),
            [](const Eigenvalue& x, const Eigenvalue& y) { return x.energy < y.energy; });

  // Merge near-coincident roots (a rescued bracket can duplicate a scanned
  // one, and a pole on a grid point can hand the same eigenvalue to two
  // adjacent brackets); keep the better-confirmed one.
  const double merge_width = 10.0 * opt.tol_refine * params.omega;
  std::vector<Eigenvalue> merged;
  for (const auto& ev : result.eigenvalues) {
    if (!merged.empty() && ev.energy - merged.back().energy < merge_width) {
      if (ev.pincherle_residual < merged.back().pincherle_residual) {
        merged.back() = ev;
      }
      continue;
    }
    merged.push_back(ev);
  }
  result.eigenvalues = std::move(merged);
  return result;
}

CrosscheckReport crosscheck_oracle(SpectrumResult& result,
                                   const std::vector<double>& oracle_levels,
                                   double match_tol) {
  if (!std::is_sorted(oracle_levels.begin(), oracle_levels.end())) {
    throw std::invalid_argument("crosscheck_oracle: oracle levels must be ascending");
  }
  CrosscheckReport report;
  const double tol = match_tol * result.params.omega;
  std::size_t j = 0;  // next oracle level still available for matching
  std::vector<bool> used(oracle_levels.size(), false);
  for (auto& ev : result.eigenvalues) {
    if (oracle_levels.empty()) {
      ev.oracle_gap.reset();
      report.unmatched_spectrum.push_back(ev.energy);
      continue;
    }
    if (j >= oracle_levels.size()) {
      ev.oracle_gap = ev.energy - oracle_levels.back();
      report.unmatched_spectrum.push_back(ev.energy);
      continue;
    }
    while (j + 1 < oracle_levels.size() &&
           std::abs(oracle_levels[j + 1] - ev.energy) < std::abs(oracle_levels[j] - ev.energy)) {
      ++j;
    }
    const double gap = ev.energy - oracle_levels[j];
    ev.oracle_gap = gap;
    if (std::abs(gap) <= tol) {
      used[j] = true;
      ++j;  // consume: each oracle level matches at most one root
      ++report.matched;
      report.max_abs_gap = std::max(report.max_abs_gap, std::abs(gap));
    } else {
      report.unmatched_spectrum.push_back(ev.energy);
    }
  }
  for (std::size_t i = 0; i < oracle_levels.size(); ++i) {
    if (!used[i] && oracle_levels[i] >= result.e_min && oracle_levels[i] <= result.e_max) {
      report.unmatched_oracle.push_back(oracle_levels[i]);
    }
  }
  return report;
}

double default_window_top(const model::ModelParams& params, const model::Rational& block,
                          int levels) {
  return 2.0 * params.omega * (static_cast<double>(levels) + 2.0 * block.value());
}

}  // namespace rabicf::spectrum
