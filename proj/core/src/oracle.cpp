// oracle.cpp — tridiagonal builders, QL and Jacobi eigensolvers
#include "rabicf/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rabicf/errors.hpp"

namespace rabicf::oracle {

namespace {

double sector_sign(model::Parity p, std::size_t n) {
  const double alt = (n % 2 == 0) ? 1.0 : -1.0;
  return model::parity_sign(p) * alt;
}

// Ladder matrix elements of one sector. The k-photon off-diagonal product is
// accumulated in log space so large n and large k cannot overflow.
double offdiag_at(const model::ModelParams& p, double kappa, int r, std::size_t n) {
  if (p.family == model::Family::TwoMode) {
    const double m = static_cast<double>(n);
    return p.g * std::sqrt((m + 1.0) * (m + 2.0 * kappa));
  }
  double log_prod = 0.0;
  const double base = static_cast<double>(p.k) * static_cast<double>(n) + r;
  for (int i = 1; i <= p.k; ++i) {
    log_prod += std::log(base + i);
  }
  return p.g * std::exp(0.5 * log_prod);
}

double diag_at(const model::ModelParams& p, double kappa, int r, std::size_t n) {
  const double m = static_cast<double>(n);
  if (p.family == model::Family::TwoMode) {
    return 2.0 * p.omega * (m + kappa - 0.5);
  }
  return p.omega * (static_cast<double>(p.k) * m + r);
}

}  // namespace

TridiagonalMatrix build_sector_tridiagonal(const model::ModelParams& params,
                                           const model::SectorLabel& sector, std::size_t n) {
  model::validate_sector(params, sector);
  if (n < 2) {
    throw std::invalid_argument("build_sector_tridiagonal: need at least 2 states");
  }
  const double kappa = sector.block.value();
  const int r = params.family == model::Family::KPhoton ? model::fock_offset(params, sector.block) : 0;

  TridiagonalMatrix m;
  m.meta = {params, sector.block, sector.parity, n};
  m.diag.resize(n);
  m.offdiag.resize(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    m.diag[i] = diag_at(params, kappa, r, i) + sector_sign(sector.parity, i) * params.delta;
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    m.offdiag[i] = offdiag_at(params, kappa, r, i);
  }
  return m;
}

DenseSymmetricMatrix build_full_block(const model::ModelParams& params,
                                      const model::Rational& block, std::size_t n) {
  model::validate_sector(params, {block, model::Parity::Plus});
  if (n < 2) {
    throw std::invalid_argument("build_full_block: need at least 2 ladder states");
  }
  const double kappa = block.value();
  const int r = params.family == model::Family::KPhoton ? model::fock_offset(params, block) : 0;

  DenseSymmetricMatrix m;
  m.order = 2 * n;
  m.entries.assign(m.order * m.order, 0.0);
  m.meta = {params, block, model::Parity::Plus, n};

  auto put = [&m](std::size_t i, std::size_t j, double v) {
    m.entries[i * m.order + j] = v;
    m.entries[j * m.order + i] = v;
  };
  for (std::size_t i = 0; i < n; ++i) {
    const double d = diag_at(params, kappa, r, i);
    put(2 * i, 2 * i, d + params.delta);      // spin up
    put(2 * i + 1, 2 * i + 1, d - params.delta);  // spin down
    if (i + 1 < n) {
      const double off = offdiag_at(params, kappa, r, i);
      // Ladder raise flips the spin: sigma_x coupling.
      put(2 * i, 2 * (i + 1) + 1, off);
      put(2 * i + 1, 2 * (i + 1), off);
    }
  }
  return m;
}

namespace {

// One implicit-shift QL pass over a diag/offdiag pair, optionally rotating an
// eigenvector matrix along. Classic tql2-style iteration with a per-level cap.
void ql_implicit(std::vector<double>& d, std::vector<double>& e, std::vector<double>* z,
                 std::size_t n) {
  constexpr int kMaxIter = 50;
  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= 1e-300 || std::abs(e[m]) <= 2.3e-16 * dd) {
          break;
        }
      }
      if (m != l) {
        if (iter++ == kMaxIter) {
          throw NoConvergence("eigs_tridiagonal: QL failed to deflate a level within " +
                              std::to_string(kMaxIter) + " iterations");
        }
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double rr = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(rr, g));
        double s = 1.0;
        double c = 1.0;
        double p = 0.0;
        bool underflow = false;
        for (std::size_t i = m; i-- > l;) {
          double f = s * e[i];
          double b = c * e[i];
          rr = std::hypot(f, g);
          e[i + 1] = rr;
          if (rr == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            underflow = true;
            break;
          }
          s = f / rr;
          c = g / rr;
          g = d[i + 1] - p;
          rr = (d[i] - g) * s + 2.0 * c * b;
          p = s * rr;
          d[i + 1] = g + p;
          g = c * rr - b;
          if (z != nullptr) {
            for (std::size_t row = 0; row < n; ++row) {
              const double zi = (*z)[row * n + i];
              const double zi1 = (*z)[row * n + i + 1];
              (*z)[row * n + i + 1] = s * zi + c * zi1;
              (*z)[row * n + i] = c * zi - s * zi1;
            }
          }
        }
        if (underflow) {
          continue;
        }
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

}  // namespace

std::vector<double> eigs_tridiagonal(const TridiagonalMatrix& m, std::size_t count) {
  const std::size_t n = m.diag.size();
  if (count < 1 || count > n) {
    throw std::invalid_argument("eigs_tridiagonal: count out of range");
  }
  std::vector<double> d = m.diag;
  std::vector<double> e = m.offdiag;
  e.push_back(0.0);
  ql_implicit(d, e, nullptr, n);
  std::sort(d.begin(), d.end());
  d.resize(count);
  return d;
}

TridiagonalEigensystem eigs_tridiagonal_full(const TridiagonalMatrix& m) {
  const std::size_t n = m.diag.size();
  TridiagonalEigensystem sys;
  sys.values = m.diag;
  std::vector<double> e = m.offdiag;
  e.push_back(0.0);
  sys.vectors.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    sys.vectors[i * n + i] = 1.0;
  }
  ql_implicit(sys.values, e, &sys.vectors, n);

  // Sort ascending, permuting columns along.
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) {
    order[i] = i;
  }
  std::sort(order.begin(), order.end(),
            [&sys](std::size_t a, std::size_t b) { return sys.values[a] < sys.values[b]; });
  TridiagonalEigensystem sorted;
  sorted.values.resize(n);
  sorted.vectors.resize(n * n);
  for (std::size_t j = 0; j < n; ++j) {
    sorted.values[j] = sys.values[order[j]];
    for (std::size_t row = 0; row < n; ++row) {
      sorted.vectors[row * n + j] = sys.vectors[row * n + order[j]];
    }
  }
  return sorted;
}

std::vector<double> eigs_dense_symmetric(const DenseSymmetricMatrix& m, JacobiStats* stats) {
  const std::size_t n = m.order;
  if (n == 0) {
    throw std::invalid_argument("eigs_dense_symmetric: empty matrix");
  }
  std::vector<double> a = m.entries;
  auto at = [&a, n](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };

  double norm_all = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      norm_all += at(i, j) * at(i, j);
    }
  }
  norm_all = std::sqrt(norm_all);

  constexpr int kMaxSweeps = 100;
  int sweep = 0;
  bool converged = false;
  for (; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        off += 2.0 * at(i, j) * at(i, j);
      }
    }
    if (std::sqrt(off) <= 1e-12 * norm_all) {
      converged = true;
      break;
    }
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = at(p, q);
        if (apq == 0.0) {
          continue;
        }
        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);

        const double app = at(p, p);
        const double aqq = at(q, q);
        at(p, p) = app - t * apq;
        at(q, q) = aqq + t * apq;
        at(p, q) = 0.0;
        at(q, p) = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          if (i == p || i == q) {
            continue;
          }
          const double aip = at(i, p);
          const double aiq = at(i, q);
          at(i, p) = aip - s * (aiq + tau * aip);
          at(p, i) = at(i, p);
          at(i, q) = aiq + s * (aip - tau * aiq);
          at(q, i) = at(i, q);
        }
      }
    }
  }
  if (stats != nullptr) {
    stats->sweeps = sweep;
    stats->converged = converged;
  }
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) {
    values[i] = at(i, i);
  }
  std::sort(values.begin(), values.end());
  return values;
}

ConvergenceStudy convergence_study(const model::ModelParams& params,
                                   const model::SectorLabel& sector,
                                   const std::vector<std::size_t>& truncations,
                                   std::size_t levels) {
  if (truncations.size() < 2) {
    throw std::invalid_argument("convergence_study: need at least two truncations");
  }
  if (!std::is_sorted(truncations.begin(), truncations.end())) {
    throw std::invalid_argument("convergence_study: truncations must be ascending");
  }
  if (levels < 1 || levels > truncations.front()) {
    throw std::invalid_argument("convergence_study: levels out of range");
  }
  ConvergenceStudy study;
  study.truncations = truncations;
  for (const std::size_t n : truncations) {
    const auto m = build_sector_tridiagonal(params, sector, n);
    study.levels.push_back(eigs_tridiagonal(m, levels));
  }
  for (std::size_t i = 0; i + 1 < truncations.size(); ++i) {
    std::vector<double> inc(levels);
    for (std::size_t l = 0; l < levels; ++l) {
      inc[l] = std::abs(study.levels[i + 1][l] - study.levels[i][l]);
    }
    study.increments.push_back(std::move(inc));
  }
  return study;
}

double crosscheck_ceiling(const TridiagonalMatrix& m) {
  return m.diag[m.diag.size() / 2];
}

}  // namespace rabicf::oracle
