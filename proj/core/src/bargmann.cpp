// bargmann.cpp — norm series in log space and divergence flags
#include "rabicf/bargmann.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "rabicf/errors.hpp"
#include "rabicf/special_functions.hpp"

namespace rabicf::bargmann {

namespace {

constexpr std::size_t kMinVerdictTerms = 64;
constexpr double kInf = std::numeric_limits<double>::infinity();

// log(exp(a) + exp(b)) without leaving log space.
double log_add(double a, double b) {
  if (a == -kInf) {
    return b;
  }
  if (b == -kInf) {
    return a;
  }
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

double log_weight(const model::ModelParams& params, const model::SectorLabel& sector,
                  int fock_offset, std::size_t n) {
  const double m = static_cast<double>(n);
  if (params.family == model::Family::TwoMode) {
    const double kappa = sector.block.value();
    return special::log_factorial(m) + special::log_factorial(m + 2.0 * kappa - 1.0);
  }
  return special::log_factorial(static_cast<double>(params.k) * m + fock_offset);
}

VerdictSummary tail_statistics(const std::vector<double>& ratios) {
  VerdictSummary summary;
  const std::size_t start = ratios.size() - ratios.size() / 4;
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = start; i < ratios.size(); ++i) {
    if (std::isfinite(ratios[i])) {
      sum += ratios[i];
      ++count;
    }
  }
  if (count < 2) {
    return summary;
  }
  const double mean = sum / static_cast<double>(count);
  double var = 0.0;
  for (std::size_t i = start; i < ratios.size(); ++i) {
    if (std::isfinite(ratios[i])) {
      const double d = ratios[i] - mean;
      var += d * d;
    }
  }
  const double sd = std::sqrt(var / static_cast<double>(count));
  summary.tail_mean = mean;
  summary.tail_sd = sd;
  summary.tail_count = count;
  if (mean + 3.0 * sd < 1.0) {
    summary.verdict = NormVerdict::Converging;
  } else if (mean - 3.0 * sd > 1.0) {
    summary.verdict = NormVerdict::Diverging;
  }
  return summary;
}

}  // namespace

NormEstimate norm_log_terms(const model::ModelParams& params,
                            const recurrence::SolutionSequence& coeffs) {
  model::validate_sector(params, coeffs.sector);
  const int r = params.family == model::Family::KPhoton
                    ? model::fock_offset(params, coeffs.sector.block)
                    : 0;

  std::size_t last = coeffs.size();
  while (last > 0 && coeffs.values[last - 1] == 0.0) {
    --last;  // drop trailing exact zeros: the series terminates there
  }
  const bool terminated = last < coeffs.size();

  NormEstimate est;
  est.log_terms.resize(last);
  for (std::size_t n = 0; n < last; ++n) {
    est.log_terms[n] = 2.0 * coeffs.log_abs(n) + log_weight(params, coeffs.sector, r, n);
  }
  if (last > 1) {
    est.ratio_sequence.resize(last - 1);
    for (std::size_t n = 0; n + 1 < last; ++n) {
      est.ratio_sequence[n] = std::exp(est.log_terms[n + 1] - est.log_terms[n]);
    }
  }

  if (params.family == model::Family::TwoMode) {
    est.predicted_limit = std::norm(model::characteristic_roots(params).t1);
  } else if (params.k == 2) {
    est.predicted_limit = 4.0 * std::norm(model::characteristic_roots(params).t1);
  }

  if (terminated && est.log_terms.size() < kMinVerdictTerms) {
    est.verdict = NormVerdict::Converging;  // finite sum, nothing to test
  } else if (est.log_terms.size() >= kMinVerdictTerms) {
    est.verdict = ratio_verdict(est).verdict;
  }
  return est;
}

VerdictSummary ratio_verdict(const NormEstimate& estimate) {
  if (estimate.log_terms.size() < kMinVerdictTerms) {
    throw TooFewTerms("ratio_verdict: need at least 64 norm terms, got " +
                      std::to_string(estimate.log_terms.size()));
  }
  return tail_statistics(estimate.ratio_sequence);
}

PartialSumGrowth partial_sum_growth(const NormEstimate& estimate) {
  if (estimate.log_terms.empty()) {
    throw std::invalid_argument("partial_sum_growth: empty norm series");
  }
  PartialSumGrowth g;
  g.log_first_term = estimate.log_terms.front();
  const std::size_t half = estimate.log_terms.size() / 2;
  double acc = -kInf;
  for (std::size_t n = 0; n < estimate.log_terms.size(); ++n) {
    acc = log_add(acc, estimate.log_terms[n]);
    if (n + 1 == half) {
      g.log_sum_half = acc;
    }
  }
  g.log_sum_total = acc;
  if (half == 0) {
    g.log_sum_half = acc;
  }
  g.second_half_log_gain = g.log_sum_total - g.log_sum_half;
  g.total_over_first_log10 = (g.log_sum_total - g.log_first_term) / M_LN10;
  return g;
}

WavefunctionValue eval_wavefunction(const WavefunctionSeries& series) {
  const auto& c = series.coefficients;
  if (c.size() == 0) {
    throw std::invalid_argument("eval_wavefunction: empty coefficient sequence");
  }
  const std::size_t top = std::min(series.truncation, c.size() - 1);
  std::complex<double> acc = 0.0;
  for (std::size_t n = top + 1; n-- > 0;) {
    acc = acc * series.variable + c.value(n);
  }

  WavefunctionValue out;
  out.value = acc;
  if (top >= 1) {
    const double rho = std::abs(c.ratio(top - 1)) * std::abs(series.variable);
    if (std::isfinite(rho) && rho < 1.0) {
      const double last_term = std::abs(c.value(top)) * std::pow(std::abs(series.variable),
                                                                 static_cast<double>(top));
      out.tail_bound = last_term * rho / (1.0 - rho);
    }
  } else {
    out.tail_bound = 0.0;
  }
  return out;
}

DivergenceReport divergence_report(const model::ModelParams& params,
                                   const model::SectorLabel& sector,
                                   const std::vector<double>& energies,
                                   const DivergenceConfig& config) {
  const auto regime = model::classify_regime(params);
  if (regime.verdict == model::RegimeVerdict::Normalizable) {
    throw RegimeMismatch("divergence_report: parameters are in the normalizable regime; "
                         "divergence diagnostics apply outside it");
  }
  if (energies.empty()) {
    throw std::invalid_argument("divergence_report: need at least one probe energy");
  }
  if (config.n_max < 2 * kMinVerdictTerms) {
    throw std::invalid_argument("divergence_report: n_max too small for a stable signal");
  }

  DivergenceReport report;
  report.config = config;
  for (const double e : energies) {
    const auto seq = recurrence::forward_sequence(params, sector, e, config.n_max);
    const auto est = norm_log_terms(params, seq);
    DivergenceSample sample;
    sample.energy = e;
    sample.growth = partial_sum_growth(est);
    sample.flagged = sample.growth.second_half_log_gain > config.min_log_gain;
    report.any_flagged = report.any_flagged || sample.flagged;
    report.samples.push_back(sample);
  }
  return report;
}

}  // namespace rabicf::bargmann
