// commands.cpp — command implementations, sector fan-out, artifact writing
#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <exception>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"
#include "output.hpp"
#include "rabicf/bargmann.hpp"
#include "rabicf/contfrac.hpp"
#include "rabicf/errors.hpp"
#include "rabicf/model.hpp"
#include "rabicf/oracle.hpp"
#include "rabicf/recurrence.hpp"
#include "rabicf/spectrum.hpp"

namespace rabicli {
namespace {

namespace model = rabicf::model;
using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// shared resolution helpers

struct Window {
  double e_min = 0.0;
  double e_max = 0.0;
  int grid_points = 0;
};

Window resolve_window(const Config& cfg, const model::ModelParams& params,
                      const model::Rational& block) {
  Window w;
  const int levels = cfg.integer("levels");
  if (levels < 1) {
    throw UsageError("key 'levels': must be at least 1");
  }
  w.e_min = cfg.is_auto("e_min") ? -2.0 * params.omega : cfg.num("e_min");
  w.e_max = cfg.is_auto("e_max")
                ? rabicf::spectrum::default_window_top(params, block, levels)
                : cfg.num("e_max");
  if (!(w.e_max > w.e_min)) {
    throw UsageError("window is empty: e_max must exceed e_min");
  }
  if (cfg.is_auto("grid")) {
    const double step = params.omega / 20.0;
    w.grid_points = static_cast<int>(std::ceil((w.e_max - w.e_min) / step)) + 1;
  } else {
    w.grid_points = cfg.integer("grid");
  }
  w.grid_points = std::max(w.grid_points, 16);
  return w;
}

rabicf::spectrum::SpectrumOptions spectrum_options(const Config& cfg) {
  rabicf::spectrum::SpectrumOptions opt;
  opt.tol_refine = cfg.num("tol_refine");
  opt.tol_confirm = cfg.num("tol_confirm");
  opt.max_refine_iters = cfg.integer("max_refine_iters");
  opt.cf.tol = cfg.num("cf_tol");
  opt.cf.max_terms = cfg.integer("cf_max_terms");
  if (opt.tol_refine <= 0 || opt.tol_confirm <= 0 || opt.max_refine_iters < 1 ||
      opt.cf.tol <= 0 || opt.cf.max_terms < 2) {
    throw UsageError("tolerances must be positive and iteration caps at least 2");
  }
  return opt;
}

std::string resolve_format(const Config& cfg, const std::string& command) {
  const std::string& fmt = cfg.str("format");
  if (fmt == "csv" || fmt == "json") {
    return fmt;
  }
  if (fmt != "auto") {
    throw UsageError("key 'format': expected csv, json, or auto, got '" + fmt + "'");
  }
  if (command == "regime" || command == "blocks" || command == "diverge") {
    return "json";
  }
  return "csv";
}

// Regular spectra only exist in the normalizable regime; fail early with a
// message that says why instead of deep inside the fraction evaluation.
void require_normalizable(const model::ModelParams& params) {
  const auto regime = model::classify_regime(params);
  switch (regime.verdict) {
    case model::RegimeVerdict::Normalizable:
      return;
    case model::RegimeVerdict::NonNormalizable:
      throw rabicf::RegimeUnsupported(
          "no regular spectrum: the coupling sits at or beyond the normalizability "
          "boundary (constraint ratio " +
          fmt_double(regime.ratio.value_or(0.0)) +
          " >= 1), so no minimal recurrence solution exists");
    case model::RegimeVerdict::UndefinedKGe3:
      throw rabicf::RegimeUnsupported(
          "no regular spectrum for k >= 3: every recurrence solution shares one growth "
          "class, the operator admits no normalizable eigenstates, and truncated "
          "diagonalizations never converge (see the convergence and diverge commands)");
  }
}

std::string verdict_name(model::RegimeVerdict v) {
  switch (v) {
    case model::RegimeVerdict::Normalizable: return "normalizable";
    case model::RegimeVerdict::NonNormalizable: return "non_normalizable";
    case model::RegimeVerdict::UndefinedKGe3: return "undefined_k_ge_3";
  }
  return "unknown";
}

json params_json(const model::ModelParams& params) {
  json j;
  j["family"] = params.family == model::Family::TwoMode ? "twomode" : "kphoton";
  j["omega"] = params.omega;
  j["delta"] = params.delta;
  j["g"] = params.g;
  if (params.family == model::Family::KPhoton) {
    j["k"] = params.k;
  }
  return j;
}

std::string parity_str(model::Parity p) {
  return p == model::Parity::Plus ? "+" : "-";
}

void emit(const Config& cfg, const json& doc) {
  Sink sink(cfg.str("out"));
  sink.stream() << doc.dump(2) << '\n';
}

// ---------------------------------------------------------------------------
// sector fan-out

// Runs `work(i)` for i = 0..jobs-1 on a small pool. Results are written by
// index so assembly order never depends on scheduling; the first exception
// (in job order) is rethrown after all workers stop.
void run_jobs(std::size_t jobs, const std::function<void(std::size_t)>& work) {
  std::size_t workers = std::thread::hardware_concurrency();
  if (workers == 0) workers = 1;
  if (const char* env = std::getenv("RABI_CF_THREADS")) {
    char* end = nullptr;
    const long parsed = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || parsed < 1) {
      throw UsageError("RABI_CF_THREADS must be a positive integer");
    }
    workers = static_cast<std::size_t>(parsed);
  }
  workers = std::min(workers, jobs);

  if (workers <= 1) {
    for (std::size_t i = 0; i < jobs; ++i) work(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(jobs);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t t = 0; t < workers; ++t) {
    pool.emplace_back([&]() {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= jobs) break;
        try {
          work(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }
}

// ---------------------------------------------------------------------------
// regime

void cmd_regime(const Config& cfg) {
  const auto params = cfg.model_params();
  const auto regime = model::classify_regime(params);

  json doc;
  doc["command"] = "regime";
  doc.update(params_json(params));
  doc["verdict"] = verdict_name(regime.verdict);
  doc["ratio"] = regime.ratio ? json(*regime.ratio) : json(nullptr);

  bool have_roots = false;
  model::CharacteristicRoots roots;
  try {
    roots = model::characteristic_roots(params);
    have_roots = true;
  } catch (const rabicf::Error&) {
    // g = 0 or k >= 3: no characteristic equation to report
  }
  if (have_roots) {
    json r;
    r["t1_re"] = roots.t1.real();
    r["t1_im"] = roots.t1.imag();
    r["t2_re"] = roots.t2.real();
    r["t2_im"] = roots.t2.imag();
    r["distinct_real"] = roots.distinct_real;
    doc["characteristic_roots"] = r;
  }

  if (params.g != 0.0) {
    const auto exps = model::asymptotic_exponents(params);
    json e;
    e["a"] = exps.a;
    e["alpha"] = exps.alpha;
    e["b"] = exps.b;
    e["beta"] = exps.beta;
    doc["asymptotic_exponents"] = e;
    doc["single_growth_class"] = model::single_growth_class(exps);
  }

  if (resolve_format(cfg, "regime") == "json") {
    emit(cfg, doc);
    return;
  }

  Sink sink(cfg.str("out"));
  write_csv_row(sink.stream(),
                {"family", "omega", "delta", "g", "k", "verdict", "ratio", "t1_re", "t1_im",
                 "t2_re", "t2_im", "distinct_real", "a", "alpha", "b", "beta",
                 "single_growth_class"});
  std::vector<Cell> row = {doc["family"].get<std::string>(), params.omega, params.delta,
                           params.g, params.k, verdict_name(regime.verdict)};
  row.push_back(regime.ratio ? Cell(*regime.ratio) : Cell(""));
  if (have_roots) {
    row.push_back(roots.t1.real());
    row.push_back(roots.t1.imag());
    row.push_back(roots.t2.real());
    row.push_back(roots.t2.imag());
    row.push_back(roots.distinct_real ? "true" : "false");
  } else {
    for (int i = 0; i < 5; ++i) row.push_back("");
  }
  if (params.g != 0.0) {
    const auto exps = model::asymptotic_exponents(params);
    row.push_back(exps.a);
    row.push_back(exps.alpha);
    row.push_back(exps.b);
    row.push_back(exps.beta);
    row.push_back(model::single_growth_class(exps) ? "true" : "false");
  } else {
    for (int i = 0; i < 5; ++i) row.push_back("");
  }
  write_csv_row(sink.stream(), row);
}

// ---------------------------------------------------------------------------
// blocks

std::vector<model::Rational> resolve_blocks(const Config& cfg) {
  std::vector<model::Rational> blocks;
  for (const auto& sector : cfg.sectors()) {
    if (blocks.empty() || !(blocks.back() == sector.block)) {
      blocks.push_back(sector.block);
    }
  }
  return blocks;
}

void cmd_blocks(const Config& cfg) {
  const auto params = cfg.model_params();
  const auto blocks = resolve_blocks(cfg);

  if (resolve_format(cfg, "blocks") == "json") {
    json doc;
    doc["command"] = "blocks";
    doc.update(params_json(params));
    doc["blocks"] = json::array();
    for (const auto& block : blocks) {
      json b;
      b["block"] = block.str();
      if (params.family == model::Family::KPhoton) {
        b["fock_offset"] = model::fock_offset(params, block);
      } else {
        b["fock_offset"] = nullptr;
      }
      doc["blocks"].push_back(b);
    }
    emit(cfg, doc);
    return;
  }

  Sink sink(cfg.str("out"));
  write_csv_row(sink.stream(), {"block", "fock_offset"});
  for (const auto& block : blocks) {
    std::vector<Cell> row = {block.str()};
    if (params.family == model::Family::KPhoton) {
      row.push_back(model::fock_offset(params, block));
    } else {
      row.push_back("");
    }
    write_csv_row(sink.stream(), row);
  }
}

// ---------------------------------------------------------------------------
// spectrum

struct SectorSpectrum {
  model::SectorLabel sector;
  Window window;
  rabicf::spectrum::SpectrumResult result;
  std::optional<rabicf::spectrum::CrosscheckReport> report;  // compare only
};

std::vector<SectorSpectrum> compute_all_sectors(const Config& cfg,
                                                const model::ModelParams& params) {
  require_normalizable(params);
  const auto sectors = cfg.sectors();
  const auto opt = spectrum_options(cfg);

  std::vector<SectorSpectrum> out(sectors.size());
  run_jobs(sectors.size(), [&](std::size_t i) {
    SectorSpectrum& slot = out[i];
    slot.sector = sectors[i];
    slot.window = resolve_window(cfg, params, sectors[i].block);
    slot.result = rabicf::spectrum::compute_spectrum(params, sectors[i], slot.window.e_min,
                                                     slot.window.e_max,
                                                     slot.window.grid_points, opt);
  });
  return out;
}

json diagnostics_json(const rabicf::spectrum::ScanDiagnostics& d) {
  json j;
  j["grid_points"] = d.grid_points;
  j["brackets_found"] = d.brackets_found;
  j["rejected_pole_crossings"] = d.rejected_pole_crossings;
  j["rejected_pole_roots"] = d.rejected_pole_roots;
  j["refine_failures"] = d.refine_failures;
  j["expected_levels"] = d.expected_levels;
  j["rescued_brackets"] = d.rescued_brackets;
  j["unresolved_cells"] = d.unresolved_cells;
  return j;
}

// Trace samples re-evaluate the scan grid pointwise so the artifact shows the
// raw sign data the bracketing saw.
void write_trace(std::ostream& os, const model::ModelParams& params,
                 const std::vector<SectorSpectrum>& sectors,
                 const rabicf::spectrum::SpectrumOptions& opt) {
  write_csv_row(os, {"block", "parity", "energy", "f_value", "suspected_pole"});
  for (const auto& s : sectors) {
    const int n = s.window.grid_points;
    for (int i = 0; i < n; ++i) {
      const double e =
          s.window.e_min + (s.window.e_max - s.window.e_min) * i / double(n - 1);
      const auto f = rabicf::contfrac::spectral_function(params, s.sector, e, opt.cf);
      write_csv_row(os, {s.sector.block.str(), parity_str(s.sector.parity), e, f.value,
                         f.suspected_pole ? "true" : "false"});
    }
  }
}

void cmd_spectrum(const Config& cfg) {
  const auto params = cfg.model_params();
  const auto sectors = compute_all_sectors(cfg, params);
  const std::string fmt = resolve_format(cfg, "spectrum");
  const bool trace = cfg.flag("trace");

  if (fmt == "json") {
    json doc;
    doc["command"] = "spectrum";
    doc.update(params_json(params));
    doc["sectors"] = json::array();
    for (const auto& s : sectors) {
      json sec;
      sec["block"] = s.sector.block.str();
      sec["parity"] = parity_str(s.sector.parity);
      sec["e_min"] = s.window.e_min;
      sec["e_max"] = s.window.e_max;
      sec["grid_points"] = s.window.grid_points;
      sec["eigenvalues"] = json::array();
      for (std::size_t idx = 0; idx < s.result.eigenvalues.size(); ++idx) {
        const auto& ev = s.result.eigenvalues[idx];
        json e;
        e["index"] = idx;
        e["energy"] = ev.energy;
        e["f_residual"] = ev.f_residual;
        e["pincherle_residual"] = ev.pincherle_residual;
        sec["eigenvalues"].push_back(e);
      }
      sec["diagnostics"] = diagnostics_json(s.result.diagnostics);
      doc["sectors"].push_back(sec);
    }
    emit(cfg, doc);
  } else {
    Sink sink(cfg.str("out"));
    write_csv_row(sink.stream(),
                  {"block", "parity", "index", "energy", "f_residual", "pincherle_residual"});
    for (const auto& s : sectors) {
      for (std::size_t idx = 0; idx < s.result.eigenvalues.size(); ++idx) {
        const auto& ev = s.result.eigenvalues[idx];
        write_csv_row(sink.stream(),
                      {s.sector.block.str(), parity_str(s.sector.parity), idx, ev.energy,
                       ev.f_residual, ev.pincherle_residual});
      }
    }
  }

  if (trace) {
    const auto opt = spectrum_options(cfg);
    const std::string& out = cfg.str("out");
    if (out == "-") {
      Sink sink("-");
      sink.stream() << '\n';
      write_trace(sink.stream(), params, sectors, opt);
    } else {
      Sink sink(out + ".trace.csv");
      write_trace(sink.stream(), params, sectors, opt);
    }
  }
}

// ---------------------------------------------------------------------------
// oracle

void cmd_oracle(const Config& cfg) {
  const auto params = cfg.model_params();
  const auto sectors = cfg.sectors();
  const int truncation = cfg.integer("truncation");
  const int levels = cfg.integer("levels");
  if (truncation < 2) {
    throw UsageError("key 'truncation': must be at least 2");
  }
  if (levels < 1) {
    throw UsageError("key 'levels': must be at least 1");
  }
  const std::size_t count = std::min<std::size_t>(levels, truncation);

  std::vector<std::vector<double>> eigs(sectors.size());
  run_jobs(sectors.size(), [&](std::size_t i) {
    const auto m = rabicf::oracle::build_sector_tridiagonal(params, sectors[i],
                                                            std::size_t(truncation));
    eigs[i] = rabicf::oracle::eigs_tridiagonal(m, count);
  });

  if (resolve_format(cfg, "oracle") == "json") {
    json doc;
    doc["command"] = "oracle";
    doc.update(params_json(params));
    doc["truncation"] = truncation;
    doc["sectors"] = json::array();
    for (std::size_t i = 0; i < sectors.size(); ++i) {
      json sec;
      sec["block"] = sectors[i].block.str();
      sec["parity"] = parity_str(sectors[i].parity);
      sec["energies"] = eigs[i];
      doc["sectors"].push_back(sec);
    }
    emit(cfg, doc);
    return;
  }

  Sink sink(cfg.str("out"));
  write_csv_row(sink.stream(), {"block", "parity", "index", "energy"});
  for (std::size_t i = 0; i < sectors.size(); ++i) {
    for (std::size_t idx = 0; idx < eigs[i].size(); ++idx) {
      write_csv_row(sink.stream(), {sectors[i].block.str(), parity_str(sectors[i].parity),
                                    idx, eigs[i][idx]});
    }
  }
}

// ---------------------------------------------------------------------------
// compare

void cmd_compare(const Config& cfg) {
  const auto params = cfg.model_params();
  const int truncation = cfg.integer("truncation");
  if (truncation < 2) {
    throw UsageError("key 'truncation': must be at least 2");
  }
  const double match_tol = cfg.num("match_tol");
  if (match_tol <= 0) {
    throw UsageError("key 'match_tol': must be positive");
  }

  auto sectors = compute_all_sectors(cfg, params);
  run_jobs(sectors.size(), [&](std::size_t i) {
    auto& s = sectors[i];
    const auto m = rabicf::oracle::build_sector_tridiagonal(params, s.sector,
                                                            std::size_t(truncation));
    const auto oracle_levels = rabicf::oracle::eigs_tridiagonal(m, std::size_t(truncation));
    s.report = rabicf::spectrum::crosscheck_oracle(s.result, oracle_levels, match_tol);
  });

  if (resolve_format(cfg, "compare") == "json") {
    json doc;
    doc["command"] = "compare";
    doc.update(params_json(params));
    doc["truncation"] = truncation;
    doc["match_tol"] = match_tol;
    doc["sectors"] = json::array();
    for (const auto& s : sectors) {
      json sec;
      sec["block"] = s.sector.block.str();
      sec["parity"] = parity_str(s.sector.parity);
      sec["e_min"] = s.window.e_min;
      sec["e_max"] = s.window.e_max;
      sec["eigenvalues"] = json::array();
      for (std::size_t idx = 0; idx < s.result.eigenvalues.size(); ++idx) {
        const auto& ev = s.result.eigenvalues[idx];
        json e;
        e["index"] = idx;
        e["energy"] = ev.energy;
        e["f_residual"] = ev.f_residual;
        e["pincherle_residual"] = ev.pincherle_residual;
        if (ev.oracle_gap) {
          e["oracle_energy"] = ev.energy - *ev.oracle_gap;
          e["gap"] = *ev.oracle_gap;
        } else {
          e["oracle_energy"] = nullptr;
          e["gap"] = nullptr;
        }
        sec["eigenvalues"].push_back(e);
      }
      json rep;
      rep["matched"] = s.report->matched;
      rep["max_abs_gap"] = s.report->max_abs_gap;
      rep["unmatched_oracle"] = s.report->unmatched_oracle;
      rep["unmatched_spectrum"] = s.report->unmatched_spectrum;
      sec["report"] = rep;
      doc["sectors"].push_back(sec);
    }
    emit(cfg, doc);
    return;
  }

  Sink sink(cfg.str("out"));
  write_csv_row(sink.stream(), {"block", "parity", "index", "energy", "f_residual",
                                "pincherle_residual", "oracle_energy", "gap"});
  for (const auto& s : sectors) {
    for (std::size_t idx = 0; idx < s.result.eigenvalues.size(); ++idx) {
      const auto& ev = s.result.eigenvalues[idx];
      std::vector<Cell> row = {s.sector.block.str(), parity_str(s.sector.parity), idx,
                               ev.energy, ev.f_residual, ev.pincherle_residual};
      if (ev.oracle_gap) {
        row.push_back(ev.energy - *ev.oracle_gap);
        row.push_back(*ev.oracle_gap);
      } else {
        row.push_back("");
        row.push_back("");
      }
      write_csv_row(sink.stream(), row);
    }
  }
}

// ---------------------------------------------------------------------------
// wavefunction

void cmd_wavefunction(const Config& cfg) {
  const auto params = cfg.model_params();
  const auto sectors = cfg.sectors();
  if (sectors.size() != 1) {
    throw UsageError(
        "wavefunction needs exactly one sector: set blocks to a single label and parity "
        "to plus or minus");
  }
  const auto& sector = sectors.front();
  const int terms = cfg.integer("wf_terms");
  const int samples = cfg.integer("wf_samples");
  const double zmax = cfg.num("wf_zmax");
  const double angle = cfg.num("wf_angle_deg") * std::acos(-1.0) / 180.0;
  if (terms < 2 || samples < 2 || zmax <= 0) {
    throw UsageError("wavefunction needs wf_terms >= 2, wf_samples >= 2, wf_zmax > 0");
  }

  double energy;
  if (cfg.is_auto("wf_energy")) {
    require_normalizable(params);
    const auto window = resolve_window(cfg, params, sector.block);
    const auto result = rabicf::spectrum::compute_spectrum(
        params, sector, window.e_min, window.e_max, window.grid_points,
        spectrum_options(cfg));
    if (result.eigenvalues.empty()) {
      throw rabicf::NoConvergence("wavefunction: no eigenvalue found in the window [" +
                                  fmt_double(window.e_min) + ", " +
                                  fmt_double(window.e_max) + "]");
    }
    energy = result.eigenvalues.front().energy;
  } else {
    energy = cfg.num("wf_energy");
  }

  const auto coeffs =
      rabicf::recurrence::backward_minimal(params, sector, energy, std::size_t(terms));

  struct Sample {
    std::complex<double> z;
    rabicf::bargmann::WavefunctionValue value;
  };
  std::vector<Sample> rows(static_cast<std::size_t>(samples));
  const std::complex<double> dir(std::cos(angle), std::sin(angle));
  for (int i = 0; i < samples; ++i) {
    rabicf::bargmann::WavefunctionSeries series;
    series.coefficients = coeffs;
    series.variable = dir * (zmax * i / double(samples - 1));
    series.truncation = coeffs.size() - 1;
    rows[std::size_t(i)] = {series.variable, rabicf::bargmann::eval_wavefunction(series)};
  }

  if (resolve_format(cfg, "wavefunction") == "json") {
    json doc;
    doc["command"] = "wavefunction";
    doc.update(params_json(params));
    doc["block"] = sector.block.str();
    doc["parity"] = parity_str(sector.parity);
    doc["energy"] = energy;
    doc["terms"] = terms;
    doc["samples"] = json::array();
    for (const auto& row : rows) {
      json s;
      s["z_re"] = row.z.real();
      s["z_im"] = row.z.imag();
      s["phi_re"] = row.value.value.real();
      s["phi_im"] = row.value.value.imag();
      s["phi_abs"] = std::abs(row.value.value);
      s["tail_bound"] = row.value.tail_bound ? json(*row.value.tail_bound) : json(nullptr);
      doc["samples"].push_back(s);
    }
    emit(cfg, doc);
    return;
  }

  Sink sink(cfg.str("out"));
  write_csv_row(sink.stream(), {"block", "parity", "energy", "z_re", "z_im", "phi_re",
                                "phi_im", "phi_abs", "tail_bound"});
  for (const auto& row : rows) {
    write_csv_row(sink.stream(),
                  {sector.block.str(), parity_str(sector.parity), energy, row.z.real(),
                   row.z.imag(), row.value.value.real(), row.value.value.imag(),
                   std::abs(row.value.value), row.value.tail_bound});
  }
}

// ---------------------------------------------------------------------------
// diverge

void cmd_diverge(const Config& cfg) {
  const auto params = cfg.model_params();
  const auto sectors = cfg.sectors();

  rabicf::bargmann::DivergenceConfig div;
  const int n_max = cfg.integer("div_n_max");
  if (n_max < 1) {
    throw UsageError("key 'div_n_max': must be positive");
  }
  div.n_max = std::size_t(n_max);
  div.min_log_gain = cfg.num("div_min_log_gain");

  std::vector<double> energies;
  if (cfg.is_auto("energies")) {
    // five probes spread across the same window the spectrum commands scan
    const auto window = resolve_window(cfg, params, sectors.front().block);
    for (int i = 0; i < 5; ++i) {
      energies.push_back(window.e_min +
                         (window.e_max - window.e_min) * (i + 0.5) / 5.0);
    }
  } else {
    energies = cfg.num_list("energies");
  }

  std::vector<rabicf::bargmann::DivergenceReport> reports(sectors.size());
  run_jobs(sectors.size(), [&](std::size_t i) {
    reports[i] = rabicf::bargmann::divergence_report(params, sectors[i], energies, div);
  });

  bool any = false;
  for (const auto& r : reports) any = any || r.any_flagged;

  if (resolve_format(cfg, "diverge") == "json") {
    json doc;
    doc["command"] = "diverge";
    doc.update(params_json(params));
    json cj;
    cj["n_max"] = div.n_max;
    cj["min_log_gain"] = div.min_log_gain;
    doc["config"] = cj;
    doc["sectors"] = json::array();
    for (std::size_t i = 0; i < sectors.size(); ++i) {
      json sec;
      sec["block"] = sectors[i].block.str();
      sec["parity"] = parity_str(sectors[i].parity);
      sec["any_flagged"] = reports[i].any_flagged;
      sec["samples"] = json::array();
      for (const auto& sample : reports[i].samples) {
        json s;
        s["energy"] = sample.energy;
        s["log_first_term"] = sample.growth.log_first_term;
        s["log_sum_half"] = sample.growth.log_sum_half;
        s["log_sum_total"] = sample.growth.log_sum_total;
        s["second_half_log_gain"] = sample.growth.second_half_log_gain;
        s["total_over_first_log10"] = sample.growth.total_over_first_log10;
        s["flagged"] = sample.flagged;
        sec["samples"].push_back(s);
      }
      doc["sectors"].push_back(sec);
    }
    doc["any_flagged"] = any;
    emit(cfg, doc);
    return;
  }

  Sink sink(cfg.str("out"));
  write_csv_row(sink.stream(),
                {"block", "parity", "energy", "log_first_term", "log_sum_half",
                 "log_sum_total", "second_half_log_gain", "total_over_first_log10",
                 "flagged"});
  for (std::size_t i = 0; i < sectors.size(); ++i) {
    for (const auto& sample : reports[i].samples) {
      write_csv_row(sink.stream(),
                    {sectors[i].block.str(), parity_str(sectors[i].parity), sample.energy,
                     sample.growth.log_first_term, sample.growth.log_sum_half,
                     sample.growth.log_sum_total, sample.growth.second_half_log_gain,
                     sample.growth.total_over_first_log10,
                     sample.flagged ? "true" : "false"});
    }
  }
}

// ---------------------------------------------------------------------------
// convergence

void cmd_convergence(const Config& cfg) {
  const auto params = cfg.model_params();
  const auto sectors = cfg.sectors();
  const auto truncations = cfg.size_list("truncations");
  const int levels = cfg.integer("conv_levels");
  if (levels < 1) {
    throw UsageError("key 'conv_levels': must be at least 1");
  }
  for (std::size_t i = 1; i < truncations.size(); ++i) {
    if (truncations[i] <= truncations[i - 1]) {
      throw UsageError("key 'truncations': sizes must be strictly increasing");
    }
  }

  std::vector<rabicf::oracle::ConvergenceStudy> studies(sectors.size());
  run_jobs(sectors.size(), [&](std::size_t i) {
    studies[i] = rabicf::oracle::convergence_study(params, sectors[i], truncations,
                                                   std::size_t(levels));
  });

  if (resolve_format(cfg, "convergence") == "json") {
    json doc;
    doc["command"] = "convergence";
    doc.update(params_json(params));
    doc["truncations"] = truncations;
    doc["levels"] = levels;
    doc["sectors"] = json::array();
    for (std::size_t i = 0; i < sectors.size(); ++i) {
      json sec;
      sec["block"] = sectors[i].block.str();
      sec["parity"] = parity_str(sectors[i].parity);
      sec["levels"] = studies[i].levels;
      sec["increments"] = studies[i].increments;
      doc["sectors"].push_back(sec);
    }
    emit(cfg, doc);
    return;
  }

  Sink sink(cfg.str("out"));
  write_csv_row(sink.stream(), {"block", "parity", "truncation", "level", "energy",
                                "increment"});
  for (std::size_t i = 0; i < sectors.size(); ++i) {
    const auto& study = studies[i];
    for (std::size_t t = 0; t < study.truncations.size(); ++t) {
      for (std::size_t l = 0; l < study.levels[t].size(); ++l) {
        std::vector<Cell> row = {sectors[i].block.str(), parity_str(sectors[i].parity),
                                 study.truncations[t], l, study.levels[t][l]};
        if (t == 0) {
          row.push_back("");
        } else {
          row.push_back(study.increments[t - 1][l]);
        }
        write_csv_row(sink.stream(), row);
      }
    }
  }
}

}  // namespace

void run_command(const std::string& name, const Config& cfg) {
  if (name == "regime") return cmd_regime(cfg);
  if (name == "blocks") return cmd_blocks(cfg);
  if (name == "spectrum") return cmd_spectrum(cfg);
  if (name == "oracle") return cmd_oracle(cfg);
  if (name == "compare") return cmd_compare(cfg);
  if (name == "wavefunction") return cmd_wavefunction(cfg);
  if (name == "diverge") return cmd_diverge(cfg);
  if (name == "convergence") return cmd_convergence(cfg);
  throw UsageError("unknown command '" + name + "'");
}

}  // namespace rabicli
