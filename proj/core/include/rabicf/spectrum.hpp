// spectrum.hpp — root scanning, refinement, and oracle crosschecks
#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "rabicf/contfrac.hpp"
#include "rabicf/model.hpp"

namespace rabicf::spectrum {

// A sign change of the spectral function between two grid points whose
// evaluations both converged cleanly.
struct EnergyBracket {
  double lo = 0.0;
  double hi = 0.0;
  double f_lo = 0.0;
  double f_hi = 0.0;
};

struct Eigenvalue {
  double energy = 0.0;
  model::SectorLabel sector;
  double f_residual = 0.0;          // |F(E)| at the accepted root
  double pincherle_residual = 0.0;  // |S_1/S_0 + c_0| at the accepted root
  std::optional<double> oracle_gap; // filled by crosscheck_oracle
};

struct ScanDiagnostics {
  int grid_points = 0;
  int brackets_found = 0;
  int rejected_pole_crossings = 0;  // sign changes with a pole-suspect endpoint
  int rejected_pole_roots = 0;      // refined roots that failed confirmation
  int refine_failures = 0;          // refinements that hit the iteration cap
  // Filled by compute_spectrum. Every zero of the spectral function sits just
  // above a pole, and the zero-pole distance shrinks geometrically with the
  // level index, so past the first few levels the pair hides inside one grid
  // cell and produces no net sign change. The level count from levels_below
  // is immune to that: cells whose count increment exceeds the sign changes
  // seen there are reexamined by counted bisection ("rescued").
  int expected_levels = 0;    // truncated-operator levels inside the window
  int rescued_brackets = 0;   // brackets recovered by counted bisection
  int unresolved_cells = 0;   // zero-pole pairs below double resolution
};

struct SpectrumOptions {
  double tol_refine = 1e-10;   // bracket width target, relative to omega
  double tol_confirm = 1e-8;   // Pincherle residual bound for acceptance
  int max_refine_iters = 200;
  contfrac::CFOptions cf;      // fraction evaluation settings
};

struct SpectrumResult {
  model::ModelParams params;
  model::SectorLabel sector;
  double e_min = 0.0;
  double e_max = 0.0;
  std::vector<Eigenvalue> eigenvalues;  // ascending, deduplicated
  ScanDiagnostics diagnostics;
};

struct CrosscheckReport {
  int matched = 0;
  double max_abs_gap = 0.0;               // over matched pairs
  std::vector<double> unmatched_oracle;   // oracle levels no root landed on
  std::vector<double> unmatched_spectrum; // roots with no oracle level in tolerance
};

// Uniform scan of [e_min, e_max]; needs at least 16 grid points. Sign
// changes across a pole-suspect or unconverged endpoint are counted in the
// diagnostics instead of bracketed.
std::vector<EnergyBracket> scan_brackets(const model::ModelParams& params,
                                         const model::SectorLabel& sector, double e_min,
                                         double e_max, int grid_points,
                                         const SpectrumOptions& opt = {},
                                         ScanDiagnostics* diag = nullptr);

// Bisection with secant acceleration inside a bracket. The loop tightens
// until the bracket is narrower than tol_refine * omega AND the best |F| is
// below tol_confirm: near-pole zeros have slope of order 1/distance, so a
// width target alone would leave |F| far above the confirmation bound. Then
// dual confirmation: the root is accepted only if the independent Pincherle
// residual is also below tol_confirm, otherwise PoleArtifact. Poles of F
// also change sign across themselves, and this residual is what tells a pole
// from an eigenvalue. Throws NoConvergence at the iteration cap and
// PoleArtifact when |F| cannot reach the bound at double resolution.
Eigenvalue refine_root(const model::ModelParams& params, const model::SectorLabel& sector,
                       const EnergyBracket& bracket, const SpectrumOptions& opt = {});

// Scan, rescue, refine, and confirm. After the sign scan, a level count at
// every grid point (levels_below at a depth covering the window) flags cells
// holding more roots than sign changes — the tight zero-pole pairs — and
// counted bisection inside each flagged cell shrinks around every missed
// root until the spectral function changes sign across a clean sub-bracket.
// All brackets are refined, pole artifacts dropped, the rest sorted and
// merged when closer than 10 * tol_refine * omega. Grid refinement adds
// roots but never loses one found on a coarser grid; pairs tighter than
// double resolution are counted in diagnostics.unresolved_cells.
SpectrumResult compute_spectrum(const model::ModelParams& params,
                                const model::SectorLabel& sector, double e_min, double e_max,
                                int grid_points, const SpectrumOptions& opt = {});

// Greedy nearest matching of roots against independently computed levels
// (both ascending); fills oracle_gap on each root, reports what stayed
// unmatched on either side at tolerance match_tol * omega.
CrosscheckReport crosscheck_oracle(SpectrumResult& result,
                                   const std::vector<double>& oracle_levels,
                                   double match_tol = 1e-8);

// Default window top for a run wanting `levels` eigenvalues of a block:
// 2 omega (levels + 2 block). The matching default floor is -2 omega.
double default_window_top(const model::ModelParams& params, const model::Rational& block,
                          int levels);

}  // namespace rabicf::spectrum
