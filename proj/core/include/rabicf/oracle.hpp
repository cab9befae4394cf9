// oracle.hpp — truncated-Hamiltonian diagonalization, independent of the
// continued-fraction route
#pragma once

#include <cstddef>
#include <vector>

#include "rabicf/model.hpp"

namespace rabicf::oracle {

// Identifies the basis a matrix was built in, so eigenvalues can be traced
// back to their sector.
struct BasisMeta {
  model::ModelParams params;
  model::Rational block;
  model::Parity parity = model::Parity::Plus;
  std::size_t truncation = 0;  // number of ladder states kept
};

// One parity sector of one block in the number ladder basis: the Hamiltonian
// is real symmetric tridiagonal there.
//   TwoMode:  diag[n] = 2 omega (n + kappa - 1/2) + s Delta (-1)^n
//             off[n]  = g sqrt((n + 1)(n + 2 kappa))
//   KPhoton:  diag[n] = omega (k n + r) + s Delta (-1)^n
//             off[n]  = g sqrt((k n + r + 1)(k n + r + 2)...(k n + r + k))
// with s = +-1 the sector parity and r the Fock offset of the block.
struct TridiagonalMatrix {
  std::vector<double> diag;     // size N
  std::vector<double> offdiag;  // size N - 1
  BasisMeta meta;
};

// A whole block including both spin states, order 2 N, basis |n> (x) |spin>
// interleaved as index 2 n + s. Built symmetric entry by entry, never
// symmetrized after the fact.
struct DenseSymmetricMatrix {
  std::size_t order = 0;
  std::vector<double> entries;  // row-major, order * order
  BasisMeta meta;

  double at(std::size_t i, std::size_t j) const { return entries[i * order + j]; }
};

// Builds one parity sector. g = 0 is allowed (the matrix is then diagonal).
// Throws BlockMismatch for a sector that does not belong to the model.
TridiagonalMatrix build_sector_tridiagonal(const model::ModelParams& params,
                                           const model::SectorLabel& sector, std::size_t n);

// Builds the full spin (x) ladder block without using parity. Its spectrum
// must equal the union of the two parity sectors; tests lean on that.
DenseSymmetricMatrix build_full_block(const model::ModelParams& params,
                                      const model::Rational& block, std::size_t n);

// Lowest `count` eigenvalues by implicit-shift QL, ascending. Throws
// NoConvergence if a QL sweep fails to deflate within its iteration cap.
std::vector<double> eigs_tridiagonal(const TridiagonalMatrix& m, std::size_t count);

// Full eigensystem variant; column j of `vectors` (stored row-major,
// n x n) is the eigenvector of values[j].
struct TridiagonalEigensystem {
  std::vector<double> values;
  std::vector<double> vectors;
};
TridiagonalEigensystem eigs_tridiagonal_full(const TridiagonalMatrix& m);

// All eigenvalues of a dense symmetric matrix by cyclic Jacobi sweeps,
// ascending. Optionally reports the sweep count.
struct JacobiStats {
  int sweeps = 0;
  bool converged = false;
};
std::vector<double> eigs_dense_symmetric(const DenseSymmetricMatrix& m,
                                         JacobiStats* stats = nullptr);

// Truncation-dependence table: eigenvalues of one sector at several basis
// sizes, plus the change of each level between consecutive truncations.
// Converged levels show increments at round-off scale; a model without a
// point spectrum keeps drifting instead.
struct ConvergenceStudy {
  std::vector<std::size_t> truncations;
  std::vector<std::vector<double>> levels;      // levels[i][l]: level l at truncations[i]
  std::vector<std::vector<double>> increments;  // increments[i][l] = |levels[i+1][l] - levels[i][l]|
};
ConvergenceStudy convergence_study(const model::ModelParams& params,
                                   const model::SectorLabel& sector,
                                   const std::vector<std::size_t>& truncations,
                                   std::size_t levels);

// Eigenvalues above roughly half the diagonal range are truncation-polluted;
// only values below this ceiling should be compared against another route.
double crosscheck_ceiling(const TridiagonalMatrix& m);

}  // namespace rabicf::oracle
