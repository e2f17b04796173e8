#pragma once

// Small-scale exact density-matrix/POVM linear algebra. Verifies the
// operator inequalities the converse proof leans on; a residual below
// -1e-9 here signals an arithmetic bug, never a counterexample.

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <vector>

namespace losslab::oracle {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kHermTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;

struct DensityMatrix {
  Matrix m;
  bool subnormalized = false;

  Eigen::Index dim() const { return m.rows(); }
  // Hermiticity, PSD (to tolerance), trace <= 1.
  void validate() const;
};

struct PovmElement {
  Matrix m;

  Eigen::Index dim() const { return m.rows(); }
  // Hermitian with eigenvalues in [0, 1] to tolerance.
  void validate() const;
};

// Trace norm ||rho - sigma||_1 via eigenvalue absolute sum.
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

// Hermitian square root with PSD clipping of roundoff negatives.
Matrix matrix_sqrt(const Matrix& a);

struct ResidualReport {
  double residual;
  bool ok;
};

// Tr{L rho} - Tr{L sigma} + ||rho - sigma||_1 >= 0.
ResidualReport check_trace_inequality(const PovmElement& lambda,
                                      const DensityMatrix& rho,
                                      const DensityMatrix& sigma);

// ||rho - sqrt(L) rho sqrt(L)||_1 <= 2 sqrt(eps) given Tr{L rho} >= 1-eps.
ResidualReport check_gentle_operator(const PovmElement& lambda,
                                     const DensityMatrix& rho, double epsilon);

// Ensemble form: sum_x p_x ||rho_x - sqrt(L) rho_x sqrt(L)||_1 <= 2 sqrt(eps)
// given sum_x p_x Tr{L rho_x} >= 1 - eps.
ResidualReport check_gentle_operator_ensemble(
    const PovmElement& lambda, const std::vector<double>& probs,
    const std::vector<DensityMatrix>& states, double epsilon);

// Success on the vacuum mixture is >= (1-p)(1-eps) when the pure-state
// success is >= 1-eps.
ResidualReport mixture_decoder_bound(const PovmElement& lambda,
                                     const DensityMatrix& pure_codeword,
                                     const DensityMatrix& vacuum_branch,
                                     double epsilon, double p);

// Seeded random instances.
DensityMatrix random_density(Eigen::Index dim, std::uint64_t seed,
                             std::uint64_t stream);
Matrix random_unitary(Eigen::Index dim, std::uint64_t seed,
                      std::uint64_t stream);
// Projective POVM from the column partition of a random unitary.
std::vector<PovmElement> random_projective_povm(Eigen::Index dim,
                                                std::size_t outcomes,
                                                std::uint64_t seed,
                                                std::uint64_t stream);

// Exact pure-loss action on an n-mode truncated state: per-mode
// beamsplitter dilation with a vacuum environment, environment traced out.
// Total dimension (cutoff+1)^n must not exceed 4096.
Matrix simulate_loss_exact(const Matrix& state, double eta,
                           std::uint64_t cutoff, std::uint64_t n_modes);

}  // namespace losslab::oracle
