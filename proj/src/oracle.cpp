#include "losslab/oracle.hpp"

#include <cmath>
#include <stdexcept>

#include "losslab/numerics.hpp"
#include "losslab/rng.hpp"

namespace losslab::oracle {

namespace {

Eigen::VectorXd hermitian_eigenvalues(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(a, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

}  // namespace

void DensityMatrix::validate() const {
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > kHermTol)
    throw std::domain_error("DensityMatrix: not Hermitian");
  double tr = m.trace().real();
  if (tr <= 0.0 || tr > 1.0 + 1e-9)
    throw std::domain_error("DensityMatrix: trace outside (0, 1]");
  if (!subnormalized && std::abs(tr - 1.0) > 1e-9)
    throw std::domain_error("DensityMatrix: trace != 1");
  if (hermitian_eigenvalues(m).minCoeff() < -kPsdTol)
    throw std::domain_error("DensityMatrix: negative eigenvalue");
}

void PovmElement::validate() const {
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > kHermTol)
    throw std::domain_error("PovmElement: not Hermitian");
  auto ev = hermitian_eigenvalues(m);
  if (ev.minCoeff() < -kPsdTol || ev.maxCoeff() > 1.0 + kPsdTol)
    throw std::domain_error("PovmElement: eigenvalues outside [0,1]");
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim())
    throw std::invalid_argument("trace_distance: dimension mismatch");
  return hermitian_eigenvalues(rho.m - sigma.m).cwiseAbs().sum();
}

Matrix matrix_sqrt(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(a);
  Eigen::VectorXd ev = es.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev[i] < -kPsdTol)
      throw std::domain_error("matrix_sqrt: matrix not PSD");
    ev[i] = std::sqrt(std::max(0.0, ev[i]));
  }
  return es.eigenvectors() * ev.asDiagonal() *
         es.eigenvectors().adjoint();
}

ResidualReport check_trace_inequality(const PovmElement& lambda,
                                      const DensityMatrix& rho,
                                      const DensityMatrix& sigma) {
  if (lambda.dim() != rho.dim() || rho.dim() != sigma.dim())
    throw std::invalid_argument("check_trace_inequality: dimension mismatch");
  double lhs = (lambda.m * rho.m).trace().real();
  double rhs = (lambda.m * sigma.m).trace().real();
  double residual = lhs - rhs + trace_distance(rho, sigma);
  return ResidualReport{residual, residual >= -1e-9};
}

ResidualReport check_gentle_operator(const PovmElement& lambda,
                                     const DensityMatrix& rho,
                                     double epsilon) {
  double overlap = (lambda.m * rho.m).trace().real();
  if (overlap < 1.0 - epsilon - 1e-12)
    throw std::domain_error("check_gentle_operator: Tr{L rho} < 1 - eps");
  Matrix s = matrix_sqrt(lambda.m);
  DensityMatrix disturbed{s * rho.m * s, true};
  double dist =
      hermitian_eigenvalues(rho.m - disturbed.m).cwiseAbs().sum();
  double residual = 2.0 * std::sqrt(std::max(0.0, epsilon)) - dist;
  return ResidualReport{residual, residual >= -1e-9};
}

ResidualReport check_gentle_operator_ensemble(
    const PovmElement& lambda, const std::vector<double>& probs,
    const std::vector<DensityMatrix>& states, double epsilon) {
  if (probs.size() != states.size())
    throw std::invalid_argument("gentle ensemble: size mismatch");
  double avg_overlap = 0.0;
  for (std::size_t x = 0; x < probs.size(); ++x)
    avg_overlap += probs[x] * (lambda.m * states[x].m).trace().real();
  if (avg_overlap < 1.0 - epsilon - 1e-12)
    throw std::domain_error("gentle ensemble: average overlap < 1 - eps");
  Matrix s = matrix_sqrt(lambda.m);
  double avg_dist = 0.0;
  for (std::size_t x = 0; x < probs.size(); ++x) {
    Matrix d = states[x].m - s * states[x].m * s;
    avg_dist += probs[x] * hermitian_eigenvalues(d).cwiseAbs().sum();
  }
  double residual = 2.0 * std::sqrt(std::max(0.0, epsilon)) - avg_dist;
  return ResidualReport{residual, residual >= -1e-9};
}

ResidualReport mixture_decoder_bound(const PovmElement& lambda,
                                     const DensityMatrix& pure_codeword,
                                     const DensityMatrix& vacuum_branch,
                                     double epsilon, double p) {
  double pure_success = (lambda.m * pure_codeword.m).trace().real();
  if (pure_success < 1.0 - epsilon - 1e-12)
    throw std::domain_error("mixture_decoder_bound: pure success < 1 - eps");
  Matrix mix = (1.0 - p) * pure_codeword.m + p * vacuum_branch.m;
  double success = (lambda.m * mix).trace().real();
  double residual = success - (1.0 - p) * (1.0 - epsilon);
  return ResidualReport{residual, residual >= -1e-9};
}

DensityMatrix random_density(Eigen::Index dim, std::uint64_t seed,
                             std::uint64_t stream) {
  KeyedRng rng(seed, stream, /*stream_b=*/0x67696eULL);
  Matrix g(dim, dim);
  std::uint64_t c = 0;
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) {
      double re = rng.normal(c++);
      double im = rng.normal(c++);
      g(i, j) = std::complex<double>(re, im);
    }
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix{rho, false};
}

Matrix random_unitary(Eigen::Index dim, std::uint64_t seed,
                      std::uint64_t stream) {
  KeyedRng rng(seed, stream, /*stream_b=*/0x756e69ULL);
  Matrix g(dim, dim);
  std::uint64_t c = 0;
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) {
      double re = rng.normal(c++);
      double im = rng.normal(c++);
      g(i, j) = std::complex<double>(re, im);
    }
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phase convention so the distribution is Haar.
  for (Eigen::Index j = 0; j < dim; ++j) {
    std::complex<double> d = r(j, j);
    q.col(j) *= d / std::abs(d);
  }
  return q;
}

std::vector<PovmElement> random_projective_povm(Eigen::Index dim,
                                                std::size_t outcomes,
                                                std::uint64_t seed,
                                                std::uint64_t stream) {
  if (outcomes == 0 || static_cast<Eigen::Index>(outcomes) > dim)
    throw std::invalid_argument("random_projective_povm: bad outcome count");
  Matrix u = random_unitary(dim, seed, stream);
  std::vector<PovmElement> povm(outcomes);
  for (std::size_t k = 0; k < outcomes; ++k)
    povm[k].m = Matrix::Zero(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    std::size_t k = static_cast<std::size_t>(j) % outcomes;
    povm[k].m += u.col(j) * u.col(j).adjoint();
  }
  return povm;
}

Matrix simulate_loss_exact(const Matrix& state, double eta,
                           std::uint64_t cutoff, std::uint64_t n_modes) {
  if (eta < 0.0 || eta > 1.0)
    throw std::domain_error("simulate_loss_exact: eta in [0,1]");
  std::uint64_t d = cutoff + 1;
  std::uint64_t dim = 1;
  for (std::uint64_t i = 0; i < n_modes; ++i) {
    dim *= d;
    if (dim > 4096)
      throw std::domain_error("simulate_loss_exact: dimension cap exceeded");
  }
  if (state.rows() != static_cast<Eigen::Index>(dim) ||
      state.cols() != static_cast<Eigen::Index>(dim))
    throw std::invalid_argument("simulate_loss_exact: state dimension");

  // Per-photon-number beamsplitter amplitudes on |a>|0>:
  // beta(a, k) with k the transmitted count.
  std::vector<std::vector<double>> beta(d);
  for (std::uint64_t a = 0; a < d; ++a) {
    beta[a].resize(a + 1);
    for (std::uint64_t k = 0; k <= a; ++k) {
      double amp2 = std::exp2(log_binomial(a, k).log2_value) *
                    std::pow(eta, static_cast<double>(k)) *
                    std::pow(1.0 - eta, static_cast<double>(a - k));
      beta[a][k] = std::sqrt(amp2);
    }
  }

  Matrix rho = state;
  std::uint64_t stride = 1;
  for (std::uint64_t mode = 0; mode < n_modes; ++mode) {
    Matrix out = Matrix::Zero(dim, dim);
    // Contract the environment outcome e of this mode's dilation.
    for (std::uint64_t e = 0; e < d; ++e) {
      for (std::uint64_t r = 0; r < dim; ++r) {
        std::uint64_t a = (r / stride) % d;
        if (e > a) continue;
        std::uint64_t r_out = r - e * stride;  // digit a -> a - e
        double ba = beta[a][a - e];
        for (std::uint64_t c = 0; c < dim; ++c) {
          std::uint64_t b = (c / stride) % d;
          if (e > b) continue;
          std::uint64_t c_out = c - e * stride;
          out(static_cast<Eigen::Index>(r_out),
              static_cast<Eigen::Index>(c_out)) +=
              ba * beta[b][b - e] *
              rho(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
        }
      }
    }
    rho = std::move(out);
    stride *= d;
  }
  return rho;
}

}  // namespace losslab::oracle
