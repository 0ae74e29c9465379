// Copyright 2026 The Meanforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Operator means of Hermitian positive definite matrices.
//
// A Kubo-Ando mean with representing function f is
//   A m B = A^{1/2} f(A^{-1/2} B A^{-1/2}) A^{1/2},
// evaluated through the spectral decomposition of the middle factor.

#ifndef MEANFORGE_CORE_OPERATOR_HPP_
#define MEANFORGE_CORE_OPERATOR_HPP_

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "core/random.hpp"
#include "core/scalar.hpp"

namespace meanforge {

using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

/// (X + X^*) / 2.
ComplexMatrix hermitian_part(const ComplexMatrix& x);

/// Largest singular value.
double spectral_norm(const ComplexMatrix& x);

/// A Hermitian positive definite matrix with its spectral decomposition,
/// square root and inverse square root computed on construction.
class HPDMatrix {
 public:
  /// Throws DomainError if m is not square or not Hermitian to 1e-12
  /// relative (max-norm), NonPositive if an eigenvalue is not positive.
  /// The stored matrix is the Hermitian part of m.
  explicit HPDMatrix(const ComplexMatrix& m);

  static HPDMatrix identity(int n);
  static HPDMatrix diagonal(const RealVector& d);

  int dim() const { return static_cast<int>(matrix_.rows()); }
  const ComplexMatrix& matrix() const { return matrix_; }
  const RealVector& eigenvalues() const { return eigenvalues_; }
  const ComplexMatrix& eigenvectors() const { return eigenvectors_; }
  const ComplexMatrix& sqrt() const { return sqrt_; }
  const ComplexMatrix& inv_sqrt() const { return inv_sqrt_; }
  double norm() const { return eigenvalues_.maxCoeff(); }

  /// U diag(f(lambda)) U^*.
  ComplexMatrix apply(const std::function<double(double)>& f) const;
  HPDMatrix inverse() const;

 private:
  ComplexMatrix matrix_;
  RealVector eigenvalues_;
  ComplexMatrix eigenvectors_;
  ComplexMatrix sqrt_;
  ComplexMatrix inv_sqrt_;
};

/// A scalar map f on (0, inf) with f(1) = 1, generating an operator mean.
class RepresentingFunction {
 public:
  using Fn = std::function<double(double)>;

  /// Throws DomainError unless |f(1) - 1| <= 1e-12.
  RepresentingFunction(std::string name, Fn fn);

  /// x -> M(1, x) for a symmetric mean.
  static RepresentingFunction of(const SymmetricMean& m);
  static RepresentingFunction power(double v);          // x^v
  static RepresentingFunction weighted_log(double v);   // L_v(1, x)
  static RepresentingFunction weighted_identric(double v);  // I_v(1, x)

  const std::string& name() const { return name_; }
  double operator()(double x) const { return fn_(x); }

 private:
  std::string name_;
  Fn fn_;
};

/// A^{1/2} f(A^{-1/2} B A^{-1/2}) A^{1/2}. Throws DimensionMismatch, or
/// NonPositive on numerical breakdown.
HPDMatrix apply_mean(const RepresentingFunction& f, const HPDMatrix& a, const HPDMatrix& b);

HPDMatrix op_weighted_standard(MeanKind kind, const HPDMatrix& a, const HPDMatrix& b, double v);
/// (A^{-1} nabla_v B^{-1})^{-1}, the harmonic mean by inversion.
HPDMatrix op_weighted_harm_by_inversion(const HPDMatrix& a, const HPDMatrix& b, double v);

enum class OperatorMode { representing, composed };

/// representing: the Kubo-Ando mean of x -> L_v(1, x).
/// composed:     L(A #_v B, A) nabla_v L(A #_v B, B).
HPDMatrix op_weighted_log(OperatorMode mode, const HPDMatrix& a, const HPDMatrix& b, double v);
/// representing: the Kubo-Ando mean of x -> I_v(1, x).
/// composed:     I(A nabla_v B, A) #_v I(A nabla_v B, B).
HPDMatrix op_weighted_identric(OperatorMode mode, const HPDMatrix& a, const HPDMatrix& b,
                               double v);

struct LogIntegral {
  ComplexMatrix geometric;  // int_0^1 A #_t B dt
  ComplexMatrix harmonic;   // (int_0^1 (A nabla_t B)^{-1} dt)^{-1}
  int max_order_used = 0;
};

/// Both integral forms of L(A, B) by composite Gauss-Legendre on a mesh
/// graded toward t = 0 and t = 1. Each panel doubles its order from 8 up
/// to max_order until the panel sum changes by less than 1e-11 relative.
LogIntegral op_log_integral(const HPDMatrix& a, const HPDMatrix& b, int max_order = 256);

struct LoewnerResult {
  bool holds = false;
  double witness = 0.0;     // lambda_min of the Hermitian part of B - A
  double normalized = 0.0;  // witness / max(1, |A|, |B|)
};

/// Whether A <= B: lambda_min(B - A) >= -tol * max(1, |A|, |B|).
LoewnerResult loewner_leq(const ComplexMatrix& a, const ComplexMatrix& b, double tol);

struct OperatorChainLink {
  std::string lower;
  std::string upper;
  LoewnerResult order;
};

struct OperatorChain {
  std::string id;
  std::vector<std::string> terms;
  std::vector<HPDMatrix> values;
  std::vector<OperatorChainLink> links;  // filled by check_operator_chains

  bool holds() const;
};

/// Chain ids in evaluation order.
const std::vector<std::string>& operator_chain_ids();

/// Every term of every operator chain at (A, B, v), links left empty.
std::vector<OperatorChain> operator_chains(const HPDMatrix& a, const HPDMatrix& b, double v);

/// operator_chains plus a Loewner check of every adjacent pair.
std::vector<OperatorChain> check_operator_chains(const HPDMatrix& a, const HPDMatrix& b,
                                                 double v, double tol);

/// Q diag(lambda) Q^* with Q from the QR factorization of a complex
/// Gaussian matrix and log lambda uniform on [-log_spread, log_spread].
HPDMatrix random_hpd(int n, Rng& rng, double log_spread = 3.0);

/// Two random HPD matrices sharing the same eigenvectors.
std::pair<HPDMatrix, HPDMatrix> random_commuting_pair(int n, Rng& rng, double log_spread = 3.0);

}  // namespace meanforge

#endif  // MEANFORGE_CORE_OPERATOR_HPP_
